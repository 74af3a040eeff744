//! `ohcp`: boundary matrices, total-unimodularity certificates and optimal
//! homologous chains from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ohcp_core::complex::DEFAULT_DENOMINATOR_CAP;
use ohcp_core::io::{parse_chain, parse_complex, parse_coordinates, parse_matrix, parse_weights, write_chain};
use ohcp_core::unimodularity::{
    find_mobius_in_matrix, heller_tompkins, is_tu_minor_enumeration, HellerTompkins, MethodChoice, SearchBudget,
    TuMethod, DEFAULT_COL_CAP, DEFAULT_NODE_BUDGET,
};
use ohcp_core::{
    brute_force_oracle, homology_summary, smith_normal_form, solve, torsion_scan, tu_verdict, Error, IntMatrix,
    OhcpInstance, OhcpSolution, SimplicialComplex, TuOptions, TuStatus, TuVerdict, Variant,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_NON_INTEGRAL: u8 = 3;
const EXIT_PARSE: u8 = 4;
const EXIT_UNDECIDED: u8 = 5;

#[derive(Parser)]
#[command(name = "ohcp", version, about = "Optimal homologous chains and total-unimodularity certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the boundary matrix [∂_q] in .mat format.
    Boundary {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Print the nonzero invariant factors of an integer matrix.
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Decide whether [∂_{p+1}] (or a matrix file) is totally unimodular.
    Tu {
        #[command(flatten)]
        target: TuTarget,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_COL_CAP)]
        col_cap: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Search for a non-orientable cycle complex of q-simplices.
    MobiusScan {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// TU verdict plus a relative-torsion pair (L, L0) when it fails.
    TorsionScan {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = DEFAULT_COL_CAP)]
        col_cap: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Solve the optimal homologous chain problem exactly.
    Solve {
        #[command(flatten)]
        problem: Problem,
    },
    /// Exhaustive search over y in [-B, B]^n (tiny instances only).
    Oracle {
        #[command(flatten)]
        problem: Problem,
        #[arg(long)]
        y_bound: u32,
    },
    /// Betti number and torsion coefficients of H_p.
    Homology {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TuSource {
    #[arg(long, requires = "dim")]
    complex: Option<PathBuf>,
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Args)]
struct TuTarget {
    #[command(flatten)]
    source: TuSource,
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Args)]
struct Problem {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    chain: PathBuf,
    #[arg(long)]
    dim: usize,
    #[arg(long, conflicts_with = "coords")]
    weights: Option<PathBuf>,
    /// Vertex coordinates; weights become Euclidean p-volumes.
    #[arg(long)]
    coords: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = VariantArg::L1)]
    variant: VariantArg,
    #[arg(long)]
    y_weights: Option<PathBuf>,
    /// Write `<out>.chn` and `<out>.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Minors,
    Ht,
    Mobius,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    L1,
    L0,
    Total,
}

enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
    NonIntegral,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome<T> = Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Outcome<()> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

/// Parse errors carry the file name so the message is actionable.
fn parsed<T>(path: &Path, r: ohcp_core::Result<T>) -> Outcome<T> {
    r.map_err(|e| match e {
        Error::Parse { line, message } => Failure::Core(Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        }),
        other => Failure::Core(other),
    })
}

fn load_complex(path: &Path) -> Outcome<SimplicialComplex> {
    parsed(path, parse_complex(&read(path)?))
}

fn load_matrix(path: &Path) -> Outcome<IntMatrix> {
    parsed(path, parse_matrix(&read(path)?))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("JSON value serializes"));
}

fn budget(max_nodes: u64) -> SearchBudget {
    SearchBudget {
        max_len: None,
        max_nodes,
    }
}

fn matrix_verdict(m: &IntMatrix, method: Method, col_cap: usize, nodes: u64) -> Outcome<TuVerdict> {
    match method {
        Method::Auto | Method::Minors => Ok(is_tu_minor_enumeration(m, col_cap)?),
        Method::Ht => match heller_tompkins(m) {
            HellerTompkins::Certified { .. } => Ok(TuVerdict {
                status: TuStatus::Tu,
                method: TuMethod::HellerTompkins,
                witness: None,
            }),
            other => Err(Error::Undecided(format!("Heller-Tompkins: {other:?}")).into()),
        },
        Method::Mobius => match find_mobius_in_matrix(m, budget(nodes))? {
            Some(cc) => {
                let w = cc.minor(m);
                Ok(TuVerdict {
                    status: TuStatus::NotTu,
                    method: TuMethod::MobiusSearch,
                    witness: Some(w),
                })
            }
            None => Err(Error::Undecided("no Möbius cycle complex; TU is not decided for a bare matrix".into()).into()),
        },
    }
}

fn simplex_lists(k: &SimplicialComplex, q: usize, idx: &[usize]) -> Value {
    json!(idx.iter().map(|&i| k.simplex(q, i).vertices().to_vec()).collect::<Vec<_>>())
}

fn weights_for(problem: &Problem, k: &SimplicialComplex) -> Outcome<Vec<num_rational::BigRational>> {
    let p = problem.dim;
    if let Some(path) = &problem.weights {
        parsed(path, parse_weights(&read(path)?, k, p))
    } else if let Some(path) = &problem.coords {
        let coords = parsed(path, parse_coordinates(&read(path)?))?;
        Ok(k.weights_from_coordinates(&coords, p, DEFAULT_DENOMINATOR_CAP)?)
    } else {
        Ok(parse_weights("", k, p)?)
    }
}

fn build_instance(problem: &Problem) -> Outcome<(SimplicialComplex, OhcpInstance)> {
    let k = load_complex(&problem.complex)?;
    let chain = parsed(&problem.chain, parse_chain(&read(&problem.chain)?, &k, problem.dim))?;
    let weights = weights_for(problem, &k)?;
    let variant = match problem.variant {
        VariantArg::L1 => Variant::L1,
        VariantArg::L0 => Variant::L0Box,
        VariantArg::Total => Variant::TotalWeight,
    };
    let mut inst = OhcpInstance::new(&k, problem.dim, &chain, weights, variant)?;
    match (&problem.y_weights, variant) {
        (Some(path), _) => {
            let v = parsed(path, parse_weights(&read(path)?, &k, problem.dim + 1))?;
            inst = inst.with_y_weights(v)?;
        }
        (None, Variant::TotalWeight) => return Err(Failure::Usage("--variant total needs --y-weights".into())),
        (None, _) => {}
    }
    Ok((k, inst))
}

fn emit_solution(problem: &Problem, k: &SimplicialComplex, sol: &OhcpSolution) -> Outcome<()> {
    let summary = sol.summary_json();
    if let Some(out) = &problem.out {
        write(&out.with_extension("json"), &format!("{}\n", serde_json::to_string(&summary).unwrap()))?;
        if let Some(chain) = sol.x_chain(problem.dim) {
            write(&out.with_extension("chn"), &write_chain(k, &chain))?;
        }
    }
    print_json(&summary);
    if sol.integral {
        Ok(())
    } else {
        Err(Failure::NonIntegral)
    }
}

fn run(cli: Cli) -> Outcome<()> {
    match cli.command {
        Command::Boundary { complex, dim } => {
            let k = load_complex(&complex)?;
            print!("{}", k.boundary_matrix(dim)?);
        }
        Command::Snf { matrix } => {
            let m = load_matrix(&matrix)?;
            let d: Vec<String> = smith_normal_form(&m, false).diagonal.iter().map(ToString::to_string).collect();
            println!("{}", d.join(" "));
        }
        Command::Tu {
            target,
            method,
            col_cap,
            budget: nodes,
        } => {
            let verdict = match (target.source.complex, target.source.matrix) {
                (Some(path), _) => {
                    let k = load_complex(&path)?;
                    let p = target.dim.ok_or_else(|| Failure::Usage("--complex needs --dim".into()))?;
                    let opts = TuOptions {
                        method: match method {
                            Method::Auto => MethodChoice::Auto,
                            Method::Minors => MethodChoice::Minors,
                            Method::Ht => MethodChoice::HellerTompkins,
                            Method::Mobius => MethodChoice::Mobius,
                        },
                        col_cap,
                        budget: budget(nodes),
                    };
                    tu_verdict(&k, p, &opts)?
                }
                (None, Some(path)) => matrix_verdict(&load_matrix(&path)?, method, col_cap, nodes)?,
                (None, None) => return Err(Failure::Usage("pass --complex or --matrix".into())),
            };
            print_json(&verdict.to_json());
        }
        Command::MobiusScan {
            complex,
            dim,
            budget: nodes,
        } => {
            let k = load_complex(&complex)?;
            let b = k.boundary_matrix(dim)?;
            let doc = match find_mobius_in_matrix(&b, budget(nodes))? {
                Some(cc) => {
                    let verdict = TuVerdict {
                        status: TuStatus::NotTu,
                        method: TuMethod::MobiusSearch,
                        witness: Some(cc.minor(&b)),
                    };
                    let mut doc = verdict.to_json();
                    doc["found"] = json!(true);
                    doc["simplices"] = json!(cc.simplices);
                    doc["simplex_vertices"] = simplex_lists(&k, dim, &cc.simplices);
                    doc["shared_faces"] = json!(cc.shared_faces);
                    doc["shared_face_vertices"] = simplex_lists(&k, dim - 1, &cc.shared_faces);
                    doc
                }
                None => json!({ "found": false }),
            };
            print_json(&doc);
        }
        Command::TorsionScan {
            complex,
            dim,
            col_cap,
            budget: nodes,
        } => {
            let k = load_complex(&complex)?;
            let opts = TuOptions {
                method: MethodChoice::Auto,
                col_cap,
                budget: budget(nodes),
            };
            let scan = torsion_scan(&k, dim, &opts)?;
            let mut doc = scan.to_json();
            if let Some(w) = &scan.witness {
                doc["l_simplices"] = simplex_lists(&k, dim + 1, &w.l_cols);
                doc["l0_simplices"] = simplex_lists(&k, dim, &w.l0_rows);
            }
            print_json(&doc);
        }
        Command::Solve { problem } => {
            let (k, inst) = build_instance(&problem)?;
            let sol = solve(&inst)?;
            emit_solution(&problem, &k, &sol)?;
        }
        Command::Oracle { problem, y_bound } => {
            let (k, inst) = build_instance(&problem)?;
            let sol = brute_force_oracle(&inst, y_bound)?;
            emit_solution(&problem, &k, &sol)?;
        }
        Command::Homology { complex, dim } => {
            let k = load_complex(&complex)?;
            print_json(&serde_json::to_value(homology_summary(&k, dim)?).expect("summary serializes"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::NonIntegral) => {
            eprintln!("warning: optimum is not integral; run torsion-scan to look for relative torsion");
            ExitCode::from(EXIT_NON_INTEGRAL)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } => EXIT_PARSE,
                Error::Undecided(_) | Error::BudgetExceeded(_) => EXIT_UNDECIDED,
                _ => EXIT_FAILURE,
            })
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(EXIT_FAILURE)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
