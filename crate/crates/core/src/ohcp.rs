//! Optimal homologous chains.
//!
//! Given a p-chain `c` and weights `w`, find integer `x = c + B y` (with
//! `B = [∂_{p+1}]`) minimizing `Σ |w_i| |x_i|`. The absolute values are split
//! as `x = x⁺ - x⁻`, the free `y` as `y⁺ - y⁻`, giving a standard-form LP with
//! constraint matrix `[I  -I  -B  B]`. When `B` is totally unimodular every
//! vertex of that LP is integral, so the relaxation solves the integer
//! problem.
//!
//! Variants:
//!
//! * `L1`: the weighted 1-norm above.
//! * `L0Box`: `c ∈ {-1,0,1}^m`, unit weights, and `x⁺, x⁻ <= 1`; the 1-norm
//!   then counts nonzeros, so the optimum has the fewest nonzero entries among
//!   `{-1,0,1}`-chains homologous to `c`.
//! * `TotalWeight`: also charges `Σ |v_j| |y_j|` on the bounding chain.
//!
//! Solving over ℤ₂ is not offered: simulating mod-2 arithmetic needs an extra
//! `2z` term in the constraints, which breaks total unimodularity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::complex::{Chain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::io::format_rational;
use crate::lp::{simplex_solve, LinearProgram, LpStatus};
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    L1,
    #[serde(rename = "l0")]
    L0Box,
    #[serde(rename = "total")]
    TotalWeight,
}

#[derive(Clone, Debug)]
pub struct OhcpInstance {
    /// `[∂_{p+1}]`, `m x n`.
    pub boundary: IntMatrix,
    pub chain: Vec<BigInt>,
    pub weights: Vec<BigRational>,
    pub variant: Variant,
    pub y_weights: Option<Vec<BigRational>>,
}

impl OhcpInstance {
    /// Instance on the p-chains of `k`.
    pub fn new(
        k: &SimplicialComplex,
        p: usize,
        chain: &Chain,
        weights: Vec<BigRational>,
        variant: Variant,
    ) -> Result<Self> {
        if chain.dim != p {
            return Err(Error::DimensionMismatch(format!("chain has dimension {}, expected {p}", chain.dim)));
        }
        let boundary = k.coboundary_source(p)?;
        let c = chain.to_dense(boundary.rows())?;
        Self::from_matrix(boundary, c, weights, variant)
    }

    pub fn from_matrix(boundary: IntMatrix, chain: Vec<BigInt>, weights: Vec<BigRational>, variant: Variant) -> Result<Self> {
        let inst = OhcpInstance {
            boundary,
            chain,
            weights,
            variant,
            y_weights: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_y_weights(mut self, v: Vec<BigRational>) -> Result<Self> {
        self.y_weights = Some(v);
        self.validate()?;
        Ok(self)
    }

    pub fn m(&self) -> usize {
        self.boundary.rows()
    }

    pub fn n(&self) -> usize {
        self.boundary.cols()
    }

    fn validate(&self) -> Result<()> {
        let (m, n) = self.boundary.shape();
        if self.chain.len() != m {
            return Err(Error::DimensionMismatch(format!("chain length {} != {m}", self.chain.len())));
        }
        if self.weights.len() != m {
            return Err(Error::DimensionMismatch(format!("weight count {} != {m}", self.weights.len())));
        }
        if let Some(v) = &self.y_weights {
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!("y-weight count {} != {n}", v.len())));
            }
        }
        if self.variant == Variant::L0Box {
            if let Some(i) = self.chain.iter().position(|c| c.abs() > BigInt::one()) {
                return Err(Error::ContractViolation(format!(
                    "l0 variant needs chain entries in {{-1,0,1}}; entry {i} is {}",
                    self.chain[i]
                )));
            }
        }
        Ok(())
    }

    fn x_costs(&self) -> Vec<BigRational> {
        match self.variant {
            Variant::L0Box => vec![BigRational::one(); self.m()],
            _ => self.weights.iter().map(|w| w.abs()).collect(),
        }
    }

    fn y_costs(&self) -> Result<Vec<BigRational>> {
        match self.variant {
            Variant::TotalWeight => Ok(self
                .y_weights
                .as_ref()
                .ok_or_else(|| Error::ContractViolation("total-weight variant needs y-weights".into()))?
                .iter()
                .map(|v| v.abs())
                .collect()),
            _ => Ok(vec![BigRational::zero(); self.n()]),
        }
    }

    /// Objective of a candidate `(x, y)` under this variant.
    pub fn objective_of(&self, x: &[BigRational], y: &[BigRational]) -> Result<BigRational> {
        let xc = self.x_costs();
        let yc = self.y_costs()?;
        let xs: BigRational = xc.iter().zip(x).map(|(w, v)| w * v.abs()).sum();
        let ys: BigRational = yc.iter().zip(y).map(|(w, v)| w * v.abs()).sum();
        Ok(xs + ys)
    }
}

/// Shared LP skeleton over `(x⁺, x⁻, y⁺, y⁻)`.
fn assemble(inst: &OhcpInstance, x_cost: Vec<BigRational>, y_cost: Vec<BigRational>, x_upper: Option<BigRational>) -> Result<LinearProgram> {
    let (m, n) = inst.boundary.shape();
    let nv = 2 * m + 2 * n;
    let mut objective = Vec::with_capacity(nv);
    objective.extend(x_cost.iter().cloned());
    objective.extend(x_cost);
    objective.extend(y_cost.iter().cloned());
    objective.extend(y_cost);
    let mut a = vec![vec![BigRational::zero(); nv]; m];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = BigRational::one();
        row[m + i] = -BigRational::one();
        for j in 0..n {
            let bij = inst.boundary.get(i, j);
            if !bij.is_zero() {
                row[2 * m + j] = BigRational::from_integer(-bij);
                row[2 * m + n + j] = BigRational::from_integer(bij.clone());
            }
        }
    }
    let b = inst.chain.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let mut upper = vec![x_upper; 2 * m];
    upper.extend(vec![None; 2 * n]);
    LinearProgram::new(objective, a, b)?.with_bounds(vec![BigRational::zero(); nv], upper)
}

/// Weighted 1-norm LP: `min Σ|w_i|(x⁺_i + x⁻_i)` with zero cost on `y`.
pub fn assemble_l1(inst: &OhcpInstance) -> Result<LinearProgram> {
    if inst.variant != Variant::L1 {
        return Err(Error::ContractViolation(format!("assemble_l1 on {:?} instance", inst.variant)));
    }
    assemble(inst, inst.x_costs(), inst.y_costs()?, None)
}

/// Fewest-nonzeros LP: unit costs and `x⁺, x⁻ <= 1`.
pub fn assemble_l0(inst: &OhcpInstance) -> Result<LinearProgram> {
    if inst.variant != Variant::L0Box {
        return Err(Error::ContractViolation(format!("assemble_l0 on {:?} instance", inst.variant)));
    }
    assemble(inst, inst.x_costs(), inst.y_costs()?, Some(BigRational::one()))
}

/// 1-norm of the whole `(x, y)` with separate weights on each part.
pub fn assemble_total(inst: &OhcpInstance) -> Result<LinearProgram> {
    if inst.variant != Variant::TotalWeight {
        return Err(Error::ContractViolation(format!("assemble_total on {:?} instance", inst.variant)));
    }
    assemble(inst, inst.x_costs(), inst.y_costs()?, None)
}

pub fn assemble_lp(inst: &OhcpInstance) -> Result<LinearProgram> {
    match inst.variant {
        Variant::L1 => assemble_l1(inst),
        Variant::L0Box => assemble_l0(inst),
        Variant::TotalWeight => assemble_total(inst),
    }
}

pub const TORSION_NOTE: &str =
    "LP optimum is fractional: [∂_{p+1}] is not totally unimodular here; run a relative-torsion scan";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OhcpSolution {
    pub variant: Variant,
    /// Optimal p-chain. Integral unless `integral` is false.
    pub x: Vec<BigRational>,
    /// `x = c + B·y`.
    pub y: Vec<BigRational>,
    pub objective: BigRational,
    pub integral: bool,
    pub torsion_note: Option<String>,
}

impl OhcpSolution {
    pub fn x_integer(&self) -> Option<Vec<BigInt>> {
        self.x.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
    }

    pub fn y_integer(&self) -> Option<Vec<BigInt>> {
        self.y.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
    }

    pub fn x_chain(&self, dim: usize) -> Option<Chain> {
        self.x_integer().map(|x| Chain::from_dense(dim, &x))
    }

    pub fn nnz(&self) -> usize {
        self.x.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn y_support(&self) -> Vec<usize> {
        self.y.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, _)| j).collect()
    }

    /// `{objective, integral, variant, nnz, y_support}`.
    pub fn summary_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Summary<'a> {
            objective: String,
            integral: bool,
            variant: Variant,
            nnz: usize,
            y_support: Vec<usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            torsion_note: Option<&'a str>,
        }
        serde_json::to_value(Summary {
            objective: format_rational(&self.objective),
            integral: self.integral,
            variant: self.variant,
            nnz: self.nnz(),
            y_support: self.y_support(),
            torsion_note: self.torsion_note.as_deref(),
        })
        .expect("summary serializes")
    }
}

/// `x = c + B·y` over the rationals.
pub fn is_homologous(inst: &OhcpInstance, x: &[BigRational], y: &[BigRational]) -> bool {
    let (m, n) = inst.boundary.shape();
    x.len() == m
        && y.len() == n
        && (0..m).all(|i| {
            let by: BigRational = (0..n)
                .filter(|&j| !inst.boundary.get(i, j).is_zero())
                .map(|j| BigRational::from_integer(inst.boundary.get(i, j).clone()) * &y[j])
                .sum();
            x[i] == BigRational::from_integer(inst.chain[i].clone()) + by
        })
}

/// Assembles the LP for the instance's variant, solves it exactly and
/// reconstructs `(x, y)`. Fractional optima are returned as-is with
/// `integral = false`.
pub fn solve(inst: &OhcpInstance) -> Result<OhcpSolution> {
    let lp = assemble_lp(inst)?;
    let sol = simplex_solve(&lp)?;
    if sol.status != LpStatus::Optimal {
        // x = c, y = 0 is always feasible and the objective is bounded below by 0.
        return Err(Error::Internal(format!("OHCP linear program reported {:?}", sol.status)));
    }
    let (m, n) = inst.boundary.shape();
    let x: Vec<BigRational> = (0..m).map(|i| &sol.x[i] - &sol.x[m + i]).collect();
    let y: Vec<BigRational> = (0..n).map(|j| &sol.x[2 * m + j] - &sol.x[2 * m + n + j]).collect();
    if !is_homologous(inst, &x, &y) {
        return Err(Error::Internal("reconstructed chain is not homologous to the input".into()));
    }
    let objective = inst.objective_of(&x, &y)?;
    if objective != sol.objective {
        return Err(Error::Internal(format!(
            "objective mismatch: LP {} vs reconstructed {}",
            sol.objective, objective
        )));
    }
    let integral = x.iter().chain(y.iter()).all(BigRational::is_integer);
    Ok(OhcpSolution {
        variant: inst.variant,
        x,
        y,
        objective,
        integral,
        torsion_note: (!integral).then(|| TORSION_NOTE.to_string()),
    })
}

pub const ORACLE_CANDIDATE_LIMIT: u64 = 10_000_000;

/// Exhaustive search over `y ∈ [-y_bound, y_bound]^n`, returning the best
/// `x = c + B·y` (for `L0Box`, only candidates with `x ∈ {-1,0,1}^m`). Ties go
/// to the lexicographically smallest `y`.
pub fn brute_force_oracle(inst: &OhcpInstance, y_bound: u32) -> Result<OhcpSolution> {
    let (m, n) = inst.boundary.shape();
    let width = 2 * y_bound as u64 + 1;
    let candidates = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(width).filter(|&c| c <= ORACLE_CANDIDATE_LIMIT));
    let Some(_) = candidates else {
        return Err(Error::BudgetExceeded(format!(
            "{width}^{n} candidates exceed the oracle limit of {ORACLE_CANDIDATE_LIMIT}"
        )));
    };
    let to_i64 = |v: &BigInt, what: &str| {
        v.to_i64()
            .ok_or_else(|| Error::ContractViolation(format!("{what} entry too large for the oracle")))
    };
    let bmat: Vec<Vec<i64>> = (0..n)
        .map(|j| (0..m).map(|i| to_i64(inst.boundary.get(i, j), "boundary")).collect())
        .collect::<Result<_>>()?;
    let c: Vec<i64> = inst.chain.iter().map(|v| to_i64(v, "chain")).collect::<Result<_>>()?;

    // Scale all costs to integers over a common denominator.
    let xc = inst.x_costs();
    let yc = inst.y_costs()?;
    let denom = xc
        .iter()
        .chain(yc.iter())
        .fold(BigInt::one(), |acc, r| num_integer::lcm(acc, r.denom().clone()));
    let scale = |r: &BigRational| -> Result<i128> {
        (r * BigRational::from_integer(denom.clone()))
            .to_integer()
            .to_i128()
            .ok_or_else(|| Error::ContractViolation("weights too large for the oracle".into()))
    };
    let xw: Vec<i128> = xc.iter().map(scale).collect::<Result<_>>()?;
    let yw: Vec<i128> = yc.iter().map(scale).collect::<Result<_>>()?;
    let l0 = inst.variant == Variant::L0Box;

    let bound = y_bound as i64;
    let mut y = vec![-bound; n];
    let mut x = c.clone();
    for (j, col) in bmat.iter().enumerate() {
        for i in 0..m {
            x[i] += col[i] * y[j];
        }
    }
    let eval = |x: &[i64], y: &[i64]| -> Option<i128> {
        if l0 && x.iter().any(|v| v.abs() > 1) {
            return None;
        }
        let xs: i128 = x.iter().zip(&xw).map(|(v, w)| v.unsigned_abs() as i128 * w).sum();
        let ys: i128 = y.iter().zip(&yw).map(|(v, w)| v.unsigned_abs() as i128 * w).sum();
        Some(xs + ys)
    };
    let mut best: Option<(i128, Vec<i64>)> = eval(&x, &y).map(|o| (o, y.clone()));
    'outer: loop {
        // Odometer increment, least significant coordinate last so the
        // visiting order is lexicographic.
        let mut j = n;
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            if y[j] < bound {
                y[j] += 1;
                for i in 0..m {
                    x[i] += bmat[j][i];
                }
                break;
            }
            y[j] = -bound;
            for i in 0..m {
                x[i] -= 2 * bound * bmat[j][i];
            }
        }
        if let Some(o) = eval(&x, &y) {
            if best.as_ref().is_none_or(|(b, _)| o < *b) {
                best = Some((o, y.clone()));
            }
        }
    }
    let Some((_, ybest)) = best else {
        return Err(Error::ContractViolation("no admissible candidate in the search box".into()));
    };
    let yq: Vec<BigRational> = ybest.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
    let xq: Vec<BigRational> = (0..m)
        .map(|i| {
            let v = c[i] + (0..n).map(|j| bmat[j][i] * ybest[j]).sum::<i64>();
            BigRational::from_integer(BigInt::from(v))
        })
        .collect();
    let objective = inst.objective_of(&xq, &yq)?;
    Ok(OhcpSolution {
        variant: inst.variant,
        x: xq,
        y: yq,
        objective,
        integral: true,
        torsion_note: None,
    })
}

/// The input chain itself (`y = 0`) is always admissible, so an optimum
/// exists: only finitely many integer chains have objective at most that of
/// `c`.
pub fn existence_check(inst: &OhcpInstance) -> bool {
    let x: Vec<BigRational> = inst.chain.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let y = vec![BigRational::zero(); inst.n()];
    let box_ok = inst.variant != Variant::L0Box || inst.chain.iter().all(|c| c.abs() <= BigInt::one());
    box_ok && is_homologous(inst, &x, &y) && inst.objective_of(&x, &y).is_ok()
}
