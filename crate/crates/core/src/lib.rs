//! Optimal homologous chains on simplicial complexes.
//!
//! The crate builds boundary matrices of finite simplicial complexes, decides
//! whether they are totally unimodular (and, when they are not, extracts a
//! relative-torsion witness), and solves the optimal homologous chain problem
//! as an exact rational linear program whose vertices are integral under
//! total unimodularity.
//!
//! Every number is exact: integers are `BigInt`, rationals `BigRational`.

pub mod complex;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod lp;
pub mod matrix;
pub mod ohcp;
pub mod unimodularity;

pub use complex::{Chain, RelativeBoundary, Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::{homology_summary, smith_normal_form, torsion_scan, SnfResult, TorsionScan, TorsionWitness};
pub use lp::{simplex_solve, LinearProgram, LpSolution, LpStatus};
pub use matrix::IntMatrix;
pub use ohcp::{brute_force_oracle, solve, OhcpInstance, OhcpSolution, Variant};
pub use unimodularity::{tu_verdict, TuMethod, TuOptions, TuStatus, TuVerdict};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;

/// JSON integer when it fits in `i64`, decimal string otherwise.
pub(crate) fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) fn serialize_opt_bigint<S: Serializer>(v: &Option<&BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => serialize_bigint(b, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for b in v {
        match b.to_i64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&b.to_string())?,
        }
    }
    seq.end()
}
