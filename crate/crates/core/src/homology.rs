//! Smith normal form over the integers and torsion detection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complex::{relative_submatrix, SimplicialComplex};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::unimodularity::{tu_verdict, TuOptions, TuVerdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive.
    pub diagonal: Vec<BigInt>,
    /// Unimodular `(U, V)` with `U·M·V` equal to the normal form.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn has_torsion(&self) -> bool {
        self.diagonal.iter().any(|d| d > &BigInt::one())
    }

    pub fn torsion_coefficients(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| *d > &BigInt::one()).cloned().collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for m in [Some(&mut self.a), self.u.as_mut()].into_iter().flatten() {
            for j in 0..m.cols() {
                let t = m.get(i, j).clone();
                m.set(i, j, m.get(k, j).clone());
                m.set(k, j, t);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for m in [Some(&mut self.a), self.v.as_mut()].into_iter().flatten() {
            for r in 0..m.rows() {
                let t = m.get(r, i).clone();
                m.set(r, i, m.get(r, k).clone());
                m.set(r, k, t);
            }
        }
    }

    /// row_i -= f · row_k
    fn sub_row(&mut self, i: usize, k: usize, f: &BigInt) {
        for m in [Some(&mut self.a), self.u.as_mut()].into_iter().flatten() {
            for j in 0..m.cols() {
                let d = m.get(k, j) * f;
                if !d.is_zero() {
                    let v = m.get(i, j) - d;
                    m.set(i, j, v);
                }
            }
        }
    }

    /// col_i -= f · col_k
    fn sub_col(&mut self, i: usize, k: usize, f: &BigInt) {
        for m in [Some(&mut self.a), self.v.as_mut()].into_iter().flatten() {
            for r in 0..m.rows() {
                let d = m.get(r, k) * f;
                if !d.is_zero() {
                    let v = m.get(r, i) - d;
                    m.set(r, i, v);
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        let minus = -BigInt::one();
        self.a.scale_row(i, &minus);
        if let Some(u) = self.u.as_mut() {
            u.scale_row(i, &minus);
        }
    }

    /// Position of the smallest nonzero |entry| in the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a.get(i, j).abs();
                if !v.is_zero() && best.as_ref().is_none_or(|(_, _, b)| &v < b) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form, smallest-|entry| pivoting.
pub fn smith_normal_form(m: &IntMatrix, want_transforms: bool) -> SnfResult {
    let (rows, cols) = m.shape();
    let mut r = Reducer {
        a: m.clone(),
        u: want_transforms.then(|| IntMatrix::identity(rows)),
        v: want_transforms.then(|| IntMatrix::identity(cols)),
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = r.min_entry(t) else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            let pivot = r.a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if r.a.get(i, t).is_zero() {
                    continue;
                }
                let q = r.a.get(i, t).div_floor(&pivot);
                r.sub_row(i, t, &q);
                if !r.a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if r.a.get(t, j).is_zero() {
                    continue;
                }
                let q = r.a.get(t, j).div_floor(&pivot);
                r.sub_col(j, t, &q);
                if !r.a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder smaller than the pivot survived; move it up.
                let (pi, pj) = r.min_entry_in_cross(t);
                r.swap_rows(t, pi);
                r.swap_cols(t, pj);
                continue;
            }
            // Divisibility of the trailing block by the pivot.
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !r.a.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    // row_t += row_i, then reduce again.
                    r.sub_row(t, i, &-BigInt::one());
                }
                None => break,
            }
        }
        if r.a.get(t, t).is_negative() {
            r.negate_row(t);
        }
        diagonal.push(r.a.get(t, t).clone());
        t += 1;
    }
    let transforms = match (r.u, r.v) {
        (Some(u), Some(v)) => Some((u, v)),
        _ => None,
    };
    SnfResult { diagonal, transforms }
}

impl Reducer {
    fn min_entry_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.a.get(t, t).abs());
        for i in t + 1..self.a.rows() {
            let v = self.a.get(i, t).abs();
            if !v.is_zero() && v < best.2 {
                best = (i, t, v);
            }
        }
        for j in t + 1..self.a.cols() {
            let v = self.a.get(t, j).abs();
            if !v.is_zero() && v < best.2 {
                best = (t, j, v);
            }
        }
        (best.0, best.1)
    }
}

pub fn has_torsion(r: &SnfResult) -> bool {
    r.has_torsion()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub betti: usize,
    #[serde(serialize_with = "crate::serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

/// Betti number and torsion coefficients of `H_p(K)`.
pub fn homology_summary(k: &SimplicialComplex, p: usize) -> Result<HomologySummary> {
    if p as isize > k.dim() {
        return Err(Error::DimensionOutOfRange {
            dim: p as isize,
            min: 0,
            max: k.dim(),
        });
    }
    let rank_p = if p == 0 { 0 } else { k.boundary_matrix(p)?.rank() };
    let (rank_up, torsion) = if (p + 1) as isize <= k.dim() {
        let snf = smith_normal_form(&k.boundary_matrix(p + 1)?, false);
        (snf.rank(), snf.torsion_coefficients())
    } else {
        (0, vec![])
    };
    Ok(HomologySummary {
        betti: k.count(p) - rank_p - rank_up,
        torsion,
    })
}

/// Pure subcomplex pair `(L, L0)` whose relative homology has torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionWitness {
    /// (p+1)-simplex indices spanning `L`.
    pub l_cols: Vec<usize>,
    /// p-simplex indices spanning `L0`.
    pub l0_rows: Vec<usize>,
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub torsion_coefficient: BigInt,
}

/// Builds `(L, L0)` from a square submatrix of `b` with `|det| > 1`: `L` is
/// the chosen columns, `L0` the rows that are nonzero on those columns but
/// not chosen. The relative boundary matrix of the pair is then exactly the
/// submatrix, up to ordering.
pub fn torsion_witness_from_matrix(b: &IntMatrix, rows: &[usize], cols: &[usize]) -> Result<TorsionWitness> {
    if rows.len() != cols.len() {
        return Err(Error::NotSquare {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    if let Some(&i) = rows.iter().find(|&&i| i >= b.rows()) {
        return Err(Error::IndexOutOfRange { index: i, len: b.rows() });
    }
    if let Some(&j) = cols.iter().find(|&&j| j >= b.cols()) {
        return Err(Error::IndexOutOfRange { index: j, len: b.cols() });
    }
    let det = b.submatrix(rows, cols).determinant()?;
    if det.abs() <= BigInt::one() {
        return Err(Error::ContractViolation(format!(
            "submatrix determinant {det} has magnitude at most 1"
        )));
    }
    let mut l_cols = cols.to_vec();
    l_cols.sort_unstable();
    let mut l0_rows: Vec<usize> = (0..b.rows())
        .filter(|i| !rows.contains(i))
        .filter(|&i| l_cols.iter().any(|&j| !b.get(i, j).is_zero()))
        .collect();
    l0_rows.sort_unstable();
    let rel = relative_submatrix(b, &l_cols, &l0_rows)?;
    let snf = smith_normal_form(&rel.matrix, false);
    let torsion_coefficient = snf
        .torsion_coefficients()
        .pop()
        .ok_or_else(|| Error::Internal("relative boundary matrix has no torsion".into()))?;
    Ok(TorsionWitness {
        l_cols,
        l0_rows,
        torsion_coefficient,
    })
}

/// Same as [`torsion_witness_from_matrix`] on `[∂_{p+1}]` of `k`.
pub fn torsion_witness_from_submatrix(
    k: &SimplicialComplex,
    p: usize,
    rows: &[usize],
    cols: &[usize],
) -> Result<TorsionWitness> {
    torsion_witness_from_matrix(&k.boundary_matrix(p + 1)?, rows, cols)
}

/// TU verdict for `[∂_{p+1}]` plus, when it is not TU, the relative-torsion
/// pair read off the violating minor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionScan {
    pub verdict: TuVerdict,
    pub witness: Option<TorsionWitness>,
}

impl TorsionScan {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.verdict.to_json();
        v["torsion_witness"] = serde_json::to_value(&self.witness).expect("witness serializes");
        v
    }
}

pub fn torsion_scan(k: &SimplicialComplex, p: usize, opts: &TuOptions) -> Result<TorsionScan> {
    let b = k.boundary_matrix(p + 1)?;
    let verdict = tu_verdict(k, p, opts)?;
    let witness = match &verdict.witness {
        Some(w) => Some(torsion_witness_from_matrix(&b, &w.rows, &w.cols)?),
        None => None,
    };
    Ok(TorsionScan { verdict, witness })
}
