//! Finite simplicial complexes, integer chains and boundary matrices.
//!
//! Every simplex is stored in canonical form (vertices ascending) and the
//! elementary chain basis of each dimension is ordered lexicographically on
//! those sorted tuples. An input vertex ordering only contributes a sign, the
//! parity of the permutation that sorts it.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// An unoriented simplex in canonical (ascending) vertex order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Canonicalizes an oriented vertex list. Returns the simplex together
    /// with the sign (+1 / -1) of the sorting permutation.
    pub fn oriented(vertices: &[u32]) -> Result<(Simplex, i8)> {
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex {
                vertices: vec![],
                reason: "no vertices".into(),
            });
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex {
                vertices: vertices.to_vec(),
                reason: "repeated vertex".into(),
            });
        }
        // Parity from the inversion count.
        let mut inversions = 0usize;
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i] > vertices[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Ok((Simplex(sorted), sign))
    }

    pub fn new(vertices: &[u32]) -> Result<Simplex> {
        Self::oriented(vertices).map(|(s, _)| s)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The codimension-one faces with their incidence signs, in the order
    /// `(-1)^i [v_0, .., v̂_i, .., v_q]`.
    pub fn boundary_faces(&self) -> Vec<(Simplex, i8)> {
        if self.0.len() < 2 {
            return vec![];
        }
        (0..self.0.len())
            .map(|i| {
                let mut f = self.0.clone();
                f.remove(i);
                (Simplex(f), if i % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Closure of a list of (possibly oriented) maximal simplices.
    pub fn from_maximal<S: AsRef<[u32]>>(maximal: &[S]) -> Result<Self> {
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        for raw in maximal {
            let top = Simplex::new(raw.as_ref())?;
            let verts = top.vertices();
            let k = verts.len();
            if sets.len() < k {
                sets.resize_with(k, BTreeSet::new);
            }
            // All non-empty subsets of the vertex set.
            for mask in 1u64..(1u64 << k) {
                let face: Vec<u32> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| verts[b]).collect();
                sets[face.len() - 1].insert(Simplex(face));
            }
        }
        let by_dim: Vec<Vec<Simplex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = by_dim
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(SimplicialComplex { by_dim, index })
    }

    /// Maximum dimension, or -1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 1
    }

    pub fn count(&self, q: usize) -> usize {
        self.by_dim.get(q).map_or(0, Vec::len)
    }

    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.by_dim.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, q: usize, i: usize) -> &Simplex {
        &self.by_dim[q][i]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    fn check_dim(&self, q: usize, min: usize) -> Result<()> {
        if q < min || q as isize > self.dim() {
            return Err(Error::DimensionOutOfRange {
                dim: q as isize,
                min: min as isize,
                max: self.dim(),
            });
        }
        Ok(())
    }

    /// `[∂_q]`: rows indexed by (q-1)-simplices, columns by q-simplices.
    pub fn boundary_matrix(&self, q: usize) -> Result<IntMatrix> {
        self.check_dim(q, 1)?;
        let mut m = IntMatrix::zeros(self.count(q - 1), self.count(q));
        for (j, tau) in self.by_dim[q].iter().enumerate() {
            for (face, sign) in tau.boundary_faces() {
                let i = self.index[q - 1][&face];
                m.set(i, j, BigInt::from(sign));
            }
        }
        Ok(m)
    }

    /// `[∂_{p+1}]`, or the empty `m x 0` matrix when there are no
    /// (p+1)-simplices.
    pub fn coboundary_source(&self, p: usize) -> Result<IntMatrix> {
        self.check_dim(p, 0)?;
        if (p + 1) as isize > self.dim() {
            Ok(IntMatrix::zeros(self.count(p), 0))
        } else {
            self.boundary_matrix(p + 1)
        }
    }

    pub fn boundary_of_chain(&self, c: &Chain) -> Result<Chain> {
        if c.dim == 0 {
            return Err(Error::DimensionMismatch("boundary of a 0-chain".into()));
        }
        self.check_dim(c.dim, 1)?;
        let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (&j, coeff) in &c.coeffs {
            let tau = self.by_dim[c.dim].get(j).ok_or(Error::IndexOutOfRange {
                index: j,
                len: self.count(c.dim),
            })?;
            for (face, sign) in tau.boundary_faces() {
                let i = self.index[c.dim - 1][&face];
                *out.entry(i).or_insert_with(BigInt::zero) += coeff * BigInt::from(sign);
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(Chain {
            dim: c.dim - 1,
            coeffs: out,
        })
    }

    /// Relative boundary matrix `[∂_q(L, L0)]` for `L` given by q-simplex
    /// indices and `L0` by (q-1)-simplex indices.
    pub fn relative_boundary_matrix(
        &self,
        q: usize,
        l_cols: &[usize],
        l0_rows: &[usize],
    ) -> Result<RelativeBoundary> {
        let b = self.boundary_matrix(q)?;
        relative_submatrix(&b, l_cols, l0_rows)
    }

    /// Finds signs `ε_j` for the q-simplices so that every (q-1)-face shared
    /// by two q-simplices receives opposite induced orientations.
    ///
    /// `Ok(None)` means the sign propagation contradicted itself
    /// (non-orientable); a face with three or more cofaces is an error.
    pub fn orient_consistently(&self, q: usize) -> Result<Option<Vec<i8>>> {
        let b = self.boundary_matrix(q)?;
        orient_columns(&b, q - 1)
    }

    /// Indices of the q-simplices having the (q-1)-simplex `face` as a face.
    pub fn cofaces(&self, q: usize, face: usize) -> Vec<usize> {
        let f = &self.by_dim[q - 1][face];
        self.by_dim[q]
            .iter()
            .enumerate()
            .filter(|(_, t)| is_face(f, t))
            .map(|(j, _)| j)
            .collect()
    }

    /// Euclidean p-volumes of the p-simplices, rounded to `1/denominator_cap`
    /// unless the volume is an exact rational.
    pub fn weights_from_coordinates(
        &self,
        coords: &HashMap<u32, Vec<BigRational>>,
        p: usize,
        denominator_cap: u64,
    ) -> Result<Vec<BigRational>> {
        self.check_dim(p, 0)?;
        let mut ambient: Option<usize> = None;
        for v in self.simplices(0) {
            let id = v.vertices()[0];
            let pt = coords.get(&id).ok_or(Error::MissingCoordinates(id))?;
            match ambient {
                None => ambient = Some(pt.len()),
                Some(d) if d != pt.len() => {
                    return Err(Error::DimensionMismatch(format!(
                        "vertex {id} has {} coordinates, expected {d}",
                        pt.len()
                    )))
                }
                _ => {}
            }
        }
        if let Some(d) = ambient {
            if d < p {
                return Err(Error::DimensionMismatch(format!(
                    "ambient dimension {d} is smaller than simplex dimension {p}"
                )));
            }
        }
        self.simplices(p)
            .iter()
            .map(|s| {
                let pts: Vec<&Vec<BigRational>> = s.vertices().iter().map(|v| &coords[v]).collect();
                Ok(simplex_volume(&pts, denominator_cap))
            })
            .collect()
    }
}

pub const DEFAULT_DENOMINATOR_CAP: u64 = 1_000_000_000;

fn is_face(face: &Simplex, of: &Simplex) -> bool {
    face.vertices().iter().all(|v| of.vertices().binary_search(v).is_ok())
}

/// Column signs making every row with two nonzeros hold opposite signs.
/// `face_dim` is only used to label the error.
pub(crate) fn orient_columns(b: &IntMatrix, face_dim: usize) -> Result<Option<Vec<i8>>> {
    let (m, n) = b.shape();
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n];
    for i in 0..m {
        let nz: Vec<usize> = (0..n).filter(|&j| !b.get(i, j).is_zero()).collect();
        match nz.len() {
            0 | 1 => {}
            2 => {
                let (a, c) = (nz[0], nz[1]);
                // ε_a·B[i][a] + ε_c·B[i][c] = 0  ⇔  ε_c = -ε_a·B[i][a]·B[i][c]
                let rel = if b.get(i, a).signum() == b.get(i, c).signum() { -1 } else { 1 };
                adj[a].push((c, rel));
                adj[c].push((a, rel));
            }
            _ => {
                return Err(Error::NotPseudomanifold {
                    dim: face_dim,
                    face: i,
                })
            }
        }
    }
    let mut sign = vec![0i8; n];
    for start in 0..n {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(v, rel) in &adj[u] {
                let want = sign[u] * rel;
                if sign[v] == 0 {
                    sign[v] = want;
                    queue.push_back(v);
                } else if sign[v] != want {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(sign))
}

/// p-volume from the Cayley–Menger determinant of the squared distances.
fn simplex_volume(points: &[&Vec<BigRational>], denominator_cap: u64) -> BigRational {
    let k = points.len() - 1;
    if k == 0 {
        return BigRational::one();
    }
    let n = k + 2;
    let mut cm = vec![vec![BigRational::zero(); n]; n];
    cm[0][1..].fill(BigRational::one());
    for row in cm.iter_mut().skip(1) {
        row[0] = BigRational::one();
    }
    for i in 0..=k {
        for j in 0..=k {
            if i != j {
                let d2: BigRational = points[i]
                    .iter()
                    .zip(points[j].iter())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                cm[i + 1][j + 1] = d2;
            }
        }
    }
    let det = rational_det(cm);
    // V² = (-1)^{k+1} det / (2^k (k!)²)
    let mut factorial = BigInt::one();
    for i in 2..=k {
        factorial *= BigInt::from(i);
    }
    let scale = (BigInt::one() << k) * &factorial * &factorial;
    let mut v2 = det / BigRational::from_integer(scale);
    if k.is_multiple_of(2) {
        v2 = -v2;
    }
    if v2.is_negative() || v2.is_zero() {
        return BigRational::zero();
    }
    let (num, den) = (v2.numer().clone(), v2.denom().clone());
    let (rn, rd) = (num.sqrt(), den.sqrt());
    if &rn * &rn == num && &rd * &rd == den {
        return BigRational::new(rn, rd);
    }
    // Round sqrt(v2)·cap to the nearest integer: floor(sqrt(4·v2·cap²)) = floor(2·sqrt(v2)·cap).
    let cap = BigInt::from(denominator_cap);
    let scaled = (BigInt::from(4) * &num * &cap * &cap) / &den;
    let twice = scaled.sqrt();
    let rounded = (twice + BigInt::one()) / BigInt::from(2);
    BigRational::new(rounded, cap)
}

#[allow(clippy::needless_range_loop)]
fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let v = &a[k][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    det
}

/// Relative boundary matrix plus the maps back to the full bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeBoundary {
    pub matrix: IntMatrix,
    /// `row_map[r]` is the (q-1)-simplex index of row `r`.
    pub row_map: Vec<usize>,
    /// `col_map[c]` is the q-simplex index of column `c`.
    pub col_map: Vec<usize>,
}

/// Keeps the columns `l_cols`, drops the rows in `l0_rows` and every row that
/// is zero on the kept columns. Columns and rows come out in ascending order.
pub fn relative_submatrix(b: &IntMatrix, l_cols: &[usize], l0_rows: &[usize]) -> Result<RelativeBoundary> {
    let cols: BTreeSet<usize> = l_cols.iter().copied().collect();
    let excluded: BTreeSet<usize> = l0_rows.iter().copied().collect();
    if let Some(&j) = cols.iter().find(|&&j| j >= b.cols()) {
        return Err(Error::IndexOutOfRange { index: j, len: b.cols() });
    }
    if let Some(&i) = excluded.iter().find(|&&i| i >= b.rows()) {
        return Err(Error::IndexOutOfRange { index: i, len: b.rows() });
    }
    let col_map: Vec<usize> = cols.into_iter().collect();
    let row_map: Vec<usize> = (0..b.rows())
        .filter(|i| !excluded.contains(i))
        .filter(|&i| col_map.iter().any(|&j| !b.get(i, j).is_zero()))
        .collect();
    Ok(RelativeBoundary {
        matrix: b.submatrix(&row_map, &col_map),
        row_map,
        col_map,
    })
}

/// A p-chain: sparse integer coefficients on the p-simplex basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub dim: usize,
    coeffs: BTreeMap<usize, BigInt>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// From a dense coefficient vector over the p-basis.
    pub fn from_dense(dim: usize, values: &[BigInt]) -> Self {
        let coeffs = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        Chain { dim, coeffs }
    }

    /// Adds `coeff` times the oriented simplex `vertices`, which must belong
    /// to `complex`.
    pub fn add_oriented(&mut self, complex: &SimplicialComplex, vertices: &[u32], coeff: BigInt) -> Result<()> {
        if vertices.len() != self.dim + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{}-chain given simplex with {} vertices",
                self.dim,
                vertices.len()
            )));
        }
        let (s, sign) = Simplex::oriented(vertices)?;
        let idx = complex.index_of(&s).ok_or_else(|| Error::InvalidSimplex {
            vertices: vertices.to_vec(),
            reason: "not in complex".into(),
        })?;
        let e = self.coeffs.entry(idx).or_insert_with(BigInt::zero);
        *e += coeff * BigInt::from(sign);
        if e.is_zero() {
            self.coeffs.remove(&idx);
        }
        Ok(())
    }

    pub fn get(&self, i: usize) -> BigInt {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&i, v)| (i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_dense(&self, len: usize) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); len];
        for (&i, v) in &self.coeffs {
            if i >= len {
                return Err(Error::IndexOutOfRange { index: i, len });
            }
            out[i] = v.clone();
        }
        Ok(out)
    }
}
