//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use ohcp_core::fixtures::{bipyramid_simplices, fan_disk_simplices, ring_cylinder_simplices, tetrahedron_surface_simplices};
use ohcp_core::{LinearProgram, LpStatus};

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Disk,
    Sphere,
    Cylinder,
}

/// Random triangulation of a convex polygon on vertices `0..v`.
pub fn polygon_triangulation<R: Rng>(v: u32, rng: &mut R) -> Vec<Vec<u32>> {
    fn split<R: Rng>(poly: &[u32], rng: &mut R, out: &mut Vec<Vec<u32>>) {
        if poly.len() < 3 {
            return;
        }
        let k = rng.gen_range(1..poly.len() - 1);
        out.push(vec![poly[0], poly[k], poly[poly.len() - 1]]);
        split(&poly[..=k], rng, out);
        split(&poly[k..], rng, out);
    }
    let poly: Vec<u32> = (0..v).collect();
    let mut out = Vec::new();
    split(&poly, rng, &mut out);
    out
}

/// Small 2-complex of the given shape with at most 8 triangles and 20 edges.
pub fn random_surface<R: Rng>(shape: Shape, rng: &mut R) -> Vec<Vec<u32>> {
    match shape {
        Shape::Disk => {
            if rng.gen_bool(0.5) {
                fan_disk_simplices(rng.gen_range(3..=8))
            } else {
                polygon_triangulation(rng.gen_range(4..=10), rng)
            }
        }
        Shape::Sphere => {
            if rng.gen_bool(0.3) {
                tetrahedron_surface_simplices()
            } else {
                bipyramid_simplices(rng.gen_range(3..=4))
            }
        }
        Shape::Cylinder => ring_cylinder_simplices(rng.gen_range(3..=4)),
    }
}

/// Renames vertices through a random injection into `0..63`, which also
/// shuffles the canonical orientations of the simplices.
pub fn relabel<R: Rng>(simplices: &[Vec<u32>], rng: &mut R) -> Vec<Vec<u32>> {
    let mut labels: Vec<u32> = (0..63).collect();
    labels.shuffle(rng);
    simplices
        .iter()
        .map(|s| s.iter().map(|&v| labels[v as usize]).collect())
        .collect()
}

pub fn random_positive_weight<R: Rng>(rng: &mut R) -> BigRational {
    qr(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

/// Solves `B x = rhs` exactly for square `B`; `None` if singular.
pub fn solve_square(b: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = b.len();
    let mut aug: Vec<Vec<BigRational>> = b
        .iter()
        .zip(rhs)
        .map(|(row, r)| row.iter().cloned().chain(std::iter::once(r.clone())).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, piv);
        let p = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (v, pv) in aug[r].iter_mut().zip(pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Optimum over all basic solutions of `A x = b, l <= x <= u` with `A` of full
/// row rank: every variable is basic, at its lower bound, or at its finite
/// upper bound. Returns `None` when no basic solution is feasible. Only valid
/// for LPs known to be bounded.
pub fn vertex_enumeration(lp: &LinearProgram) -> Option<(BigRational, Vec<BigRational>)> {
    let n = lp.num_vars();
    let m = lp.num_constraints();
    let mut best: Option<(BigRational, Vec<BigRational>)> = None;
    let mut state = vec![0u8; n];
    loop {
        let basic: Vec<usize> = (0..n).filter(|&j| state[j] == 0).collect();
        let admissible = basic.len() == m && (0..n).all(|j| state[j] != 2 || lp.upper[j].is_some());
        if admissible {
            let mut x = vec![BigRational::zero(); n];
            for j in 0..n {
                match state[j] {
                    1 => x[j] = lp.lower[j].clone(),
                    2 => x[j] = lp.upper[j].clone().unwrap(),
                    _ => {}
                }
            }
            let rhs: Vec<BigRational> = (0..m)
                .map(|i| {
                    let fixed: BigRational = (0..n).filter(|&j| state[j] != 0).map(|j| &lp.a[i][j] * &x[j]).sum();
                    &lp.b[i] - fixed
                })
                .collect();
            let bmat: Vec<Vec<BigRational>> = (0..m).map(|i| basic.iter().map(|&j| lp.a[i][j].clone()).collect()).collect();
            if let Some(xb) = solve_square(&bmat, &rhs) {
                for (k, &j) in basic.iter().enumerate() {
                    x[j] = xb[k].clone();
                }
                if lp.is_feasible(&x) {
                    let obj = lp.objective_value(&x);
                    if best.as_ref().is_none_or(|(b, _)| obj < *b) {
                        best = Some((obj, x));
                    }
                }
            }
        }
        // next state in base 3
        let mut j = 0;
        loop {
            if j == n {
                return best;
            }
            state[j] += 1;
            if state[j] < 3 {
                break;
            }
            state[j] = 0;
            j += 1;
        }
    }
}

/// Random bounded LP with `n <= 6` variables and `m <= 4` full-rank rows.
/// Variables without an upper bound get a non-negative cost, so the
/// objective is bounded below on the feasible set.
pub fn random_bounded_lp<R: Rng>(rng: &mut R) -> LinearProgram {
    loop {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(1..=4.min(n));
        let a: Vec<Vec<BigRational>> = (0..m)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect())
            .collect();
        if rank(&a) < m {
            continue;
        }
        let lower: Vec<BigRational> = (0..n).map(|_| q(rng.gen_range(-1..=1))).collect();
        let upper: Vec<Option<BigRational>> = lower
            .iter()
            .map(|l| rng.gen_bool(0.5).then(|| l + qr(rng.gen_range(0..=8), rng.gen_range(1..=2))))
            .collect();
        let objective: Vec<BigRational> = upper
            .iter()
            .map(|u| match u {
                Some(_) => qr(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
                None => qr(rng.gen_range(0..=5), rng.gen_range(1..=3)),
            })
            .collect();
        // Usually aim b at a point inside the box so most instances are feasible.
        let b: Vec<BigRational> = if rng.gen_bool(0.7) {
            let x0: Vec<BigRational> = (0..n)
                .map(|j| match &upper[j] {
                    Some(u) => (&lower[j] + u) / q(2),
                    None => &lower[j] + q(rng.gen_range(0..=3)),
                })
                .collect();
            a.iter().map(|row| row.iter().zip(&x0).map(|(c, x)| c * x).sum()).collect()
        } else {
            (0..m).map(|_| q(rng.gen_range(-6..=6))).collect()
        };
        return LinearProgram::new(objective, a, b)
            .and_then(|lp| lp.with_bounds(lower, upper))
            .expect("generated LP is well formed");
    }
}

pub fn rank(a: &[Vec<BigRational>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = a.to_vec();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pr = rows[r].clone();
                for (v, pv) in rows[i].iter_mut().zip(pr) {
                    *v -= &f * pv;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn is_unbounded_or_infeasible(s: LpStatus) -> bool {
    s != LpStatus::Optimal
}

pub fn abs_sum(v: &[BigRational]) -> BigRational {
    v.iter().map(|x| x.abs()).fold(BigRational::zero(), |a, b| a + b)
}

pub fn one() -> BigRational {
    BigRational::one()
}

pub struct RandomInstance {
    pub shape: Shape,
    pub complex: ohcp_core::SimplicialComplex,
    pub instance: ohcp_core::OhcpInstance,
}

/// Random L1 instance on a small disk, sphere or cylinder (m <= 20, n <= 8)
/// with chain entries in [-3, 3] and positive rational weights.
pub fn random_l1_instance<R: Rng>(rng: &mut R) -> RandomInstance {
    let shape = [Shape::Disk, Shape::Sphere, Shape::Cylinder][rng.gen_range(0..3)];
    let simplices = relabel(&random_surface(shape, rng), rng);
    let complex = ohcp_core::SimplicialComplex::from_maximal(&simplices).unwrap();
    let m = complex.count(1);
    let chain: Vec<BigInt> = (0..m).map(|_| bi(rng.gen_range(-3..=3))).collect();
    let weights = (0..m).map(|_| random_positive_weight(rng)).collect();
    let boundary = complex.boundary_matrix(2).unwrap();
    let instance = ohcp_core::OhcpInstance::from_matrix(boundary, chain, weights, ohcp_core::Variant::L1).unwrap();
    RandomInstance { shape, complex, instance }
}

/// Largest |y_j| of an integral solution, at least 1.
pub fn y_magnitude(y: &[BigRational]) -> u32 {
    y.iter()
        .map(|v| v.abs().to_integer())
        .max()
        .and_then(|v| num_traits::ToPrimitive::to_u32(&v))
        .unwrap_or(0)
        .max(1)
}
