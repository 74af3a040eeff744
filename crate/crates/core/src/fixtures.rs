//! Small named complexes and matrices used by the tests, the acceptance
//! suite and the CLI examples.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complex::{Chain, Simplex, SimplicialComplex};
use crate::io::parse_matrix;
use crate::matrix::IntMatrix;

pub const MOEBIUS_B2_MAT: &str = include_str!("../fixtures/moebius_b2.mat");
pub const PROJECTIVE_PLANE_B2_MAT: &str = include_str!("../fixtures/prjctvpln_b2.mat");

/// `[∂_2]` of the 6-triangle Möbius strip, 12 x 6.
pub fn moebius_b2() -> IntMatrix {
    parse_matrix(MOEBIUS_B2_MAT).expect("bundled fixture parses")
}

/// `[∂_2]` of the 10-triangle projective plane, 15 x 10.
pub fn projective_plane_b2() -> IntMatrix {
    parse_matrix(PROJECTIVE_PLANE_B2_MAT).expect("bundled fixture parses")
}

/// The 6 x 6 Möbius cycle submatrix: columns 5,4,3,2,1,0 and rows
/// 0,3,8,9,10,2 of [`moebius_b2`].
pub const MOEBIUS_S_ROWS: [usize; 6] = [0, 3, 8, 9, 10, 2];
pub const MOEBIUS_S_COLS: [usize; 6] = [5, 4, 3, 2, 1, 0];
/// The 5 x 5 Möbius band inside the projective plane.
pub const PROJECTIVE_S_ROWS: [usize; 5] = [5, 11, 13, 12, 7];
pub const PROJECTIVE_S_COLS: [usize; 5] = [6, 9, 3, 8, 4];

pub fn moebius_s() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![1i64, 0, 0, 0, 0, 1],
        vec![-1, 1, 0, 0, 0, 0],
        vec![0, -1, 1, 0, 0, 0],
        vec![0, 0, -1, 1, 0, 0],
        vec![0, 0, 0, -1, 1, 0],
        vec![0, 0, 0, 0, 1, -1],
    ])
}

pub fn projective_s() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![-1i64, 0, 0, 0, -1],
        vec![-1, 1, 0, 0, 0],
        vec![0, -1, 1, 0, 0],
        vec![0, 0, -1, 1, 0],
        vec![0, 0, 0, -1, 1],
    ])
}

/// The 7 x 7 non-TU submatrix of `[∂_3]` of [`w7_complex`].
pub fn w7_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![-1i64, -1, -1, -1, 0, 0, 0],
        vec![1, 0, 0, 0, -1, 0, 0],
        vec![-1, 0, 0, 0, 0, -1, 0],
        vec![1, 0, 0, 0, 0, 0, -1],
        vec![0, 1, 0, 0, 1, 0, 0],
        vec![0, 0, -1, 0, 0, 1, 0],
        vec![0, 0, 0, 1, 0, 0, 1],
    ])
}

pub const W7_TETRAHEDRA: [[u32; 4]; 7] = [
    [0, 1, 2, 3],
    [0, 1, 2, 4],
    [0, 1, 2, 5],
    [0, 1, 2, 6],
    [0, 1, 3, 4],
    [0, 2, 3, 5],
    [1, 2, 3, 6],
];

fn build(maximal: &[Vec<u32>]) -> SimplicialComplex {
    SimplicialComplex::from_maximal(maximal).expect("fixture simplices are valid")
}

/// Seven tetrahedra on vertices 0..6 whose `[∂_3]` is not TU although they
/// contain no 3-dimensional Möbius complex.
pub fn w7_complex() -> SimplicialComplex {
    build(&W7_TETRAHEDRA.map(|t| t.to_vec()))
}

pub fn tetrahedron_surface_simplices() -> Vec<Vec<u32>> {
    vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
}

pub fn tetrahedron_surface() -> SimplicialComplex {
    build(&tetrahedron_surface_simplices())
}

/// Strip of six triangles `(i, i+1, i+2)` on vertices 0..5, closed up with a
/// half twist: 6 vertices, 12 edges, boundary a single hexagon.
pub fn moebius_strip_simplices() -> Vec<Vec<u32>> {
    vec![
        vec![0, 1, 2],
        vec![1, 2, 3],
        vec![2, 3, 4],
        vec![3, 4, 5],
        vec![4, 5, 1],
        vec![5, 1, 0],
    ]
}

pub fn moebius_strip() -> SimplicialComplex {
    build(&moebius_strip_simplices())
}

/// Boundary edges of [`moebius_strip`], the hexagon 0-2-4-1-3-5-0.
pub fn moebius_boundary_edges() -> Vec<[u32; 2]> {
    vec![[0, 2], [2, 4], [1, 4], [1, 3], [3, 5], [0, 5]]
}

/// Six triangles `(i, i+1, i+2) mod 6`: an annulus whose boundary circles are
/// 0-2-4 and 1-3-5.
pub fn cylinder_simplices() -> Vec<Vec<u32>> {
    (0..6u32).map(|i| vec![i, (i + 1) % 6, (i + 2) % 6]).collect()
}

pub fn cylinder() -> SimplicialComplex {
    build(&cylinder_simplices())
}

/// Six-vertex projective plane (half of the icosahedron).
pub fn projective_plane_simplices() -> Vec<Vec<u32>> {
    [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ]
    .map(|t| t.to_vec())
    .to_vec()
}

pub fn projective_plane() -> SimplicialComplex {
    build(&projective_plane_simplices())
}

/// `rows x cols` grid torus, each square split along its main diagonal.
/// Needs `rows, cols >= 3`.
pub fn torus_simplices(rows: u32, cols: u32) -> Vec<Vec<u32>> {
    let v = |i: u32, j: u32| (i % rows) * cols + (j % cols);
    let mut out = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            out.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            out.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    out
}

pub fn torus() -> SimplicialComplex {
    build(&torus_simplices(3, 3))
}

/// Fan of `k >= 3` triangles around vertex 0; a disk with boundary 1..k.
pub fn fan_disk_simplices(k: u32) -> Vec<Vec<u32>> {
    (1..=k).map(|i| vec![0, i, i % k + 1]).collect()
}

/// Suspension of a `k`-gon: a sphere with `2k` triangles, apexes `k`, `k+1`.
pub fn bipyramid_simplices(k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..k {
        let j = (i + 1) % k;
        out.push(vec![i, j, k]);
        out.push(vec![i, j, k + 1]);
    }
    out
}

/// Band of `2k` triangles between the rings `0..k` and `k..2k`.
pub fn ring_cylinder_simplices(k: u32) -> Vec<Vec<u32>> {
    band(&(0..k).collect::<Vec<_>>(), &(k..2 * k).collect::<Vec<_>>())
}

fn band(lower: &[u32], upper: &[u32]) -> Vec<Vec<u32>> {
    let k = lower.len();
    (0..k)
        .flat_map(|i| {
            let j = (i + 1) % k;
            [vec![lower[i], lower[j], upper[i]], vec![lower[j], upper[j], upper[i]]]
        })
        .collect()
}

/// Two tetrahedra glued along a triangle.
pub fn two_tetrahedra() -> SimplicialComplex {
    build(&[vec![0, 1, 2, 3], vec![0, 1, 2, 4]])
}

/// Solid octahedron coned from an interior vertex 6 over its 8 faces.
pub fn solid_octahedron() -> SimplicialComplex {
    // 0/1 = ±x, 2/3 = ±y, 4/5 = ±z
    let mut out = Vec::new();
    for x in [0, 1] {
        for y in [2, 3] {
            for z in [4, 5] {
                out.push(vec![x, y, z, 6]);
            }
        }
    }
    build(&out)
}

/// A cylinder of three stacked rings (0..3 bottom, 3..6 waist, 6..9 top), 12
/// triangles and 21 edges.
pub struct Hourglass {
    pub complex: SimplicialComplex,
    /// Waist edges weigh 1, every other edge 10.
    pub weights: Vec<BigRational>,
    /// Both boundary circles, traversed in the same direction.
    pub chain: Chain,
}

pub const HOURGLASS_BOTTOM: [u32; 3] = [0, 1, 2];
pub const HOURGLASS_WAIST: [u32; 3] = [3, 4, 5];
pub const HOURGLASS_TOP: [u32; 3] = [6, 7, 8];

pub fn hourglass() -> Hourglass {
    let mut simplices = band(&HOURGLASS_BOTTOM, &HOURGLASS_WAIST);
    simplices.extend(band(&HOURGLASS_WAIST, &HOURGLASS_TOP));
    let complex = build(&simplices);
    let is_waist = |s: &Simplex| s.vertices().iter().all(|v| HOURGLASS_WAIST.contains(v));
    let weights = complex
        .simplices(1)
        .iter()
        .map(|e| BigRational::from_integer(BigInt::from(if is_waist(e) { 1 } else { 10 })))
        .collect();
    let mut chain = Chain::zero(1);
    for ring in [HOURGLASS_BOTTOM, HOURGLASS_TOP] {
        for i in 0..3 {
            chain
                .add_oriented(&complex, &[ring[i], ring[(i + 1) % 3]], BigInt::from(1))
                .expect("ring edge exists");
        }
    }
    Hourglass {
        complex,
        weights,
        chain,
    }
}
