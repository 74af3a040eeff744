mod common;

use common::{bi, random_surface, relabel, Shape};
use num_bigint::BigInt;
use num_traits::Zero;
use ohcp_core::fixtures;
use ohcp_core::homology::homology_summary;
use ohcp_core::io::{parse_chain, parse_complex, write_chain, write_complex};
use ohcp_core::{Chain, Simplex, SimplicialComplex};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn boundary_squares_to_zero(k: &SimplicialComplex) -> bool {
    (2..=k.dim().max(0) as usize).all(|q| {
        let prod = k.boundary_matrix(q - 1).unwrap().mul(&k.boundary_matrix(q).unwrap()).unwrap();
        (0..prod.rows()).all(|i| prod.is_zero_row(i))
    })
}

fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    (0..=k.dim() as usize).map(|q| if q % 2 == 0 { k.count(q) as i64 } else { -(k.count(q) as i64) }).sum()
}

fn betti_alternating_sum(k: &SimplicialComplex) -> i64 {
    (0..=k.dim() as usize)
        .map(|q| {
            let b = homology_summary(k, q).unwrap().betti as i64;
            if q % 2 == 0 { b } else { -b }
        })
        .sum()
}

#[test]
fn fixtures_satisfy_boundary_of_boundary() {
    for k in [
        fixtures::moebius_strip(),
        fixtures::projective_plane(),
        fixtures::torus(),
        fixtures::cylinder(),
        fixtures::w7_complex(),
        fixtures::solid_octahedron(),
        fixtures::two_tetrahedra(),
        fixtures::hourglass().complex,
    ] {
        assert!(boundary_squares_to_zero(&k));
        assert_eq!(euler_characteristic(&k), betti_alternating_sum(&k));
    }
}

#[test]
fn projective_plane_has_two_torsion() {
    let k = fixtures::projective_plane();
    let h1 = homology_summary(&k, 1).unwrap();
    assert_eq!(h1.betti, 0);
    assert_eq!(h1.torsion, vec![bi(2)]);
    assert_eq!(homology_summary(&k, 2).unwrap().betti, 0);
    // The Möbius strip has no torsion even though its boundary matrix is not TU.
    assert!(homology_summary(&fixtures::moebius_strip(), 1).unwrap().torsion.is_empty());
}

#[test]
fn chain_files_round_trip() {
    let h = fixtures::hourglass();
    let text = write_chain(&h.complex, &h.chain);
    let back = parse_chain(&text, &h.complex, 1).unwrap();
    assert_eq!(back, h.chain);
    let k2 = parse_complex(&write_complex(&h.complex)).unwrap();
    assert_eq!(k2.simplices(2), h.complex.simplices(2));
}

#[test]
fn boundary_of_a_boundary_chain_is_zero() {
    let k = fixtures::torus();
    let mut c = Chain::zero(2);
    for t in 0..k.count(2) {
        c.add_oriented(&k, k.simplex(2, t).vertices(), BigInt::from(t as i64 - 7)).unwrap();
    }
    let d = k.boundary_of_chain(&c).unwrap();
    assert!(!d.is_zero());
    assert!(k.boundary_of_chain(&d).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_surfaces_have_the_expected_homology(seed in any::<u64>(), shape in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = [Shape::Disk, Shape::Sphere, Shape::Cylinder][shape];
        let simplices = relabel(&random_surface(shape, &mut rng), &mut rng);
        let k = SimplicialComplex::from_maximal(&simplices).unwrap();
        prop_assert!(boundary_squares_to_zero(&k));
        let (b1, b2) = match shape {
            Shape::Disk => (0, 0),
            Shape::Sphere => (0, 1),
            Shape::Cylinder => (1, 0),
        };
        prop_assert_eq!(homology_summary(&k, 0).unwrap().betti, 1);
        prop_assert_eq!(homology_summary(&k, 1).unwrap().betti, b1);
        prop_assert_eq!(homology_summary(&k, 2).unwrap().betti, b2);
        prop_assert!(homology_summary(&k, 1).unwrap().torsion.is_empty());
    }

    #[test]
    fn reversing_a_simplex_negates_its_coefficient(perm in Just(vec![0u32, 1, 2]).prop_shuffle(), coeff in -5i64..=5) {
        let k = fixtures::tetrahedron_surface();
        let verts: Vec<u32> = perm.iter().map(|&i| [0u32, 1, 3][i as usize]).collect();
        let (s, sign) = Simplex::oriented(&verts).unwrap();
        let mut c = Chain::zero(2);
        c.add_oriented(&k, &verts, BigInt::from(coeff)).unwrap();
        let idx = k.index_of(&s).unwrap();
        prop_assert_eq!(c.get(idx), BigInt::from(coeff * sign as i64));
        if coeff == 0 {
            prop_assert!(c.is_zero());
        } else {
            prop_assert!(!c.get(idx).is_zero());
        }
    }
}
