mod common;

use common::*;
use latvoa::lattice::vectors;
use latvoa::vertex::vertex_mode;
use latvoa::{Coord, Coset, Element, Lattice, LatticeVector, NamedLattice};
use proptest::prelude::*;

fn half_alpha1_module() -> Coset {
    Coset::new(Lattice::named(NamedLattice::L), LatticeVector::alpha(0).scale(Coord::new(1, 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn borcherds_commutator_on_vl(seed in any::<u64>(), m in -3i32..=2, n in -3i32..=2) {
        let mut r = rng(seed);
        let l = coset(NamedLattice::L);
        let (u, v, w) = (random_element(&mut r, &l, 2), random_element(&mut r, &l, 2), random_element(&mut r, &l, 2));
        let d = borcherds_defect(&u, &v, &w, m, n);
        prop_assert!(d.is_zero(), "u = {u}, v = {v}, w = {w}, m = {m}, n = {n}: {d}");
    }

    #[test]
    fn borcherds_commutator_on_a_module(seed in any::<u64>(), m in -2i32..=2, n in -2i32..=2) {
        let mut r = rng(seed);
        let l = coset(NamedLattice::L);
        let u = random_element(&mut r, &l, 2);
        let v = random_element(&mut r, &l, 1);
        let w = random_element(&mut r, &half_alpha1_module(), 2);
        let d = borcherds_defect(&u, &v, &w, m, n);
        prop_assert!(d.is_zero(), "u = {u}, v = {v}, w = {w}, m = {m}, n = {n}: {d}");
    }

    #[test]
    fn modes_respect_the_grading(seed in any::<u64>(), n in -4i32..=4) {
        let mut r = rng(seed);
        let l = coset(NamedLattice::L);
        let (u, v) = (random_element(&mut r, &l, 3), random_element(&mut r, &l, 3));
        for (um, uc) in u.iter() {
            for (vm, vc) in v.iter() {
                let single = |m: &latvoa::FockMonomial, c: &latvoa::Q| Element::from_terms([(m.clone(), *c)]);
                let out = vertex_mode(&single(um, uc), n, &single(vm, vc)).unwrap();
                let want = um.weight() + vm.weight() - Coord::from_integer(n as i64 + 1);
                prop_assert!(out.monomials().all(|x| x.weight() == want));
            }
        }
    }

    #[test]
    fn creation_and_vacuum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = random_element(&mut r, &coset(NamedLattice::N), 3);
        prop_assert_eq!(vertex_mode(&u, -1, &Element::vacuum()).unwrap(), u.clone());
        prop_assert_eq!(vertex_mode(&Element::vacuum(), -1, &u).unwrap(), u.clone());
        prop_assert!(vertex_mode(&Element::vacuum(), 0, &u).unwrap().is_zero());
    }

    #[test]
    fn skew_symmetry_at_top_mode(seed in any::<u64>()) {
        // u_0 v = -v_0 u + L(-1)-exact terms; on weight-one elements it is the Lie bracket
        let mut r = rng(seed);
        let l = coset(NamedLattice::L);
        let ones: Vec<_> = latvoa::fock::basis_at(&l, Coord::from_integer(1));
        let pick = |r: &mut rand_chacha::ChaCha8Rng| {
            use rand::seq::SliceRandom;
            Element::from_monomial(ones.choose(r).unwrap().clone())
        };
        let (u, v) = (pick(&mut r), pick(&mut r));
        let a = vertex_mode(&u, 0, &v).unwrap();
        let b = vertex_mode(&v, 0, &u).unwrap();
        prop_assert_eq!(a.add(&b), Element::zero());
        let p = vertex_mode(&u, 1, &v).unwrap();
        let q = vertex_mode(&v, 1, &u).unwrap();
        prop_assert_eq!(p, q);
    }
}

#[test]
fn exponentials_of_roots_commute_as_expected() {
    let r1 = Element::from_monomial(latvoa::FockMonomial::exp(vectors::root1()));
    let r2 = Element::from_monomial(latvoa::FockMonomial::exp(-vectors::root1()));
    assert!(borcherds_defect(&r1, &r2, &Element::vacuum(), 1, -1).is_zero());
}
