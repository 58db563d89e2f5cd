mod common;

use common::*;
use latvoa::chars::lattice_char;
use latvoa::fock::graded_dim;
use latvoa::lattice::{index, membership, n_congruence, theta_series};
use latvoa::{Coord, Lattice, LatticeVector, NamedLattice, Q};
use proptest::prelude::*;

#[test]
fn theta_matches_brute_force_to_q10() {
    for (name, c) in all_cosets() {
        let series = theta_series::<Q>(&c, Coord::from_integer(10), 30).unwrap();
        let counts = brute_force_theta(&c, 10, 8);
        for (e, k) in series.terms() {
            assert_eq!(*k, Q::from_integer(*counts.get(&e).unwrap_or(&0) as i128), "{name} at q^{e}");
        }
        for (e, k) in &counts {
            assert_eq!(series.coeff(*e), Q::from_integer(*k as i128), "{name} at q^{e}");
        }
    }
}

#[test]
fn graded_dims_match_characters() {
    for (name, c) in all_cosets() {
        let order = Coord::from_integer(4);
        let ch = lattice_char::<Q>(&c, 30, order).unwrap();
        let mut w = Coord::from_integer(0);
        while w <= order {
            assert_eq!(ch.coeff(w), Q::from_integer(graded_dim(&c, w) as i128), "{name} at {w}");
            w += Coord::new(1, 30);
        }
    }
}

#[test]
fn indices_against_determinants() {
    let l = Lattice::named(NamedLattice::L);
    assert_eq!(index(&l, &Lattice::named(NamedLattice::N)).unwrap(), 2);
    assert_eq!(index(&l, &Lattice::named(NamedLattice::D)).unwrap(), 3);
    // an independent determinant: |det| of the generator matrix over that of L
    for (name, want) in [(NamedLattice::N, 2), (NamedLattice::D, 3)] {
        let b = Lattice::named(name).basis().to_vec();
        let m = |i: usize, j: usize| b[j].0[i];
        let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        assert_eq!(det * det, Coord::from_integer(want * want));
    }
}

proptest! {
    #[test]
    fn membership_agrees_with_solving(a in -6i64..=6, b in -6i64..=6, c in -6i64..=6) {
        let x = LatticeVector::from_ints([a, b, c]);
        for name in [NamedLattice::N, NamedLattice::D, NamedLattice::L] {
            let lat = Lattice::named(name);
            prop_assert_eq!(membership(&x, &lat).unwrap(), in_span_integrally(&x, &lat), "{:?}", name);
        }
        prop_assert_eq!(n_congruence(&x), in_span_integrally(&x, &Lattice::named(NamedLattice::N)));
    }

    #[test]
    fn fractional_points_are_outside(a in -6i64..=6, b in -6i64..=6, c in -6i64..=6, d in 2i64..=5) {
        let x = LatticeVector([Coord::new(a, d), Coord::from_integer(b), Coord::from_integer(c)]);
        let lat = Lattice::named(NamedLattice::L);
        prop_assert_eq!(membership(&x, &lat).unwrap(), a % d == 0);
    }
}
