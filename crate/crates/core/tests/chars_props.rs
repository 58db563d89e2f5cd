mod common;

use common::*;
use latvoa::autos::{fixed_subspace, psi2};
use latvoa::chars::{fixed_char, theorem_tuples, verify_theorem, VirasoroLabel};
use latvoa::conformal::expected_charges;
use latvoa::{Coord, Lattice, NamedLattice, Sign, Q};
use proptest::prelude::*;

#[test]
fn fixed_characters_count_eigenvectors() {
    for name in [NamedLattice::L, NamedLattice::E, NamedLattice::F] {
        let lat = Lattice::named(name);
        let c = coset(name);
        let order = Coord::from_integer(4);
        for sign in [Sign::Plus, Sign::Minus] {
            let ch = fixed_char::<Q>(&lat, sign, 30, order).unwrap();
            for w in 0..=4 {
                let w = Coord::from_integer(w);
                let dim = fixed_subspace(&psi2::<Q>(), &c, w, sign).unwrap().len();
                assert_eq!(ch.coeff(w), Q::from_integer(dim as i128), "{name:?} {sign} at {w}");
            }
        }
    }
}

#[test]
fn theorem_leading_coefficients() {
    let r = verify_theorem::<Q>(Coord::from_integer(6), 30).unwrap();
    assert!(r.identity.pass);
    assert_eq!(r.leading, ["1", "3", "21"]);
}

#[test]
fn theorem_tuples_are_valid_labels() {
    let c = expected_charges();
    for t in theorem_tuples(Coord::from_integer(6)) {
        for i in 0..4 {
            VirasoroLabel::new(c[i], t[i]).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn theorem_holds_at_every_order(order in 2i64..=12) {
        let r = verify_theorem::<Q>(Coord::from_integer(order), 30).unwrap();
        prop_assert!(r.identity.pass, "{:?}", r);
    }

    #[test]
    fn characters_are_nonnegative_integral(i in 0usize..4, k in 0usize..12) {
        let c = expected_charges()[i];
        let h = match latvoa::chars::kac_table(c) {
            Some(t) => t[k % t.len()],
            None => Coord::new(((k % 6) * (k % 6)) as i64, 4),
        };
        let ch = VirasoroLabel::new(c, h).unwrap().character::<Q>(240, Coord::from_integer(10)).unwrap();
        prop_assert!(ch.is_nonnegative_integral());
        prop_assert_eq!(ch.leading_exponent(), Some(h));
    }
}
