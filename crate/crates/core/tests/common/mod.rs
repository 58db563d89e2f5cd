//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use latvoa::autos::Automorphism;
use latvoa::fock::basis;
use latvoa::lattice::vectors;
use latvoa::vertex::vertex_mode;
use latvoa::{Coord, Coset, Element, FockMonomial, Lattice, LatticeVector, NamedLattice, Q};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coset(name: NamedLattice) -> Coset {
    Coset::trivial(Lattice::named(name))
}

/// A random combination of one to three basis monomials of weight at most
/// `max_weight`, with small integer coefficients.
pub fn random_element(r: &mut impl Rng, c: &Coset, max_weight: i64) -> Element {
    let monomials = basis(c, Coord::from_integer(max_weight));
    let terms = r.gen_range(1..=3);
    let mut out = Element::zero();
    for _ in 0..terms {
        let m: &FockMonomial = monomials.choose(r).expect("nonempty basis");
        let k = r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 };
        out.add_term(m.clone(), Q::from_integer(k));
    }
    out
}

fn binomial(m: i64, i: i64) -> Q {
    let mut acc = Q::from_integer(1);
    for j in 0..i {
        acc = acc * Q::from_integer((m - j) as i128) / Q::from_integer((j + 1) as i128);
    }
    acc
}

/// `u_m v_n w - v_n u_m w - sum_{i >= 0} C(m, i) (u_i v)_{m+n-i} w`.
/// The sum stops once `u_i v` vanishes for weight reasons.
pub fn borcherds_defect(u: &Element, v: &Element, w: &Element, m: i32, n: i32) -> Element {
    let lhs = vertex_mode(u, m, &vertex_mode(v, n, w).unwrap())
        .unwrap()
        .sub(&vertex_mode(v, n, &vertex_mode(u, m, w).unwrap()).unwrap());
    let top = max_weight(u) + max_weight(v);
    let mut rhs = Element::zero();
    let mut i = 0;
    while Coord::from_integer(i as i64) < top {
        let uv = vertex_mode(u, i, v).unwrap();
        if !uv.is_zero() {
            rhs.add_scaled(&vertex_mode(&uv, m + n - i, w).unwrap(), &binomial(m as i64, i as i64));
        }
        i += 1;
    }
    lhs.sub(&rhs)
}

pub fn max_weight(e: &Element) -> Coord {
    e.monomials().map(|m| m.weight()).max().unwrap_or(Coord::from_integer(0))
}

/// `g(u_n v) - g(u)_n g(v)`.
pub fn multiplicativity_defect(g: &Automorphism<Q>, u: &Element, v: &Element, n: i32) -> Element {
    let left = g.apply(&vertex_mode(u, n, v).unwrap()).unwrap();
    let right = vertex_mode(&g.apply(u).unwrap(), n, &g.apply(v).unwrap()).unwrap();
    left.sub(&right)
}

/// Point counts of `lattice + shift` by norm, found by scanning a box of
/// integer coefficient vectors: `sum_i k_i b_i + shift` with `|k_i| <= bound`.
pub fn brute_force_theta(c: &Coset, order: i64, bound: i64) -> BTreeMap<Coord, u64> {
    let basis = c.lattice.basis().to_vec();
    let mut out = BTreeMap::new();
    let mut k = vec![-bound; basis.len()];
    loop {
        let mut x = c.shift;
        for (ki, b) in k.iter().zip(&basis) {
            x = x + b.scale(Coord::from_integer(*ki));
        }
        let w = x.weight();
        if w <= Coord::from_integer(order) {
            *out.entry(w).or_insert(0) += 1;
        }
        let mut i = 0;
        loop {
            if i == k.len() {
                return out;
            }
            k[i] += 1;
            if k[i] <= bound {
                break;
            }
            k[i] = -bound;
            i += 1;
        }
    }
}

/// Cosets with their names, covering every lattice and shifted module used.
pub fn all_cosets() -> Vec<(&'static str, Coset)> {
    vec![
        ("L", coset(NamedLattice::L)),
        ("N", coset(NamedLattice::N)),
        ("D", coset(NamedLattice::D)),
        ("E", coset(NamedLattice::E)),
        ("F", coset(NamedLattice::F)),
        ("E+e", Coset::new(Lattice::named(NamedLattice::E), vectors::e_shift())),
        ("F+f", Coset::new(Lattice::named(NamedLattice::F), vectors::f_shift())),
        ("D+a2", Coset::new(Lattice::named(NamedLattice::D), vectors::alpha2())),
    ]
}

/// Whether `x` is an integral combination of the generators, by Cramer's rule.
pub fn in_span_integrally(x: &LatticeVector, lat: &Lattice) -> bool {
    let b = lat.basis();
    assert_eq!(b.len(), 3, "full rank only");
    let det = |c: [&LatticeVector; 3]| -> Coord {
        let m = |i: usize, j: usize| c[j].0[i];
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    };
    let d = det([&b[0], &b[1], &b[2]]);
    (0..3).all(|i| {
        let mut cols = [&b[0], &b[1], &b[2]];
        cols[i] = x;
        (det(cols) / d).is_integer()
    })
}
