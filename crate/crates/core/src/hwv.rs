//! Joint highest-weight vectors for the four commuting Virasoro algebras
//! generated by `omega^1 .. omega^4` on low-weight pieces of `V_N`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autos::{fixed_subspace, psi2, rho, Automorphism};
use crate::chars::virasoro::{kac_table, VirasoroLabel};
use crate::chars::{tensor_level_dim, theorem_tuples, Sign};
use crate::conformal::{build_omega_i, expected_charges};
use crate::error::{Error, Result};
use crate::fock::{basis_at, FockElement, FockMonomial};
use crate::lattice::{Coset, Lattice, NamedLattice};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::{coord_serde, format_coord, Coord, Scalar};
use crate::vertex::ModeOperator;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HwTuple {
    #[serde(with = "coord_serde::array")]
    pub h: [Coord; 4],
    pub multiplicity: usize,
    #[serde(with = "coord_serde")]
    pub weight: Coord,
}

impl std::fmt::Display for HwTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let h: Vec<String> = self.h.iter().map(format_coord).collect();
        write!(f, "({}) x{} at weight {}", h.join(", "), self.multiplicity, format_coord(&self.weight))
    }
}

/// The four Virasoro algebras: `L^i(m) = (omega^i)_{m+1}`.
pub struct VirasoroFamily<S> {
    ops: Vec<ModeOperator<S>>,
}

impl<S: Scalar> VirasoroFamily<S> {
    pub fn new(vectors: Vec<FockElement<S>>) -> Self {
        VirasoroFamily { ops: vectors.into_iter().map(ModeOperator::new).collect() }
    }

    /// `omega^1 .. omega^4` of `V_N`.
    pub fn standard() -> Result<Self> {
        Ok(Self::new((1..=4).map(build_omega_i::<S>).collect::<Result<_>>()?))
    }

    /// `rho(omega^1) .. rho(omega^4)`, acting on `V_L^+`.
    pub fn rho_images() -> Result<Self> {
        let r: Automorphism<S> = rho()?;
        let vs = (1..=4).map(|i| r.apply(&build_omega_i::<S>(i)?)).collect::<Result<_>>()?;
        Ok(Self::new(vs))
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `L^i(m) v`, with `i` counted from 1.
    pub fn apply(&self, i: usize, m: i32, v: &FockElement<S>) -> Result<FockElement<S>> {
        self.ops[i - 1].apply(m + 1, v)
    }
}

/// Matrix of `L^i(m)` from the monomial basis of `(V_C)_w` to that of
/// `(V_C)_{w-m}`.
pub fn virasoro_action_matrix<S: Scalar>(
    family: &VirasoroFamily<S>,
    coset: &Coset,
    weight: Coord,
    i: usize,
    m: i32,
) -> Result<Matrix<S>> {
    let source = basis_at(coset, weight);
    let target = basis_at(coset, weight - Coord::from_integer(m as i64));
    let index: HashMap<&FockMonomial, usize> = target.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let columns: Vec<Vec<S>> = source
        .par_iter()
        .map(|b| {
            let image = family.apply(i, m, &FockElement::from_monomial(b.clone()))?;
            let mut col = vec![S::zero(); target.len()];
            for (t, c) in image.iter() {
                let k = index.get(t).ok_or_else(|| Error::WrongWeight {
                    expected: format_coord(&(weight - Coord::from_integer(m as i64))),
                    found: format_coord(&t.weight()),
                })?;
                col[*k] = c.clone();
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(target.len(), &columns))
}

/// Coefficient vectors `y` with `sum_k y_k conditions[k][j] = 0` for every `j`.
fn joint_relations<S: Scalar>(conditions: &[Vec<FockElement<S>>]) -> Vec<Vec<S>> {
    let mut index: HashMap<(usize, &FockMonomial), usize> = HashMap::new();
    for col in conditions {
        for (j, e) in col.iter().enumerate() {
            for m in e.monomials() {
                let next = index.len();
                index.entry((j, m)).or_insert(next);
            }
        }
    }
    let columns: Vec<Vec<S>> = conditions
        .iter()
        .map(|col| {
            let mut v = vec![S::zero(); index.len()];
            for (j, e) in col.iter().enumerate() {
                for (m, c) in e.iter() {
                    v[index[&(j, m)]] = c.clone();
                }
            }
            v
        })
        .collect();
    if index.is_empty() {
        // no conditions at all: everything is a relation
        return (0..conditions.len())
            .map(|k| (0..conditions.len()).map(|l| if l == k { S::one() } else { S::zero() }).collect())
            .collect();
    }
    Matrix::from_columns(index.len(), &columns).nullspace()
}

fn combine<S: Scalar>(vectors: &[FockElement<S>], y: &[S]) -> FockElement<S> {
    let mut out = FockElement::zero();
    for (v, c) in vectors.iter().zip(y) {
        out.add_scaled(v, c);
    }
    out
}

/// Candidate `L(0)` eigenvalues for the `i`-th algebra not exceeding `max`.
fn candidates(i: usize, max: Coord) -> Vec<Coord> {
    let c = expected_charges()[i];
    match kac_table(c) {
        Some(t) => {
            let mut t: Vec<Coord> = t.into_iter().filter(|h| *h <= max).collect();
            t.sort();
            t.dedup();
            t
        }
        None => Vec::new(),
    }
}

/// Highest-weight vectors of weight `w` inside `span(space)`, grouped by
/// their joint `L^i(0)` eigenvalues.
pub fn hw_vectors_at<S: Scalar>(
    family: &VirasoroFamily<S>,
    space: &[FockElement<S>],
    weight: Coord,
) -> Result<BTreeMap<[Coord; 4], Vec<FockElement<S>>>> {
    let conditions: Vec<Vec<FockElement<S>>> = space
        .par_iter()
        .map(|v| {
            let mut out = Vec::new();
            for i in 1..=family.len() {
                for m in [1, 2] {
                    out.push(family.apply(i, m, v)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let kernel: Vec<FockElement<S>> = joint_relations(&conditions).iter().map(|y| combine(space, y)).collect();
    let mut out = BTreeMap::new();
    if kernel.is_empty() {
        return Ok(out);
    }
    // split by L^1(0), L^2(0), L^3(0); L^4(0) is then forced
    let mut blocks: Vec<(Vec<Coord>, Vec<FockElement<S>>)> = vec![(Vec::new(), kernel.clone())];
    for i in 0..3 {
        let mut next = Vec::new();
        for (hs, vs) in blocks {
            let zero_modes: Vec<FockElement<S>> =
                vs.par_iter().map(|v| family.apply(i + 1, 0, v)).collect::<Result<_>>()?;
            let spent = hs.iter().fold(Coord::from_integer(0), |a, h| a + h);
            let mut found = 0;
            for h in candidates(i, weight - spent) {
                let hs_scalar = S::from_coord(&h);
                let shifted: Vec<Vec<FockElement<S>>> =
                    vs.iter().zip(&zero_modes).map(|(v, lv)| vec![lv.sub(&v.scale(&hs_scalar))]).collect();
                let eig: Vec<FockElement<S>> = joint_relations(&shifted).iter().map(|y| combine(&vs, y)).collect();
                if !eig.is_empty() {
                    found += eig.len();
                    let mut hs = hs.clone();
                    hs.push(h);
                    next.push((hs, eig));
                }
            }
            if found != vs.len() {
                return Err(Error::NotDiagonalizable {
                    weight: format_coord(&weight),
                    detail: format!(
                        "L^{}(0) on a {}-dimensional block with eigenvalues ({}) leaves {} dimensions unaccounted",
                        i + 1,
                        vs.len(),
                        hs.iter().map(format_coord).collect::<Vec<_>>().join(", "),
                        vs.len() - found
                    ),
                });
            }
        }
        blocks = next;
    }
    for (hs, vs) in blocks {
        let h4 = weight - hs[0] - hs[1] - hs[2];
        let h4s = S::from_coord(&h4);
        for v in &vs {
            if family.apply(4, 0, v)? != v.scale(&h4s) {
                return Err(Error::NotDiagonalizable {
                    weight: format_coord(&weight),
                    detail: format!("L^4(0) is not {} on {v}", format_coord(&h4)),
                });
            }
        }
        out.insert([hs[0], hs[1], hs[2], h4], vs);
    }
    Ok(out)
}

fn tuples_from(weight: Coord, found: BTreeMap<[Coord; 4], Vec<impl Sized>>) -> Vec<HwTuple> {
    found.into_iter().map(|(h, vs)| HwTuple { h, multiplicity: vs.len(), weight }).collect()
}

/// Joint highest-weight tuples in `V_N` of weight at most `max_weight`.
pub fn hw_census<S: Scalar>(max_weight: i64) -> Result<Vec<HwTuple>> {
    let family = VirasoroFamily::<S>::standard()?;
    let n = Coset::trivial(Lattice::named(NamedLattice::N));
    let mut out = Vec::new();
    for w in 0..=max_weight {
        let w = Coord::from_integer(w);
        let space: Vec<FockElement<S>> = basis_at(&n, w).into_iter().map(FockElement::from_monomial).collect();
        out.extend(tuples_from(w, hw_vectors_at(&family, &space, w)?));
    }
    Ok(out)
}

/// The same census in `V_L^+` for `rho(omega^i)`.
pub fn hw_census_plus<S: Scalar>(max_weight: i64) -> Result<Vec<HwTuple>> {
    let family = VirasoroFamily::<S>::rho_images()?;
    let l = Coset::trivial(Lattice::named(NamedLattice::L));
    let p2 = psi2::<S>();
    let mut out = Vec::new();
    for w in 0..=max_weight {
        let w = Coord::from_integer(w);
        let space = fixed_subspace(&p2, &l, w, Sign::Plus)?;
        out.extend(tuples_from(w, hw_vectors_at(&family, &space, w)?));
    }
    Ok(out)
}

fn labels_of(h: &[Coord; 4]) -> Result<Vec<VirasoroLabel>> {
    let c = expected_charges();
    (0..4).map(|i| VirasoroLabel::new(c[i], h[i])).collect()
}

fn format_tuples(ts: &[[Coord; 4]]) -> String {
    let parts: Vec<String> =
        ts.iter().map(|h| format!("({})", h.iter().map(format_coord).collect::<Vec<_>>().join(","))).collect();
    format!("[{}]", parts.join(" "))
}

/// Compares the census with the theorem's summands of weight at most
/// `max_weight`, and checks that descendants of the found vectors fill each
/// graded piece of `V_N`.
pub fn census_vs_theorem<S: Scalar>(max_weight: i64) -> Result<Report> {
    let mut report = Report::new(format!("highest-weight census to weight {max_weight}"));
    let census = hw_census::<S>(max_weight)?;
    let mut found: Vec<[Coord; 4]> = Vec::new();
    for t in &census {
        found.extend(std::iter::repeat_n(t.h, t.multiplicity));
    }
    found.sort();
    let expected = theorem_tuples(Coord::from_integer(max_weight));
    let multiset = found == expected;
    report.push(Check::new(
        "census equals the theorem's summands",
        multiset,
        Some(if multiset {
            format!("{} tuples", found.len())
        } else {
            format!("census {} vs theorem {}", format_tuples(&found), format_tuples(&expected))
        }),
    ));
    report.push(Check::new(
        "every multiplicity is 1",
        census.iter().all(|t| t.multiplicity == 1),
        None,
    ));
    let n = Coset::trivial(Lattice::named(NamedLattice::N));
    for w in 0..=max_weight {
        let mut total = 0i64;
        for t in &census {
            let level = w - t.weight.to_integer();
            if level >= 0 {
                total += t.multiplicity as i64 * tensor_level_dim(&labels_of(&t.h)?, level)?;
            }
        }
        let dim = crate::fock::graded_dim(&n, Coord::from_integer(w)) as i64;
        report.push(Check::new(
            format!("descendants fill weight {w}"),
            total == dim,
            Some(format!("{total} from highest-weight vectors, dim (V_N)_{w} = {dim}")),
        ));
    }
    Ok(report)
}

/// `[L^i(m), L^j(n)] = 0` for `i != j` and `m, n` in `{-1, 0, 1, 2}` on every
/// basis monomial of `V_N` of weight at most `max_weight`.
pub fn commutator_checks<S: Scalar>(max_weight: Coord) -> Result<Report> {
    let family = VirasoroFamily::<S>::standard()?;
    let n = Coset::trivial(Lattice::named(NamedLattice::N));
    let basis = crate::fock::basis(&n, max_weight);
    let modes = [-1, 0, 1, 2];
    let mut report = Report::new("commuting Virasoro algebras");
    for i in 1..=4 {
        for j in (i + 1)..=4 {
            let witness = basis
                .par_iter()
                .map(|b| -> Result<Option<String>> {
                    let v = FockElement::from_monomial(b.clone());
                    for &m in &modes {
                        for &k in &modes {
                            let a = family.apply(i, m, &family.apply(j, k, &v)?)?;
                            let c = family.apply(j, k, &family.apply(i, m, &v)?)?;
                            if a != c {
                                return Ok(Some(format!("[L^{i}({m}), L^{j}({k})] on {b}")));
                            }
                        }
                    }
                    Ok(None)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .next();
            report.push(Check::new(
                format!("[L^{i}, L^{j}] = 0"),
                witness.is_none(),
                Some(witness.unwrap_or_else(|| format!("{} basis vectors", basis.len()))),
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i128>;

    fn c(n: i64, d: i64) -> Coord {
        Coord::new(n, d)
    }

    #[test]
    fn zero_modes_sum_to_weight() {
        let f = VirasoroFamily::<Q>::standard().unwrap();
        let n = Coset::trivial(Lattice::named(NamedLattice::N));
        for w in 0..=2 {
            let w = Coord::from_integer(w);
            let mut sum = virasoro_action_matrix(&f, &n, w, 1, 0).unwrap();
            for i in 2..=4 {
                let m = virasoro_action_matrix(&f, &n, w, i, 0).unwrap();
                sum = sum.sub(&m.scale(&Q::from_integer(-1)));
            }
            let dim = sum.rows();
            assert_eq!(sum, Matrix::identity(dim).scale(&Q::from_coord(&w)));
        }
    }

    #[test]
    fn zero_modes_commute() {
        let f = VirasoroFamily::<Q>::standard().unwrap();
        let n = Coset::trivial(Lattice::named(NamedLattice::N));
        let w = Coord::from_integer(2);
        let ms: Vec<Matrix<Q>> = (1..=4).map(|i| virasoro_action_matrix(&f, &n, w, i, 0).unwrap()).collect();
        for a in &ms {
            for b in &ms {
                assert_eq!(a.mul(b), b.mul(a));
            }
        }
    }

    #[test]
    fn raising_from_weight_one_vanishes() {
        let f = VirasoroFamily::<Q>::standard().unwrap();
        let n = Coset::trivial(Lattice::named(NamedLattice::N));
        for i in 1..=4 {
            assert!(virasoro_action_matrix(&f, &n, Coord::from_integer(1), i, 1).unwrap().is_zero());
        }
    }

    #[test]
    fn census_to_weight_one() {
        let got = hw_census::<Q>(1).unwrap();
        let h: Vec<[Coord; 4]> = got.iter().map(|t| t.h).collect();
        let zero = Coord::from_integer(0);
        assert_eq!(
            h,
            vec![
                [zero; 4],
                [zero, zero, c(2, 3), c(1, 3)],
                [zero, c(3, 5), c(1, 15), c(1, 3)],
                [c(1, 2), c(1, 10), c(1, 15), c(1, 3)],
            ]
        );
        assert!(got.iter().all(|t| t.multiplicity == 1));
    }

    #[test]
    fn plus_census_matches_at_weight_one() {
        assert_eq!(hw_census_plus::<Q>(1).unwrap(), hw_census::<Q>(1).unwrap());
    }

    #[test]
    fn census_json() {
        let t = HwTuple { h: [c(1, 2), c(1, 10), c(1, 15), c(1, 3)], multiplicity: 1, weight: c(1, 1) };
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"h":["1/2","1/10","1/15","1/3"],"multiplicity":1,"weight":"1"}"#);
        assert_eq!(serde_json::from_str::<HwTuple>(&s).unwrap(), t);
    }

    #[test]
    fn census_against_theorem_to_weight_two() {
        let r = census_vs_theorem::<Q>(2).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn cross_commutators_vanish_to_weight_two() {
        let r = commutator_checks::<Q>(Coord::from_integer(2)).unwrap();
        assert!(r.pass(), "{r}");
    }
}
