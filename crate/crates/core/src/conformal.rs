//! Conformal vectors of `V_{sqrt2 A_l}` (`l <= 3`) realized inside `V_L`.
//!
//! A root `beta` of `A_l` is stored through the lattice vector
//! `r = sqrt2 beta` of `L`, so `beta(-1)^2 = r(-1)^2 / 2` and
//! `e^{sqrt2 beta} = e^r`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chars::Sign;
use crate::error::{Error, Result};
use crate::fock::{basis, Boson, FockElement, FockMonomial};
use crate::lattice::{vectors, Coset, Lattice, LatticeVector, NamedLattice, AMBIENT_RANK};
use crate::report::{Check, Report};
use crate::scalar::{coord_serde, Coord, Scalar};
use crate::vertex::{vertex_mode, ModeOperator};

/// `sqrt2 beta_1, sqrt2 beta_2, sqrt2 beta_3`.
pub fn simple_roots() -> [LatticeVector; 3] {
    [vectors::root1(), vectors::root2(), vectors::root3()]
}

/// Positive roots of `A_l` (`l <= 3`), scaled by `sqrt2`:
/// `b1, b2, b1+b2`, then `b3, b2+b3, b1+b2+b3`.
pub fn positive_roots(l: usize) -> Vec<LatticeVector> {
    let [b1, b2, b3] = simple_roots();
    let all = [b1, b2, b1 + b2, b3, b2 + b3, b1 + b2 + b3];
    match l {
        1 => vec![b1],
        2 => all[..3].to_vec(),
        3 => all.to_vec(),
        _ => Vec::new(),
    }
}

/// `h(-1) 1` for `h` in ambient coordinates.
pub fn heis_vector<S: Scalar>(h: &LatticeVector) -> FockElement<S> {
    let mut out = FockElement::zero();
    for (i, c) in h.0.iter().enumerate() {
        out.add_term(FockMonomial::heisenberg(i as u8), S::from_coord(c));
    }
    out
}

/// `h(-1)^2 1`.
pub fn heis_square<S: Scalar>(h: &LatticeVector) -> FockElement<S> {
    let mut out = FockElement::zero();
    for i in 0..AMBIENT_RANK {
        for j in 0..AMBIENT_RANK {
            let c = h.0[i] * h.0[j];
            let m = FockMonomial::new([Boson::new(i as u8, -1), Boson::new(j as u8, -1)], LatticeVector::zero());
            out.add_term(m, S::from_coord(&c));
        }
    }
    out
}

/// `beta(-1)^2` for `r = sqrt2 beta`.
pub fn root_square<S: Scalar>(r: &LatticeVector) -> FockElement<S> {
    heis_square::<S>(r).scale(&(S::one() / S::from_i64(2)))
}

/// `w_beta^± = beta(-1)^2 ± 2 (e^{sqrt2 beta} + e^{-sqrt2 beta})` for `r = sqrt2 beta`.
pub fn w_pm<S: Scalar>(r: &LatticeVector, sign: Sign) -> Result<FockElement<S>> {
    if !r.is_integral() || r.norm() != Coord::from_integer(4) {
        return Err(Error::NotARoot(r.to_string()));
    }
    let mut out = root_square::<S>(r);
    let c = S::from_i64(2 * sign.value());
    out.add_term(FockMonomial::exp(*r), c.clone());
    out.add_term(FockMonomial::exp(-*r), c);
    Ok(out)
}

/// `s^i = 1/(2(i+3)) sum_{beta in Phi_i^+} w_beta^-`, `i = 1, 2, 3`.
pub fn build_s<S: Scalar>(i: usize) -> Result<FockElement<S>> {
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidArgument(format!("s^{i} is defined for i = 1, 2, 3")));
    }
    let mut out = FockElement::zero();
    for r in positive_roots(i) {
        out.add_scaled(&w_pm::<S>(&r, Sign::Minus)?, &S::one());
    }
    Ok(out.scale(&(S::one() / S::from_i64(2 * (i as i64 + 3)))))
}

/// The Virasoro element `1/4 sum_i a_i(-1)^2` of `V_L` (Gram `2 I`).
pub fn virasoro_element<S: Scalar>() -> FockElement<S> {
    let mut out = FockElement::zero();
    for i in 0..AMBIENT_RANK {
        out.add_scaled(&heis_square::<S>(&LatticeVector::alpha(i)), &(S::one() / S::from_i64(4)));
    }
    out
}

/// `1/(2(l+1)) sum_{beta in Phi_l^+} beta(-1)^2`; for `l = 3` this is the
/// Virasoro element of `V_N`.
pub fn root_virasoro<S: Scalar>(l: usize) -> FockElement<S> {
    let mut out = FockElement::zero();
    for r in positive_roots(l) {
        out.add_scaled(&root_square::<S>(&r), &S::one());
    }
    out.scale(&(S::one() / S::from_i64(2 * (l as i64 + 1))))
}

/// `omega^1 = s^1`, `omega^{i+1} = s^{i+1} - s^i`, `omega^4 = omega - s^3`.
pub fn build_omega_i<S: Scalar>(i: usize) -> Result<FockElement<S>> {
    match i {
        1 => build_s(1),
        2 | 3 => Ok(build_s::<S>(i)?.sub(&build_s(i - 1)?)),
        4 => Ok(virasoro_element::<S>().sub(&build_s(3)?)),
        _ => Err(Error::InvalidArgument(format!("omega^{i} is defined for i = 1..4"))),
    }
}

/// Expected central charges of `omega^1 .. omega^4`.
pub fn expected_charges() -> [Coord; 4] {
    [Coord::new(1, 2), Coord::new(7, 10), Coord::new(4, 5), Coord::from_integer(1)]
}

/// A family of conformal vectors with their central charges.
#[derive(Clone)]
pub struct ConformalSet<S> {
    pub names: Vec<String>,
    pub vectors: Vec<FockElement<S>>,
    pub charges: Vec<S>,
}

impl<S: Scalar> ConformalSet<S> {
    /// `omega^1 .. omega^4` of `V_N`, charges computed from `v_3 v`.
    pub fn sqrt2a3() -> Result<Self> {
        let vectors: Vec<_> = (1..=4).map(build_omega_i::<S>).collect::<Result<_>>()?;
        Self::from_vectors((1..=4).map(|i| format!("omega^{i}")).collect(), vectors)
    }

    pub fn from_vectors(names: Vec<String>, vectors: Vec<FockElement<S>>) -> Result<Self> {
        let charges = vectors.iter().map(central_charge).collect::<Result<_>>()?;
        Ok(ConformalSet { names, vectors, charges })
    }

    pub fn sum(&self) -> FockElement<S> {
        let mut out = FockElement::zero();
        for v in &self.vectors {
            out.add_scaled(v, &S::one());
        }
        out
    }
}

/// `2 * <vacuum coefficient of v_3 v>`.
pub fn central_charge<S: Scalar>(v: &FockElement<S>) -> Result<S> {
    let w = v.homogeneous_weight()?;
    if w != Coord::from_integer(2) {
        return Err(Error::WrongWeight { expected: "2".into(), found: w.to_string() });
    }
    let top = vertex_mode(v, 3, v)?;
    let vac = FockMonomial::vacuum();
    if top.monomials().any(|m| *m != vac) {
        return Err(Error::NotConformal(format!("v_3 v = {top} is not a multiple of the vacuum")));
    }
    Ok(top.coeff(&vac) * S::from_i64(2))
}

/// A violated Virasoro relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorWitness {
    pub monomial: String,
    pub m: i32,
    pub n: i32,
    /// `[L(m), L(n)] b - (m-n) L(m+n) b - delta (m^3-m) c/12 b`
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformalityReport {
    pub label: String,
    pub central_charge: String,
    #[serde(with = "coord_serde")]
    pub max_weight: Coord,
    pub mode_range: i32,
    pub basis_size: usize,
    pub relations_checked: usize,
    pub pass: bool,
    pub witness: Option<CommutatorWitness>,
}

impl ConformalityReport {
    pub fn as_check(&self) -> Check {
        let detail = match &self.witness {
            Some(w) => format!(
                "c = {}; [L({}),L({})] fails on {}: {}",
                self.central_charge, w.m, w.n, w.monomial, w.difference
            ),
            None => format!(
                "c = {}, {} relations on {} basis vectors",
                self.central_charge, self.relations_checked, self.basis_size
            ),
        };
        Check::new(format!("virasoro relations for {}", self.label), self.pass, Some(detail))
    }
}

/// Checks `[L(m), L(n)] = (m-n) L(m+n) + delta_{m+n,0} (m^3-m) c/12` with
/// `L(m) = v_{m+1}` on every basis monomial of `V_L` of weight at most
/// `max_weight`, for `m, n` in `[-mode_range, mode_range]`.
pub fn is_conformal<S: Scalar>(
    label: &str,
    v: &FockElement<S>,
    max_weight: Coord,
    mode_range: i32,
) -> Result<ConformalityReport> {
    is_conformal_on(label, v, &Coset::trivial(Lattice::named(NamedLattice::L)), max_weight, mode_range)
}

/// As [`is_conformal`], on a chosen lattice or coset module.
pub fn is_conformal_on<S: Scalar>(
    label: &str,
    v: &FockElement<S>,
    module: &Coset,
    max_weight: Coord,
    mode_range: i32,
) -> Result<ConformalityReport> {
    let c = central_charge(v)?;
    let op = ModeOperator::new(v.clone());
    let monomials = basis(module, max_weight);
    let pairs: Vec<(i32, i32)> = (-mode_range..=mode_range)
        .flat_map(|m| (-mode_range..m).map(move |n| (m, n)))
        .collect();
    let twelfth = c.clone() / S::from_i64(12);
    let found: Vec<Option<CommutatorWitness>> = monomials
        .par_iter()
        .map(|b| -> Result<Option<CommutatorWitness>> {
            let start = FockElement::from_monomial(b.clone());
            for &(m, n) in &pairs {
                let mn = op.apply(m + 1, &op.apply(n + 1, &start)?)?;
                let nm = op.apply(n + 1, &op.apply(m + 1, &start)?)?;
                let mut diff = mn.sub(&nm);
                diff.add_scaled(&op.apply(m + n + 1, &start)?, &S::from_i64(-(m - n) as i64));
                if m + n == 0 {
                    let k = (m as i64).pow(3) - m as i64;
                    diff.add_scaled(&start, &(-(twelfth.clone() * S::from_i64(k))));
                }
                if !diff.is_zero() {
                    return Ok(Some(CommutatorWitness {
                        monomial: b.to_string(),
                        m,
                        n,
                        difference: diff.to_string(),
                    }));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    let witness = found.into_iter().flatten().next();
    Ok(ConformalityReport {
        label: label.to_string(),
        central_charge: c.to_string(),
        max_weight,
        mode_range,
        basis_size: monomials.len(),
        relations_checked: monomials.len() * pairs.len(),
        pass: witness.is_none(),
        witness,
    })
}

/// Mutual orthogonality and the low products of a conformal family:
/// `(w^i)_1 w^i = 2 w^i`, `(w^i)_2 w^i = 0`, `(w^i)_3 w^i = c_i/2`,
/// `(w^i)_1 w^j = 0` for `i != j`. The values `(w^i)_3 w^j` are recorded
/// without being asserted.
pub fn orthogonality<S: Scalar>(set: &ConformalSet<S>) -> Result<(Report, Vec<(String, String)>)> {
    let mut report = Report::new("conformal vectors");
    let mut recorded = Vec::new();
    let vac = FockElement::<S>::vacuum();
    for (i, (wi, ni)) in set.vectors.iter().zip(&set.names).enumerate() {
        report.push(Check::equal(
            format!("({ni})_1 {ni} = 2 {ni}"),
            &vertex_mode(wi, 1, wi)?,
            &wi.scale(&S::from_i64(2)),
        ));
        report.push(Check::equal(format!("({ni})_2 {ni} = 0"), &vertex_mode(wi, 2, wi)?, &FockElement::zero()));
        let half = set.charges[i].clone() / S::from_i64(2);
        report.push(Check::equal(
            format!("({ni})_3 {ni} = {half} vacuum"),
            &vertex_mode(wi, 3, wi)?,
            &vac.scale(&half),
        ));
        for (j, (wj, nj)) in set.vectors.iter().zip(&set.names).enumerate() {
            if i == j {
                continue;
            }
            report.push(Check::equal(format!("({ni})_1 {nj} = 0"), &vertex_mode(wi, 1, wj)?, &FockElement::zero()));
            recorded.push((format!("({ni})_3 {nj}"), vertex_mode(wi, 3, wj)?.to_string()));
        }
    }
    Ok((report, recorded))
}

/// Everything about `omega^1 .. omega^4` short of the commutator sweep:
/// central charges, orthogonality, and `sum omega^i = omega`.
pub fn conformal_suite<S: Scalar>() -> Result<Report> {
    let set = ConformalSet::<S>::sqrt2a3()?;
    let (mut report, _) = orthogonality(&set)?;
    for (i, (c, want)) in set.charges.iter().zip(expected_charges()).enumerate() {
        let want_s = S::from_coord(&want);
        report.push(Check::new(
            format!("central charge of omega^{}", i + 1),
            *c == want_s,
            Some(format!("{c}")),
        ));
    }
    report.push(Check::equal("sum of omega^i = omega", &set.sum(), &virasoro_element()));
    report.push(Check::equal(
        "root form of omega = 1/4 sum a_i(-1)^2",
        &root_virasoro::<S>(3),
        &virasoro_element(),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i128>;
    type E = FockElement<Q>;

    fn el(s: &str) -> E {
        E::from_text(s).unwrap()
    }

    #[test]
    fn s1_tensor_form() {
        let s1 = build_s::<Q>(1).unwrap();
        let expected = heis_square::<Q>(&vectors::root1())
            .scale(&Q::new(1, 16))
            .sub(&el("1 * e[1,1,0]\n1 * e[-1,-1,0]").scale(&Q::new(1, 4)));
        assert_eq!(s1, expected);
    }

    #[test]
    fn w_beta3_plus() {
        let w = w_pm::<Q>(&vectors::root3(), Sign::Plus).unwrap();
        assert_eq!(w.homogeneous_weight().unwrap(), Coord::from_integer(2));
        assert_eq!(w.coeff(&"e[-1,1,0]".parse().unwrap()), Q::from_integer(2));
        assert_eq!(w.coeff(&"a1(-1)^2".parse().unwrap()), Q::new(1, 2));
        assert_eq!(w.coeff(&"a1(-1) a2(-1)".parse().unwrap()), Q::from_integer(-1));
        assert!(w_pm::<Q>(&LatticeVector::from_ints([2, 0, 0]), Sign::Plus).is_err());
    }

    #[test]
    fn omegas_sum_to_virasoro() {
        let sum = (1..=4).fold(E::zero(), |acc, i| acc.add(&build_omega_i::<Q>(i).unwrap()));
        assert_eq!(sum, virasoro_element());
        assert_eq!(root_virasoro::<Q>(3), virasoro_element());
    }

    #[test]
    fn central_charges() {
        for (i, want) in expected_charges().iter().enumerate() {
            let c = central_charge(&build_omega_i::<Q>(i + 1).unwrap()).unwrap();
            assert_eq!(c, Q::new(*want.numer() as i128, *want.denom() as i128));
        }
        assert_eq!(central_charge(&virasoro_element::<Q>()).unwrap(), Q::from_integer(3));
    }

    #[test]
    fn suite_passes() {
        let r = conformal_suite::<Q>().unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn virasoro_relations_low_weight() {
        let r = is_conformal("omega", &virasoro_element::<Q>(), Coord::from_integer(2), 2).unwrap();
        assert!(r.pass, "{r:?}");
        let r = is_conformal("omega^1", &build_omega_i::<Q>(1).unwrap(), Coord::from_integer(2), 2).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.central_charge, "1/2");
    }

    #[test]
    fn unnormalized_square_is_rejected() {
        let v = heis_square::<Q>(&LatticeVector::alpha(0));
        let r = is_conformal("a1(-1)^2", &v, Coord::from_integer(2), 2).unwrap();
        assert!(!r.pass);
        assert!(r.witness.is_some());
    }
}
