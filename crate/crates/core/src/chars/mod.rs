//! Truncated q-series, Virasoro characters, and the character identities
//! behind the decomposition of `V_N`.

mod qseries;
pub mod virasoro;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use qseries::QSeries;
pub use virasoro::{c1_char, kac_table, kac_weight, minimal_char, unitary_model, VirasoroLabel};

use crate::error::{Error, Result};
use crate::lattice::{theta_series, vectors, Coset, Lattice, NamedLattice};
use crate::scalar::{coord_serde, format_coord, Coord, Scalar};

/// `Theta_C / prod(1-q^n)^rank`: graded dimension of `V_C`.
pub fn lattice_char<S: Scalar>(c: &Coset, denom: i64, order: Coord) -> Result<QSeries<S>> {
    let theta = theta_series::<S>(c, order, denom)?;
    Ok(theta.mul(&QSeries::qpochhammer_inverse(c.rank() as u32, denom, order)))
}

/// Sign of an eigenspace of the involution induced by `beta -> -beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("sign `{s}`"))),
        }
    }
}

/// Character of the `±1` eigenspace of `beta -> -beta` on `V_lat`.
///
/// Only `e^0` is fixed by the isometry, so the trace is
/// `prod(1+q^n)^{-rank}` and the eigenspaces split as
/// `(Theta/prod(1-q^n)^rank ± prod(1+q^n)^{-rank}) / 2`.
pub fn fixed_char<S: Scalar>(lat: &Lattice, sign: Sign, denom: i64, order: Coord) -> Result<QSeries<S>> {
    let full = lattice_char::<S>(&Coset::trivial(lat.clone()), denom, order)?;
    let trace = QSeries::plus_product_inverse(lat.rank() as u32, denom, order);
    let half = S::one() / S::from_i64(2);
    let sum = match sign {
        Sign::Plus => full.add(&trace),
        Sign::Minus => full.sub(&trace),
    };
    Ok(sum.scale(&half))
}

/// Lowest weights `h_4(m)` of the `c = 1` families in the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum H4Family {
    /// `4m^2`, `m >= 0`
    FourSquares,
    /// `3m^2`, `m >= 1`
    ThreeSquares,
    /// `(2m+1)^2`, `m >= 0`
    OddSquares,
    /// `(3m+1)^2 / 3`, `m` in `Z`
    ThirdShifted,
}

impl H4Family {
    pub fn h4(self, m: i64) -> Coord {
        match self {
            H4Family::FourSquares => Coord::from_integer(4 * m * m),
            H4Family::ThreeSquares => Coord::from_integer(3 * m * m),
            H4Family::OddSquares => Coord::from_integer((2 * m + 1).pow(2)),
            H4Family::ThirdShifted => Coord::new((3 * m + 1).pow(2), 3),
        }
    }

    fn indices(self) -> Box<dyn Iterator<Item = i64>> {
        match self {
            H4Family::FourSquares | H4Family::OddSquares => Box::new(0..),
            H4Family::ThreeSquares => Box::new(1..),
            H4Family::ThirdShifted => Box::new((0..).flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] })),
        }
    }

    /// All `h_4(m) <= order`, one entry per `m`. Every family grows
    /// monotonically in `|m|`, so the scan stops at the first overshoot
    /// past the sign pair.
    pub fn values_up_to(self, order: Coord) -> Vec<Coord> {
        let mut out = Vec::new();
        let mut misses = 0;
        for m in self.indices() {
            let h = self.h4(m);
            if h <= order {
                out.push(h);
                misses = 0;
            } else {
                misses += 1;
                if misses >= 2 {
                    break;
                }
            }
        }
        out.sort();
        out
    }
}

fn label(c: (i64, i64), h: (i64, i64)) -> VirasoroLabel {
    VirasoroLabel::new(Coord::new(c.0, c.1), Coord::new(h.0, h.1)).expect("table label")
}

fn triples(hs: [[(i64, i64); 3]; 4]) -> Vec<[VirasoroLabel; 3]> {
    hs.iter()
        .map(|t| [label((1, 2), t[0]), label((7, 10), t[1]), label((4, 5), t[2])])
        .collect()
}

/// Summands of `V_E^+` over `L(1/2,0) ⊗ L(7/10,0) ⊗ L(4/5,0)`.
pub fn e_plus_triples() -> Vec<[VirasoroLabel; 3]> {
    triples([
        [(0, 1), (0, 1), (0, 1)],
        [(0, 1), (3, 5), (7, 5)],
        [(1, 2), (1, 10), (7, 5)],
        [(1, 2), (3, 2), (0, 1)],
    ])
}

/// Summands of `V_E^-`.
pub fn e_minus_triples() -> Vec<[VirasoroLabel; 3]> {
    triples([
        [(0, 1), (3, 5), (2, 5)],
        [(1, 2), (1, 10), (2, 5)],
        [(0, 1), (0, 1), (3, 1)],
        [(1, 2), (3, 2), (3, 1)],
    ])
}

/// Summands of `V_{E + sqrt2(b1-b2)/3}`.
pub fn e_shift_triples() -> Vec<[VirasoroLabel; 3]> {
    triples([
        [(0, 1), (0, 1), (2, 3)],
        [(0, 1), (3, 5), (1, 15)],
        [(1, 2), (1, 10), (1, 15)],
        [(1, 2), (3, 2), (2, 3)],
    ])
}

pub const F_PLUS_FAMILIES: &[H4Family] = &[H4Family::FourSquares, H4Family::ThreeSquares];
pub const F_MINUS_FAMILIES: &[H4Family] = &[H4Family::OddSquares, H4Family::ThreeSquares];
pub const F_SHIFT_FAMILIES: &[H4Family] = &[H4Family::ThirdShifted];

/// One block of the decomposition of `V_N`: a `c < 1` triple tensored with a
/// sum of `c = 1` families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompSummand {
    pub labels: [VirasoroLabel; 3],
    pub families: Vec<H4Family>,
}

/// The twelve blocks of the decomposition of `V_N`.
pub fn theorem_table() -> Vec<DecompSummand> {
    let blocks = [
        (e_plus_triples(), F_PLUS_FAMILIES),
        (e_minus_triples(), F_MINUS_FAMILIES),
        (e_shift_triples(), F_SHIFT_FAMILIES),
    ];
    blocks
        .into_iter()
        .flat_map(|(ts, fams)| {
            ts.into_iter().map(move |labels| DecompSummand {
                labels,
                families: fams.to_vec(),
            })
        })
        .collect()
}

/// Lowest-weight tuples `(h1, h2, h3, h4)` of the decomposition with total
/// weight at most `max_weight`, sorted, with repetition.
pub fn theorem_tuples(max_weight: Coord) -> Vec<[Coord; 4]> {
    let mut out = Vec::new();
    for s in theorem_table() {
        let base = s.labels[0].h + s.labels[1].h + s.labels[2].h;
        if base > max_weight {
            continue;
        }
        for fam in &s.families {
            for h4 in fam.values_up_to(max_weight - base) {
                out.push([s.labels[0].h, s.labels[1].h, s.labels[2].h, h4]);
            }
        }
    }
    out.sort();
    out
}

/// Product of the characters of a triple of Virasoro modules.
pub fn triple_char<S: Scalar>(labels: &[VirasoroLabel], denom: i64, order: Coord) -> Result<QSeries<S>> {
    let mut acc = QSeries::one(denom, order);
    for l in labels {
        acc = acc.mul(&l.character(denom, order)?);
    }
    Ok(acc)
}

/// `sum_h ch L(1, h)` over the family values `h <= order`.
pub fn family_char<S: Scalar>(families: &[H4Family], denom: i64, order: Coord) -> Result<QSeries<S>> {
    let mut acc = QSeries::zero(denom, order);
    for fam in families {
        for h in fam.values_up_to(order) {
            acc = acc.add(&c1_char(h, denom, order)?);
        }
    }
    Ok(acc)
}

fn triples_char<S: Scalar>(ts: &[[VirasoroLabel; 3]], denom: i64, order: Coord) -> Result<QSeries<S>> {
    let mut acc = QSeries::zero(denom, order);
    for t in ts {
        acc = acc.add(&triple_char(t, denom, order)?);
    }
    Ok(acc)
}

/// First exponent where the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    #[serde(with = "coord_serde")]
    pub exponent: Coord,
    pub left: String,
    pub right: String,
}

/// Outcome of one q-series identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    #[serde(with = "coord_serde")]
    pub order: Coord,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
}

impl IdentityReport {
    pub fn compare<S: Scalar>(id: &str, order: Coord, left: &QSeries<S>, right: &QSeries<S>) -> Self {
        let first_mismatch = left.first_mismatch(right).map(|(e, l, r)| Mismatch {
            exponent: e,
            left: l.to_string(),
            right: r.to_string(),
        });
        IdentityReport {
            id: id.to_string(),
            order,
            pass: first_mismatch.is_none(),
            first_mismatch,
        }
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "pass" } else { "FAIL" };
        write!(f, "{status} {} to q^{}", self.id, format_coord(&self.order))?;
        if let Some(m) = &self.first_mismatch {
            write!(
                f,
                " (first mismatch at q^{}: left {} right {})",
                format_coord(&m.exponent),
                m.left,
                m.right
            )?;
        }
        Ok(())
    }
}

/// Groups of character identities that can be checked together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DisplayId {
    /// `V_E^+` as a sum of four triples.
    EPlus,
    /// `V_E^-` as a sum of four triples.
    EMinus,
    /// `V_{E + sqrt2(b1-b2)/3}` as a sum of four triples.
    EShift,
    /// `V_F^+`, `V_F^-` and `V_{F+gamma/3}` as sums of `c = 1` modules.
    FModules,
    /// `V_L^+ = V_D^+ + V_{D+a2}`, `V_D^+ = E+F+ + E-F-`, `V_{D+a2} = V_{E+e} V_{F+f}`.
    PlusSplitting,
    /// `V_L^- = V_D^- + V_{D+a2}`, `V_D^- = E+F- + E-F+`.
    MinusSplitting,
}

impl DisplayId {
    pub const ALL: [DisplayId; 6] = [
        DisplayId::EPlus,
        DisplayId::EMinus,
        DisplayId::EShift,
        DisplayId::FModules,
        DisplayId::PlusSplitting,
        DisplayId::MinusSplitting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DisplayId::EPlus => "e-plus",
            DisplayId::EMinus => "e-minus",
            DisplayId::EShift => "e-shift",
            DisplayId::FModules => "f-modules",
            DisplayId::PlusSplitting => "plus-splitting",
            DisplayId::MinusSplitting => "minus-splitting",
        }
    }

    /// Order each group is checked to by default.
    pub fn default_order(self) -> Coord {
        match self {
            DisplayId::FModules => Coord::from_integer(20),
            _ => Coord::from_integer(12),
        }
    }
}

impl fmt::Display for DisplayId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DisplayId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DisplayId::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::Parse(format!("display `{s}`")))
    }
}

fn named_coset(name: NamedLattice) -> Coset {
    Coset::trivial(Lattice::named(name))
}

fn e_shift_coset() -> Coset {
    Coset::new(Lattice::named(NamedLattice::E), vectors::e_shift())
}

fn f_shift_coset() -> Coset {
    Coset::new(Lattice::named(NamedLattice::F), vectors::f_shift())
}

fn d_shift_coset() -> Coset {
    Coset::new(Lattice::named(NamedLattice::D), vectors::alpha2())
}

/// Checks every identity in a group to `order`.
pub fn verify_display<S: Scalar>(id: DisplayId, order: Coord, denom: i64) -> Result<Vec<IdentityReport>> {
    if order < Coord::from_integer(2) {
        return Err(Error::InvalidArgument(format!("order {} below 2", format_coord(&order))));
    }
    let lat = |n| Lattice::named(n);
    let mut out = Vec::new();
    match id {
        DisplayId::EPlus | DisplayId::EMinus => {
            let (sign, ts) = if id == DisplayId::EPlus {
                (Sign::Plus, e_plus_triples())
            } else {
                (Sign::Minus, e_minus_triples())
            };
            let left = fixed_char::<S>(&lat(NamedLattice::E), sign, denom, order)?;
            let right = triples_char(&ts, denom, order)?;
            out.push(IdentityReport::compare(id.name(), order, &left, &right));
        }
        DisplayId::EShift => {
            let left = lattice_char::<S>(&e_shift_coset(), denom, order)?;
            let right = triples_char(&e_shift_triples(), denom, order)?;
            out.push(IdentityReport::compare(id.name(), order, &left, &right));
        }
        DisplayId::FModules => {
            let f = lat(NamedLattice::F);
            let sides = [
                ("f-plus", fixed_char::<S>(&f, Sign::Plus, denom, order)?, F_PLUS_FAMILIES),
                ("f-minus", fixed_char::<S>(&f, Sign::Minus, denom, order)?, F_MINUS_FAMILIES),
                ("f-shift", lattice_char::<S>(&f_shift_coset(), denom, order)?, F_SHIFT_FAMILIES),
            ];
            for (name, left, fams) in sides {
                let right = family_char(fams, denom, order)?;
                out.push(IdentityReport::compare(name, order, &left, &right));
            }
        }
        DisplayId::PlusSplitting | DisplayId::MinusSplitting => {
            let sign = if id == DisplayId::PlusSplitting { Sign::Plus } else { Sign::Minus };
            let (e, f) = (lat(NamedLattice::E), lat(NamedLattice::F));
            let shifted = lattice_char::<S>(&d_shift_coset(), denom, order)?;
            let d_sign = fixed_char::<S>(&lat(NamedLattice::D), sign, denom, order)?;
            let l_sign = fixed_char::<S>(&lat(NamedLattice::L), sign, denom, order)?;
            let (ep, em) = (
                fixed_char::<S>(&e, Sign::Plus, denom, order)?,
                fixed_char::<S>(&e, Sign::Minus, denom, order)?,
            );
            let (fp, fm) = (
                fixed_char::<S>(&f, Sign::Plus, denom, order)?,
                fixed_char::<S>(&f, Sign::Minus, denom, order)?,
            );
            let (l_id, d_id) = if sign == Sign::Plus {
                ("l-plus", "d-plus")
            } else {
                ("l-minus", "d-minus")
            };
            out.push(IdentityReport::compare(l_id, order, &l_sign, &d_sign.add(&shifted)));
            let products = if sign == Sign::Plus {
                ep.mul(&fp).add(&em.mul(&fm))
            } else {
                ep.mul(&fm).add(&em.mul(&fp))
            };
            out.push(IdentityReport::compare(d_id, order, &d_sign, &products));
            if sign == Sign::Plus {
                let product = lattice_char::<S>(&e_shift_coset(), denom, order)?
                    .mul(&lattice_char::<S>(&f_shift_coset(), denom, order)?);
                out.push(IdentityReport::compare("d-shift", order, &shifted, &product));
            }
        }
    }
    Ok(out)
}

/// Checks every display group at its default order, in parallel.
pub fn verify_all_displays<S: Scalar>(denom: i64) -> Result<Vec<IdentityReport>> {
    let groups: Vec<Result<Vec<IdentityReport>>> = DisplayId::ALL
        .par_iter()
        .map(|&id| verify_display::<S>(id, id.default_order(), denom))
        .collect();
    let mut out = Vec::new();
    for g in groups {
        out.extend(g?);
    }
    Ok(out)
}

/// The decomposition identity for `Theta_N / prod(1-q^n)^3` together with
/// its leading coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub identity: IdentityReport,
    /// Coefficients of `q^0, q^1, q^2` on the lattice side.
    pub leading: Vec<String>,
}

/// Right side of the decomposition of `V_N` to `order`.
pub fn theorem_char<S: Scalar>(denom: i64, order: Coord) -> Result<QSeries<S>> {
    let sums: Vec<Result<QSeries<S>>> = theorem_table()
        .par_iter()
        .map(|s| {
            let base = s.labels[0].h + s.labels[1].h + s.labels[2].h;
            if base > order {
                return Ok(QSeries::zero(denom, order));
            }
            Ok(triple_char::<S>(&s.labels, denom, order)?.mul(&family_char(&s.families, denom, order)?))
        })
        .collect();
    let mut acc = QSeries::zero(denom, order);
    for s in sums {
        acc = acc.add(&s?);
    }
    Ok(acc)
}

pub fn verify_theorem<S: Scalar>(order: Coord, denom: i64) -> Result<TheoremReport> {
    if order < Coord::from_integer(2) {
        return Err(Error::InvalidArgument(format!("order {} below 2", format_coord(&order))));
    }
    let left = lattice_char::<S>(&named_coset(NamedLattice::N), denom, order)?;
    let right = theorem_char::<S>(denom, order)?;
    let leading = (0..3).map(|k| left.coeff(Coord::from_integer(k)).to_string()).collect();
    Ok(TheoremReport {
        identity: IdentityReport::compare("theorem", order, &left, &right),
        leading,
    })
}

/// Graded dimension at level `n` of `L(c, h)`, read off the character.
pub fn level_dim(label: &VirasoroLabel, n: i64) -> Result<i64> {
    let order = label.h + Coord::from_integer(n);
    let ch = label.character::<Coord>(*label.h.denom(), order)?;
    let c = ch.coeff(order);
    debug_assert!(c.is_integer());
    Ok(c.to_integer())
}

/// Dimension of `L(c1,h1) ⊗ ... ⊗ L(c4,h4)` at total level `n` above its
/// lowest weight.
pub fn tensor_level_dim(labels: &[VirasoroLabel], n: i64) -> Result<i64> {
    let per: Vec<Vec<i64>> = labels
        .iter()
        .map(|l| (0..=n).map(|k| level_dim(l, k)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut acc = vec![0i64; (n + 1) as usize];
    acc[0] = 1;
    for dims in per {
        let mut next = vec![0i64; (n + 1) as usize];
        for (i, a) in acc.iter().enumerate() {
            for (j, d) in dims.iter().enumerate().take(n as usize + 1 - i) {
                next[i + j] += a * d;
            }
        }
        acc = next;
    }
    Ok(acc[n as usize])
}
