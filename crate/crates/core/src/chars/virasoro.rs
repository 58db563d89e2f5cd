use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::QSeries;
use crate::error::{Error, Result};
use crate::scalar::{format_coord, Coord, Scalar};

/// Central charge and lowest weight of an irreducible Virasoro module `L(c, h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VirasoroLabel {
    pub c: Coord,
    pub h: Coord,
}

/// `c = 1 - 6/(p(p+1))` for the unitary series; returns `(p, p+1)`.
pub fn unitary_model(c: Coord) -> Option<(i64, i64)> {
    (3..200).map(|p| (p, p + 1)).find(|&(p, pp)| Coord::one() - Coord::new(6, p * pp) == c)
}

/// `h_{r,s} = ((r p' - s p)^2 - (p - p')^2) / (4 p p')`.
pub fn kac_weight(p: i64, pp: i64, r: i64, s: i64) -> Coord {
    Coord::new((r * pp - s * p).pow(2) - (p - pp).pow(2), 4 * p * pp)
}

/// Distinct lowest weights of the minimal model with the given central charge.
pub fn kac_table(c: Coord) -> Option<Vec<Coord>> {
    let (p, pp) = unitary_model(c)?;
    let mut hs: Vec<Coord> = (1..p)
        .flat_map(|r| (1..pp).map(move |s| kac_weight(p, pp, r, s)))
        .collect();
    hs.sort();
    hs.dedup();
    Some(hs)
}

impl VirasoroLabel {
    /// Validates `(c, h)`: `c = 1` with `h >= 0`, or a pair from a unitary
    /// minimal model.
    pub fn new(c: Coord, h: Coord) -> Result<Self> {
        let label = VirasoroLabel { c, h };
        if c == Coord::one() {
            if h < Coord::zero() {
                return Err(Error::LabelOutOfRange(label.to_string()));
            }
            return Ok(label);
        }
        match kac_table(c) {
            Some(hs) if hs.contains(&h) => Ok(label),
            _ => Err(Error::LabelOutOfRange(label.to_string())),
        }
    }

    /// Kac indices `(p, p', r, s)` of a minimal-model label.
    pub fn kac_indices(&self) -> Option<(i64, i64, i64, i64)> {
        let (p, pp) = unitary_model(self.c)?;
        for r in 1..p {
            for s in 1..pp {
                if kac_weight(p, pp, r, s) == self.h {
                    return Some((p, pp, r, s));
                }
            }
        }
        None
    }

    /// Unshifted character `sum dim L(c,h)_{h+n} q^{h+n}`.
    pub fn character<S: Scalar>(&self, denom: i64, order: Coord) -> Result<QSeries<S>> {
        if self.c == Coord::one() {
            return c1_char(self.h, denom, order);
        }
        let (p, pp, r, s) = self
            .kac_indices()
            .ok_or_else(|| Error::LabelOutOfRange(self.to_string()))?;
        minimal_char(p, pp, r, s, denom, order)
    }
}

impl fmt::Display for VirasoroLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", format_coord(&self.c), format_coord(&self.h))
    }
}

/// Character of the minimal-model module `L(c_{p,p'}, h_{r,s})`:
///
/// ```text
/// (1/prod(1-q^n)) sum_{k in Z} (q^{A_k} - q^{B_k})
/// A_k = ((2pp'k + rp' - sp)^2 - (p-p')^2) / 4pp'
/// B_k = ((2pp'k + rp' + sp)^2 - (p-p')^2) / 4pp'
/// ```
pub fn minimal_char<S: Scalar>(
    p: i64,
    pp: i64,
    r: i64,
    s: i64,
    denom: i64,
    order: Coord,
) -> Result<QSeries<S>> {
    if p < 2 || pp < 2 || !(1..p).contains(&r) || !(1..pp).contains(&s) {
        return Err(Error::LabelOutOfRange(format!("(p,p',r,s)=({p},{pp},{r},{s})")));
    }
    let shift = (p - pp).pow(2);
    let four = 4 * p * pp;
    let exponent = |x: i64| Coord::new(x * x - shift, four);
    let mut numerator = QSeries::<S>::zero(denom, order);
    let mut k = 0i64;
    loop {
        let ks: &[i64] = if k == 0 { &[0] } else { &[k, -k] };
        let mut any = false;
        for &kk in ks {
            let a = exponent(2 * p * pp * kk + r * pp - s * p);
            let b = exponent(2 * p * pp * kk + r * pp + s * p);
            if a <= order {
                numerator.add_at(a, S::one())?;
                any = true;
            }
            if b <= order {
                numerator.add_at(b, -S::one())?;
                any = true;
            }
        }
        // exponents grow monotonically in |k| once k >= 1
        if !any && k >= 1 {
            break;
        }
        k += 1;
    }
    Ok(numerator.mul(&QSeries::qpochhammer_inverse(1, denom, order)))
}

/// Character of the `c = 1` module `L(1, h)`. The Verma module is reducible
/// exactly when `h = k^2/4` for an integer `k >= 0`, with the maximal
/// submodule generated at level `k + 1`, giving
/// `(q^{k^2/4} - q^{(k+2)^2/4}) / prod(1-q^n)`; otherwise the Verma character
/// `q^h / prod(1-q^n)`.
pub fn c1_char<S: Scalar>(h: Coord, denom: i64, order: Coord) -> Result<QSeries<S>> {
    if h < Coord::zero() {
        return Err(Error::LabelOutOfRange(format!("L(1,{})", format_coord(&h))));
    }
    let mut numerator = QSeries::<S>::zero(denom, order);
    numerator.add_at(h, S::one())?;
    if let Some(k) = integer_sqrt(h * Coord::from_integer(4)) {
        let next = Coord::new((k + 2) * (k + 2), 4);
        if next <= order {
            numerator.add_at(next, -S::one())?;
        }
    }
    Ok(numerator.mul(&QSeries::qpochhammer_inverse(1, denom, order)))
}

fn integer_sqrt(h: Coord) -> Option<i64> {
    if !h.is_integer() {
        return None;
    }
    let n = h.to_integer();
    let m = (n as f64).sqrt().round() as i64;
    (m >= 0 && m * m == n).then_some(m)
}
