use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_coord, parse_coord, Coord, Scalar};

/// A q-expansion `sum c_e q^e` with exponents in `(1/denom) Z`, `0 <= e <= order`.
///
/// Coefficients are stored densely: slot `k` holds the coefficient of
/// `q^(k/denom)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<S> {
    denom: i64,
    order: Coord,
    coeffs: Vec<S>,
}

impl<S: Scalar> QSeries<S> {
    pub fn zero(denom: i64, order: Coord) -> Self {
        assert!(denom > 0, "exponent denominator must be positive");
        let order = order.max(Coord::zero());
        let len = (order * denom).floor().to_integer() as usize + 1;
        QSeries { denom, order, coeffs: vec![S::zero(); len] }
    }

    pub fn one(denom: i64, order: Coord) -> Self {
        let mut s = Self::zero(denom, order);
        s.coeffs[0] = S::one();
        s
    }

    /// `c q^e`, or zero when `e` exceeds the order.
    pub fn monomial(exponent: Coord, c: S, denom: i64, order: Coord) -> Result<Self> {
        let mut s = Self::zero(denom, order);
        s.add_at(exponent, c)?;
        Ok(s)
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn order(&self) -> Coord {
        self.order
    }

    fn slot(&self, exponent: Coord) -> Result<Option<usize>> {
        let k = exponent * self.denom;
        if !k.is_integer() || exponent < Coord::zero() {
            return Err(Error::ExponentDenominator(format_coord(&exponent), self.denom));
        }
        let k = k.to_integer() as usize;
        Ok((k < self.coeffs.len()).then_some(k))
    }

    pub fn coeff(&self, exponent: Coord) -> S {
        match self.slot(exponent) {
            Ok(Some(k)) => self.coeffs[k].clone(),
            _ => S::zero(),
        }
    }

    /// Adds `c q^e`; terms beyond the order are dropped.
    pub fn add_at(&mut self, exponent: Coord, c: S) -> Result<()> {
        if let Some(k) = self.slot(exponent)? {
            self.coeffs[k] += c;
        }
        Ok(())
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Coord, &S)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_negligible())
            .map(move |(k, c)| (Coord::new(k as i64, self.denom), c))
    }

    pub fn leading_exponent(&self) -> Option<Coord> {
        self.terms().next().map(|(e, _)| e)
    }

    /// Re-indexes on the finer lattice `(1/new_denom) Z`.
    pub fn with_denom(&self, new_denom: i64) -> Result<Self> {
        if new_denom % self.denom != 0 {
            return Err(Error::ExponentDenominator(format!("1/{}", self.denom), new_denom));
        }
        let step = (new_denom / self.denom) as usize;
        let mut out = Self::zero(new_denom, self.order);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * step < out.coeffs.len() {
                out.coeffs[k * step] = c.clone();
            }
        }
        Ok(out)
    }

    pub fn truncate(&self, order: Coord) -> Self {
        let order = order.min(self.order);
        let mut out = Self::zero(self.denom, order);
        let n = out.coeffs.len();
        out.coeffs.clone_from_slice(&self.coeffs[..n]);
        out
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let d = self.denom.lcm(&other.denom);
        let order = self.order.min(other.order);
        let a = self.with_denom(d).expect("lcm is a multiple").truncate(order);
        let b = other.with_denom(d).expect("lcm is a multiple").truncate(order);
        (a, b)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x *= c.clone();
        }
        out
    }

    /// Product truncated to the smaller order; every cross term with
    /// exponent at most the order is included.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut out = Self::zero(a.denom, a.order);
        let n = out.coeffs.len();
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_negligible() {
                continue;
            }
            for (j, y) in b.coeffs[..n - i].iter().enumerate() {
                if !y.is_negligible() {
                    out.coeffs[i + j] += x.clone() * y.clone();
                }
            }
        }
        out
    }

    /// Multiplies by `1/(1 - s q^step)` where `step` is a slot count.
    fn divide_by_binomial(&mut self, step: usize, s: &S) {
        for k in step..self.coeffs.len() {
            let prev = self.coeffs[k - step].clone();
            self.coeffs[k] += s.clone() * prev;
        }
    }

    /// `1 / prod_{n>=1} (1 - q^n)^d`.
    pub fn qpochhammer_inverse(d: u32, denom: i64, order: Coord) -> Self {
        let mut s = Self::one(denom, order);
        let max_n = order.floor().to_integer().max(0) as usize;
        for n in 1..=max_n {
            for _ in 0..d {
                s.divide_by_binomial(n * denom as usize, &S::one());
            }
        }
        s
    }

    /// `1 / prod_{n>=1} (1 + q^n)^d`.
    pub fn plus_product_inverse(d: u32, denom: i64, order: Coord) -> Self {
        let mut s = Self::one(denom, order);
        let max_n = order.floor().to_integer().max(0) as usize;
        for n in 1..=max_n {
            for _ in 0..d {
                s.divide_by_binomial(n * denom as usize, &-S::one());
            }
        }
        s
    }

    /// First exponent at which `self` and `other` differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<(Coord, S, S)> {
        let (a, b) = self.aligned(other);
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .enumerate()
            .find(|(_, (x, y))| !((*x).clone() - (*y).clone()).is_negligible())
            .map(|(k, (x, y))| (Coord::new(k as i64, a.denom), x.clone(), y.clone()))
    }

    /// Whether every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs.iter().all(|c| match c.to_coord() {
            Some(v) => v.is_integer() && !v.is_negative(),
            None => false,
        })
    }

    /// `q^(a/b): c/d` lines, one per nonzero term.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.terms() {
            out.push_str(&format!("q^({}): {}\n", format_exponent(&e), c));
        }
        out
    }

    pub fn from_lines(s: &str, denom: i64, order: Coord) -> Result<Self> {
        let mut out = Self::zero(denom, order);
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let bad = || Error::Parse(format!("series line `{line}`"));
            let (lhs, rhs) = line.split_once(':').ok_or_else(bad)?;
            let e = lhs
                .trim()
                .strip_prefix("q^(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(parse_coord)
                .ok_or_else(bad)?;
            let c = S::parse_scalar(rhs).ok_or_else(bad)?;
            out.add_at(e, c)?;
        }
        Ok(out)
    }
}

fn format_exponent(e: &Coord) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl<S: Scalar> fmt::Display for QSeries<S> {
    /// Renders as `1 + q^2 + 2q^(1/2) - q^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let negative = c.to_coord().map(|v| v.is_negative()).unwrap_or(false);
            let mag = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}")?;
            }
            if e.is_one() {
                write!(f, "q")?;
            } else if e.is_integer() {
                write!(f, "q^{}", e.numer())?;
            } else {
                write!(f, "q^({})", format_coord(&e))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
