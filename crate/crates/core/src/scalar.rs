//! Coefficient fields.
//!
//! Every coefficient-carrying structure in the crate (Fock elements, q-series,
//! matrices) is generic over [`Scalar`]. Lattice geometry itself always stays
//! in [`Coord`], an exact `i64` rational, because points and inner products
//! must be compared exactly no matter which field the coefficients live in.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, ToPrimitive, Zero};

/// Exact rational used for lattice coordinates, weights and Virasoro labels.
pub type Coord = Ratio<i64>;

/// A field of coefficients.
///
/// Exact implementations (`Ratio<i64>`, `Ratio<i128>`, `BigRational`) give
/// exact answers throughout; the floating point ones are accepted for quick
/// numerical experiments and treat tiny magnitudes as zero.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    fn from_coord(c: &Coord) -> Self;

    fn from_i64(n: i64) -> Self;

    /// Zero test used by elimination and sparse storage.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// Parses `p`, `-p` or `p/q`.
    fn parse_scalar(s: &str) -> Option<Self>;

    /// The exact rational value, when the scalar has one that fits.
    fn to_coord(&self) -> Option<Coord>;
}

fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => Some((p.trim(), q.trim())),
        None => Some((s, "1")),
    }
}

macro_rules! ratio_scalar {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_coord(c: &Coord) -> Self {
                Ratio::new(*c.numer() as $int, *c.denom() as $int)
            }

            fn from_i64(n: i64) -> Self {
                Ratio::from_integer(n as $int)
            }

            fn parse_scalar(s: &str) -> Option<Self> {
                let (p, q) = split_fraction(s)?;
                let p: $int = p.parse().ok()?;
                let q: $int = q.parse().ok()?;
                if q == 0 {
                    return None;
                }
                Some(Ratio::new(p, q))
            }

            fn to_coord(&self) -> Option<Coord> {
                let p = i64::try_from(*self.numer()).ok()?;
                let q = i64::try_from(*self.denom()).ok()?;
                Some(Ratio::new(p, q))
            }
        }
    };
}

ratio_scalar!(i64);
ratio_scalar!(i128);

impl Scalar for BigRational {
    fn from_coord(c: &Coord) -> Self {
        BigRational::new(BigInt::from(*c.numer()), BigInt::from(*c.denom()))
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        let (p, q) = split_fraction(s)?;
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    }

    fn to_coord(&self) -> Option<Coord> {
        Some(Ratio::new(self.numer().to_i64()?, self.denom().to_i64()?))
    }
}

macro_rules! float_scalar {
    ($f:ty, $eps:expr) => {
        impl Scalar for $f {
            fn from_coord(c: &Coord) -> Self {
                *c.numer() as $f / *c.denom() as $f
            }

            fn from_i64(n: i64) -> Self {
                n as $f
            }

            fn is_negligible(&self) -> bool {
                self.abs() < $eps
            }

            fn parse_scalar(s: &str) -> Option<Self> {
                let (p, q) = split_fraction(s)?;
                let p: $f = p.parse().ok()?;
                let q: $f = q.parse().ok()?;
                Some(p / q)
            }

            fn to_coord(&self) -> Option<Coord> {
                // Only small-denominator values are recovered.
                for q in 1..=720i64 {
                    let p = (*self * q as $f).round();
                    if ((*self * q as $f) - p).abs() < $eps * q as $f {
                        return Some(Ratio::new(p as i64, q));
                    }
                }
                None
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);

/// Generalized binomial coefficient `x choose k` for any integer `x`.
pub fn binomial(x: i64, k: i64) -> i128 {
    if k < 0 {
        return 0;
    }
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 0..k {
        num *= (x - j) as i128;
        den *= (j + 1) as i128;
        let g = num_integer::gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

pub(crate) fn scalar_from_i128<S: Scalar>(n: i128) -> S {
    match i64::try_from(n) {
        Ok(v) => S::from_i64(v),
        Err(_) => {
            // split into two halves that fit
            let hi = n >> 32;
            let lo = n - (hi << 32);
            S::from_i64(hi as i64) * S::from_i64(1i64 << 32) + S::from_i64(lo as i64)
        }
    }
}

pub(crate) fn pow_scalar<S: Scalar>(base: &S, exp: u32) -> S {
    let mut acc = S::one();
    for _ in 0..exp {
        acc *= base.clone();
    }
    acc
}

/// Formats a coordinate as `p` or `p/q`.
pub fn format_coord(c: &Coord) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_coord(s: &str) -> Option<Coord> {
    <Coord as Scalar>::parse_scalar(s)
}

/// Serde adapter writing a [`Coord`] as `"p/q"` text.
pub mod coord_serde {
    use super::{format_coord, parse_coord, Coord};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &Coord, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_coord(c))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Coord, D::Error> {
        let text = String::deserialize(d)?;
        parse_coord(&text).ok_or_else(|| D::Error::custom(format!("bad rational `{text}`")))
    }

    /// Same, for fixed-size arrays.
    pub mod array {
        use super::*;
        use serde::ser::SerializeTuple;

        pub fn serialize<S: Serializer, const N: usize>(c: &[Coord; N], s: S) -> Result<S::Ok, S::Error> {
            let mut t = s.serialize_tuple(N)?;
            for x in c {
                t.serialize_element(&format_coord(x))?;
            }
            t.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[Coord; N], D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            let coords: Vec<Coord> = texts
                .iter()
                .map(|t| parse_coord(t).ok_or_else(|| D::Error::custom(format!("bad rational `{t}`"))))
                .collect::<Result<_, _>>()?;
            coords
                .try_into()
                .map_err(|v: Vec<Coord>| D::Error::invalid_length(v.len(), &"fixed-length array"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_with_negative_upper_index() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-1, 3), -1);
        assert_eq!(binomial(-3, 2), 6);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(7, 0), 1);
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_coord("-3/6"), Some(Coord::new(-1, 2)));
        assert_eq!(parse_coord("4"), Some(Coord::from_integer(4)));
        assert_eq!(parse_coord("1/0"), None);
        assert_eq!(<f64 as Scalar>::parse_scalar("1/4"), Some(0.25));
    }

    #[test]
    fn float_recovers_small_rationals() {
        assert_eq!(0.7f64.to_coord(), Some(Coord::new(7, 10)));
        assert_eq!(format_coord(&Coord::new(-2, 3)), "-2/3");
    }
}
