//! Fock spaces `M(1) (x) C[L + lambda]` and their sparse elements.
//!
//! A [`FockMonomial`] is `a_{i1}(n1) ... a_{ik}(nk) e^x` with all modes
//! negative. Directions index a Heisenberg frame: for full-rank cosets the
//! frame is the ambient `a1, a2, a3` (so vertex operators can act), for
//! lower-rank cosets it is the lattice's own generators. Only full-rank
//! elements are fed to the vertex-operator engine.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lattice::{Coset, LatticeVector, AMBIENT_RANK};
use crate::scalar::{Coord, Scalar};

/// One Heisenberg creation operator `a_{dir+1}(mode)`, `mode < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boson {
    pub dir: u8,
    pub mode: i32,
}

impl Boson {
    pub fn new(dir: u8, mode: i32) -> Self {
        debug_assert!(mode < 0, "creation modes are negative");
        Boson { dir, mode }
    }
}

pub type BosonList = SmallVec<[Boson; 6]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockMonomial {
    bosons: BosonList,
    point: LatticeVector,
}

impl FockMonomial {
    pub fn new(bosons: impl IntoIterator<Item = Boson>, point: LatticeVector) -> Self {
        let mut bosons: BosonList = bosons.into_iter().collect();
        bosons.sort_unstable();
        FockMonomial { bosons, point }
    }

    pub fn vacuum() -> Self {
        FockMonomial { bosons: SmallVec::new(), point: LatticeVector::zero() }
    }

    /// `e^x`.
    pub fn exp(point: LatticeVector) -> Self {
        FockMonomial { bosons: SmallVec::new(), point }
    }

    /// `a_{dir+1}(-1) 1`.
    pub fn heisenberg(dir: u8) -> Self {
        FockMonomial::new([Boson::new(dir, -1)], LatticeVector::zero())
    }

    pub fn bosons(&self) -> &[Boson] {
        &self.bosons
    }

    pub fn point(&self) -> &LatticeVector {
        &self.point
    }

    pub fn is_vacuum(&self) -> bool {
        self.bosons.is_empty() && self.point.is_zero()
    }

    pub fn boson_weight(&self) -> i64 {
        self.bosons.iter().map(|b| -(b.mode as i64)).sum()
    }

    pub fn weight(&self) -> Coord {
        Coord::from_integer(self.boson_weight()) + self.point.weight()
    }

    pub fn multiplicity(&self, dir: u8, mode: i32) -> usize {
        self.bosons.iter().filter(|b| b.dir == dir && b.mode == mode).count()
    }

    /// Removes `count` copies of `a_{dir+1}(mode)`.
    pub fn without(&self, dir: u8, mode: i32, count: usize) -> FockMonomial {
        let mut left = count;
        let bosons = self
            .bosons
            .iter()
            .filter(|b| {
                if left > 0 && b.dir == dir && b.mode == mode {
                    left -= 1;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        debug_assert_eq!(left, 0);
        FockMonomial { bosons, point: self.point }
    }

    /// Multiplies in extra creation operators.
    pub fn with_bosons(&self, extra: &[Boson]) -> FockMonomial {
        if extra.is_empty() {
            return self.clone();
        }
        let mut bosons: BosonList = SmallVec::with_capacity(self.bosons.len() + extra.len());
        bosons.extend_from_slice(&self.bosons);
        bosons.extend_from_slice(extra);
        bosons.sort_unstable();
        FockMonomial { bosons, point: self.point }
    }

    pub fn with_point(&self, point: LatticeVector) -> FockMonomial {
        FockMonomial { bosons: self.bosons.clone(), point }
    }

    /// The part living in the tensor factor `V_{Z a_{dir+1}}`.
    pub fn factor(&self, dir: usize) -> FockMonomial {
        let bosons = self.bosons.iter().filter(|b| b.dir as usize == dir).copied().collect();
        let mut point = LatticeVector::zero();
        point.0[dir] = self.point.0[dir];
        FockMonomial { bosons, point }
    }

    /// Product of monomials from disjoint tensor factors.
    pub fn tensor(&self, other: &FockMonomial) -> FockMonomial {
        let mut m = self.with_bosons(&other.bosons);
        m.point = self.point + other.point;
        m
    }
}

impl fmt::Display for FockMonomial {
    /// `a1(-2) a1(-1)^2 a3(-1) e[1,0,-1]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.bosons.len() {
            let b = self.bosons[i];
            let mut j = i;
            while j < self.bosons.len() && self.bosons[j] == b {
                j += 1;
            }
            write!(f, "a{}({})", b.dir + 1, b.mode)?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            write!(f, " ")?;
            i = j;
        }
        write!(f, "e{}", self.point)
    }
}

impl fmt::Debug for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FockMonomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(FockMonomial::vacuum());
        }
        let mut bosons = Vec::new();
        let mut point = LatticeVector::zero();
        for tok in s.split_whitespace() {
            let bad = || Error::Parse(format!("monomial token `{tok}`"));
            if let Some(rest) = tok.strip_prefix('e') {
                point = rest.parse()?;
            } else if let Some(rest) = tok.strip_prefix('a') {
                let (dir, rest) = rest.split_once('(').ok_or_else(bad)?;
                let (mode, power) = rest.split_once(')').ok_or_else(bad)?;
                let dir: usize = dir.parse().map_err(|_| bad())?;
                let mode: i32 = mode.parse().map_err(|_| bad())?;
                let power: usize = match power.strip_prefix('^') {
                    Some(p) => p.parse().map_err(|_| bad())?,
                    None if power.is_empty() => 1,
                    None => return Err(bad()),
                };
                if dir == 0 || dir > AMBIENT_RANK || mode >= 0 {
                    return Err(bad());
                }
                bosons.extend(std::iter::repeat_n(Boson::new(dir as u8 - 1, mode), power));
            } else {
                return Err(bad());
            }
        }
        Ok(FockMonomial::new(bosons, point))
    }
}

/// Homogeneity of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Zero,
    Homogeneous(Coord),
    Inhomogeneous,
}

/// Sparse element; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct FockElement<S> {
    terms: BTreeMap<FockMonomial, S>,
}

impl<S: Scalar> Default for FockElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> FockElement<S> {
    pub fn zero() -> Self {
        FockElement { terms: BTreeMap::new() }
    }

    pub fn vacuum() -> Self {
        Self::from_monomial(FockMonomial::vacuum())
    }

    pub fn from_monomial(m: FockMonomial) -> Self {
        let mut e = Self::zero();
        e.terms.insert(m, S::one());
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (FockMonomial, S)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockMonomial, &S)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &FockMonomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &FockMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, m: FockMonomial, c: S) {
        if c.is_negligible() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_negligible() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x.clone() * c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-S::one());
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_negligible() {
            return Self::zero();
        }
        FockElement {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn weight(&self) -> Weight {
        let mut it = self.terms.keys().map(FockMonomial::weight);
        let Some(w) = it.next() else {
            return Weight::Zero;
        };
        if it.all(|x| x == w) {
            Weight::Homogeneous(w)
        } else {
            Weight::Inhomogeneous
        }
    }

    /// The weight of a nonzero homogeneous element.
    pub fn homogeneous_weight(&self) -> Result<Coord> {
        match self.weight() {
            Weight::Homogeneous(w) => Ok(w),
            Weight::Zero => Ok(Coord::zero()),
            Weight::Inhomogeneous => Err(Error::Inhomogeneous),
        }
    }

    /// Applies a linear map given on monomials.
    pub fn map_linear<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&FockMonomial) -> Result<Self>,
    {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m)?, c);
        }
        Ok(out)
    }

    /// Text form: one `coeff * monomial` line per term.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0\n".to_string();
        }
        let mut s = String::new();
        for (m, c) in &self.terms {
            s.push_str(&format!("{c} * {m}\n"));
        }
        s
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut e = Self::zero();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if line == "0" {
                continue;
            }
            let (c, m) = line
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("element line `{line}`")))?;
            let c = S::parse_scalar(c).ok_or_else(|| Error::Parse(format!("coefficient `{c}`")))?;
            e.add_term(m.parse()?, c);
        }
        Ok(e)
    }
}

impl<S: Scalar> fmt::Debug for FockElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar> fmt::Display for FockElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Multisets of `(dir, part)` with `dir < colors`, summing to at most `max`.
fn colored_partitions(colors: u8, max: i64) -> Vec<BosonList> {
    let items: Vec<Boson> = (0..colors)
        .flat_map(|d| (1..=max).map(move |n| Boson::new(d, -(n as i32))))
        .collect();
    let mut out = Vec::new();
    let mut current: BosonList = SmallVec::new();
    fn rec(items: &[Boson], start: usize, left: i64, cur: &mut BosonList, out: &mut Vec<BosonList>) {
        out.push(cur.clone());
        for i in start..items.len() {
            let w = -(items[i].mode as i64);
            if w <= left {
                cur.push(items[i]);
                rec(items, i, left - w, cur, out);
                cur.pop();
            }
        }
    }
    rec(&items, 0, max, &mut current, &mut out);
    out
}

/// All monomials of `V_{coset}` of weight at most `max_weight`, ordered by
/// weight and then lexicographically.
pub fn basis(c: &Coset, max_weight: Coord) -> Vec<FockMonomial> {
    let mut out = Vec::new();
    for p in c.points_up_to(max_weight) {
        let room = (max_weight - p.weight()).floor().to_integer();
        for bosons in colored_partitions(c.rank() as u8, room) {
            out.push(FockMonomial::new(bosons, p));
        }
    }
    out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
    out
}

/// Monomials of exactly the given weight.
pub fn basis_at(c: &Coset, weight: Coord) -> Vec<FockMonomial> {
    basis(c, weight).into_iter().filter(|m| m.weight() == weight).collect()
}

pub fn graded_dim(c: &Coset, weight: Coord) -> usize {
    basis_at(c, weight).len()
}

/// A monomial of a rank-one factor `V_{Z a}`: negative modes and the charge
/// `k` of `e^{k a}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorMonomial {
    pub modes: SmallVec<[i32; 6]>,
    pub charge: i64,
}

pub type TensorElement<S> = BTreeMap<[FactorMonomial; AMBIENT_RANK], S>;

/// Rewrites an element of `V_L` in `V_{Z a1} (x) V_{Z a2} (x) V_{Z a3}`.
pub fn tensor_split<S: Scalar>(u: &FockElement<S>) -> Result<TensorElement<S>> {
    let mut out = TensorElement::new();
    for (m, c) in u.iter() {
        let ints = m.point().to_ints().ok_or_else(|| Error::PointOutsideLattice(m.point().to_string()))?;
        let key: [FactorMonomial; AMBIENT_RANK] = std::array::from_fn(|i| FactorMonomial {
            modes: m.bosons().iter().filter(|b| b.dir as usize == i).map(|b| b.mode).collect(),
            charge: ints[i],
        });
        out.insert(key, c.clone());
    }
    Ok(out)
}

pub fn tensor_join<S: Scalar>(t: &TensorElement<S>) -> FockElement<S> {
    let mut out = FockElement::zero();
    for (key, c) in t {
        let mut bosons = Vec::new();
        let mut point = LatticeVector::zero();
        for (i, f) in key.iter().enumerate() {
            bosons.extend(f.modes.iter().map(|&n| Boson::new(i as u8, n)));
            point.0[i] = Coord::from_integer(f.charge);
        }
        out.add_term(FockMonomial::new(bosons, point), c.clone());
    }
    out
}

impl<S: Scalar> FockElement<S> {
    /// Tensor product of elements supported on disjoint factors.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.tensor(b), x.clone() * y.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{vectors, Lattice, NamedLattice};
    use num_rational::Ratio;

    type Q = Ratio<i128>;

    fn w(p: i64, q: i64) -> Coord {
        Coord::new(p, q)
    }

    fn coset(name: NamedLattice) -> Coset {
        Coset::trivial(Lattice::named(name))
    }

    #[test]
    fn weight_one_of_l() {
        let b = basis_at(&coset(NamedLattice::L), w(1, 1));
        assert_eq!(b.len(), 9);
        let expected: Vec<FockMonomial> = [
            "a1(-1) e[0,0,0]",
            "a2(-1) e[0,0,0]",
            "a3(-1) e[0,0,0]",
            "e[1,0,0]",
            "e[-1,0,0]",
            "e[0,1,0]",
            "e[0,-1,0]",
            "e[0,0,1]",
            "e[0,0,-1]",
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
        for m in expected {
            assert!(b.contains(&m), "{m} missing");
        }
        assert_eq!(graded_dim(&coset(NamedLattice::L), w(1, 1)), 9);
    }

    #[test]
    fn weight_one_of_n_is_bosonic() {
        let b = basis_at(&coset(NamedLattice::N), w(1, 1));
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|m| m.point().is_zero()));
    }

    #[test]
    fn weight_zero_is_vacuum() {
        for name in [NamedLattice::L, NamedLattice::N, NamedLattice::E, NamedLattice::F] {
            assert_eq!(basis(&coset(name), w(0, 1)), vec![FockMonomial::vacuum()]);
        }
    }

    #[test]
    fn graded_dims() {
        assert_eq!(graded_dim(&coset(NamedLattice::N), w(2, 1)), 21);
        let f_shifted = Coset::new(Lattice::named(NamedLattice::F), vectors::f_shift());
        // gamma/3 is the only coset vector of weight 1/3; -gamma/3 is in the other coset
        assert_eq!(graded_dim(&f_shifted, w(1, 3)), 1);
        assert_eq!(graded_dim(&f_shifted, w(1, 6)), 0);
    }

    #[test]
    fn basis_is_sorted_and_duplicate_free() {
        let b = basis(&coset(NamedLattice::L), w(3, 1));
        for pair in b.windows(2) {
            assert!((pair[0].weight(), &pair[0]) < (pair[1].weight(), &pair[1]));
        }
    }

    #[test]
    fn monomial_text_round_trip() {
        let m: FockMonomial = "a3(-1) a1(-1)^2 a1(-2) e[1,0,-1]".parse().unwrap();
        assert_eq!(m.to_string(), "a1(-2) a1(-1)^2 a3(-1) e[1,0,-1]");
        assert_eq!(m.weight(), w(2 + 2 + 1 + 2, 1));
        assert_eq!("1".parse::<FockMonomial>().unwrap(), FockMonomial::vacuum());
        assert!("a4(-1) e[0,0,0]".parse::<FockMonomial>().is_err());
        assert!("a1(2) e[0,0,0]".parse::<FockMonomial>().is_err());
    }

    #[test]
    fn element_text_round_trip() {
        let e: FockElement<Q> =
            FockElement::from_text("1/16 * a1(-1)^2 e[0,0,0]\n-1/4 * e[1,1,0]\n").unwrap();
        assert_eq!(FockElement::<Q>::from_text(&e.to_text()).unwrap(), e);
        assert_eq!(e.weight(), Weight::Homogeneous(w(2, 1)));
        assert_eq!(FockElement::<Q>::from_text("0").unwrap(), FockElement::zero());
    }

    #[test]
    fn tensor_view_examples() {
        let e: FockElement<Q> = FockElement::from_monomial(FockMonomial::exp(vectors::root1()));
        let t = tensor_split(&e).unwrap();
        let (key, _) = t.iter().next().unwrap();
        assert_eq!(key[0].charge, 1);
        assert_eq!(key[1].charge, 1);
        assert_eq!(key[2], FactorMonomial { modes: SmallVec::new(), charge: 0 });
        assert_eq!(tensor_join(&t), e);

        let b: FockElement<Q> = FockElement::from_text("1 * a1(-1) a2(-1) e[0,0,0]").unwrap();
        let t = tensor_split(&b).unwrap();
        let (key, _) = t.iter().next().unwrap();
        assert_eq!(key[0].modes.as_slice(), &[-1]);
        assert_eq!(key[1].modes.as_slice(), &[-1]);
        assert!(key[2].modes.is_empty());

        let outside: FockElement<Q> = FockElement::from_monomial(FockMonomial::exp(vectors::f_shift()));
        assert!(tensor_split(&outside).is_err());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let m = FockMonomial::heisenberg(0);
        let mut e = FockElement::<Q>::from_monomial(m.clone());
        e.add_term(m, Q::from_integer(-1));
        assert!(e.is_zero());
        assert_eq!(e.weight(), Weight::Zero);
    }
}
