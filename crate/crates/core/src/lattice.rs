//! Positive-definite lattices inside the rank-three ambient space spanned by
//! `a1, a2, a3` with `<ai, aj> = 2 delta_ij`.
//!
//! Coordinates are always taken in the `ai` basis. The rescaled root vectors
//! `bj = (..)/sqrt(2)` never appear as such: a root `b` is carried by the
//! lattice vector `sqrt(2) b`, which has integral coordinates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chars::QSeries;
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::scalar::{format_coord, parse_coord, Coord, Scalar};

pub const AMBIENT_RANK: usize = 3;

/// A point of the ambient space in `ai` coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector(pub [Coord; AMBIENT_RANK]);

impl LatticeVector {
    pub fn zero() -> Self {
        LatticeVector([Coord::zero(); AMBIENT_RANK])
    }

    pub fn from_ints(v: [i64; AMBIENT_RANK]) -> Self {
        LatticeVector(v.map(Coord::from_integer))
    }

    /// The basis vector `a{i+1}`.
    pub fn alpha(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = Coord::one();
        v
    }

    pub fn coords(&self) -> &[Coord; AMBIENT_RANK] {
        &self.0
    }

    pub fn scale(&self, c: Coord) -> Self {
        LatticeVector(self.0.map(|x| x * c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// `<x, x>`.
    pub fn norm(&self) -> Coord {
        gram(self, self)
    }

    /// Conformal weight `<x, x> / 2` of `e^x`.
    pub fn weight(&self) -> Coord {
        self.0.iter().map(|x| x * x).sum()
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> i64 {
        self.0.iter().fold(1, |acc, x| acc.lcm(x.denom()))
    }

    pub fn to_ints(&self) -> Option<[i64; AMBIENT_RANK]> {
        if !self.is_integral() {
            return None;
        }
        Some(self.0.map(|x| x.to_integer()))
    }
}

/// `<u, v> = 2 * sum ui vi`.
pub fn gram(u: &LatticeVector, v: &LatticeVector) -> Coord {
    let s: Coord = u.0.iter().zip(v.0.iter()).map(|(a, b)| a * b).sum();
    s * 2
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: Self) -> Self {
        LatticeVector([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: Self) -> Self {
        LatticeVector([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> Self {
        LatticeVector(self.0.map(|x| -x))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_coord).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LatticeVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("vector `{s}`")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != AMBIENT_RANK {
            return Err(Error::Parse(format!("vector `{s}` needs {AMBIENT_RANK} entries")));
        }
        let mut v = LatticeVector::zero();
        for (slot, p) in v.0.iter_mut().zip(parts) {
            *slot = parse_coord(p).ok_or_else(|| Error::Parse(format!("entry `{p}`")))?;
        }
        Ok(v)
    }
}

/// Frequently used vectors.
pub mod vectors {
    use super::LatticeVector;

    pub fn alpha1() -> LatticeVector {
        LatticeVector::from_ints([1, 0, 0])
    }
    pub fn alpha2() -> LatticeVector {
        LatticeVector::from_ints([0, 1, 0])
    }
    pub fn alpha3() -> LatticeVector {
        LatticeVector::from_ints([0, 0, 1])
    }
    /// `sqrt(2) b1 = a1 + a2`.
    pub fn root1() -> LatticeVector {
        LatticeVector::from_ints([1, 1, 0])
    }
    /// `sqrt(2) b2 = -a2 + a3`.
    pub fn root2() -> LatticeVector {
        LatticeVector::from_ints([0, -1, 1])
    }
    /// `sqrt(2) b3 = -a1 + a2`.
    pub fn root3() -> LatticeVector {
        LatticeVector::from_ints([-1, 1, 0])
    }
    /// `gamma = -a1 + a2 + a3`.
    pub fn gamma() -> LatticeVector {
        LatticeVector::from_ints([-1, 1, 1])
    }
    /// `sqrt(2)(b1 - b2)/3`, the shift of the `E` factor of `D + a2`.
    pub fn e_shift() -> LatticeVector {
        (root1() - root2()).scale(num_rational::Ratio::new(1, 3))
    }
    /// `gamma/3`, the shift of the `F` factor of `D + a2`.
    pub fn f_shift() -> LatticeVector {
        gamma().scale(num_rational::Ratio::new(1, 3))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedLattice {
    L,
    N,
    D,
    E,
    F,
}

impl FromStr for NamedLattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "L" => Ok(NamedLattice::L),
            "N" => Ok(NamedLattice::N),
            "D" => Ok(NamedLattice::D),
            "E" => Ok(NamedLattice::E),
            "F" => Ok(NamedLattice::F),
            other => Err(Error::UnknownLattice(other.to_string())),
        }
    }
}

/// A lattice given by linearly independent generators in ambient coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lattice {
    name: Option<NamedLattice>,
    basis: Vec<LatticeVector>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.rank() == other.rank()
            && self.basis.iter().all(|b| other.contains(b))
            && other.basis.iter().all(|b| self.contains(b))
    }
}

impl Lattice {
    pub fn new(basis: Vec<LatticeVector>) -> Result<Self> {
        if rank_of(&basis) != basis.len() {
            return Err(Error::Parse("lattice generators are linearly dependent".into()));
        }
        Ok(Lattice { name: None, basis })
    }

    pub fn named(name: NamedLattice) -> Self {
        use vectors::*;
        let basis = match name {
            NamedLattice::L => vec![alpha1(), alpha2(), alpha3()],
            NamedLattice::N => vec![root1(), root2(), root3()],
            NamedLattice::D => vec![root1(), root2(), gamma()],
            NamedLattice::E => vec![root1(), root2()],
            NamedLattice::F => vec![gamma()],
        };
        Lattice { name: Some(name), basis }
    }

    pub fn name(&self) -> Option<NamedLattice> {
        self.name
    }

    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn gram_matrix(&self) -> Vec<Vec<Coord>> {
        self.basis
            .iter()
            .map(|u| self.basis.iter().map(|v| gram(u, v)).collect())
            .collect()
    }

    /// Coefficients of `x` in the generators, if `x` lies in their real span.
    pub fn coefficients(&self, x: &LatticeVector) -> Option<Vec<Coord>> {
        Solver::new(&self.basis).solve(x)
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.coefficients(x)
            .map(|c| c.iter().all(|v| v.is_integer()))
            .unwrap_or(false)
    }

    /// Whether every element of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn is_even(&self) -> bool {
        self.basis.iter().all(|b| b.norm().is_integer() && b.norm().to_integer() % 2 == 0)
            && self.gram_matrix().iter().flatten().all(|x| x.is_integer())
    }

    /// Serializes as `lattice rank=3 basis=[[1,1,0],...]`.
    pub fn to_text(&self) -> String {
        let b: Vec<String> = self.basis.iter().map(|v| v.to_string()).collect();
        format!("lattice rank={} basis=[{}]", self.rank(), b.join(","))
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("lattice line `{s}`"));
        let rest = s.trim().strip_prefix("lattice").ok_or_else(bad)?.trim();
        let (rank_part, basis_part) = rest.split_once(' ').ok_or_else(bad)?;
        let rank: usize = rank_part
            .strip_prefix("rank=")
            .and_then(|r| r.parse().ok())
            .ok_or_else(bad)?;
        let list = basis_part
            .trim()
            .strip_prefix("basis=[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let mut basis = Vec::new();
        for chunk in list.split(']').map(str::trim).filter(|c| !c.is_empty()) {
            let chunk = chunk.trim_start_matches(',').trim();
            basis.push(format!("{chunk}]").parse::<LatticeVector>()?);
        }
        if basis.len() != rank {
            return Err(bad());
        }
        Lattice::new(basis)
    }
}

/// Looks up one of `L, N, D, E, F` by name.
pub fn build_named(name: &str) -> Result<Lattice> {
    Ok(Lattice::named(name.parse()?))
}

/// Exact solver for `x = sum cj bj` over the rationals.
struct Solver {
    basis: Vec<LatticeVector>,
    pivots: Vec<usize>,
    inverse: Vec<Vec<Coord>>,
}

impl Solver {
    fn new(basis: &[LatticeVector]) -> Self {
        let r = basis.len();
        // choose r columns on which the generators are independent
        let mut pivots = Vec::new();
        for cols in column_choices(r) {
            let sub: Vec<Vec<Coord>> =
                basis.iter().map(|b| cols.iter().map(|&c| b.0[c]).collect()).collect();
            if let Some(inv) = invert(&sub) {
                pivots = cols;
                return Solver { basis: basis.to_vec(), pivots, inverse: inv };
            }
        }
        Solver { basis: basis.to_vec(), pivots: std::mem::take(&mut pivots), inverse: Vec::new() }
    }

    fn solve(&self, x: &LatticeVector) -> Option<Vec<Coord>> {
        let r = self.basis.len();
        if r == 0 {
            return if x.is_zero() { Some(Vec::new()) } else { None };
        }
        if self.inverse.is_empty() {
            return None;
        }
        // c * Sub = x[pivots]  =>  c = x[pivots] * Sub^{-1}
        let c: Vec<Coord> = (0..r)
            .map(|j| (0..r).map(|k| x.0[self.pivots[k]] * self.inverse[k][j]).sum())
            .collect();
        let mut back = LatticeVector::zero();
        for (cj, b) in c.iter().zip(&self.basis) {
            back = back + b.scale(*cj);
        }
        (back == *x).then_some(c)
    }

    fn contains(&self, x: &LatticeVector) -> bool {
        self.solve(x).map(|c| c.iter().all(|v| v.is_integer())).unwrap_or(false)
    }
}

fn column_choices(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << AMBIENT_RANK) {
        if mask.count_ones() as usize == r {
            out.push((0..AMBIENT_RANK).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

fn invert(m: &[Vec<Coord>]) -> Option<Vec<Vec<Coord>>> {
    let n = m.len();
    let mut a: Vec<Vec<Coord>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Coord::one() } else { Coord::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn rank_of(vs: &[LatticeVector]) -> usize {
    let mut rows: Vec<Vec<Coord>> = vs.iter().map(|v| v.0.to_vec()).collect();
    let mut rank = 0;
    for col in 0..AMBIENT_RANK {
        if let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && !rows[r][col].is_zero() {
                    let f = rows[r][col] / rows[rank][col];
                    let pr = rows[rank].clone();
                    for (x, p) in rows[r].iter_mut().zip(pr) {
                        *x -= f * p;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

fn determinant(m: &[Vec<Coord>]) -> Coord {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Coord::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Coord::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            let pr = a[col].clone();
            for (x, p) in a[r].iter_mut().zip(pr) {
                *x -= f * p;
            }
        }
    }
    det
}

/// Membership test. For `N` the congruence `<a1+a2+a3, x> = 0 mod 4` is
/// evaluated alongside the basis solve and the two must agree.
pub fn membership(x: &LatticeVector, m: &Lattice) -> Result<bool> {
    let by_solve = m.contains(x);
    if m.name() == Some(NamedLattice::N) {
        let by_congruence = n_congruence(x);
        if by_congruence != by_solve {
            return Err(Error::InconsistentMembership(x.to_string()));
        }
    }
    Ok(by_solve)
}

/// `x` integral and `<a1 + a2 + a3, x> = 0 (mod 4)`.
pub fn n_congruence(x: &LatticeVector) -> bool {
    if !x.is_integral() {
        return false;
    }
    let s = gram(&LatticeVector::from_ints([1, 1, 1]), x);
    s.to_integer().rem_euclid(4) == 0
}

/// `[M : S]` for a full-rank sublattice `S` of `M`.
pub fn index(m: &Lattice, s: &Lattice) -> Result<u64> {
    let coords = sublattice_coordinates(m, s)?;
    Ok(determinant(&coords).abs().to_integer() as u64)
}

fn sublattice_coordinates(m: &Lattice, s: &Lattice) -> Result<Vec<Vec<Coord>>> {
    if s.rank() != m.rank() {
        return Err(Error::InfiniteIndex { sub: s.rank(), full: m.rank() });
    }
    s.basis()
        .iter()
        .map(|b| match m.coefficients(b) {
            Some(c) if c.iter().all(|x| x.is_integer()) => Ok(c),
            _ => Err(Error::NotSublattice(b.to_string())),
        })
        .collect()
}

/// A translate `lattice + shift`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Coset {
    pub lattice: Lattice,
    pub shift: LatticeVector,
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.lattice.contains(&(self.shift - other.shift))
    }
}

impl Coset {
    pub fn new(lattice: Lattice, shift: LatticeVector) -> Self {
        Coset { lattice, shift }
    }

    pub fn trivial(lattice: Lattice) -> Self {
        Coset { lattice, shift: LatticeVector::zero() }
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.lattice.contains(&(*x - self.shift))
    }

    pub fn negate(&self) -> Self {
        Coset { lattice: self.lattice.clone(), shift: -self.shift }
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// All coset points `x` with `<x, x>/2 <= max_weight`, sorted by
    /// weight and then coordinates.
    ///
    /// The search covers the ambient cube `|xi| <= ceil(sqrt(max_weight)) + 1`,
    /// which contains every such point because `<x, x>/2 = sum xi^2`.
    pub fn points_up_to(&self, max_weight: Coord) -> Vec<LatticeVector> {
        if max_weight < Coord::zero() {
            return Vec::new();
        }
        let den = self
            .lattice
            .basis()
            .iter()
            .fold(self.shift.denominator(), |acc, b| acc.lcm(&b.denominator()));
        let bound = ceil_sqrt(max_weight) + 1;
        let reach = den * bound;
        let solver = Solver::new(self.lattice.basis());
        let limit = max_weight * Coord::from_integer(den * den);
        let mut out = Vec::new();
        for y0 in -reach..=reach {
            for y1 in -reach..=reach {
                let partial = Coord::from_integer(y0 * y0 + y1 * y1);
                if partial > limit {
                    continue;
                }
                for y2 in -reach..=reach {
                    if partial + Coord::from_integer(y2 * y2) > limit {
                        continue;
                    }
                    let x = LatticeVector([
                        Coord::new(y0, den),
                        Coord::new(y1, den),
                        Coord::new(y2, den),
                    ]);
                    if solver.contains(&(x - self.shift)) {
                        out.push(x);
                    }
                }
            }
        }
        out.sort_by(|a, b| a.weight().cmp(&b.weight()).then(a.cmp(b)));
        out
    }

    /// Number of coset points at each weight up to `max_weight`.
    pub fn theta_counts(&self, max_weight: Coord) -> BTreeMap<Coord, u64> {
        let mut counts = BTreeMap::new();
        for p in self.points_up_to(max_weight) {
            *counts.entry(p.weight()).or_insert(0) += 1;
        }
        counts
    }

    pub fn to_text(&self) -> String {
        format!("{}\ncoset shift={}", self.lattice.to_text(), self.shift)
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let lat = Lattice::from_text(lines.next().ok_or_else(|| Error::Parse("empty coset".into()))?)?;
        let line = lines.next().ok_or_else(|| Error::Parse("missing coset line".into()))?;
        let shift = line
            .strip_prefix("coset shift=")
            .ok_or_else(|| Error::Parse(format!("coset line `{line}`")))?
            .parse()?;
        Ok(Coset::new(lat, shift))
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coset shift={}", self.shift)
    }
}

fn ceil_sqrt(x: Coord) -> i64 {
    let mut r = 0i64;
    while Coord::from_integer(r * r) < x {
        r += 1;
    }
    r
}

/// Coset representatives of `S` in `M`, one per coset, each the
/// lexicographically smallest vector with nonnegative coordinates in the
/// generators of `M`.
pub fn coset_decompose(m: &Lattice, s: &Lattice) -> Result<Vec<Coset>> {
    let idx = index(m, s)? as i64;
    let r = m.rank();
    let mut reps: Vec<Coset> = Vec::new();
    // every coset meets the box [0, idx)^r since idx * M lies in S
    let total = (idx as u64).pow(r as u32);
    for n in 0..total {
        let mut digits = vec![0i64; r];
        let mut k = n;
        for d in digits.iter_mut().rev() {
            *d = (k % idx as u64) as i64;
            k /= idx as u64;
        }
        let mut x = LatticeVector::zero();
        for (d, b) in digits.iter().zip(m.basis()) {
            x = x + b.scale(Coord::from_integer(*d));
        }
        let c = Coset::new(s.clone(), x);
        if !reps.contains(&c) {
            reps.push(c);
            if reps.len() as i64 == idx {
                break;
            }
        }
    }
    Ok(reps)
}

/// Splits `D + a2` (or `D - a2`) as `(E + sqrt(2)(b1 - b2)/3) + (F + gamma/3)`.
pub fn orthogonal_split(c: &Coset) -> Result<(Coset, Coset)> {
    let d = Lattice::named(NamedLattice::D);
    let e = Lattice::named(NamedLattice::E);
    let f = Lattice::named(NamedLattice::F);
    if c.lattice != d {
        return Err(Error::NotSplittableCoset);
    }
    let plus = Coset::new(d.clone(), vectors::alpha2());
    let sign = if *c == plus {
        Coord::one()
    } else if *c == plus.negate() {
        -Coord::one()
    } else {
        return Err(Error::NotSplittableCoset);
    };
    let e_part = Coset::new(e, vectors::e_shift().scale(sign));
    let f_part = Coset::new(f, vectors::f_shift().scale(sign));
    debug_assert!(gram(&e_part.shift, &f_part.shift).is_zero());
    debug_assert!(c.contains(&(e_part.shift + f_part.shift)));
    Ok((e_part, f_part))
}

/// Theta series `sum q^{<x,x>/2}` of a coset, exact to `order`.
pub fn theta_series<S: Scalar>(c: &Coset, order: Coord, denom: i64) -> Result<QSeries<S>> {
    let mut series = QSeries::zero(denom, order);
    for (w, n) in c.theta_counts(order) {
        series.add_at(w, S::from_i64(n as i64))?;
    }
    Ok(series)
}

fn cartan_a(n: usize) -> Vec<Vec<Coord>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => Coord::from_integer(2),
                    1 => Coord::from_integer(-1),
                    _ => Coord::zero(),
                })
                .collect()
        })
        .collect()
}

fn doubled(m: Vec<Vec<Coord>>) -> Vec<Vec<Coord>> {
    m.into_iter().map(|r| r.into_iter().map(|x| x * 2).collect()).collect()
}

/// Structural facts about `L`, `N`, `D = E + F`.
pub fn lattice_facts() -> Result<Report> {
    use vectors::*;
    let l = Lattice::named(NamedLattice::L);
    let n = Lattice::named(NamedLattice::N);
    let d = Lattice::named(NamedLattice::D);
    let e = Lattice::named(NamedLattice::E);
    let f = Lattice::named(NamedLattice::F);
    let mut r = Report::new("lattice facts");
    let ln = index(&l, &n)?;
    r.push(Check::new("[L:N] = 2", ln == 2, Some(format!("index {ln}"))));
    let ld = index(&l, &d)?;
    r.push(Check::new("[L:D] = 3", ld == 3, Some(format!("index {ld}"))));
    r.push(Check::new("Gram(N) = 2 Cartan(A3)", n.gram_matrix() == doubled(cartan_a(3)), None));
    r.push(Check::new("Gram(E) = 2 Cartan(A2)", e.gram_matrix() == doubled(cartan_a(2)), None));
    r.push(Check::new(
        "E is orthogonal to F",
        e.basis().iter().all(|x| f.basis().iter().all(|y| gram(x, y).is_zero())),
        None,
    ));
    let sum = e_shift() + f_shift();
    r.push(Check::new(
        "a2 = sqrt2(b1-b2)/3 + gamma/3",
        sum == alpha2(),
        Some(format!("{} + {} = {sum}", e_shift(), f_shift())),
    ));
    let cosets = coset_decompose(&l, &d)?;
    let expected = [Coset::trivial(d.clone()), Coset::new(d.clone(), alpha2()), Coset::new(d.clone(), -alpha2())];
    r.push(Check::new(
        "L = D + (D + a2) + (D - a2)",
        cosets.len() == 3 && expected.iter().all(|c| cosets.contains(c)),
        Some(cosets.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")),
    ));
    r.push(Check::new("N is even", n.is_even(), None));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use vectors::*;

    fn q(p: i64, d: i64) -> Coord {
        Coord::new(p, d)
    }

    #[test]
    fn gram_values() {
        assert_eq!(gram(&alpha1(), &alpha1()), q(2, 1));
        // sqrt(2) b1 has norm 4, so b1 has norm 2
        assert_eq!(gram(&root1(), &root1()) / 2, q(2, 1));
        assert_eq!(gram(&gamma(), &gamma()), q(6, 1));
        assert_eq!(gram(&alpha1(), &alpha2()), q(0, 1));
    }

    #[test]
    fn named_gram_matrices() {
        let n = Lattice::named(NamedLattice::N).gram_matrix();
        let expect = [[4, -2, 0], [-2, 4, -2], [0, -2, 4]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(n[i][j], q(expect[i][j], 1));
            }
        }
        let e = Lattice::named(NamedLattice::E).gram_matrix();
        assert_eq!(e, vec![vec![q(4, 1), q(-2, 1)], vec![q(-2, 1), q(4, 1)]]);
        assert_eq!(Lattice::named(NamedLattice::F).gram_matrix(), vec![vec![q(6, 1)]]);
        for name in ["L", "N", "D", "E", "F"] {
            assert!(build_named(name).unwrap().is_even());
        }
        assert!(matches!(build_named("Q"), Err(Error::UnknownLattice(_))));
    }

    #[test]
    fn membership_in_n() {
        let n = Lattice::named(NamedLattice::N);
        assert!(!membership(&alpha1(), &n).unwrap());
        assert!(membership(&root1(), &n).unwrap());
        assert!(membership(&alpha1().scale(q(2, 1)), &n).unwrap());
    }

    #[test]
    fn coset_decompositions() {
        let l = Lattice::named(NamedLattice::L);
        let n = Lattice::named(NamedLattice::N);
        let d = Lattice::named(NamedLattice::D);
        assert_eq!(index(&l, &n).unwrap(), 2);
        assert_eq!(index(&l, &d).unwrap(), 3);

        let cn = coset_decompose(&l, &n).unwrap();
        assert_eq!(cn.len(), 2);
        assert_eq!(cn[0].shift, LatticeVector::zero());
        assert_eq!(cn[1], Coset::new(n.clone(), alpha1()));

        let cd = coset_decompose(&l, &d).unwrap();
        assert_eq!(cd.len(), 3);
        for expected in [LatticeVector::zero(), alpha2(), -alpha2()] {
            let target = Coset::new(d.clone(), expected);
            assert_eq!(cd.iter().filter(|c| **c == target).count(), 1);
        }

        let cl = coset_decompose(&l, &l).unwrap();
        assert_eq!(cl.len(), 1);
        assert!(cl[0].shift.is_zero());

        assert!(matches!(
            coset_decompose(&n, &l),
            Err(Error::NotSublattice(_))
        ));
        assert!(matches!(
            coset_decompose(&l, &Lattice::named(NamedLattice::E)),
            Err(Error::InfiniteIndex { .. })
        ));
    }

    #[test]
    fn split_of_d_plus_a2() {
        let d = Lattice::named(NamedLattice::D);
        let (e, f) = orthogonal_split(&Coset::new(d.clone(), alpha2())).unwrap();
        assert_eq!(e.shift + f.shift, alpha2());
        assert_eq!(e.shift, LatticeVector([q(1, 3), q(2, 3), q(-1, 3)]));
        assert_eq!(gram(&e.shift, &f.shift), q(0, 1));
        // lattice members of E, F are orthogonal too
        assert!(gram(&root1(), &gamma()).is_zero() && gram(&root2(), &gamma()).is_zero());

        let (e2, _) = orthogonal_split(&Coset::new(d.clone(), -alpha2())).unwrap();
        assert_eq!(e2.shift, -e.shift);
        assert!(orthogonal_split(&Coset::trivial(d)).is_err());
        assert!(orthogonal_split(&Coset::trivial(Lattice::named(NamedLattice::L))).is_err());
    }

    #[test]
    fn theta_values() {
        let l = Coset::trivial(Lattice::named(NamedLattice::L));
        let counts = l.theta_counts(q(2, 1));
        assert_eq!(counts.values().copied().collect::<Vec<_>>(), vec![1, 6, 12]);
        let n = Coset::trivial(Lattice::named(NamedLattice::N));
        let counts = n.theta_counts(q(2, 1));
        assert_eq!(counts.get(&q(1, 1)), None);
        assert_eq!(counts[&q(2, 1)], 12);
        let f = Coset::trivial(Lattice::named(NamedLattice::F));
        let counts = f.theta_counts(q(3, 1));
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), vec![(q(0, 1), 1), (q(3, 1), 2)]);
    }

    #[test]
    fn text_forms() {
        let n = Lattice::named(NamedLattice::N);
        assert_eq!(n.to_text(), "lattice rank=3 basis=[[1,1,0],[0,-1,1],[-1,1,0]]");
        assert_eq!(Lattice::from_text(&n.to_text()).unwrap(), n);
        let c = Coset::new(Lattice::named(NamedLattice::F), f_shift());
        assert_eq!(c.to_string(), "coset shift=[-1/3,1/3,1/3]");
        assert_eq!(Coset::from_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn facts_hold() {
        let r = lattice_facts().unwrap();
        assert!(r.pass(), "{r}");
    }
}
