//! Exact modes `u_n v` of lattice vertex operators.
//!
//! For a monomial `u = a_{i1}(-n1) ... a_{ik}(-nk) e^b` the field is the
//! normally ordered product
//!
//! ```text
//! Y(u, z) = : d^(n1-1) a_{i1}(z) ... d^(nk-1) a_{ik}(z) Y(e^b, z) :
//! Y(e^b, z) = E^-(b, z) E^+(b, z) e_b z^b
//! ```
//!
//! with `d^(m) = (1/m!) (d/dz)^m`. Creation halves (modes `< 0`) sit to the
//! left of `Y(e^b, z)` and annihilation halves (modes `>= 0`, including the
//! zero mode) to the right. A single coefficient `u_n v` involves finitely
//! many terms, so no truncation is needed.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{Boson, BosonList, FockElement, FockMonomial};
use crate::lattice::{gram, LatticeVector, AMBIENT_RANK};
use crate::scalar::{binomial, pow_scalar, scalar_from_i128, Coord, Scalar};

/// A term `coeff * z^power * mono` of a partially applied field.
struct ZTerm<S> {
    power: i64,
    coeff: S,
    mono: FockMonomial,
}

type Poly<S> = Vec<(BosonList, S)>;

/// `a_{dir+1}(n) v`.
pub fn heis_mode<S: Scalar>(dir: u8, n: i32, v: &FockElement<S>) -> FockElement<S> {
    let mut out = FockElement::zero();
    for (m, c) in v.iter() {
        if n < 0 {
            out.add_term(m.with_bosons(&[Boson::new(dir, n)]), c.clone());
        } else if n == 0 {
            let h = m.point().0[dir as usize] * 2;
            out.add_term(m.clone(), c.clone() * S::from_coord(&h));
        } else {
            let k = m.multiplicity(dir, -n);
            if k > 0 {
                let f = S::from_i64(2 * n as i64 * k as i64);
                out.add_term(m.without(dir, -n, 1), c.clone() * f);
            }
        }
    }
    out
}

fn pairing_power(beta: &LatticeVector, point: &LatticeVector) -> Result<i64> {
    let p = gram(beta, point);
    if !p.is_integer() {
        return Err(Error::NonIntegralPairing { beta: beta.to_string(), point: point.to_string() });
    }
    Ok(p.to_integer())
}

/// Multiplicity lists `[(part, count)]` of the partitions of `n`.
fn partitions(n: i64) -> Vec<Vec<(i64, u32)>> {
    fn rec(n: i64, max: i64, cur: &mut Vec<(i64, u32)>, out: &mut Vec<Vec<(i64, u32)>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            for count in (1..=n / part).rev() {
                cur.push((part, count as u32));
                rec(n - part * count, part - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: u32) -> i128 {
    (1..=n as i128).product()
}

/// Degree-by-degree expansion of `E^-(b, z) = exp(sum_{m>0} b(-m) z^m / m)`.
struct CreationExp<S> {
    beta: [S; AMBIENT_RANK],
    active: Vec<usize>,
    by_degree: Vec<Poly<S>>,
}

impl<S: Scalar> CreationExp<S> {
    fn new(beta: &LatticeVector) -> Self {
        let active = (0..AMBIENT_RANK).filter(|&i| !beta.0[i].is_zero()).collect();
        CreationExp {
            beta: std::array::from_fn(|i| S::from_coord(&beta.0[i])),
            active,
            by_degree: Vec::new(),
        }
    }

    /// Degree-`e` part of `exp(sum_m b_i a_i(-m) z^m / m)` for one direction.
    fn single_direction(&self, dir: usize, e: i64) -> Poly<S> {
        let mut out = Vec::new();
        for parts in partitions(e) {
            let mut bosons = BosonList::new();
            let mut total = 0u32;
            let mut denom: i128 = 1;
            for &(m, count) in &parts {
                for _ in 0..count {
                    bosons.push(Boson::new(dir as u8, -(m as i32)));
                }
                total += count;
                denom *= (m as i128).pow(count) * factorial(count);
            }
            let coeff = pow_scalar(&self.beta[dir], total) / scalar_from_i128::<S>(denom);
            bosons.sort_unstable();
            out.push((bosons, coeff));
        }
        out
    }

    fn degree(&mut self, e: i64) -> &Poly<S> {
        while self.by_degree.len() as i64 <= e {
            let d = self.by_degree.len() as i64;
            let poly = self.combine(d);
            self.by_degree.push(poly);
        }
        &self.by_degree[e as usize]
    }

    fn combine(&self, e: i64) -> Poly<S> {
        if e == 0 {
            return vec![(BosonList::new(), S::one())];
        }
        let mut acc: Poly<S> = vec![(BosonList::new(), S::one())];
        let mut acc_degree_split: Vec<(Poly<S>, i64)> = vec![(acc.clone(), 0)];
        // distribute e among the active directions
        for (idx, &dir) in self.active.iter().enumerate() {
            let last = idx + 1 == self.active.len();
            let mut next: Vec<(Poly<S>, i64)> = Vec::new();
            for (poly, used) in &acc_degree_split {
                let range: Vec<i64> = if last { vec![e - used] } else { (0..=e - used).collect() };
                for ei in range {
                    let part = if ei == 0 {
                        vec![(BosonList::new(), S::one())]
                    } else {
                        self.single_direction(dir, ei)
                    };
                    next.push((multiply_polys(poly, &part), used + ei));
                }
            }
            acc_degree_split = next;
        }
        acc.clear();
        for (poly, used) in acc_degree_split {
            if used == e {
                acc.extend(poly);
            }
        }
        acc
    }
}

fn multiply_polys<S: Scalar>(a: &Poly<S>, b: &Poly<S>) -> Poly<S> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (x, cx) in a {
        for (y, cy) in b {
            let mut bosons = x.clone();
            bosons.extend_from_slice(y);
            bosons.sort_unstable();
            out.push((bosons, cx.clone() * cy.clone()));
        }
    }
    out
}

/// `E^+(b, z) = exp(-sum_{m>0} b(m) z^{-m} / m)` applied to one monomial.
///
/// On `a_i(-m)^k` the factor `exp(-b_i a_i(m) z^{-m} / m)` removes `t`
/// copies with coefficient `C(k, t) (-2 b_i)^t` and power `-m t`.
fn apply_annihilation_exp<S: Scalar>(beta: &[S; AMBIENT_RANK], term: ZTerm<S>, out: &mut Vec<ZTerm<S>>) {
    let mut groups: Vec<(u8, i32, usize)> = Vec::new();
    for b in term.mono.bosons() {
        if beta[b.dir as usize].is_zero() {
            continue;
        }
        match groups.last_mut() {
            Some(g) if g.0 == b.dir && g.1 == b.mode => g.2 += 1,
            _ => groups.push((b.dir, b.mode, 1)),
        }
    }
    fn rec<S: Scalar>(
        beta: &[S; AMBIENT_RANK],
        groups: &[(u8, i32, usize)],
        term: ZTerm<S>,
        out: &mut Vec<ZTerm<S>>,
    ) {
        let Some((&(dir, mode, k), rest)) = groups.split_first() else {
            out.push(term);
            return;
        };
        let m = -(mode as i64);
        let step = -(beta[dir as usize].clone() + beta[dir as usize].clone());
        for t in 0..=k {
            let c = term.coeff.clone()
                * scalar_from_i128::<S>(binomial(k as i64, t as i64))
                * pow_scalar(&step, t as u32);
            let mono = if t == 0 { term.mono.clone() } else { term.mono.without(dir, mode, t) };
            rec(beta, rest, ZTerm { power: term.power - m * t as i64, coeff: c, mono }, out);
        }
    }
    rec(beta, &groups, term, out);
}

/// Annihilation half of `d^(nj-1) a_d(z)`:
/// `sum_{m>=0} C(-m-1, nj-1) a_d(m) z^{-m-nj}`.
fn apply_annihilation_field<S: Scalar>(dir: u8, nj: i64, term: &ZTerm<S>, out: &mut Vec<ZTerm<S>>) {
    let h = term.mono.point().0[dir as usize] * 2;
    if !h.is_zero() {
        let c = term.coeff.clone() * scalar_from_i128::<S>(binomial(-1, nj - 1)) * S::from_coord(&h);
        out.push(ZTerm { power: term.power - nj, coeff: c, mono: term.mono.clone() });
    }
    let mut last_mode = 0;
    for b in term.mono.bosons() {
        if b.dir != dir || b.mode == last_mode {
            continue;
        }
        last_mode = b.mode;
        let m = -(b.mode as i64);
        let k = term.mono.multiplicity(dir, b.mode) as i64;
        let c = term.coeff.clone()
            * scalar_from_i128::<S>(binomial(-m - 1, nj - 1) * 2 * m as i128 * k as i128);
        out.push(ZTerm { power: term.power - m - nj, coeff: c, mono: term.mono.without(dir, b.mode, 1) });
    }
}

/// The field of one monomial `u`, with caches for its creation half.
struct MonomialField<'a, S> {
    bosons: &'a [Boson],
    beta: LatticeVector,
    beta_s: [S; AMBIENT_RANK],
    creation: CreationExp<S>,
    left: HashMap<(u32, i64), Poly<S>>,
}

impl<'a, S: Scalar> MonomialField<'a, S> {
    fn new(u: &'a FockMonomial) -> Self {
        let beta = *u.point();
        MonomialField {
            bosons: u.bosons(),
            beta,
            beta_s: std::array::from_fn(|i| S::from_coord(&beta.0[i])),
            creation: CreationExp::new(&beta),
            left: HashMap::new(),
        }
    }

    /// Coefficient of `z^need` in `prod_{j in mask} (creation half of
    /// d^(nj-1) a(z)) * E^-(b, z)`.
    fn left_poly(&mut self, mask: u32, need: i64) -> &Poly<S> {
        if !self.left.contains_key(&(mask, need)) {
            let chosen: Vec<Boson> = self
                .bosons
                .iter()
                .enumerate()
                .filter(|(j, _)| mask & (1 << j) != 0)
                .map(|(_, b)| *b)
                .collect();
            let mut out: Poly<S> = Vec::new();
            let mut stack: Vec<(usize, i64, BosonList, S)> = vec![(0, need, BosonList::new(), S::one())];
            while let Some((j, left, bosons, c)) = stack.pop() {
                if j == chosen.len() {
                    for (extra, ec) in self.creation.degree(left) {
                        let mut all = bosons.clone();
                        all.extend_from_slice(extra);
                        all.sort_unstable();
                        out.push((all, c.clone() * ec.clone()));
                    }
                    continue;
                }
                let nj = -(chosen[j].mode as i64);
                for q in 0..=left {
                    let coef = binomial(q + nj - 1, nj - 1);
                    let mut next = bosons.clone();
                    next.push(Boson::new(chosen[j].dir, -((q + nj) as i32)));
                    stack.push((j + 1, left - q, next, c.clone() * scalar_from_i128::<S>(coef)));
                }
            }
            self.left.insert((mask, need), out);
        }
        &self.left[&(mask, need)]
    }

    fn apply(&mut self, n: i32, v: &FockMonomial, scale: &S, out: &mut FockElement<S>) -> Result<()> {
        let target = -(n as i64) - 1;
        let k = self.bosons.len();
        let bosons = self.bosons;
        for mask in 0u32..(1 << k) {
            let mut states = vec![ZTerm { power: 0, coeff: scale.clone(), mono: v.clone() }];
            for (j, b) in bosons.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let mut next = Vec::new();
                for st in &states {
                    apply_annihilation_field(b.dir, -(b.mode as i64), st, &mut next);
                }
                states = next;
                if states.is_empty() {
                    break;
                }
            }
            let mut finals = Vec::new();
            for st in states {
                let power = st.power + pairing_power(&self.beta, st.mono.point())?;
                let mono = st.mono.with_point(*st.mono.point() + self.beta);
                let shifted = ZTerm { power, coeff: st.coeff, mono };
                if self.beta.is_zero() {
                    finals.push(shifted);
                } else {
                    apply_annihilation_exp(&self.beta_s, shifted, &mut finals);
                }
            }
            for st in finals {
                let need = target - st.power;
                if need < 0 {
                    continue;
                }
                for (extra, c) in self.left_poly(mask, need) {
                    out.add_term(st.mono.with_bosons(extra), st.coeff.clone() * c.clone());
                }
            }
        }
        Ok(())
    }
}

/// `u_n v` for arbitrary elements `u` of `V_L` and `v` of a module `V_{L+lambda}`.
pub fn vertex_mode<S: Scalar>(u: &FockElement<S>, n: i32, v: &FockElement<S>) -> Result<FockElement<S>> {
    let mut out = FockElement::zero();
    for (um, uc) in u.iter() {
        let mut field = MonomialField::new(um);
        for (vm, vc) in v.iter() {
            let mut part = FockElement::zero();
            field.apply(n, vm, &(uc.clone() * vc.clone()), &mut part)?;
            debug_assert!(
                part.monomials().all(|m| m.weight()
                    == um.weight() + vm.weight() - Coord::from_integer(n as i64 + 1)),
                "weight grading violated for ({um})_{n} ({vm})"
            );
            out.add_scaled(&part, &S::one());
        }
    }
    Ok(out)
}

/// `e^b_n v`, computed directly from `E^-(b,z) E^+(b,z) e_b z^b`.
pub fn exp_mode<S: Scalar>(beta: &LatticeVector, n: i32, v: &FockElement<S>) -> Result<FockElement<S>> {
    let target = -(n as i64) - 1;
    let beta_s: [S; AMBIENT_RANK] = std::array::from_fn(|i| S::from_coord(&beta.0[i]));
    let mut creation = CreationExp::<S>::new(beta);
    let mut out = FockElement::zero();
    for (m, c) in v.iter() {
        let power = pairing_power(beta, m.point())?;
        let shifted = ZTerm { power, coeff: c.clone(), mono: m.with_point(*m.point() + *beta) };
        let mut terms = Vec::new();
        apply_annihilation_exp(&beta_s, shifted, &mut terms);
        for t in terms {
            let need = target - t.power;
            if need < 0 {
                continue;
            }
            for (extra, ec) in creation.degree(need) {
                out.add_term(t.mono.with_bosons(extra), t.coeff.clone() * ec.clone());
            }
        }
    }
    Ok(out)
}

/// The operators `u_n` for a fixed `u`, memoized per basis monomial so
/// repeated products of modes stay cheap. Safe to share across threads.
pub struct ModeOperator<S> {
    u: FockElement<S>,
    memo: RwLock<HashMap<(i32, FockMonomial), FockElement<S>>>,
}

impl<S: Scalar> ModeOperator<S> {
    pub fn new(u: FockElement<S>) -> Self {
        ModeOperator { u, memo: RwLock::new(HashMap::new()) }
    }

    pub fn element(&self) -> &FockElement<S> {
        &self.u
    }

    /// `u_n m` for a single monomial.
    pub fn on_monomial(&self, n: i32, m: &FockMonomial) -> Result<FockElement<S>> {
        let key = (n, m.clone());
        if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(hit.clone());
        }
        let value = vertex_mode(&self.u, n, &FockElement::from_monomial(m.clone()))?;
        self.memo.write().expect("memo lock").insert(key, value.clone());
        Ok(value)
    }

    /// `u_n v`.
    pub fn apply(&self, n: i32, v: &FockElement<S>) -> Result<FockElement<S>> {
        let mut out = FockElement::zero();
        for (m, c) in v.iter() {
            out.add_scaled(&self.on_monomial(n, m)?, c);
        }
        Ok(out)
    }
}

/// `[u, v] = u_0 v` on weight-one elements.
pub fn lie_bracket<S: Scalar>(u: &FockElement<S>, v: &FockElement<S>) -> Result<FockElement<S>> {
    require_weight_one(u)?;
    require_weight_one(v)?;
    vertex_mode(u, 0, v)
}

/// `<u, v>` with `<u, v> 1 = u_1 v` on weight-one elements.
pub fn pairing<S: Scalar>(u: &FockElement<S>, v: &FockElement<S>) -> Result<S> {
    require_weight_one(u)?;
    require_weight_one(v)?;
    Ok(vertex_mode(u, 1, v)?.coeff(&FockMonomial::vacuum()))
}

fn require_weight_one<S: Scalar>(u: &FockElement<S>) -> Result<()> {
    let w = u.homogeneous_weight()?;
    if !u.is_zero() && w != Coord::from_integer(1) {
        return Err(Error::WrongWeight { expected: "1".into(), found: w.to_string() });
    }
    Ok(())
}
