use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CoeffError, ParamAssignment, Rational};

/// An ordered list of variable names. Variable 0 has the highest priority in
/// the lexicographic term order, so two rings with the same names in a
/// different order realise two different lex orders.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.names.join(" > "))
    }
}

/// Exponent vector. The derived ordering is lex with variable 0 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    /// The variable with the given name.
    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self, CoeffError> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| CoeffError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_index(ring, i))
    }

    pub fn var_index(ring: &Arc<PolyRing>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), Rational::one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial; `None` when a variable occurs.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under the ring's lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn same_ring(&self, other: &Poly) -> Result<(), CoeffError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(CoeffError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, CoeffError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, CoeffError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, CoeffError> {
        self.same_ring(other)?;
        let mut out = Poly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn has_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Views the polynomial as univariate in variable `v`; the coefficients
    /// live in the same ring with `v` absent.
    pub fn coeffs_in(&self, v: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut rest = m.clone();
            rest.0[v] = 0;
            out.entry(e)
                .or_insert_with(|| Poly::zero(&self.ring))
                .add_term(rest, c.clone());
        }
        out
    }

    fn lead_coeff_in(&self, v: usize) -> Poly {
        let d = self.degree_in(v);
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.0[v] == d {
                let mut rest = m.clone();
                rest.0[v] = 0;
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Multivariate division by an ordered list of divisors:
    /// `self = sum(q_i * d_i) + r` with no term of `r` divisible by any
    /// leading monomial of the divisors.
    pub fn divmod(&self, divisors: &[Poly]) -> Result<(Vec<Poly>, Poly), CoeffError> {
        for d in divisors {
            self.same_ring(d)?;
            if d.is_zero() {
                return Err(CoeffError::DivisionByZero);
            }
        }
        let mut quotients = vec![Poly::zero(&self.ring); divisors.len()];
        let mut remainder = Poly::zero(&self.ring);
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.pop_last() {
            let hit = divisors.iter().enumerate().find(|(_, d)| {
                d.leading_monomial().is_some_and(|lm| lm.divides(&m))
            });
            match hit {
                Some((i, d)) => {
                    let (lm, lc) = d.leading().unwrap();
                    let factor = &c / lc;
                    let shift = m.div(lm);
                    quotients[i].add_term(shift.clone(), factor.clone());
                    // the leading term cancels by construction; skip it
                    for (dm, dc) in d.terms.iter().rev().skip(1) {
                        p.add_term(dm.mul(&shift), -(dc * &factor));
                    }
                }
                None => remainder.add_term(m, c),
            }
        }
        Ok((quotients, remainder))
    }

    /// Remainder of `divmod` against `divisors`, without building quotients.
    pub fn reduce(&self, divisors: &[Poly]) -> Result<Poly, CoeffError> {
        for d in divisors {
            self.same_ring(d)?;
            if d.is_zero() {
                return Err(CoeffError::DivisionByZero);
            }
        }
        let mut remainder = Poly::zero(&self.ring);
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.pop_last() {
            match divisors.iter().find(|d| d.leading_monomial().is_some_and(|lm| lm.divides(&m))) {
                Some(d) => {
                    let (lm, lc) = d.leading().unwrap();
                    let factor = &c / lc;
                    let shift = m.div(lm);
                    for (dm, dc) in d.terms.iter().rev().skip(1) {
                        p.add_term(dm.mul(&shift), -(dc * &factor));
                    }
                }
                None => remainder.add_term(m, c),
            }
        }
        Ok(remainder)
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (mut q, r) = self.divmod(std::slice::from_ref(d)).ok()?;
        r.is_zero().then(|| q.pop().unwrap())
    }

    /// Greatest common divisor, normalised to leading coefficient 1
    /// (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly, CoeffError> {
        self.same_ring(other)?;
        Ok(gcd_rec(self, other))
    }

    /// Evaluates at a total assignment of the variables that occur.
    pub fn evaluate(&self, at: &ParamAssignment) -> Result<Rational, CoeffError> {
        let mut values = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.names.iter().enumerate() {
            let used = self.has_var(i);
            match at.get(name) {
                Some(v) => values.push(Some(v.clone())),
                None if used => return Err(CoeffError::Unassigned(name.clone())),
                None => values.push(None),
            }
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, v) in m.0.iter().zip(&values) {
                if *e > 0 {
                    t *= num_traits::pow(v.clone().unwrap(), *e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replaces every assigned variable by its value and keeps the others.
    pub fn substitute(&self, at: &ParamAssignment) -> Poly {
        let values: Vec<Option<Rational>> = self
            .ring
            .names
            .iter()
            .map(|n| at.get(n).cloned())
            .collect();
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut rest = m.clone();
            for (i, v) in values.iter().enumerate() {
                if let (Some(v), e) = (v, m.0[i]) {
                    if e > 0 {
                        t *= num_traits::pow(v.clone(), e as usize);
                        rest.0[i] = 0;
                    }
                }
            }
            out.add_term(rest, t);
        }
        out
    }

    /// Substitutes polynomials for variables (by index), producing a
    /// polynomial over `target`.
    pub fn compose(&self, target: &Arc<PolyRing>, images: &[Poly]) -> Result<Poly, CoeffError> {
        assert_eq!(images.len(), self.ring.nvars());
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    t = t.checked_mul(&images[i].pow(*e))?;
                }
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Moves the polynomial into another ring, matching variables by name.
    pub fn to_ring(&self, target: &Arc<PolyRing>) -> Result<Poly, CoeffError> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.names.iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if self.has_var(i) => {
                    return Err(CoeffError::UnknownVariable(name.clone()))
                }
                None => map.push(None),
            }
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    e[*j] = m.0[i];
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }
}

/// `p` scaled to coprime integer coefficients with a positive leading one.
fn primitive(p: &Poly) -> Poly {
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for c in p.terms.values() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return p.clone();
    }
    if p.leading_coeff().is_some_and(|c| c.is_negative()) {
        num = -num;
    }
    p.scale(&Rational::new(den, num))
}

fn content_in(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(&p.ring);
    for c in p.coeffs_in(v).into_values() {
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return Poly::one(&p.ring);
        }
    }
    g
}

/// Pseudo-remainder of `a` by `b` as polynomials in variable `v`.
fn prem_in(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = b.lead_coeff_in(v);
    let nv = a.ring.nvars();
    let mut r = a.clone();
    while !r.is_zero() && r.has_var(v) && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.lead_coeff_in(v);
        let shift = Poly::monomial(&a.ring, Monomial::var(nv, v, dr - db), Rational::one());
        r = &(&r * &lb) - &(&(&lr * &shift) * b);
    }
    r
}

/// Splits `p` into its largest monomial factor and the cofactor.
fn split_monomial(p: &Poly) -> (Monomial, Poly) {
    let nv = p.ring.nvars();
    let mut m = p.terms.keys().next().cloned().unwrap_or_else(|| Monomial::one(nv));
    for k in p.terms.keys() {
        for (e, f) in m.0.iter_mut().zip(&k.0) {
            *e = (*e).min(*f);
        }
    }
    if m.is_one() {
        return (m, p.clone());
    }
    let mut rest = Poly::zero(&p.ring);
    for (k, c) in &p.terms {
        rest.terms.insert(k.div(&m), c.clone());
    }
    (m, rest)
}

/// Specialisation points for the degree bounds; small and varied so that
/// leading coefficients rarely vanish.
const SPECIAL: [i64; 11] = [3, -2, 5, 7, -4, 11, 2, -5, 13, -3, 17];

/// `p` with every variable but `v` fixed, as dense coefficients in `v`.
fn specialise(p: &Poly, v: usize, shift: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.degree_in(v) as usize + 1];
    for (m, c) in &p.terms {
        let mut x = c.clone();
        for (i, &e) in m.0.iter().enumerate() {
            if i != v && e > 0 {
                let base = Rational::from_integer(BigInt::from(SPECIAL[(i * 5 + shift) % SPECIAL.len()]));
                x *= base.pow(e as i32);
            }
        }
        out[m.0[v] as usize] += x;
    }
    out
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree of the gcd of two dense univariate polynomials over the rationals.
fn univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let f = a.last().unwrap().clone() / &lb;
            let off = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[off + i] -= c * &f;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// An upper bound for the degree in `v` of `gcd(a, b)`, exact whenever the
/// true gcd has degree zero there: specialising the other variables at a
/// point where both leading coefficients survive cannot lower the degree.
fn degree_bound(a: &Poly, b: &Poly, v: usize) -> u32 {
    let cap = a.degree_in(v).min(b.degree_in(v));
    for shift in 0..4 {
        let (sa, sb) = (specialise(a, v, shift), specialise(b, v, shift));
        if sa.last().is_some_and(|c| !c.is_zero()) && sb.last().is_some_and(|c| !c.is_zero()) {
            return (univariate_gcd_degree(sa, sb) as u32).min(cap);
        }
    }
    cap
}

/// Gcd of the coefficients of `a` and `b` in `v`: the gcd itself when it
/// does not involve `v`.
fn joint_content(a: &Poly, b: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(&a.ring);
    for c in a.coeffs_in(v).into_values().chain(b.coeffs_in(v).into_values()) {
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return Poly::one(&a.ring);
        }
    }
    g
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(&a.ring);
    }
    if a == b {
        return a.monic();
    }
    let (ma, a1) = split_monomial(a);
    let (mb, b1) = split_monomial(b);
    let m = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| *x.min(y)).collect());
    let g = gcd_core(&a1, &b1);
    g.mul_term(&m, &Rational::one()).monic()
}

/// Gcd of two polynomials without monomial factors.
fn gcd_core(a: &Poly, b: &Poly) -> Poly {
    let one = Poly::one(&a.ring);
    if a.is_constant() || b.is_constant() || a.nterms() == 1 || b.nterms() == 1 {
        return one;
    }
    if a == b {
        return a.monic();
    }
    if a.nterms() >= b.nterms() && a.exact_div(b).is_some() {
        return b.monic();
    }
    if b.nterms() >= a.nterms() && b.exact_div(a).is_some() {
        return a.monic();
    }
    let nv = a.ring.nvars();
    if let Some(v) = (0..nv).find(|&i| a.has_var(i) != b.has_var(i)) {
        return if a.has_var(v) {
            gcd_rec(&content_in(a, v), b)
        } else {
            gcd_rec(a, &content_in(b, v))
        };
    }
    let mut best: Option<(u32, usize)> = None;
    for v in (0..nv).filter(|&i| a.has_var(i)) {
        let d = degree_bound(a, b, v);
        if d == 0 {
            return joint_content(a, b, v);
        }
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, v));
        }
    }
    let v = best.expect("non-constant operands").1;
    prs_gcd(a, b, v)
}

/// Primitive remainder sequence in `v`.
fn prs_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = primitive(&a.exact_div(&ca).expect("content divides"));
    let pb = primitive(&b.exact_div(&cb).expect("content divides"));
    let g = gcd_rec(&ca, &cb);
    let (mut r0, mut r1) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = prem_in(&r0, &r1, v);
        if r.is_zero() {
            break;
        }
        if !r.has_var(v) {
            r1 = Poly::one(&a.ring);
            break;
        }
        let cr = content_in(&r, v);
        r0 = r1;
        r1 = primitive(&r.exact_div(&cr).expect("content divides"));
    }
    let cr = content_in(&r1, v);
    let prim = r1.exact_div(&cr).expect("content divides");
    (&prim * &g).monic()
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, names: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, e) in names.iter().zip(&m.0) {
        if *e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if *e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

/// Terms are printed from the lowest to the highest monomial.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, &self.ring.names, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn ring_xy() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y"])
    }

    fn x(r: &Arc<PolyRing>) -> Poly {
        Poly::var(r, "x").unwrap()
    }

    fn y(r: &Arc<PolyRing>) -> Poly {
        Poly::var(r, "y").unwrap()
    }

    #[test]
    fn divide_by_single_monomial() {
        let r = ring_xy();
        let p = &(&x(&r) * &x(&r)) * &y(&r);
        let (q, rem) = p.divmod(&[&x(&r) * &y(&r)]).unwrap();
        assert_eq!(q[0], x(&r));
        assert!(rem.is_zero());
    }

    #[test]
    fn remainder_keeps_non_divisible_terms() {
        let r = ring_xy();
        let p = &(&x(&r) * &x(&r)) + &y(&r);
        let (_, rem) = p.divmod(&[x(&r)]).unwrap();
        assert_eq!(rem, y(&r));
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let r = ring_xy();
        let one = Poly::one(&r);
        let a = &(&x(&r) * &x(&r)) - &one;
        let b = &x(&r) - &one;
        assert_eq!(a.gcd(&b).unwrap(), b);
        let c = &(&x(&r) + &y(&r)) * &(&x(&r) - &y(&r));
        let d = &(&x(&r) + &y(&r)) * &(&(&x(&r) * &y(&r)) + &one);
        assert_eq!(c.gcd(&d).unwrap(), &x(&r) + &y(&r));
        assert!(x(&r).gcd(&y(&r)).unwrap().is_one());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = ring_xy();
        let r2 = PolyRing::new(&["y", "x"]);
        assert!(matches!(
            x(&r1).checked_add(&x(&r2)),
            Err(CoeffError::RingMismatch { .. })
        ));
    }

    #[test]
    fn evaluate_requires_assignment() {
        let r = ring_xy();
        let p = &x(&r).scale(&rat(2, 1)) + &y(&r);
        let mut at = ParamAssignment::new();
        at.set("x", rat(3, 1));
        assert_eq!(p.evaluate(&at), Err(CoeffError::Unassigned("y".into())));
        at.set("y", rat(-1, 2));
        assert_eq!(p.evaluate(&at).unwrap(), rat(11, 2));
    }

    #[test]
    fn display_orders_terms_ascending() {
        let r = PolyRing::new(&["z", "m2", "m3"]);
        let z = Poly::var(&r, "z").unwrap();
        let m2 = Poly::var(&r, "m2").unwrap();
        let m3 = Poly::var(&r, "m3").unwrap();
        let p = &m3 - &(&z * &m2).scale(&rat(2, 1));
        assert_eq!(p.to_string(), "m3 - 2*z*m2");
        assert_eq!((-&z.pow(2)).to_string(), "-z^2");
    }
}
