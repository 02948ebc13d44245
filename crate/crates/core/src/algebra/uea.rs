use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::coeff::Field;

use super::LieElt;

/// A PBW monomial `l_{w_1} ... l_{w_n} c^cpow`.
/// Words compare by power of `c` first, then lexicographically by factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwWord {
    cpow: u32,
    factors: Vec<i64>,
}

impl PbwWord {
    /// Builds a word; panics unless `factors` is non-decreasing.
    pub fn new(factors: Vec<i64>, cpow: u32) -> Self {
        assert!(
            factors.windows(2).all(|w| w[0] <= w[1]),
            "PBW word factors must be non-decreasing: {factors:?}"
        );
        PbwWord { factors, cpow }
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn cpow(&self) -> u32 {
        self.cpow
    }

    /// Text label, e.g. `l(-2)^2*l(1)*c`; empty for the unit word.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let m = self.factors[i];
            let run = self.factors[i..].iter().take_while(|&&x| x == m).count();
            parts.push(if run == 1 {
                format!("l({m})")
            } else {
                format!("l({m})^{run}")
            });
            i += run;
        }
        match self.cpow {
            0 => {}
            1 => parts.push("c".into()),
            n => parts.push(format!("c^{n}")),
        }
        parts.join("*")
    }
}

/// Element of the universal enveloping algebra in PBW normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct UeaElt<F> {
    terms: BTreeMap<PbwWord, F>,
}

impl<F: Field> UeaElt<F> {
    pub fn zero() -> Self {
        UeaElt {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::word(&[], 0)
    }

    pub fn scalar(a: F) -> Self {
        let mut u = Self::zero();
        u.add_term(PbwWord::new(Vec::new(), 0), a);
        u
    }

    /// A canonical word with coefficient 1.
    pub fn word(factors: &[i64], cpow: u32) -> Self {
        let mut u = Self::zero();
        u.add_term(PbwWord::new(factors.to_vec(), cpow), F::one());
        u
    }

    pub fn generator(i: i64) -> Self {
        Self::word(&[i], 0)
    }

    /// Image of a Lie algebra element under `V -> U(V)`.
    pub fn from_lie(x: &LieElt<F>) -> Self {
        let mut u = Self::zero();
        for (&i, a) in x.modes() {
            u.add_term(PbwWord::new(vec![i], 0), a.clone());
        }
        u.add_term(PbwWord::new(Vec::new(), 1), x.central().clone());
        u
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwWord, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &PbwWord) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
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

    pub fn add_term(&mut self, w: PbwWord, a: F) {
        if a.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&w) {
            Some(old) => old + a,
            None => a,
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a.clone() * s);
        }
        out
    }

    /// Largest and smallest mode occurring, if any.
    pub fn mode_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().flat_map(|w| w.factors.iter().copied());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), m| (lo.min(m), hi.max(m))))
    }

    pub fn map_coeffs<G: Field, E>(&self, mut f: impl FnMut(&F) -> Result<G, E>) -> Result<UeaElt<G>, E> {
        let mut out = UeaElt::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), f(a)?);
        }
        Ok(out)
    }
}

impl<F: Field> Add for &UeaElt<F> {
    type Output = UeaElt<F>;
    fn add(self, rhs: &UeaElt<F>) -> UeaElt<F> {
        let mut out = self.clone();
        for (w, a) in &rhs.terms {
            out.add_term(w.clone(), a.clone());
        }
        out
    }
}

impl<F: Field> Add for UeaElt<F> {
    type Output = UeaElt<F>;
    fn add(mut self, rhs: UeaElt<F>) -> UeaElt<F> {
        for (w, a) in rhs.terms {
            self.add_term(w, a);
        }
        self
    }
}

impl<F: Field> Sub for &UeaElt<F> {
    type Output = UeaElt<F>;
    fn sub(self, rhs: &UeaElt<F>) -> UeaElt<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &UeaElt<F> {
    type Output = UeaElt<F>;
    fn neg(self) -> UeaElt<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> fmt::Display for UeaElt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_combination(f, self.terms.iter().map(|(w, a)| (w.label(), a)))
    }
}
