use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::coeff::Field;

/// Finite combination of the generators `l_i` and the central element `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElt<F> {
    modes: BTreeMap<i64, F>,
    central: F,
}

impl<F: Field> LieElt<F> {
    pub fn zero() -> Self {
        LieElt {
            modes: BTreeMap::new(),
            central: F::zero(),
        }
    }

    /// The generator `l_i`.
    pub fn l(i: i64) -> Self {
        let mut x = Self::zero();
        x.add_mode(i, F::one());
        x
    }

    /// The central element.
    pub fn c() -> Self {
        let mut x = Self::zero();
        x.central = F::one();
        x
    }

    pub fn from_modes<I: IntoIterator<Item = (i64, F)>>(modes: I, central: F) -> Self {
        let mut x = Self::zero();
        for (i, a) in modes {
            x.add_mode(i, a);
        }
        x.central = central;
        x
    }

    pub fn modes(&self) -> impl Iterator<Item = (&i64, &F)> {
        self.modes.iter()
    }

    pub fn mode(&self, i: i64) -> F {
        self.modes.get(&i).cloned().unwrap_or_else(F::zero)
    }

    pub fn central(&self) -> &F {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty() && self.central.is_zero()
    }

    pub fn add_mode(&mut self, i: i64, a: F) {
        if a.is_zero() {
            return;
        }
        let sum = match self.modes.remove(&i) {
            Some(old) => old + a,
            None => a,
        };
        if !sum.is_zero() {
            self.modes.insert(i, sum);
        }
    }

    pub fn add_central(&mut self, a: F) {
        self.central = self.central.clone() + a;
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero();
        for (&i, a) in &self.modes {
            out.add_mode(i, a.clone() * s);
        }
        out.central = self.central.clone() * s;
        out
    }

    /// Applies `f` to every coefficient, e.g. to evaluate symbolic scalars.
    pub fn map_coeffs<G: Field, E>(&self, mut f: impl FnMut(&F) -> Result<G, E>) -> Result<LieElt<G>, E> {
        let mut out = LieElt::zero();
        for (&i, a) in &self.modes {
            out.add_mode(i, f(a)?);
        }
        out.central = f(&self.central)?;
        Ok(out)
    }
}

impl<F: Field> Add for &LieElt<F> {
    type Output = LieElt<F>;
    fn add(self, rhs: &LieElt<F>) -> LieElt<F> {
        let mut out = self.clone();
        for (&i, a) in &rhs.modes {
            out.add_mode(i, a.clone());
        }
        out.add_central(rhs.central.clone());
        out
    }
}

impl<F: Field> Sub for &LieElt<F> {
    type Output = LieElt<F>;
    fn sub(self, rhs: &LieElt<F>) -> LieElt<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &LieElt<F> {
    type Output = LieElt<F>;
    fn neg(self) -> LieElt<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> fmt::Display for LieElt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .modes
            .iter()
            .map(|(i, a)| (format!("l({i})"), a))
            .chain((!self.central.is_zero()).then(|| ("c".to_string(), &self.central)));
        super::write_combination(f, terms)
    }
}
