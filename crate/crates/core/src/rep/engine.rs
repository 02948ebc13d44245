use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::algebra::{UeaElt, Virasoro};
use crate::coeff::Field;

use super::{BasisKey, Bounds, CharacterParams, ModElt, RepError, Space};

/// Canonical words (modes `<= 1`, non-decreasing) standing for `word * v`.
type Combo<F> = BTreeMap<Vec<i64>, F>;

fn add_scaled<F: Field>(acc: &mut Combo<F>, part: &Combo<F>, s: &F) {
    if s.is_zero() {
        return;
    }
    for (w, c) in part {
        let t = c.clone() * s;
        match acc.remove(w) {
            Some(old) => {
                let sum = old + t;
                if !sum.is_zero() {
                    acc.insert(w.clone(), sum);
                }
            }
            None => {
                acc.insert(w.clone(), t);
            }
        }
    }
}

/// The action of `U(V)` on one of the induced modules.
///
/// Words are rewritten into the adapted order
/// `negative modes | l_0 | l_1 | a_k | c`, where `a_k = l_k - z^{k-1} l_1`;
/// a mode `l_n` with `n >= 2` is split as `a_n + z^{n-1} l_1`, and `a_n`
/// is commuted to the right until it reaches `v`, where it acts by `m_n`.
/// The central element acts by `theta`.
///
/// Partial results are memoised per instance. The cache makes the engine
/// `!Sync`; parallel callers build one engine per worker.
pub struct InducedModule<F: Field> {
    space: Space,
    params: CharacterParams<F>,
    algebra: Virasoro,
    z_powers: RefCell<Vec<F>>,
    cache: RefCell<HashMap<(bool, i64, Vec<i64>), Rc<Combo<F>>>>,
}

impl<F: Field> InducedModule<F> {
    pub fn new(space: Space, params: CharacterParams<F>) -> Self {
        Self::with_algebra(space, params, Virasoro::STANDARD)
    }

    pub fn with_algebra(space: Space, params: CharacterParams<F>, algebra: Virasoro) -> Self {
        InducedModule {
            space,
            params,
            algebra,
            z_powers: RefCell::new(Vec::new()),
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn params(&self) -> &CharacterParams<F> {
        &self.params
    }

    pub fn algebra(&self) -> Virasoro {
        self.algebra
    }

    /// The generator `v`.
    pub fn generator(&self) -> ModElt<F> {
        ModElt::generator(self.space)
    }

    pub fn basis(&self, key: BasisKey) -> ModElt<F> {
        ModElt::basis(self.space, key)
    }

    fn z_pow(&self, e: u32) -> F {
        let mut pw = self.z_powers.borrow_mut();
        if pw.is_empty() {
            pw.push(F::one());
        }
        while pw.len() <= e as usize {
            let next = pw.last().unwrap().clone() * &self.params.z;
            pw.push(next);
        }
        pw[e as usize].clone()
    }

    /// `a_k = l_k - z^{k-1} l_1`, `k >= 2`.
    pub fn hat(&self, k: i64) -> UeaElt<F> {
        assert!(k >= 2);
        &UeaElt::generator(k) - &UeaElt::generator(1).scale(&self.z_pow((k - 1) as u32))
    }

    /// `a_k - m_k`.
    pub fn hat_shifted(&self, k: i64) -> UeaElt<F> {
        &self.hat(k) - &UeaElt::scalar(self.params.value(k))
    }

    /// Exact action of `u` on `x`, without truncation.
    pub fn act(&self, u: &UeaElt<F>, x: &ModElt<F>) -> Result<ModElt<F>, RepError> {
        if x.space() != self.space {
            return Err(RepError::SpaceMismatch {
                expected: self.space,
                found: x.space(),
            });
        }
        self.check_admissible(u)?;
        let mut out: Combo<F> = BTreeMap::new();
        for (key, xc) in x.terms() {
            let start = key.word();
            for (pbw, uc) in u.terms() {
                let mut coeff = uc.clone() * xc;
                if pbw.cpow() > 0 {
                    coeff = coeff * &self.params.theta.pow(pbw.cpow());
                }
                let mut current: Combo<F> = BTreeMap::new();
                current.insert(start.clone(), F::one());
                for &n in pbw.factors().iter().rev() {
                    let mut next = BTreeMap::new();
                    for (w, c) in &current {
                        add_scaled(&mut next, &self.apply(n, w), c);
                    }
                    current = next;
                }
                add_scaled(&mut out, &current, &coeff);
            }
        }
        let mut result = ModElt::zero(self.space);
        for (w, c) in out {
            result.add_term(BasisKey::from_word(&w), c);
        }
        Ok(result)
    }

    /// Action followed by a bound check on the result.
    pub fn act_bounded(&self, u: &UeaElt<F>, x: &ModElt<F>, bounds: &Bounds) -> Result<ModElt<F>, RepError> {
        let y = self.act(u, x)?;
        y.check_bounds(bounds)?;
        Ok(y)
    }

    fn check_admissible(&self, u: &UeaElt<F>) -> Result<(), RepError> {
        for (w, _) in u.terms() {
            if let Some(&m) = w.factors().iter().find(|&&m| m < self.space.min_mode()) {
                return Err(RepError::InadmissibleMode {
                    mode: m,
                    space: self.space,
                });
            }
            if w.cpow() > 0 && self.space != Space::Ind {
                return Err(RepError::CentralNotInAlgebra(self.space));
            }
        }
        Ok(())
    }

    fn cached(&self, key: (bool, i64, Vec<i64>), compute: impl FnOnce() -> Combo<F>) -> Rc<Combo<F>> {
        if let Some(hit) = self.cache.borrow().get(&key) {
            return hit.clone();
        }
        let value = Rc::new(compute());
        self.cache.borrow_mut().insert(key, value.clone());
        value
    }

    /// `l_n * (word * v)` for a canonical word.
    fn apply(&self, n: i64, word: &[i64]) -> Rc<Combo<F>> {
        self.cached((false, n, word.to_vec()), || {
            if n <= 1 {
                self.apply_low(n, word)
            } else {
                let mut out = (*self.apply_hat(n, word)).clone();
                add_scaled(&mut out, &self.apply(1, word), &self.z_pow((n - 1) as u32));
                out
            }
        })
    }

    fn apply_low(&self, n: i64, word: &[i64]) -> Combo<F> {
        match word.first() {
            Some(&a) if n > a => {
                // l_n l_a rest = l_a (l_n rest) + [l_n, l_a] rest
                let rest = &word[1..];
                let mut out = BTreeMap::new();
                for (w, c) in self.apply(n, rest).iter() {
                    add_scaled(&mut out, &self.apply(a, w), c);
                }
                self.add_bracket(&mut out, n, a, rest, &F::one());
                out
            }
            _ => {
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(n);
                w.extend_from_slice(word);
                BTreeMap::from([(w, F::one())])
            }
        }
    }

    /// `a_n * (word * v)`, `n >= 2`.
    fn apply_hat(&self, n: i64, word: &[i64]) -> Rc<Combo<F>> {
        self.cached((true, n, word.to_vec()), || {
            let Some((&a, rest)) = word.split_first() else {
                return BTreeMap::from([(Vec::new(), self.params.value(n))]);
            };
            let mut out = BTreeMap::new();
            for (w, c) in self.apply_hat(n, rest).iter() {
                add_scaled(&mut out, &self.apply(a, w), c);
            }
            // [a_n, l_a] = [l_n, l_a] - z^{n-1} [l_1, l_a]
            self.add_bracket(&mut out, n, a, rest, &F::one());
            self.add_bracket(&mut out, 1, a, rest, &-self.z_pow((n - 1) as u32));
            out
        })
    }

    /// Adds `s * [l_x, l_y] * (rest * v)`.
    fn add_bracket(&self, out: &mut Combo<F>, x: i64, y: i64, rest: &[i64], s: &F) {
        let (lin, cen) = self.algebra.mode_bracket::<F>(x, y);
        if !lin.is_zero() {
            add_scaled(out, &self.apply(x + y, rest), &(lin * s));
        }
        if !cen.is_zero() {
            let single = BTreeMap::from([(rest.to_vec(), F::one())]);
            add_scaled(out, &single, &(cen * &self.params.theta * s));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{RatFunc, Rational};

    fn sym(n: &str) -> RatFunc {
        RatFunc::param(n)
    }

    fn k(n: i64) -> RatFunc {
        RatFunc::from_i64(n)
    }

    fn module(space: Space) -> InducedModule<RatFunc> {
        InducedModule::new(space, CharacterParams::symbolic())
    }

    #[test]
    fn hat_acts_by_character_on_generator() {
        let m = module(Space::V);
        let y = m.act(&m.hat(2), &m.generator()).unwrap();
        assert_eq!(y, m.generator().scale(&sym("m2")));
    }

    #[test]
    fn l1_is_free() {
        let m = module(Space::V);
        let x = m.basis(BasisKey::w(0, 3));
        let y = m.act(&UeaElt::generator(1), &x).unwrap();
        assert_eq!(y, m.basis(BasisKey::w(0, 4)));
    }

    #[test]
    fn shifted_hat_on_w_element() {
        let m = module(Space::W);
        let z = sym("z");
        let x = &m.basis(BasisKey::w(1, 0)).scale(&z) - &m.basis(BasisKey::w(0, 1));
        let y2 = m.act(&m.hat_shifted(2), &x).unwrap();
        let expected2 = &sym("m3") - &(&k(2) * &(&z * &sym("m2")));
        assert_eq!(y2, m.generator().scale(&expected2));
        let y3 = m.act(&m.hat_shifted(3), &x).unwrap();
        let expected3 = &(&k(2) * &sym("m4")) - &(&k(3) * &(&z * &sym("m3")));
        assert_eq!(y3, m.generator().scale(&expected3));
    }

    #[test]
    fn central_acts_by_theta() {
        let m = module(Space::Ind);
        let x = m.basis(BasisKey::new(crate::order::MultiIndex::eps(2), 1, 0));
        let y = m.act(&UeaElt::word(&[], 1), &x).unwrap();
        assert_eq!(y, x.scale(&sym("theta")));
    }

    #[test]
    fn inadmissible_modes_are_rejected() {
        let m = module(Space::V);
        assert!(matches!(
            m.act(&UeaElt::generator(0), &m.generator()),
            Err(RepError::InadmissibleMode { mode: 0, .. })
        ));
        let w = module(Space::W);
        assert!(w.act(&UeaElt::generator(-1), &w.generator()).is_err());
        assert!(w.act(&UeaElt::word(&[], 1), &w.generator()).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let m: InducedModule<Rational> = InducedModule::new(
            Space::V,
            CharacterParams::new(Rational::one(), Rational::one(), Rational::one(), Rational::from_i64(3), Rational::zero()).unwrap(),
        );
        let x = m.basis(BasisKey::w(0, 2));
        let r = m.act_bounded(&UeaElt::generator(1), &x, &Bounds::new(0, 0, 2));
        assert!(matches!(r, Err(RepError::Overflow { .. })));
    }
}
