use std::collections::BTreeMap;

use serde::Serialize;

use crate::coeff::{Field, ParamAssignment, RatFunc, Rational};

use super::RepError;

/// Parameters of the character `C_m` of `a_z` together with the central
/// charge: `l_k - z^{k-1} l_1` acts by `m_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterParams<F> {
    pub z: F,
    pub m2: F,
    pub m3: F,
    pub m4: F,
    pub theta: F,
    perturbation: BTreeMap<u32, F>,
}

/// The four inequations guaranteeing simplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    /// `z m3 != m4`
    pub zm3_ne_m4: bool,
    /// `2 z m2 != m3`
    pub two_zm2_ne_m3: bool,
    /// `3 z m3 != 2 m4`
    pub three_zm3_ne_two_m4: bool,
    /// `z^2 m2 + m4 != 2 z m3`
    pub z2m2_m4_ne_two_zm3: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.zm3_ne_m4 && self.two_zm2_ne_m3 && self.three_zm3_ne_two_m4 && self.z2m2_m4_ne_two_zm3
    }

    /// The inequations that fail, as text.
    pub fn violated(&self) -> Vec<&'static str> {
        [
            (self.zm3_ne_m4, "z*m3 != m4"),
            (self.two_zm2_ne_m3, "2*z*m2 != m3"),
            (self.three_zm3_ne_two_m4, "3*z*m3 != 2*m4"),
            (self.z2m2_m4_ne_two_zm3, "z^2*m2 + m4 != 2*z*m3"),
        ]
        .into_iter()
        .filter_map(|(ok, text)| (!ok).then_some(text))
        .collect()
    }
}

/// Outcome of the character consistency check.
#[derive(Clone, Debug)]
pub struct CharacterCheck<F> {
    pub kmax: i64,
    pub pairs_checked: usize,
    /// `(i, j, residual)` for every pair whose residual is nonzero.
    pub failures: Vec<(i64, i64, F)>,
}

impl<F> CharacterCheck<F> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<F: Field> CharacterParams<F> {
    pub fn new(z: F, m2: F, m3: F, m4: F, theta: F) -> Result<Self, RepError> {
        if z.is_zero() {
            return Err(RepError::InvalidParams("z must be nonzero".into()));
        }
        Ok(CharacterParams {
            z,
            m2,
            m3,
            m4,
            theta,
            perturbation: BTreeMap::new(),
        })
    }

    /// Adds `delta` to the value on `l_k - z^{k-1} l_1`. Only used to
    /// build deliberately inconsistent characters for mutation tests.
    pub fn perturbed(mut self, k: u32, delta: F) -> Self {
        self.perturbation.insert(k, delta);
        self
    }

    /// `m_k`: the given values for `k = 2, 3, 4`, and
    /// `-(k-4) m3 z^{k-3} + (k-3) m4 z^{k-4}` beyond.
    pub fn value(&self, k: i64) -> F {
        assert!(k >= 2, "the character is defined on l_k - z^(k-1) l_1 for k >= 2");
        let base = match k {
            2 => self.m2.clone(),
            3 => self.m3.clone(),
            4 => self.m4.clone(),
            _ => {
                let a = F::from_i64(-(k - 4)) * &self.m3 * &self.z.pow((k - 3) as u32);
                let b = F::from_i64(k - 3) * &self.m4 * &self.z.pow((k - 4) as u32);
                a + b
            }
        };
        match self.perturbation.get(&(k as u32)) {
            Some(d) => base + d,
            None => base,
        }
    }

    pub fn conditions(&self) -> Conditions {
        let two = F::from_i64(2);
        let three = F::from_i64(3);
        let z = &self.z;
        Conditions {
            zm3_ne_m4: !(z.clone() * &self.m3 - &self.m4).is_zero(),
            two_zm2_ne_m3: !(two.clone() * z * &self.m2 - &self.m3).is_zero(),
            three_zm3_ne_two_m4: !(three * z * &self.m3 - &(two.clone() * &self.m4)).is_zero(),
            z2m2_m4_ne_two_zm3: !(z.clone() * z * &self.m2 + &self.m4 - &(two * z * &self.m3))
                .is_zero(),
        }
    }

    /// Checks that `lambda([a_i, a_j]) = 0` for `2 <= i < j <= kmax`, i.e.
    /// `(j-i) m_{i+j} + (i-1) z^{j-1} m_{i+1} - (j-1) z^{i-1} m_{j+1} = 0`.
    pub fn verify(&self, kmax: i64) -> CharacterCheck<F> {
        let mut failures = Vec::new();
        let mut pairs = 0;
        for i in 2..=kmax {
            for j in (i + 1)..=kmax {
                pairs += 1;
                let r = F::from_i64(j - i) * &self.value(i + j)
                    + F::from_i64(i - 1) * &self.z.pow((j - 1) as u32) * &self.value(i + 1)
                    - F::from_i64(j - 1) * &self.z.pow((i - 1) as u32) * &self.value(j + 1);
                if !r.is_zero() {
                    failures.push((i, j, r));
                }
            }
        }
        CharacterCheck {
            kmax,
            pairs_checked: pairs,
            failures,
        }
    }
}

impl CharacterParams<RatFunc> {
    /// Fully symbolic parameters `z, m2, m3, m4, theta`.
    pub fn symbolic() -> Self {
        Self::partially_assigned(&ParamAssignment::new()).expect("symbolic z is nonzero")
    }

    /// Assigned parameters become constants, the others stay symbolic.
    pub fn partially_assigned(at: &ParamAssignment) -> Result<Self, RepError> {
        let get = |name: &str| match at.get(name) {
            Some(q) => RatFunc::constant(q.clone()),
            None => RatFunc::param(name),
        };
        Self::new(get("z"), get("m2"), get("m3"), get("m4"), get("theta"))
    }

    /// Specialises every parameter; fails if a value is missing or a
    /// denominator vanishes.
    pub fn evaluate(&self, at: &ParamAssignment) -> Result<CharacterParams<Rational>, RepError> {
        let mut out = CharacterParams::new(
            self.z.evaluate(at)?,
            self.m2.evaluate(at)?,
            self.m3.evaluate(at)?,
            self.m4.evaluate(at)?,
            self.theta.evaluate(at)?,
        )?;
        for (k, d) in &self.perturbation {
            out.perturbation.insert(*k, d.evaluate(at)?);
        }
        Ok(out)
    }
}

impl CharacterParams<Rational> {
    /// Numeric parameters; `z, m2, m3, m4` are required and `theta`
    /// defaults to 0.
    pub fn from_assignment(at: &ParamAssignment) -> Result<Self, RepError> {
        at.require(&["z", "m2", "m3", "m4"])?;
        let g = |n: &str| at.get(n).cloned().unwrap_or_else(<Rational as Field>::zero);
        Self::new(g("z"), g("m2"), g("m3"), g("m4"), g("theta"))
    }

    pub fn to_assignment(&self) -> ParamAssignment {
        [
            ("z", self.z.clone()),
            ("m2", self.m2.clone()),
            ("m3", self.m3.clone()),
            ("m4", self.m4.clone()),
            ("theta", self.theta.clone()),
        ]
        .into_iter()
        .collect()
    }
}
