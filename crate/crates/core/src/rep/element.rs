use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::algebra::PbwWord;
use crate::coeff::Field;
use crate::order::MultiIndex;

use super::RepError;

/// Which induced module an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Space {
    /// `V_m`, induced to the positive part; basis `l_1^k v`.
    V,
    /// `W_m`, induced to the Borel subalgebra; basis `l_0^j l_1^k v`.
    W,
    /// `Ind_{z,theta}(C_m)`; basis `l^i l_0^j l_1^k v`.
    Ind,
}

impl Space {
    /// Smallest mode that acts on the space.
    pub fn min_mode(self) -> i64 {
        match self {
            Space::V => 1,
            Space::W => 0,
            Space::Ind => i64::MIN,
        }
    }

    pub fn admits(self, key: &BasisKey) -> bool {
        match self {
            Space::V => key.neg.is_zero() && key.j == 0,
            Space::W => key.neg.is_zero(),
            Space::Ind => true,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::V => "V",
            Space::W => "W",
            Space::Ind => "Ind",
        })
    }
}

impl std::str::FromStr for Space {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "V" | "v" => Ok(Space::V),
            "W" | "w" => Ok(Space::W),
            "Ind" | "ind" | "IND" => Ok(Space::Ind),
            _ => Err(format!("unknown module `{s}` (expected V, W or Ind)")),
        }
    }
}

/// Basis vector `l^i l_0^j l_1^k v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BasisKey {
    pub neg: MultiIndex,
    pub j: u32,
    pub k: u32,
}

impl BasisKey {
    pub fn new(neg: MultiIndex, j: u32, k: u32) -> Self {
        BasisKey { neg, j, k }
    }

    /// The generator `v`.
    pub fn generator() -> Self {
        Self::default()
    }

    pub fn w(j: u32, k: u32) -> Self {
        BasisKey {
            neg: MultiIndex::zero(),
            j,
            k,
        }
    }

    /// The PBW word `l^i l_0^j l_1^k` (modes non-decreasing).
    pub fn word(&self) -> Vec<i64> {
        let mut w = self.neg.modes();
        w.extend(std::iter::repeat_n(0, self.j as usize));
        w.extend(std::iter::repeat_n(1, self.k as usize));
        w
    }

    /// Inverse of [`BasisKey::word`] for canonical words with modes `<= 1`.
    pub fn from_word(word: &[i64]) -> Self {
        debug_assert!(word.iter().all(|&m| m <= 1));
        BasisKey {
            neg: MultiIndex::from_modes(word),
            j: word.iter().filter(|&&m| m == 0).count() as u32,
            k: word.iter().filter(|&&m| m == 1).count() as u32,
        }
    }

    /// Text label, e.g. `l(-2)*l(0)^2*l(1)*v`.
    pub fn label(&self) -> String {
        let w = PbwWord::new(self.word(), 0).label();
        if w.is_empty() {
            "v".to_string()
        } else {
            format!("{w}*v")
        }
    }
}

/// Basis vectors are ordered by the negative part under `≺`, then by the
/// `l_0` and `l_1` exponents.
impl Ord for BasisKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.neg
            .cmp(&other.neg)
            .then(self.j.cmp(&other.j))
            .then(self.k.cmp(&other.k))
    }
}

impl PartialOrd for BasisKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Truncation of a module basis: negative weight, `l_0`-degree and
/// `l_1`-degree bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_weight: u64,
    pub max_j: u32,
    pub max_k: u32,
}

impl Bounds {
    pub fn new(max_weight: u64, max_j: u32, max_k: u32) -> Self {
        Bounds {
            max_weight,
            max_j,
            max_k,
        }
    }

    pub fn contains(&self, key: &BasisKey) -> bool {
        key.neg.weight() <= self.max_weight && key.j <= self.max_j && key.k <= self.max_k
    }

    /// Basis vectors of `space` inside the bounds, in increasing order.
    pub fn basis(&self, space: Space) -> Vec<BasisKey> {
        let negs = match space {
            Space::Ind => MultiIndex::up_to_weight(self.max_weight),
            _ => vec![MultiIndex::zero()],
        };
        let js = if space == Space::V { 0 } else { self.max_j };
        let mut out = Vec::new();
        for neg in &negs {
            for j in 0..=js {
                for k in 0..=self.max_k {
                    out.push(BasisKey::new(neg.clone(), j, k));
                }
            }
        }
        out
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(weight <= {}, j <= {}, k <= {})",
            self.max_weight, self.max_j, self.max_k
        )
    }
}

/// Element of `V_m`, `W_m` or `Ind_{z,theta}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModElt<F> {
    space: Space,
    terms: BTreeMap<BasisKey, F>,
}

impl<F: Field> ModElt<F> {
    pub fn zero(space: Space) -> Self {
        ModElt {
            space,
            terms: BTreeMap::new(),
        }
    }

    /// The canonical generator `v`.
    pub fn generator(space: Space) -> Self {
        Self::basis(space, BasisKey::generator())
    }

    /// A basis vector; panics if the key is not admissible in `space`.
    pub fn basis(space: Space, key: BasisKey) -> Self {
        assert!(space.admits(&key), "{key} is not a basis vector of {space}");
        let mut x = Self::zero(space);
        x.terms.insert(key, F::one());
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisKey, F)>>(space: Space, terms: I) -> Result<Self, RepError> {
        let mut x = Self::zero(space);
        for (key, c) in terms {
            if !space.admits(&key) {
                return Err(RepError::InadmissibleMode {
                    mode: if key.j > 0 { 0 } else { -1 },
                    space,
                });
            }
            x.add_term(key, c);
        }
        Ok(x)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Reinterprets an element under a larger space (`V ⊂ W ⊂ Ind` as
    /// vector spaces spanned by the same basis vectors).
    pub fn in_space(&self, space: Space) -> Result<Self, RepError> {
        Self::from_terms(space, self.terms.iter().map(|(k, c)| (k.clone(), c.clone())))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BasisKey, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &BasisKey) -> F {
        self.terms.get(key).cloned().unwrap_or_else(F::zero)
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

    pub fn leading(&self) -> Option<(&BasisKey, &F)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, key: BasisKey, c: F) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.space);
        if s.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), c.clone() * s);
        }
        out
    }

    /// The `W_m`-component `v_i` of the decomposition `x = sum l^i v_i`.
    pub fn component(&self, neg: &MultiIndex) -> ModElt<F> {
        let mut out = ModElt::zero(if self.space == Space::V { Space::V } else { Space::W });
        for (k, c) in &self.terms {
            if &k.neg == neg {
                out.terms.insert(BasisKey::w(k.j, k.k), c.clone());
            }
        }
        out
    }

    /// Errors with the first basis vector outside `bounds`.
    pub fn check_bounds(&self, bounds: &Bounds) -> Result<(), RepError> {
        match self.terms.keys().find(|k| !bounds.contains(k)) {
            Some(k) => Err(RepError::Overflow {
                key: k.label(),
                bounds: *bounds,
            }),
            None => Ok(()),
        }
    }

    /// Smallest bounds containing every basis vector of the element.
    pub fn extent(&self) -> Bounds {
        let mut b = Bounds::new(0, 0, 0);
        for k in self.terms.keys() {
            b.max_weight = b.max_weight.max(k.neg.weight());
            b.max_j = b.max_j.max(k.j);
            b.max_k = b.max_k.max(k.k);
        }
        b
    }

    pub fn map_coeffs<G: Field, E>(&self, mut f: impl FnMut(&F) -> Result<G, E>) -> Result<ModElt<G>, E> {
        let mut out = ModElt::zero(self.space);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c)?);
        }
        Ok(out)
    }

    fn combine(&self, rhs: &ModElt<F>, sign: bool) -> ModElt<F> {
        assert_eq!(self.space, rhs.space, "adding elements of different modules");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), if sign { c.clone() } else { -c.clone() });
        }
        out
    }
}

impl<F: Field> Add for &ModElt<F> {
    type Output = ModElt<F>;
    fn add(self, rhs: &ModElt<F>) -> ModElt<F> {
        self.combine(rhs, true)
    }
}

impl<F: Field> Sub for &ModElt<F> {
    type Output = ModElt<F>;
    fn sub(self, rhs: &ModElt<F>) -> ModElt<F> {
        self.combine(rhs, false)
    }
}

impl<F: Field> Neg for &ModElt<F> {
    type Output = ModElt<F>;
    fn neg(self) -> ModElt<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> fmt::Display for ModElt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::algebra::write_combination(f, self.terms.iter().map(|(k, c)| (k.label(), c)))
    }
}
