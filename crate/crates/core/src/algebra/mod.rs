//! The Virasoro Lie algebra and its universal enveloping algebra.
//!
//! Elements of `U(V)` are kept in PBW normal form: every word lists its mode
//! indices in non-decreasing order from left to right, with powers of the
//! central element `c` factored out.

mod lie;
mod uea;

pub use lie::LieElt;
pub use uea::{PbwWord, UeaElt};

use std::fmt;

use crate::coeff::{rat, Field};

/// Structure constants of the Virasoro algebra,
/// `[l_i, l_j] = (j - i) l_{i+j} + delta_{i,-j} (i^3 - i)/12 c`.
///
/// `central_sign` is `1` for the Virasoro algebra. Any other value scales the
/// two-cocycle and exists only for mutation testing of the check battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Virasoro {
    central_sign: i64,
}

impl Default for Virasoro {
    fn default() -> Self {
        Self::STANDARD
    }
}

impl Virasoro {
    pub const STANDARD: Virasoro = Virasoro { central_sign: 1 };

    /// The algebra with the central term negated (a deliberately wrong
    /// structure for mutation tests).
    pub const fn with_central_sign(sign: i64) -> Virasoro {
        Virasoro { central_sign: sign }
    }

    pub fn central_sign(&self) -> i64 {
        self.central_sign
    }

    /// `[l_i, l_j]` as `(coefficient of l_{i+j}, coefficient of c)`.
    pub fn mode_bracket<F: Field>(&self, i: i64, j: i64) -> (F, F) {
        let linear = F::from_i64(j - i);
        let central = if i == -j {
            F::from_rational(&rat(self.central_sign * (i * i * i - i), 12))
        } else {
            F::zero()
        };
        (linear, central)
    }

    pub fn bracket<F: Field>(&self, x: &LieElt<F>, y: &LieElt<F>) -> LieElt<F> {
        let mut out = LieElt::zero();
        for (&i, a) in x.modes() {
            for (&j, b) in y.modes() {
                let (lin, cen) = self.mode_bracket::<F>(i, j);
                let ab = a.clone() * b;
                if !lin.is_zero() {
                    out.add_mode(i + j, ab.clone() * &lin);
                }
                if !cen.is_zero() {
                    out.add_central(ab * &cen);
                }
            }
        }
        out
    }

    /// Rewrites the product `l_{w_1} ... l_{w_n} c^cpow` into PBW normal form.
    ///
    /// Adjacent out-of-order factors are swapped with
    /// `l_a l_b = l_b l_a + [l_a, l_b]`; the bracket terms are shorter words
    /// and go back onto the work queue.
    pub fn normal_order<F: Field>(&self, word: &[i64], cpow: u32) -> UeaElt<F> {
        self.normal_order_scaled(word, cpow, F::one())
    }

    pub(crate) fn normal_order_scaled<F: Field>(&self, word: &[i64], cpow: u32, coeff: F) -> UeaElt<F> {
        use std::collections::BTreeMap;
        let mut out = UeaElt::zero();
        // keyed by length first so that the longest words are expanded first
        let mut pending: BTreeMap<(usize, Vec<i64>, u32), F> = BTreeMap::new();
        if !coeff.is_zero() {
            pending.insert((word.len(), word.to_vec(), cpow), coeff);
        }
        while let Some(((_, w, cp), coef)) = pending.pop_last() {
            if coef.is_zero() {
                continue;
            }
            let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
                out.add_term(PbwWord::new(w, cp), coef);
                continue;
            };
            let (a, b) = (w[i], w[i + 1]);
            let mut push = |key: (usize, Vec<i64>, u32), c: F| {
                let slot = pending.entry(key).or_insert_with(F::zero);
                *slot = slot.clone() + c;
            };
            let (lin, cen) = self.mode_bracket::<F>(a, b);
            if !lin.is_zero() {
                let mut shorter = Vec::with_capacity(w.len() - 1);
                shorter.extend_from_slice(&w[..i]);
                shorter.push(a + b);
                shorter.extend_from_slice(&w[i + 2..]);
                push((shorter.len(), shorter, cp), coef.clone() * &lin);
            }
            if !cen.is_zero() {
                let mut shorter = Vec::with_capacity(w.len() - 2);
                shorter.extend_from_slice(&w[..i]);
                shorter.extend_from_slice(&w[i + 2..]);
                push((shorter.len(), shorter, cp + 1), coef.clone() * &cen);
            }
            let mut swapped = w;
            swapped.swap(i, i + 1);
            push((swapped.len(), swapped, cp), coef);
        }
        out
    }

    /// Product in `U(V)`.
    pub fn uea_mul<F: Field>(&self, a: &UeaElt<F>, b: &UeaElt<F>) -> UeaElt<F> {
        let mut out = UeaElt::zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                let mut word = wa.factors().to_vec();
                word.extend_from_slice(wb.factors());
                let part = self.normal_order_scaled(&word, wa.cpow() + wb.cpow(), ca.clone() * cb);
                out = out + part;
            }
        }
        out
    }
}

/// `[x, y]` in the Virasoro algebra.
pub fn bracket<F: Field>(x: &LieElt<F>, y: &LieElt<F>) -> LieElt<F> {
    Virasoro::STANDARD.bracket(x, y)
}

/// PBW normal form of a word of modes times `c^cpow`.
pub fn normal_order<F: Field>(word: &[i64], cpow: u32) -> UeaElt<F> {
    Virasoro::STANDARD.normal_order(word, cpow)
}

/// Product in `U(V)`.
pub fn uea_mul<F: Field>(a: &UeaElt<F>, b: &UeaElt<F>) -> UeaElt<F> {
    Virasoro::STANDARD.uea_mul(a, b)
}

/// Writes `sum coeff * basis` with canonical signs: `a - 2*b + (z + 1)*c`.
/// A unit coefficient is omitted except on an empty basis label.
pub(crate) fn write_combination<'a, F, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    F: Field,
    I: IntoIterator<Item = (String, &'a F)>,
{
    let mut first = true;
    for (label, coeff) in terms {
        let (neg, mag) = coeff.split_sign();
        if first {
            first = false;
            if neg && mag.is_one() && !label.is_empty() {
                write!(f, "-1*{label}")?;
                continue;
            }
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        if label.is_empty() {
            write_factor(f, &mag)?;
        } else if mag.is_one() {
            f.write_str(&label)?;
        } else {
            write_factor(f, &mag)?;
            write!(f, "*{label}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn write_factor<F: Field>(f: &mut fmt::Formatter<'_>, c: &F) -> fmt::Result {
    if c.is_compound() {
        write!(f, "({c})")
    } else {
        write!(f, "{c}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, RatFunc, Rational};

    type Q = Rational;

    fn l(i: i64) -> LieElt<Q> {
        LieElt::l(i)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&l(2), &l(3)), l(5));
        let expected = &l(0).scale(&rat(-4, 1)) + &LieElt::c().scale(&rat(1, 2));
        assert_eq!(bracket(&l(2), &l(-2)), expected);
        assert!(bracket(&LieElt::<Q>::c(), &l(5)).is_zero());
    }

    #[test]
    fn normal_order_examples() {
        let u: UeaElt<Q> = normal_order(&[1, -1], 0);
        let expected = &UeaElt::word(&[-1, 1], 0) - &UeaElt::word(&[0], 0).scale(&rat(2, 1));
        assert_eq!(u, expected);

        let u: UeaElt<Q> = normal_order(&[2, -2], 0);
        let expected = &(&UeaElt::word(&[-2, 2], 0) - &UeaElt::word(&[0], 0).scale(&rat(4, 1)))
            + &UeaElt::word(&[], 1).scale(&rat(1, 2));
        assert_eq!(u, expected);

        let u: UeaElt<Q> = normal_order(&[-2, -1], 0);
        assert_eq!(u, UeaElt::word(&[-2, -1], 0));
    }

    #[test]
    fn uea_mul_examples() {
        let l1 = UeaElt::<Q>::generator(1);
        let lm1 = UeaElt::<Q>::generator(-1);
        assert_eq!(uea_mul(&l1, &l1), UeaElt::word(&[1, 1], 0));
        let comm = &uea_mul(&l1, &lm1) - &uea_mul(&lm1, &l1);
        assert_eq!(comm, UeaElt::word(&[0], 0).scale(&rat(-2, 1)));
        let c = UeaElt::<Q>::word(&[], 1);
        assert_eq!(uea_mul(&c, &UeaElt::generator(5)), UeaElt::word(&[5], 1));
    }

    #[test]
    fn display_is_canonical() {
        let u: UeaElt<Q> = normal_order(&[1, -1], 0);
        assert_eq!(u.to_string(), "l(-1)*l(1) - 2*l(0)");
        assert_eq!(bracket(&l(2), &l(-2)).to_string(), "-4*l(0) + 1/2*c");
        let z = RatFunc::param("z");
        let x: LieElt<RatFunc> = &LieElt::l(3) - &LieElt::l(1).scale(&(&z * &z));
        assert_eq!(x.to_string(), "-z^2*l(1) + l(3)");
    }

    #[test]
    fn mutated_central_sign() {
        let mutated = Virasoro::with_central_sign(-1);
        let b = mutated.bracket(&l(2), &l(-2));
        assert_eq!(b.central(), &rat(-1, 2));
    }
}
