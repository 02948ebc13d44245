use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{param_ring, CoeffError, ParamAssignment, Poly, PolyRing, Rational};

/// Quotient of two polynomials in lowest terms, denominator monic.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl RatFunc {
    /// Zero in the parameter ring.
    pub fn zero() -> Self {
        Self::zero_in(param_ring())
    }

    /// One in the parameter ring.
    pub fn one() -> Self {
        Self::from_poly(Poly::one(param_ring()))
    }

    pub fn zero_in(ring: &Arc<PolyRing>) -> Self {
        RatFunc {
            num: Poly::zero(ring),
            den: Poly::one(ring),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(param_ring(), c))
    }

    /// A parameter of the parameter ring, e.g. `RatFunc::param("z")`.
    ///
    /// Panics on an unknown name; use [`RatFunc::try_param`] for input.
    pub fn param(name: &str) -> Self {
        Self::try_param(name).expect("unknown parameter")
    }

    pub fn try_param(name: &str) -> Result<Self, CoeffError> {
        Ok(Self::from_poly(Poly::var(param_ring(), name)?))
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.ring());
        RatFunc { num: p, den }
    }

    /// Builds `num/den` and reduces it.
    pub fn new(num: Poly, den: Poly) -> Result<Self, CoeffError> {
        num.same_ring(&den)?;
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero_in(num.ring());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den).expect("same ring");
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
            }
        };
        let lc = den.leading_coeff().cloned().unwrap();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value when this is a constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_constant() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CoeffError> {
        self.num.same_ring(&other.num)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.den == other.den {
            let num = self.num.checked_add(&other.num)?;
            if self.den.is_one() {
                return Ok(RatFunc {
                    num,
                    den: self.den.clone(),
                });
            }
            return Ok(Self::normalized(num, self.den.clone()));
        }
        // Work over the lcm of the denominators.
        let g = self.den.gcd(&other.den)?;
        let a = self.den.exact_div(&g).unwrap();
        let b = other.den.exact_div(&g).unwrap();
        let num = &(&self.num * &b) + &(&other.num * &a);
        let den = &(&a * &b) * &g;
        Ok(Self::normalized(num, den))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CoeffError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CoeffError> {
        self.num.same_ring(&other.num)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero_in(self.ring()));
        }
        if self.den.is_one() && other.den.is_one() {
            return Ok(RatFunc {
                num: self.num.checked_mul(&other.num)?,
                den: self.den.clone(),
            });
        }
        // Cross-cancel before multiplying; both inputs are already reduced.
        let g1 = self.num.gcd(&other.den)?;
        let g2 = other.num.gcd(&self.den)?;
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = other.den.exact_div(&g1).unwrap();
        let n2 = other.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_coeff().cloned().unwrap();
        if lc.is_one() {
            Ok(RatFunc { num, den })
        } else {
            let inv = lc.recip();
            Ok(RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            })
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CoeffError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.ring());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact value at a total assignment of the occurring variables.
    pub fn evaluate(&self, at: &ParamAssignment) -> Result<Rational, CoeffError> {
        let d = self.den.evaluate(at)?;
        if d.is_zero() {
            return Err(CoeffError::VanishingDenominator);
        }
        Ok(self.num.evaluate(at)? / d)
    }

    /// Substitutes the assigned variables, keeping the rest symbolic.
    pub fn substitute(&self, at: &ParamAssignment) -> Result<Self, CoeffError> {
        let den = self.den.substitute(at);
        if den.is_zero() {
            return Err(CoeffError::VanishingDenominator);
        }
        Ok(Self::normalized(self.num.substitute(at), den))
    }

    /// Replaces variables by rational functions over the same ring.
    pub fn compose(&self, images: &[RatFunc]) -> Result<Self, CoeffError> {
        let n = compose_poly(&self.num, images)?;
        let d = compose_poly(&self.den, images)?;
        n.checked_div(&d)
    }
}

impl RatFunc {
    /// Integer power.
    pub fn pow_u(&self, exp: u32) -> Self {
        RatFunc {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }
}

fn compose_poly(p: &Poly, images: &[RatFunc]) -> Result<RatFunc, CoeffError> {
    let ring = p.ring();
    let mut acc = RatFunc::zero_in(ring);
    for (m, c) in p.terms() {
        let mut t = RatFunc::from_poly(Poly::constant(ring, c.clone()));
        for (i, e) in m.exponents().iter().enumerate() {
            for _ in 0..*e {
                t = t.checked_mul(&images[i])?;
            }
        }
        acc = acc.checked_add(&t)?;
    }
    Ok(acc)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.nterms() > 1 || self.num.leading_coeff().is_some_and(|c| !c.is_integer()) {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        // a lone power of one variable needs no parentheses
        let simple = self.den.nterms() == 1
            && self
                .den
                .leading_monomial()
                .is_some_and(|m| m.exponents().iter().filter(|&&e| e > 0).count() == 1);
        if simple {
            write!(f, "{num}/{}", self.den)
        } else {
            write!(f, "{num}/({})", self.den)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$checked(rhs).expect("rational function ring mismatch")
            }
        }
        impl $trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn z() -> RatFunc {
        RatFunc::param("z")
    }

    fn c(n: i64) -> RatFunc {
        RatFunc::constant(rat(n, 1))
    }

    #[test]
    fn reduces_to_lowest_terms() {
        let num = (&(&z() * &z()) - &c(1)).numer().clone();
        let den = (&z() - &c(1)).numer().clone();
        let q = RatFunc::new(num, den).unwrap();
        assert_eq!(q, &z() + &c(1));
        assert!(q.is_polynomial());
    }

    #[test]
    fn self_difference_is_zero() {
        let q = z().checked_div(&(&z() - &c(1))).unwrap();
        assert!((&q - &q).is_zero());
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(z().checked_div(&RatFunc::zero()), Err(CoeffError::DivisionByZero));
    }

    #[test]
    fn evaluation_examples() {
        let m2 = RatFunc::param("m2");
        let m3 = RatFunc::param("m3");
        let expr = &(&c(2) * &(&z() * &m2)) - &m3;
        let at: ParamAssignment = [("z", rat(1, 1)), ("m2", rat(1, 1)), ("m3", rat(3, 1))]
            .into_iter()
            .collect();
        assert_eq!(expr.evaluate(&at).unwrap(), rat(-1, 1));

        let z2 = z().pow_u(2);
        let at2: ParamAssignment = [("z", rat(2, 1))].into_iter().collect();
        assert_eq!(z2.evaluate(&at2).unwrap(), rat(4, 1));

        let inv = (&m3 - &(&c(2) * &(&z() * &m2))).inv().unwrap();
        let at3: ParamAssignment = [("z", rat(1, 1)), ("m2", rat(1, 1)), ("m3", rat(2, 1))]
            .into_iter()
            .collect();
        assert_eq!(inv.evaluate(&at3), Err(CoeffError::VanishingDenominator));
    }

    #[test]
    fn denominator_is_monic() {
        let q = c(1).checked_div(&(&c(2) * &z())).unwrap();
        assert!(q.denom().leading_coeff().unwrap().is_one());
        assert_eq!(q.to_string(), "(1/2)/z");
        let m2 = RatFunc::param("m2");
        let d = &(&c(2) * &z()) - &(&c(4) * &m2);
        let q = c(3).checked_div(&d.scale(&rat(-1, 6))).unwrap();
        assert!(q.denom().leading_coeff().unwrap().is_one());
        assert_eq!(q, c(-9).checked_div(&(&z() - &(&c(2) * &m2))).unwrap());
    }
}
