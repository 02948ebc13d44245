//! The codimension-one subalgebras `a_z` of the positive part, spanned by
//! `l_k - z^{k-1} l_1` for `k >= 2`, and the classification of all
//! subalgebras with a basis of the shape `l_k - a_k l_1`.

mod classify;
mod groebner;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{bracket, LieElt};
use crate::coeff::{CoeffError, Field, Poly};

pub use classify::{classify_codim_one, full_ideal, generic_ring, recursion, solve_triangular, Classification, FullIdealRun};
pub use groebner::{buchberger, is_groebner, reduce_basis, s_polynomial, GroebnerLimits, GroebnerStats};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubalgError {
    #[error("z must be nonzero")]
    ZeroZ,
    #[error("no coefficient for a_{0}")]
    MissingCoefficient(i64),
    #[error("resource cap exceeded: {what} > {limit}")]
    ResourceCap { what: &'static str, limit: usize },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Decomposition `x = sum_k coords_k (l_k - a_k l_1) + defect l_1 + rest`,
/// where `rest` carries the `l_0`, negative and central parts.
#[derive(Clone, Debug, PartialEq)]
pub struct AzCoords<F> {
    pub coords: BTreeMap<i64, F>,
    pub defect: F,
    pub l0_part: F,
    pub negative_part: LieElt<F>,
}

impl<F: Field> AzCoords<F> {
    /// Positive part lies in the subalgebra.
    pub fn is_member(&self) -> bool {
        self.defect.is_zero()
    }
}

/// Coordinates with respect to the family `l_k - a(k) l_1`.
pub fn family_coords<F: Field>(x: &LieElt<F>, a: impl Fn(i64) -> F) -> AzCoords<F> {
    let mut coords = BTreeMap::new();
    let mut defect = x.mode(1);
    let mut negative = LieElt::zero();
    negative.add_central(x.central().clone());
    for (&k, c) in x.modes() {
        if k >= 2 {
            defect = defect + &(c.clone() * &a(k));
            coords.insert(k, c.clone());
        } else if k < 0 {
            negative.add_mode(k, c.clone());
        }
    }
    AzCoords {
        coords,
        defect,
        l0_part: x.mode(0),
        negative_part: negative,
    }
}

/// Coordinates of `x` in the basis `l_k - z^{k-1} l_1` of `a_z`.
pub fn az_coords<F: Field>(x: &LieElt<F>, z: &F) -> Result<AzCoords<F>, SubalgError> {
    if z.is_zero() {
        return Err(SubalgError::ZeroZ);
    }
    Ok(family_coords(x, |k| z.pow((k - 1) as u32)))
}

/// Rebuilds the element from its coordinates.
pub fn reassemble<F: Field>(c: &AzCoords<F>, a: impl Fn(i64) -> F) -> LieElt<F> {
    let mut x = c.negative_part.clone();
    x.add_mode(0, c.l0_part.clone());
    x.add_mode(1, c.defect.clone());
    for (&k, v) in &c.coords {
        x.add_mode(k, v.clone());
        x.add_mode(1, -(v.clone() * &a(k)));
    }
    x
}

/// `l_k - a_k l_1`.
pub fn family_generator<F: Field>(k: i64, a_k: F) -> LieElt<F> {
    LieElt::from_modes([(k, F::one()), (1, -a_k)], F::zero())
}

#[derive(Clone, Debug)]
pub struct ClosureCheck<F> {
    pub kmax: i64,
    pub pairs_checked: usize,
    /// `(i, j, defect)` for every bracket leaving the span.
    pub failures: Vec<(i64, i64, F)>,
}

impl<F> ClosureCheck<F> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the span of `l_k - a(k) l_1` (`k >= 2`) is closed under the
/// bracket of generators `2 <= i < j <= kmax`.
pub fn check_family_closure<F: Field>(a: impl Fn(i64) -> F, kmax: i64) -> ClosureCheck<F> {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for i in 2..=kmax {
        for j in (i + 1)..=kmax {
            pairs += 1;
            let b = bracket(&family_generator(i, a(i)), &family_generator(j, a(j)));
            let c = family_coords(&b, &a);
            if !c.is_member() {
                failures.push((i, j, c.defect));
            }
        }
    }
    ClosureCheck {
        kmax,
        pairs_checked: pairs,
        failures,
    }
}

/// Closure of `a_z`.
pub fn check_closure<F: Field>(z: &F, kmax: i64) -> Result<ClosureCheck<F>, SubalgError> {
    if z.is_zero() {
        return Err(SubalgError::ZeroZ);
    }
    Ok(check_family_closure(|k| z.pow((k - 1) as u32), kmax))
}

/// `D_{i,j} = (j-i) a_{i+j} - (j-1) a_i a_{j+1} + (i-1) a_{i+1} a_j`.
pub fn dij(i: i64, j: i64, coeffs: &BTreeMap<i64, Poly>) -> Result<Poly, SubalgError> {
    assert!(2 <= i && i < j, "D_(i,j) needs 2 <= i < j");
    let a = |k: i64| coeffs.get(&k).ok_or(SubalgError::MissingCoefficient(k));
    let (aij, ai, aj1, ai1, aj) = (a(i + j)?, a(i)?, a(j + 1)?, a(i + 1)?, a(j)?);
    let q = |n: i64| crate::coeff::rat(n, 1);
    let first = aij.scale(&q(j - i));
    let second = ai.checked_mul(aj1)?.scale(&q(j - 1));
    let third = ai1.checked_mul(aj)?.scale(&q(i - 1));
    Ok(first.checked_sub(&second)?.checked_add(&third)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, PolyRing, RatFunc, Rational};

    fn z() -> RatFunc {
        RatFunc::param("z")
    }

    #[test]
    fn generator_coordinates() {
        let x = family_generator(3, z().pow_u(2));
        let c = az_coords(&x, &z()).unwrap();
        assert_eq!(c.coords, BTreeMap::from([(3, RatFunc::one())]));
        assert!(c.is_member());
        let l1 = az_coords(&LieElt::l(1), &z()).unwrap();
        assert!(l1.coords.is_empty());
        assert_eq!(l1.defect, RatFunc::one());
    }

    #[test]
    fn bracket_of_two_generators() {
        let b = bracket(&family_generator(2, z()), &family_generator(3, z().pow_u(2)));
        let c = az_coords(&b, &z()).unwrap();
        let expected = BTreeMap::from([
            (3, z().pow_u(2)),
            (4, &RatFunc::from_i64(-2) * &z()),
            (5, RatFunc::one()),
        ]);
        assert_eq!(c.coords, expected);
        assert!(c.is_member());
        assert_eq!(reassemble(&c, |k| z().pow_u((k - 1) as u32)), b);
    }

    #[test]
    fn zero_z_rejected() {
        assert_eq!(az_coords(&LieElt::<Rational>::l(2), &rat(0, 1)), Err(SubalgError::ZeroZ));
    }

    #[test]
    fn closure_symbolic_and_specialised() {
        assert!(check_closure(&z(), 12).unwrap().passed());
        assert!(check_closure(&rat(1, 1), 6).unwrap().passed());
    }

    #[test]
    fn deformed_family_fails() {
        let check = check_family_closure(|k| &z().pow_u((k - 1) as u32) + &RatFunc::one(), 5);
        assert!(!check.passed());
        assert!(check.failures.iter().any(|&(i, j, _)| (i, j) == (2, 3)));
    }

    fn generic(kmax: i64) -> (std::sync::Arc<PolyRing>, BTreeMap<i64, Poly>) {
        let names: Vec<String> = (2..=kmax).map(|k| format!("a{k}")).collect();
        let r = PolyRing::new(&names);
        let coeffs = (2..=kmax).map(|k| (k, Poly::var(&r, &format!("a{k}")).unwrap())).collect();
        (r, coeffs)
    }

    #[test]
    fn dij_expansions() {
        let (r, a) = generic(9);
        let v = |k: i64| a[&k].clone();
        let d23 = &(&v(5) - &(&v(2) * &v(4)).scale(&rat(2, 1))) + &v(3).pow(2);
        assert_eq!(dij(2, 3, &a).unwrap(), d23);
        let d34 = &(&v(7) - &(&v(3) * &v(5)).scale(&rat(3, 1))) + &v(4).pow(2).scale(&rat(2, 1));
        assert_eq!(dij(3, 4, &a).unwrap(), d34);
        assert!(matches!(dij(4, 6, &a), Err(SubalgError::MissingCoefficient(10))));
        let _ = r;
    }

    #[test]
    fn dij_vanishes_on_powers() {
        let r = PolyRing::new(&["z"]);
        let zp = Poly::var(&r, "z").unwrap();
        let coeffs: BTreeMap<i64, Poly> = (2..=25).map(|k| (k, zp.pow((k - 1) as u32))).collect();
        for i in 2..=12 {
            for j in (i + 1)..=12 {
                assert!(dij(i, j, &coeffs).unwrap().is_zero(), "D({i},{j})");
            }
        }
    }
}
