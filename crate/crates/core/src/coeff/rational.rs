use num_bigint::BigInt;
use num_rational::BigRational;

use super::CoeffError;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n` or `n/d` with an optional leading sign.
pub fn parse_rational(text: &str) -> Result<Rational, CoeffError> {
    let bad = || CoeffError::InvalidLiteral(text.to_string());
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(CoeffError::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_signs() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("1/0"), Err(CoeffError::DivisionByZero));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn add_is_reduced() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
        assert_eq!(rat(2, 4), rat(1, 2));
    }
}
