//! Exact rationals and their canonical text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text: `num/den`, with `/den` omitted when the denominator is 1.
pub fn to_text(q: &Rational) -> String {
    // num-rational's Display already omits a unit denominator.
    q.to_string()
}

pub fn parse(text: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::Parse(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Returns the integer value if `q` has denominator 1.
pub fn as_integer(q: &Rational) -> Option<BigInt> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

/// `n!` as an exact rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn text_round_trip() {
        assert_eq!(to_text(&ratio(-1382, 638512875)), "-1382/638512875");
        assert_eq!(to_text(&rat(7)), "7");
        assert_eq!(parse("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse(" -5 ").unwrap(), rat(-5));
        assert_eq!(parse("1/-3").unwrap(), ratio(-1, 3));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("1.5").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn lowest_terms() {
        let q = ratio(10, -4) + ratio(1, 6);
        assert!(q.denom() > &BigInt::zero());
        assert!(q.numer().gcd(q.denom()).is_one());
        assert_eq!(q, ratio(-7, 3));
    }

    #[test]
    fn integer_detection() {
        assert_eq!(as_integer(&ratio(8, 2)), Some(BigInt::from(4)));
        assert_eq!(as_integer(&ratio(1, 2)), None);
        assert_eq!(factorial(5), rat(120));
        assert_eq!(factorial(0), rat(1));
    }
}
