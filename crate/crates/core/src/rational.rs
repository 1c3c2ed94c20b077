//! Arbitrary-precision rationals and small number-theoretic helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::input(format!("not a rational number: {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::input(format!("not a rational number: {s:?}")))?;
    if den.is_zero() {
        return Err(Error::input(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Returns the integer value if `x` is integral.
pub fn as_integer(x: &Rational) -> Option<BigInt> {
    x.is_integer().then(|| x.numer().clone())
}

pub fn to_i64(x: &Rational) -> Option<i64> {
    as_integer(x).and_then(|n| n.to_i64())
}

/// Squarefree integer `s` with the sign of `n` such that `n / s` is a perfect square.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::input("squarefree part of zero is undefined"));
    }
    let mut rest = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        if count % 2 == 1 {
            out *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    out *= rest;
    if n.is_negative() {
        out = -out;
    }
    Ok(out)
}

/// Squarefree representative of the square class of a nonzero rational.
pub fn squarefree_part_rational(x: &Rational) -> Result<BigInt> {
    squarefree_part(&(x.numer() * x.denom()))
}

pub fn is_squarefree(n: &BigInt) -> bool {
    !n.is_zero() && squarefree_part(n).map(|s| &s == n).unwrap_or(false)
}

/// Exact square root of a rational when it exists.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Binomial coefficient `C(n, k)` for signed `n`, via the falling factorial.
pub fn binomial(n: i64, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k as i64 {
        acc = acc * q(n - i) / q(i + 1);
    }
    acc
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&BigInt::from(12)).unwrap(), BigInt::from(3));
        assert_eq!(squarefree_part(&BigInt::from(-8)).unwrap(), BigInt::from(-2));
        assert_eq!(squarefree_part(&BigInt::from(1)).unwrap(), BigInt::from(1));
        assert_eq!(squarefree_part(&BigInt::from(-1)).unwrap(), BigInt::from(-1));
        assert_eq!(squarefree_part(&BigInt::from(50)).unwrap(), BigInt::from(2));
        assert!(squarefree_part(&BigInt::from(0)).is_err());
    }

    #[test]
    fn squarefree_of_rational() {
        assert_eq!(squarefree_part_rational(&qf(3, 4)).unwrap(), BigInt::from(3));
        assert_eq!(squarefree_part_rational(&qf(-1, 2)).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), qf(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), q(-7));
        assert_eq!(format_rational(&qf(-3, 6)), "-1/2");
        assert_eq!(format_rational(&q(5)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(rational_sqrt(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(rational_sqrt(&qf(2, 1)), None);
        assert_eq!(rational_sqrt(&qf(-1, 1)), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), q(10));
        assert_eq!(binomial(-1, 2), q(1));
        assert_eq!(binomial(-3, 2), q(6));
        assert_eq!(binomial(3, 0), q(1));
    }
}
