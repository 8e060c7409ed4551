//! Exact rational arithmetic and the combinatorial primitives every
//! identity check is built on.
//!
//! Transition probabilities, Krawtchouk values, character ratios and
//! conditional moments all stay in [`Rational`]; only final bound assembly
//! (square and fourth roots) goes through [`to_real`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{out_of_range, Result};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Binomial coefficient with the convention `C(m, r) = 0` for `r < 0` or `r > m`.
pub fn binomial(m: i64, r: i64) -> BigInt {
    if r < 0 || r > m {
        return BigInt::zero();
    }
    let r = r.min(m - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Same as [`binomial`], lifted into [`Rational`].
pub fn binomial_q(m: i64, r: i64) -> Rational {
    Rational::from_integer(binomial(m, r))
}

/// `n (n-1) ... (n-k+1)`; the empty product is 1.
pub fn falling_factorial(n: i64, k: i64) -> Result<BigInt> {
    if k < 0 || k > n {
        return Err(out_of_range("k", k, format!("0 <= k <= n = {n}")));
    }
    Ok((0..k).fold(BigInt::one(), |acc, i| acc * (n - i)))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as i64).fold(BigInt::one(), |acc, i| acc * i)
}

/// `base^exp` for a signed exponent. `0^0 = 1`; panics on `0^(negative)`.
pub fn powi(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

/// Nearest double to `x`.
pub fn to_real(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    // Ratio<BigInt>::to_f64 rounds correctly and handles huge operands.
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Largest integer `<= x`.
pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Sum of an iterator of rationals.
pub fn sum<I: IntoIterator<Item = Rational>>(it: I) -> Rational {
    it.into_iter().fold(Rational::zero(), |acc, x| acc + x)
}

/// Exact rational parsed from `"p/q"`, `"p"` or a terminating decimal like `"0.25"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().ok()?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().ok()?;
        let frac = Rational::new(frac, scale);
        let whole = Rational::from_integer(whole);
        return Some(if negative { whole - frac } else { whole + frac });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Serializes as `"p/q"` (or `"p"` for integers).
pub fn serialize_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn serialize_opt_rational<S: serde::Serializer>(
    x: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(4, -1), big(0));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(-2, 1), big(0));
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(5, 0).unwrap(), big(1));
        assert_eq!(falling_factorial(5, 2).unwrap(), big(20));
        assert_eq!(falling_factorial(6, 6).unwrap(), big(720));
        assert!(falling_factorial(3, 4).is_err());
        assert!(falling_factorial(3, -1).is_err());
    }

    #[test]
    fn to_real_examples() {
        assert_eq!(to_real(&ratio(1, 2)), 0.5);
        assert_eq!(to_real(&ratio(2, 33)), 2.0 / 33.0);
        assert_eq!(to_real(&int(0)), 0.0);
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("8/3"), Some(ratio(8, 3)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    proptest! {
        #[test]
        fn pascal_rule(m in 1i64..60, r in -3i64..65) {
            prop_assert_eq!(binomial(m, r), binomial(m - 1, r - 1) + binomial(m - 1, r));
        }

        #[test]
        fn falling_factorial_is_binomial_times_factorial(n in 0i64..30, k in 0i64..30) {
            prop_assume!(k <= n);
            prop_assert_eq!(
                falling_factorial(n, k).unwrap(),
                binomial(n, k) * factorial(k as u32)
            );
        }

        #[test]
        fn field_laws(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50, e in -50i64..50, f in 1i64..50) {
            let (x, y, z) = (ratio(a, b), ratio(c, d), ratio(e, f));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            // normalization is idempotent
            let again = Rational::new(x.numer().clone(), x.denom().clone());
            prop_assert_eq!(again.numer(), x.numer());
            prop_assert!(x.denom() > &BigInt::zero());
        }
    }
}
