//! Exact arbitrary-precision rational scalars.
//!
//! Every coefficient in the library is a `Scalar`; there is no floating
//! point anywhere. `num_rational::BigRational` keeps values in canonical
//! reduced form (positive denominator, gcd(|num|, den) = 1), which makes
//! equality checks on chains and forms exact term-wise comparisons.

use num_bigint::BigInt;
pub use num_rational::BigRational as Scalar;
use num_traits::{One, Zero};

/// Scalar from an integer.
pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// Scalar `num/den`. Panics on zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// n! as a scalar.
pub fn factorial(n: usize) -> Scalar {
    let mut acc = BigInt::from(1);
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Scalar::from_integer(acc)
}

/// Binomial coefficient C(n, k) as a scalar.
pub fn binomial(n: usize, k: usize) -> Scalar {
    if k > n {
        return zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Display form "p/q", or "p" for integers.
pub fn display(s: &Scalar) -> String {
    s.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_reduced_form() {
        let a = frac(2, 4);
        assert_eq!(a, frac(1, 2));
        assert_eq!(display(&a), "1/2");
        let b = frac(3, -6);
        assert_eq!(b, frac(-1, 2));
        assert_eq!(display(&b), "-1/2");
        assert_eq!(display(&int(7)), "7");
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), one());
        assert_eq!(factorial(4), int(24));
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(3, 5), zero());
    }
}
