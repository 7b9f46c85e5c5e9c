//! Small helpers around arbitrary-precision rationals.
//!
//! `Rat` is the scalar type of the whole intersection-theory layer. Values
//! are constructed from machine integers at the call site and grow as needed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

pub type Rat = BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `num/den`. Panics on zero denominator.
pub fn frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// True iff `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Exact integer value of `r`, if it is one.
pub fn to_integer(r: &Rat) -> Option<BigInt> {
    is_integer(r).then(|| r.numer().clone())
}

/// Generalized binomial coefficient `C(n, k)` for integer `n` (possibly
/// negative) and `k >= 0`: the product `n (n-1) ... (n-k+1) / k!`.
pub fn binomial(n: i64, k: u32) -> Rat {
    let mut num = Rat::one();
    for t in 0..k as i64 {
        num *= rat(n - t);
    }
    let mut den = Rat::one();
    for t in 1..=k as i64 {
        den *= rat(t);
    }
    num / den
}

/// `base^exp` for rational base and non-negative integer exponent.
pub fn pow(base: &Rat, exp: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// Render a rational as `p` or `p/q`.
pub fn display(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Euclidean remainder of `n` mod `m > 0`, always in `0..m`.
pub fn rem_euclid(n: i64, m: i64) -> i64 {
    n.rem_euclid(m)
}

/// True iff `r` is a non-negative integer.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    is_integer(r) && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_ordinary_and_negative() {
        assert_eq!(binomial(5, 2), rat(10));
        assert_eq!(binomial(4, 0), rat(1));
        assert_eq!(binomial(3, 5), rat(0));
        // C(-1, 1) = -1, C(-2, 1) = -2, C(-5, 2) = 15
        assert_eq!(binomial(-1, 1), rat(-1));
        assert_eq!(binomial(-2, 1), rat(-2));
        assert_eq!(binomial(-5, 2), rat(15));
    }

    #[test]
    fn integer_detection() {
        assert!(is_integer(&frac(6, 3)));
        assert!(!is_integer(&frac(7, 3)));
        assert_eq!(to_integer(&frac(6, 3)).unwrap(), BigInt::from(2));
    }

    #[test]
    fn display_forms() {
        assert_eq!(display(&frac(-3, 2)), "-3/2");
        assert_eq!(display(&rat(17)), "17");
    }
}
