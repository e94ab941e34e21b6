//! Integers, rationals, valuations and small helpers shared by every module.

mod factor;

pub use factor::{
    default_effort, factorize, factorize_with, is_prime, set_default_effort, FactorConfig, PrimeFactorization,
    DEFAULT_EFFORT,
};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Exponent of `p` in the nonzero integer `n`.
pub fn vp_int(n: &BigInt, p: &BigInt) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if p <= &BigInt::one() {
        return Err(Error::NotPrime(p.clone()));
    }
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn vp(r: &BigRational, p: &BigInt) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(vp_int(r.numer(), p)? as i64 - vp_int(r.denom(), p)? as i64)
}

pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

/// Square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

pub fn lcm_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, x| {
        if x.is_zero() {
            acc
        } else {
            acc.lcm(x)
        }
    })
}

pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Integer representative of `a mod m` in `[0, m)`.
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Ceiling of `a / b` for `b > 0`.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    u64::try_from(n).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(vp(&rat(5, 4), &int(2)).unwrap(), -2);
        assert_eq!(vp(&rat(45, 1), &int(3)).unwrap(), 2);
        assert_eq!(vp(&rat(1, 3825), &int(17)).unwrap(), -1);
        assert_eq!(vp(&rat(0, 1), &int(3)), Err(Error::ZeroValuation));
    }

    #[test]
    fn ceil_div_signs() {
        assert_eq!(ceil_div(3, 2), 2);
        assert_eq!(ceil_div(-3, 2), -1);
        assert_eq!(ceil_div(4, 2), 2);
        assert_eq!(ceil_div(0, 5), 0);
    }

    #[test]
    fn squares() {
        assert_eq!(exact_sqrt(&int(49)), Some(int(7)));
        assert_eq!(exact_sqrt(&int(50)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
    }
}
