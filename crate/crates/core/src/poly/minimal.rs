use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::factor::{is_irreducible, Irreducibility};
use super::{IntPoly, QPoly};
use crate::arith::{ceil_div, factorize, gcd_all, vp_int};
use crate::error::{Error, Result};

/// Primitive irreducible integer polynomial with positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalPolynomial {
    poly: IntPoly,
}

impl MinimalPolynomial {
    /// Accepts an integer polynomial that already satisfies every invariant.
    pub fn from_int_poly(f: &IntPoly) -> Result<MinimalPolynomial> {
        if f.is_zero() || f.degree() == 0 {
            return Err(Error::invalid("a minimal polynomial has degree at least one"));
        }
        if *f != f.primitive_part() {
            return Err(Error::invalid(format!(
                "`{f}` is not primitive with positive leading coefficient"
            )));
        }
        if let Irreducibility::Reducible(factor) = is_irreducible(f) {
            return Err(Error::Reducible { factor });
        }
        Ok(MinimalPolynomial { poly: f.clone() })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// Coefficient `a_i`.
    pub fn a(&self, i: usize) -> BigInt {
        self.poly.coeff(i)
    }

    pub fn leading(&self) -> BigInt {
        self.poly.leading()
    }

    /// The monic rational polynomial with the same roots.
    pub fn monic(&self) -> QPoly {
        self.poly.to_q().monic()
    }
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Unique primitive integer multiple with positive leading coefficient, after
/// checking irreducibility over Q.
pub fn normalize(p: &QPoly) -> Result<MinimalPolynomial> {
    if p.is_zero() {
        return Err(Error::invalid("the zero polynomial has no minimal form"));
    }
    if p.degree() == 0 {
        return Err(Error::invalid("a nonzero constant has no roots"));
    }
    let f = p.to_primitive();
    if let Irreducibility::Reducible(factor) = is_irreducible(&f) {
        return Err(Error::Reducible { factor });
    }
    Ok(MinimalPolynomial { poly: f })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantReport {
    pub c: BigInt,
    pub d: BigInt,
    pub e: BigInt,
    pub n: usize,
}

impl InvariantReport {
    /// `d | c`, `c | d^n`, `e | c`, `c | d^(n-1) e`.
    pub fn divisibilities_hold(&self) -> bool {
        let n = self.n as u32;
        (&self.c % &self.d).is_zero()
            && (self.d.pow(n) % &self.c).is_zero()
            && (&self.c % &self.e).is_zero()
            && ((self.d.pow(n - 1) * &self.e) % &self.c).is_zero()
    }
}

/// `c = a_n`, `e = gcd(a_1..a_n)`, and `d` prime by prime from the ceiling formula.
pub fn invariants(f: &MinimalPolynomial) -> InvariantReport {
    let n = f.degree();
    let c = f.leading();
    let e = gcd_all(&f.poly.coeffs()[1..]);
    let mut d = BigInt::one();
    let fac = factorize(&c).expect("leading coefficient factors within the default effort");
    for (p, _) in fac.factors() {
        let vn = vp_int(&c, p).expect("c is nonzero") as i64;
        let mut v = 0i64;
        for j in 0..n {
            let aj = f.a(j);
            if aj.is_zero() {
                continue;
            }
            let vj = vp_int(&aj, p).expect("nonzero") as i64;
            v = v.max(ceil_div(vn - vj, (n - j) as i64));
        }
        d *= p.pow(v as u32);
    }
    InvariantReport { c, d, e, n }
}

/// Least `k | c` such that the minimal polynomial of `k*gamma` is monic.
pub fn smallest_denominator_bruteforce(f: &MinimalPolynomial) -> BigInt {
    let c = f.leading();
    let mut k = BigInt::one();
    loop {
        if c.is_multiple_of(&k) {
            let scaled = f.poly.scale_roots(&k).primitive_part();
            if scaled.is_monic() {
                return k;
            }
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn mp(c: &[i64]) -> MinimalPolynomial {
        MinimalPolynomial::from_int_poly(&IntPoly::from_i64(c)).unwrap()
    }

    #[test]
    fn normalization_examples() {
        let q = QPoly::new(vec![rat(1, 5), rat(-4, 5), rat(1, 1)]);
        assert_eq!(normalize(&q).unwrap().poly(), &IntPoly::from_i64(&[1, -4, 5]));
        let q = QPoly::new(vec![rat(1, 2), rat(-1, 1)]);
        assert_eq!(normalize(&q).unwrap().poly(), &IntPoly::from_i64(&[-1, 2]));
        let q = QPoly::new(vec![rat(1, 3825), rat(-8, 255), rat(1, 1)]);
        assert_eq!(normalize(&q).unwrap().poly(), &IntPoly::from_i64(&[1, -120, 3825]));
        let r = normalize(&IntPoly::from_i64(&[-1, 0, 1]).to_q());
        assert_eq!(
            r,
            Err(Error::Reducible {
                factor: IntPoly::from_i64(&[-1, 1])
            })
        );
    }

    #[test]
    fn invariant_examples() {
        let r = invariants(&mp(&[1, -4, 5]));
        assert_eq!((r.c, r.d, r.e, r.n), (int(5), int(5), int(1), 2));
        let r = invariants(&mp(&[-1, 2]));
        assert_eq!((r.c, r.d, r.e, r.n), (int(2), int(2), int(2), 1));
        let r = invariants(&mp(&[1, -120, 3825]));
        assert_eq!((r.c.clone(), r.d.clone(), r.e.clone(), r.n), (int(3825), int(255), int(15), 2));
        assert!(r.divisibilities_hold());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(smallest_denominator_bruteforce(&mp(&[1, -4, 5])), int(5));
        assert_eq!(smallest_denominator_bruteforce(&mp(&[7, 0, 0, 1])), int(1));
        assert_eq!(smallest_denominator_bruteforce(&mp(&[3, 6, 4])), int(2));
        assert_eq!(smallest_denominator_bruteforce(&mp(&[1, -120, 3825])), int(255));
    }
}
