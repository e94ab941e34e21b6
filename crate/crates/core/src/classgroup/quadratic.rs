//! Exact principality in quadratic fields by enumerating the norm form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{exact_sqrt, isqrt};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FractionalIdeal, NumberField};

/// Most norm-form candidates examined by one principality test.
pub const SEARCH_CAP: u64 = 20_000_000;

/// `floor((p + √d) / q)` for non-square `d > 0`.
fn floor_quad(p: &BigInt, q: &BigInt, r: &BigInt) -> BigInt {
    if q.is_positive() {
        (p + r).div_floor(q)
    } else {
        // (p + √d)/q = -(p + √d)/|q|, floor(-y) = -ceil(y)
        let aq = -q;
        -((p + r).div_floor(&aq) + BigInt::one())
    }
}

/// Smallest `(x, y)` with `x, y > 0` and `x² - d y² = ±4`, so that
/// `(x + y√d)/2` is the fundamental unit of the order of discriminant `d`.
/// Continued fraction of `(P0 + √d)/2` with `P0 ≡ d (mod 2)`.
pub fn fundamental_unit(d: &BigInt) -> (BigInt, BigInt) {
    let r = isqrt(d);
    let q0 = BigInt::from(2);
    let p0 = if d.is_odd() { BigInt::one() } else { BigInt::zero() };
    let (mut p, mut q) = (p0.clone(), q0.clone());
    let (mut a2, mut a1) = (BigInt::zero(), BigInt::one());
    let (mut b2, mut b1) = (BigInt::one(), BigInt::zero());
    loop {
        let a = floor_quad(&p, &q, &r);
        let an = &a * &a1 + &a2;
        let bn = &a * &b1 + &b2;
        a2 = std::mem::replace(&mut a1, an);
        b2 = std::mem::replace(&mut b1, bn);
        let pn = &a * &q - &p;
        let qn = (d - &pn * &pn) / &q;
        p = pn;
        q = qn;
        if q == q0 {
            let g = &q0 * &a1 - &p0 * &b1;
            return (g, b1.clone());
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuadraticData {
    pub disc: BigInt,
    pub sqrt_d: FieldElement,
    /// `(x, y, norm)` of the fundamental unit for real fields.
    pub unit: Option<(BigInt, BigInt, i32)>,
}

impl QuadraticData {
    pub fn new(k: &NumberField) -> QuadraticData {
        let g = k.defining_poly();
        let b = g.coeff(1);
        // √Δ = 2θ + b with Δ = index² · disc
        let idx = BigRational::from_integer(k.index().clone());
        let s = k.add(
            &k.scale(&k.generator(), &BigRational::from_integer(BigInt::from(2))),
            &k.from_int(b),
        );
        let sqrt_d = k.scale(&s, &idx.recip());
        let disc = k.discriminant().clone();
        let unit = disc.is_positive().then(|| {
            let (x, y) = fundamental_unit(&disc);
            let nrm = &x * &x - &disc * &y * &y;
            (x, y, if nrm.is_positive() { 1 } else { -1 })
        });
        QuadraticData { disc, sqrt_d, unit }
    }

    pub fn element(&self, k: &NumberField, u: &BigInt, v: &BigInt) -> FieldElement {
        let two = BigInt::from(2);
        k.add(
            &k.from_rational(BigRational::new(u.clone(), two.clone())),
            &k.scale(&self.sqrt_d, &BigRational::new(v.clone(), two)),
        )
    }

    pub fn fundamental_unit(&self, k: &NumberField) -> Option<FieldElement> {
        self.unit.as_ref().map(|(x, y, _)| self.element(k, x, y))
    }

    /// Roots of unity of an imaginary field, or `±1`.
    pub fn torsion_units(&self, k: &NumberField) -> Vec<FieldElement> {
        if self.disc.is_positive() {
            return vec![k.one(), k.from_int(-1)];
        }
        let ad = -&self.disc;
        let mut out = Vec::new();
        let mut v = BigInt::zero();
        while &ad * &v * &v <= BigInt::from(4) {
            let t = BigInt::from(4) - &ad * &v * &v;
            if let Some(u) = exact_sqrt(&t) {
                for (su, sv) in signs(&u, &v) {
                    let e = self.element(k, &su, &sv);
                    if !out.contains(&e) {
                        out.push(e);
                    }
                }
            }
            v += 1;
        }
        out
    }

    /// `|σ₁(a)|² + |σ₂(a)|²`, exactly.
    fn t2(&self, k: &NumberField, a: &FieldElement) -> BigRational {
        if self.disc.is_positive() {
            k.trace(&k.mul(a, a))
        } else {
            k.norm(a) * BigRational::from_integer(BigInt::from(2))
        }
    }

    /// Shortest element of `J` for the `T2` form, by Lagrange reduction.
    fn short_element(&self, k: &NumberField, j: &FractionalIdeal) -> FieldElement {
        let mut b = j.basis_elements(k);
        let (mut b0, mut b1) = (b.remove(0), b.remove(0));
        loop {
            if self.t2(k, &b1) < self.t2(k, &b0) {
                std::mem::swap(&mut b0, &mut b1);
            }
            let q0 = self.t2(k, &b0);
            let cross = (self.t2(k, &k.add(&b0, &b1)) - &q0 - self.t2(k, &b1)) / BigRational::from_integer(BigInt::from(2));
            let mu = (cross / &q0).round();
            if mu.is_zero() {
                return b0;
            }
            b1 = k.sub(&b1, &k.scale(&b0, &mu));
            if self.t2(k, &b1) >= q0 {
                return b0;
            }
        }
    }

    /// Generator of an integral ideal, or `None` when it is not principal.
    ///
    /// Large ideals are first replaced by `J' = (α) J^{-1}` for a short
    /// `α ∈ J`, whose norm is bounded by a multiple of `√|D|`; then
    /// `J = (α / β)` when `J' = (β)`.
    pub fn generator(&self, k: &NumberField, j: &FractionalIdeal) -> Result<Option<FieldElement>> {
        let n = j.norm().to_integer();
        if n > self.disc.abs() {
            let alpha = self.short_element(k, j);
            let other = FractionalIdeal::principal(k, &alpha)?.mul(k, &j.inverse(k));
            if other.norm().to_integer() < n {
                return match self.enumerate(k, &other)? {
                    Some(beta) => Ok(Some(k.div(&alpha, &beta)?)),
                    None => Ok(None),
                };
            }
        }
        self.enumerate(k, j)
    }

    fn enumerate(&self, k: &NumberField, j: &FractionalIdeal) -> Result<Option<FieldElement>> {
        let n = j.norm().to_integer();
        let four_n = BigInt::from(4) * &n;
        let test = |u: &BigInt, v: &BigInt| -> Option<FieldElement> {
            signs(u, v)
                .into_iter()
                .map(|(su, sv)| self.element(k, &su, &sv))
                .find(|a| j.contains(k, a))
        };
        let mut steps = 0u64;
        let mut v = BigInt::zero();
        match &self.unit {
            None => {
                let ad = -&self.disc;
                while &ad * &v * &v <= four_n {
                    let t = &four_n - &ad * &v * &v;
                    if let Some(u) = exact_sqrt(&t) {
                        if let Some(a) = test(&u, &v) {
                            return Ok(Some(a));
                        }
                    }
                    v += 1;
                    steps += 1;
                    if steps > SEARCH_CAP {
                        return Err(Error::EffortExceeded("norm form enumeration".into()));
                    }
                }
            }
            Some((x, y, nu)) => {
                // a generator with 1 <= |α/α'| < ε² has |v|√d <= √N (ε + 1/ε)
                let in_range = |v: &BigInt| -> bool {
                    if *nu == 1 {
                        &self.disc * v * v <= &n * x * x
                    } else {
                        v * v <= &n * y * y
                    }
                };
                while in_range(&v) {
                    let dv = &self.disc * &v * &v;
                    for t in [&dv + &four_n, &dv - &four_n] {
                        if t.is_negative() {
                            continue;
                        }
                        if let Some(u) = exact_sqrt(&t) {
                            if let Some(a) = test(&u, &v) {
                                return Ok(Some(a));
                            }
                        }
                    }
                    v += 1;
                    steps += 1;
                    if steps > SEARCH_CAP {
                        return Err(Error::EffortExceeded("norm form enumeration".into()));
                    }
                }
            }
        }
        Ok(None)
    }
}

fn signs(u: &BigInt, v: &BigInt) -> Vec<(BigInt, BigInt)> {
    let mut out = vec![(u.clone(), v.clone())];
    if !u.is_zero() {
        out.push((-u, v.clone()));
    }
    if !v.is_zero() {
        out.push((u.clone(), -v));
        if !u.is_zero() {
            out.push((-u, -v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn fundamental_units_match_search() {
        for d in [5i64, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44, 53, 56, 57, 60, 61, 65, 69, 73, 76, 77, 85, 88, 89, 92, 93, 97] {
            let dd = int(d);
            let (x, y) = fundamental_unit(&dd);
            // independent search: least y > 0 with d y² ± 4 a square
            let mut yy = BigInt::one();
            let expect = loop {
                let t = &dd * &yy * &yy;
                if let Some(s) = exact_sqrt(&(&t - 4)) {
                    break (s, yy.clone());
                }
                if let Some(s) = exact_sqrt(&(&t + 4)) {
                    break (s, yy.clone());
                }
                yy += 1;
            };
            assert_eq!((x, y), expect, "d = {d}");
        }
    }
}
