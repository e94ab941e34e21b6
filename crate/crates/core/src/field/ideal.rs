//! Fractional ideals of `O_K` as lattices over the integral basis.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{FieldElement, NumberField, PrimeIdeal};
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::linalg::{Lattice, QMat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FractionalIdeal {
    lattice: Lattice,
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .lattice
            .hnf()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        if self.lattice.denominator().is_one() {
            write!(f, "<{}>", rows.join(", "))
        } else {
            write!(f, "1/{} <{}>", self.lattice.denominator(), rows.join(", "))
        }
    }
}

impl FractionalIdeal {
    pub fn from_lattice(lattice: Lattice) -> FractionalIdeal {
        FractionalIdeal { lattice }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn unit(k: &NumberField) -> FractionalIdeal {
        FractionalIdeal::from_lattice(Lattice::standard(k.degree()))
    }

    /// The `O_K`-module generated by the given elements.
    pub fn generated_by(k: &NumberField, elems: &[FieldElement]) -> Result<FractionalIdeal> {
        let n = k.degree();
        let mut rows: QMat = Vec::new();
        for a in elems.iter().filter(|a| !a.is_zero()) {
            let (y, d) = k.integral_numerators(a);
            let dq = BigRational::from_integer(d);
            for j in 0..n {
                let mut u = vec![BigInt::zero(); n];
                u[j] = BigInt::one();
                rows.push(
                    k.mul_integral(&y, &u)
                        .into_iter()
                        .map(|x| BigRational::from_integer(x) / &dq)
                        .collect(),
                );
            }
        }
        Lattice::from_generators(&rows, n)
            .map(FractionalIdeal::from_lattice)
            .ok_or(Error::ZeroIdeal)
    }

    pub fn principal(k: &NumberField, a: &FieldElement) -> Result<FractionalIdeal> {
        FractionalIdeal::generated_by(k, std::slice::from_ref(a))
    }

    pub fn basis_elements(&self, k: &NumberField) -> Vec<FieldElement> {
        self.lattice
            .basis()
            .iter()
            .map(|r| k.from_integral_coords(r))
            .collect()
    }

    pub fn mul(&self, k: &NumberField, o: &FractionalIdeal) -> FractionalIdeal {
        let mut rows = Vec::new();
        for a in self.lattice.hnf() {
            for b in o.lattice.hnf() {
                rows.push(k.mul_integral(a, b));
            }
        }
        let den = self.lattice.denominator() * o.lattice.denominator();
        FractionalIdeal::from_lattice(
            Lattice::from_integer_rows(&rows, den, k.degree()).expect("product of nonzero ideals"),
        )
    }

    pub fn add(&self, o: &FractionalIdeal) -> FractionalIdeal {
        FractionalIdeal::from_lattice(self.lattice.sum(&o.lattice))
    }

    pub fn intersect(&self, o: &FractionalIdeal) -> FractionalIdeal {
        FractionalIdeal::from_lattice(self.lattice.intersect(&o.lattice))
    }

    /// `{x : x I ⊆ O_K}`, the dual of the lattice spanned by the columns of all
    /// multiplication maps by basis elements of `I`.
    pub fn inverse(&self, k: &NumberField) -> FractionalIdeal {
        let n = k.degree();
        let den = BigRational::from_integer(self.lattice.denominator().clone());
        let mut cols: QMat = Vec::new();
        for b in self.lattice.hnf() {
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    let mut u = vec![BigInt::zero(); n];
                    u[i] = BigInt::one();
                    k.mul_integral(&u, b)
                })
                .collect();
            for l in 0..n {
                cols.push(
                    (0..n)
                        .map(|i| BigRational::from_integer(m[i][l].clone()) / &den)
                        .collect(),
                );
            }
        }
        let c = Lattice::from_generators(&cols, n).expect("nonzero ideal");
        FractionalIdeal::from_lattice(c.dual())
    }

    pub fn pow(&self, k: &NumberField, e: i64) -> FractionalIdeal {
        let base = if e < 0 { self.inverse(k) } else { self.clone() };
        let mut r = FractionalIdeal::unit(k);
        for _ in 0..e.unsigned_abs() {
            r = r.mul(k, &base);
        }
        r
    }

    pub fn norm(&self) -> BigRational {
        self.lattice.covolume()
    }

    pub fn is_integral(&self) -> bool {
        self.lattice.is_integral()
    }

    /// Least positive integer `d` with `d I ⊆ O_K`.
    pub fn denominator(&self) -> &BigInt {
        self.lattice.denominator()
    }

    pub fn contains(&self, k: &NumberField, a: &FieldElement) -> bool {
        self.lattice.contains(&k.to_integral_coords(a))
    }

    pub fn is_subset_of(&self, o: &FractionalIdeal) -> bool {
        self.lattice.is_sublattice_of(&o.lattice)
    }

    pub fn valuation(&self, k: &NumberField, pr: &PrimeIdeal) -> Result<i64> {
        let mut best: Option<i64> = None;
        for b in self.basis_elements(k).iter().filter(|b| !b.is_zero()) {
            let v = k.valuation(pr, b)?;
            best = Some(best.map_or(v, |m| m.min(v)));
        }
        best.ok_or(Error::ZeroIdeal)
    }

    /// Rational primes below the support of the ideal.
    pub fn support_primes(&self) -> Result<Vec<BigInt>> {
        let nm = self.norm();
        let mut ps: Vec<BigInt> = factorize(&nm.numer().abs())?.primes().cloned().collect();
        ps.extend(factorize(nm.denom())?.primes().cloned());
        // primes dividing the denominator can cancel in the norm
        ps.extend(factorize(self.denominator())?.primes().cloned());
        ps.sort();
        ps.dedup();
        Ok(ps)
    }

    pub fn factor(&self, k: &NumberField) -> Result<Vec<(PrimeIdeal, i64)>> {
        let mut out = Vec::new();
        for p in self.support_primes()? {
            for pr in k.primes_above(&p)?.iter() {
                let v = self.valuation(k, pr)?;
                if v != 0 {
                    out.push((pr.clone(), v));
                }
            }
        }
        Ok(out)
    }

    /// Product of the primes where the valuation is positive.
    pub fn radical(&self, k: &NumberField) -> Result<FractionalIdeal> {
        let mut r = FractionalIdeal::unit(k);
        for (pr, v) in self.factor(k)? {
            if v > 0 {
                r = r.mul(k, &pr.ideal());
            }
        }
        Ok(r)
    }

    pub fn from_factorization(k: &NumberField, f: &[(PrimeIdeal, i64)]) -> FractionalIdeal {
        f.iter()
            .fold(FractionalIdeal::unit(k), |acc, (pr, v)| acc.mul(k, &pr.ideal().pow(k, *v)))
    }

    pub fn is_unit(&self) -> bool {
        self.lattice == Lattice::standard(self.lattice.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::poly::IntPoly;

    #[test]
    fn ideal_arithmetic_in_gaussian_field() {
        let k = NumberField::new(&IntPoly::from_i64(&[1, 0, 1])).unwrap();
        let a = FractionalIdeal::principal(&k, &k.parse_element("2+x").unwrap()).unwrap();
        assert_eq!(a.norm(), rat(5, 1));
        let inv = a.inverse(&k);
        assert_eq!(inv.norm(), rat(1, 5));
        assert!(a.mul(&k, &inv).is_unit());
        let b = FractionalIdeal::principal(&k, &k.from_int(5)).unwrap();
        assert_eq!(a.intersect(&b), b);
        assert_eq!(a.add(&b), a);
        let r = FractionalIdeal::principal(&k, &k.from_int(12)).unwrap().radical(&k).unwrap();
        // rad(12) = (1+i) * (3)
        assert_eq!(r.norm(), rat(18, 1));
        let f = b.factor(&k).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(FractionalIdeal::from_factorization(&k, &f), b);
        assert_eq!(b.denominator(), &int(1));
        assert!(matches!(FractionalIdeal::principal(&k, &k.zero()), Err(Error::ZeroIdeal)));
    }
}
