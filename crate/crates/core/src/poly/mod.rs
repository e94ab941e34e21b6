//! Integer and rational univariate polynomials.

mod factor;
mod minimal;
pub mod modp;
pub mod parse;

pub use factor::{factor_over_z, factor_squarefree, is_irreducible, Irreducibility};
pub use minimal::{
    invariants, normalize, smallest_denominator_bruteforce, InvariantReport, MinimalPolynomial,
};
pub use parse::{parse_int_poly, parse_rational_poly};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{common_denominator, gcd_all};
use crate::linalg::{det, QMat};

/// Polynomial with integer coefficients, stored lowest degree first with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Polynomial with rational coefficients, stored lowest degree first with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn monomial(c: BigInt, k: usize) -> IntPoly {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        IntPoly::new(v)
    }

    pub fn x() -> IntPoly {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn content(&self) -> BigInt {
        gcd_all(&self.coeffs)
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn to_q(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        )
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Exact quotient `self / d` over Z, if `d` divides `self` in Z[x].
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::default());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dl = d.leading();
        let dn = d.degree();
        let mut q = vec![BigInt::zero(); self.degree() - dn + 1];
        for k in (0..q.len()).rev() {
            let top = &rem[k + dn];
            let (qq, r) = top.div_rem(&dl);
            if !r.is_zero() {
                return None;
            }
            if !qq.is_zero() {
                for (j, c) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &qq * c;
                }
            }
            q[k] = qq;
        }
        rem.iter().all(|c| c.is_zero()).then(|| IntPoly::new(q))
    }

    /// `c^n f(x/c)`-style rescaling: coefficient i multiplied by `k^(n-i)`.
    pub fn scale_roots(&self, k: &BigInt) -> IntPoly {
        let n = self.degree();
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * k.pow((n - i) as u32))
                .collect(),
        )
    }

    pub fn discriminant(&self) -> BigInt {
        let q = self.to_q();
        q.discriminant().to_integer()
    }

    pub fn display_var(&self, var: &str) -> String {
        format_descending(
            &self
                .coeffs
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect::<Vec<_>>(),
            var,
        )
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::default();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn constant(c: BigRational) -> QPoly {
        QPoly::new(vec![c])
    }

    pub fn x() -> QPoly {
        QPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        QPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, k: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let (_, fs) = factor_over_z(&self.to_primitive());
        let mut out: Vec<BigRational> = fs
            .iter()
            .filter(|(g, _)| g.degree() == 1)
            .map(|(g, _)| BigRational::new(-g.coeff(0), g.coeff(1)))
            .collect();
        out.sort();
        out
    }

    /// Primitive integer polynomial with positive leading coefficient and the same roots.
    pub fn to_primitive(&self) -> IntPoly {
        let d = common_denominator(&self.coeffs);
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Number of distinct real roots, by a Sturm sequence.
    pub fn count_real_roots(&self) -> usize {
        if self.degree() == 0 || self.is_zero() {
            return 0;
        }
        let g = self.gcd(&self.derivative());
        let f = self.divrem(&g).0;
        let mut seq = vec![f.clone(), f.derivative()];
        while !seq.last().unwrap().is_zero() && seq.last().unwrap().degree() > 0 {
            let n = seq.len();
            let r = seq[n - 2].divrem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        let changes = |signs: Vec<i32>| {
            let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
            s.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let sign = |c: &BigRational| if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 };
        let at_pos: Vec<i32> = seq.iter().map(|p| sign(&p.leading())).collect();
        let at_neg: Vec<i32> = seq
            .iter()
            .map(|p| sign(&p.leading()) * if p.degree() % 2 == 0 { 1 } else { -1 })
            .collect();
        changes(at_neg) - changes(at_pos)
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (QPoly::default(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dn = d.degree();
        let inv = d.leading().recip();
        let mut q = vec![BigRational::zero(); self.degree() - dn + 1];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dn] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        (QPoly::new(q), QPoly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, k: u32) -> QPoly {
        (0..k).fold(QPoly::constant(BigRational::one()), |acc, _| &acc * self)
    }

    pub fn discriminant(&self) -> BigRational {
        let n = self.degree();
        if n == 0 {
            return BigRational::one();
        }
        let res = resultant(self, &self.derivative());
        let sign = if (n * (n - 1) / 2).is_multiple_of(2) {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        sign * res / self.leading()
    }

    pub fn display_var(&self, var: &str) -> String {
        format_descending(&self.coeffs, var)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::default();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::new(v)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Resultant via the Sylvester determinant.
pub fn resultant(f: &QPoly, g: &QPoly) -> BigRational {
    let (m, n) = (f.degree(), g.degree());
    if f.is_zero() || g.is_zero() {
        return BigRational::zero();
    }
    let size = m + n;
    if size == 0 {
        return BigRational::one();
    }
    let mut s: QMat = vec![vec![BigRational::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            s[i][i + j] = f.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            s[n + i][i + j] = g.coeff(n - j);
        }
    }
    det(&s)
}

pub fn format_descending(coeffs: &[BigRational], var: &str) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

/// Ascending rendering used for field elements: `4+x`, `1/2-3*x^2`.
pub fn format_ascending(coeffs: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn display_forms() {
        assert_eq!(IntPoly::from_i64(&[1, -4, 5]).to_string(), "5*x^2-4*x+1");
        assert_eq!(IntPoly::from_i64(&[1, 0, 1]).to_string(), "x^2+1");
        assert_eq!(IntPoly::from_i64(&[0, -1]).to_string(), "-x");
        assert_eq!(IntPoly::default().to_string(), "0");
        assert_eq!(
            format_ascending(&[rat(4, 1), rat(1, 1)], "x"),
            "4+x".to_string()
        );
    }

    #[test]
    fn exact_division() {
        let f = IntPoly::from_i64(&[-1, 0, 1]);
        let g = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(f.div_exact(&g), Some(IntPoly::from_i64(&[1, 1])));
        assert_eq!(f.div_exact(&IntPoly::from_i64(&[1, 2])), None);
    }

    #[test]
    fn discriminants() {
        assert_eq!(IntPoly::from_i64(&[1, 0, 1]).discriminant(), BigInt::from(-4));
        assert_eq!(IntPoly::from_i64(&[-5, 0, 1]).discriminant(), BigInt::from(20));
        assert_eq!(IntPoly::from_i64(&[1, 1, 1, 1, 1]).discriminant(), BigInt::from(125));
        assert_eq!(IntPoly::from_i64(&[-2, 0, 0, 1]).discriminant(), BigInt::from(-108));
    }

    #[test]
    fn rational_gcd() {
        let a = &IntPoly::from_i64(&[-1, 1]).to_q() * &IntPoly::from_i64(&[2, 1]).to_q();
        let b = &IntPoly::from_i64(&[-1, 1]).to_q() * &IntPoly::from_i64(&[3, 1]).to_q();
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[-1, 1]).to_q());
    }
}
