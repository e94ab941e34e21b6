//! Maximal order by repeated enlargement at each prime whose square divides
//! the polynomial discriminant (ring of multipliers of the p-radical).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::NumberField;
use crate::arith::{factorize_with, FactorConfig};
use crate::error::{Error, Result};
use crate::linalg::{hnf, identity_q, inverse, row_times, Lattice, QMat, ZMat};
use crate::poly::modp::PrimeField;

pub(super) fn maximal_order(k: &NumberField, cfg: &FactorConfig) -> Result<QMat> {
    let n = k.n;
    let mut basis = identity_q(n);
    if n == 1 {
        return Ok(basis);
    }
    let disc = k.poly_disc.abs();
    let fact = factorize_with(&disc, cfg)?;
    for (p, mult) in fact.factors() {
        if *mult >= 2 {
            basis = p_maximal(k, basis, p)?;
        }
    }
    Ok(lower_canonical(&basis))
}

/// Canonical basis `ω_i = (θ^i + lower terms) / d_i`, so that `ω_0 = 1`.
pub(super) fn lower_canonical(basis: &QMat) -> QMat {
    let n = basis.len();
    let rev: QMat = basis
        .iter()
        .map(|r| r.iter().rev().cloned().collect())
        .collect();
    let l = Lattice::from_generators(&rev, n).expect("full rank basis");
    l.basis()
        .into_iter()
        .rev()
        .map(|r| r.into_iter().rev().collect())
        .collect()
}

/// Structure constants of an order given by a basis in power coordinates.
pub(super) fn order_table(k: &NumberField, basis: &QMat) -> Result<Vec<Vec<Vec<BigInt>>>> {
    let inv = inverse(basis).ok_or_else(|| Error::invalid("singular order basis"))?;
    super::multiplication_table(k, basis, &inv)
        .ok_or_else(|| Error::invalid("order basis is not a ring"))
}

/// Multiplication in `O / pO` from integer structure constants.
pub(crate) struct ResidueAlgebra {
    pub fp: PrimeField,
    pub n: usize,
    table: Vec<Vec<Vec<u64>>>,
}

impl ResidueAlgebra {
    pub fn new(fp: PrimeField, table: &[Vec<Vec<BigInt>>]) -> ResidueAlgebra {
        let t = table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|x| fp.reduce(x)).collect()).collect())
            .collect();
        ResidueAlgebra {
            fp,
            n: table.len(),
            table: t,
        }
    }

    pub fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let fp = &self.fp;
        let mut out = vec![0u64; self.n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = fp.mul(x, y);
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    if t != 0 {
                        *o = fp.add(*o, fp.mul(xy, t));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[u64], mut e: u64, one: &[u64]) -> Vec<u64> {
        let mut r = one.to_vec();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    /// Nilradical: kernel of `x ↦ x^q` with `q = p^j >= n`.
    pub fn radical(&self, one: &[u64]) -> Vec<Vec<u64>> {
        let p = self.fp.p();
        let mut q = p;
        while (q as u128) < self.n as u128 {
            q = q.saturating_mul(p);
        }
        let rows: Vec<Vec<u64>> = (0..self.n).map(|i| self.pow(&self.unit(i), q, one)).collect();
        self.fp.left_kernel(&rows)
    }
}

fn lift(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn scaled_identity(n: usize, p: &BigInt) -> ZMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { p.clone() } else { BigInt::zero() }).collect())
        .collect()
}

fn p_maximal(k: &NumberField, mut basis: QMat, p: &BigInt) -> Result<QMat> {
    let n = k.n;
    let fp = PrimeField::from_big(p)?;
    loop {
        let table = order_table(k, &basis)?;
        let alg = ResidueAlgebra::new(fp, &table);
        let one_q = row_times(&k.one().coords, &inverse(&basis).expect("basis"));
        let one: Vec<u64> = one_q.iter().map(|c| fp.reduce(&c.to_integer())).collect();
        let rad = alg.radical(&one);
        let mut gens = scaled_identity(n, p);
        gens.extend(rad.iter().map(|v| lift(v)));
        let ip = hnf(&gens);
        let ip_lat = Lattice::from_integer_rows(&ip, BigInt::from(1), n).expect("full rank");
        // x in U  <=>  x * I_p ⊆ p I_p
        let mut m: Vec<Vec<u64>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut unit = vec![BigInt::zero(); n];
            unit[i] = BigInt::from(1);
            let mut row = Vec::with_capacity(n * n);
            for b in &ip {
                let prod = mul_with(&table, &unit, b);
                let q: Vec<BigRational> = prod.into_iter().map(BigRational::from_integer).collect();
                let c = ip_lat
                    .coordinates(&q)
                    .ok_or_else(|| Error::invalid("p-radical is not an ideal"))?;
                row.extend(c.iter().map(|x| fp.reduce(x)));
            }
            m.push(row);
        }
        let ker = fp.left_kernel(&m);
        if ker.is_empty() {
            return Ok(basis);
        }
        let mut u = scaled_identity(n, p);
        u.extend(ker.iter().map(|v| lift(v)));
        let u = hnf(&u);
        let pq = BigRational::from_integer(p.clone());
        let rows: QMat = u
            .iter()
            .map(|r| {
                let q: Vec<BigRational> = r.iter().map(|x| BigRational::from_integer(x.clone()) / &pq).collect();
                row_times(&q, &basis)
            })
            .collect();
        basis = Lattice::from_generators(&rows, n).expect("full rank").basis();
    }
}

pub(super) fn mul_with(table: &[Vec<Vec<BigInt>>], u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    let n = table.len();
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in u.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in v.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let xy = x * y;
            for (o, t) in out.iter_mut().zip(&table[i][j]) {
                if !t.is_zero() {
                    *o += &xy * t;
                }
            }
        }
    }
    out
}
