//! Arithmetic in F_p and F_p[x] for word-sized primes.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{Error, Result};

/// Polynomial over F_p, lowest degree first, trimmed.
pub type FpPoly = Vec<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> PrimeField {
        assert!((2..(1 << 62)).contains(&p), "modulus out of range");
        PrimeField { p }
    }

    /// Field for a prime given as a big integer; word-sized primes only.
    pub fn from_big(p: &BigInt) -> Result<PrimeField> {
        match p.to_u64() {
            Some(v) if (2..(1 << 62)).contains(&v) => Ok(PrimeField::new(v)),
            _ => Err(Error::Unsupported(format!(
                "residue characteristic {p} exceeds the word-sized limit 2^62"
            ))),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, a: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((a % &m) + &m) % &m;
        r.to_u64().expect("reduced value fits")
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in F_p");
        self.pow(a, self.p - 2)
    }

    pub fn trim(f: &mut FpPoly) {
        while f.last() == Some(&0) {
            f.pop();
        }
    }

    pub fn poly_from_int(&self, coeffs: &[BigInt]) -> FpPoly {
        let mut f: FpPoly = coeffs.iter().map(|c| self.reduce(c)).collect();
        Self::trim(&mut f);
        f
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let mut r: FpPoly = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut r);
        r
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let mut r: FpPoly = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut r);
        r
    }

    pub fn poly_scale(&self, a: &[u64], k: u64) -> FpPoly {
        let mut r: FpPoly = a.iter().map(|&c| self.mul(c, k)).collect();
        Self::trim(&mut r);
        r
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = self.add(r[i + j], self.mul(x, y));
            }
        }
        Self::trim(&mut r);
        r
    }

    pub fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        let mut r = a.to_vec();
        Self::trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(c, bj));
                }
            }
            q[k] = c;
        }
        Self::trim(&mut q);
        Self::trim(&mut r);
        (q, r)
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        self.poly_divrem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.poly_scale(a, self.inv(l)),
        }
    }

    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn poly_xgcd(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        Self::trim(&mut r0);
        Self::trim(&mut r1);
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let l = *r0.last().expect("gcd of two zero polynomials");
        let li = self.inv(l);
        (
            self.poly_scale(&r0, li),
            self.poly_scale(&s0, li),
            self.poly_scale(&t0, li),
        )
    }

    pub fn derivative(&self, a: &[u64]) -> FpPoly {
        let mut r: FpPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, (i as u64) % self.p))
            .collect();
        Self::trim(&mut r);
        r
    }

    pub fn powmod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> FpPoly {
        let mut r = self.poly_rem(&[1], m);
        let b = self.poly_rem(base, m);
        for i in (0..e.bits()).rev() {
            r = self.poly_rem(&self.poly_mul(&r, &r), m);
            if e.bit(i) {
                r = self.poly_rem(&self.poly_mul(&r, &b), m);
            }
        }
        r
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        let d = self.derivative(f);
        if d.is_empty() {
            return false;
        }
        self.poly_gcd(f, &d).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial: `(product, degree)`.
    pub fn ddf(&self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let x: FpPoly = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut h = x.clone();
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            h = self.powmod(&h, &p, &f);
            let g = self.poly_gcd(&self.poly_sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.poly_divrem(&f, &g).0;
                h = self.poly_rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Split a monic product of distinct degree-`d` irreducibles.
    pub fn edf<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        loop {
            let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            Self::trim(&mut a);
            if a.len() < 2 {
                continue;
            }
            let g = self.poly_gcd(&a, f);
            let cand = if g.len() > 1 && g.len() < f.len() {
                g
            } else if self.p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = a.clone();
                let mut s = a.clone();
                for _ in 1..d {
                    s = self.poly_rem(&self.poly_mul(&s, &s), f);
                    t = self.poly_add(&t, &s);
                }
                self.poly_gcd(&t, f)
            } else {
                let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
                let b = self.poly_sub(&self.powmod(&a, &e, f), &[1]);
                self.poly_gcd(&b, f)
            };
            if cand.len() > 1 && cand.len() < f.len() {
                let other = self.poly_divrem(f, &cand).0;
                let mut out = self.edf(&cand, d, rng);
                out.extend(self.edf(&self.monic(&other), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted.
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out.sort();
        out
    }

    /// Distinct roots of a polynomial that splits into distinct linear factors.
    pub fn split_roots<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<u64> {
        let f = self.monic(f);
        if self.p <= 1000 {
            return (0..self.p)
                .filter(|&c| self.eval(&f, c) == 0)
                .collect();
        }
        let mut roots: Vec<u64> = self
            .edf(&f, 1, rng)
            .iter()
            .map(|g| self.neg(g[0]))
            .collect();
        roots.sort();
        roots
    }

    pub fn eval(&self, f: &[u64], x: u64) -> u64 {
        f.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&self, m: &mut [Vec<u64>]) -> Vec<usize> {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut piv = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, p);
            let inv = self.inv(m[r][c]);
            for v in m[r].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, m[r][j]);
                        m[i][j] = self.sub(m[i][j], t);
                    }
                }
            }
            piv.push(c);
            r += 1;
        }
        piv
    }

    /// Basis of `{x : x M = 0}` over F_p.
    pub fn left_kernel(&self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut t: Vec<Vec<u64>> = (0..cols).map(|j| (0..rows).map(|i| m[i][j]).collect()).collect();
        if t.is_empty() {
            return (0..rows)
                .map(|i| (0..rows).map(|j| u64::from(i == j)).collect())
                .collect();
        }
        let piv = self.rref(&mut t);
        (0..rows)
            .filter(|c| !piv.contains(c))
            .map(|f| {
                let mut v = vec![0u64; rows];
                v[f] = 1;
                for (i, &pc) in piv.iter().enumerate() {
                    v[pc] = self.neg(t[i][f]);
                }
                v
            })
            .collect()
    }

    pub fn rank(&self, m: &[Vec<u64>]) -> usize {
        let mut c = m.to_vec();
        self.rref(&mut c).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_mod_p_multiply_back() {
        let fp = PrimeField::new(7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^4 + 1 splits into quadratics mod 7
        let f = vec![1, 0, 0, 0, 1];
        let fs = fp.factor_squarefree(&f, &mut rng);
        assert_eq!(fs.len(), 2);
        let prod = fs.iter().fold(vec![1u64], |acc, g| fp.poly_mul(&acc, g));
        assert_eq!(prod, f);
        let fp2 = PrimeField::new(2);
        let g = vec![1, 1, 0, 1, 0, 1, 1]; // a squarefree sextic over F_2
        if fp2.is_squarefree(&g) {
            let fs = fp2.factor_squarefree(&g, &mut rng);
            let prod = fs.iter().fold(vec![1u64], |acc, h| fp2.poly_mul(&acc, h));
            assert_eq!(prod, g);
        }
    }

    #[test]
    fn xgcd_identity() {
        let fp = PrimeField::new(11);
        let a = vec![3, 1, 4, 1];
        let b = vec![5, 9, 2];
        let (g, s, t) = fp.poly_xgcd(&a, &b);
        let lhs = fp.poly_add(&fp.poly_mul(&s, &a), &fp.poly_mul(&t, &b));
        assert_eq!(lhs, g);
    }

    #[test]
    fn roots_of_split_polynomial() {
        let fp = PrimeField::new(1_000_003);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = fp.poly_mul(&[fp.neg(5), 1], &[fp.neg(77), 1]);
        assert_eq!(fp.split_roots(&f, &mut rng), vec![5, 77]);
    }

    #[test]
    fn kernel_mod_p() {
        let fp = PrimeField::new(5);
        let m = vec![vec![1, 2], vec![2, 4], vec![0, 1]];
        let k = fp.left_kernel(&m);
        assert_eq!(k.len(), 1);
        for j in 0..2 {
            let s = (0..3).fold(0, |acc, i| fp.add(acc, fp.mul(k[0][i], m[i][j])));
            assert_eq!(s, 0);
        }
    }
}
