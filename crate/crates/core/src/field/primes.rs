//! Prime ideals of `O_K` above a rational prime, with their valuations.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::round2::{mul_with, ResidueAlgebra};
use super::{FieldElement, FractionalIdeal, NumberField};
use crate::arith::{factorize, is_prime, modulo, vp_int};
use crate::error::{Error, Result};
use crate::linalg::{hnf, Lattice, ZMat};
use crate::poly::format_descending;
use crate::poly::modp::PrimeField;

/// A nonzero prime `P` of `O_K`, stored with a two-element presentation
/// `P = (p, π)` and an element `β` with `β/p` of valuation `-1` at `P` and
/// integral at every other prime.
#[derive(Debug, Clone)]
pub struct PrimeIdeal {
    p: BigInt,
    e: u32,
    f: u32,
    pi: Vec<BigInt>,
    beta: Vec<BigInt>,
    lattice: Lattice,
    inert: bool,
    label: String,
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.lattice == o.lattice
    }
}

impl Eq for PrimeIdeal {}

impl std::hash::Hash for PrimeIdeal {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.lattice.hash(h)
    }
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, o: &Self) -> Ordering {
        (&self.p, self.f, self.e, &self.lattice).cmp(&(&o.p, o.f, o.e, &o.lattice))
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl PrimeIdeal {
    pub fn p(&self) -> &BigInt {
        &self.p
    }

    /// Ramification index.
    pub fn e(&self) -> u32 {
        self.e
    }

    /// Residue degree.
    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn norm(&self) -> BigInt {
        self.p.pow(self.f)
    }

    /// True when `P = pO_K`.
    pub fn is_inert(&self) -> bool {
        self.inert
    }

    pub fn uniformizer(&self, k: &NumberField) -> FieldElement {
        k.from_integer_coords(&self.pi)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ideal(&self) -> FractionalIdeal {
        FractionalIdeal::from_lattice(self.lattice.clone())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Valuation of a nonzero element given by integer coordinates.
    pub fn valuation_integral(&self, k: &NumberField, v: &[BigInt]) -> Result<i64> {
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroValuation);
        }
        Ok(raw_valuation(k.table(), &self.p, &self.beta, v, Some(self.e)))
    }
}

fn all_divisible(v: &[BigInt], p: &BigInt) -> bool {
    v.iter().all(|x| x.is_multiple_of(p))
}

/// `v_P(x)` for integral nonzero `x`; each step multiplies by `β/p` while the
/// product stays integral.
fn raw_valuation(
    table: &[Vec<Vec<BigInt>>],
    p: &BigInt,
    beta: &[BigInt],
    x: &[BigInt],
    e: Option<u32>,
) -> i64 {
    let mut x = x.to_vec();
    let mut v = 0i64;
    loop {
        if let Some(e) = e {
            if all_divisible(&x, p) {
                for c in x.iter_mut() {
                    *c /= p;
                }
                v += i64::from(e);
                continue;
            }
        }
        let y = mul_with(table, &x, beta);
        if !all_divisible(&y, p) {
            return v;
        }
        x = y.into_iter().map(|c| c / p).collect();
        v += 1;
    }
}

impl NumberField {
    /// Primes of `O_K` above the rational prime `p`, in canonical order.
    pub fn primes_above(&self, p: &BigInt) -> Result<Arc<Vec<PrimeIdeal>>> {
        if p <= &BigInt::one() || !is_prime(p) {
            return Err(Error::NotPrime(p.clone()));
        }
        if let Some(v) = self.prime_cache().lock().expect("prime cache").get(p) {
            return Ok(v.clone());
        }
        let list = Arc::new(decompose(self, p)?);
        self.prime_cache()
            .lock()
            .expect("prime cache")
            .insert(p.clone(), list.clone());
        Ok(list)
    }

    pub fn valuation(&self, pr: &PrimeIdeal, a: &FieldElement) -> Result<i64> {
        if a.is_zero() {
            return Err(Error::ZeroValuation);
        }
        let (y, d) = self.integral_numerators(a);
        let vy = pr.valuation_integral(self, &y)?;
        let vd = vp_int(&d, &pr.p)? as i64;
        Ok(vy - i64::from(pr.e) * vd)
    }

    /// Rational primes at which `a` may have nonzero valuation.
    pub fn support_primes(&self, a: &FieldElement) -> Result<Vec<BigInt>> {
        if a.is_zero() {
            return Err(Error::ZeroValuation);
        }
        let (y, d) = self.integral_numerators(a);
        let ny = self.norm(&self.from_integer_coords(&y)).to_integer();
        let mut ps: Vec<BigInt> = factorize(&ny.abs())?.primes().cloned().collect();
        ps.extend(factorize(&d)?.primes().cloned());
        ps.sort();
        ps.dedup();
        Ok(ps)
    }

    /// Nonzero valuations of `a`.
    pub fn factor_element(&self, a: &FieldElement) -> Result<Vec<(PrimeIdeal, i64)>> {
        let mut out = Vec::new();
        for p in self.support_primes(a)? {
            for pr in self.primes_above(&p)?.iter() {
                let v = self.valuation(pr, a)?;
                if v != 0 {
                    out.push((pr.clone(), v));
                }
            }
        }
        Ok(out)
    }
}

fn rank_of(fp: &PrimeField, rows: &[Vec<u64>]) -> usize {
    if rows.is_empty() {
        0
    } else {
        fp.rank(rows)
    }
}

struct Splitter<'a> {
    alg: &'a ResidueAlgebra,
    radical: Vec<Vec<u64>>,
    one: Vec<u64>,
    rng: ChaCha8Rng,
}

impl Splitter<'_> {
    fn with_radical(&self, extra: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut v = self.radical.clone();
        v.extend_from_slice(extra);
        v
    }

    /// Maximal ideals (as spanning sets mod p) with residue degrees, for the
    /// component of `A / rad` cut out by the idempotent `e`.
    fn split(&mut self, e: &[u64]) -> Vec<(Vec<Vec<u64>>, u32)> {
        let alg = self.alg;
        let fp = &alg.fp;
        let n = alg.n;
        let mut cur = self.radical.clone();
        let mut base = rank_of(fp, &cur);
        let mut comp: Vec<Vec<u64>> = Vec::new();
        for i in 0..n {
            let v = alg.mul(e, &alg.unit(i));
            cur.push(v.clone());
            let r = rank_of(fp, &cur);
            if r > base {
                base = r;
                comp.push(v);
            } else {
                cur.pop();
            }
        }
        let k = comp.len();
        // Berlekamp subalgebra: x^p - x in the radical
        let p = fp.p();
        let mut stacked: Vec<Vec<u64>> = comp
            .iter()
            .map(|c| {
                let cp = alg.pow(c, p, &self.one);
                c.iter().zip(&cp).map(|(&a, &b)| fp.sub(b, a)).collect()
            })
            .collect();
        stacked.extend(self.radical.iter().cloned());
        let ker: Vec<Vec<u64>> = fp
            .left_kernel(&stacked)
            .into_iter()
            .map(|v| v[..k].to_vec())
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        let r = rank_of(fp, &ker);
        let complement: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let u = alg.unit(i);
                let eu = alg.mul(e, &u);
                u.iter().zip(&eu).map(|(&a, &b)| fp.sub(a, b)).collect()
            })
            .collect();
        if r <= 1 {
            return vec![(self.with_radical(&complement), k as u32)];
        }
        let span_e = rank_of(fp, &self.with_radical(&[e.to_vec()]));
        let x = ker
            .iter()
            .map(|c| {
                let mut x = vec![0u64; n];
                for (cj, v) in c.iter().zip(&comp) {
                    for (xi, vi) in x.iter_mut().zip(v) {
                        *xi = fp.add(*xi, fp.mul(*cj, *vi));
                    }
                }
                x
            })
            .find(|x| rank_of(fp, &self.with_radical(&[e.to_vec(), x.clone()])) > span_e)
            .expect("Berlekamp subalgebra larger than the scalars");
        // minimal polynomial of x in the component, modulo the radical
        let mut powers = vec![e.to_vec()];
        let minpoly = loop {
            let next = alg.mul(powers.last().unwrap(), &x);
            powers.push(next);
            let deg = powers.len() - 1;
            let ker = fp.left_kernel(&self.with_radical_front(&powers));
            if let Some(v) = ker.into_iter().find(|v| v[deg] != 0) {
                let inv = fp.inv(v[deg]);
                break v[..=deg].iter().map(|&c| fp.mul(c, inv)).collect::<Vec<u64>>();
            }
        };
        let roots = fp.split_roots(&minpoly, &mut self.rng);
        let mut out = Vec::new();
        for &c in &roots {
            let mut ec = e.to_vec();
            for &c2 in roots.iter().filter(|&&c2| c2 != c) {
                let shifted: Vec<u64> = x
                    .iter()
                    .zip(e)
                    .map(|(&xi, &ei)| fp.sub(xi, fp.mul(c2, ei)))
                    .collect();
                let s = fp.inv(fp.sub(c, c2));
                ec = alg.mul(&ec, &shifted).iter().map(|&t| fp.mul(t, s)).collect();
            }
            out.extend(self.split(&ec));
        }
        out
    }

    fn with_radical_front(&self, rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut v = rows.to_vec();
        v.extend(self.radical.iter().cloned());
        v
    }
}

fn decompose(k: &NumberField, p: &BigInt) -> Result<Vec<PrimeIdeal>> {
    let n = k.degree();
    let fp = PrimeField::from_big(p)?;
    let alg = ResidueAlgebra::new(fp, k.table());
    let (one_big, _) = k.integral_numerators(&k.one());
    let one: Vec<u64> = one_big.iter().map(|x| fp.reduce(x)).collect();
    let radical = alg.radical(&one);
    let mut sp = Splitter {
        alg: &alg,
        radical,
        one: one.clone(),
        rng: ChaCha8Rng::seed_from_u64(0x5eed),
    };
    let maximal = sp.split(&one);
    let mut out = Vec::new();
    for (span, f) in maximal {
        let mut gens = p_identity(n, p);
        gens.extend(span.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()));
        let lattice = Lattice::from_integer_rows(&hnf(&gens), BigInt::one(), n)
            .expect("contains pO");
        out.push(build_prime(k, p, lattice, f)?);
    }
    out.sort();
    let total: u32 = out.iter().map(|q| q.e * q.f).sum();
    if total as usize != n {
        return Err(Error::invalid(format!(
            "prime decomposition of {p} is inconsistent: sum of e*f is {total}, degree {n}"
        )));
    }
    Ok(out)
}

fn p_identity(n: usize, p: &BigInt) -> ZMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { p.clone() } else { BigInt::zero() }).collect())
        .collect()
}

fn two_element_lattice(k: &NumberField, p: &BigInt, pi: &[BigInt]) -> Option<Lattice> {
    let n = k.degree();
    let mut gens = p_identity(n, p);
    for i in 0..n {
        let mut u = vec![BigInt::zero(); n];
        u[i] = BigInt::one();
        gens.push(mul_with(k.table(), pi, &u));
    }
    Lattice::from_integer_rows(&gens, BigInt::one(), n)
}

/// Rows of the lattice basis with the pivot in the highest coordinate, so that
/// the natural candidates look like `x + 2` rather than `1 + 3x`.
fn lower_rows(l: &Lattice) -> ZMat {
    let rev: ZMat = l.hnf().iter().map(|r| r.iter().rev().cloned().collect()).collect();
    hnf(&rev)
        .into_iter()
        .map(|r| r.into_iter().rev().collect())
        .collect()
}

fn build_prime(k: &NumberField, p: &BigInt, lattice: Lattice, f: u32) -> Result<PrimeIdeal> {
    let n = k.degree();
    let full = Lattice::from_integer_rows(&p_identity(n, p), BigInt::one(), n).expect("pO");
    let inert = lattice == full;
    let pi: Vec<BigInt> = if inert {
        k.integral_numerators(&k.from_int(p.clone())).0
    } else {
        find_uniformizer(k, p, &lattice)?
    };
    let fp = PrimeField::from_big(p)?;
    // β: nonzero mod p with β π ≡ 0 (mod p)
    let m: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut u = vec![BigInt::zero(); n];
            u[i] = BigInt::one();
            mul_with(k.table(), &u, &pi).iter().map(|x| fp.reduce(x)).collect()
        })
        .collect();
    let ker = fp.left_kernel(&m);
    let beta: Vec<BigInt> = ker
        .first()
        .ok_or_else(|| Error::invalid("uniformizer is a unit mod p"))?
        .iter()
        .map(|&x| BigInt::from(x))
        .collect();
    let (p_coords, _) = k.integral_numerators(&k.from_int(p.clone()));
    let e = raw_valuation(k.table(), p, &beta, &p_coords, None);
    let e = u32::try_from(e).map_err(|_| Error::invalid("ramification index overflow"))?;
    let label = if inert {
        format!("({p})")
    } else {
        let pe = k.from_integer_coords(&pi);
        format!("({p}, {})", format_descending(pe.coords(), "x"))
    };
    Ok(PrimeIdeal {
        p: p.clone(),
        e,
        f,
        pi,
        beta,
        lattice,
        inert,
        label,
    })
}

fn find_uniformizer(k: &NumberField, p: &BigInt, lattice: &Lattice) -> Result<Vec<BigInt>> {
    let n = k.degree();
    let rows: ZMat = lower_rows(lattice)
        .into_iter()
        .rev()
        .map(|r| r.iter().map(|x| modulo(x, p)).collect())
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let check = |cand: &[BigInt]| -> bool {
        cand.iter().any(|x| !x.is_zero())
            && two_element_lattice(k, p, cand).as_ref() == Some(lattice)
    };
    let reduce = |v: Vec<BigInt>| -> Vec<BigInt> { v.iter().map(|x| modulo(x, p)).collect() };
    for r in &rows {
        if check(r) {
            return Ok(r.clone());
        }
    }
    let m = rows.len();
    for bound in 1i64..=2 {
        let mut coef = vec![-bound; m];
        loop {
            if coef.iter().any(|c| c.abs() == bound) {
                let mut v = vec![BigInt::zero(); n];
                for (c, r) in coef.iter().zip(&rows) {
                    for (vi, ri) in v.iter_mut().zip(r) {
                        *vi += ri * c;
                    }
                }
                let v = reduce(v);
                if check(&v) {
                    return Ok(v);
                }
            }
            let mut i = 0;
            while i < m && coef[i] == bound {
                coef[i] = -bound;
                i += 1;
            }
            if i == m {
                break;
            }
            coef[i] += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b9);
    for _ in 0..20_000 {
        let mut v = vec![BigInt::zero(); n];
        for r in &rows {
            let c = BigInt::from(rng.gen_range(-50i64..=50));
            for (vi, ri) in v.iter_mut().zip(r) {
                *vi += ri * &c;
            }
        }
        let v = reduce(v);
        if check(&v) {
            return Ok(v);
        }
    }
    Err(Error::EffortExceeded(format!("no two-element presentation found above {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::poly::IntPoly;
    use num_rational::BigRational;

    fn field(c: &[i64]) -> Arc<NumberField> {
        NumberField::new(&IntPoly::from_i64(c)).unwrap()
    }

    fn labels(k: &NumberField, p: i64) -> Vec<(String, u32, u32)> {
        k.primes_above(&int(p))
            .unwrap()
            .iter()
            .map(|q| (q.to_string(), q.e(), q.f()))
            .collect()
    }

    #[test]
    fn gaussian_splitting() {
        let k = field(&[1, 0, 1]);
        assert_eq!(
            labels(&k, 5),
            vec![("(5, x+3)".into(), 1, 1), ("(5, x+2)".into(), 1, 1)]
        );
        assert_eq!(labels(&k, 2), vec![("(2, x+1)".into(), 2, 1)]);
        assert_eq!(labels(&k, 3), vec![("(3)".into(), 1, 2)]);
    }

    #[test]
    fn valuations_in_gaussian_field() {
        let k = field(&[1, 0, 1]);
        let ps = k.primes_above(&int(5)).unwrap();
        let g = k.parse_element("1/(2+x)").unwrap();
        let vals: Vec<i64> = ps.iter().map(|q| k.valuation(q, &g).unwrap()).collect();
        let mut sorted = vals.clone();
        sorted.sort();
        assert_eq!(sorted, vec![-1, 0]);
        let two = k.primes_above(&int(2)).unwrap();
        assert_eq!(k.valuation(&two[0], &k.from_int(8)).unwrap(), 6);
        assert_eq!(k.valuation(&two[0], &k.parse_element("1+x").unwrap()).unwrap(), 1);
        assert!(matches!(k.valuation(&two[0], &k.zero()), Err(Error::ZeroValuation)));
    }

    #[test]
    fn factorization_of_elements() {
        let k = field(&[1, 0, 1]);
        let a = k.parse_element("(60+15*x)/7").unwrap();
        let f = k.factor_element(&a).unwrap();
        let norm: BigRational = f
            .iter()
            .map(|(q, v)| BigRational::from_integer(q.norm()).pow(*v as i32))
            .product();
        assert_eq!(norm, k.norm(&a).abs());
    }

    #[test]
    fn splitting_in_higher_degree() {
        // x^3 - 2: 5 = P1 * P2 with f = 1, 2; 3 and 2 totally ramified
        let k = field(&[-2, 0, 0, 1]);
        let fs: Vec<u32> = k.primes_above(&int(5)).unwrap().iter().map(|q| q.f()).collect();
        assert_eq!(fs, vec![1, 2]);
        assert_eq!(labels(&k, 3).len(), 1);
        assert_eq!(labels(&k, 3)[0].1, 3);
        assert_eq!(labels(&k, 2)[0].1, 3);
        // Q(zeta_8): 17 splits completely, 3 into two primes of degree 2
        let k = field(&[1, 0, 0, 0, 1]);
        assert_eq!(labels(&k, 17).len(), 4);
        assert!(labels(&k, 3).iter().all(|l| l.2 == 2));
        assert_eq!(labels(&k, 2), vec![("(2, x+1)".into(), 4, 1)]);
        // sqrt 5 field: 2 inert, 5 ramified, 11 split
        let k = field(&[-5, 0, 1]);
        assert_eq!(labels(&k, 2)[0].2, 2);
        assert_eq!(labels(&k, 5)[0].1, 2);
        assert_eq!(labels(&k, 11).len(), 2);
    }

    #[test]
    fn large_prime_splitting() {
        let k = field(&[1, 0, 1]);
        let p = int(1_000_000_007);
        let ps = k.primes_above(&p).unwrap();
        assert_eq!(ps.len(), 1);
        let p = int(1_000_000_009);
        let ps = k.primes_above(&p).unwrap();
        assert_eq!(ps.len(), 2);
    }
}
