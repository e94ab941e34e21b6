//! Factorization over Z by Hensel lifting and factor recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{FpPoly, PrimeField};
use super::IntPoly;
use crate::arith::isqrt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A nontrivial factor (primitive, positive leading coefficient).
    Reducible(IntPoly),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Irreducibility over Q of a polynomial of degree at least one.
pub fn is_irreducible(f: &IntPoly) -> Irreducibility {
    assert!(!f.is_zero() && f.degree() >= 1, "degree must be at least one");
    let h = f.primitive_part();
    if h.degree() == 1 {
        return Irreducibility::Irreducible;
    }
    let g = h.to_q().gcd(&h.derivative().to_q());
    if g.degree() > 0 {
        return Irreducibility::Reducible(g.to_primitive());
    }
    let factors = factor_squarefree(&h);
    if factors.len() == 1 {
        Irreducibility::Irreducible
    } else {
        Irreducibility::Reducible(factors[0].clone())
    }
}

/// Signed content and irreducible factors with multiplicities.
pub fn factor_over_z(f: &IntPoly) -> (BigInt, Vec<(IntPoly, u32)>) {
    assert!(!f.is_zero(), "cannot factor zero");
    let mut c = f.content();
    if f.leading().is_negative() {
        c = -c;
    }
    let a = f.primitive_part();
    if a.degree() == 0 {
        return (c, Vec::new());
    }
    let mut out = Vec::new();
    // Yun's squarefree decomposition
    let aq = a.to_q();
    let mut cc = aq.gcd(&aq.derivative());
    let mut w = aq.divrem(&cc).0;
    let mut i = 1u32;
    while cc.degree() > 0 {
        let y = w.gcd(&cc);
        let z = w.divrem(&y).0;
        if z.degree() > 0 {
            for g in factor_squarefree(&z.to_primitive()) {
                out.push((g, i));
            }
        }
        i += 1;
        w = y.clone();
        cc = cc.divrem(&y).0;
    }
    if w.degree() > 0 {
        for g in factor_squarefree(&w.to_primitive()) {
            out.push((g, i));
        }
    }
    out.sort_by(|x, y| (x.0.degree(), &x.0).cmp(&(y.0.degree(), &y.0)));
    (c, out)
}

/// Irreducible factors of a primitive squarefree polynomial, sorted by degree.
pub fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.primitive_part();
    if f.degree() <= 1 {
        return vec![f];
    }
    if f.coeff(0).is_zero() {
        let rest = IntPoly::new(f.coeffs()[1..].to_vec());
        let mut out = vec![IntPoly::x()];
        out.extend(factor_squarefree(&rest));
        out.sort_by(|x, y| (x.degree(), x).cmp(&(y.degree(), y)));
        return out;
    }
    let mut out = zassenhaus(&f);
    out.sort_by(|x, y| (x.degree(), x).cmp(&(y.degree(), y)));
    out
}

fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn zassenhaus(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    let lc = f.leading();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut possible = vec![true; n + 1];
    let mut best: Option<(PrimeField, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 6 && p < 100_000 {
        let fp = PrimeField::new(p);
        p = next_prime(p);
        if fp.reduce(&lc) == 0 {
            continue;
        }
        let fm = fp.poly_from_int(f.coeffs());
        if !fp.is_squarefree(&fm) {
            continue;
        }
        tried += 1;
        let ddf = fp.ddf(&fm);
        let mut degs = Vec::new();
        for (g, d) in &ddf {
            degs.extend(std::iter::repeat_n(*d, (g.len() - 1) / d));
        }
        let reach = subset_sums(&degs, n);
        for (k, ok) in possible.iter_mut().enumerate() {
            *ok &= reach[k];
        }
        if (1..n).all(|k| !possible[k]) {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, fs)| degs.len() < fs.len()) {
            let mut factors = Vec::new();
            for (g, d) in &ddf {
                factors.extend(fp.edf(g, *d, &mut rng));
            }
            factors.sort();
            best = Some((fp, factors));
        }
    }
    let (fp, factors) = best.expect("a suitable prime exists");
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let p = BigInt::from(fp.p());
    // Mignotte-style bound on coefficients of lc * (factor / its leading coefficient)
    let norm2 = isqrt(&f.coeffs().iter().map(|c| c * c).sum::<BigInt>()) + 1;
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm2;
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let lifted = hensel_lift(f, &factors, &fp, k, &pk);
    recombine(f, lifted, &pk, &possible)
}

fn next_prime(p: u64) -> u64 {
    let mut q = p + 2;
    while !crate::arith::is_prime(&BigInt::from(q)) {
        q += 2;
    }
    q
}

fn sym_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce_poly(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn lift_fp(g: &[u64]) -> IntPoly {
    IntPoly::new(g.iter().map(|&c| BigInt::from(c)).collect())
}

/// Lift `f = lc * prod(factors) (mod p)` to monic factors modulo `p^k`.
fn hensel_lift(f: &IntPoly, factors: &[FpPoly], fp: &PrimeField, k: u32, pk: &BigInt) -> Vec<IntPoly> {
    let mut target = reduce_poly(f, pk);
    let mut out = Vec::new();
    for (i, g0) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            let lc = target.leading();
            let inv = lc.modinv(pk).expect("leading coefficient is a unit mod p");
            out.push(reduce_poly(&target.scale(&inv), pk));
            break;
        }
        let lcm = fp.reduce(&target.leading());
        let h0 = factors[i + 1..]
            .iter()
            .fold(vec![lcm], |acc, h| fp.poly_mul(&acc, h));
        let (g, h) = lift_two(&target, g0, &h0, fp, k);
        out.push(g);
        target = h;
    }
    out
}

fn lift_two(f: &IntPoly, g0: &[u64], h0: &[u64], fp: &PrimeField, k: u32) -> (IntPoly, IntPoly) {
    let p = BigInt::from(fp.p());
    let (one, s, t) = fp.poly_xgcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let mut g = lift_fp(g0);
    let mut h = lift_fp(h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let diff = f - &(&g * &h);
        let e: Vec<BigInt> = diff.coeffs().iter().map(|c| c / &pj).collect();
        let e = fp.poly_from_int(&e);
        let te = fp.poly_mul(&t, &e);
        let (q, dg) = fp.poly_divrem(&te, g0);
        let dh = fp.poly_add(&fp.poly_mul(&s, &e), &fp.poly_mul(&q, h0));
        g = &g + &lift_fp(&dg).scale(&pj);
        h = &h + &lift_fp(&dh).scale(&pj);
        pj *= &p;
        g = reduce_poly(&g, &pj);
        h = reduce_poly(&h, &pj);
    }
    (g, h)
}

fn recombine(f: &IntPoly, lifted: Vec<IntPoly>, pk: &BigInt, possible: &[bool]) -> Vec<IntPoly> {
    let mut f = f.clone();
    let mut remaining: Vec<IntPoly> = lifted;
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| remaining[i].degree()).sum();
            if possible.get(deg).copied().unwrap_or(true) {
                let lc = f.leading();
                let mut g = IntPoly::new(vec![lc]);
                for &i in &idx {
                    g = reduce_poly(&(&g * &remaining[i]), pk);
                }
                let g = IntPoly::new(g.coeffs().iter().map(|c| sym_mod(c, pk)).collect())
                    .primitive_part();
                if let Some(q) = f.div_exact(&g) {
                    out.push(g);
                    f = q;
                    for &i in idx.iter().rev() {
                        remaining.remove(i);
                    }
                    continue 'outer;
                }
            }
            // next combination
            let mut i = s;
            loop {
                if i == 0 {
                    s += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < r - s + i {
                    idx[i] += 1;
                    for j in i + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    out.push(f.primitive_part());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn small_cases() {
        assert!(is_irreducible(&p(&[1, -4, 5])).is_irreducible());
        assert_eq!(is_irreducible(&p(&[-1, 0, 1])), Irreducibility::Reducible(p(&[-1, 1])));
        assert!(is_irreducible(&p(&[3, 6, 4])).is_irreducible());
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])).is_irreducible());
    }

    #[test]
    fn swinnerton_dyer_style_product() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])).is_irreducible());
        // (x^2 - 2)(x^2 - 3) reducible
        let f = &p(&[-2, 0, 1]) * &p(&[-3, 0, 1]);
        let (_, fs) = factor_over_z(&f);
        assert_eq!(fs, vec![(p(&[-3, 0, 1]), 1), (p(&[-2, 0, 1]), 1)]);
    }

    #[test]
    fn factors_with_leading_coefficients() {
        let a = p(&[1, 2, 3]);
        let b = p(&[-5, 0, 7]);
        let c = p(&[2, 3]);
        let f = &(&a * &b) * &c;
        let mut fs = factor_squarefree(&f);
        fs.sort();
        let mut expect = vec![a, b, c];
        expect.sort();
        assert_eq!(fs, expect);
    }

    #[test]
    fn multiplicities() {
        let f = &(&p(&[1, 1]) * &p(&[1, 1])) * &p(&[2, 0, 1]);
        let (c, fs) = factor_over_z(&f.scale(&BigInt::from(-3)));
        assert_eq!(c, BigInt::from(-3));
        assert_eq!(fs, vec![(p(&[1, 1]), 2), (p(&[2, 0, 1]), 1)]);
    }
}
