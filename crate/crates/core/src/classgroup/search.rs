//! Bounded search for generators of principal ideals in fields of any degree:
//! LLL-reduce the ideal lattice under an approximate `T2` form, then try small
//! combinations of the reduced basis. Every hit is verified exactly.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::field::{FieldElement, FractionalIdeal, NumberField};
use crate::linalg::ZMat;

#[derive(Clone, Copy, Debug)]
struct C(f64, f64);

impl C {
    fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: C) -> C {
        C(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C) -> C {
        let d = o.0 * o.0 + o.1 * o.1;
        C((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn abs2(self) -> f64 {
        self.0 * self.0 + self.1 * self.1
    }
}

/// Approximate complex roots of a monic polynomial (Durand–Kerner).
fn complex_roots(coeffs: &[f64]) -> Vec<C> {
    let n = coeffs.len() - 1;
    let eval = |z: C| -> C {
        let mut acc = C(1.0, 0.0);
        for c in coeffs[..n].iter().rev() {
            acc = acc.mul(z).add(C(*c, 0.0));
        }
        acc
    };
    let radius = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<C> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
            C(radius * 0.9 * t.cos(), radius * 0.9 * t.sin())
        })
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = C(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den = den.mul(z[i].sub(z[j]));
                }
            }
            let step = eval(z[i]).div(den);
            z[i] = z[i].sub(step);
            delta = delta.max(step.abs2());
        }
        if delta < 1e-28 {
            break;
        }
    }
    z
}

/// Gram matrix of the integral basis under `T2(α) = Σ |σ(α)|²`.
fn t2_gram(k: &NumberField) -> Vec<Vec<f64>> {
    let n = k.degree();
    let g = k.defining_poly();
    let coeffs: Vec<f64> = (0..=n).map(|i| g.coeff(i).to_f64().unwrap_or(f64::MAX)).collect();
    let roots = if n == 1 { vec![C(-coeffs[0], 0.0)] } else { complex_roots(&coeffs) };
    let basis = k.integral_basis();
    let emb: Vec<Vec<C>> = basis
        .iter()
        .map(|row| {
            roots
                .iter()
                .map(|&r| {
                    let mut acc = C(0.0, 0.0);
                    let mut pw = C(1.0, 0.0);
                    for c in row {
                        acc = acc.add(pw.mul(C(c.to_f64().unwrap_or(0.0), 0.0)));
                        pw = pw.mul(r);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    emb[a]
                        .iter()
                        .zip(&emb[b])
                        .map(|(x, y)| x.0 * y.0 + x.1 * y.1)
                        .sum()
                })
                .collect()
        })
        .collect()
}

fn dot(g: &[Vec<f64>], u: &[f64], v: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            s += ui * g[i][j] * vj;
        }
    }
    s
}

/// LLL with `δ = 3/4` on integer rows; the inner product comes from `g`.
fn lll(rows: &ZMat, g: &[Vec<f64>]) -> ZMat {
    let n = rows.len();
    let mut b = rows.clone();
    let to_f = |r: &Vec<BigInt>| -> Vec<f64> { r.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect() };
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 10_000 {
        guard += 1;
        let bf: Vec<Vec<f64>> = b.iter().map(to_f).collect();
        // Gram–Schmidt
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0.0; n]; n];
        let mut norms = vec![0.0; n];
        for i in 0..n {
            let mut v = bf[i].clone();
            for j in 0..i {
                mu[i][j] = if norms[j] > 0.0 { dot(g, &bf[i], &bs[j]) / norms[j] } else { 0.0 };
                for (vv, bj) in v.iter_mut().zip(&bs[j]) {
                    *vv -= mu[i][j] * bj;
                }
            }
            norms[i] = dot(g, &v, &v);
            bs.push(v);
        }
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 && q.is_finite() {
                let qb = BigInt::from(q as i64);
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &qb * y;
                }
                for l in 0..=j {
                    mu[k][l] -= q * if l == j { 1.0 } else { mu[j][l] };
                }
            }
        }
        if norms[k] >= (0.75 - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Search for `α ∈ J` with `|N(α)| = N(J)` for an integral ideal `J`.
pub fn search_generator(k: &NumberField, j: &FractionalIdeal, budget: usize) -> Option<FieldElement> {
    let n = k.degree();
    let target = j.norm().to_integer();
    let g = t2_gram(k);
    let basis = lll(j.lattice().hnf(), &g);
    let mut tried = 0usize;
    for bound in 1i64..=4 {
        let mut coef = vec![-bound; n];
        loop {
            if coef.iter().any(|c| c.abs() == bound) {
                let mut v = vec![BigInt::zero(); n];
                for (c, r) in coef.iter().zip(&basis) {
                    if *c != 0 {
                        for (vi, ri) in v.iter_mut().zip(r) {
                            *vi += ri * c;
                        }
                    }
                }
                if k.norm_integral(&v).abs() == target {
                    return Some(k.from_integer_coords(&v));
                }
                tried += 1;
                if tried >= budget {
                    return None;
                }
            }
            let mut i = 0;
            while i < n && coef[i] == bound {
                coef[i] = -bound;
                i += 1;
            }
            if i == n {
                break;
            }
            coef[i] += 1;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPoly;

    #[test]
    fn finds_generators_in_cubic_field() {
        let k = NumberField::new(&IntPoly::from_i64(&[-2, 0, 0, 1])).unwrap();
        for p in [2i64, 3, 5, 7, 11] {
            for pr in k.primes_above(&BigInt::from(p)).unwrap().iter() {
                let a = search_generator(&k, &pr.ideal(), 100_000).expect("h = 1");
                assert_eq!(FractionalIdeal::principal(&k, &a).unwrap(), pr.ideal());
            }
        }
    }
}
