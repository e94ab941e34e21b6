//! Seeded random inputs for the verification suites.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldElement, NumberField, Subfield};
use crate::poly::{is_irreducible, IntPoly, MinimalPolynomial};

/// Squarefree integers used for quadratic and biquadratic fields.
pub const RADICANDS: [i64; 16] = [-1, -2, -3, -5, -6, -7, -10, -11, 2, 3, 5, 6, 7, 10, 11, 13];

/// Irreducible primitive polynomial of degree `1..=max_degree` with
/// coefficients in `[-height, height]` and positive leading coefficient.
pub fn random_min_poly(rng: &mut ChaCha8Rng, max_degree: usize, height: i64) -> MinimalPolynomial {
    loop {
        let n = rng.gen_range(1..=max_degree);
        let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(-height..=height)).collect();
        c.push(rng.gen_range(1..=height));
        if c[0] == 0 {
            continue;
        }
        let f = IntPoly::from_i64(&c);
        if f.content() != BigInt::from(1) || !is_irreducible(&f).is_irreducible() {
            continue;
        }
        if let Ok(m) = MinimalPolynomial::from_int_poly(&f) {
            return m;
        }
    }
}

pub fn quadratic_field(d: i64) -> Arc<NumberField> {
    NumberField::new(&IntPoly::from_i64(&[-d, 0, 1])).expect("x^2 - d is irreducible")
}

pub fn random_quadratic_field(rng: &mut ChaCha8Rng) -> Arc<NumberField> {
    quadratic_field(*RADICANDS.choose(rng).expect("nonempty"))
}

fn squarefree_part(mut n: i64) -> i64 {
    let mut out = 1;
    let sign = n.signum();
    n = n.abs();
    let mut p = 2;
    while p * p <= n {
        while n % (p * p) == 0 {
            n /= p * p;
        }
        if n % p == 0 {
            out *= p;
            n /= p;
        }
        p += 1;
    }
    sign * out * n
}

/// `Q(√a, √b)` presented by `θ = √a + √b`, with the elements `√a` and `√b`.
#[derive(Debug, Clone)]
pub struct Biquadratic {
    pub field: Arc<NumberField>,
    pub a: i64,
    pub b: i64,
    pub sqrt_a: FieldElement,
    pub sqrt_b: FieldElement,
}

impl Biquadratic {
    pub fn new(a: i64, b: i64) -> Option<Biquadratic> {
        if a == b || squarefree_part(a * b) == 1 {
            return None;
        }
        let f = IntPoly::from_i64(&[(a - b) * (a - b), 0, -2 * (a + b), 0, 1]);
        if !is_irreducible(&f).is_irreducible() {
            return None;
        }
        let field = NumberField::new(&f).ok()?;
        let t = field.generator();
        let t2 = field.mul(&t, &t);
        let two_t = field.scale(&t, &BigRational::from_integer(BigInt::from(2)));
        // √a = (θ² + a - b) / (2θ)
        let num = field.add(&t2, &field.from_int(a - b));
        let sqrt_a = field.div(&num, &two_t).ok()?;
        let sqrt_b = field.sub(&t, &sqrt_a);
        Some(Biquadratic {
            field,
            a,
            b,
            sqrt_a,
            sqrt_b,
        })
    }

    pub fn random(rng: &mut ChaCha8Rng) -> Biquadratic {
        loop {
            let a = *RADICANDS.choose(rng).expect("nonempty");
            let b = *RADICANDS.choose(rng).expect("nonempty");
            if let Some(q) = Biquadratic::new(a, b) {
                return q;
            }
        }
    }

    pub fn sub_a(&self) -> Subfield {
        Subfield::new(&self.field, &self.sqrt_a).expect("quadratic subfield")
    }

    pub fn sub_b(&self) -> Subfield {
        Subfield::new(&self.field, &self.sqrt_b).expect("quadratic subfield")
    }

    pub fn sub_ab(&self) -> Subfield {
        Subfield::new(&self.field, &self.field.mul(&self.sqrt_a, &self.sqrt_b)).expect("quadratic subfield")
    }
}

fn small_element(rng: &mut ChaCha8Rng, basis: &[FieldElement], m: &NumberField, bound: i64) -> FieldElement {
    let mut out = m.zero();
    for b in basis {
        let c = rng.gen_range(-bound..=bound);
        out = m.add(&out, &m.scale(b, &BigRational::from_integer(BigInt::from(c))));
    }
    out
}

/// Nonzero element of the span of `basis` (an integral basis of some subfield)
/// with a small denominator: an integral element divided by an integer or by
/// another integral element.
pub fn random_element_in(rng: &mut ChaCha8Rng, m: &NumberField, basis: &[FieldElement]) -> FieldElement {
    loop {
        let num = small_element(rng, basis, m, 6);
        if num.is_zero() {
            continue;
        }
        let g = match rng.gen_range(0..3) {
            0 => m.scale(&num, &BigRational::new(BigInt::from(1), BigInt::from(rng.gen_range(1..=30)))),
            _ => {
                let den = small_element(rng, basis, m, 4);
                if den.is_zero() {
                    continue;
                }
                let base = if rng.gen_bool(0.5) { m.one() } else { num };
                match m.div(&base, &den) {
                    Ok(g) => g,
                    Err(_) => continue,
                }
            }
        };
        return g;
    }
}

/// Random nonzero element of the ambient field of `k` lying in `k`.
pub fn random_element(rng: &mut ChaCha8Rng, k: &Subfield) -> FieldElement {
    random_element_in(rng, k.ambient(), &k.integral_basis_in_ambient())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn biquadratic_square_roots() {
        let q = Biquadratic::new(-1, 2).unwrap();
        let m = &q.field;
        assert_eq!(m.mul(&q.sqrt_a, &q.sqrt_a), m.from_int(-1));
        assert_eq!(m.mul(&q.sqrt_b, &q.sqrt_b), m.from_int(2));
        assert!(Biquadratic::new(2, 8).is_none());
        assert!(Biquadratic::new(3, 12).is_none());
        assert_eq!(squarefree_part(-12), -3);
    }

    #[test]
    fn corpus_is_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert_eq!(random_min_poly(&mut a, 4, 50), random_min_poly(&mut b, 4, 50));
        }
        let m = random_quadratic_field(&mut a);
        let k = Subfield::whole(&m);
        assert!(!random_element(&mut a, &k).is_zero());
    }
}
