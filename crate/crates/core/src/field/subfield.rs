//! Subfields of an ambient field, primitive elements of composita, and
//! quadratic extensions `M(√d)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FieldElement, NumberField, PrimeIdeal};
use crate::arith::{factorize, vp};
use crate::error::{Error, Result};
use crate::linalg::{rank, row_times, solve_row, QMat, RowSolver};
use crate::poly::{is_irreducible, IntPoly, QPoly};

/// `K = Q(κ)` inside an ambient field `M`, with its own presentation.
#[derive(Debug, Clone)]
pub struct Subfield {
    ambient: Arc<NumberField>,
    generator: FieldElement,
    field: Arc<NumberField>,
    /// Row `i` is the image in `M` of `θ_K^i`.
    embedding: QMat,
    solver: RowSolver,
}

/// Smallest `s > 0` making `s^deg · m(x/s)` integral, and that polynomial.
pub(crate) fn integral_rescaling(m: &QPoly) -> (BigInt, IntPoly) {
    let k = m.degree();
    let mut primes: Vec<BigInt> = Vec::new();
    for c in m.coeffs() {
        if !c.denom().is_one() {
            primes.extend(factorize(c.denom()).expect("small denominators").primes().cloned());
        }
    }
    primes.sort();
    primes.dedup();
    let mut s = BigInt::one();
    for p in &primes {
        let mut need = 0i64;
        for (i, c) in m.coeffs().iter().enumerate().take(k) {
            if c.is_zero() {
                continue;
            }
            let v = vp(c, p).expect("nonzero");
            if v < 0 {
                let w = (k - i) as i64;
                need = need.max(Integer::div_ceil(&(-v), &w));
            }
        }
        s *= p.pow(need as u32);
    }
    let coeffs = m
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (c * BigRational::from_integer(s.pow((k - i) as u32))).to_integer())
        .collect();
    (s, IntPoly::new(coeffs))
}

fn powers(m: &NumberField, a: &FieldElement, count: usize) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(count);
    let mut cur = m.one();
    for _ in 0..count {
        out.push(cur.clone());
        cur = m.mul(&cur, a);
    }
    out
}

impl Subfield {
    pub fn new(ambient: &Arc<NumberField>, kappa: &FieldElement) -> Result<Subfield> {
        let mp = ambient.min_poly(kappa);
        let k = mp.degree();
        let n = ambient.degree();
        let (field, embedding) = if k == n {
            (ambient.clone(), powers(ambient, &ambient.generator(), n))
        } else if k == 1 {
            (NumberField::rationals(), vec![ambient.one()])
        } else {
            let (s, h) = integral_rescaling(&mp);
            let field = NumberField::with_cap(&h, k)?;
            let sk = ambient.scale(kappa, &BigRational::from_integer(s));
            (field, powers(ambient, &sk, k))
        };
        let embedding: QMat = embedding.into_iter().map(|e| e.coords().to_vec()).collect();
        let solver = RowSolver::new(&embedding).ok_or_else(|| Error::invalid("embedding is singular"))?;
        Ok(Subfield {
            ambient: ambient.clone(),
            generator: kappa.clone(),
            field,
            embedding,
            solver,
        })
    }

    pub fn rationals(ambient: &Arc<NumberField>) -> Subfield {
        Subfield::new(ambient, &ambient.one()).expect("Q embeds")
    }

    pub fn whole(ambient: &Arc<NumberField>) -> Subfield {
        Subfield::new(ambient, &ambient.generator()).expect("M embeds")
    }

    /// Smallest subfield containing all the given elements.
    pub fn generated_by(ambient: &Arc<NumberField>, elems: &[FieldElement]) -> Result<Subfield> {
        let mut g = ambient.one();
        for a in elems {
            g = primitive_element(ambient, &g, a);
        }
        Subfield::new(ambient, &g)
    }

    pub fn join(&self, o: &Subfield) -> Result<Subfield> {
        Subfield::generated_by(&self.ambient, &[self.generator.clone(), o.generator.clone()])
    }

    pub fn ambient(&self) -> &Arc<NumberField> {
        &self.ambient
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Images in `M` of the power basis of `K`, as rows.
    pub fn ambient_basis(&self) -> &QMat {
        &self.embedding
    }

    /// Images in `M` of the integral basis of `O_K`.
    pub fn integral_basis_in_ambient(&self) -> Vec<FieldElement> {
        self.field
            .integral_basis()
            .iter()
            .map(|r| self.to_ambient(&self.field.element(r.clone())))
            .collect()
    }

    /// Degree of `self ∩ other` inside `M`.
    pub fn intersection_degree(&self, other: &Subfield) -> usize {
        let mut rows = self.embedding.clone();
        rows.extend(other.embedding.iter().cloned());
        self.degree() + other.degree() - rank(&rows)
    }

    pub fn to_ambient(&self, a: &FieldElement) -> FieldElement {
        self.ambient.element(row_times(a.coords(), &self.embedding))
    }

    pub fn from_ambient(&self, a: &FieldElement) -> Option<FieldElement> {
        self.solver.solve(a.coords()).map(|c| self.field.element(c))
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        self.from_ambient(a).is_some()
    }

    pub fn contains_subfield(&self, o: &Subfield) -> bool {
        self.contains(&o.generator)
    }

    pub fn same_field(&self, o: &Subfield) -> bool {
        self.degree() == o.degree() && self.contains_subfield(o)
    }

    /// Image of an element of `self` in the larger subfield `upper`.
    pub fn map_into(&self, upper: &Subfield, a: &FieldElement) -> Result<FieldElement> {
        upper
            .from_ambient(&self.to_ambient(a))
            .ok_or_else(|| Error::invalid("element does not lie in the target subfield"))
    }

    /// The prime of `self` below the prime `q` of `upper ⊇ self`.
    pub fn prime_below(&self, upper: &Subfield, q: &PrimeIdeal) -> Result<PrimeIdeal> {
        for pr in self.field.primes_above(q.p())?.iter() {
            let pi = self.map_into(upper, &pr.uniformizer(&self.field))?;
            if upper.field.valuation(q, &pi)? > 0 {
                return Ok(pr.clone());
            }
        }
        Err(Error::NotAbove {
            prime: q.to_string(),
        })
    }

    /// Primes of `upper ⊇ self` lying over the prime `pr` of `self`.
    pub fn primes_over(&self, upper: &Subfield, pr: &PrimeIdeal) -> Result<Vec<PrimeIdeal>> {
        let pi = self.map_into(upper, &pr.uniformizer(&self.field))?;
        let mut out = Vec::new();
        for q in upper.field.primes_above(pr.p())?.iter() {
            if upper.field.valuation(q, &pi)? > 0 {
                out.push(q.clone());
            }
        }
        Ok(out)
    }
}

/// Degree of `Q(a, b)` from the rank of `{a^i b^j}`.
fn joint_degree(m: &NumberField, a: &FieldElement, b: &FieldElement) -> usize {
    let da = m.degree_of(a);
    let db = m.degree_of(b);
    let pa = powers(m, a, da);
    let pb = powers(m, b, db);
    let mut rows = Vec::with_capacity(da * db);
    for x in &pa {
        for y in &pb {
            rows.push(m.mul(x, y).coords().to_vec());
        }
    }
    rank(&rows)
}

/// Element `a + t b` generating `Q(a, b)`.
pub fn primitive_element(m: &NumberField, a: &FieldElement, b: &FieldElement) -> FieldElement {
    let d = joint_degree(m, a, b);
    if m.degree_of(a) == d {
        return a.clone();
    }
    if m.degree_of(b) == d {
        return b.clone();
    }
    for t in 1i64.. {
        for s in [t, -t] {
            let c = m.add(a, &m.scale(b, &BigRational::from_integer(s.into())));
            if m.degree_of(&c) == d {
                return c;
            }
        }
    }
    unreachable!("a primitive element exists among a + t b")
}

/// Monic minimal polynomial of `γ ∈ M` over the subfield `K`, ascending, with
/// coefficients in `K`'s own presentation.
pub fn min_poly_over_subfield(k: &Subfield, gamma: &FieldElement) -> Vec<FieldElement> {
    let m = k.ambient();
    let kd = k.degree();
    let kb: Vec<FieldElement> = k.embedding.iter().map(|r| m.element(r.clone())).collect();
    let mut rows: QMat = Vec::new();
    let mut gp = m.one();
    let mut deg = 0;
    loop {
        if let Some(x) = solve_row(&rows, gp.coords()).filter(|_| deg > 0) {
            let mut out = Vec::with_capacity(deg + 1);
            for j in 0..deg {
                let c: Vec<BigRational> = (0..kd).map(|i| -x[j * kd + i].clone()).collect();
                out.push(k.field().element(c));
            }
            out.push(k.field().one());
            return out;
        }
        for b in &kb {
            rows.push(m.mul(b, &gp).coords().to_vec());
        }
        gp = m.mul(&gp, gamma);
        deg += 1;
    }
}

/// `M(√d)` when `y² - d` is irreducible over `M`.
#[derive(Debug, Clone)]
pub struct Extension {
    field: Arc<NumberField>,
    /// Row `i` is the image of `θ_M^i`.
    images: QMat,
    sqrt: FieldElement,
}

impl Extension {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn sqrt(&self) -> &FieldElement {
        &self.sqrt
    }

    pub fn lift(&self, a: &FieldElement) -> FieldElement {
        self.field.element(row_times(a.coords(), &self.images))
    }
}

/// Multiply `u + v y` pairs in `M[y]/(y² - d)`.
fn quad_mul(m: &NumberField, d: &FieldElement, a: &[FieldElement; 2], b: &[FieldElement; 2]) -> [FieldElement; 2] {
    let uu = m.mul(&a[0], &b[0]);
    let vv = m.mul(&m.mul(&a[1], &b[1]), d);
    let uv = m.add(&m.mul(&a[0], &b[1]), &m.mul(&a[1], &b[0]));
    [m.add(&uu, &vv), uv]
}

fn flat(p: &[FieldElement; 2]) -> Vec<BigRational> {
    let mut v = p[0].coords().to_vec();
    v.extend_from_slice(p[1].coords());
    v
}

/// Returns `None` when no primitive element `θ + t√d` with small `t` yields an
/// irreducible polynomial of degree `2n`, which happens in particular when
/// `√d ∈ M`.
pub fn adjoin_sqrt(m: &Arc<NumberField>, d: &BigInt) -> Result<Option<Extension>> {
    let n = m.degree();
    let dd = m.from_int(d.clone());
    for t in 1i64..=12 {
        let psi = [m.generator(), m.from_int(t)];
        let mut pw = vec![[m.one(), m.zero()]];
        for _ in 0..2 * n {
            let next = quad_mul(m, &dd, pw.last().unwrap(), &psi);
            pw.push(next);
        }
        let basis: QMat = pw[..2 * n].iter().map(flat).collect();
        let Some(solver) = RowSolver::new(&basis) else {
            continue;
        };
        let c = solver.solve(&flat(&pw[2 * n])).expect("full rank");
        let mut coeffs: Vec<BigRational> = c.into_iter().map(|x| -x).collect();
        coeffs.push(BigRational::one());
        let mp = QPoly::new(coeffs);
        let (s, h) = integral_rescaling(&mp);
        if !is_irreducible(&h).is_irreducible() {
            continue;
        }
        let field = NumberField::new(&h)?;
        let sq = BigRational::from_integer(s);
        let to_new = |w: &[BigRational]| -> FieldElement {
            let psi_coords = solver.solve(w).expect("basis of the algebra");
            let mut scale = BigRational::one();
            let mut out = Vec::with_capacity(2 * n);
            for c in psi_coords {
                out.push(c / &scale);
                scale *= &sq;
            }
            field.element(out)
        };
        let images: QMat = (0..n)
            .map(|i| {
                let mut w = vec![BigRational::zero(); 2 * n];
                w[i] = BigRational::one();
                if n == 1 {
                    // Q presented as Q[x]/(x): θ = 0
                    w[0] = BigRational::one();
                }
                to_new(&w).coords().to_vec()
            })
            .collect();
        let mut wy = vec![BigRational::zero(); 2 * n];
        wy[n] = BigRational::one();
        let sqrt = to_new(&wy);
        return Ok(Some(Extension {
            field,
            images,
            sqrt,
        }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn field(c: &[i64]) -> Arc<NumberField> {
        NumberField::new(&IntPoly::from_i64(c)).unwrap()
    }

    #[test]
    fn quadratic_subfield_of_cyclotomic() {
        // Q(zeta_8) ⊇ Q(i), Q(√2), Q(√-2)
        let m = field(&[1, 0, 0, 0, 1]);
        let i = m.parse_element("x^2").unwrap();
        let k = Subfield::new(&m, &i).unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(k.field().discriminant(), &int(-4));
        let back = k.from_ambient(&i).unwrap();
        assert_eq!(k.to_ambient(&back), i);
        assert!(!k.contains(&m.generator()));
        let r2 = m.parse_element("x + x^7").unwrap();
        let k2 = Subfield::new(&m, &r2).unwrap();
        assert_eq!(k2.field().discriminant(), &int(8));
        assert!(k.join(&k2).unwrap().same_field(&Subfield::whole(&m)));
        let q = Subfield::rationals(&m);
        assert_eq!(q.degree(), 1);
        assert!(k.contains_subfield(&q));
    }

    #[test]
    fn relative_minimal_polynomial() {
        let m = field(&[1, 0, 0, 0, 1]);
        let k = Subfield::new(&m, &m.parse_element("x^2").unwrap()).unwrap();
        let mp = min_poly_over_subfield(&k, &m.generator());
        // ζ8^2 = i, so y^2 - i
        assert_eq!(mp.len(), 3);
        assert_eq!(k.to_ambient(&mp[0]), m.neg(&m.parse_element("x^2").unwrap()));
        assert!(mp[1].is_zero());
        let q = Subfield::rationals(&m);
        assert_eq!(min_poly_over_subfield(&q, &m.generator()).len(), 5);
    }

    #[test]
    fn adjoining_square_roots() {
        let m = field(&[1, 0, 1]);
        let e = adjoin_sqrt(&m, &int(2)).unwrap().expect("√2 ∉ Q(i)");
        assert_eq!(e.field().degree(), 4);
        let s = e.sqrt();
        assert_eq!(e.field().mul(s, s), e.field().from_int(2));
        let i = e.lift(&m.generator());
        assert_eq!(e.field().mul(&i, &i), e.field().from_int(-1));
        assert!(adjoin_sqrt(&m, &int(-4)).unwrap().is_none());
        let q = NumberField::rationals();
        let e = adjoin_sqrt(&q, &int(5)).unwrap().unwrap();
        assert_eq!(e.field().discriminant(), &int(5));
        assert_eq!(e.lift(&q.from_rational(rat(1, 2))), e.field().from_rational(rat(1, 2)));
    }

    #[test]
    fn primes_between_fields() {
        let m = field(&[1, 0, 0, 0, 1]);
        let k = Subfield::new(&m, &m.parse_element("x^2").unwrap()).unwrap();
        let top = Subfield::whole(&m);
        let p5 = k.field().primes_above(&int(5)).unwrap();
        for pr in p5.iter() {
            let over = k.primes_over(&top, pr).unwrap();
            assert_eq!(over.len(), 1);
            assert_eq!(&k.prime_below(&top, &over[0]).unwrap(), pr);
        }
    }
}
