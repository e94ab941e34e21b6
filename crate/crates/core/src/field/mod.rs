//! Explicit number fields `Q[x]/(g)` with their rings of integers.

mod ideal;
mod newton;
mod primes;
mod round2;
mod subfield;

pub use ideal::FractionalIdeal;
pub use newton::{newton_polygon, newton_polygon_of_points, NewtonPolygon, Segment};
pub use primes::PrimeIdeal;
pub use subfield::{adjoin_sqrt, min_poly_over_subfield, primitive_element, Extension, Subfield};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{common_denominator, FactorConfig};
use crate::error::{Error, Result};
use crate::linalg::{det, det_z, inverse, row_times, solve_row, QMat};
use crate::poly::parse::{evaluate, Algebra};
use crate::poly::{format_ascending, is_irreducible, parse_int_poly, IntPoly, Irreducibility, QPoly};

pub const DEFAULT_DEGREE_CAP: usize = 8;

/// Element of a number field as rational coordinates over the power basis
/// `1, θ, …, θ^(n-1)`. Elements do not carry their field; every operation
/// goes through the owning [`NumberField`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn rational_value(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    pub fn display(&self) -> String {
        format_ascending(&self.coords, "x")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

pub struct NumberField {
    poly: IntPoly,
    n: usize,
    /// Reductions of `θ^n, …, θ^(2n-2)` into the power basis.
    reduction: Vec<Vec<BigRational>>,
    basis: QMat,
    basis_inv: QMat,
    /// `ω_i ω_j = Σ_k table[i][j][k] ω_k`
    table: Vec<Vec<Vec<BigInt>>>,
    disc: BigInt,
    index: BigInt,
    poly_disc: BigInt,
    primes: Mutex<BTreeMap<BigInt, Arc<Vec<PrimeIdeal>>>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField(Q[x]/({}))", self.poly)
    }
}

fn cache() -> &'static Mutex<HashMap<IntPoly, Arc<NumberField>>> {
    static CACHE: OnceLock<Mutex<HashMap<IntPoly, Arc<NumberField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl NumberField {
    /// Field defined by a monic irreducible integer polynomial of degree at most 8.
    pub fn new(g: &IntPoly) -> Result<Arc<NumberField>> {
        NumberField::with_cap(g, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(g: &IntPoly, cap: usize) -> Result<Arc<NumberField>> {
        if let Some(k) = cache().lock().expect("field cache").get(g) {
            if k.n <= cap {
                return Ok(k.clone());
            }
        }
        let k = Arc::new(NumberField::build(g, cap)?);
        cache()
            .lock()
            .expect("field cache")
            .insert(g.clone(), k.clone());
        Ok(k)
    }

    /// The field of rational numbers, presented as `Q[x]/(x)`.
    pub fn rationals() -> Arc<NumberField> {
        NumberField::new(&IntPoly::x()).expect("Q is a field")
    }

    fn build(g: &IntPoly, cap: usize) -> Result<NumberField> {
        if g.is_zero() || g.degree() == 0 {
            return Err(Error::invalid("defining polynomial must have degree at least 1"));
        }
        if !g.is_monic() {
            return Err(Error::invalid(format!("defining polynomial {g} is not monic")));
        }
        let n = g.degree();
        if n > cap {
            return Err(Error::DegreeCap { degree: n, cap });
        }
        if let Irreducibility::Reducible(factor) = is_irreducible(g) {
            return Err(Error::Reducible { factor });
        }
        let reduction = reduction_table(g);
        let poly_disc = g.discriminant();
        let mut k = NumberField {
            poly: g.clone(),
            n,
            reduction,
            basis: Vec::new(),
            basis_inv: Vec::new(),
            table: Vec::new(),
            disc: BigInt::zero(),
            index: BigInt::one(),
            poly_disc: poly_disc.clone(),
            primes: Mutex::new(BTreeMap::new()),
        };
        let basis = round2::maximal_order(&k, &FactorConfig::default())?;
        k.set_basis(basis)?;
        Ok(k)
    }

    fn set_basis(&mut self, basis: QMat) -> Result<()> {
        let inv = inverse(&basis).ok_or_else(|| Error::invalid("integral basis is singular"))?;
        let table = multiplication_table(self, &basis, &inv)
            .ok_or_else(|| Error::invalid("basis is not closed under multiplication"))?;
        let d = det(&basis);
        let index = d.recip();
        if !index.is_integer() {
            return Err(Error::invalid("basis does not contain the equation order"));
        }
        let index = index.to_integer();
        let index = if index < BigInt::zero() { -index } else { index };
        self.disc = &self.poly_disc / (&index * &index);
        self.index = index;
        self.basis = basis;
        self.basis_inv = inv;
        self.table = table;
        Ok(())
    }

    pub fn defining_poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Rows are the integral basis elements in power-basis coordinates.
    pub fn integral_basis(&self) -> &QMat {
        &self.basis
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// `[O_K : Z[θ]]`
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn poly_discriminant(&self) -> &BigInt {
        &self.poly_disc
    }

    pub fn is_rationals(&self) -> bool {
        self.n == 1
    }

    pub fn spec(&self) -> String {
        format!("Q[x]/({})", self.poly)
    }

    pub fn element(&self, coords: Vec<BigRational>) -> FieldElement {
        assert_eq!(coords.len(), self.n, "coordinate length must equal the degree");
        FieldElement { coords }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(vec![BigRational::zero(); self.n])
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> FieldElement {
        let mut v = vec![BigRational::zero(); self.n];
        v[0] = r;
        self.element(v)
    }

    pub fn from_int(&self, k: impl Into<BigInt>) -> FieldElement {
        self.from_rational(BigRational::from_integer(k.into()))
    }

    /// The class of `x`, i.e. `θ`.
    pub fn generator(&self) -> FieldElement {
        if self.n == 1 {
            // x = 0 in Q[x]/(x)
            return self.from_rational(BigRational::from_integer(-self.poly.coeff(0)));
        }
        let mut v = vec![BigRational::zero(); self.n];
        v[1] = BigRational::one();
        self.element(v)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.element(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.element(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.element(a.coords.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &FieldElement, k: &BigRational) -> FieldElement {
        self.element(a.coords.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.n;
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigRational> = prod[..n].to_vec();
        for (k, c) in prod[n..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reduction[k]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        self.element(out)
    }

    /// Matrix of `y ↦ a·y` on the power basis (row `i` is `a θ^i`).
    pub fn mul_matrix(&self, a: &FieldElement) -> QMat {
        let mut rows = Vec::with_capacity(self.n);
        let mut t = self.one();
        let th = self.generator();
        for _ in 0..self.n {
            rows.push(self.mul(a, &t).coords);
            t = self.mul(&t, &th);
        }
        rows
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.mul_matrix(a);
        let x = solve_row(&m, &self.one().coords).ok_or(Error::DivisionByZero)?;
        Ok(self.element(x))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, k: i64) -> Result<FieldElement> {
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut b = base;
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Ok(r)
    }

    pub fn norm(&self, a: &FieldElement) -> BigRational {
        det(&self.mul_matrix(a))
    }

    pub fn trace(&self, a: &FieldElement) -> BigRational {
        let m = self.mul_matrix(a);
        (0..self.n).map(|i| m[i][i].clone()).sum()
    }

    /// Monic minimal polynomial over Q.
    pub fn min_poly(&self, a: &FieldElement) -> QPoly {
        let mut powers: QMat = vec![self.one().coords];
        let mut cur = self.one();
        loop {
            cur = self.mul(&cur, a);
            if let Some(x) = solve_row(&powers, &cur.coords) {
                let mut c: Vec<BigRational> = x.into_iter().map(|v| -v).collect();
                c.push(BigRational::one());
                return QPoly::new(c);
            }
            powers.push(cur.coords.clone());
        }
    }

    pub fn degree_of(&self, a: &FieldElement) -> usize {
        self.min_poly(a).degree()
    }

    /// Coordinates over the integral basis.
    pub fn to_integral_coords(&self, a: &FieldElement) -> Vec<BigRational> {
        row_times(&a.coords, &self.basis_inv)
    }

    pub fn from_integral_coords(&self, v: &[BigRational]) -> FieldElement {
        self.element(row_times(v, &self.basis))
    }

    pub fn from_integer_coords(&self, v: &[BigInt]) -> FieldElement {
        let q: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        self.from_integral_coords(&q)
    }

    /// Integer numerators over the integral basis and their common denominator.
    pub fn integral_numerators(&self, a: &FieldElement) -> (Vec<BigInt>, BigInt) {
        let v = self.to_integral_coords(a);
        let den = common_denominator(&v);
        let nums = v
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        (nums, den)
    }

    pub fn is_integral(&self, a: &FieldElement) -> bool {
        self.to_integral_coords(a).iter().all(|c| c.is_integer())
    }

    /// Product of two elements given by integer coordinates over the integral basis.
    pub fn mul_integral(&self, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        round2::mul_with(&self.table, u, v)
    }

    /// Norm of an element given by integer coordinates over the integral basis.
    pub fn norm_integral(&self, v: &[BigInt]) -> BigInt {
        let rows: Vec<Vec<BigInt>> = (0..self.n)
            .map(|i| {
                let mut u = vec![BigInt::zero(); self.n];
                u[i] = BigInt::one();
                self.mul_integral(v, &u)
            })
            .collect();
        det_z(&rows)
    }

    /// `(r1, r2)`: numbers of real and pairs of complex embeddings.
    pub fn signature(&self) -> (usize, usize) {
        let r1 = self.poly.to_q().count_real_roots();
        (r1, (self.n - r1) / 2)
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        evaluate(s, "x", self)
    }

    pub(crate) fn prime_cache(&self) -> &Mutex<BTreeMap<BigInt, Arc<Vec<PrimeIdeal>>>> {
        &self.primes
    }

    pub(crate) fn table(&self) -> &Vec<Vec<Vec<BigInt>>> {
        &self.table
    }
}

impl Algebra for NumberField {
    type Elem = FieldElement;
    fn constant(&self, c: BigRational) -> FieldElement {
        self.from_rational(c)
    }
    fn variable(&self) -> FieldElement {
        self.generator()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        NumberField::add(self, a, b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        NumberField::sub(self, a, b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        NumberField::mul(self, a, b)
    }
    fn div(&self, a: &FieldElement, b: &FieldElement) -> std::result::Result<FieldElement, String> {
        NumberField::div(self, a, b).map_err(|_| "division by zero in the field".to_string())
    }
    fn pow(&self, a: &FieldElement, k: i64) -> std::result::Result<FieldElement, String> {
        NumberField::pow(self, a, k).map_err(|_| "zero raised to a negative power".to_string())
    }
}

fn reduction_table(g: &IntPoly) -> Vec<Vec<BigRational>> {
    let n = g.degree();
    let mut out = Vec::new();
    // θ^n = -(g_0 + … + g_{n-1} θ^{n-1})
    let mut cur: Vec<BigRational> = (0..n)
        .map(|i| BigRational::from_integer(-g.coeff(i)))
        .collect();
    for _ in n..(2 * n).saturating_sub(1) {
        out.push(cur.clone());
        // multiply by θ
        let top = cur[n - 1].clone();
        let mut next = vec![BigRational::zero(); n];
        for i in (1..n).rev() {
            next[i] = cur[i - 1].clone();
        }
        for (i, nx) in next.iter_mut().enumerate() {
            *nx -= &top * BigRational::from_integer(g.coeff(i));
        }
        cur = next;
    }
    out
}

/// Structure constants of a basis; `None` if some product leaves the lattice.
fn multiplication_table(k: &NumberField, basis: &QMat, inv: &QMat) -> Option<Vec<Vec<Vec<BigInt>>>> {
    let n = k.n;
    let elems: Vec<FieldElement> = basis.iter().map(|r| k.element(r.clone())).collect();
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i..n {
            let prod = k.mul(&elems[i], &elems[j]);
            let c = row_times(&prod.coords, inv);
            if c.iter().any(|x| !x.is_integer()) {
                return None;
            }
            let c: Vec<BigInt> = c.into_iter().map(|x| x.to_integer()).collect();
            table[i][j] = c.clone();
            table[j][i] = c;
        }
    }
    Some(table)
}

/// Parse `Q[x]/(x^2+1)`, `x^2+1` or a coefficient list.
pub fn parse_field_spec(s: &str) -> Result<Arc<NumberField>> {
    let t = s.trim();
    let body = if let Some(rest) = t.strip_prefix("Q[x]/") {
        let rest = rest.trim();
        rest.strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                position: 7,
                token: rest.chars().next().map(String::from).unwrap_or_default(),
                message: "expected `(` polynomial `)` after `Q[x]/`".into(),
            })?
    } else {
        t
    };
    let g = parse_int_poly(body)?;
    NumberField::new(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn field(c: &[i64]) -> Arc<NumberField> {
        NumberField::new(&IntPoly::from_i64(c)).unwrap()
    }

    #[test]
    fn gaussian_field_basics() {
        let k = field(&[1, 0, 1]);
        assert_eq!(k.discriminant(), &int(-4));
        assert_eq!(k.index(), &int(1));
        let g = k.parse_element("1/(2+x)").unwrap();
        assert_eq!(g.coords(), &[rat(2, 5), rat(-1, 5)]);
        let mp = k.min_poly(&g);
        assert_eq!(mp.coeffs(), &[rat(1, 5), rat(-4, 5), rat(1, 1)]);
        assert_eq!(k.norm(&k.parse_element("60+15*x").unwrap()), rat(3825, 1));
        assert_eq!(k.norm_integral(&[int(60), int(15)]), int(3825));
        assert_eq!(k.signature(), (0, 1));
        assert_eq!(field(&[-2, 0, 0, 1]).signature(), (1, 1));
        assert_eq!(field(&[1, 0, -10, 0, 1]).signature(), (4, 0));
    }

    #[test]
    fn integral_bases() {
        let k = field(&[-5, 0, 1]);
        assert_eq!(k.discriminant(), &int(5));
        assert_eq!(k.index(), &int(2));
        assert_eq!(
            k.integral_basis(),
            &vec![vec![rat(1, 1), rat(0, 1)], vec![rat(1, 2), rat(1, 2)]]
        );
        let k = field(&[5, 0, 1]);
        assert_eq!(k.discriminant(), &int(-20));
        assert_eq!(k.index(), &int(1));
        // Q(zeta_5)
        let k = field(&[1, 1, 1, 1, 1]);
        assert_eq!(k.discriminant(), &int(125));
        // x^3 - 2 has index 1; x^2 + 3 has index 2
        assert_eq!(field(&[-2, 0, 0, 1]).discriminant(), &int(-108));
        assert_eq!(field(&[3, 0, 1]).discriminant(), &int(-3));
        // Q(i, sqrt 2) = Q(zeta_8)
        assert_eq!(field(&[1, 0, 0, 0, 1]).discriminant(), &int(256));
        // x^4 - 10x^2 + 1 generates Q(sqrt2, sqrt3), discriminant 2304
        assert_eq!(field(&[1, 0, -10, 0, 1]).discriminant(), &int(2304));
    }

    #[test]
    fn rejects_bad_polynomials() {
        assert!(matches!(
            NumberField::new(&IntPoly::from_i64(&[-1, 0, 1])),
            Err(Error::Reducible { .. })
        ));
        assert!(NumberField::new(&IntPoly::from_i64(&[1, 0, 2])).is_err());
        assert!(matches!(
            NumberField::with_cap(&IntPoly::from_i64(&[2, 0, 0, 1]), 2),
            Err(Error::DegreeCap { .. })
        ));
    }

    #[test]
    fn field_spec_parsing() {
        let k = parse_field_spec("Q[x]/(x^2+1)").unwrap();
        assert_eq!(k.degree(), 2);
        assert!(parse_field_spec("Q[x]/x^2+1").is_err());
        let q = NumberField::rationals();
        assert_eq!(q.degree(), 1);
        assert_eq!(q.parse_element("3/4").unwrap().coords(), &[rat(3, 4)]);
    }
}
