//! Class groups of `O_K`, principality with explicit generators, and
//! quotients of the class group by classes of given primes.
//!
//! Quadratic fields get an exact principality test, so the relation lattice is
//! certified by checking that no nonzero class of prime order is principal.
//! In higher degree only class number one can be certified, by finding a
//! generator for every prime in the factor base.

mod quadratic;
mod search;

pub use quadratic::fundamental_unit;
pub use search::search_generator;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, isqrt};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FractionalIdeal, NumberField, PrimeIdeal};
use crate::linalg::{snf, ZMat};
use crate::poly::IntPoly;
use quadratic::QuadraticData;

/// Norm-computation budget for generator searches in degree at least 3.
pub const SEARCH_BUDGET: usize = 200_000;
/// Largest order tried when looking for a principal power of a prime.
pub const ORDER_CAP: u32 = 500;

#[derive(Debug, Clone)]
enum Engine {
    Rational,
    Quadratic(QuadraticData),
    General,
}

/// Generator of a principal ideal together with its class data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalityResult {
    pub principal: bool,
    pub generator: Option<FieldElement>,
    pub class_vector: Vec<BigInt>,
}

#[derive(Debug)]
pub struct ClassGroup {
    field: Arc<NumberField>,
    engine: Engine,
    minkowski: BigInt,
    factor_base: Vec<PrimeIdeal>,
    /// Elementary divisors `d_1 | d_2 | …`, all greater than one.
    divisors: Vec<BigInt>,
    generators: Vec<FractionalIdeal>,
    generator_primes: Vec<Option<PrimeIdeal>>,
    /// Class of each factor-base prime in the coordinates of `divisors`.
    fb_classes: Vec<Vec<BigInt>>,
}

fn cache() -> &'static Mutex<HashMap<IntPoly, Arc<ClassGroup>>> {
    static CACHE: OnceLock<Mutex<HashMap<IntPoly, Arc<ClassGroup>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Class group of `O_K`, cached per defining polynomial.
pub fn class_group(k: &Arc<NumberField>) -> Result<Arc<ClassGroup>> {
    if let Some(g) = cache().lock().expect("class group cache").get(k.defining_poly()) {
        return Ok(g.clone());
    }
    let g = Arc::new(ClassGroup::compute(k)?);
    cache()
        .lock()
        .expect("class group cache")
        .insert(k.defining_poly().clone(), g.clone());
    Ok(g)
}

/// An integer at least the Minkowski bound `(4/π)^r2 · n!/n^n · √|D|`.
pub fn minkowski_bound(k: &NumberField) -> BigInt {
    let n = k.degree() as u32;
    let (_, r2) = k.signature();
    let d = k.discriminant().abs();
    let mut root = isqrt(&d);
    if &root * &root != d {
        root += 1;
    }
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    // 4/π < 12733/10000
    let num = BigInt::from(12733).pow(r2 as u32) * fact * root;
    let den = BigInt::from(10000).pow(r2 as u32) * BigInt::from(n).pow(n);
    num.div_floor(&den)
}

fn primes_up_to(b: &BigInt) -> Vec<BigInt> {
    let b = b.to_u64().unwrap_or(u64::MAX).min(10_000_000);
    let mut sieve = vec![true; (b + 1) as usize];
    let mut out = Vec::new();
    for i in 2..=b as usize {
        if sieve[i] {
            out.push(BigInt::from(i));
            let mut j = i * i;
            while j <= b as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

impl ClassGroup {
    fn compute(k: &Arc<NumberField>) -> Result<ClassGroup> {
        let engine = match k.degree() {
            1 => Engine::Rational,
            2 => Engine::Quadratic(QuadraticData::new(k)),
            _ => Engine::General,
        };
        let minkowski = minkowski_bound(k);
        if minkowski > BigInt::from(1_000_000) {
            return Err(Error::ClassGroupUncertified(format!(
                "Minkowski bound {minkowski} is too large"
            )));
        }
        let mut factor_base = Vec::new();
        for p in primes_up_to(&minkowski) {
            for pr in k.primes_above(&p)?.iter() {
                if pr.norm() <= minkowski {
                    factor_base.push(pr.clone());
                }
            }
        }
        let mut g = ClassGroup {
            field: k.clone(),
            engine,
            minkowski,
            factor_base,
            divisors: Vec::new(),
            generators: Vec::new(),
            generator_primes: Vec::new(),
            fb_classes: Vec::new(),
        };
        match &g.engine {
            Engine::Rational => {}
            Engine::General => {
                for pr in &g.factor_base {
                    if search_generator(k, &pr.ideal(), SEARCH_BUDGET).is_none() {
                        return Err(Error::ClassGroupUncertified(format!(
                            "no generator found for {pr}; in degree {} only class number one is certified",
                            k.degree()
                        )));
                    }
                }
            }
            Engine::Quadratic(_) => g.relations()?,
        }
        g.fb_classes.resize(g.factor_base.len(), Vec::new());
        Ok(g)
    }

    /// Build and certify the relation lattice over the factor base.
    fn relations(&mut self) -> Result<()> {
        let k = self.field.clone();
        let m = self.factor_base.len();
        if m == 0 {
            return Ok(());
        }
        let mut rows: ZMat = Vec::new();
        // pO = ∏ P^e when all primes above p are in the base
        let mut ps: Vec<BigInt> = self.factor_base.iter().map(|q| q.p().clone()).collect();
        ps.dedup();
        for p in &ps {
            let above = k.primes_above(p)?;
            if above.iter().all(|q| self.factor_base.contains(q)) {
                let mut r = vec![BigInt::zero(); m];
                for q in above.iter() {
                    let i = self.factor_base.iter().position(|x| x == q).expect("in base");
                    r[i] = BigInt::from(q.e());
                }
                rows.push(r);
            }
        }
        // order of each prime class
        for i in 0..m {
            let base = self.factor_base[i].ideal();
            let mut pw = base.clone();
            let mut found = false;
            for e in 1..=ORDER_CAP {
                if self.raw_generator(&pw)?.is_some() {
                    let mut r = vec![BigInt::zero(); m];
                    r[i] = BigInt::from(e);
                    rows.push(r);
                    found = true;
                    break;
                }
                pw = pw.mul(&k, &base);
            }
            if !found {
                return Err(Error::ClassGroupUncertified(format!(
                    "class of {} has order above {ORDER_CAP}",
                    self.factor_base[i]
                )));
            }
        }
        loop {
            let s = snf(&rows);
            let diag = s.diagonal.clone();
            let h: BigInt = diag.iter().product();
            let mut missing = None;
            for ell in factorize(&h)?.primes() {
                let js: Vec<usize> = (0..diag.len()).filter(|&j| diag[j].is_multiple_of(ell)).collect();
                let l = ell.to_u64().expect("small prime");
                let count = l.pow(js.len() as u32);
                for code in 1..count {
                    let mut t = Vec::with_capacity(js.len());
                    let mut c = code;
                    for _ in &js {
                        t.push(c % l);
                        c /= l;
                    }
                    // one representative per line: first nonzero coordinate is 1
                    if t.iter().find(|&&x| x != 0) != Some(&1) {
                        continue;
                    }
                    let mut x = vec![BigInt::zero(); m];
                    for (tj, &j) in t.iter().zip(&js) {
                        let cj = BigInt::from(*tj) * (&diag[j] / ell);
                        for (xi, vi) in x.iter_mut().zip(&s.v_inv[j]) {
                            *xi += &cj * vi;
                        }
                    }
                    if self.raw_generator(&self.ideal_of(&x))?.is_some() {
                        missing = Some(x);
                        break;
                    }
                }
                if missing.is_some() {
                    break;
                }
            }
            match missing {
                Some(x) => rows.push(x),
                None => {
                    self.install(&s);
                    return Ok(());
                }
            }
        }
    }

    fn install(&mut self, s: &crate::linalg::Snf) {
        let m = self.factor_base.len();
        let keep: Vec<usize> = (0..s.diagonal.len()).filter(|&j| !s.diagonal[j].is_one()).collect();
        self.divisors = keep.iter().map(|&j| s.diagonal[j].clone()).collect();
        self.fb_classes = (0..m)
            .map(|i| {
                keep.iter()
                    .map(|&j| s.v[i][j].mod_floor(&s.diagonal[j]))
                    .collect()
            })
            .collect();
        for (pos, &j) in keep.iter().enumerate() {
            let target: Vec<BigInt> = (0..keep.len())
                .map(|q| if q == pos { BigInt::one() } else { BigInt::zero() })
                .collect();
            let prime = (0..m).find(|&i| self.fb_classes[i] == target);
            match prime {
                Some(i) => {
                    self.generators.push(self.factor_base[i].ideal());
                    self.generator_primes.push(Some(self.factor_base[i].clone()));
                }
                None => {
                    self.generators.push(self.ideal_of(&s.v_inv[j]));
                    self.generator_primes.push(None);
                }
            }
        }
    }

    fn ideal_of(&self, x: &[BigInt]) -> FractionalIdeal {
        let k = &self.field;
        let mut out = FractionalIdeal::unit(k);
        for (xi, pr) in x.iter().zip(&self.factor_base) {
            if !xi.is_zero() {
                out = out.mul(k, &pr.ideal().pow(k, xi.to_i64().expect("small exponent")));
            }
        }
        out
    }

    /// Some generator of `I`, or `None` if `I` is not principal. Only the
    /// rational and quadratic engines can return `None`.
    fn raw_generator(&self, i: &FractionalIdeal) -> Result<Option<FieldElement>> {
        let k = &self.field;
        let den = BigRational::from_integer(i.denominator().clone());
        let j = FractionalIdeal::from_lattice(i.lattice().scale(&den));
        let g = match &self.engine {
            Engine::Rational => Some(k.from_int(j.lattice().hnf()[0][0].clone())),
            Engine::Quadratic(q) => q.generator(k, &j)?,
            Engine::General => Some(search_generator(k, &j, SEARCH_BUDGET).ok_or_else(|| {
                Error::EffortExceeded(format!("generator search for an ideal of norm {}", j.norm()))
            })?),
        };
        Ok(g.map(|a| k.scale(&a, &den.recip())))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn elementary_divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn order(&self) -> BigInt {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn generators(&self) -> &[FractionalIdeal] {
        &self.generators
    }

    /// Prime ideals representing the generators, where one exists in the factor base.
    pub fn generator_primes(&self) -> &[Option<PrimeIdeal>] {
        &self.generator_primes
    }

    pub fn factor_base(&self) -> &[PrimeIdeal] {
        &self.factor_base
    }

    pub fn minkowski_bound(&self) -> &BigInt {
        &self.minkowski
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter().zip(&self.divisors).map(|(x, d)| x.mod_floor(d)).collect()
    }

    fn combination(&self, c: &[BigInt]) -> FractionalIdeal {
        let k = &self.field;
        let mut out = FractionalIdeal::unit(k);
        for (ci, g) in c.iter().zip(&self.generators) {
            if !ci.is_zero() {
                out = out.mul(k, &g.pow(k, ci.to_i64().expect("small exponent")));
            }
        }
        out
    }

    /// Class of a prime ideal in the coordinates of the elementary divisors.
    pub fn prime_class(&self, pr: &PrimeIdeal) -> Result<Vec<BigInt>> {
        if self.is_trivial() {
            return Ok(Vec::new());
        }
        if let Some(i) = self.factor_base.iter().position(|q| q == pr) {
            return Ok(self.fb_classes[i].clone());
        }
        self.class_by_search(&pr.ideal())
    }

    fn class_by_search(&self, i: &FractionalIdeal) -> Result<Vec<BigInt>> {
        let total = self.order().to_u64().unwrap_or(u64::MAX);
        for code in 0..total {
            let mut c = Vec::with_capacity(self.divisors.len());
            let mut rest = code;
            for d in &self.divisors {
                let d = d.to_u64().expect("small divisor");
                c.push(BigInt::from(rest % d));
                rest /= d;
            }
            let inv: Vec<BigInt> = c.iter().map(|x| -x).collect();
            let probe = i.mul(&self.field, &self.combination(&inv));
            if self.raw_generator(&probe)?.is_some() {
                return Ok(c);
            }
        }
        Err(Error::invalid("ideal matches no class; class group is inconsistent"))
    }

    /// Class of a nonzero fractional ideal.
    pub fn class_vector(&self, i: &FractionalIdeal) -> Result<Vec<BigInt>> {
        if self.is_trivial() {
            return Ok(Vec::new());
        }
        let mut acc = vec![BigInt::zero(); self.divisors.len()];
        for (pr, v) in i.factor(&self.field)? {
            let c = self.prime_class(&pr)?;
            for (a, x) in acc.iter_mut().zip(&c) {
                *a += x * v;
            }
        }
        Ok(self.reduce(&acc))
    }

    pub fn is_principal(&self, i: &FractionalIdeal) -> Result<PrincipalityResult> {
        let cv = self.class_vector(i)?;
        if cv.iter().any(|x| !x.is_zero()) {
            return Ok(PrincipalityResult {
                principal: false,
                generator: None,
                class_vector: cv,
            });
        }
        let g = self
            .raw_generator(i)?
            .ok_or_else(|| Error::invalid("trivial class vector but no generator found"))?;
        let g = self.normalize(&g);
        debug_assert_eq!(&FractionalIdeal::principal(&self.field, &g)?, i);
        Ok(PrincipalityResult {
            principal: true,
            generator: Some(g),
            class_vector: cv,
        })
    }

    /// Verified generator of `I^k`.
    pub fn power_generator(&self, i: &FractionalIdeal, k: u32) -> Result<FieldElement> {
        let ik = i.pow(&self.field, i64::from(k));
        let r = self.is_principal(&ik)?;
        let g = r.generator.ok_or(Error::NotPrincipal(r.class_vector))?;
        if FractionalIdeal::principal(&self.field, &g)? != ik {
            return Err(Error::invalid("generator does not generate the ideal"));
        }
        Ok(g)
    }

    /// Elementary divisors of `Cl(O_K) / ⟨[P] : P ∈ primes⟩`.
    pub fn quotient(&self, primes: &[PrimeIdeal]) -> Result<Vec<BigInt>> {
        if self.is_trivial() {
            return Ok(Vec::new());
        }
        let r = self.divisors.len();
        let mut rows: ZMat = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| if i == j { self.divisors[i].clone() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        for pr in primes {
            rows.push(self.prime_class(pr)?);
        }
        Ok(snf(&rows)
            .diagonal
            .into_iter()
            .filter(|d| !d.is_one())
            .collect())
    }

    /// Units used to normalize generators: torsion units, and for real
    /// quadratic fields a few powers of the fundamental unit.
    fn unit_sweep(&self) -> Vec<FieldElement> {
        let k = &self.field;
        match &self.engine {
            Engine::Rational | Engine::General => vec![k.one(), k.from_int(-1)],
            Engine::Quadratic(q) => {
                let tors = q.torsion_units(k);
                let Some(eps) = q.fundamental_unit(k) else {
                    return tors;
                };
                let mut out = Vec::new();
                for e in -2i64..=2 {
                    let pw = k.pow(&eps, e).expect("unit");
                    for t in &tors {
                        out.push(k.mul(&pw, t));
                    }
                }
                out
            }
        }
    }

    /// Among `u·g` for units `u` in the sweep, prefer nonnegative coordinates,
    /// then the lexicographically least coordinate vector.
    pub fn normalize(&self, g: &FieldElement) -> FieldElement {
        let k = &self.field;
        self.unit_sweep()
            .iter()
            .map(|u| k.mul(u, g))
            .min_by(|a, b| {
                let key = |x: &FieldElement| x.coords().iter().any(|c| c.is_negative());
                key(a).cmp(&key(b)).then_with(|| a.coords().cmp(b.coords()))
            })
            .expect("nonempty sweep")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn field(c: &[i64]) -> Arc<NumberField> {
        NumberField::new(&IntPoly::from_i64(c)).unwrap()
    }

    #[test]
    fn small_class_groups() {
        assert!(class_group(&field(&[1, 0, 1])).unwrap().is_trivial());
        assert!(class_group(&field(&[-2, 0, 1])).unwrap().is_trivial());
        let g = class_group(&field(&[5, 0, 1])).unwrap();
        assert_eq!(g.elementary_divisors(), &[int(2)]);
        assert_eq!(g.generator_primes()[0].as_ref().unwrap().to_string(), "(2, x+1)");
        assert_eq!(class_group(&field(&[6, 1, 1])).unwrap().order(), int(3));
        assert_eq!(class_group(&field(&[23, 1, 1])).unwrap().order(), int(2));
        assert_eq!(class_group(&field(&[-10, 0, 1])).unwrap().order(), int(2));
        assert_eq!(class_group(&field(&[-79, 0, 1])).unwrap().order(), int(3));
        assert_eq!(class_group(&field(&[14, 0, 1])).unwrap().elementary_divisors(), &[int(4)]);
        assert_eq!(class_group(&field(&[21, 0, 1])).unwrap().elementary_divisors(), &[int(2), int(2)]);
        assert!(class_group(&field(&[-2, 0, 0, 1])).unwrap().is_trivial());
    }

    #[test]
    fn principality_in_sqrt_minus_five() {
        let k = field(&[5, 0, 1]);
        let g = class_group(&k).unwrap();
        let p2 = k.primes_above(&int(2)).unwrap()[0].clone();
        let r = g.is_principal(&p2.ideal()).unwrap();
        assert!(!r.principal);
        assert_eq!(r.class_vector, vec![int(1)]);
        let gen = g.power_generator(&p2.ideal(), 2).unwrap();
        assert_eq!(gen, k.from_int(2));
        assert!(g.quotient(&[p2]).unwrap().is_empty());
        assert_eq!(g.quotient(&[]).unwrap(), vec![int(2)]);
    }

    #[test]
    fn normalized_generators() {
        let k = field(&[1, 0, 1]);
        let g = class_group(&k).unwrap();
        let i = FractionalIdeal::principal(&k, &k.parse_element("1-4*x").unwrap()).unwrap();
        let r = g.is_principal(&i).unwrap();
        assert_eq!(r.generator.unwrap(), k.parse_element("4+x").unwrap());
        let q = NumberField::rationals();
        let gq = class_group(&q).unwrap();
        let i15 = FractionalIdeal::principal(&q, &q.from_int(-15)).unwrap();
        assert_eq!(gq.power_generator(&i15, 1).unwrap(), q.from_int(15));
        let k2 = field(&[-2, 0, 1]);
        let g2 = class_group(&k2).unwrap();
        let p7 = k2.primes_above(&int(7)).unwrap()[0].clone();
        let a = g2.power_generator(&p7.ideal(), 1).unwrap();
        assert_eq!(k2.norm(&a).abs(), BigRational::from_integer(int(7)));
    }
}
