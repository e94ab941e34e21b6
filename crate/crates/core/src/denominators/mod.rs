//! The prime sets `X(K, γ) ⊆ Y(K, γ)`, membership in `O_K[γ] ∩ K`, the kernel
//! ideal `I_{K,γ}` and the ring `O_K[γ] ∩ K` with its class group.
//!
//! `γ` lives in a fixed ambient field `M`; `K` is a subfield of `M` given by a
//! generator. `f_{K,γ} = Σ b_i x^i` is the monic minimal polynomial of `γ` over `K`.

mod compare;
mod section;

pub use compare::{
    cross_field_check, local_classify, same_denominator, CrossFieldReport, LocalRing,
    SameDenominator,
};
pub use section::{denominator_section, section_ideal, DenominatorIdealSection};

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{common_denominator, factorize};
use crate::classgroup::class_group;
use crate::error::{Error, Result};
use crate::field::{
    min_poly_over_subfield, newton_polygon, FieldElement, FractionalIdeal, NumberField,
    PrimeIdeal, Subfield,
};
use crate::linalg::{hnf, solve_integer_row, ZMat};
use crate::poly::{invariants, normalize, parse_rational_poly, IntPoly, InvariantReport, MinimalPolynomial};

/// `γ` inside its ambient field, with the invariants of `F_γ`.
#[derive(Debug, Clone)]
pub struct GammaContext {
    ambient: Arc<NumberField>,
    gamma: FieldElement,
    minpoly: MinimalPolynomial,
    invariants: InvariantReport,
}

impl GammaContext {
    pub fn new(ambient: &Arc<NumberField>, gamma: FieldElement) -> Result<GammaContext> {
        let minpoly = normalize(&ambient.min_poly(&gamma))?;
        let invariants = invariants(&minpoly);
        Ok(GammaContext {
            ambient: ambient.clone(),
            gamma,
            minpoly,
            invariants,
        })
    }

    /// Parse a field such as `Q[x]/(x^2+1)` and an element such as `1/(2+x)`.
    pub fn parse(field: &str, gamma: &str) -> Result<GammaContext> {
        let m = crate::field::parse_field_spec(field)?;
        let g = m.parse_element(gamma)?;
        GammaContext::new(&m, g)
    }

    /// Ambient field `Q(cγ)` built from a minimal polynomial, where `c` is its
    /// leading coefficient, so that the defining polynomial is monic integral.
    pub fn from_minimal_polynomial(f: &IntPoly) -> Result<GammaContext> {
        let mp = MinimalPolynomial::from_int_poly(f)?;
        let n = mp.degree();
        let c = mp.leading();
        let h = IntPoly::new(
            (0..=n)
                .map(|i| {
                    if i == n {
                        BigInt::one()
                    } else {
                        mp.a(i) * c.pow((n - 1 - i) as u32)
                    }
                })
                .collect(),
        );
        let m = NumberField::new(&h)?;
        let gamma = m.scale(&m.generator(), &BigRational::from_integer(c).recip());
        GammaContext::new(&m, gamma)
    }

    /// Parse `γ` from its minimal polynomial, e.g. `5*x^2-4*x+1`.
    pub fn parse_minimal_polynomial(s: &str) -> Result<GammaContext> {
        let mp = normalize(&parse_rational_poly(s)?)?;
        GammaContext::from_minimal_polynomial(mp.poly())
    }

    pub fn ambient(&self) -> &Arc<NumberField> {
        &self.ambient
    }

    pub fn gamma(&self) -> &FieldElement {
        &self.gamma
    }

    pub fn minimal_polynomial(&self) -> &MinimalPolynomial {
        &self.minpoly
    }

    pub fn invariants(&self) -> &InvariantReport {
        &self.invariants
    }

    /// Another element of the same ambient field.
    pub fn with_gamma(&self, gamma: FieldElement) -> Result<GammaContext> {
        GammaContext::new(&self.ambient, gamma)
    }

    pub fn subfield(&self, kappa: &FieldElement) -> Result<Subfield> {
        Subfield::new(&self.ambient, kappa)
    }

    pub fn parse_subfield(&self, kappa: &str) -> Result<Subfield> {
        self.subfield(&self.ambient.parse_element(kappa)?)
    }

    pub fn rationals(&self) -> Subfield {
        Subfield::rationals(&self.ambient)
    }

    /// `Q(γ)`.
    pub fn gamma_field(&self) -> Result<Subfield> {
        self.subfield(&self.gamma)
    }

    /// `K(γ)`.
    pub fn extended_field(&self, k: &Subfield) -> Result<Subfield> {
        Subfield::generated_by(&self.ambient, &[k.generator().clone(), self.gamma.clone()])
    }
}

/// Valuations of the coefficients at one prime; `None` marks a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeValuations {
    pub prime: PrimeIdeal,
    pub valuations: Vec<Option<i64>>,
}

/// `v_P(b_i) > v_P(b_0)` for every `i ≥ 1`.
pub fn x_by_coefficients(vals: &[Option<i64>]) -> bool {
    match vals.first().copied().flatten() {
        None => false,
        Some(v0) => vals[1..].iter().all(|v| v.is_none_or(|v| v > v0)),
    }
}

/// `v_P(b_i) < 0` for some `i < n`.
pub fn y_by_coefficients(vals: &[Option<i64>]) -> bool {
    vals[..vals.len() - 1].iter().any(|v| v.is_some_and(|v| v < 0))
}

#[derive(Debug, Clone)]
pub struct XYReport {
    pub field: Subfield,
    /// `b_0, …, b_n` in the presentation of `K`.
    pub coefficients: Vec<FieldElement>,
    pub candidates: Vec<PrimeValuations>,
    pub x: Vec<PrimeIdeal>,
    pub y: Vec<PrimeIdeal>,
}

impl XYReport {
    pub fn in_x(&self, p: &PrimeIdeal) -> bool {
        self.x.contains(p)
    }

    pub fn in_y(&self, p: &PrimeIdeal) -> bool {
        self.y.contains(p)
    }

    /// `α ∈ O_K[γ] ∩ K` iff every prime where `α` is negative lies in `X`.
    pub fn contains(&self, alpha: &FieldElement) -> Result<bool> {
        if alpha.is_zero() {
            return Ok(true);
        }
        let k = self.field.field();
        let (_, den) = k.integral_numerators(alpha);
        for p in factorize(&den)?.primes() {
            for pr in k.primes_above(p)?.iter() {
                if k.valuation(pr, alpha)? < 0 && !self.in_x(pr) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `I_{K,γ} = ∏ P^{-min_i v_P(b_i)}`.
    pub fn kernel_ideal(&self) -> FractionalIdeal {
        let k = self.field.field();
        let f: Vec<(PrimeIdeal, i64)> = self
            .candidates
            .iter()
            .map(|c| {
                let m = c.valuations.iter().flatten().copied().min().unwrap_or(0);
                (c.prime.clone(), -m)
            })
            .filter(|(_, e)| *e > 0)
            .collect();
        FractionalIdeal::from_factorization(k, &f)
    }

    /// `∏_{P ∈ X} P`.
    pub fn x_product(&self) -> FractionalIdeal {
        let k = self.field.field();
        let f: Vec<(PrimeIdeal, i64)> = self.x.iter().map(|p| (p.clone(), 1)).collect();
        FractionalIdeal::from_factorization(k, &f)
    }

    /// `∏_{P ∈ Y} P`.
    pub fn y_product(&self) -> FractionalIdeal {
        let k = self.field.field();
        let f: Vec<(PrimeIdeal, i64)> = self.y.iter().map(|p| (p.clone(), 1)).collect();
        FractionalIdeal::from_factorization(k, &f)
    }
}

pub fn coefficient_valuations(
    k: &NumberField,
    b: &[FieldElement],
    pr: &PrimeIdeal,
) -> Result<Vec<Option<i64>>> {
    b.iter()
        .map(|c| if c.is_zero() { Ok(None) } else { k.valuation(pr, c).map(Some) })
        .collect()
}

/// Primes where some coefficient has negative valuation. Only these can lie in
/// `Y`, hence in `X`.
pub fn candidate_primes(k: &NumberField, b: &[FieldElement]) -> Result<Vec<PrimeValuations>> {
    let mut dens: Vec<BigInt> = Vec::new();
    for c in b.iter().filter(|c| !c.is_zero()) {
        dens.push(k.integral_numerators(c).1);
    }
    let mut ps: Vec<BigInt> = Vec::new();
    for d in &dens {
        ps.extend(factorize(d)?.primes().cloned());
    }
    ps.sort();
    ps.dedup();
    let mut out = Vec::new();
    for p in &ps {
        for pr in k.primes_above(p)?.iter() {
            let vals = coefficient_valuations(k, b, pr)?;
            if vals.iter().flatten().any(|&v| v < 0) {
                out.push(PrimeValuations {
                    prime: pr.clone(),
                    valuations: vals,
                });
            }
        }
    }
    Ok(out)
}

/// `X(K, γ)` and `Y(K, γ)` by the coefficient criteria.
pub fn compute_xy(k: &Subfield, gamma: &FieldElement) -> Result<XYReport> {
    let b = min_poly_over_subfield(k, gamma);
    let candidates = candidate_primes(k.field(), &b)?;
    let x = candidates
        .iter()
        .filter(|c| x_by_coefficients(&c.valuations))
        .map(|c| c.prime.clone())
        .collect();
    let y = candidates
        .iter()
        .filter(|c| y_by_coefficients(&c.valuations))
        .map(|c| c.prime.clone())
        .collect();
    Ok(XYReport {
        field: k.clone(),
        coefficients: b,
        candidates,
        x,
        y,
    })
}

/// Membership of `α ∈ K` in `O_K[γ]`.
pub fn membership(k: &Subfield, gamma: &FieldElement, alpha: &FieldElement) -> Result<bool> {
    compute_xy(k, gamma)?.contains(alpha)
}

/// The three characterizations of `P ∈ X` and `P ∈ Y`, each as `(in X, in Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriteriaAgreement {
    pub prime: PrimeIdeal,
    pub coefficients: (bool, bool),
    pub primes_above: (bool, bool),
    pub newton: (bool, bool),
}

impl CriteriaAgreement {
    pub fn agree(&self) -> bool {
        self.coefficients == self.primes_above && self.coefficients == self.newton
    }
}

/// Evaluate all three criteria at `P`. `upper` is any subfield containing `K` and `γ`.
pub fn criteria_at(
    k: &Subfield,
    upper: &Subfield,
    gamma: &FieldElement,
    b: &[FieldElement],
    pr: &PrimeIdeal,
) -> Result<CriteriaAgreement> {
    let vals = coefficient_valuations(k.field(), b, pr)?;
    let coefficients = (x_by_coefficients(&vals), y_by_coefficients(&vals));
    let ge = upper
        .from_ambient(gamma)
        .ok_or_else(|| Error::invalid("γ is not in the upper field"))?;
    let mut all_neg = true;
    let mut some_neg = false;
    for q in k.primes_over(upper, pr)? {
        let v = upper.field().valuation(&q, &ge)?;
        all_neg &= v < 0;
        some_neg |= v < 0;
    }
    let np = newton_polygon(k.field(), b, pr)?;
    let newton = (
        np.segments.iter().all(|s| s.end.1 > s.start.1),
        np.has_positive_slope(),
    );
    Ok(CriteriaAgreement {
        prime: pr.clone(),
        coefficients,
        primes_above: (all_neg, some_neg),
        newton,
    })
}

/// Root valuations predicted by the splitting of `P` in `upper ⊇ K(γ)`:
/// each `Q | P` contributes `e(Q|P) f(Q|P)` roots of valuation `v_Q(γ) / e(Q|P)`,
/// counted once per `[upper : K(γ)]`.
pub fn root_valuations_by_splitting(
    k: &Subfield,
    upper: &Subfield,
    gamma: &FieldElement,
    pr: &PrimeIdeal,
) -> Result<Vec<BigRational>> {
    let ge = upper
        .from_ambient(gamma)
        .ok_or_else(|| Error::invalid("γ is not in the upper field"))?;
    let mut out = Vec::new();
    for q in k.primes_over(upper, pr)? {
        let e = q.e() / pr.e();
        let f = q.f() / pr.f();
        let v = upper.field().valuation(&q, &ge)?;
        let r = BigRational::new(BigInt::from(v), BigInt::from(e));
        out.extend(std::iter::repeat_n(r, (e * f) as usize));
    }
    out.sort();
    Ok(out)
}

/// Primes of `K` at which to compare criteria: the candidates, the primes
/// dividing `b_0`, and those above 2 and 3.
pub fn probe_primes(k: &NumberField, b: &[FieldElement]) -> Result<Vec<PrimeIdeal>> {
    let mut ps: Vec<BigInt> = vec![BigInt::from(2), BigInt::from(3)];
    for c in b.iter().filter(|c| !c.is_zero()) {
        let (y, d) = k.integral_numerators(c);
        ps.extend(factorize(&d)?.primes().cloned());
        let ny = k.norm_integral(&y).abs();
        if !ny.is_zero() {
            ps.extend(factorize(&ny)?.primes().cloned());
        }
    }
    ps.sort();
    ps.dedup();
    let mut out = Vec::new();
    for p in &ps {
        out.extend(k.primes_above(p)?.iter().cloned());
    }
    Ok(out)
}

/// Outcome of the explicit search for `g ∈ O_K[x]` with `g(γ) = α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Coefficients `c_0, …, c_m ∈ O_K` (presentation of `K`) with `Σ c_j γ^j = α`.
    Member { coefficients: Vec<FieldElement> },
    /// Nothing found with `deg g ≤ cap`; this is not a proof of non-membership.
    NoWitness { cap: usize },
}

impl OracleOutcome {
    pub fn is_member(&self) -> bool {
        matches!(self, OracleOutcome::Member { .. })
    }
}

pub const ORACLE_CAP: usize = 64;

/// A Z-submodule of `M` (possibly of lower rank): `(1/den) · rowspan(rows)`.
struct Module {
    den: BigInt,
    rows: ZMat,
}

impl Module {
    fn from_rows(rows: &[Vec<BigRational>]) -> Module {
        let den = common_denominator(rows.iter().flatten());
        let dq = BigRational::from_integer(den.clone());
        let z: ZMat = rows
            .iter()
            .map(|r| r.iter().map(|x| (x * &dq).to_integer()).collect())
            .collect();
        Module { den, rows: hnf(&z) }
    }

    fn basis(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::new(x.clone(), self.den.clone())).collect())
            .collect()
    }
}

/// Integer `x` with `x · rows = target` over the rationals, or `None`.
fn solve_rational_rows(rows: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigInt>> {
    let den = common_denominator(rows.iter().flatten().chain(target));
    let dq = BigRational::from_integer(den);
    let z = |r: &[BigRational]| -> Vec<BigInt> { r.iter().map(|x| (x * &dq).to_integer()).collect() };
    let a: ZMat = rows.iter().map(|r| z(r)).collect();
    solve_integer_row(&a, &z(target))
}

/// Solve `Σ_{j ≤ m} c_j γ^j = α` with `c_j ∈ O_K` and `m ≤ cap`.
///
/// The modules `L_0 = O_K` and `L_j = O_K + γ L_{j-1}` are kept in Hermite
/// form; once `α ∈ L_m`, the coefficients are peeled off one degree at a time
/// by solving `t = c + γ t'` with `c ∈ O_K` and `t' ∈ L_{j-1}`.
pub fn membership_oracle(
    k: &Subfield,
    gamma: &FieldElement,
    alpha: &FieldElement,
    cap: usize,
) -> Result<OracleOutcome> {
    let m_field = k.ambient();
    let target = k.to_ambient(alpha);
    let w: Vec<Vec<BigRational>> = k
        .integral_basis_in_ambient()
        .iter()
        .map(|e| e.coords().to_vec())
        .collect();
    let times_gamma = |rows: &[Vec<BigRational>]| -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| m_field.mul(&m_field.element(r.clone()), gamma).coords().to_vec())
            .collect()
    };
    let mut modules = vec![Module::from_rows(&w)];
    let mut degree = None;
    for j in 0..=cap {
        if j > 0 {
            let mut rows = w.clone();
            rows.extend(times_gamma(&modules[j - 1].basis()));
            modules.push(Module::from_rows(&rows));
        }
        if solve_rational_rows(&modules[j].basis(), target.coords()).is_some() {
            degree = Some(j);
            break;
        }
    }
    let Some(deg) = degree else {
        return Ok(OracleOutcome::NoWitness { cap });
    };
    let kd = w.len();
    let mut coefficients = Vec::with_capacity(deg + 1);
    let mut t = target.clone();
    for j in (1..=deg).rev() {
        let prev = modules[j - 1].basis();
        let mut rows = w.clone();
        rows.extend(times_gamma(&prev));
        let x = solve_rational_rows(&rows, t.coords())
            .ok_or_else(|| Error::invalid("oracle lost track of a representation"))?;
        coefficients.push(k.field().from_integer_coords(&x[..kd]));
        let mut next = vec![BigRational::zero(); m_field.degree()];
        for (y, r) in x[kd..].iter().zip(&prev) {
            for (n, v) in next.iter_mut().zip(r) {
                *n += v * BigRational::from_integer(y.clone());
            }
        }
        t = m_field.element(next);
    }
    let x = solve_rational_rows(&w, t.coords())
        .ok_or_else(|| Error::invalid("oracle lost track of a representation"))?;
    coefficients.push(k.field().from_integer_coords(&x));
    // verify the representation exactly
    let mut acc = m_field.zero();
    let mut gp = m_field.one();
    for c in &coefficients {
        acc = m_field.add(&acc, &m_field.mul(&k.to_ambient(c), &gp));
        gp = m_field.mul(&gp, gamma);
    }
    if acc != target {
        return Err(Error::invalid("oracle representation failed verification"));
    }
    Ok(OracleOutcome::Member { coefficients })
}

/// `O_K[γ] ∩ K = O_{K,X}` with the class group of the localization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDescription {
    pub x: Vec<PrimeIdeal>,
    pub is_ok: bool,
    /// Elementary divisors of `Cl(O_K)`.
    pub class_group: Vec<BigInt>,
    /// Elementary divisors of `Cl(O_K) / ⟨[P] : P ∈ X⟩`.
    pub quotient: Vec<BigInt>,
    pub is_pid: bool,
}

pub fn ring_description(k: &Subfield, gamma: &FieldElement) -> Result<RingDescription> {
    let xy = compute_xy(k, gamma)?;
    let g = class_group(k.field())?;
    let quotient = g.quotient(&xy.x)?;
    Ok(RingDescription {
        is_ok: xy.x.is_empty(),
        class_group: g.elementary_divisors().to_vec(),
        is_pid: quotient.is_empty(),
        quotient,
        x: xy.x,
    })
}

/// `I_{K,γ}`.
pub fn kernel_ideal(k: &Subfield, gamma: &FieldElement) -> Result<FractionalIdeal> {
    Ok(compute_xy(k, gamma)?.kernel_ideal())
}

/// `(Σ b_i O_K)^{-1}`, equal to `I_{K,γ}` because `b_n = 1`.
pub fn kernel_ideal_from_coefficients(k: &NumberField, b: &[FieldElement]) -> Result<FractionalIdeal> {
    Ok(FractionalIdeal::generated_by(k, b)?.inverse(k))
}

/// A generator of `P^h` with `h` the class number: the constructive `α ∈ P`
/// with `1/α ∈ O_K[γ]` whenever `P ∈ X(K, γ)`.
pub fn constructive_alpha(k: &Subfield, pr: &PrimeIdeal) -> Result<FieldElement> {
    let g = class_group(k.field())?;
    let h = g.order();
    let h = u32::try_from(h).map_err(|_| Error::invalid("class number too large"))?;
    g.power_generator(&pr.ideal(), h)
}

/// Whether `α` has a negative valuation anywhere (shortcut for integrality).
pub fn is_integral(k: &NumberField, a: &FieldElement) -> bool {
    k.is_integral(a) || a.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn ctx(g: &str) -> GammaContext {
        GammaContext::parse("Q[x]/(x^2+1)", g).unwrap()
    }

    fn labels(ps: &[PrimeIdeal]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn half_gaussian_example() {
        let c = ctx("1/(2+x)");
        let inv = c.invariants();
        assert_eq!((inv.c.clone(), inv.d.clone(), inv.e.clone(), inv.n), (int(5), int(5), int(1), 2));
        let q = c.rationals();
        let r = compute_xy(&q, c.gamma()).unwrap();
        assert!(r.x.is_empty());
        assert_eq!(labels(&r.y), vec!["(5)"]);
        let k = c.parse_subfield("x").unwrap();
        let r = compute_xy(&k, c.gamma()).unwrap();
        assert_eq!(labels(&r.x), vec!["(5, x+2)"]);
        assert_eq!(r.x, r.y);
        let two_plus_i = k.field().parse_element("2+x").unwrap();
        assert!(k.field().valuation(&r.x[0], &two_plus_i).unwrap() > 0);
        assert_eq!(r.kernel_ideal(), FractionalIdeal::principal(k.field(), &two_plus_i).unwrap());
        assert_eq!(
            kernel_ideal(&q, c.gamma()).unwrap(),
            FractionalIdeal::principal(q.field(), &q.field().from_int(5)).unwrap()
        );
        assert_eq!(
            kernel_ideal_from_coefficients(k.field(), &r.coefficients).unwrap(),
            r.kernel_ideal()
        );
    }

    #[test]
    fn sixty_plus_fifteen_i_example() {
        let c = ctx("1/(60+15*x)");
        let q = c.rationals();
        let r = compute_xy(&q, c.gamma()).unwrap();
        assert_eq!(labels(&r.x), vec!["(3)", "(5)"]);
        let k = c.parse_subfield("x").unwrap();
        let r = compute_xy(&k, c.gamma()).unwrap();
        assert_eq!(r.x.len(), 4);
        assert_eq!(r.x, r.y);
    }

    #[test]
    fn membership_and_oracle() {
        let c = ctx("1/(2+x)");
        let q = c.rationals();
        let k = c.parse_subfield("x").unwrap();
        let fifth = q.field().from_rational(BigRational::new(int(1), int(5)));
        assert!(!membership(&q, c.gamma(), &fifth).unwrap());
        assert!(membership(&q, c.gamma(), &q.field().from_int(7)).unwrap());
        assert_eq!(
            membership_oracle(&q, c.gamma(), &fifth, 20).unwrap(),
            OracleOutcome::NoWitness { cap: 20 }
        );
        let fifth_k = k.field().from_rational(BigRational::new(int(1), int(5)));
        // 1/5 has valuation -1 at the prime containing 2 - i, which is not inverted
        assert!(!membership(&k, c.gamma(), &fifth_k).unwrap());
        assert!(!membership_oracle(&k, c.gamma(), &fifth_k, 16).unwrap().is_member());
        let g = k.field().parse_element("1/(2+x)").unwrap();
        assert!(membership(&k, c.gamma(), &g).unwrap());
        assert!(membership_oracle(&k, c.gamma(), &g, 4).unwrap().is_member());
        let g3 = k.field().parse_element("1/(3+4*x)").unwrap();
        assert!(membership(&k, c.gamma(), &g3).unwrap());
        assert!(membership_oracle(&k, c.gamma(), &g3, ORACLE_CAP).unwrap().is_member());
        let c2 = ctx("1/(60+15*x)");
        let third = q.field().from_rational(BigRational::new(int(1), int(3)));
        assert!(membership(&q, c2.gamma(), &third).unwrap());
        assert!(membership_oracle(&q, c2.gamma(), &third, ORACLE_CAP).unwrap().is_member());
    }

    #[test]
    fn criteria_agree_on_examples() {
        for g in ["1/(2+x)", "1/(60+15*x)", "(1+x)/6", "x/2"] {
            let c = ctx(g);
            for k in [c.rationals(), c.parse_subfield("x").unwrap()] {
                let upper = c.extended_field(&k).unwrap();
                let b = min_poly_over_subfield(&k, c.gamma());
                for pr in probe_primes(k.field(), &b).unwrap() {
                    let a = criteria_at(&k, &upper, c.gamma(), &b, &pr).unwrap();
                    assert!(a.agree(), "{g} at {pr}: {a:?}");
                    let np = newton_polygon(k.field(), &b, &pr).unwrap();
                    assert_eq!(
                        np.root_valuations(),
                        root_valuations_by_splitting(&k, &upper, c.gamma(), &pr).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn ring_descriptions() {
        let c = GammaContext::parse("Q[x]/(x^2+5)", "1/2").unwrap();
        let k = c.parse_subfield("x").unwrap();
        let r = ring_description(&k, c.gamma()).unwrap();
        assert!(!r.is_ok);
        assert!(r.is_pid);
        assert_eq!(r.class_group, vec![int(2)]);
        let c = GammaContext::parse("Q[x]/(x^2+5)", "x").unwrap();
        let r = ring_description(&k, c.gamma()).unwrap();
        assert!(r.is_ok);
        assert!(!r.is_pid);
        let c = ctx("1/(2+x)");
        assert!(ring_description(&c.rationals(), c.gamma()).unwrap().is_ok);
    }

    #[test]
    fn context_from_minimal_polynomial() {
        let c = GammaContext::parse_minimal_polynomial("5*x^2-4*x+1").unwrap();
        assert_eq!(c.invariants().c, int(5));
        let r = compute_xy(&c.rationals(), c.gamma()).unwrap();
        assert!(r.x.is_empty());
        assert_eq!(labels(&r.y), vec!["(5)"]);
    }
}
