//! Generating sets: the primes `𝓛(γ, K)` of `X(K, γ)` not explained by a
//! proper subfield, the fields `𝓛(γ)` where they occur, and one `α_K` per
//! such field.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::classgroup::class_group;
use crate::denominators::compute_xy;
use crate::error::{Error, Result};
use crate::field::{adjoin_sqrt, FieldElement, FractionalIdeal, NumberField, PrimeIdeal, Subfield};
use crate::poly::QPoly;

/// Largest degree for which subfields are enumerated.
pub const MAX_SUBFIELD_DEGREE: usize = 4;

/// All subfields of a field of degree at most 4, in canonical order
/// (degree, then discriminant).
#[derive(Debug, Clone)]
pub struct SubfieldLattice {
    fields: Vec<Subfield>,
}

fn canonical_key(k: &Subfield) -> (usize, BigInt) {
    (k.degree(), k.field().discriminant().clone())
}

impl SubfieldLattice {
    pub fn fields(&self) -> &[Subfield] {
        &self.fields
    }

    pub fn top(&self) -> &Subfield {
        self.fields.last().expect("lattice contains the top field")
    }

    /// Members of the lattice strictly contained in `k`.
    pub fn proper_subfields(&self, k: &Subfield) -> Vec<&Subfield> {
        self.fields
            .iter()
            .filter(|f| f.degree() < k.degree() && k.contains_subfield(f))
            .collect()
    }

    pub fn quadratic(&self) -> Vec<&Subfield> {
        self.fields.iter().filter(|f| f.degree() == 2).collect()
    }
}

/// Quadratic subfields of a quartic `K`: each rational root `r` of the
/// resolvent cubic pairs the roots of the defining polynomial, and the pair sum
/// `s` or the pair product `sθ - θ²` generates the corresponding subfield.
fn quartic_quadratic_subfields(k: &Subfield) -> Result<Vec<Subfield>> {
    let kf = k.field();
    let f = kf.defining_poly();
    let a = |i: usize| BigRational::from_integer(f.coeff(i));
    let (a0, a1, a2, a3) = (a(0), a(1), a(2), a(3));
    let four = BigRational::from_integer(BigInt::from(4));
    let resolvent = QPoly::new(vec![
        -(&a1 * &a1 + &a0 * &a3 * &a3 - &four * &a0 * &a2),
        &a1 * &a3 - &four * &a0,
        -a2.clone(),
        BigRational::one(),
    ]);
    let theta = kf.generator();
    let th2 = kf.mul(&theta, &theta);
    let mut out: Vec<Subfield> = Vec::new();
    for r in resolvent.rational_roots() {
        let rq = kf.from_rational(r.clone());
        let num = kf.add(
            &kf.add(&kf.scale(&th2, &a3), &kf.scale(&theta, &(BigRational::from_integer(BigInt::from(2)) * (&a2 - &r)))),
            &kf.from_rational(a1.clone()),
        );
        let den = kf.add(&kf.add(&kf.scale(&th2, &BigRational::from_integer(BigInt::from(2))), &kf.scale(&theta, &a3)), &rq);
        let s = kf.neg(&kf.div(&num, &den)?);
        let g = match kf.degree_of(&s) {
            2 => s,
            1 => kf.sub(&kf.mul(&s, &theta), &th2),
            _ => return Err(Error::invalid("resolvent root yields no quadratic subfield")),
        };
        if kf.degree_of(&g) != 2 {
            return Err(Error::invalid("resolvent root yields no quadratic subfield"));
        }
        let sub = Subfield::new(k.ambient(), &k.to_ambient(&g))?;
        if !out.iter().any(|o| o.same_field(&sub)) {
            out.push(sub);
        }
    }
    Ok(out)
}

/// The complete subfield lattice of `K`, for `[K : Q] ≤ 4`.
pub fn subfields(k: &Subfield) -> Result<SubfieldLattice> {
    let n = k.degree();
    if n > MAX_SUBFIELD_DEGREE {
        return Err(Error::Unsupported(format!(
            "subfield enumeration for degree {n} (cap {MAX_SUBFIELD_DEGREE})"
        )));
    }
    let mut fields = vec![Subfield::rationals(k.ambient())];
    if n == 4 {
        fields.extend(quartic_quadratic_subfields(k)?);
    }
    if n > 1 {
        fields.push(k.clone());
    }
    fields.sort_by_key(canonical_key);
    Ok(SubfieldLattice { fields })
}

/// `𝓛(γ, K)`: primes `Q ∈ X(K, γ)` with `Q ∩ K₁ ∉ X(K₁, γ)` for every proper
/// subfield `K₁`.
pub fn l_gamma_k(k: &Subfield, lattice: &SubfieldLattice, gamma: &FieldElement) -> Result<Vec<PrimeIdeal>> {
    let x = compute_xy(k, gamma)?.x;
    let lower: Vec<(&Subfield, Vec<PrimeIdeal>)> = lattice
        .proper_subfields(k)
        .into_iter()
        .map(|k1| Ok((k1, compute_xy(k1, gamma)?.x)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    'primes: for q in x {
        for (k1, x1) in &lower {
            if x1.contains(&k1.prime_below(k, &q)?) {
                continue 'primes;
            }
        }
        out.push(q);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct GenSetEntry {
    pub field: Subfield,
    pub primes: Vec<PrimeIdeal>,
    /// `J_{K,γ} = ∏_{Q ∈ 𝓛(γ,K)} Q`.
    pub j: FractionalIdeal,
    pub class_number: BigInt,
    /// Generator of `J^h`, in the presentation of `K`.
    pub alpha: FieldElement,
    /// `α_K` as an element of the ambient field.
    pub alpha_ambient: FieldElement,
}

#[derive(Debug, Clone)]
pub struct GenSetResult {
    pub ambient: Arc<NumberField>,
    pub gamma: FieldElement,
    pub lattice: SubfieldLattice,
    /// One entry per field of `𝓛(γ)`, in canonical field order.
    pub entries: Vec<GenSetEntry>,
}

impl GenSetResult {
    /// `S`, in the ambient field.
    pub fn set(&self) -> Vec<FieldElement> {
        self.entries.iter().map(|e| e.alpha_ambient.clone()).collect()
    }

    pub fn fields(&self) -> Vec<&Subfield> {
        self.entries.iter().map(|e| &e.field).collect()
    }
}

/// The generating set `S = {α_K : K ∈ 𝓛(γ)}`. Only subfields of `Q(γ)` can
/// carry primes of `𝓛`, so the lattice of `Q(γ)` is enough.
pub fn generating_set(m: &Arc<NumberField>, gamma: &FieldElement) -> Result<GenSetResult> {
    let qg = Subfield::new(m, gamma)?;
    let lattice = subfields(&qg)?;
    let mut entries = Vec::new();
    for k in lattice.fields() {
        let primes = l_gamma_k(k, &lattice, gamma)?;
        if primes.is_empty() {
            continue;
        }
        let kf = k.field();
        let j = FractionalIdeal::from_factorization(kf, &primes.iter().map(|p| (p.clone(), 1)).collect::<Vec<_>>());
        let g = class_group(kf)?;
        let h = g.order();
        let hu = h.to_u32().ok_or_else(|| Error::invalid("class number too large"))?;
        let alpha = g.power_generator(&j, hu)?;
        let alpha_ambient = k.to_ambient(&alpha);
        if !Subfield::new(m, &alpha_ambient)?.same_field(k) {
            return Err(Error::invalid(format!(
                "α_K = {} does not generate its field",
                alpha.display()
            )));
        }
        entries.push(GenSetEntry {
            field: k.clone(),
            primes,
            j,
            class_number: h,
            alpha,
            alpha_ambient,
        });
    }
    Ok(GenSetResult {
        ambient: m.clone(),
        gamma: gamma.clone(),
        lattice,
        entries,
    })
}

/// One test field of the verification battery.
#[derive(Debug, Clone)]
pub struct FieldCheck {
    pub name: String,
    pub degree: usize,
    pub x: Vec<PrimeIdeal>,
    /// Primes `Q` of `L` with `Q ∩ S ≠ ∅`.
    pub s_primes: Vec<PrimeIdeal>,
    /// `√((∏_{α ∈ S ∩ L} α) O_L) = ∏_{Q ∈ X(L, γ)} Q`.
    pub radical_identity: bool,
    pub membership_samples: usize,
    /// Samples where `O_L[γ] ∩ L` and `O_L[1/α : α ∈ S ∩ L]` disagree.
    pub membership_mismatches: Vec<FieldElement>,
}

impl FieldCheck {
    pub fn x_matches(&self) -> bool {
        self.x == self.s_primes
    }

    pub fn passed(&self) -> bool {
        self.x_matches() && self.radical_identity && self.membership_mismatches.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct GenSetVerification {
    pub checks: Vec<FieldCheck>,
}

impl GenSetVerification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(FieldCheck::passed)
    }
}

pub fn check_field(name: String, l: &Subfield, gamma: &FieldElement, s: &[FieldElement]) -> Result<FieldCheck> {
    let lf = l.field();
    let xy = compute_xy(l, gamma)?;
    let local: Vec<FieldElement> = s.iter().filter_map(|a| l.from_ambient(a)).collect();
    let mut support: BTreeSet<PrimeIdeal> = BTreeSet::new();
    let mut prod = lf.one();
    for a in &local {
        if a.is_zero() {
            continue;
        }
        prod = lf.mul(&prod, a);
        for (pr, v) in lf.factor_element(a)? {
            if v > 0 {
                support.insert(pr);
            }
        }
    }
    let mut s_primes: Vec<PrimeIdeal> = support.into_iter().collect();
    s_primes.sort();
    let mut x = xy.x.clone();
    x.sort();
    let radical = FractionalIdeal::principal(lf, &prod)?.radical(lf)?;
    let radical_identity = radical == xy.x_product();

    // samples: 1/α for α ∈ S ∩ L, 1/p and 1/π for primes in play, 1/7
    let mut samples: Vec<FieldElement> = Vec::new();
    for a in &local {
        if !a.is_zero() {
            samples.push(lf.inv(a)?);
        }
    }
    let mut rational: BTreeSet<BigInt> = BTreeSet::new();
    for c in &xy.candidates {
        rational.insert(c.prime.p().clone());
        samples.push(lf.inv(&c.prime.uniformizer(lf))?);
    }
    for p in &s_primes {
        rational.insert(p.p().clone());
    }
    rational.insert(BigInt::from(7));
    for p in rational {
        samples.push(lf.from_rational(BigRational::new(BigInt::one(), p)));
    }
    let mut mismatches = Vec::new();
    for b in &samples {
        let by_x = xy.contains(b)?;
        let mut by_s = true;
        for (pr, v) in lf.factor_element(b)? {
            if v < 0 && !s_primes.contains(&pr) {
                by_s = false;
            }
        }
        if by_x != by_s {
            mismatches.push(b.clone());
        }
    }
    Ok(FieldCheck {
        name,
        degree: l.degree(),
        x,
        s_primes,
        radical_identity,
        membership_samples: samples.len(),
        membership_mismatches: mismatches,
    })
}

/// A test field `L` with `γ` and `S` expressed in an ambient field containing `L`.
#[derive(Debug, Clone)]
pub struct BatteryField {
    pub name: String,
    pub field: Subfield,
    pub gamma: FieldElement,
    pub set: Vec<FieldElement>,
}

/// The standard battery: `Q`, the quadratic subfields of `Q(γ)`, `Q(γ)`, and a
/// control `Q(√d)` with `Q(γ, √d)` for the least `d ∈ {2, 3, 5, …}` with
/// `√d ∉ Q(γ)`. `S` must lie in `Q(γ)`.
pub fn test_battery(m: &Arc<NumberField>, gamma: &FieldElement, s: &[FieldElement]) -> Result<Vec<BatteryField>> {
    let qg = Subfield::new(m, gamma)?;
    let lattice = subfields(&qg)?;
    let mut out = Vec::new();
    for k in lattice.fields() {
        let name = match k.degree() {
            1 => "Q".to_string(),
            _ if k.degree() == qg.degree() => "Q(gamma)".to_string(),
            _ => format!("Q[x]/({})", k.field().defining_poly()),
        };
        out.push(BatteryField {
            name,
            field: k.clone(),
            gamma: gamma.clone(),
            set: s.to_vec(),
        });
    }
    // the control field lives over Q(γ) itself
    let n = qg.field().clone();
    let gn = qg.from_ambient(gamma).expect("γ generates Q(γ)");
    let sn: Vec<FieldElement> = s
        .iter()
        .map(|a| qg.from_ambient(a).ok_or_else(|| Error::invalid("S is not contained in Q(γ)")))
        .collect::<Result<_>>()?;
    for d in [2i64, 3, 5, 6, 7, 10, 11, 13] {
        let Some(ext) = adjoin_sqrt(&n, &BigInt::from(d))? else {
            continue;
        };
        let big = ext.field();
        let g2 = ext.lift(&gn);
        let s2: Vec<FieldElement> = sn.iter().map(|a| ext.lift(a)).collect();
        out.push(BatteryField {
            name: format!("Q(sqrt {d})"),
            field: Subfield::new(big, ext.sqrt())?,
            gamma: g2.clone(),
            set: s2.clone(),
        });
        out.push(BatteryField {
            name: format!("Q(gamma, sqrt {d})"),
            field: Subfield::generated_by(big, &[g2.clone(), ext.sqrt().clone()])?,
            gamma: g2,
            set: s2,
        });
        break;
    }
    Ok(out)
}

/// Check `S` against `X(L, γ)`, the radical identity and membership on every
/// field of the battery.
pub fn verify_generating_set(
    m: &Arc<NumberField>,
    gamma: &FieldElement,
    s: &[FieldElement],
) -> Result<GenSetVerification> {
    let checks = test_battery(m, gamma, s)?
        .into_iter()
        .map(|b| check_field(b.name, &b.field, &b.gamma, &b.set))
        .collect::<Result<_>>()?;
    Ok(GenSetVerification { checks })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    pub l_count: usize,
    pub candidate_size: usize,
    /// `#𝓛(γ) ≤ |S′|`.
    pub bound_holds: bool,
    /// When the sizes agree: `∏_{K ∈ 𝓛(γ)} K = Q(S′)`.
    pub compositum_matches: Option<bool>,
}

impl MinimalityReport {
    pub fn passed(&self) -> bool {
        self.bound_holds && self.compositum_matches != Some(false)
    }
}

/// Compare a candidate generating set `S′` with `𝓛(γ)`.
pub fn minimality_check(g: &GenSetResult, s_prime: &[FieldElement]) -> Result<MinimalityReport> {
    let l_count = g.entries.len();
    let candidate_size = s_prime.len();
    let compositum_matches = if l_count == candidate_size {
        let gens: Vec<FieldElement> = g.fields().iter().map(|k| k.generator().clone()).collect();
        let a = Subfield::generated_by(&g.ambient, &gens)?;
        let b = Subfield::generated_by(&g.ambient, s_prime)?;
        Some(a.same_field(&b))
    } else {
        None
    };
    Ok(MinimalityReport {
        l_count,
        candidate_size,
        bound_holds: l_count <= candidate_size,
        compositum_matches,
    })
}

/// Whether `a / b` is a unit of `O_K`.
pub fn unit_multiple(k: &NumberField, a: &FieldElement, b: &FieldElement) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Ok(a.is_zero() && b.is_zero());
    }
    let q = k.div(a, b)?;
    let n = k.norm(&q);
    Ok(k.is_integral(&q) && (n == BigRational::one() || n == -BigRational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::denominators::GammaContext;
    use crate::poly::IntPoly;

    fn lattice_of(poly: &[i64]) -> SubfieldLattice {
        let m = NumberField::new(&IntPoly::from_i64(poly)).unwrap();
        subfields(&Subfield::whole(&m)).unwrap()
    }

    fn discs(l: &SubfieldLattice) -> Vec<(usize, BigInt)> {
        l.fields().iter().map(canonical_key).collect()
    }

    #[test]
    fn subfield_lattices() {
        assert_eq!(lattice_of(&[1, 0, 1]).fields().len(), 2);
        assert_eq!(lattice_of(&[-2, 0, 0, 1]).fields().len(), 2);
        let z5 = lattice_of(&[1, 1, 1, 1, 1]);
        assert_eq!(
            discs(&z5),
            vec![(1, BigInt::one()), (2, BigInt::from(5)), (4, BigInt::from(125))]
        );
        // x^4 + 1: Q(i), Q(√2), Q(√-2)
        let mut q = discs(&lattice_of(&[1, 0, 0, 0, 1]));
        q.sort();
        assert_eq!(
            q.iter().filter(|(d, _)| *d == 2).map(|(_, x)| x.clone()).collect::<Vec<_>>(),
            vec![BigInt::from(-8), BigInt::from(-4), BigInt::from(8)]
        );
        // x^4 - 10x^2 + 1 = minimal polynomial of √2 + √3
        assert_eq!(lattice_of(&[1, 0, -10, 0, 1]).quadratic().len(), 3);
        // x^4 - 2 has the single quadratic subfield Q(√2)
        let l = lattice_of(&[-2, 0, 0, 0, 1]);
        assert_eq!(discs(&l)[1], (2, BigInt::from(8)));
        assert_eq!(l.fields().len(), 3);
        // x^4 + x + 1 has Galois group S4 and no quadratic subfield
        assert_eq!(lattice_of(&[1, 1, 0, 0, 1]).fields().len(), 2);
    }

    #[test]
    fn sixty_plus_fifteen_i() {
        let c = GammaContext::parse("Q[x]/(x^2+1)", "1/(60+15*x)").unwrap();
        let m = c.ambient();
        let g = generating_set(m, c.gamma()).unwrap();
        assert_eq!(g.entries.len(), 2);
        assert_eq!(g.entries[0].alpha.display(), "15");
        assert_eq!(g.entries[1].alpha.display(), "4+x");
        let labels: Vec<String> = g.entries[1].primes.iter().map(|p| p.to_string()).collect();
        assert_eq!(labels, vec!["(17, x+4)"]);
        let v = verify_generating_set(m, c.gamma(), &g.set()).unwrap();
        assert!(v.passed(), "{v:#?}");
        assert_eq!(v.checks.len(), 4);
        let r = minimality_check(&g, &g.set()).unwrap();
        assert!(r.passed() && r.compositum_matches == Some(true));
        let mut redundant = g.set();
        redundant.push(m.from_int(3));
        let r = minimality_check(&g, &redundant).unwrap();
        assert!(r.passed() && r.compositum_matches.is_none());
    }

    #[test]
    fn trivial_and_rational_cases() {
        let c = GammaContext::parse("Q[x]/(x^2+1)", "x").unwrap();
        assert!(generating_set(c.ambient(), c.gamma()).unwrap().entries.is_empty());
        let c = GammaContext::parse("Q[x]/(x^2+1)", "1/2").unwrap();
        let g = generating_set(c.ambient(), c.gamma()).unwrap();
        assert_eq!(g.set(), vec![c.ambient().from_int(2)]);
        assert!(verify_generating_set(c.ambient(), c.gamma(), &g.set()).unwrap().passed());
    }

    #[test]
    fn unit_multiples() {
        let k = NumberField::new(&IntPoly::from_i64(&[1, 0, 1])).unwrap();
        let a = k.parse_element("4+x").unwrap();
        let b = k.parse_element("1-4*x").unwrap();
        assert!(unit_multiple(&k, &a, &b).unwrap());
        assert!(!unit_multiple(&k, &a, &k.from_int(2)).unwrap());
    }
}
