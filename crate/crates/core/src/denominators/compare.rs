//! Comparisons across elements and fields: equality of denominator radicals,
//! the local dichotomy, and lifting of `X` and `Y` along `K ⊆ L`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{compute_xy, XYReport};
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField, PrimeIdeal, Subfield};

#[derive(Debug, Clone)]
pub struct SameDenominator {
    pub compositum: Subfield,
    pub x1: Vec<PrimeIdeal>,
    pub x2: Vec<PrimeIdeal>,
    pub y1: Vec<PrimeIdeal>,
    pub y2: Vec<PrimeIdeal>,
}

impl SameDenominator {
    /// `X(F, γ₁) = X(F, γ₂)` with `F = Q(γ₁, γ₂)`.
    pub fn by_x(&self) -> bool {
        self.x1 == self.x2
    }

    /// `Y(F, γ₁) = Y(F, γ₂)`.
    pub fn by_y(&self) -> bool {
        self.y1 == self.y2
    }

    pub fn conditions_agree(&self) -> bool {
        self.by_x() == self.by_y()
    }
}

/// Whether `√𝔇_{γ₁} = √𝔇_{γ₂}`, decided on the compositum inside `M`.
pub fn same_denominator(
    m: &Arc<NumberField>,
    g1: &FieldElement,
    g2: &FieldElement,
) -> Result<SameDenominator> {
    let f = Subfield::generated_by(m, &[g1.clone(), g2.clone()])?;
    let r1 = compute_xy(&f, g1)?;
    let r2 = compute_xy(&f, g2)?;
    let out = SameDenominator {
        compositum: f,
        x1: r1.x,
        x2: r2.x,
        y1: r1.y,
        y2: r2.y,
    };
    debug_assert!(out.conditions_agree());
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalRing {
    /// `O_{K_P}[γ] ∩ K_P = O_{K_P}`.
    Integers,
    /// `O_{K_P}[γ] ∩ K_P = K_P`.
    WholeField,
}

impl LocalRing {
    pub fn name(&self) -> &'static str {
        match self {
            LocalRing::Integers => "integers",
            LocalRing::WholeField => "whole_field",
        }
    }
}

/// The local ring at the completion of `K(γ)` at `Q`, where `Q` lies over `P`.
/// `upper` is `K(γ)` or any subfield of `M` containing it.
pub fn local_classify(
    k: &Subfield,
    upper: &Subfield,
    gamma: &FieldElement,
    pr: &PrimeIdeal,
    q: &PrimeIdeal,
) -> Result<LocalRing> {
    if &k.prime_below(upper, q)? != pr {
        return Err(Error::NotAbove {
            prime: q.to_string(),
        });
    }
    let ge = upper
        .from_ambient(gamma)
        .ok_or_else(|| Error::invalid("γ is not in the upper field"))?;
    if ge.is_zero() {
        return Ok(LocalRing::Integers);
    }
    Ok(if upper.field().valuation(q, &ge)? < 0 {
        LocalRing::WholeField
    } else {
        LocalRing::Integers
    })
}

#[derive(Debug, Clone)]
pub struct CrossFieldReport {
    pub lower: XYReport,
    pub upper: XYReport,
    /// Primes of `L` over some prime of `X(K, γ)`.
    pub x_lift: Vec<PrimeIdeal>,
    /// Primes of `L` over some prime of `Y(K, γ)`.
    pub y_lift: Vec<PrimeIdeal>,
    /// `L ∩ K(γ) = K`.
    pub exact_case: bool,
    pub x_contains_lift: bool,
    pub y_within_lift: bool,
    /// In the exact case, `X(L) = lift X(K)` and `Y(L) = lift Y(K)`.
    pub exact_holds: Option<bool>,
    pub membership_samples: usize,
    /// Sampled `α ∈ K` where `O_L[γ] ∩ K` and `O_K[γ] ∩ K` disagree.
    pub membership_mismatches: Vec<FieldElement>,
}

impl CrossFieldReport {
    pub fn passed(&self) -> bool {
        self.x_contains_lift
            && self.y_within_lift
            && self.exact_holds != Some(false)
            && self.membership_mismatches.is_empty()
    }
}

fn lift(k: &Subfield, l: &Subfield, ps: &[PrimeIdeal]) -> Result<Vec<PrimeIdeal>> {
    let mut out = BTreeSet::new();
    for p in ps {
        out.extend(k.primes_over(l, p)?);
    }
    Ok(out.into_iter().collect())
}

fn is_subset(a: &[PrimeIdeal], b: &[PrimeIdeal]) -> bool {
    a.iter().all(|p| b.contains(p))
}

fn same_set(a: &[PrimeIdeal], b: &[PrimeIdeal]) -> bool {
    is_subset(a, b) && is_subset(b, a)
}

/// Elements `1/p` and `1/π_P` for the primes of `K` involved in `X` or `Y`.
fn samples(k: &Subfield, r: &XYReport) -> Result<Vec<FieldElement>> {
    let kf = k.field();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for c in &r.candidates {
        let p = c.prime.p().clone();
        if seen.insert(p.clone()) {
            out.push(kf.from_rational(BigRational::new(BigInt::one(), p)));
        }
        let pi = c.prime.uniformizer(kf);
        if !pi.is_zero() {
            out.push(kf.inv(&pi)?);
        }
    }
    out.push(kf.from_rational(BigRational::new(BigInt::one(), BigInt::from(7))));
    Ok(out)
}

/// Check the lifting of `X` and `Y` along `K ⊆ L` and that `L` does not change
/// `O_K[γ] ∩ K`.
pub fn cross_field_check(k: &Subfield, l: &Subfield, gamma: &FieldElement) -> Result<CrossFieldReport> {
    if !l.contains_subfield(k) {
        return Err(Error::invalid("K is not contained in L"));
    }
    let lower = compute_xy(k, gamma)?;
    let upper = compute_xy(l, gamma)?;
    let x_lift = lift(k, l, &lower.x)?;
    let y_lift = lift(k, l, &lower.y)?;
    let kg = Subfield::generated_by(k.ambient(), &[k.generator().clone(), gamma.clone()])?;
    let exact_case = l.intersection_degree(&kg) == k.degree();
    let x_contains_lift = is_subset(&x_lift, &upper.x);
    let y_within_lift = is_subset(&upper.y, &y_lift);
    let exact_holds =
        exact_case.then(|| same_set(&x_lift, &upper.x) && same_set(&y_lift, &upper.y));
    let mut mismatches = Vec::new();
    let alphas = samples(k, &lower)?;
    for a in &alphas {
        let in_k = lower.contains(a)?;
        let in_l = upper.contains(&k.map_into(l, a)?)?;
        if in_k != in_l {
            mismatches.push(a.clone());
        }
    }
    Ok(CrossFieldReport {
        lower,
        upper,
        x_lift,
        y_lift,
        exact_case,
        x_contains_lift,
        y_within_lift,
        exact_holds,
        membership_samples: alphas.len(),
        membership_mismatches: mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::denominators::GammaContext;

    fn labels(ps: &[PrimeIdeal]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn same_denominator_pairs() {
        let c = GammaContext::parse("Q[x]/(x^2+1)", "1/(2+x)").unwrap();
        let m = c.ambient();
        let e = |s: &str| m.parse_element(s).unwrap();
        let r = same_denominator(m, &e("1/(2+x)"), &e("1/(2+x)")).unwrap();
        assert!(r.by_x() && r.conditions_agree());
        let r = same_denominator(m, &e("1/(2+x)"), &e("1/(2-x)")).unwrap();
        assert!(!r.by_x() && r.conditions_agree());
        let r = same_denominator(m, &e("1/(2+x)"), &e("1/(3+4*x)")).unwrap();
        assert!(r.by_x() && r.conditions_agree());
    }

    #[test]
    fn local_dichotomy() {
        let c = GammaContext::parse("Q[x]/(x^2+1)", "1/(2+x)").unwrap();
        let q = c.rationals();
        let up = c.extended_field(&q).unwrap();
        let p5 = q.field().primes_above(&BigInt::from(5)).unwrap()[0].clone();
        let above = q.primes_over(&up, &p5).unwrap();
        let kinds: Vec<&str> = above
            .iter()
            .map(|qq| local_classify(&q, &up, c.gamma(), &p5, qq).unwrap().name())
            .collect();
        let names = labels(&above);
        let i = names.iter().position(|s| s == "(5, x+2)").unwrap();
        assert_eq!(kinds[i], "whole_field");
        assert_eq!(kinds[1 - i], "integers");
        let p2 = q.field().primes_above(&BigInt::from(2)).unwrap()[0].clone();
        assert!(matches!(
            local_classify(&q, &up, c.gamma(), &p2, &above[0]),
            Err(Error::NotAbove { .. })
        ));
    }

    #[test]
    fn strict_containments_over_gaussian_field() {
        let c = GammaContext::parse("Q[x]/(x^2+1)", "1/(2+x)").unwrap();
        let q = c.rationals();
        let l = c.parse_subfield("x").unwrap();
        let r = cross_field_check(&q, &l, c.gamma()).unwrap();
        assert!(r.passed());
        assert!(!r.exact_case);
        assert!(r.x_lift.is_empty());
        assert_eq!(labels(&r.upper.x), vec!["(5, x+2)"]);
        assert_eq!(labels(&r.y_lift), vec!["(5, x+3)", "(5, x+2)"]);
        assert_eq!(labels(&r.upper.y), vec!["(5, x+2)"]);
    }
}
