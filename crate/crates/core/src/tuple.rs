//! Which tuples `(c, d, e, n)` occur as invariants of an algebraic number,
//! with explicit Eisenstein witnesses.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, is_prime, vp_int};
use crate::error::{Error, Result};
use crate::poly::{invariants, IntPoly, InvariantReport, MinimalPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleQuery {
    pub c: BigInt,
    pub d: BigInt,
    pub e: BigInt,
    pub n: usize,
}

impl TupleQuery {
    pub fn new(c: impl Into<BigInt>, d: impl Into<BigInt>, e: impl Into<BigInt>, n: usize) -> Self {
        TupleQuery {
            c: c.into(),
            d: d.into(),
            e: e.into(),
            n,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.c.is_positive() || !self.d.is_positive() || !self.e.is_positive() {
            return Err(Error::invalid("c, d and e must be positive"));
        }
        if self.n == 0 {
            return Err(Error::invalid("degree must be at least 1"));
        }
        Ok(())
    }
}

impl fmt::Display for TupleQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(c={}, d={}, e={}, n={})", self.c, self.d, self.e, self.n)
    }
}

/// The first condition a non-realizable tuple fails.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    DNotDividingC,
    CNotDividingDPowN,
    ENotDividingC,
    CNotDividingDPowNMinus1E,
    PerPrime { p: BigInt },
    /// Degree one forces `c = d = e`.
    LinearMismatch,
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::DNotDividingC => "d_ndiv_c",
            Violation::CNotDividingDPowN => "c_ndiv_d^n",
            Violation::ENotDividingC => "e_ndiv_c",
            Violation::CNotDividingDPowNMinus1E => "c_ndiv_d^(n-1)e",
            Violation::PerPrime { .. } => "per_prime",
            Violation::LinearMismatch => "linear_c_d_e_differ",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DNotDividingC => f.write_str("d∤c"),
            Violation::CNotDividingDPowN => f.write_str("c∤d^n"),
            Violation::ENotDividingC => f.write_str("e∤c"),
            Violation::CNotDividingDPowNMinus1E => f.write_str("c∤d^{n-1}e"),
            Violation::PerPrime { p } => write!(
                f,
                "at p={p} neither v_p(d)+v_p(e) <= v_p(c) nor v_p(d) = ceil(v_p(c)/n)"
            ),
            Violation::LinearMismatch => f.write_str("degree 1 requires c = d = e"),
        }
    }
}

/// Per-prime view of the local conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeDiagnostic {
    pub p: BigInt,
    pub vc: u64,
    pub vd: u64,
    pub ve: u64,
    /// `v_p(d) + v_p(e) <= v_p(c)`
    pub first: bool,
    /// `v_p(d) = ceil(v_p(c) / n)`; together with `first` this decides realizability.
    pub ceiling: bool,
    /// `v_p(c) = n v_p(d)`, a sufficient special case of `ceiling`.
    pub exact_power: bool,
    /// `exact_power` together with `(n-1)/n v_p(c) < v_p(e)`.
    pub exact_power_strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleCertificate {
    pub query: TupleQuery,
    pub realizable: bool,
    pub witness: Option<MinimalPolynomial>,
    pub eisenstein_prime: Option<BigInt>,
    pub violated: Option<Violation>,
    pub diagnostics: Vec<PrimeDiagnostic>,
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    (b % a).is_zero()
}

fn first_violation(q: &TupleQuery, diags: &[PrimeDiagnostic]) -> Option<Violation> {
    if q.n == 1 {
        return (q.c != q.d || q.c != q.e).then_some(Violation::LinearMismatch);
    }
    let n = q.n as u32;
    if !divides(&q.d, &q.c) {
        return Some(Violation::DNotDividingC);
    }
    if !divides(&q.c, &q.d.pow(n)) {
        return Some(Violation::CNotDividingDPowN);
    }
    if !divides(&q.e, &q.c) {
        return Some(Violation::ENotDividingC);
    }
    if !divides(&q.c, &(q.d.pow(n - 1) * &q.e)) {
        return Some(Violation::CNotDividingDPowNMinus1E);
    }
    diags
        .iter()
        .find(|g| !(g.first || g.ceiling))
        .map(|g| Violation::PerPrime { p: g.p.clone() })
}

fn diagnostics(q: &TupleQuery) -> Result<Vec<PrimeDiagnostic>> {
    let n = q.n as u64;
    let mut out = Vec::new();
    for (p, _) in factorize(&q.c)?.factors() {
        let vc = vp_int(&q.c, p)?;
        let vd = vp_int(&q.d, p)?;
        let ve = vp_int(&q.e, p)?;
        let exact_power = vc == n * vd;
        out.push(PrimeDiagnostic {
            p: p.clone(),
            vc,
            vd,
            ve,
            first: vd + ve <= vc,
            ceiling: vd == vc.div_ceil(n),
            exact_power,
            exact_power_strict: exact_power && (n - 1) * vc < n * ve,
        });
    }
    Ok(out)
}

/// Decide realizability; realizable tuples carry a verified witness.
pub fn is_realizable(q: &TupleQuery) -> Result<TupleCertificate> {
    q.validate()?;
    let diags = diagnostics(q)?;
    let violated = first_violation(q, &diags);
    let (witness, eisenstein_prime) = if violated.is_none() {
        let (w, p) = build_witness(q)?;
        (Some(w), Some(p))
    } else {
        (None, None)
    };
    Ok(TupleCertificate {
        query: q.clone(),
        realizable: violated.is_none(),
        witness,
        eisenstein_prime,
        violated,
        diagnostics: diags,
    })
}

/// Witness polynomial for a realizable tuple, Eisenstein at the smallest prime not dividing `c`.
pub fn construct_witness(q: &TupleQuery) -> Result<MinimalPolynomial> {
    q.validate()?;
    let diags = diagnostics(q)?;
    if let Some(v) = first_violation(q, &diags) {
        return Err(Error::NotRealizable(v));
    }
    Ok(build_witness(q)?.0)
}

fn smallest_prime_not_dividing(c: &BigInt) -> BigInt {
    let mut q = BigInt::from(2);
    while divides(&q, c) || !is_prime(&q) {
        q += 1;
    }
    q
}

fn build_witness(q: &TupleQuery) -> Result<(MinimalPolynomial, BigInt)> {
    let ep = smallest_prime_not_dividing(&q.c);
    let n = q.n;
    let mut coeffs = vec![ep.clone()];
    if n >= 2 {
        let fac = factorize(&q.c)?;
        for i in 1..n {
            let mut a = ep.clone();
            for (p, _) in fac.factors() {
                let vc = vp_int(&q.c, p)? as i64;
                let vd = vp_int(&q.d, p)? as i64;
                let ve = vp_int(&q.e, p)? as i64;
                let v = (vc - (n - i) as i64 * vd).max(ve).max(0);
                a *= p.pow(v as u32);
            }
            coeffs.push(a);
        }
    }
    coeffs.push(q.c.clone());
    let f = MinimalPolynomial::from_int_poly(&IntPoly::new(coeffs))?;
    let got = invariants(&f);
    let want = InvariantReport {
        c: q.c.clone(),
        d: q.d.clone(),
        e: q.e.clone(),
        n,
    };
    if got != want {
        return Err(Error::invalid(format!(
            "witness {f} has invariants (c={}, d={}, e={}) instead of {q}",
            got.c, got.d, got.e
        )));
    }
    if !is_eisenstein(f.poly(), &ep) {
        return Err(Error::invalid(format!("witness {f} is not Eisenstein at {ep}")));
    }
    Ok((f, ep))
}

/// `q | a_i` for `i < n`, `q^2 ∤ a_0`, `q ∤ a_n`.
pub fn is_eisenstein(f: &IntPoly, q: &BigInt) -> bool {
    let n = f.degree();
    let q2 = q * q;
    (0..n).all(|i| divides(q, &f.coeff(i)))
        && !divides(&q2, &f.coeff(0))
        && !divides(q, &f.leading())
}

/// Records for every `(n, c, d, e)` with `n` in `degrees` and `1 <= c, d, e <= max_c`,
/// lexicographic in `(n, c, d, e)`.
pub fn atlas(degrees: std::ops::RangeInclusive<usize>, max_c: u64) -> Result<Vec<TupleCertificate>> {
    let mut out = Vec::new();
    for n in degrees {
        for c in 1..=max_c {
            for d in 1..=max_c {
                for e in 1..=max_c {
                    out.push(is_realizable(&TupleQuery::new(c, d, e, n))?);
                }
            }
        }
    }
    Ok(out)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

fn no_rational_root(a: &[i128]) -> bool {
    let n = a.len() - 1;
    if a[0] == 0 {
        return false;
    }
    let divisors = |m: i128| -> Vec<i128> {
        let m = m.abs();
        (1..=m).filter(|k| m % k == 0).collect()
    };
    for p in divisors(a[0]) {
        for q in divisors(a[n]) {
            if gcd_i128(p, q) != 1 {
                continue;
            }
            for s in [p, -p] {
                // q^n f(s/q)
                let mut acc = 0i128;
                for (i, c) in a.iter().enumerate() {
                    acc += c * s.pow(i as u32) * q.pow((n - i) as u32);
                }
                if acc == 0 {
                    return false;
                }
            }
        }
    }
    true
}

fn irreducible_small(a: &[i128]) -> bool {
    match a.len() - 1 {
        1 => true,
        2 | 3 => no_rational_root(a),
        _ => crate::poly::is_irreducible(&IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect()))
            .is_irreducible(),
    }
}

fn smallest_denominator_small(a: &[i128]) -> i128 {
    let n = a.len() - 1;
    let c = a[n];
    (1..=c)
        .find(|k| {
            c % k == 0 && (0..n).all(|i| (a[i] * k.pow((n - i) as u32)) % c == 0)
        })
        .expect("k = c always works")
}

/// Every `(c, d, e, n)` realized by an irreducible primitive polynomial of degree `n`
/// with coefficients in `[-height, height]`; `d` is found by direct search.
pub fn bruteforce_realized_tuples(n: usize, height: i64) -> BTreeSet<TupleQuery> {
    assert!((1..=4).contains(&n), "degree out of range");
    let h = height as i128;
    let mut out = BTreeSet::new();
    let mut coeffs = vec![-h; n + 1];
    coeffs[n] = 1;
    loop {
        let content = coeffs.iter().fold(0i128, |g, &c| gcd_i128(g, c));
        if content == 1 && irreducible_small(&coeffs) {
            let c = coeffs[n];
            let e = coeffs[1..].iter().fold(0i128, |g, &x| gcd_i128(g, x));
            let d = smallest_denominator_small(&coeffs);
            out.insert(TupleQuery::new(
                BigInt::from(c),
                BigInt::from(d),
                BigInt::from(e),
                n,
            ));
        }
        // odometer over a_0..a_{n-1} in [-h, h], a_n in [1, h]
        let mut i = 0;
        loop {
            if i == n {
                if coeffs[n] == h {
                    return out;
                }
                coeffs[n] += 1;
                break;
            }
            if coeffs[i] < h {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -h;
            i += 1;
        }
    }
}

/// The realized tuple for a polynomial, convenient for tests that feed `bruteforce` results back.
pub fn tuple_of(f: &MinimalPolynomial) -> TupleQuery {
    let r = invariants(f);
    TupleQuery {
        c: r.c,
        d: r.d,
        e: r.e,
        n: r.n,
    }
}

pub fn query_from_u64(c: u64, d: u64, e: u64, n: usize) -> TupleQuery {
    TupleQuery::new(c, d, e, n)
}

pub fn as_u64(q: &TupleQuery) -> Option<(u64, u64, u64)> {
    Some((q.c.to_u64()?, q.d.to_u64()?, q.e.to_u64()?))
}

impl Default for TupleQuery {
    fn default() -> Self {
        TupleQuery::new(BigInt::one(), BigInt::one(), BigInt::one(), 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        let c = is_realizable(&TupleQuery::new(5, 5, 1, 2)).unwrap();
        assert!(c.realizable);
        let c = is_realizable(&TupleQuery::new(4, 2, 1, 2)).unwrap();
        assert!(!c.realizable);
        assert_eq!(c.violated, Some(Violation::CNotDividingDPowNMinus1E));
        assert!(is_realizable(&TupleQuery::new(4, 2, 2, 2)).unwrap().realizable);
    }

    #[test]
    fn witnesses() {
        let w = construct_witness(&TupleQuery::new(4, 2, 2, 2)).unwrap();
        assert_eq!(w.poly(), &IntPoly::from_i64(&[3, 6, 4]));
        let w = construct_witness(&TupleQuery::new(5, 5, 1, 2)).unwrap();
        assert_eq!(w.poly(), &IntPoly::from_i64(&[2, 2, 5]));
        let w = construct_witness(&TupleQuery::new(1, 1, 1, 2)).unwrap();
        assert_eq!(w.poly(), &IntPoly::from_i64(&[2, 2, 1]));
        assert!(matches!(
            construct_witness(&TupleQuery::new(4, 2, 1, 2)),
            Err(Error::NotRealizable(Violation::CNotDividingDPowNMinus1E))
        ));
    }

    #[test]
    fn half_gaussian_integer_tuple() {
        // (-1+i)/2 has minimal polynomial 2x^2+2x+1: c = d = e = 2 although
        // v_2(c) = 1 differs from n v_2(d) = 2
        let f = MinimalPolynomial::from_int_poly(&IntPoly::from_i64(&[1, 2, 2])).unwrap();
        assert_eq!(tuple_of(&f), TupleQuery::new(2, 2, 2, 2));
        let cert = is_realizable(&TupleQuery::new(2, 2, 2, 2)).unwrap();
        assert!(cert.realizable);
        let g = &cert.diagnostics[0];
        assert!(!g.first && !g.exact_power && g.ceiling);
    }

    #[test]
    fn linear_special_case() {
        assert!(is_realizable(&TupleQuery::new(2, 2, 2, 1)).unwrap().realizable);
        assert_eq!(
            is_realizable(&TupleQuery::new(2, 1, 2, 1)).unwrap().violated,
            Some(Violation::LinearMismatch)
        );
    }

    #[test]
    fn small_atlas_self_checks() {
        let recs = atlas(2..=2, 4).unwrap();
        assert_eq!(recs.len(), 64);
        assert!(recs
            .iter()
            .any(|r| r.query == TupleQuery::new(4, 2, 2, 2) && r.realizable));
        assert!(recs.iter().any(|r| r.query == TupleQuery::new(4, 2, 1, 2)
            && r.violated == Some(Violation::CNotDividingDPowNMinus1E)));
        for r in recs.iter().filter(|r| r.realizable) {
            assert_eq!(tuple_of(r.witness.as_ref().unwrap()), r.query);
        }
    }

    #[test]
    fn small_bruteforce() {
        let s = bruteforce_realized_tuples(2, 6);
        assert!(s.contains(&TupleQuery::new(5, 5, 1, 2)));
        assert!(!s.contains(&TupleQuery::new(4, 2, 1, 2)));
        for q in &s {
            assert!(is_realizable(q).unwrap().realizable, "{q}");
        }
    }
}
