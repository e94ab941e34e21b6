//! Verification suites shared by the command line tool and the acceptance
//! tests. Each suite produces one record per checked statement; random corpora
//! are drawn from a seeded generator so runs are reproducible.

pub mod corpus;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{factorize, int};
use crate::classgroup::class_group;
use crate::denominators::{
    compute_xy, constructive_alpha, criteria_at, cross_field_check, denominator_section,
    membership, membership_oracle, probe_primes, ring_description, root_valuations_by_splitting,
    same_denominator, section_ideal, GammaContext, OracleOutcome,
};
use crate::error::{Error, Result};
use crate::field::{min_poly_over_subfield, newton_polygon, FieldElement, NumberField, PrimeIdeal, Subfield};
use crate::genset::{check_field, generating_set, minimality_check, test_battery, unit_multiple};
use crate::poly::{invariants, normalize, parse_rational_poly, smallest_denominator_bruteforce, IntPoly};
use crate::tuple::{bruteforce_realized_tuples, construct_witness, is_realizable, tuple_of, TupleQuery};

use corpus::{quadratic_field, random_element, random_min_poly, Biquadratic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Examples,
    DFormula,
    Tuple,
    XyCriteria,
    Radical,
    CrossField,
    SameDenom,
    Membership,
    ClassGroup,
    GenSet,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Examples,
        Suite::DFormula,
        Suite::Tuple,
        Suite::XyCriteria,
        Suite::Radical,
        Suite::CrossField,
        Suite::SameDenom,
        Suite::Membership,
        Suite::ClassGroup,
        Suite::GenSet,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Examples => "examples",
            Suite::DFormula => "d-formula",
            Suite::Tuple => "tuple",
            Suite::XyCriteria => "xy-criteria",
            Suite::Radical => "radical",
            Suite::CrossField => "cross-field",
            Suite::SameDenom => "same-denom",
            Suite::Membership => "membership",
            Suite::ClassGroup => "classgroup",
            Suite::GenSet => "genset",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite `{s}`")))
    }
}

/// Sample counts and bounds for the random corpora.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub d_formula_samples: usize,
    pub d_formula_height: i64,
    pub tuple_height: i64,
    pub tuple_max_c: u64,
    pub xy_samples: usize,
    pub radical_samples: usize,
    pub cross_field_samples: usize,
    pub same_denom_samples: usize,
    pub membership_samples: usize,
    pub genset_samples: usize,
    pub oracle_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 1,
            d_formula_samples: 500,
            d_formula_height: 50,
            tuple_height: 40,
            tuple_max_c: 12,
            xy_samples: 100,
            radical_samples: 12,
            cross_field_samples: 50,
            same_denom_samples: 50,
            membership_samples: 200,
            genset_samples: 12,
            oracle_cap: crate::denominators::ORACLE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub suite: String,
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// Collects records for one suite; failures keep only the first few details.
struct Recorder {
    suite: Suite,
    records: Vec<CheckRecord>,
}

const MAX_EXAMPLES: usize = 3;

/// Counts samples and keeps the first failing ones for an aggregated record.
struct Tally {
    label: String,
    samples: usize,
    failures: usize,
    examples: Vec<String>,
}

impl Tally {
    fn new(label: impl Into<String>) -> Tally {
        Tally {
            label: label.into(),
            samples: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(what());
            }
        }
    }

    fn result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                let w = what();
                self.check(false, || format!("{w}: error: {e}"));
                None
            }
        }
    }
}

impl Recorder {
    fn new(suite: Suite) -> Recorder {
        Recorder {
            suite,
            records: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.records.push(CheckRecord {
            suite: self.suite.name().to_string(),
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Record an exact comparison of displayed values.
    fn expect_eq<T: fmt::Debug + PartialEq>(&mut self, label: impl Into<String>, got: Result<T>, want: T) {
        match got {
            Ok(g) => {
                let ok = g == want;
                let detail = if ok {
                    format!("{g:?}")
                } else {
                    format!("got {g:?}, expected {want:?}")
                };
                self.push(label, ok, detail);
            }
            Err(e) => self.push(label, false, format!("error: {e}")),
        }
    }

    fn tally(&mut self, t: Tally) {
        let detail = if t.failures == 0 {
            format!("{} samples, 0 exceptions", t.samples)
        } else {
            format!(
                "{} samples, {} exceptions; first: {}",
                t.samples,
                t.failures,
                t.examples.join("; ")
            )
        };
        self.push(t.label, t.failures == 0 && t.samples > 0, detail);
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let mut r = Recorder::new(suite);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (suite as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    match suite {
        Suite::Examples => examples(&mut r),
        Suite::DFormula => d_formula(&mut r, &mut rng, cfg),
        Suite::Tuple => tuples(&mut r, cfg),
        Suite::XyCriteria => xy_criteria(&mut r, &mut rng, cfg),
        Suite::Radical => radicals(&mut r, &mut rng, cfg),
        Suite::CrossField => cross_field(&mut r, &mut rng, cfg),
        Suite::SameDenom => same_denom(&mut r, &mut rng, cfg),
        Suite::Membership => memberships(&mut r, &mut rng, cfg),
        Suite::ClassGroup => class_groups(&mut r),
        Suite::GenSet => gensets(&mut r, &mut rng, cfg),
    }
    r.records
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    Suite::ALL.iter().flat_map(|s| run_suite(*s, cfg)).collect()
}

fn labels(ps: &[PrimeIdeal]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn gaussian(gamma: &str) -> Result<GammaContext> {
    GammaContext::parse("Q[x]/(x^2+1)", gamma)
}

fn rational_primes(ps: &[PrimeIdeal]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = ps.iter().map(|p| p.p().clone()).collect();
    out.sort();
    out.dedup();
    out
}

fn prime_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut out: Vec<BigInt> = factorize(n)?.primes().cloned().collect();
    out.sort();
    Ok(out)
}

// ---------------------------------------------------------------- examples

fn examples(r: &mut Recorder) {
    let inv = normalize(&parse_rational_poly("5*x^2-4*x+1").expect("literal")).map(|f| invariants(&f));
    r.expect_eq(
        "invariants of 5x^2-4x+1",
        inv.map(|i| (i.c, i.d, i.e, i.n)),
        (int(5), int(5), int(1), 2),
    );
    let d = normalize(&parse_rational_poly("4*x^2+6*x+3").expect("literal")).map(|f| invariants(&f).d);
    r.expect_eq("ceiling formula d for 4x^2+6x+3", d, int(2));
    let t = is_realizable(&TupleQuery::new(4, 2, 1, 2));
    r.expect_eq(
        "tuple (4,2,1,2) violates c | d^(n-1) e",
        t.map(|c| c.violated.map(|v| v.code())),
        Some("c_ndiv_d^(n-1)e"),
    );

    // γ = 1/(2+i)
    let half = (|| -> Result<_> {
        let c = gaussian("1/(2+x)")?;
        let q = compute_xy(&c.rationals(), c.gamma())?;
        let k = c.parse_subfield("x")?;
        let l = compute_xy(&k, c.gamma())?;
        let p = k.field().parse_element("2+x")?;
        let contains = l.x.len() == 1 && k.field().valuation(&l.x[0], &p)? > 0;
        Ok((c.invariants().clone(), q, l, contains))
    })();
    match half {
        Ok((inv, q, l, contains)) => {
            r.push(
                "1/(2+i): (c, d, e, n) = (5, 5, 1, 2)",
                (inv.c.clone(), inv.d.clone(), inv.e.clone(), inv.n) == (int(5), int(5), int(1), 2),
                format!("({}, {}, {}, {})", inv.c, inv.d, inv.e, inv.n),
            );
            r.push(
                "1/(2+i): X(Q) empty and Y(Q) = {(5)}",
                q.x.is_empty() && labels(&q.y) == ["(5)"],
                format!("X = {:?}, Y = {:?}", labels(&q.x), labels(&q.y)),
            );
            r.push(
                "1/(2+i): X(Q(i)) = Y(Q(i)) = {(2+i)}",
                contains && l.x == l.y,
                format!("X = {:?}, Y = {:?}", labels(&l.x), labels(&l.y)),
            );
        }
        Err(e) => r.push("1/(2+i) example", false, format!("error: {e}")),
    }

    // γ = 1/(60+15i)
    let sixty = (|| -> Result<_> {
        let c = gaussian("1/(60+15*x)")?;
        let q = compute_xy(&c.rationals(), c.gamma())?;
        let k = c.parse_subfield("x")?;
        let l = compute_xy(&k, c.gamma())?;
        let kf = k.field();
        let expected = crate::field::FractionalIdeal::principal(kf, &kf.parse_element("3*(2+x)*(2-x)*(4+x)")?)?;
        let x_ok = l.x.len() == 4 && l.x_product() == expected;
        let g = generating_set(c.ambient(), c.gamma())?;
        Ok((q, l, x_ok, g, c))
    })();
    match sixty {
        Ok((q, l, x_ok, g, c)) => {
            r.push(
                "1/(60+15i): X(Q) = {3, 5}",
                rational_primes(&q.x) == [int(3), int(5)],
                format!("{:?}", labels(&q.x)),
            );
            r.push(
                "1/(60+15i): X(Q(i)) = {(3), (2+i), (2-i), (4+i)}",
                x_ok,
                format!("{:?}", labels(&l.x)),
            );
            let fields: Vec<usize> = g.fields().iter().map(|k| k.degree()).collect();
            r.push(
                "1/(60+15i): L(gamma) = {Q, Q(i)}",
                fields == [1, 2],
                format!("degrees {fields:?}"),
            );
            let m = c.ambient();
            let four_i = m.parse_element("4+x").expect("literal");
            let lq = g.entries.get(1).map(|e| e.primes.clone()).unwrap_or_default();
            let lq_ok = lq.len() == 1 && m.valuation(&lq[0], &four_i).unwrap_or(0) > 0;
            r.push(
                "1/(60+15i): L(gamma, Q(i)) = {(4+i)}",
                lq_ok,
                format!("{:?}", labels(&lq)),
            );
            let s = g.set();
            let s_ok = s.len() == 2
                && unit_multiple(m, &s[0], &m.from_int(15)).unwrap_or(false)
                && unit_multiple(m, &s[1], &four_i).unwrap_or(false);
            r.push(
                "1/(60+15i): S = {15, 4+i} up to units",
                s_ok,
                format!("{:?}", s.iter().map(|a| a.display()).collect::<Vec<_>>()),
            );
        }
        Err(e) => r.push("1/(60+15i) example", false, format!("error: {e}")),
    }
}

// ---------------------------------------------------------------- d-formula

fn d_formula(r: &mut Recorder, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) {
    let mut eq = Tally::new("ceiling-formula d equals the least denominator found by search");
    let mut div = Tally::new("d | c | d^n and c | d^(n-1) e");
    for _ in 0..cfg.d_formula_samples {
        let f = random_min_poly(rng, 4, cfg.d_formula_height);
        let inv = invariants(&f);
        let brute = smallest_denominator_bruteforce(&f);
        eq.check(inv.d == brute, || format!("{}: formula {} vs search {}", f.poly(), inv.d, brute));
        div.check(inv.divisibilities_hold(), || format!("{}: {:?}", f.poly(), inv));
    }
    r.tally(eq);
    r.tally(div);
}

// ---------------------------------------------------------------- tuples

fn tuples(r: &mut Recorder, cfg: &VerifyConfig) {
    let realized = bruteforce_realized_tuples(2, cfg.tuple_height);
    let mut sound = Tally::new(format!(
        "every tuple realized by a quadratic of height <= {} is classified realizable",
        cfg.tuple_height
    ));
    for q in &realized {
        let ok = is_realizable(q).map(|c| c.realizable);
        sound.check(ok == Ok(true), || format!("{q:?}: {ok:?}"));
    }
    r.tally(sound);
    let mut complete = Tally::new(format!(
        "every realizable tuple with c <= {}, n = 2 has a witness with the same invariants",
        cfg.tuple_max_c
    ));
    for c in 1..=cfg.tuple_max_c {
        for d in 1..=c {
            for e in 1..=c {
                let q = TupleQuery::new(c, d, e, 2);
                let Ok(cert) = is_realizable(&q) else {
                    complete.check(false, || format!("{q:?}: classifier error"));
                    continue;
                };
                if !cert.realizable {
                    continue;
                }
                let w = construct_witness(&q);
                complete.check(w.as_ref().map(tuple_of).ok() == Some(q.clone()), || {
                    format!("{q:?}: witness {w:?}")
                });
            }
        }
    }
    r.tally(complete);
}

// ---------------------------------------------------------------- X and Y

/// A random quadratic `K` inside an ambient `M` with `γ ∈ M`: either `M = K`
/// quadratic, or `M` biquadratic and `K` one of its quadratic subfields.
fn random_quadratic_pair(rng: &mut ChaCha8Rng) -> (Arc<NumberField>, Subfield, FieldElement) {
    if rng.gen_bool(0.5) {
        let m = corpus::random_quadratic_field(rng);
        let k = Subfield::whole(&m);
        let g = random_element(rng, &k);
        (m, k, g)
    } else {
        let b = Biquadratic::random(rng);
        let k = match rng.gen_range(0..3) {
            0 => b.sub_a(),
            1 => b.sub_b(),
            _ => b.sub_ab(),
        };
        let g = random_element(rng, &Subfield::whole(&b.field));
        (b.field.clone(), k, g)
    }
}

fn xy_criteria(r: &mut Recorder, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) {
    let mut three = Tally::new("coefficient, primes-above and Newton-polygon criteria agree on X and Y");
    let mut newton = Tally::new("Newton-polygon root valuations match the splitting in K(gamma)");
    let mut oracle = Tally::new("constructive alpha: 1/alpha in O_K[gamma] exactly for primes of X (oracle)");
    let mut subset = Tally::new("X(K, gamma) is contained in Y(K, gamma)");
    let mut over_q = Tally::new("X(Q, gamma) = primes of e(gamma), Y(Q, gamma) = primes of c(gamma)");
    for i in 0..cfg.xy_samples {
        let (m, k, g) = random_quadratic_pair(rng);
        let what = || format!("sample {i}: K = Q[x]/({}), gamma = {} in {}", k.field().defining_poly(), g.display(), m.spec());
        let Some(upper) = three.result(Subfield::generated_by(&m, &[k.generator().clone(), g.clone()]), what) else {
            continue;
        };
        let b = min_poly_over_subfield(&k, &g);
        let Some(probes) = three.result(probe_primes(k.field(), &b), what) else {
            continue;
        };
        for pr in &probes {
            match criteria_at(&k, &upper, &g, &b, pr) {
                Ok(a) => three.check(a.agree(), || format!("{}: {a:?}", what())),
                Err(e) => three.check(false, || format!("{}: {e}", what())),
            }
            let np = newton_polygon(k.field(), &b, pr).map(|n| n.root_valuations());
            let sp = root_valuations_by_splitting(&k, &upper, &g, pr);
            newton.check(np.is_ok() && np == sp, || format!("{} at {pr}: {np:?} vs {sp:?}", what()));
        }
        let Some(xy) = subset.result(compute_xy(&k, &g), what) else {
            continue;
        };
        subset.check(xy.x.iter().all(|p| xy.in_y(p)), what);
        for c in &xy.candidates {
            let in_x = xy.in_x(&c.prime);
            let Some(alpha) = oracle.result(constructive_alpha(&k, &c.prime), what) else {
                continue;
            };
            let Ok(inv) = k.field().inv(&alpha) else {
                oracle.check(false, what);
                continue;
            };
            let member = membership(&k, &g, &inv);
            let found = membership_oracle(&k, &g, &inv, cfg.oracle_cap).map(|o| o.is_member());
            oracle.check(member == Ok(in_x) && found == Ok(in_x), || {
                format!("{} at {}: in X {in_x}, membership {member:?}, oracle {found:?}", what(), c.prime)
            });
        }
        // over Q, against the invariants of F_gamma
        let q = Subfield::rationals(&m);
        let Some(xq) = over_q.result(compute_xy(&q, &g), what) else {
            continue;
        };
        let Some(mp) = over_q.result(normalize(&m.min_poly(&g)), what) else {
            continue;
        };
        let inv = invariants(&mp);
        let want = (prime_divisors(&inv.e), prime_divisors(&inv.c));
        let got = (rational_primes(&xq.x), rational_primes(&xq.y));
        over_q.check(want.0.as_ref().ok() == Some(&got.0) && want.1.as_ref().ok() == Some(&got.1), || {
            format!("{}: got {got:?}, expected {want:?}", what())
        });
    }
    r.tally(three);
    r.tally(newton);
    r.tally(oracle);
    r.tally(subset);
    r.tally(over_q);
}

// ---------------------------------------------------------------- radicals

fn radical_corpus(rng: &mut ChaCha8Rng, count: usize) -> Vec<(String, Arc<NumberField>, FieldElement)> {
    let mut out = Vec::new();
    for (f, g) in [("Q[x]/(x^2+1)", "1/(2+x)"), ("Q[x]/(x^2+1)", "1/(60+15*x)"), ("Q[x]/(x^2+5)", "1/2")] {
        let c = GammaContext::parse(f, g).expect("literal");
        out.push((format!("{g} in {f}"), c.ambient().clone(), c.gamma().clone()));
    }
    for _ in 0..count {
        let m = corpus::random_quadratic_field(rng);
        let g = random_element(rng, &Subfield::whole(&m));
        out.push((format!("{} in {}", g.display(), m.spec()), m, g));
    }
    out
}

fn radicals(r: &mut Recorder, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) {
    let mut y = Tally::new("radical of the denominator section equals the product of Y (every battery field)");
    let mut x = Tally::new("radical of (product of S in K) equals the product of X (every battery field)");
    for (name, m, g) in radical_corpus(rng, cfg.radical_samples) {
        let Some(gs) = x.result(generating_set(&m, &g), || name.clone()) else {
            continue;
        };
        let Some(battery) = x.result(test_battery(&m, &g, &gs.set()), || name.clone()) else {
            continue;
        };
        for b in battery {
            let what = || format!("{name}, field {}", b.name);
            match denominator_section(&b.field, &b.gamma) {
                Ok(s) => y.check(s.radical_matches(), || format!("{}: {} vs {}", what(), s.radical, s.y_product)),
                Err(e) => y.check(false, || format!("{}: {e}", what())),
            }
            match check_field(b.name.clone(), &b.field, &b.gamma, &b.set) {
                Ok(c) => x.check(c.radical_identity, what),
                Err(e) => x.check(false, || format!("{}: {e}", what())),
            }
        }
    }
    r.tally(y);
    r.tally(x);
}

// ---------------------------------------------------------------- cross-field

fn cross_field(r: &mut Recorder, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) {
    // the strict containments over Q ⊆ Q(i)
    let strict = (|| -> Result<_> {
        let c = gaussian("1/(2+x)")?;
        let k = c.rationals();
        let l = c.parse_subfield("x")?;
        let rep = cross_field_check(&k, &l, c.gamma())?;
        let p = l.field().parse_element("2+x")?;
        let q = l.field().parse_element("2-x")?;
        let xl_ok = rep.upper.x.len() == 1 && l.field().valuation(&rep.upper.x[0], &p)? > 0;
        let lift_ok = rep.y_lift.len() == 2
            && rep.y_lift.iter().any(|pr| l.field().valuation(pr, &q).unwrap_or(0) > 0)
            && rep.y_lift.iter().any(|pr| l.field().valuation(pr, &p).unwrap_or(0) > 0);
        Ok((rep, xl_ok, lift_ok))
    })();
    match strict {
        Ok((rep, xl_ok, lift_ok)) => {
            r.push(
                "Q in Q(i), 1/(2+i): X(L) = {(2+i)} strictly contains the empty lift of X(Q)",
                rep.passed() && xl_ok && rep.x_lift.is_empty(),
                format!("X(L) = {:?}, lift = {:?}", labels(&rep.upper.x), labels(&rep.x_lift)),
            );
            r.push(
                "Q in Q(i), 1/(2+i): Y(L) = {(2+i)} strictly inside {(2+i), (2-i)}",
                rep.passed() && lift_ok && rep.upper.y.len() == 1 && rep.upper.y == rep.upper.x,
                format!("Y(L) = {:?}, lift = {:?}", labels(&rep.upper.y), labels(&rep.y_lift)),
            );
        }
        Err(e) => r.push("Q in Q(i), 1/(2+i)", false, format!("error: {e}")),
    }
    let exact = (|| -> Result<_> {
        let b = Biquadratic::new(-1, 2).ok_or_else(|| Error::invalid("Q(i, √2)"))?;
        let m = &b.field;
        let two_plus_i = m.add(&m.from_int(2), &b.sqrt_a);
        let g = m.inv(&two_plus_i)?;
        cross_field_check(&Subfield::rationals(m), &b.sub_b(), &g)
    })();
    match exact {
        Ok(rep) => r.push(
            "Q in Q(sqrt 2), 1/(2+i): exact lifting of X and Y",
            rep.exact_case && rep.exact_holds == Some(true) && rep.passed(),
            format!("X(L) = {:?}, Y(L) = {:?}", labels(&rep.upper.x), labels(&rep.upper.y)),
        ),
        Err(e) => r.push("Q in Q(sqrt 2), 1/(2+i)", false, format!("error: {e}")),
    }

    let mut lemmas = Tally::new("X(L) contains the lift of X(K); Y(L) inside the lift of Y(K); O_L[gamma] and O_K[gamma] agree on K");
    let mut exactness = Tally::new("exact lifting when L and K(gamma) intersect in K");
    for i in 0..cfg.cross_field_samples {
        let b = Biquadratic::random(rng);
        let m = &b.field;
        let (k, l, g) = match i % 4 {
            // γ in Q(√b), L = Q(√a): L ∩ K(γ) = Q
            0 => (Subfield::rationals(m), b.sub_a(), random_element(rng, &b.sub_b())),
            1 => (Subfield::rationals(m), b.sub_a(), random_element(rng, &Subfield::whole(m))),
            2 => (b.sub_a(), Subfield::whole(m), random_element(rng, &Subfield::whole(m))),
            _ => (Subfield::rationals(m), Subfield::whole(m), random_element(rng, &b.sub_b())),
        };
        let what = || format!("sample {i}: {} in {}, gamma = {}", k.degree(), m.spec(), g.display());
        match cross_field_check(&k, &l, &g) {
            Ok(rep) => {
                lemmas.check(
                    rep.x_contains_lift && rep.y_within_lift && rep.membership_mismatches.is_empty(),
                    what,
                );
                if rep.exact_case {
                    exactness.check(rep.exact_holds == Some(true), what);
                } else if i % 4 == 0 {
                    exactness.check(false, || format!("{}: expected the exact case", what()));
                }
            }
            Err(e) => lemmas.check(false, || format!("{}: {e}", what())),
        }
    }
    r.tally(lemmas);
    r.tally(exactness);
}

// ---------------------------------------------------------------- same denominator

fn same_denom(r: &mut Recorder, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) {
    for (a, b, want) in [("1/(2+x)", "1/(2+x)", true), ("1/(2+x)", "1/(2-x)", false), ("1/(2+x)", "1/(3+4*x)", true)] {
        let got = (|| -> Result<_> {
            let c = gaussian(a)?;
            let m = c.ambient();
            let s = same_denominator(m, &m.parse_element(a)?, &m.parse_element(b)?)?;
            Ok((s.by_x(), s.conditions_agree()))
        })();
        r.expect_eq(format!("same radical for {a} and {b} in Q(i)"), got, (want, true));
    }
    let mut agree = Tally::new("X-condition and Y-condition on Q(gamma1, gamma2) agree");
    let mut sections = Tally::new("X-condition agrees with equality of radicals of the denominator sections");
    let mut trues = 0usize;
    for i in 0..cfg.same_denom_samples {
        let m = corpus::random_quadratic_field(rng);
        let whole = Subfield::whole(&m);
        let g1 = random_element(rng, &whole);
        let g2 = match i % 3 {
            0 => m.mul(&g1, &g1),
            1 => m.add(&g1, &m.from_int(rng.gen_range(-5..=5))),
            _ => random_element(rng, &whole),
        };
        let what = || format!("{} and {} in {}", g1.display(), g2.display(), m.spec());
        let Some(s) = agree.result(same_denominator(&m, &g1, &g2), what) else {
            continue;
        };
        agree.check(s.conditions_agree(), || format!("{}: {s:?}", what()));
        trues += usize::from(s.by_x());
        let f = &s.compositum;
        let rad = |g: &FieldElement| section_ideal(f, g).and_then(|i| i.radical(f.field()));
        match (rad(&g1), rad(&g2)) {
            (Ok(a), Ok(b)) => sections.check((a == b) == s.by_x(), what),
            (Err(e), _) | (_, Err(e)) => sections.check(false, || format!("{}: {e}", what())),
        }
    }
    r.push(
        "random pairs include both outcomes",
        trues > 0 && trues < cfg.same_denom_samples,
        format!("{trues} of {} pairs share the radical", cfg.same_denom_samples),
    );
    r.tally(agree);
    r.tally(sections);
}

// ---------------------------------------------------------------- membership

fn memberships(r: &mut Recorder, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) {
    let fixed: [(&str, &str, bool, &str, bool); 5] = [
        ("1/(2+x)", "Q", false, "1/5", false),
        ("1/(2+x)", "Q", false, "7", true),
        ("1/(60+15*x)", "Q", false, "1/3", true),
        ("1/(2+x)", "Q(i)", true, "1/(2+x)", true),
        // 1/5 has valuation -1 at (2-i), which Z[i][1/(2+i)] does not invert
        ("1/(2+x)", "Q(i)", true, "1/5", false),
    ];
    for (g, kname, over_k, a, want) in fixed {
        let got = (|| -> Result<_> {
            let c = gaussian(g)?;
            let k = if over_k { c.parse_subfield("x")? } else { c.rationals() };
            let alpha = k.field().parse_element(a)?;
            let m = membership(&k, c.gamma(), &alpha)?;
            let o = membership_oracle(&k, c.gamma(), &alpha, cfg.oracle_cap)?;
            Ok((m, o.is_member()))
        })();
        r.expect_eq(format!("{a} in O_K[{g}] with K = {kname}"), got, (want, want));
    }

    let mut t = Tally::new("membership true gives an oracle representation; false gives none up to the cap");
    let mut members = 0usize;
    for i in 0..cfg.membership_samples {
        let m = corpus::random_quadratic_field(rng);
        let whole = Subfield::whole(&m);
        let k = if rng.gen_bool(0.5) { whole.clone() } else { Subfield::rationals(&m) };
        let g = random_element(rng, &whole);
        let what = || format!("sample {i}: gamma = {} in {}, K of degree {}", g.display(), m.spec(), k.degree());
        let Some(xy) = t.result(compute_xy(&k, &g), what) else {
            continue;
        };
        let kf = k.field();
        let alpha = match (rng.gen_range(0..3), xy.candidates.is_empty()) {
            (0, false) => {
                let c = &xy.candidates[rng.gen_range(0..xy.candidates.len())];
                kf.from_rational(BigRational::new(BigInt::one(), c.prime.p().clone()))
            }
            (1, false) => {
                let c = &xy.candidates[rng.gen_range(0..xy.candidates.len())];
                match kf.inv(&c.prime.uniformizer(kf)) {
                    Ok(a) => a,
                    Err(_) => kf.one(),
                }
            }
            _ => {
                let sub = Subfield::whole(kf);
                random_element(rng, &sub)
            }
        };
        let Some(inside) = t.result(xy.contains(&alpha), what) else {
            continue;
        };
        members += usize::from(inside);
        match membership_oracle(&k, &g, &alpha, cfg.oracle_cap) {
            Ok(OracleOutcome::Member { .. }) => t.check(inside, || format!("{}: alpha = {} found but not a member", what(), alpha.display())),
            Ok(OracleOutcome::NoWitness { .. }) => {
                t.check(!inside, || format!("{}: alpha = {} is a member but no representation found", what(), alpha.display()))
            }
            Err(e) => t.check(false, || format!("{}: {e}", what())),
        }
    }
    r.push(
        "random samples include members and non-members",
        members > 0 && members < cfg.membership_samples,
        format!("{members} of {} samples are members", cfg.membership_samples),
    );
    r.tally(t);
}

// ---------------------------------------------------------------- class groups

/// Class number of the imaginary quadratic order of discriminant `d < 0`,
/// counted as reduced primitive binary quadratic forms.
pub fn reduced_form_count(d: i64) -> u64 {
    assert!(d < 0 && d.rem_euclid(4) <= 1, "negative discriminant");
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    h
}

fn class_groups(r: &mut Recorder) {
    let k = quadratic_field(-5);
    let g = class_group(&k);
    r.expect_eq(
        "Cl(Q(sqrt -5)) = Z/2",
        g.as_ref().map(|g| g.elementary_divisors().to_vec()).map_err(Clone::clone),
        vec![int(2)],
    );
    let quotient = (|| -> Result<_> {
        let g = class_group(&k)?;
        let p2 = k.primes_above(&int(2))?[0].clone();
        let one_plus = k.parse_element("1+x")?;
        let in_p = k.valuation(&p2, &one_plus)? > 0;
        Ok((in_p, g.quotient(&[p2])?))
    })();
    r.expect_eq("quotient by the class of (2, 1+sqrt -5) is trivial", quotient, (true, vec![]));
    let ring = (|| -> Result<_> {
        let c = GammaContext::parse("Q[x]/(x^2+5)", "1/2")?;
        let d = ring_description(&c.parse_subfield("x")?, c.gamma())?;
        Ok((d.is_ok, d.is_pid))
    })();
    r.expect_eq("O_K[1/2] in Q(sqrt -5): not O_K, a principal ideal domain", ring, (false, true));
    let ring = (|| -> Result<_> {
        let c = GammaContext::parse("Q[x]/(x^2+5)", "x")?;
        let d = ring_description(&c.parse_subfield("x")?, c.gamma())?;
        Ok((d.is_ok, d.is_pid))
    })();
    r.expect_eq("O_K[sqrt -5] in Q(sqrt -5): equal to O_K, not principal", ring, (true, false));

    let mut t = Tally::new("class numbers of imaginary quadratic fields match reduced-form counts (|D| <= 300)");
    for d in 1..=300i64 {
        let disc = -d;
        if disc.rem_euclid(4) > 1 || !is_fundamental(disc) {
            continue;
        }
        // x^2 - D/4 or x^2 - x + (1-D)/4
        let f = if disc % 4 == 0 {
            IntPoly::from_i64(&[-disc / 4, 0, 1])
        } else {
            IntPoly::from_i64(&[(1 - disc) / 4, -1, 1])
        };
        let h = NumberField::new(&f).and_then(|k| class_group(&k).map(|g| g.order()));
        let want = BigInt::from(reduced_form_count(disc));
        t.check(h.as_ref() == Ok(&want), || format!("D = {disc}: {h:?} vs {want}"));
    }
    r.tally(t);
}

fn is_fundamental(d: i64) -> bool {
    let sqfree = |mut n: i64| {
        n = n.abs();
        let mut p = 2;
        while p * p <= n {
            if n % (p * p) == 0 {
                return false;
            }
            p += 1;
        }
        true
    };
    match d.rem_euclid(4) {
        1 => sqfree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && sqfree(m)
        }
        _ => false,
    }
}

// ---------------------------------------------------------------- generating sets

fn gensets(r: &mut Recorder, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) {
    let cases: Vec<(String, Arc<NumberField>, FieldElement, Option<Vec<i64>>)> = {
        let mut v = Vec::new();
        let c = gaussian("1/2").expect("literal");
        v.push(("1/2 in Q(i)".to_string(), c.ambient().clone(), c.gamma().clone(), Some(vec![2])));
        let c = gaussian("x").expect("literal");
        v.push(("i in Q(i)".to_string(), c.ambient().clone(), c.gamma().clone(), Some(vec![])));
        let c = gaussian("1/(60+15*x)").expect("literal");
        v.push(("1/(60+15i) in Q(i)".to_string(), c.ambient().clone(), c.gamma().clone(), None));
        let b = Biquadratic::new(-1, 2).expect("Q(i, √2)");
        let m = &b.field;
        let g = m.inv(&m.mul(&m.add(&m.one(), &b.sqrt_a), &m.add(&m.from_int(1), &b.sqrt_b))).expect("nonzero");
        let g = m.scale(&g, &BigRational::new(BigInt::one(), int(3)));
        v.push((format!("{} in {}", g.display(), m.spec()), m.clone(), g, None));
        for _ in 0..cfg.genset_samples {
            let m = corpus::random_quadratic_field(rng);
            let g = random_element(rng, &Subfield::whole(&m));
            v.push((format!("{} in {}", g.display(), m.spec()), m, g, None));
        }
        v
    };
    let mut structure = Tally::new("|S| = #L(gamma), Q(alpha_K) = K, and every K in L(gamma) lies in Q(gamma)");
    let mut battery = Tally::new("S passes the battery: X(L) = primes meeting S, membership agrees");
    let mut minimal = Tally::new("#L(gamma) <= |S'| with equal composita when sizes agree");
    for (name, m, g, expected) in cases {
        let what = || name.clone();
        let Some(gs) = structure.result(generating_set(&m, &g), what) else {
            continue;
        };
        let qg = Subfield::new(&m, &g);
        let ok = qg.as_ref().is_ok_and(|qg| {
            gs.entries.iter().all(|e| {
                qg.contains_subfield(&e.field)
                    && Subfield::new(&m, &e.alpha_ambient).is_ok_and(|a| a.same_field(&e.field))
            })
        }) && gs.set().len() == gs.entries.len();
        structure.check(ok, what);
        if let Some(want) = expected {
            let got: Vec<BigRational> = gs.set().iter().filter_map(|a| a.rational_value()).collect();
            let want: Vec<BigRational> = want.into_iter().map(|x| BigRational::from_integer(int(x))).collect();
            structure.check(got == want && gs.set().len() == want.len(), || format!("{name}: S = {got:?}"));
        }
        match crate::genset::verify_generating_set(&m, &g, &gs.set()) {
            Ok(v) => battery.check(v.passed(), || {
                let bad: Vec<&str> = v.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
                format!("{name}: failing fields {bad:?}")
            }),
            Err(e) => battery.check(false, || format!("{name}: {e}")),
        }
        let mut redundant = gs.set();
        redundant.push(m.from_int(3));
        for s in [gs.set(), redundant] {
            match minimality_check(&gs, &s) {
                Ok(rep) => minimal.check(rep.passed(), || format!("{name}: {rep:?}")),
                Err(e) => minimal.check(false, || format!("{name}: {e}")),
            }
        }
    }
    r.tally(structure);
    r.tally(battery);
    r.tally(minimal);
}

/// Whether every record passed.
pub fn all_passed(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn reduced_forms_oracle() {
        assert_eq!(reduced_form_count(-3), 1);
        assert_eq!(reduced_form_count(-4), 1);
        assert_eq!(reduced_form_count(-20), 2);
        assert_eq!(reduced_form_count(-23), 3);
        assert_eq!(reduced_form_count(-56), 4);
        assert_eq!(reduced_form_count(-84), 4);
        assert!(is_fundamental(-84) && !is_fundamental(-16) && is_fundamental(-3));
    }

    #[test]
    fn examples_suite_passes() {
        let recs = run_suite(Suite::Examples, &VerifyConfig::default());
        for r in &recs {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn small_membership_run() {
        let cfg = VerifyConfig {
            membership_samples: 10,
            ..VerifyConfig::default()
        };
        let recs = run_suite(Suite::Membership, &cfg);
        assert!(recs.iter().filter(|r| r.label.starts_with("membership true")).all(|r| r.passed), "{recs:#?}");
    }
}
