use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use denom_core::classgroup::class_group;
use denom_core::denominators::{
    compute_xy, denominator_section, local_classify, membership, membership_oracle, ring_description,
    same_denominator, GammaContext, OracleOutcome, XYReport,
};
use denom_core::field::{parse_field_spec, FieldElement, NumberField, PrimeIdeal, Subfield};
use denom_core::genset::{generating_set, verify_generating_set};
use denom_core::poly::invariants;
use denom_core::tuple::{atlas, construct_witness, is_realizable, tuple_of, TupleCertificate, TupleQuery};
use denom_core::verify::{run_suite, Suite, VerifyConfig};
use denom_core::Error;

use crate::report::{list, Record, Value};
use crate::{BaseArgs, Cli, Command, FieldCommand, GammaArgs, TupleCommand};

/// An error together with the argument it came from.
#[derive(Debug)]
pub struct CliError {
    context: String,
    source: Error,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.context.is_empty() {
            write!(f, "{}", self.source)
        } else {
            write!(f, "{}: {}", self.context, self.source)
        }
    }
}

impl From<Error> for CliError {
    fn from(source: Error) -> CliError {
        CliError {
            context: String::new(),
            source,
        }
    }
}

trait Context<T> {
    fn ctx(self, what: &str) -> std::result::Result<T, CliError>;
}

impl<T> Context<T> for denom_core::Result<T> {
    fn ctx(self, what: &str) -> std::result::Result<T, CliError> {
        self.map_err(|source| CliError {
            context: what.to_string(),
            source,
        })
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Default)]
pub struct Outcome {
    pub records: Vec<Record>,
    /// A verification step failed; reported with exit status 2.
    pub failed: bool,
}

impl Outcome {
    fn push(&mut self, r: Record) {
        self.records.push(r);
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut out = Outcome::default();
    match &cli.command {
        Command::Invariants { polynomial, gamma } => {
            let ctx = match polynomial {
                Some(p) => GammaContext::parse_minimal_polynomial(p).ctx("polynomial")?,
                None => context(gamma)?,
            };
            let inv = ctx.invariants();
            out.push(
                Record::new("invariants")
                    .with("minpoly", ctx.minimal_polynomial().to_string())
                    .with("c", &inv.c)
                    .with("d", &inv.d)
                    .with("e", &inv.e)
                    .with("n", inv.n),
            );
        }
        Command::Tuple(t) => tuple(t, &mut out)?,
        Command::Field(f) => field(f, &mut out)?,
        Command::Xy { gamma, base } => {
            let ctx = context(gamma)?;
            let k = base_field(&ctx, base)?;
            let rep = compute_xy(&k, ctx.gamma())?;
            out.push(context_record(&ctx));
            out.push(subfield_record("subfield", &k));
            xy_records(&k, &rep, &mut out);
        }
        Command::Member { gamma, base, alpha } => {
            let ctx = context(gamma)?;
            let k = base_field(&ctx, base)?;
            let a_amb = ctx.ambient().parse_element(alpha).ctx("--alpha")?;
            let a = k
                .from_ambient(&a_amb)
                .ok_or_else(|| Error::invalid("alpha does not lie in the subfield"))
                .ctx("--alpha")?;
            let member = membership(&k, ctx.gamma(), &a)?;
            let oracle = membership_oracle(&k, ctx.gamma(), &a, cli.max_degree)?;
            out.push(context_record(&ctx));
            out.push(subfield_record("subfield", &k));
            let mut r = Record::new("member")
                .with("alpha", a_amb.display())
                .with("member", member);
            match &oracle {
                OracleOutcome::Member { coefficients } => {
                    r = r
                        .with("oracle", "found")
                        .with("degree", coefficients.len() - 1)
                        .with("coefficients", list(coefficients.iter().map(|c| k.to_ambient(c))));
                }
                OracleOutcome::NoWitness { cap } => {
                    r = r.with("oracle", "none").with("cap", *cap);
                }
            }
            let consistent = member == oracle.is_member();
            out.push(r.with("consistent", consistent));
            out.failed = !consistent;
        }
        Command::Ring { gamma, base } => {
            let ctx = context(gamma)?;
            let k = base_field(&ctx, base)?;
            let d = ring_description(&k, ctx.gamma())?;
            out.push(context_record(&ctx));
            out.push(subfield_record("subfield", &k));
            out.push(
                Record::new("ring")
                    .with("x", list(&d.x))
                    .with("is_ok", d.is_ok)
                    .with("class_group", list(&d.class_group))
                    .with("quotient", list(&d.quotient))
                    .with("is_pid", d.is_pid),
            );
        }
        Command::KernelIdeal { gamma, base } => {
            let ctx = context(gamma)?;
            let k = base_field(&ctx, base)?;
            let rep = compute_xy(&k, ctx.gamma())?;
            let ideal = rep.kernel_ideal();
            let factors = rep.candidates.iter().filter_map(|c| {
                let m = c.valuations.iter().flatten().copied().min().unwrap_or(0);
                (m < 0).then(|| format!("{}^{}", c.prime, -m))
            });
            out.push(context_record(&ctx));
            out.push(subfield_record("subfield", &k));
            out.push(
                Record::new("kernel_ideal")
                    .with("factorization", list(factors))
                    .with("norm", ideal.norm().to_string())
                    .with("hnf", ideal.to_string()),
            );
            let s = denominator_section(&k, ctx.gamma())?;
            let factors = s.factorization.iter().map(|(p, e)| format!("{p}^{e}"));
            out.push(
                Record::new("denominator_section")
                    .with("factorization", list(factors))
                    .with("hnf", s.ideal.to_string())
                    .with("radical_is_y_product", s.radical_matches()),
            );
            out.failed = !s.radical_matches();
        }
        Command::Classgroup { field } => {
            let k = parse_field_spec(field).ctx("--field")?;
            let g = class_group(&k)?;
            let gens = g
                .generator_primes()
                .iter()
                .zip(g.generators())
                .map(|(p, i)| p.as_ref().map_or_else(|| i.to_string(), |p| p.to_string()));
            out.push(field_record(&k));
            out.push(
                Record::new("classgroup")
                    .with("order", g.order())
                    .with("structure", list(g.elementary_divisors()))
                    .with("generators", list(gens))
                    .with("minkowski_bound", g.minkowski_bound()),
            );
        }
        Command::Genset { gamma, verify } => {
            let ctx = context(gamma)?;
            let res = generating_set(ctx.ambient(), ctx.gamma())?;
            out.push(context_record(&ctx));
            for e in &res.entries {
                out.push(
                    Record::new("genset.field")
                        .with("polynomial", e.field.field().defining_poly().to_string())
                        .with("generator", e.field.generator().display())
                        .with("primes", list(&e.primes))
                        .with("class_number", &e.class_number)
                        .with("alpha", e.alpha_ambient.display()),
                );
            }
            let s = res.set();
            out.push(
                Record::new("genset")
                    .with("fields", res.entries.len())
                    .with("s", list(&s)),
            );
            if *verify {
                let v = verify_generating_set(ctx.ambient(), ctx.gamma(), &s)?;
                for c in &v.checks {
                    out.push(
                        Record::new("battery")
                            .with("field", c.name.clone())
                            .with("degree", c.degree)
                            .with("x", list(&c.x))
                            .with("s_primes", list(&c.s_primes))
                            .with("radical_identity", c.radical_identity)
                            .with("membership_samples", c.membership_samples)
                            .with("membership_mismatches", c.membership_mismatches.len())
                            .with("passed", c.passed()),
                    );
                }
                out.push(Record::new("battery.summary").with("passed", v.passed()));
                out.failed = !v.passed();
            }
        }
        Command::SameDenom { gamma, other } => {
            let ctx = context(gamma)?;
            let g2 = ctx.ambient().parse_element(other).ctx("--other")?;
            let r = same_denominator(ctx.ambient(), ctx.gamma(), &g2)?;
            out.push(context_record(&ctx));
            out.push(subfield_record("compositum", &r.compositum));
            out.push(
                Record::new("same_denom")
                    .with("other", g2.display())
                    .with("x1", list(&r.x1))
                    .with("x2", list(&r.x2))
                    .with("y1", list(&r.y1))
                    .with("y2", list(&r.y2))
                    .with("same", r.by_x())
                    .with("conditions_agree", r.conditions_agree()),
            );
            out.failed = !r.conditions_agree();
        }
        Command::Local { gamma, base, upper, p } => {
            let ctx = context(gamma)?;
            let k = base_field(&ctx, base)?;
            let up = match upper {
                Some(s) => ctx.parse_subfield(s).ctx("--upper")?,
                None => ctx.extended_field(&k)?,
            };
            if !up.contains(ctx.gamma()) || !up.contains_subfield(&k) {
                return Err(Error::invalid("the upper field must contain K and gamma")).ctx("--upper");
            }
            let primes: Vec<PrimeIdeal> = match p {
                Some(p) => {
                    let p: BigInt = parse_int(p, "--p")?;
                    k.field().primes_above(&p).ctx("--p")?.to_vec()
                }
                None => compute_xy(&k, ctx.gamma())?
                    .candidates
                    .into_iter()
                    .map(|c| c.prime)
                    .collect(),
            };
            out.push(context_record(&ctx));
            out.push(subfield_record("subfield", &k));
            out.push(subfield_record("upper", &up));
            for pr in &primes {
                for q in k.primes_over(&up, pr)? {
                    let ring = local_classify(&k, &up, ctx.gamma(), pr, &q)?;
                    out.push(
                        Record::new("local")
                            .with("prime", pr.to_string())
                            .with("above", q.to_string())
                            .with("ring", ring.name()),
                    );
                }
            }
        }
        Command::Verify { suites, quick } => {
            let list: Vec<Suite> = if suites == "all" {
                Suite::ALL.to_vec()
            } else {
                suites
                    .split(',')
                    .map(|s| s.trim().parse::<Suite>())
                    .collect::<denom_core::Result<_>>()
                    .ctx("suite")?
            };
            let cfg = verify_config(cli, *quick);
            let mut total = 0usize;
            let mut failures = 0usize;
            for s in list {
                for c in run_suite(s, &cfg) {
                    total += 1;
                    failures += usize::from(!c.passed);
                    out.push(
                        Record::new("check")
                            .with("suite", c.suite)
                            .with("status", if c.passed { "ok" } else { "FAIL" })
                            .with("label", c.label)
                            .with("detail", c.detail),
                    );
                }
            }
            out.push(
                Record::new("verify")
                    .with("checks", total)
                    .with("failures", failures),
            );
            out.failed = failures > 0;
        }
    }
    Ok(out)
}

fn verify_config(cli: &Cli, quick: bool) -> VerifyConfig {
    let mut cfg = VerifyConfig {
        seed: cli.seed,
        oracle_cap: cli.max_degree,
        ..VerifyConfig::default()
    };
    if quick {
        for n in [
            &mut cfg.d_formula_samples,
            &mut cfg.xy_samples,
            &mut cfg.radical_samples,
            &mut cfg.cross_field_samples,
            &mut cfg.same_denom_samples,
            &mut cfg.membership_samples,
            &mut cfg.genset_samples,
        ] {
            *n = (*n / 10).max(1);
        }
        cfg.tuple_height = 12;
        cfg.tuple_max_c = 8;
    }
    cfg
}

fn parse_int(s: &str, what: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| CliError {
        context: what.to_string(),
        source: Error::Parse {
            position: 0,
            token: s.to_string(),
            message: "expected an integer".into(),
        },
    })
}

fn context(g: &GammaArgs) -> Result<GammaContext> {
    match (&g.minpoly, &g.gamma) {
        (Some(p), _) => GammaContext::parse_minimal_polynomial(p).ctx("--minpoly"),
        (None, Some(gamma)) => {
            let m = match &g.field {
                Some(f) => parse_field_spec(f).ctx("--field")?,
                None => NumberField::rationals(),
            };
            let e = m.parse_element(gamma).ctx("--gamma")?;
            GammaContext::new(&m, e).ctx("--gamma")
        }
        (None, None) => Err(Error::invalid("give --gamma (with --field) or --minpoly").into()),
    }
}

fn base_field(ctx: &GammaContext, b: &BaseArgs) -> Result<Subfield> {
    match &b.subfield {
        Some(s) => ctx.parse_subfield(s).ctx("--subfield"),
        None => Ok(ctx.rationals()),
    }
}

fn context_record(ctx: &GammaContext) -> Record {
    let inv = ctx.invariants();
    Record::new("context")
        .with("field", ctx.ambient().defining_poly().to_string())
        .with("gamma", ctx.gamma().display())
        .with("minpoly", ctx.minimal_polynomial().to_string())
        .with("c", &inv.c)
        .with("d", &inv.d)
        .with("e", &inv.e)
        .with("n", inv.n)
}

/// A subfield `Q(kappa)`; prime labels of the subfield refer to its own
/// defining polynomial.
fn subfield_record(kind: &str, k: &Subfield) -> Record {
    Record::new(kind)
        .with("degree", k.degree())
        .with("polynomial", k.field().defining_poly().to_string())
        .with("generator", k.generator().display())
}

fn field_record(k: &Arc<NumberField>) -> Record {
    let (r1, r2) = k.signature();
    let basis = k.integral_basis().iter().map(|row| k.element(row.clone()));
    Record::new("field")
        .with("polynomial", k.defining_poly().to_string())
        .with("degree", k.degree())
        .with("signature", list([r1, r2]))
        .with("discriminant", k.discriminant())
        .with("index", k.index())
        .with("integral_basis", list(basis))
}

fn xy_records(k: &Subfield, rep: &XYReport, out: &mut Outcome) {
    out.push(Record::new("coefficients").with("b", list(rep.coefficients.iter().map(|b| k.to_ambient(b)))));
    for c in &rep.candidates {
        let vals = Value::List(c.valuations.iter().map(|v| v.map(BigInt::from).into()).collect());
        out.push(
            Record::new("candidate")
                .with("prime", c.prime.to_string())
                .with("valuations", vals)
                .with("in_x", rep.in_x(&c.prime))
                .with("in_y", rep.in_y(&c.prime)),
        );
    }
    out.push(Record::new("xy").with("x", list(&rep.x)).with("y", list(&rep.y)));
}

fn field(f: &FieldCommand, out: &mut Outcome) -> Result<()> {
    match f {
        FieldCommand::Info { field } => {
            let k = parse_field_spec(field).ctx("field")?;
            out.push(field_record(&k));
        }
        FieldCommand::Factor { field, element } => {
            let k = parse_field_spec(field).ctx("field")?;
            let a: FieldElement = k.parse_element(element).ctx("element")?;
            let fac = k.factor_element(&a).ctx("element")?;
            out.push(field_record(&k));
            for (p, v) in &fac {
                out.push(
                    Record::new("prime")
                        .with("label", p.to_string())
                        .with("p", p.p())
                        .with("e", p.e() as u64)
                        .with("f", p.f() as u64)
                        .with("valuation", BigInt::from(*v)),
                );
            }
            out.push(
                Record::new("factorization")
                    .with("element", a.display())
                    .with("norm", k.norm(&a).to_string())
                    .with("factors", list(fac.iter().map(|(p, v)| format!("{p}^{v}")))),
            );
        }
    }
    Ok(())
}

fn query(c: &str, d: &str, e: &str, n: usize) -> Result<TupleQuery> {
    Ok(TupleQuery::new(parse_int(c, "c")?, parse_int(d, "d")?, parse_int(e, "e")?, n))
}

fn certificate_record(cert: &TupleCertificate) -> Record {
    let q = &cert.query;
    Record::new("tuple")
        .with("c", &q.c)
        .with("d", &q.d)
        .with("e", &q.e)
        .with("n", q.n)
        .with("realizable", cert.realizable)
        .with("reason", cert.violated.as_ref().map(|v| v.to_string()))
        .with("code", cert.violated.as_ref().map(|v| v.code()))
}

fn tuple(t: &TupleCommand, out: &mut Outcome) -> Result<()> {
    match t {
        TupleCommand::Check { c, d, e, n } => {
            let cert = is_realizable(&query(c, d, e, *n)?)?;
            out.push(certificate_record(&cert));
            for p in &cert.diagnostics {
                out.push(
                    Record::new("tuple.prime")
                        .with("p", &p.p)
                        .with("vc", p.vc)
                        .with("vd", p.vd)
                        .with("ve", p.ve)
                        .with("first", p.first)
                        .with("ceiling", p.ceiling)
                        .with("exact_power", p.exact_power),
                );
            }
        }
        TupleCommand::Witness { c, d, e, n } => {
            let q = query(c, d, e, *n)?;
            let f = construct_witness(&q)?;
            let got = tuple_of(&f);
            let inv = invariants(&f);
            out.push(
                Record::new("witness")
                    .with("minpoly", f.to_string())
                    .with("c", &inv.c)
                    .with("d", &inv.d)
                    .with("e", &inv.e)
                    .with("n", inv.n)
                    .with("matches", got == q),
            );
            out.failed = got != q;
        }
        TupleCommand::Atlas {
            max_n,
            max_c,
            realizable_only,
        } => {
            let certs = atlas(1..=*max_n, *max_c)?;
            let mut realizable = 0usize;
            for cert in &certs {
                realizable += usize::from(cert.realizable);
                if cert.realizable || !realizable_only {
                    out.push(certificate_record(cert));
                }
            }
            out.push(
                Record::new("atlas")
                    .with("tuples", certs.len())
                    .with("realizable", realizable),
            );
        }
    }
    Ok(())
}
