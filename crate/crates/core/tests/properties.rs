//! Property tests for the module invariants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use denom_core::arith::{factorize, is_prime};
use denom_core::classgroup::class_group;
use denom_core::denominators::{compute_xy, membership_oracle, GammaContext};
use denom_core::field::{FractionalIdeal, Subfield};
use denom_core::poly::{
    invariants, is_irreducible, parse_int_poly, smallest_denominator_bruteforce, IntPoly, MinimalPolynomial,
};
use denom_core::tuple::{construct_witness, is_realizable, tuple_of, TupleQuery};
use denom_core::verify::corpus::{quadratic_field, RADICANDS};
use denom_core::verify::reduced_form_count;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// Primitive irreducible polynomial with positive leading coefficient, if `c` gives one.
fn minimal(mut c: Vec<i64>, lead: i64) -> Option<MinimalPolynomial> {
    c.push(lead);
    let f = IntPoly::from_i64(&c);
    if c[0] == 0 || !f.content().is_one() || !is_irreducible(&f).is_irreducible() {
        return None;
    }
    MinimalPolynomial::from_int_poly(&f).ok()
}

fn quadratic_element(a: i64, b: i64, c: i64, d: i64) -> String {
    format!("({a}+{b}*x)/({c}+{d}*x)")
}

fn trial_division_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn factorization_multiplies_back(n in 1i64..2_000_000_000) {
        let f = factorize(&BigInt::from(n)).unwrap();
        let mut prod = BigInt::one();
        for (p, e) in f.factors() {
            prop_assert!(is_prime(p));
            prod *= p.pow(*e);
        }
        prop_assert_eq!(prod, BigInt::from(n));
    }

    #[test]
    fn primality_matches_trial_division(n in 0u64..200_000) {
        prop_assert_eq!(is_prime(&BigInt::from(n)), trial_division_prime(n));
    }

    #[test]
    fn ceiling_formula_matches_search(c in prop::collection::vec(-30i64..=30, 1..=3), lead in 1i64..=30) {
        if let Some(f) = minimal(c, lead) {
            let inv = invariants(&f);
            prop_assert_eq!(&inv.d, &smallest_denominator_bruteforce(&f));
            prop_assert!(inv.divisibilities_hold());
        }
    }

    #[test]
    fn realized_tuples_are_classified_realizable(c in prop::collection::vec(-40i64..=40, 1..=3), lead in 1i64..=40) {
        if let Some(f) = minimal(c, lead) {
            let q = tuple_of(&f);
            prop_assert!(is_realizable(&q).unwrap().realizable, "{} from {}", q, f);
        }
    }

    #[test]
    fn realizable_tuples_have_witnesses(c in 1u64..=40, d in 1u64..=40, e in 1u64..=40, n in 1usize..=4) {
        let q = TupleQuery::new(c, d, e, n);
        if is_realizable(&q).unwrap().realizable {
            let f = construct_witness(&q).unwrap();
            prop_assert_eq!(tuple_of(&f), q);
        } else {
            prop_assert!(construct_witness(&q).is_err());
        }
    }

    #[test]
    fn polynomial_display_round_trips(c in prop::collection::vec(-50i64..=50, 1..=5)) {
        let f = IntPoly::from_i64(&c);
        prop_assert_eq!(parse_int_poly(&f.to_string()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn ideal_norms_are_multiplicative(
        r in prop::sample::select(RADICANDS.to_vec()),
        a in (-20i64..=20, -20i64..=20),
        b in (-20i64..=20, -20i64..=20),
    ) {
        prop_assume!(a != (0, 0) && b != (0, 0));
        let k = quadratic_field(r);
        let x = k.parse_element(&format!("{}+{}*x", a.0, a.1)).unwrap();
        let y = k.parse_element(&format!("{}+{}*x", b.0, b.1)).unwrap();
        let i = FractionalIdeal::principal(&k, &x).unwrap();
        let j = FractionalIdeal::principal(&k, &y).unwrap();
        let ij = i.mul(&k, &j);
        prop_assert_eq!(ij.norm(), i.norm() * j.norm());
        prop_assert_eq!(i.norm(), k.norm(&x).abs());
        prop_assert!(i.mul(&k, &i.inverse(&k)).is_unit());
        let back = FractionalIdeal::from_factorization(&k, &ij.factor(&k).unwrap());
        prop_assert_eq!(back, ij);
    }

    #[test]
    fn x_is_contained_in_y(
        r in prop::sample::select(RADICANDS.to_vec()),
        g in (-9i64..=9, -9i64..=9, -30i64..=30, -30i64..=30),
        over_k in any::<bool>(),
    ) {
        let m = quadratic_field(r);
        let Ok(gamma) = m.parse_element(&quadratic_element(g.0, g.1, g.2, g.3)) else {
            return Ok(());
        };
        prop_assume!(!gamma.is_zero());
        let k = if over_k { Subfield::whole(&m) } else { Subfield::rationals(&m) };
        let rep = compute_xy(&k, &gamma).unwrap();
        for p in &rep.x {
            prop_assert!(rep.y.contains(p));
        }
    }

    #[test]
    fn x_and_y_over_q_come_from_e_and_c(c in prop::collection::vec(-30i64..=30, 1..=3), lead in 1i64..=30) {
        if let Some(f) = minimal(c, lead) {
            let ctx = GammaContext::from_minimal_polynomial(f.poly()).unwrap();
            let inv = ctx.invariants().clone();
            let rep = compute_xy(&ctx.rationals(), ctx.gamma()).unwrap();
            let xs: Vec<BigInt> = rep.x.iter().map(|p| p.p().clone()).collect();
            let ys: Vec<BigInt> = rep.y.iter().map(|p| p.p().clone()).collect();
            let primes = |n: &BigInt| factorize(n).unwrap().primes().cloned().collect::<Vec<_>>();
            prop_assert_eq!(xs, primes(&inv.e));
            prop_assert_eq!(ys, primes(&inv.c));
        }
    }

    #[test]
    fn membership_agrees_with_oracle(
        r in prop::sample::select(RADICANDS.to_vec()),
        g in (-6i64..=6, -6i64..=6, 1i64..=12, -12i64..=12),
        a in (-6i64..=6, -6i64..=6, 1i64..=30),
        over_k in any::<bool>(),
    ) {
        let m = quadratic_field(r);
        let Ok(gamma) = m.parse_element(&quadratic_element(g.0, g.1, g.2, g.3)) else {
            return Ok(());
        };
        let k = if over_k { Subfield::whole(&m) } else { Subfield::rationals(&m) };
        let kf = k.field();
        let alpha = if over_k {
            kf.parse_element(&format!("({}+{}*x)/{}", a.0, a.1, a.2)).unwrap()
        } else {
            kf.from_rational(BigRational::new(a.0.into(), a.2.into()))
        };
        let rep = compute_xy(&k, &gamma).unwrap();
        let inside = rep.contains(&alpha).unwrap();
        let found = membership_oracle(&k, &gamma, &alpha, 64).unwrap().is_member();
        prop_assert_eq!(inside, found, "alpha = {} gamma = {}", alpha, gamma);
    }
}

#[test]
fn imaginary_quadratic_class_numbers_match_form_counts() {
    for d in 1i64..=60 {
        let k = quadratic_field(-d);
        let disc = k.discriminant().clone();
        if disc.abs() != BigInt::from(4 * d) && disc.abs() != BigInt::from(d) {
            continue; // not squarefree
        }
        let h = class_group(&k).unwrap().order();
        let disc: i64 = disc.try_into().unwrap();
        assert_eq!(h, BigInt::from(reduced_form_count(disc)), "Q(sqrt -{d})");
    }
}
