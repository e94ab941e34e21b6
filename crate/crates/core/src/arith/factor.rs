use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;

/// Bases 2..41 make Miller-Rabin deterministic below this bound.
const MR_CERTIFIED_BOUND: &str = "3317044064679887385961981";
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Total Pollard-rho iterations allowed per call.
    pub effort: u64,
}

pub const DEFAULT_EFFORT: u64 = 1 << 24;

static EFFORT: AtomicU64 = AtomicU64::new(DEFAULT_EFFORT);

/// Set the effort used by [`factorize`] and everything built on it.
pub fn set_default_effort(effort: u64) {
    EFFORT.store(effort.max(1), Ordering::Relaxed);
}

pub fn default_effort() -> u64 {
    EFFORT.load(Ordering::Relaxed)
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { effort: default_effort() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimeFactorization {
    factors: Vec<(BigInt, u32)>,
}

impl PrimeFactorization {
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn product(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    fn push(&mut self, p: BigInt) {
        match self.factors.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => self.factors.push((p, 1)),
        }
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

pub fn factorize(n: &BigInt) -> Result<PrimeFactorization> {
    factorize_with(n, &FactorConfig::default())
}

/// Factor `|n|` for `n != 0`. Fails rather than guessing when the effort bound runs out.
pub fn factorize_with(n: &BigInt, cfg: &FactorConfig) -> Result<PrimeFactorization> {
    if n.is_zero() {
        return Err(Error::invalid("cannot factor zero"));
    }
    let mut m = n.abs();
    let mut out = PrimeFactorization::default();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            out.push(pb.clone());
        }
        // Large cofactors are usually prime; check early to skip the long trial loop.
        if p == 997 && !m.is_one() && is_prime(&m) {
            break;
        }
    }
    if !m.is_one() {
        let mut budget = cfg.effort;
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if is_prime(&c) {
                if c.bits() > 81 && !certified_range(&c) {
                    return Err(Error::Unfactored {
                        cofactor: c,
                        effort: cfg.effort,
                    });
                }
                out.push(c);
                continue;
            }
            match pollard_brent(&c, &mut budget) {
                Some(d) => {
                    let e = &c / &d;
                    stack.push(d);
                    stack.push(e);
                }
                None => {
                    return Err(Error::Unfactored {
                        cofactor: c,
                        effort: cfg.effort,
                    })
                }
            }
        }
    }
    out.factors.sort();
    Ok(out)
}

fn certified_range(n: &BigInt) -> bool {
    let bound: BigInt = MR_CERTIFIED_BOUND.parse().unwrap();
    n < &bound
}

/// Deterministic below 3.3e24. Above that bound it is a strong probable-prime test
/// and `factorize` refuses to certify such primes.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt, budget: &mut u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    if let Some(v) = n.to_u64() {
        return pollard_brent_u64(v, budget).map(BigInt::from);
    }
    let m = 128u64;
    for c in 1u64.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut r = 1u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = m.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                *budget = budget.checked_sub(steps)?;
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pollard_brent_u64(n: u64, budget: &mut u64) -> Option<u64> {
    let m = 128u64;
    for c in 1..n {
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let mut y = 2u64;
        let mut x = y;
        let mut ys = y;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = m.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                *budget = budget.checked_sub(steps)?;
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: i64) -> Vec<(i64, u32)> {
        factorize(&BigInt::from(n))
            .unwrap()
            .factors()
            .iter()
            .map(|(p, e)| (p.to_i64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn small_values() {
        assert_eq!(fac(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(fac(1), vec![]);
        assert_eq!(fac(3825), vec![(3, 2), (5, 2), (17, 1)]);
        assert_eq!(fac(-12), vec![(2, 2), (3, 1)]);
    }

    #[test]
    fn beyond_trial_division() {
        // two primes just above 10^6 and one near 10^9
        let p = 1_000_003i64;
        let q = 1_000_033i64;
        assert_eq!(fac(p * q), vec![(p, 1), (q, 1)]);
        let big: BigInt = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64) * 1_000_003u64;
        let f = factorize(&big).unwrap();
        assert_eq!(f.product(), big);
        assert_eq!(f.factors().len(), 3);
    }

    #[test]
    fn primality() {
        assert!(is_prime(&BigInt::from(2)));
        assert!(!is_prime(&BigInt::from(1)));
        assert!(is_prime(&BigInt::from(1_000_000_007u64)));
        // strong pseudoprime to bases 2..37 but caught by 41
        let spsp: BigInt = "3825123056546413051".parse().unwrap();
        assert!(!is_prime(&spsp));
        let m61: BigInt = (BigInt::one() << 61) - 1;
        assert!(is_prime(&m61));
    }

    #[test]
    fn effort_bound_is_reported() {
        let n: BigInt = BigInt::from(1_000_000_007u64) * BigInt::from(1_000_000_009u64);
        let err = factorize_with(&n, &FactorConfig { effort: 1 }).unwrap_err();
        assert!(matches!(err, Error::Unfactored { .. }));
    }
}
