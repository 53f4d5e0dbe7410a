//! Fibonacci entry points and p-adic valuations.
//!
//! Each valuation comes in two flavours: a fast one (the carry rule for
//! fibonomials, a closed form for Fibonacci numbers) and an exact big-integer
//! oracle. The fast paths are only trusted where the tests have compared them
//! against the oracles.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::fib::{fib, fib_run};
use crate::radix::{carry_columns, ColumnSum};
use crate::{Error, Natural, Result, PRIME_CAP};

/// How `p*` compares with `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Relation {
    Less,
    Equal,
    Greater,
}

/// A prime together with its Fibonacci entry point `p*` and `nu_p(F_{p*})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeProfile {
    pub p: u64,
    pub p_star: u64,
    #[serde(rename = "nu_p_F_pstar")]
    pub nu_p_f_pstar: u64,
    pub relation: Relation,
}

impl PrimeProfile {
    pub fn is_odd(&self) -> bool {
        self.p % 2 == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Carry,
    Oracle,
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Valuation {
    pub exponent: u64,
    pub method: Method,
}

impl Valuation {
    fn new(exponent: u64, method: Method) -> Self {
        Valuation { exponent, method }
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    let bound = bound as usize;
    if bound < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::new();
    for i in 2..=bound {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= bound {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Profile of `p`: least `n >= 1` with `p | F_n`, found by running the
/// recurrence mod `p`, with `nu_p(F_{p*})` taken from the exact value.
pub fn entry_point(p: u64) -> Result<PrimeProfile> {
    if p > PRIME_CAP {
        return Err(Error::PrimeTooLarge { p, cap: PRIME_CAP });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (mut a, mut b) = (1u64, 1u64);
    let mut p_star = 1;
    while a % p != 0 {
        (a, b) = (b, (a + b) % p);
        p_star += 1;
    }
    let nu_p_f_pstar = nu_p_int(&fib(p_star)?, p)?.exponent;
    let relation = match p_star.cmp(&p) {
        Ordering::Less => Relation::Less,
        Ordering::Equal => Relation::Equal,
        Ordering::Greater => Relation::Greater,
    };
    Ok(PrimeProfile { p, p_star, nu_p_f_pstar, relation })
}

/// Largest `e` with `p^e | x`.
pub fn nu_p_int(x: &Natural, p: u64) -> Result<Valuation> {
    if p < 2 {
        return Err(Error::Base(p));
    }
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(Valuation::new(nu_nonzero(x, p), Method::Oracle))
}

fn nu_nonzero(x: &Natural, p: u64) -> u64 {
    if let Some(mut v) = x.to_u64() {
        let mut e = 0;
        while v % p == 0 {
            v /= p;
            e += 1;
        }
        return e;
    }
    let divisor = BigUint::from(p);
    let mut e = 0;
    let mut v = x.clone();
    loop {
        let (q, r) = v.div_rem(&divisor);
        if !r.is_zero() {
            return e;
        }
        v = q;
        e += 1;
    }
}

fn nu_u64(mut n: u64, p: u64) -> u64 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// `nu_p(F_n)`.
///
/// For odd `p` this is the closed form `0` if `p* ∤ n`, else
/// `nu_p(F_{p*}) + nu_p(n / p*)`. For `p = 2` the exact value of `F_n` is
/// factored instead.
pub fn nu_p_fib(n: u64, profile: &PrimeProfile) -> Result<Valuation> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    if !profile.is_odd() {
        return nu_p_int(&fib(n)?, profile.p);
    }
    let exponent = if !n.is_multiple_of(profile.p_star) {
        0
    } else {
        profile.nu_p_f_pstar + nu_u64(n / profile.p_star, profile.p)
    };
    Ok(Valuation::new(exponent, Method::Formula))
}

/// `nu_p` of the fibonomial `C(m + n, m)_F` by counting carries when `m/p*`
/// and `n/p*` are added in base `p`. Odd primes only.
pub fn kw_valuation(m: &Natural, n: &Natural, profile: &PrimeProfile) -> Result<Valuation> {
    if !profile.is_odd() {
        return Err(Error::EvenPrime(profile.p));
    }
    let exponent = carry_columns(m, n, profile)
        .filter(ColumnSum::carries)
        .map(|c| if c.position == 0 { profile.nu_p_f_pstar } else { 1 })
        .sum();
    Ok(Valuation::new(exponent, Method::Carry))
}

/// `nu_p(C(n, k)_F)` as the valuations of the Fibonacci factors in the
/// numerator minus those in the denominator, each factor taken exactly.
pub fn fibonomial_valuation_oracle(n: u64, k: u64, p: u64) -> Result<Valuation> {
    if k > n {
        return Err(Error::ZeroValuation);
    }
    if p < 2 {
        return Err(Error::Base(p));
    }
    let k = k.min(n - k);
    let sum = |start: u64| -> u64 { fib_run(start).take(k as usize).map(|f| nu_nonzero(&f, p)).sum() };
    let top = if k == 0 { 0 } else { sum(n - k + 1) };
    let bottom = if k == 0 { 0 } else { sum(1) };
    Ok(Valuation::new(top - bottom, Method::Oracle))
}

/// Whether `nu_5(C(n,k)_F) = nu_5(C(n,k))`, both sides from exact values.
pub fn nu5_fibonomial_equals_nu5_binomial_check(n: u64, k: u64) -> Result<bool> {
    if k > n {
        return Err(Error::Precondition(format!("k = {k} > n = {n}")));
    }
    let fibonomial = nu_p_int(&crate::fib::fibonomial(n, k), 5)?;
    let binomial = nu_p_int(&crate::fib::binomial(n, k), 5)?;
    Ok(fibonomial.exponent == binomial.exponent)
}

/// Prefix sums of `nu_p(F_t)` for `t = 1..=max`, each term from the exact
/// Fibonacci number. Answers fibonomial valuations in constant time.
#[derive(Debug, Clone)]
pub struct FactorValuations {
    p: u64,
    prefix: Vec<u64>,
}

impl FactorValuations {
    pub fn new(p: u64, max: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::Base(p));
        }
        let mut prefix = Vec::with_capacity(max as usize + 1);
        prefix.push(0);
        for f in fib_run(1).take(max as usize) {
            let last = *prefix.last().unwrap();
            prefix.push(last + nu_nonzero(&f, p));
        }
        Ok(FactorValuations { p, prefix })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn max(&self) -> u64 {
        self.prefix.len() as u64 - 1
    }

    /// `nu_p(F_t)`, `1 <= t <= max`.
    pub fn fib(&self, t: u64) -> u64 {
        self.prefix[t as usize] - self.prefix[t as usize - 1]
    }

    /// `nu_p(C(n,k)_F)`, or `None` when the coefficient is zero (`k > n`).
    pub fn fibonomial(&self, n: u64, k: u64) -> Option<u64> {
        if k > n {
            return None;
        }
        let f = |i: u64| self.prefix[i as usize];
        Some(f(n) - f(k) - f(n - k))
    }
}
