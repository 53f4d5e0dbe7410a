//! Divisibility of fibonomials against the digit products
//! `C(n_0,k_0)_F C(n_1,k_1)_F ...` taken in the entry-point base, plus the
//! mod 2 and mod 5 identities exposed as checkable properties.

use std::io::{self, Write};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fib::{fib_mod, fibonomial, fibonomial_row_mod, fibonomial_rows_mod};
use crate::radix::{digits_le, expand_base_fp, expand_base_p};
use crate::valuation::{entry_point, is_prime, kw_valuation, primes_up_to, FactorValuations, PrimeProfile, Relation};
use crate::{Error, Natural, Result};

/// Outcome of comparing both sides of the divisibility biconditional at one
/// `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureVerdict {
    pub p: u64,
    pub n: u64,
    pub k: u64,
    #[serde(rename = "lhs")]
    pub lhs_divisible: bool,
    #[serde(rename = "rhs")]
    pub rhs_divisible: bool,
    #[serde(rename = "agree")]
    pub agrees: bool,
}

impl ConjectureVerdict {
    fn new(p: u64, n: u64, k: u64, lhs_divisible: bool, rhs_divisible: bool) -> Self {
        ConjectureVerdict { p, n, k, lhs_divisible, rhs_divisible, agrees: lhs_divisible == rhs_divisible }
    }
}

/// Whether `p` divides `C(n_0,k_0)_F C(n_1,k_1)_F ...` with digits taken in
/// the entry-point base. `k`'s expansion is zero-padded; a factor with
/// `n_i < k_i` is zero and so divisible.
pub fn digit_product_divisible(n: &Natural, k: &Natural, profile: &PrimeProfile) -> bool {
    let nd = expand_base_fp(n, profile);
    let kd = expand_base_fp(k, profile);
    (0..nd.len().max(kd.len())).any(|i| {
        let (a, b) = (nd.digit(i), kd.digit(i));
        b > a || (fibonomial(a, b) % profile.p).is_zero()
    })
}

/// Which side of the biconditional a sweep computes by the carry rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMethod {
    Carry,
    Oracle,
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    /// Worker threads; 0 means available parallelism.
    pub jobs: usize,
    /// `None` picks the carry rule for odd primes and the oracle for 2.
    pub method: Option<SweepMethod>,
    /// In carry mode, cross-check every `stride`-th `(n, k)` (in row-major
    /// order) against the oracle.
    pub oracle_stride: Option<u64>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { jobs: 0, method: None, oracle_stride: Some(37) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub p: u64,
    /// Rows `0..rows` were checked.
    pub rows: u64,
    pub method: SweepMethod,
    /// Disagreements ordered by `(n, k)`.
    pub counterexamples: Vec<ConjectureVerdict>,
    pub oracle_checks: u64,
    pub seconds: f64,
}

#[derive(Serialize)]
struct SweepHeader {
    p: u64,
    rows: u64,
    method: SweepMethod,
}

#[derive(Serialize)]
struct SweepSummary {
    counterexamples: usize,
    seconds: Option<f64>,
}

impl SweepRecord {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Header line, one line per disagreement, summary line. Wall-clock time
    /// is written only when `with_seconds` is set (`null` otherwise), so the
    /// default output depends on nothing but the inputs.
    pub fn write_jsonl<W: Write>(&self, mut w: W, with_seconds: bool) -> io::Result<()> {
        let header = SweepHeader { p: self.p, rows: self.rows, method: self.method };
        writeln!(w, "{}", serde_json::to_string(&header)?)?;
        for verdict in &self.counterexamples {
            writeln!(w, "{}", serde_json::to_string(verdict)?)?;
        }
        let summary = SweepSummary {
            counterexamples: self.counterexamples.len(),
            seconds: with_seconds.then_some(self.seconds),
        };
        writeln!(w, "{}", serde_json::to_string(&summary)?)?;
        Ok(())
    }
}

/// `divisible[a][b]` for `C(a,b)_F` with `b <= a < len`, from residues mod p.
struct DigitFactorTable {
    divisible: Vec<Vec<bool>>,
}

impl DigitFactorTable {
    fn new(p: u64, len: u64) -> Result<Self> {
        let divisible = fibonomial_rows_mod(p)?
            .take(len as usize)
            .map(|row| row.entries.iter().map(|&r| r == 0).collect())
            .collect();
        Ok(DigitFactorTable { divisible })
    }

    fn factor_divisible(&self, a: u64, b: u64) -> bool {
        b > a || self.divisible[a as usize][b as usize]
    }
}

struct Sweeper<'a> {
    profile: &'a PrimeProfile,
    method: SweepMethod,
    stride: Option<u64>,
    factors: DigitFactorTable,
    oracle: Option<FactorValuations>,
}

impl Sweeper<'_> {
    fn fp_digits(&self, v: u64) -> impl Iterator<Item = u64> {
        let (p, p_star) = (self.profile.p, self.profile.p_star);
        let mut rest = v / p_star;
        std::iter::once(v % p_star).chain(std::iter::from_fn(move || {
            (rest > 0).then(|| {
                let d = rest % p;
                rest /= p;
                d
            })
        }))
    }

    fn rhs(&self, n: u64, k: u64) -> bool {
        let mut kd = self.fp_digits(k);
        // k <= n, so n has at least as many digits as k.
        self.fp_digits(n).any(|a| self.factors.factor_divisible(a, kd.next().unwrap_or(0)))
    }

    fn oracle_exponent(&self, n: u64, k: u64) -> u64 {
        self.oracle.as_ref().unwrap().fibonomial(n, k).unwrap()
    }

    /// Disagreements in row `n` and the number of oracle cross-checks done.
    fn row(&self, n: u64) -> Result<(Vec<ConjectureVerdict>, u64)> {
        let mut out = Vec::new();
        let mut checks = 0;
        let first_index = n * (n + 1) / 2;
        for k in 0..=n {
            let exponent = match self.method {
                SweepMethod::Oracle => self.oracle_exponent(n, k),
                SweepMethod::Carry => {
                    let carry = kw_valuation(&BigUint::from(k), &BigUint::from(n - k), self.profile)?.exponent;
                    if self.stride.is_some_and(|s| (first_index + k).is_multiple_of(s)) {
                        checks += 1;
                        let oracle = self.oracle_exponent(n, k);
                        if oracle != carry {
                            return Err(Error::OracleMismatch { n, k, carry, oracle });
                        }
                    }
                    carry
                }
            };
            let verdict = ConjectureVerdict::new(self.profile.p, n, k, exponent >= 1, self.rhs(n, k));
            if !verdict.agrees {
                out.push(verdict);
            }
        }
        Ok((out, checks))
    }
}

/// Checks the biconditional on every `(n, k)` with `0 <= k <= n < rows`.
///
/// Rows are spread over a worker pool and merged back in `(n, k)` order, so
/// the record does not depend on the number of workers. Refuses primes with
/// `p* < p`; see [`find_counterexample`].
pub fn verify_conjecture(profile: &PrimeProfile, rows: u64, options: &SweepOptions) -> Result<SweepRecord> {
    if profile.relation == Relation::Less {
        return Err(Error::HypothesisUnmet { p: profile.p, p_star: profile.p_star });
    }
    let method = match options.method {
        Some(SweepMethod::Carry) if !profile.is_odd() => return Err(Error::EvenPrime(profile.p)),
        Some(m) => m,
        None if profile.is_odd() => SweepMethod::Carry,
        None => SweepMethod::Oracle,
    };
    if options.oracle_stride == Some(0) {
        return Err(Error::Precondition("oracle stride must be positive".into()));
    }
    let start = Instant::now();

    let digit_bound = profile.p_star.max(profile.p).min(rows);
    let needs_oracle = method == SweepMethod::Oracle || options.oracle_stride.is_some();
    let sweeper = Sweeper {
        profile,
        method,
        stride: options.oracle_stride,
        factors: DigitFactorTable::new(profile.p, digit_bound)?,
        oracle: if needs_oracle { Some(FactorValuations::new(profile.p, rows)?) } else { None },
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    let per_row: Vec<(Vec<ConjectureVerdict>, u64)> =
        pool.install(|| (0..rows).into_par_iter().map(|n| sweeper.row(n)).collect::<Result<_>>())?;

    let oracle_checks = per_row.iter().map(|(_, c)| c).sum();
    let mut counterexamples: Vec<_> = per_row.into_iter().flat_map(|(v, _)| v).collect();
    counterexamples.sort_by_key(|v| (v.n, v.k));

    Ok(SweepRecord {
        p: profile.p,
        rows,
        method,
        counterexamples,
        oracle_checks,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// The witness `((p*)^2, p*)` for a prime with `p* < p`: the digit product
/// `C(0,0)_F C(p*,1)_F = F_{p*}` is divisible by `p`, the coefficient is not.
pub fn find_counterexample(profile: &PrimeProfile) -> Result<(Natural, Natural, ConjectureVerdict)> {
    if profile.relation != Relation::Less {
        return Err(Error::NoGuaranteedCounterexample { p: profile.p, p_star: profile.p_star });
    }
    let k = BigUint::from(profile.p_star);
    let n = &k * &k;
    let lhs = kw_valuation(&k, &(&n - &k), profile)?.exponent >= 1;
    let rhs = digit_product_divisible(&n, &k, profile);
    let verdict = ConjectureVerdict::new(profile.p, profile.p_star * profile.p_star, profile.p_star, lhs, rhs);
    Ok((n, k, verdict))
}

/// `5 | C(n,k)_F` read off the base-5 digits: true iff some `n_i < k_i`.
pub fn weightlift_divisible_mod5(n: &Natural, k: &Natural) -> bool {
    let nd = digits_le(n, 5);
    let kd = digits_le(k, 5);
    kd.iter().enumerate().any(|(i, &b)| nd.get(i).copied().unwrap_or(0) < b)
}

fn divisible_by_5(table: &FactorValuations, n: u64, k: u64) -> bool {
    table.fibonomial(n, k).is_none_or(|e| e >= 1)
}

fn self_similarity_holds(table: &FactorValuations, m: u32, n: u64, k: u64, i: u64, j: u64) -> bool {
    let block = 5u64.pow(m);
    divisible_by_5(table, n + i * block, k + j * block) == divisible_by_5(table, n, k)
}

/// `5 | C(n + i 5^m, k + j 5^m)_F  <=>  5 | C(n, k)_F` at one instance, both
/// sides from exact Fibonacci valuations.
pub fn check_self_similarity_mod5(m: u32, n: u64, k: u64, i: u64, j: u64) -> Result<bool> {
    let block = 5u64
        .checked_pow(m)
        .filter(|&b| b <= 1 << 20)
        .ok_or_else(|| Error::Precondition(format!("5^{m} is too large")))?;
    if n >= block || k >= block || j > i || i > 4 {
        return Err(Error::Precondition(format!(
            "need n, k < 5^{m} and 0 <= j <= i <= 4, got n={n} k={k} i={i} j={j}"
        )));
    }
    let table = FactorValuations::new(5, n + i * block)?;
    Ok(self_similarity_holds(&table, m, n, k, i, j))
}

/// Every `(n, k, i, j)` with `n, k < 5^m`, `j <= i <= 4` where the
/// self-similarity biconditional fails.
pub fn self_similarity_failures_mod5(m: u32) -> Result<Vec<(u64, u64, u64, u64)>> {
    let block = 5u64.pow(m);
    let table = FactorValuations::new(5, 5 * block)?;
    let mut failures = Vec::new();
    for n in 0..block {
        for k in 0..block {
            for i in 0..=4 {
                for j in 0..=i {
                    if !self_similarity_holds(&table, m, n, k, i, j) {
                        failures.push((n, k, i, j));
                    }
                }
            }
        }
    }
    Ok(failures)
}

fn period_mod2_precondition(m: u32, n: u64, k: u64) -> Result<u64> {
    let period = 2u64
        .checked_pow(m)
        .and_then(|b| b.checked_mul(3))
        .filter(|&b| b <= 1 << 16)
        .ok_or_else(|| Error::Precondition(format!("3*2^{m} is too large")))?;
    if n >= period || k >= period {
        return Err(Error::Precondition(format!("need n, k < 3*2^{m}, got n={n} k={k}")));
    }
    Ok(period)
}

fn residue_at(row: &[u64], k: u64) -> u64 {
    row.get(k as usize).copied().unwrap_or(0)
}

/// `C(n + 3*2^m, k)_F ≡ C(n, k)_F (mod 2)` at one instance.
pub fn check_period_mod2(m: u32, n: u64, k: u64) -> Result<bool> {
    let period = period_mod2_precondition(m, n, k)?;
    let shifted = fibonomial_row_mod(n + period, 2)?;
    let base = fibonomial_row_mod(n, 2)?;
    Ok(residue_at(&shifted.entries, k) == residue_at(&base.entries, k))
}

/// Every `(n, k)` with `n, k < 3*2^m` where the period-`3*2^m` identity fails.
pub fn period_mod2_failures(m: u32) -> Result<Vec<(u64, u64)>> {
    let period = period_mod2_precondition(m, 0, 0)?;
    let rows: Vec<Vec<u64>> = fibonomial_rows_mod(2)?.take(2 * period as usize).map(|r| r.entries).collect();
    let mut failures = Vec::new();
    for n in 0..period {
        for k in 0..period {
            if residue_at(&rows[(n + period) as usize], k) != residue_at(&rows[n as usize], k) {
                failures.push((n, k));
            }
        }
    }
    Ok(failures)
}

/// `F_{n+5} mod 5`, checked against `3 F_n mod 5`.
pub fn fib_shift_mod5(n: u64) -> Result<u64> {
    let shifted = fib_mod(n + 5, 5)?;
    let expected = 3 * fib_mod(n, 5)? % 5;
    if shifted != expected {
        return Err(Error::IdentityFailed(format!("F_{} = {shifted} but 3 F_{n} = {expected} (mod 5)", n + 5)));
    }
    Ok(shifted)
}

/// `(C(n+5, k)_F mod 5, 3^k C(n, k)_F mod 5)` for `k <= 4`.
pub fn row_shift_mod5(n: u64, k: u64) -> Result<(u64, u64)> {
    if k > 4 {
        return Err(Error::Precondition(format!("k = {k} > 4: k!_F is no longer invertible mod 5")));
    }
    if k > n {
        return Err(Error::Precondition(format!("k = {k} > n = {n}")));
    }
    let to_residue = |v: Natural| -> u64 { (v % 5u32).try_into().unwrap() };
    let lhs = to_residue(fibonomial(n + 5, k));
    let rhs = 3u64.pow(k as u32) * to_residue(fibonomial(n, k)) % 5;
    Ok((lhs, rhs))
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

/// `C(a, b) mod p` for digits `a, b < p`.
fn small_binomial_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..b.min(a - b) {
        num = num * (a - i) as u128 % p as u128;
        den = den * (i + 1) as u128 % p as u128;
    }
    (num * pow_mod(den as u64, p - 2, p) as u128 % p as u128) as u64
}

/// `C(n, k) mod p` as the product of the digit binomials `C(n_i, k_i)`.
pub fn lucas_binomial_residue(n: &Natural, k: &Natural, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let nd = expand_base_p(n, p)?;
    let kd = expand_base_p(k, p)?;
    let mut acc = 1 % p;
    for i in 0..nd.len().max(kd.len()) {
        acc = (acc as u128 * small_binomial_mod(nd.digit(i), kd.digit(i), p) as u128 % p as u128) as u64;
    }
    Ok(acc)
}

/// Primes `<= bound` whose entry point attains the maximum `p + 1`.
pub fn maximal_entry_point_primes(bound: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for p in primes_up_to(bound) {
        if entry_point(p)?.p_star == p + 1 {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fib::binomial;
    use crate::valuation::nu_p_int;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn profile(p: u64) -> PrimeProfile {
        entry_point(p).unwrap()
    }

    #[test]
    fn digit_product_examples() {
        let eleven = profile(11);
        assert!(digit_product_divisible(&nat(100), &nat(10), &eleven));
        for p in [2, 5, 7, 11, 13] {
            assert!(!digit_product_divisible(&nat(77), &nat(0), &profile(p)));
        }
        assert!(digit_product_divisible(&nat(100), &nat(10), &eleven));
    }

    #[test]
    fn sweep_table_matches_exact_digit_products() {
        for p in [2, 3, 5, 7, 13] {
            let prof = profile(p);
            let bound = prof.p_star.max(p).min(90);
            let sweeper = Sweeper {
                profile: &prof,
                method: SweepMethod::Oracle,
                stride: None,
                factors: DigitFactorTable::new(p, bound).unwrap(),
                oracle: None,
            };
            for n in 0..90 {
                for k in 0..=n {
                    assert_eq!(sweeper.rhs(n, k), digit_product_divisible(&nat(n), &nat(k), &prof), "p={p} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn sweep_small_primes() {
        let opts = SweepOptions { jobs: 2, ..Default::default() };
        for p in [3, 5, 7] {
            let record = verify_conjecture(&profile(p), 120, &opts).unwrap();
            assert!(record.holds(), "p={p}: {:?}", record.counterexamples);
            assert_eq!(record.method, SweepMethod::Carry);
            assert!(record.oracle_checks > 0);
        }
        let record = verify_conjecture(&profile(2), 48, &opts).unwrap();
        assert_eq!(record.method, SweepMethod::Oracle);
        assert!(record.holds());
    }

    #[test]
    fn sweep_refusals() {
        let opts = SweepOptions::default();
        assert_eq!(verify_conjecture(&profile(11), 10, &opts), Err(Error::HypothesisUnmet { p: 11, p_star: 10 }));
        let carry_two = SweepOptions { method: Some(SweepMethod::Carry), ..Default::default() };
        assert_eq!(verify_conjecture(&profile(2), 10, &carry_two), Err(Error::EvenPrime(2)));
        let zero_stride = SweepOptions { oracle_stride: Some(0), ..Default::default() };
        assert!(verify_conjecture(&profile(7), 10, &zero_stride).is_err());
    }

    #[test]
    fn carry_detects_a_corrupted_profile() {
        // A wrong nu_p(F_{p*}) makes the carry rule disagree with the oracle.
        let mut bad = profile(7);
        bad.nu_p_f_pstar = 2;
        let opts = SweepOptions { jobs: 1, oracle_stride: Some(1), ..Default::default() };
        assert!(matches!(verify_conjecture(&bad, 30, &opts), Err(Error::OracleMismatch { .. })));
    }

    #[test]
    fn sweep_reports_disagreements_when_forced() {
        // Primes with p* < p are refused by verify_conjecture, but the sweep
        // machinery itself must surface the witness if run on them.
        let mut eleven = profile(11);
        eleven.relation = Relation::Greater;
        let record = verify_conjecture(&eleven, 101, &SweepOptions { jobs: 3, ..Default::default() }).unwrap();
        assert!(!record.holds());
        assert!(record.counterexamples.iter().any(|v| (v.n, v.k) == (100, 10)));
        let keys: Vec<_> = record.counterexamples.iter().map(|v| (v.n, v.k)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn jsonl_layout() {
        let record = SweepRecord {
            p: 11,
            rows: 101,
            method: SweepMethod::Carry,
            counterexamples: vec![ConjectureVerdict::new(11, 100, 10, false, true)],
            oracle_checks: 0,
            seconds: 0.25,
        };
        let mut out = Vec::new();
        record.write_jsonl(&mut out, false).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "{\"p\":11,\"rows\":101,\"method\":\"carry\"}\n\
             {\"p\":11,\"n\":100,\"k\":10,\"lhs\":false,\"rhs\":true,\"agree\":false}\n\
             {\"counterexamples\":1,\"seconds\":null}\n"
        );
        let mut out = Vec::new();
        record.write_jsonl(&mut out, true).unwrap();
        assert!(String::from_utf8(out).unwrap().ends_with("{\"counterexamples\":1,\"seconds\":0.25}\n"));
    }

    #[test]
    fn counterexample_examples() {
        let (n, k, v) = find_counterexample(&profile(11)).unwrap();
        assert_eq!((n, k), (nat(100), nat(10)));
        assert!(!v.lhs_divisible && v.rhs_divisible && !v.agrees);
        assert_eq!(nu_p_int(&fibonomial(100, 10), 11).unwrap().exponent, 0);

        let (n, k, v) = find_counterexample(&profile(13)).unwrap();
        assert_eq!((n, k), (nat(49), nat(7)));
        assert!(!v.agrees);
        assert_eq!(nu_p_int(&fibonomial(49, 7), 13).unwrap().exponent, 0);

        let (n, k, v) = find_counterexample(&profile(17)).unwrap();
        assert_eq!((n, k), (nat(81), nat(9)));
        assert!(!v.agrees);
        assert_eq!(nu_p_int(&fibonomial(81, 9), 17).unwrap().exponent, 0);

        assert_eq!(find_counterexample(&profile(7)), Err(Error::NoGuaranteedCounterexample { p: 7, p_star: 8 }));
        assert!(find_counterexample(&profile(5)).is_err());
    }

    #[test]
    fn weightlift_examples() {
        assert!(weightlift_divisible_mod5(&nat(5), &nat(1)));
        assert!(!weightlift_divisible_mod5(&nat(9), &nat(4)));
        assert!(weightlift_divisible_mod5(&nat(7), &nat(3)));
        assert!(weightlift_divisible_mod5(&nat(3), &nat(4)));
    }

    #[test]
    fn weightlift_matches_oracle_and_digit_products() {
        let five = profile(5);
        let table = FactorValuations::new(5, 150).unwrap();
        for n in 0..=150u64 {
            for k in 0..=n {
                let divisible = weightlift_divisible_mod5(&nat(n), &nat(k));
                assert_eq!(divisible, table.fibonomial(n, k).unwrap() >= 1, "n={n} k={k}");
                assert_eq!(divisible, digit_product_divisible(&nat(n), &nat(k), &five));
            }
        }
    }

    #[test]
    fn self_similarity_examples() {
        assert!(check_self_similarity_mod5(1, 3, 1, 1, 1).unwrap());
        for m in 0..3 {
            for i in 0..=4 {
                for j in 0..=i {
                    assert!(check_self_similarity_mod5(m, 0, 0, i, j).unwrap());
                }
            }
        }
        assert!(check_self_similarity_mod5(1, 4, 3, 2, 1).unwrap());
        assert!(check_self_similarity_mod5(1, 5, 0, 1, 1).is_err());
        assert!(check_self_similarity_mod5(1, 0, 0, 1, 2).is_err());
        assert!(check_self_similarity_mod5(1, 0, 0, 5, 0).is_err());
        assert!(self_similarity_failures_mod5(2).unwrap().is_empty());
    }

    #[test]
    fn period_mod2_examples() {
        assert!(check_period_mod2(0, 2, 1).unwrap());
        assert!(check_period_mod2(1, 0, 0).unwrap());
        assert!(check_period_mod2(2, 7, 3).unwrap());
        assert!(check_period_mod2(0, 3, 0).is_err());
        assert!(check_period_mod2(1, 0, 6).is_err());
        for m in 0..=3 {
            assert!(period_mod2_failures(m).unwrap().is_empty(), "m={m}");
        }
        // The batch and single-instance paths agree.
        for n in 0..12 {
            for k in 0..12 {
                assert!(check_period_mod2(2, n, k).unwrap());
            }
        }
    }

    #[test]
    fn fib_shift_examples() {
        assert_eq!(fib_shift_mod5(1).unwrap(), 3);
        assert_eq!(fib_shift_mod5(5).unwrap(), 0);
        assert_eq!(fib_shift_mod5(7).unwrap(), 4);
        assert_eq!(fib_shift_mod5(0), Err(Error::ZeroIndex));
    }

    #[test]
    fn row_shift_examples() {
        assert_eq!(row_shift_mod5(4, 1).unwrap(), (4, 4));
        for n in 0..10 {
            assert_eq!(row_shift_mod5(n, 0).unwrap(), (1, 1));
        }
        assert_eq!(row_shift_mod5(5, 2).unwrap(), (0, 0));
        assert_eq!(fibonomial(10, 2) % 5u32, nat(0));
        assert!(row_shift_mod5(10, 5).is_err());
        assert!(row_shift_mod5(2, 3).is_err());
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_binomial_residue(&nat(109), &nat(7), 7).unwrap(), 1);
        assert_eq!(binomial(109, 7) % 7u32, nat(1));
        assert_eq!(lucas_binomial_residue(&nat(88), &nat(0), 5).unwrap(), 1);
        assert_eq!(lucas_binomial_residue(&nat(4), &nat(2), 2).unwrap(), 0);
        assert_eq!(lucas_binomial_residue(&nat(4), &nat(2), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn lucas_matches_binomial() {
        for p in [2u64, 3, 5, 7] {
            for n in 0..=300u64 {
                for k in 0..=n + 2 {
                    let expected: u64 = (binomial(n, k) % p).try_into().unwrap();
                    assert_eq!(lucas_binomial_residue(&nat(n), &nat(k), p).unwrap(), expected, "p={p} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn maximal_primes() {
        assert_eq!(maximal_entry_point_primes(110).unwrap(), vec![2, 3, 7, 23, 43, 67, 83, 103]);
    }
}
