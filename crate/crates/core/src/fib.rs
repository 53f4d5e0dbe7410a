//! Exact and modular Fibonacci arithmetic.
//!
//! Indices follow `F_1 = F_2 = 1`. There is no public `F_0`; the row
//! recurrence uses a private residue table whose slot 0 holds zero so that
//! the `F_{n-k-1}` weight vanishes at `k = n - 1`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::{Error, Natural, Result, RESIDUE_WORK_CAP};

/// One row of a coefficient triangle, `entries[k]` for `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleRow<T> {
    pub n: u64,
    pub entries: Vec<T>,
    /// `None` for exact rows.
    pub modulus: Option<u64>,
}

impl<T: PartialEq> TriangleRow<T> {
    pub fn is_palindrome(&self) -> bool {
        self.entries.iter().eq(self.entries.iter().rev())
    }
}

/// `(F_n, F_{n+1})` by fast doubling, with the internal convention `F_0 = 0`.
fn fib_pair(n: u64) -> (BigUint, BigUint) {
    if n == 0 {
        return (BigUint::zero(), BigUint::one());
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * ((&b << 1usize) - &a);
    let d = &a * &a + &b * &b;
    if n.is_multiple_of(2) {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

fn fib_pair_mod(n: u64, m: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1 % m);
    }
    let (a, b) = fib_pair_mod(n / 2, m);
    let (a, b, m) = (a as u128, b as u128, m as u128);
    let c = a * ((2 * b + m - a) % m) % m;
    let d = (a * a % m + b * b % m) % m;
    if n.is_multiple_of(2) {
        (c as u64, d as u64)
    } else {
        (d as u64, ((c + d) % m) as u64)
    }
}

/// The Fibonacci number `F_n`, `n >= 1`.
pub fn fib(n: u64) -> Result<Natural> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    Ok(fib_pair(n).0)
}

/// `F_n mod m` without building big integers.
pub fn fib_mod(n: u64, m: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    if m < 2 {
        return Err(Error::Modulus(m));
    }
    Ok(fib_pair_mod(n, m).0)
}

/// Consecutive Fibonacci numbers `F_start, F_{start+1}, ...` (`start >= 1`).
pub(crate) fn fib_run(start: u64) -> impl Iterator<Item = Natural> {
    debug_assert!(start >= 1);
    let (mut a, mut b) = fib_pair(start);
    std::iter::from_fn(move || {
        let next = &a + &b;
        let out = std::mem::replace(&mut a, std::mem::replace(&mut b, next));
        Some(out)
    })
}

fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

/// `F_0, F_1, ..., F_{len-1}` reduced mod `m`.
fn fib_residues(len: usize, m: u64) -> Vec<u64> {
    let mut table = Vec::with_capacity(len.max(2));
    table.push(0);
    table.push(1 % m);
    while table.len() < len {
        let i = table.len();
        table.push(add_mod(table[i - 1], table[i - 2], m));
    }
    table.truncate(len);
    table
}

/// The fibotorial `n!_F = F_n F_{n-1} ... F_1`, with `0!_F = 1`.
pub fn fibotorial(n: u64) -> Natural {
    if n == 0 {
        return BigUint::one();
    }
    fib_run(1).take(n as usize).product()
}

/// The fibonomial coefficient `n!_F / (k!_F (n-k)!_F)`, zero when `k > n`.
///
/// Panics if the division leaves a remainder, which can only mean an
/// arithmetic bug.
pub fn fibonomial(n: u64, k: u64) -> Natural {
    if k > n {
        return BigUint::zero();
    }
    let denominator = fibotorial(k) * fibotorial(n - k);
    exact_quotient(fibotorial(n), &denominator, n, k)
}

fn exact_quotient(numerator: Natural, denominator: &Natural, n: u64, k: u64) -> Natural {
    let (q, r) = numerator.div_rem(denominator);
    assert!(r.is_zero(), "fibonomial({n}, {k}) left a nonzero remainder");
    q
}

/// The ordinary binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Natural {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Fibotorials `0!_F ..= max!_F`, for evaluating many fibonomials with one
/// multiplication and one exact division each.
#[derive(Debug, Clone)]
pub struct Fibotorials {
    table: Vec<Natural>,
}

impl Fibotorials {
    pub fn up_to(max: u64) -> Self {
        let mut table = Vec::with_capacity(max as usize + 1);
        table.push(BigUint::one());
        for f in fib_run(1).take(max as usize) {
            let next = table.last().unwrap() * f;
            table.push(next);
        }
        Fibotorials { table }
    }

    pub fn max(&self) -> u64 {
        self.table.len() as u64 - 1
    }

    pub fn fibotorial(&self, n: u64) -> &Natural {
        &self.table[n as usize]
    }

    /// Same contract as [`fibonomial`]; panics when `n` exceeds the table.
    pub fn fibonomial(&self, n: u64, k: u64) -> Natural {
        if k > n {
            return BigUint::zero();
        }
        let denominator = self.fibotorial(k) * self.fibotorial(n - k);
        exact_quotient(self.fibotorial(n).clone(), &denominator, n, k)
    }
}

/// Row `n` of the fibonomial triangle reduced mod `m`, computed with
/// `C(n,k) = F_{k+1} C(n-1,k) + F_{n-k-1} C(n-1,k-1)` on residues only.
pub fn fibonomial_row_mod(n: u64, m: u64) -> Result<TriangleRow<u64>> {
    if m < 2 {
        return Err(Error::Modulus(m));
    }
    let fibs = fib_residues(n as usize + 2, m);
    let mut row = vec![0u64; n as usize + 1];
    row[0] = 1;
    for r in 1..=n as usize {
        advance_fibonomial_row(&mut row[..=r], &fibs, m);
    }
    Ok(TriangleRow { n, entries: row, modulus: Some(m) })
}

/// Turns row `r - 1` (held in `row[..r]`) into row `r` in place, where
/// `r = row.len() - 1`. `fibs[i]` must hold `F_i mod m` for `i <= r`.
fn advance_fibonomial_row(row: &mut [u64], fibs: &[u64], m: u64) {
    let r = row.len() - 1;
    row[r] = 1 % m;
    for k in (1..r).rev() {
        let keep = fibs[k + 1] as u128 * row[k] as u128;
        let shift = fibs[r - k - 1] as u128 * row[k - 1] as u128;
        row[k] = ((keep + shift) % m as u128) as u64;
    }
}

/// `C(n, k)_F mod m`, filling only columns `0..=min(k, n - k)` of rows
/// `0..=n`, so large `n` with small `k` stays cheap.
pub fn fibonomial_mod(n: u64, k: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::Modulus(m));
    }
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    if n.saturating_mul(k + 1) > RESIDUE_WORK_CAP {
        return Err(Error::Precondition(format!(
            "C({n}, {k})_F mod {m} needs more than {RESIDUE_WORK_CAP} cells"
        )));
    }
    let fibs = fib_residues(n as usize + 2, m);
    let width = k as usize + 1;
    let mut row = vec![0u64; width];
    row[0] = 1 % m;
    for r in 1..=n as usize {
        if r < width {
            advance_fibonomial_row(&mut row[..=r], &fibs, m);
            continue;
        }
        for j in (1..width).rev() {
            let keep = fibs[j + 1] as u128 * row[j] as u128;
            let shift = fibs[r - j - 1] as u128 * row[j - 1] as u128;
            row[j] = ((keep + shift) % m as u128) as u64;
        }
    }
    Ok(row[k as usize])
}

/// Successive fibonomial rows `0, 1, 2, ...` reduced mod `m`, using one
/// rolling row and a growing table of Fibonacci residues.
pub fn fibonomial_rows_mod(m: u64) -> Result<impl Iterator<Item = TriangleRow<u64>>> {
    if m < 2 {
        return Err(Error::Modulus(m));
    }
    let mut fibs = vec![0, 1 % m];
    let mut row: Vec<u64> = Vec::new();
    Ok((0u64..).map(move |n| {
        while fibs.len() < n as usize + 2 {
            let i = fibs.len();
            fibs.push(add_mod(fibs[i - 1], fibs[i - 2], m));
        }
        row.push(0);
        if n == 0 {
            row[0] = 1 % m;
        } else {
            advance_fibonomial_row(&mut row, &fibs, m);
        }
        TriangleRow { n, entries: row.clone(), modulus: Some(m) }
    }))
}

/// Successive exact fibonomial rows, by the same weighted recurrence.
pub fn fibonomial_rows() -> impl Iterator<Item = TriangleRow<Natural>> {
    let mut fibs: Vec<Natural> = vec![BigUint::zero(), BigUint::one()];
    let mut row: Vec<Natural> = Vec::new();
    (0u64..).map(move |n| {
        while fibs.len() < n as usize + 2 {
            let i = fibs.len();
            let next = &fibs[i - 1] + &fibs[i - 2];
            fibs.push(next);
        }
        let r = n as usize;
        row.push(BigUint::one());
        for k in (1..r).rev() {
            row[k] = &fibs[k + 1] * &row[k] + &fibs[r - k - 1] * &row[k - 1];
        }
        TriangleRow { n, entries: row.clone(), modulus: None }
    })
}

/// Successive rows of Pascal's triangle reduced mod `m`.
pub fn binomial_rows_mod(m: u64) -> Result<impl Iterator<Item = TriangleRow<u64>>> {
    if m < 2 {
        return Err(Error::Modulus(m));
    }
    let mut row: Vec<u64> = Vec::new();
    Ok((0u64..).map(move |n| {
        row.push(1 % m);
        for k in (1..row.len() - 1).rev() {
            row[k] = add_mod(row[k], row[k - 1], m);
        }
        TriangleRow { n, entries: row.clone(), modulus: Some(m) }
    }))
}

/// Successive exact rows of Pascal's triangle.
pub fn binomial_rows() -> impl Iterator<Item = TriangleRow<Natural>> {
    let mut row: Vec<Natural> = Vec::new();
    (0u64..).map(move |n| {
        row.push(BigUint::one());
        for k in (1..row.len() - 1).rev() {
            let left = row[k - 1].clone();
            row[k] += left;
        }
        TriangleRow { n, entries: row.clone(), modulus: None }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn column_limited_residues_match_full_rows() {
        for m in [2u64, 5, 7, 1_000_000_007] {
            for n in 0..=60 {
                let row = fibonomial_row_mod(n, m).unwrap();
                for k in 0..=n {
                    assert_eq!(fibonomial_mod(n, k, m).unwrap(), row.entries[k as usize], "m={m} n={n} k={k}");
                }
            }
        }
        assert_eq!(fibonomial_mod(3, 4, 5).unwrap(), 0);
        let exact = fibonomial(900, 7) % 1_000_003u64;
        assert_eq!(Natural::from(fibonomial_mod(900, 7, 1_000_003).unwrap()), exact);
        assert!(fibonomial_mod(u64::MAX / 2, 3, 5).is_err());
    }

    #[test]
    fn small_fibonacci_values() {
        let expected = [1u64, 1, 2, 3, 5, 8, 13, 21, 34, 55];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(fib(i as u64 + 1).unwrap(), nat(e));
        }
        assert_eq!(fib(0), Err(Error::ZeroIndex));
    }

    #[test]
    fn fib_mod_examples_and_errors() {
        assert_eq!(fib_mod(10, 11).unwrap(), 0);
        assert_eq!(fib_mod(1, 7).unwrap(), 1);
        assert_eq!(fib_mod(8, 7).unwrap(), 0);
        assert_eq!(fib_mod(5, 1), Err(Error::Modulus(1)));
        assert_eq!(fib_mod(0, 7), Err(Error::ZeroIndex));
    }

    #[test]
    fn fib_mod_matches_exact() {
        for m in [2u64, 3, 10, 97, 1_000_000_007, u64::MAX] {
            for n in 1..=300 {
                let exact = fib(n).unwrap() % m;
                assert_eq!(nat(fib_mod(n, m).unwrap()), exact, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn fib_run_is_consecutive() {
        let run: Vec<_> = fib_run(7).take(4).collect();
        assert_eq!(run, vec![nat(13), nat(21), nat(34), nat(55)]);
    }

    #[test]
    fn fibotorial_examples() {
        assert_eq!(fibotorial(6), nat(240));
        assert_eq!(fibotorial(0), nat(1));
        assert_eq!(fibotorial(2), nat(1));
    }

    #[test]
    fn fibonomial_examples() {
        assert_eq!(fibonomial(5, 2), nat(15));
        assert_eq!(fibonomial(6, 3), nat(60));
        assert_eq!(fibonomial(10, 1), nat(55));
        assert_eq!(fibonomial(3, 4), nat(0));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), nat(6));
        assert_eq!(binomial(7, 3), nat(35));
        assert_eq!(binomial(3, 5), nat(0));
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn row_mod_examples() {
        let row = fibonomial_row_mod(7, 1_000_000_000).unwrap();
        assert_eq!(row.entries, vec![1, 13, 104, 260, 260, 104, 13, 1]);
        let row = fibonomial_row_mod(9, 5).unwrap();
        assert_eq!(row.entries, vec![1, 4, 4, 1, 1, 1, 1, 4, 4, 1]);
        let row = fibonomial_row_mod(0, 2).unwrap();
        assert_eq!(row.entries, vec![1]);
        assert_eq!(fibonomial_row_mod(3, 1), Err(Error::Modulus(1)));
    }

    #[test]
    fn fibotorial_table_agrees_with_direct() {
        let table = Fibotorials::up_to(40);
        assert_eq!(table.max(), 40);
        for n in 0..=40 {
            assert_eq!(table.fibotorial(n), &fibotorial(n));
            for k in 0..=n + 1 {
                assert_eq!(table.fibonomial(n, k), fibonomial(n, k));
            }
        }
    }

    #[test]
    fn symmetry_up_to_60() {
        let table = Fibotorials::up_to(60);
        for n in 0..=60 {
            for k in 0..=n {
                assert_eq!(table.fibonomial(n, k), table.fibonomial(n, n - k));
            }
        }
    }

    #[test]
    fn recurrence_matches_definition() {
        // F_0 = 0 here is local to the check, matching the vanishing terms.
        // The k = n edge is 1 by definition.
        let f = |i: u64| if i == 0 { nat(0) } else { fib(i).unwrap() };
        for n in 1..=40u64 {
            assert_eq!(fibonomial(n, n), nat(1));
            for k in 0..n {
                let keep = f(k + 1) * fibonomial(n - 1, k);
                let shift = if k == 0 { nat(0) } else { f(n - k - 1) * fibonomial(n - 1, k - 1) };
                assert_eq!(fibonomial(n, k), keep + shift, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn division_is_exact_up_to_200() {
        let table = Fibotorials::up_to(200);
        for n in 0..=200 {
            for k in 0..=n {
                let d = table.fibotorial(k) * table.fibotorial(n - k);
                assert!(table.fibotorial(n).is_multiple_of(&d), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn row_mod_matches_exact() {
        for m in [2u64, 3, 5, 7, 11, u64::MAX - 58] {
            for n in 0..=40 {
                let row = fibonomial_row_mod(n, m).unwrap();
                assert_eq!(row.entries.len() as u64, n + 1);
                assert!(row.is_palindrome());
                for (k, &r) in row.entries.iter().enumerate() {
                    assert_eq!(nat(r), fibonomial(n, k as u64) % m, "n={n} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn row_iterators_agree_with_single_rows() {
        let rows: Vec<_> = fibonomial_rows_mod(7).unwrap().take(30).collect();
        for row in &rows {
            assert_eq!(row, &fibonomial_row_mod(row.n, 7).unwrap());
        }
        for row in fibonomial_rows().take(30) {
            let expected: Vec<_> = (0..=row.n).map(|k| fibonomial(row.n, k)).collect();
            assert_eq!(row.entries, expected);
        }
        for row in binomial_rows().take(30) {
            let expected: Vec<_> = (0..=row.n).map(|k| binomial(row.n, k)).collect();
            assert_eq!(row.entries, expected);
        }
        for row in binomial_rows_mod(3).unwrap().take(30) {
            let expected: Vec<_> = (0..=row.n).map(|k| binomial(row.n, k) % 3u64).collect();
            let got: Vec<_> = row.entries.iter().map(|&r| nat(r)).collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn gcd_identity() {
        let fibs: Vec<Natural> = fib_run(1).take(200).collect();
        for a in 1..=200u64 {
            for b in 1..=200u64 {
                let lhs = fibs[a as usize - 1].gcd(&fibs[b as usize - 1]);
                assert_eq!(lhs, fibs[a.gcd(&b) as usize - 1], "a={a} b={b}");
            }
        }
    }
}
