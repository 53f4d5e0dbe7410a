//! Little-endian digit expansions in base `p` and in the entry-point base
//! `(1, p*, p*p, p*p^2, ...)`, plus the carry-counting addition behind the
//! fibonomial valuation rule.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::valuation::PrimeProfile;
use crate::{Error, Natural, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    /// Place values `1, p, p^2, ...`.
    Uniform { p: u64 },
    /// Place values `1, p*, p*p, p*p^2, ...`; the units digit is below `p*`.
    Fibonacci { p: u64, p_star: u64 },
}

impl Base {
    pub fn p(&self) -> u64 {
        match *self {
            Base::Uniform { p } | Base::Fibonacci { p, .. } => p,
        }
    }

    /// Exclusive upper bound for the digit at `position`.
    pub fn digit_limit(&self, position: usize) -> u64 {
        match *self {
            Base::Fibonacci { p_star, .. } if position == 0 => p_star,
            _ => self.p(),
        }
    }
}

/// Digits with `digits[0]` the units digit. Zero is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DigitVectorRepr", try_from = "DigitVectorRepr")]
pub struct DigitVector {
    pub base: Base,
    pub digits: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct DigitVectorRepr {
    base: String,
    p: u64,
    pstar: Option<u64>,
    digits: Vec<u64>,
}

impl From<DigitVector> for DigitVectorRepr {
    fn from(d: DigitVector) -> Self {
        let (base, pstar) = match d.base {
            Base::Uniform { .. } => ("p", None),
            Base::Fibonacci { p_star, .. } => ("Fp", Some(p_star)),
        };
        DigitVectorRepr { base: base.to_owned(), p: d.base.p(), pstar, digits: d.digits }
    }
}

impl TryFrom<DigitVectorRepr> for DigitVector {
    type Error = String;

    fn try_from(r: DigitVectorRepr) -> std::result::Result<Self, String> {
        let base = match (r.base.as_str(), r.pstar) {
            ("p", None) => Base::Uniform { p: r.p },
            ("Fp", Some(p_star)) => Base::Fibonacci { p: r.p, p_star },
            (b, s) => return Err(format!("unsupported base {b:?} with pstar {s:?}")),
        };
        let d = DigitVector { base, digits: r.digits };
        d.check_digits().map_err(|e| e.to_string())?;
        Ok(d)
    }
}

impl DigitVector {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at `i`, zero past the end.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn is_canonical(&self) -> bool {
        self.digits.last() != Some(&0) && self.check_digits().is_ok()
    }

    fn check_digits(&self) -> Result<()> {
        for (position, &digit) in self.digits.iter().enumerate() {
            let limit = self.base.digit_limit(position);
            if digit >= limit {
                return Err(Error::DigitOutOfRange { position, digit, limit });
            }
        }
        Ok(())
    }
}

/// Base-`base` digits of `n`, little-endian, no trailing zeros.
pub(crate) fn digits_le(n: &Natural, base: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if let Some(mut v) = n.to_u64() {
        while v > 0 {
            out.push(v % base);
            v /= base;
        }
        return out;
    }
    let divisor = BigUint::from(base);
    let mut v = n.clone();
    while !v.is_zero() {
        let (q, r) = v.div_rem(&divisor);
        out.push(r.to_u64().unwrap());
        v = q;
    }
    out
}

/// `(n / d, n mod d)` with a machine-word divisor.
fn split(n: &Natural, d: u64) -> (Natural, u64) {
    let (q, r) = n.div_rem(&BigUint::from(d));
    (q, r.to_u64().unwrap())
}

/// Base-`p` digits of a quotient, produced lazily; no allocation when the
/// value fits in a word.
enum DigitStream {
    Word(u64),
    Big(std::vec::IntoIter<u64>),
}

impl DigitStream {
    fn next_digit(&mut self, p: u64) -> Option<u64> {
        match self {
            DigitStream::Word(0) => None,
            DigitStream::Word(v) => {
                let d = *v % p;
                *v /= p;
                Some(d)
            }
            DigitStream::Big(it) => it.next(),
        }
    }
}

/// `(n / p*, n mod p*)` with the quotient as a digit stream.
fn split_stream(n: &Natural, p_star: u64, p: u64) -> (DigitStream, u64) {
    match n.to_u64() {
        Some(v) => (DigitStream::Word(v / p_star), v % p_star),
        None => {
            let (q, r) = split(n, p_star);
            (DigitStream::Big(digits_le(&q, p).into_iter()), r)
        }
    }
}

pub fn expand_base_p(n: &Natural, p: u64) -> Result<DigitVector> {
    if p < 2 {
        return Err(Error::Base(p));
    }
    Ok(DigitVector { base: Base::Uniform { p }, digits: digits_le(n, p) })
}

/// Units digit `n mod p*`, then the base-`p` digits of `n / p*`.
pub fn expand_base_fp(n: &Natural, profile: &PrimeProfile) -> DigitVector {
    let (p, p_star) = (profile.p, profile.p_star);
    let base = Base::Fibonacci { p, p_star };
    if n.is_zero() {
        return DigitVector { base, digits: Vec::new() };
    }
    let (q, r) = split(n, p_star);
    let mut digits = vec![r];
    digits.extend(digits_le(&q, p));
    DigitVector { base, digits }
}

pub fn evaluate(d: &DigitVector) -> Result<Natural> {
    d.check_digits()?;
    let mut value = BigUint::zero();
    let mut place = BigUint::from(1u32);
    for (position, &digit) in d.digits.iter().enumerate() {
        value += &place * digit;
        place *= match d.base {
            Base::Fibonacci { p_star, .. } if position == 0 => p_star,
            base => base.p(),
        };
    }
    Ok(value)
}

/// One column of the carry simulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnSum {
    /// 0 is the column straddling the radix point (base `p*`), 1.. are the
    /// base-`p` columns of the integer parts.
    pub position: usize,
    pub base: u64,
    pub left: u64,
    pub right: u64,
    pub carry_in: u64,
    pub sum: u64,
}

impl ColumnSum {
    pub fn carries(&self) -> bool {
        self.sum >= self.base
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarryReport {
    /// Carries strictly left of the radix point.
    pub carries_left: u64,
    /// Whether the fractional parts `r_a/p* + r_b/p*` reach 1.
    pub carry_across: bool,
    pub digit_sums: Vec<ColumnSum>,
}

/// Columns of the addition of `a/p*` and `b/p*` in base `p`: first the
/// column straddling the radix point, then one per integer-part digit.
pub(crate) fn carry_columns(a: &Natural, b: &Natural, profile: &PrimeProfile) -> impl Iterator<Item = ColumnSum> {
    let (p, p_star) = (profile.p, profile.p_star);
    let (mut qa, ra) = split_stream(a, p_star, p);
    let (mut qb, rb) = split_stream(b, p_star, p);
    let mut position = 0;
    let mut carry = 0;
    std::iter::from_fn(move || {
        let column = if position == 0 {
            ColumnSum { position, base: p_star, left: ra, right: rb, carry_in: 0, sum: ra + rb }
        } else {
            let (left, right) = match (qa.next_digit(p), qb.next_digit(p)) {
                (None, None) => return None,
                (l, r) => (l.unwrap_or(0), r.unwrap_or(0)),
            };
            ColumnSum { position, base: p, left, right, carry_in: carry, sum: left + right + carry }
        };
        carry = u64::from(column.carries());
        position += 1;
        Some(column)
    })
}

/// Adds `a/p*` and `b/p*` in base `p`, counting carries.
///
/// Writing `a = q_a p* + r_a`, the fractional part `r_a/p*` is a repeating
/// base-`p` fraction; the sum of the two fractions crosses the radix point
/// exactly when `r_a + r_b >= p*`, and that is the only way anything right of
/// the point influences the integer columns. The integer parts `q_a + q_b`
/// are then added in base `p` with that carry fed into the units column.
pub fn add_with_carries(a: &Natural, b: &Natural, profile: &PrimeProfile) -> CarryReport {
    let digit_sums: Vec<ColumnSum> = carry_columns(a, b, profile).collect();
    let carry_across = digit_sums[0].carries();
    let carries_left = digit_sums[1..].iter().filter(|c| c.carries()).count() as u64;
    CarryReport { carries_left, carry_across, digit_sums }
}
