//! Fibonomial coefficients and their divisibility by primes.
//!
//! The crate is organised bottom-up:
//!
//! * [`fib`] holds exact and modular Fibonacci arithmetic, fibotorials and
//!   fibonomial coefficients. It is the big-integer ground truth.
//! * [`radix`] expands integers in base `p` and in the entry-point base
//!   `(1, p*, p*p, p*p^2, ...)`, and simulates the carry-counting addition.
//! * [`valuation`] computes entry points and p-adic valuations, both by the
//!   carry rule and by exact oracles.
//! * [`conjecture`] checks the digit-product divisibility conjecture over row
//!   ranges, builds counterexamples for primes with `p* < p`, and exposes the
//!   mod 2 / mod 5 identities as checkable properties.
//! * [`render`] draws coefficient triangles as text, PGM, SVG or JSON.

pub mod conjecture;
mod error;
pub mod fib;
pub mod radix;
pub mod render;
pub mod valuation;

pub use error::{Error, Result};
pub use num_bigint::BigUint as Natural;

/// Default largest row index for which exact big-integer paths are offered.
pub const EXACT_CAP: u64 = 1000;

/// Largest prime accepted by [`valuation::entry_point`].
pub const PRIME_CAP: u64 = 1_000_000;

/// Most triangle cells [`fib::fibonomial_mod`] will fill for one query.
pub const RESIDUE_WORK_CAP: u64 = 1_000_000_000;
