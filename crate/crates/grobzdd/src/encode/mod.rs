//! Verification problems as polynomial systems.
//!
//! A [`Circuit`] is a word-level description: signals of a fixed bit width,
//! assignments `z = x + y`, `z = x * y` or `z = c`, asserted equations, and an
//! optional disequality pair `f ≠ e`. [`word_level_encode`] turns it into
//! polynomials over `Z/2^n`, where the disequality becomes
//! `s·(f − e) − 2^(n−1)` for a fresh variable `s`. [`blast`] rewrites each
//! word equation as `n` Boolean equations on the bits of the signals and
//! replaces the disequality by `∏ (1 + f_i + e_i)`.
//!
//! Boolean systems vanish exactly on the satisfying assignments: a clause
//! `x_1 ∨ ¬x_2` becomes `(x_1 + 1)·x_2`.
//!
//! ```
//! use grobzdd::encode::{blast, word_level_encode, CarryMode, Circuit};
//!
//! let c = Circuit::parse("wordlen 2\nsignal a b p\nassign p = a * b\n").unwrap();
//! let ws = word_level_encode(&c).unwrap();
//! assert_eq!(ws.polys()[0].to_string(), "a*b + 3*p");
//! let bits = blast(&ws, CarryMode::Expanded).unwrap();
//! let shown: Vec<String> = bits.polys().iter().map(|p| p.to_string()).collect();
//! assert_eq!(shown, ["p_0 + a_0*b_0", "p_1 + a_1*b_0 + a_0*b_1"]);
//! ```

mod bits;
mod circuit;
mod cnf;
mod mult;
mod word;

pub use bits::{add_carries, bit_add, bit_add_aux, bit_mul, bit_mul_aux, blast, mul_carries, BitSystem, CarryMode};
pub use circuit::{AssignOp, Assignment, Circuit};
pub use cnf::{cnf_to_polys, pigeonhole, pigeonhole_cnf, Cnf};
pub use mult::{mult_verification, mult_verification_tampered};
pub use word::{word_level_encode, WordSystem};

#[cfg(test)]
mod tests;
