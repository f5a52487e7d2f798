//! Standard bases over `Z/m`.
//!
//! Coefficients are residues in `0..m`. Divisibility in `Z/m` is read off the
//! capped valuations `ν_i(a) = min(v_{p_i}(a), e_i)` for `m = ∏ p_i^e_i`:
//! `a | b` iff `ν(a) ≤ ν(b)` componentwise. Lead coefficients are not
//! normalized, so bases are unique only up to unit multiples.

mod modulus;
mod poly;
mod std;

pub use self::std::{
    chain_criterion_ring, is_strong_basis, nf_ring, product_criterion_ring, std_basis, std_basis_with_stats,
    verify_standard_rep, zero_criterion, RingCriteria, StdStats,
};
pub use modulus::{Modulus, Valuation};
pub use poly::{RingOrdering, ZmPoly, ZmRing, ZmTerm};
