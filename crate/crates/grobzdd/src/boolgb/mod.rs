//! Boolean Gröbner bases.
//!
//! [`buchberger`] computes the reduced basis of the ideal generated by the
//! input together with the field equations `x² + x`. Only the Boolean part is
//! returned. Pairs are selected by sugar degree, then by lcm under the ring
//! ordering, then by creation order.
//!
//! Principal ideals are handled by [`bgb_single`]: linear factors are pulled
//! out, the remaining core is shifted onto the lowest variables, and its basis
//! is cached per manager.

mod engine;
mod nf;
mod sat;
mod symmetry;

use std::path::PathBuf;

use crate::boolpoly::{BoolMonomial, BoolPoly, Ordering};
use crate::error::{Error, Result};
use crate::zdd::{NodeId, VarIndex, ZddManager};

pub use sat::SatResult;
pub use symmetry::LinearFactor;

use engine::Engine;
use nf::ReducerSet;

/// Knobs for [`buchberger`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub product_criterion: bool,
    pub chain_criterion: bool,
    /// Drops field pairs `(f, x)` when `f` has a factor `x` or `x + 1`.
    pub linear_lead_criterion: bool,
    /// Select pairs by sugar degree; otherwise by the degree of the lcm.
    pub sugar: bool,
    /// Replace new generators by the basis of their principal ideal.
    pub symmetry: bool,
    /// Reuse principal-ideal bases across calls on the same manager.
    pub sym_cache: bool,
    /// Largest core (in variables) sent through [`bgb_single`] by the engine.
    pub sym_max_vars: u32,
    /// Prefer reducers with small `Σ (1 + deg t)` over older ones.
    pub weighted_length: bool,
    /// File of precomputed bases of cores in at most four variables.
    /// Generated on first use when missing.
    pub table: Option<PathBuf>,
    /// Node budget for folding the input of [`sat_check`] into its single
    /// ideal generator `1 + Π (1 + f)` before the run; 0 disables it.
    pub conjoin_limit: usize,
}

impl Default for Strategy {
    fn default() -> Strategy {
        Strategy {
            product_criterion: true,
            chain_criterion: true,
            linear_lead_criterion: true,
            sugar: true,
            symmetry: true,
            sym_cache: true,
            sym_max_vars: 8,
            weighted_length: false,
            table: None,
            conjoin_limit: 1 << 20,
        }
    }
}

impl Strategy {
    /// Plain Buchberger: every criterion, symmetry, caching and the
    /// [`sat_check`] preprocessing switched off.
    pub fn plain() -> Strategy {
        Strategy {
            conjoin_limit: 0,
            product_criterion: false,
            chain_criterion: false,
            linear_lead_criterion: false,
            symmetry: false,
            sym_cache: false,
            ..Strategy::default()
        }
    }
}

/// Counters from one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs: u64,
    pub field_pairs: u64,
    pub zero_reductions: u64,
    pub product: u64,
    pub chain: u64,
    pub linear_lead: u64,
    pub sym_hits: u64,
    pub sym_misses: u64,
}

fn node_ids(gens: &[BoolPoly]) -> Result<Vec<NodeId>> {
    let ring = gens[0].ring();
    gens.iter().map(|g| if g.ring().compatible(ring) { Ok(g.id()) } else { Err(Error::RingMismatch) }).collect()
}

pub(crate) fn buchberger_nodes(
    mgr: &mut ZddManager,
    gens: &[NodeId],
    ord: &Ordering,
    strat: &Strategy,
) -> Result<(Vec<NodeId>, GbStats)> {
    if let Some(path) = &strat.table {
        let slot = mgr.ordering_slot(ord);
        if mgr.tables_loaded.insert(slot) {
            symmetry::load_or_generate_table(mgr, ord, path)?;
        }
    }
    Ok(Engine::new(mgr, ord.clone(), strat.clone()).run(gens))
}

/// Reduced Boolean Gröbner basis of `gens` under the ring ordering, sorted by
/// leading monomial, largest first.
///
/// # Panics
///
/// If the inputs come from different managers; see [`buchberger_with_stats`].
pub fn buchberger(gens: &[BoolPoly], strat: &Strategy) -> Vec<BoolPoly> {
    buchberger_with_stats(gens, strat).expect("buchberger").0
}

pub fn buchberger_with_stats(gens: &[BoolPoly], strat: &Strategy) -> Result<(Vec<BoolPoly>, GbStats)> {
    let Some(first) = gens.first() else {
        return Ok((Vec::new(), GbStats::default()));
    };
    let ring = first.ring();
    let ids = node_ids(gens)?;
    let (basis, stats) = buchberger_nodes(&mut ring.manager().borrow_mut(), &ids, ring.ordering(), strat)?;
    Ok((basis.into_iter().map(|g| ring.poly(g)).collect(), stats))
}

fn reducer_set(mgr: &mut ZddManager, gens: &[NodeId], ord: &Ordering) -> ReducerSet {
    let mut rs = ReducerSet::new();
    for (i, &g) in gens.iter().enumerate() {
        if g == NodeId::ZERO {
            continue;
        }
        let lead = mgr.lead(g, ord);
        if !rs.by_lead.contains_key(&lead) {
            rs.insert(mgr, g, lead, i);
        }
    }
    rs
}

/// Fully reduced normal form of `f` against `gens`: no term of the result is
/// divisible by a leading monomial of `gens`. Generators sharing a leading
/// monomial with an earlier one are ignored.
pub fn greedy_nf(f: &BoolPoly, gens: &[BoolPoly]) -> Result<BoolPoly> {
    let ring = f.ring();
    if gens.iter().any(|g| !g.ring().compatible(ring)) {
        return Err(Error::RingMismatch);
    }
    let ids: Vec<NodeId> = gens.iter().map(|g| g.id()).collect();
    let mut mgr = ring.manager().borrow_mut();
    let rs = reducer_set(&mut mgr, &ids, ring.ordering());
    let r = rs.nf_full(&mut mgr, f.id(), ring.ordering(), false);
    drop(mgr);
    Ok(ring.poly(r))
}

/// Indices of the generators whose leading monomial divides `m`, ascending.
pub fn search_reductor(gens: &[BoolPoly], m: &BoolMonomial) -> Result<Vec<usize>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring();
    let ids = node_ids(gens)?;
    let mut mgr = ring.manager().borrow_mut();
    let rs = reducer_set(&mut mgr, &ids, ring.ordering());
    Ok(rs.search(&mut mgr, m.id()).into_iter().map(|r| r.index).collect())
}

/// Leading monomials are coprime.
pub fn product_criterion(f: &BoolPoly, g: &BoolPoly) -> Result<bool> {
    let a = f.lead()?.vars();
    let b = g.lead()?.vars();
    Ok(a.iter().all(|v| !b.contains(v)))
}

/// Whether the pair `(i, j)` of `leads` may be skipped: some other `k` has a
/// lead dividing the lcm, and neither `(i, k)` nor `(j, k)` is still pending
/// with the same lcm. `pending` holds unordered index pairs.
pub fn chain_criterion(leads: &[BoolMonomial], (i, j): (usize, usize), pending: &[(usize, usize)]) -> bool {
    let vars: Vec<Vec<VarIndex>> = leads.iter().map(|m| m.vars()).collect();
    let lcm = |a: &[VarIndex], b: &[VarIndex]| {
        let mut v: Vec<VarIndex> = a.iter().chain(b).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let l = lcm(&vars[i], &vars[j]);
    let is_pending = |a: usize, b: usize| pending.iter().any(|&(p, q)| (p, q) == (a, b) || (q, p) == (a, b));
    (0..leads.len()).any(|k| {
        k != i
            && k != j
            && vars[k].iter().all(|v| l.contains(v))
            && [i, j].iter().all(|&a| !is_pending(a, k) || lcm(&vars[a], &vars[k]) != l)
    })
}

/// Whether `f` has a factor `x_v` or `x_v + 1`, in which case the field pair
/// `(f, x_v)` reduces to zero.
pub fn linear_lead_criterion(f: &BoolPoly, v: VarIndex) -> bool {
    symmetry::has_linear_factor(&mut f.ring().manager().borrow_mut(), f.id(), v)
}

/// Splits `p` into factors `x_v` / `x_v + 1` (ascending `v`) and a core.
pub fn factor_linear_leads(p: &BoolPoly) -> (Vec<LinearFactor>, BoolPoly) {
    let ring = p.ring();
    let (f, core) = symmetry::factor_nodes(&mut ring.manager().borrow_mut(), p.id());
    (f, ring.poly(core))
}

impl LinearFactor {
    pub fn to_poly(&self, ring: &crate::boolpoly::BoolRing) -> BoolPoly {
        let id = symmetry::factor_node(&mut ring.manager().borrow_mut(), *self);
        ring.poly(id)
    }
}

/// Relabels the variables of `p` onto the first indices of their block,
/// preserving order. Returns the shifted polynomial and the `(old, new)` map.
pub fn suitable_shift(p: &BoolPoly) -> Result<(BoolPoly, Vec<(VarIndex, VarIndex)>)> {
    let ring = p.ring();
    let (g, start, vars) = symmetry::shift_nodes(&mut ring.manager().borrow_mut(), p.id(), ring.ordering())?;
    let map = vars.iter().enumerate().map(|(i, &v)| (v, start + i as VarIndex)).collect();
    Ok((ring.poly(g), map))
}

/// Reduced Boolean Gröbner basis of `⟨p⟩`, sorted by leading monomial.
pub fn bgb_single(p: &BoolPoly, strat: &Strategy) -> Result<Vec<BoolPoly>> {
    let ring = p.ring();
    let (basis, _) =
        symmetry::bgb_single_nodes(&mut ring.manager().borrow_mut(), p.id(), ring.ordering(), strat, None)?;
    Ok(basis.into_iter().map(|g| ring.poly(g)).collect())
}

/// The single generator `1 + Π (1 + f)` of the ideal of `gens`, or `None` when
/// an intermediate product grows past `limit` nodes or `gens` is empty.
pub fn ideal_generator(gens: &[BoolPoly], limit: usize) -> Result<Option<BoolPoly>> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    let ring = first.ring();
    let ids = node_ids(gens)?;
    let mut mgr = ring.manager().borrow_mut();
    let p = sat::conjoin(&mut mgr, &ids, limit.max(1));
    drop(mgr);
    Ok(p.map(|p| ring.poly(p)))
}

/// Decides whether `gens` have a common zero. A returned model is checked
/// against every generator.
pub fn sat_check(gens: &[BoolPoly], strat: &Strategy) -> Result<SatResult> {
    sat::sat_check(gens, strat)
}

#[cfg(test)]
mod tests;
