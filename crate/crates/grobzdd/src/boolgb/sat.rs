use super::{buchberger_nodes, Strategy};
use crate::boolpoly::{BoolPoly, Ordering};
use crate::error::{Error, Result};
use crate::zdd::{NodeId, ZddManager};

/// Outcome of [`sat_check`](super::sat_check).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    /// A common zero of the input, indexed by variable.
    Sat(Vec<bool>),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

/// `1 + Π (1 + f)`, the single generator of the ideal of `gens`, with the
/// factors taken smallest first. `None` once an intermediate product exceeds
/// `limit` nodes.
pub(crate) fn conjoin(mgr: &mut ZddManager, gens: &[NodeId], limit: usize) -> Option<NodeId> {
    if limit == 0 {
        return None;
    }
    let mut chi = NodeId::ONE;
    let mut gens: Vec<NodeId> = gens.to_vec();
    gens.sort_by_cached_key(|&g| mgr.dag_size(g));
    for &f in &gens {
        let g = mgr.add(f, NodeId::ONE);
        chi = mgr.mul(chi, g);
        if chi == NodeId::ZERO {
            break;
        }
        if mgr.dag_size(chi) > limit {
            return None;
        }
    }
    Some(mgr.add(chi, NodeId::ONE))
}

pub(crate) fn sat_check(gens: &[BoolPoly], strat: &Strategy) -> Result<SatResult> {
    let Some(first) = gens.first() else {
        return Ok(SatResult::Sat(Vec::new()));
    };
    let ring = first.ring().clone();
    let n = ring.nvars();
    let ids = super::node_ids(gens)?;
    let mgr_ref = ring.manager().clone();
    let mut mgr = mgr_ref.borrow_mut();
    let ids = match conjoin(&mut mgr, &ids, strat.conjoin_limit) {
        Some(p) if ids.len() > 1 => vec![p],
        _ => ids,
    };
    let (basis, _) = buchberger_nodes(&mut mgr, &ids, ring.ordering(), strat)?;
    if basis == [NodeId::ONE] {
        return Ok(SatResult::Unsat);
    }
    let lex = if *ring.ordering() == Ordering::Lex {
        basis
    } else {
        buchberger_nodes(&mut mgr, &basis, &Ordering::Lex, strat)?.0
    };
    let support: Vec<u32> = lex.iter().map(|&g| mgr.support(g).first().copied().unwrap_or(u32::MAX)).collect();
    let mut point = vec![false; n];
    for v in (0..n).rev() {
        let active: Vec<NodeId> = lex.iter().zip(&support).filter(|(_, &s)| s as usize == v).map(|(&g, _)| g).collect();
        point[v] = false;
        if active.iter().any(|&g| mgr.eval(g, &point)) {
            point[v] = true;
        }
    }
    drop(mgr);
    if let Some(bad) = gens.iter().find(|g| g.eval(&point)) {
        return Err(Error::Invariant(format!("witness does not satisfy {bad}")));
    }
    Ok(SatResult::Sat(point))
}
