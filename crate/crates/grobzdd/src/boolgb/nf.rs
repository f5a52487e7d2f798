use rustc_hash::FxHashMap;

use crate::boolpoly::Ordering;
use crate::zdd::{NodeId, ZddManager};

/// `Σ_{t ∈ f} (1 + deg t)`.
pub(crate) fn weighted_length(mgr: &ZddManager, f: NodeId) -> u64 {
    fn rec(mgr: &ZddManager, f: NodeId, memo: &mut FxHashMap<NodeId, (u64, u64)>) -> (u64, u64) {
        if f.is_terminal() {
            return (f.index() as u64, 0);
        }
        if let Some(&r) = memo.get(&f) {
            return r;
        }
        let (ch, sh) = rec(mgr, mgr.hi(f), memo);
        let (cl, sl) = rec(mgr, mgr.lo(f), memo);
        let r = (ch.saturating_add(cl), sh.saturating_add(ch).saturating_add(sl));
        memo.insert(f, r);
        r
    }
    let (c, s) = rec(mgr, f, &mut FxHashMap::default());
    c.saturating_add(s)
}

/// Reducers indexed by leading monomial.
#[derive(Clone, Debug)]
pub(crate) struct ReducerSet {
    /// Family of all reducer leads.
    pub(crate) leads: NodeId,
    /// Leads of reducers that are themselves monomials.
    pub(crate) monomials: NodeId,
    pub(crate) by_lead: FxHashMap<NodeId, Reducer>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Reducer {
    pub poly: NodeId,
    pub index: usize,
    pub wlen: u64,
}

impl ReducerSet {
    pub(crate) fn new() -> ReducerSet {
        ReducerSet { leads: NodeId::ZERO, monomials: NodeId::ZERO, by_lead: FxHashMap::default() }
    }

    /// Adds a reducer; an existing reducer with the same lead is replaced.
    pub(crate) fn insert(&mut self, mgr: &mut ZddManager, poly: NodeId, lead: NodeId, index: usize) {
        self.leads = mgr.union(self.leads, lead);
        if poly == lead {
            self.monomials = mgr.union(self.monomials, lead);
        }
        let wlen = weighted_length(mgr, poly);
        self.by_lead.insert(lead, Reducer { poly, index, wlen });
    }

    pub(crate) fn remove(&mut self, mgr: &mut ZddManager, lead: NodeId) {
        if let Some(r) = self.by_lead.remove(&lead) {
            self.leads = mgr.diff(self.leads, lead);
            if r.poly == lead {
                self.monomials = mgr.diff(self.monomials, lead);
            }
        }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.by_lead.is_empty()
    }

    /// Reducers whose lead divides `m`, sorted by reducer index.
    pub(crate) fn search(&self, mgr: &mut ZddManager, m: NodeId) -> Vec<Reducer> {
        let divs = mgr.divisors_within(self.leads, m);
        if divs == NodeId::ZERO {
            return Vec::new();
        }
        let mut out: Vec<Reducer> = mgr
            .members(divs)
            .iter()
            .map(|vars| {
                let lead = mgr.monomial(vars);
                *self.by_lead.get(&lead).expect("lead set and lead map out of sync")
            })
            .collect();
        out.sort_by_key(|r| r.index);
        out
    }

    /// Preferred reducer of `m`: smallest weighted length, then smallest index.
    fn pick(&self, mgr: &mut ZddManager, m: NodeId, weighted: bool) -> Option<Reducer> {
        let divs = mgr.divisors_within(self.leads, m);
        if divs == NodeId::ZERO {
            return None;
        }
        let mut best: Option<Reducer> = None;
        for vars in mgr.members(divs) {
            let lead = mgr.monomial(&vars);
            let r = self.by_lead[&lead];
            let better = match best {
                None => true,
                Some(b) if weighted => (r.wlen, r.index) < (b.wlen, b.index),
                Some(b) => r.index < b.index,
            };
            if better {
                best = Some(r);
            }
        }
        best
    }

    /// Reduces until the lead of the result is not divisible by any reducer lead.
    pub(crate) fn nf_lead(&self, mgr: &mut ZddManager, mut f: NodeId, ord: &Ordering, weighted: bool) -> NodeId {
        if self.is_empty() {
            return f;
        }
        f = mgr.nf_monomial_set(f, self.monomials);
        while f != NodeId::ZERO {
            let m = mgr.lead(f, ord);
            let Some(r) = self.pick(mgr, m, weighted) else { break };
            let rl = mgr.lead(r.poly, ord);
            f = greedy_step(mgr, f, r.poly, rl);
            f = mgr.nf_monomial_set(f, self.monomials);
        }
        f
    }

    /// Full reduction: no term of the result is divisible by a reducer lead.
    pub(crate) fn nf_full(&self, mgr: &mut ZddManager, f: NodeId, ord: &Ordering, weighted: bool) -> NodeId {
        if self.is_empty() {
            return f;
        }
        let mut rest = f;
        let mut done = NodeId::ZERO;
        loop {
            rest = self.nf_lead(mgr, rest, ord, weighted);
            if rest == NodeId::ZERO {
                return done;
            }
            let m = mgr.lead(rest, ord);
            done = mgr.add(done, m);
            rest = mgr.add(rest, m);
        }
    }
}

/// `f + (f / lm g)·g`: clears every term of `f` divisible by `lm g`.
pub(crate) fn greedy_step(mgr: &mut ZddManager, f: NodeId, g: NodeId, lead_g: NodeId) -> NodeId {
    let q = mgr.quotient_by_monomial(f, lead_g);
    let p = mgr.mul(q, g);
    mgr.add(f, p)
}
