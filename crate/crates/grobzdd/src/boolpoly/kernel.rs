use std::cmp::Ordering as Cmp;

use super::ordering::{BlockKind, Ordering};
use crate::zdd::{NodeId, VarIndex, ZddManager};

impl ZddManager {
    /// Largest number of variables below `end` in one member.
    pub(crate) fn block_deg(&mut self, f: NodeId, end: VarIndex) -> u32 {
        if f.is_terminal() || self.var(f) >= end {
            return 0;
        }
        if let Some(&d) = self.deg_cache.get(&(f, end)) {
            return d;
        }
        let (hi, lo) = (self.hi(f), self.lo(f));
        let d = (self.block_deg(hi, end) + 1).max(self.block_deg(lo, end));
        self.deg_cache.insert((f, end), d);
        d
    }

    /// Total degree; `deg(0) = 0`.
    pub fn deg(&mut self, f: NodeId) -> u32 {
        self.block_deg(f, VarIndex::MAX)
    }

    /// `min(deg f, bound)`, stopping as soon as the bound is reached.
    pub fn deg_bounded(&mut self, f: NodeId, bound: u32) -> u32 {
        if f.is_terminal() || bound == 0 {
            return 0;
        }
        if let Some(&d) = self.deg_bounded_cache.get(&(f, bound)) {
            return d;
        }
        let (hi, lo) = (self.hi(f), self.lo(f));
        let d1 = self.deg_bounded(hi, bound - 1) + 1;
        let d = if d1 == bound { bound } else { d1.max(self.deg_bounded(lo, bound)) };
        self.deg_bounded_cache.insert((f, bound), d);
        d
    }

    pub(crate) fn ordering_slot(&mut self, ord: &Ordering) -> u32 {
        if let Some(i) = self.orderings.iter().position(|o| o == ord) {
            return i as u32;
        }
        self.orderings.push(ord.clone());
        (self.orderings.len() - 1) as u32
    }

    /// Leading monomial as a single-path node. `f` must be nonzero.
    pub fn lead(&mut self, f: NodeId, ord: &Ordering) -> NodeId {
        assert!(f != NodeId::ZERO, "lead of the zero polynomial");
        if let Ordering::Lex = ord {
            let vars = self.path_vars_first(f);
            return self.monomial(&vars);
        }
        let slot = self.ordering_slot(ord);
        self.lead_rec(f, ord, slot)
    }

    fn path_vars_first(&self, mut f: NodeId) -> Vec<VarIndex> {
        let mut out = Vec::new();
        while !f.is_terminal() {
            out.push(self.var(f));
            f = self.hi(f);
        }
        out
    }

    fn lead_rec(&mut self, f: NodeId, ord: &Ordering, slot: u32) -> NodeId {
        if f.is_terminal() {
            return f;
        }
        if let Some(&m) = self.lead_cache.get(&(slot, f)) {
            return m;
        }
        let v = self.var(f);
        let (hi, lo) = (self.hi(f), self.lo(f));
        let (_, end, kind) = ord.block_of(v);
        let d = self.block_deg(f, end);
        let take_then = match kind {
            BlockKind::DegLex => d == self.block_deg(hi, end) + 1,
            BlockKind::DegRevLexAsc => lo == NodeId::ZERO || d != self.block_deg(lo, end),
        };
        let m = if take_then {
            let r = self.lead_rec(hi, ord, slot);
            self.mk(v, r, NodeId::ZERO)
        } else {
            self.lead_rec(lo, ord, slot)
        };
        self.lead_cache.insert((slot, f), m);
        m
    }

    /// Members in strictly decreasing order under `ord`.
    pub fn terms_sorted(&mut self, f: NodeId, ord: &Ordering) -> Vec<Vec<VarIndex>> {
        match ord {
            Ordering::Lex => self.members(f),
            Ordering::DegLex | Ordering::DegRevLexAsc => {
                let all = self.members(f);
                let top = all.iter().map(Vec::len).max().unwrap_or(0);
                let mut out = Vec::with_capacity(all.len());
                for d in (0..=top).rev() {
                    let level = all.iter().filter(|t| t.len() == d).cloned();
                    if *ord == Ordering::DegLex {
                        out.extend(level);
                    } else {
                        let mut l: Vec<_> = level.collect();
                        l.reverse();
                        out.extend(l);
                    }
                }
                out
            }
            Ordering::Block(_) => {
                let mut all = self.members(f);
                all.sort_by(|a, b| ord.compare(b, a));
                all
            }
        }
    }

    /// Compares two single-path nodes.
    pub fn compare_monomials(&self, a: NodeId, b: NodeId, ord: &Ordering) -> Cmp {
        if a == b {
            return Cmp::Equal;
        }
        ord.compare(&self.path_vars(a), &self.path_vars(b))
    }

    /// `Σ{t/m : t ∈ f, m | t}`.
    pub fn quotient_by_monomial(&mut self, mut f: NodeId, m: NodeId) -> NodeId {
        for v in self.path_vars(m) {
            f = self.subset1(f, v);
        }
        f
    }

    /// Evaluates the Boolean function of `f` at `point` (`point[v]` is `x_v`).
    pub fn eval(&self, f: NodeId, point: &[bool]) -> bool {
        // Parity of members that are subsets of the point's support.
        let mut memo = rustc_hash::FxHashMap::default();
        self.eval_rec(f, point, &mut memo)
    }

    fn eval_rec(&self, f: NodeId, point: &[bool], memo: &mut rustc_hash::FxHashMap<NodeId, bool>) -> bool {
        if f.is_terminal() {
            return f == NodeId::ONE;
        }
        if let Some(&b) = memo.get(&f) {
            return b;
        }
        let n = self.node(f);
        let lo = self.eval_rec(n.lo, point, memo);
        let r = if point[n.var as usize] { lo ^ self.eval_rec(n.hi, point, memo) } else { lo };
        memo.insert(f, r);
        r
    }
}
