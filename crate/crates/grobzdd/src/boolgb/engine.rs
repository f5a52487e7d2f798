use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rustc_hash::{FxHashMap, FxHashSet};

use super::nf::ReducerSet;
use super::symmetry;
use super::{GbStats, Strategy};
use crate::boolpoly::{BlockKind, Ordering};
use crate::zdd::{NodeId, VarIndex, ZddManager};

/// Order-preserving encoding of a monomial: `a < b` under `ord` iff
/// `order_key(a) < order_key(b)` as vectors.
pub(crate) fn order_key(ord: &Ordering, vars: &[VarIndex]) -> Vec<u32> {
    fn lex(vars: &[VarIndex], out: &mut Vec<u32>) {
        out.extend(vars.iter().map(|&v| u32::MAX - v));
    }
    let mut out = Vec::with_capacity(vars.len() + 2);
    match ord {
        Ordering::Lex => lex(vars, &mut out),
        Ordering::DegLex => {
            out.push(vars.len() as u32);
            lex(vars, &mut out);
        }
        Ordering::DegRevLexAsc => {
            out.push(vars.len() as u32);
            out.extend_from_slice(vars);
        }
        Ordering::Block(blocks) => {
            let mut start = 0;
            for b in blocks {
                let part: Vec<VarIndex> = vars.iter().copied().filter(|&v| v >= start && v < b.end).collect();
                out.push(part.len() as u32);
                match b.kind {
                    BlockKind::DegLex => lex(&part, &mut out),
                    BlockKind::DegRevLexAsc => out.extend_from_slice(&part),
                }
                out.extend(std::iter::repeat_n(0, (b.end - start) as usize - part.len()));
                start = b.end;
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum PairKind {
    Poly(usize, usize),
    Field(usize, VarIndex),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PairEntry {
    sugar: u32,
    key: Vec<u32>,
    seq: u64,
    kind: PairKind,
}

#[derive(Clone, Debug)]
struct Gen {
    poly: NodeId,
    lead: NodeId,
    lead_vars: Vec<VarIndex>,
    sugar: u32,
    alive: bool,
}

struct Candidate {
    poly: NodeId,
    sugar: u32,
    /// Member of a freshly computed BGB(p), so its field pairs are covered.
    closed: bool,
    /// May be replaced by the basis of its principal ideal. Off for members of
    /// such a basis, which would otherwise expand again after reduction.
    expand: bool,
}

pub(crate) struct Engine<'a> {
    mgr: &'a mut ZddManager,
    ord: Ordering,
    strat: Strategy,
    gens: Vec<Gen>,
    reducers: ReducerSet,
    queue: BinaryHeap<Reverse<PairEntry>>,
    pending: FxHashSet<(usize, usize)>,
    seq: u64,
    pub(crate) stats: GbStats,
    inconsistent: bool,
    /// Whether symmetric BGB(p) computation may be attempted on this run.
    symmetry: bool,
}

fn lcm_vars(a: &[VarIndex], b: &[VarIndex]) -> Vec<VarIndex> {
    let mut v: Vec<VarIndex> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn divides(a: &[VarIndex], b: &[VarIndex]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

impl<'a> Engine<'a> {
    pub(crate) fn new(mgr: &'a mut ZddManager, ord: Ordering, strat: Strategy) -> Engine<'a> {
        let symmetry = strat.symmetry;
        Engine {
            mgr,
            ord,
            strat,
            gens: Vec::new(),
            reducers: ReducerSet::new(),
            queue: BinaryHeap::new(),
            pending: FxHashSet::default(),
            seq: 0,
            stats: GbStats::default(),
            inconsistent: false,
            symmetry,
        }
    }

    pub(crate) fn without_symmetry(mut self) -> Self {
        self.symmetry = false;
        self
    }

    fn push(&mut self, sugar: u32, lcm: &[VarIndex], kind: PairKind) {
        let sugar = if self.strat.sugar { sugar } else { lcm.len() as u32 };
        let key = order_key(&self.ord, lcm);
        self.seq += 1;
        if let PairKind::Poly(i, j) = kind {
            self.pending.insert((i, j));
        }
        self.queue.push(Reverse(PairEntry { sugar, key, seq: self.seq, kind }));
    }

    fn nf(&mut self, f: NodeId) -> NodeId {
        let w = self.strat.weighted_length;
        self.reducers.nf_lead(self.mgr, f, &self.ord, w)
    }

    /// Runs to completion and returns the reduced basis, sorted by lead descending.
    pub(crate) fn run(mut self, input: &[NodeId]) -> (Vec<NodeId>, GbStats) {
        for &f in input {
            let deg = self.mgr.deg(f);
            self.add_candidates(vec![Candidate { poly: f, sugar: deg, closed: false, expand: true }]);
            if self.inconsistent {
                return (vec![NodeId::ONE], self.stats);
            }
        }
        while let Some(Reverse(entry)) = self.queue.pop() {
            if let Some(c) = self.process(entry) {
                self.add_candidates(vec![c]);
                if self.inconsistent {
                    return (vec![NodeId::ONE], self.stats);
                }
            }
        }
        let basis = self.final_basis();
        (basis, self.stats)
    }

    fn process(&mut self, entry: PairEntry) -> Option<Candidate> {
        match entry.kind {
            PairKind::Poly(i, j) => {
                self.pending.remove(&(i, j));
                if !self.gens[i].alive || !self.gens[j].alive {
                    return None;
                }
                if self.strat.chain_criterion && self.chain_applies(i, j) {
                    self.stats.chain += 1;
                    return None;
                }
                self.stats.pairs += 1;
                let (gi, gj) = (&self.gens[i], &self.gens[j]);
                let lcm = lcm_vars(&gi.lead_vars, &gj.lead_vars);
                let ui: Vec<VarIndex> = lcm.iter().copied().filter(|v| !gi.lead_vars.contains(v)).collect();
                let uj: Vec<VarIndex> = lcm.iter().copied().filter(|v| !gj.lead_vars.contains(v)).collect();
                let (pi, pj) = (gi.poly, gj.poly);
                let mi = self.mgr.monomial(&ui);
                let mj = self.mgr.monomial(&uj);
                let a = self.mgr.mul(pi, mi);
                let b = self.mgr.mul(pj, mj);
                let s = self.mgr.add(a, b);
                self.reduce_pair(s, entry.sugar)
            }
            PairKind::Field(i, v) => {
                if !self.gens[i].alive {
                    return None;
                }
                self.stats.field_pairs += 1;
                let x = self.mgr.variable(v);
                let s = self.mgr.mul(self.gens[i].poly, x);
                let s = self.mgr.add(s, self.gens[i].poly);
                self.reduce_pair(s, entry.sugar)
            }
        }
    }

    fn reduce_pair(&mut self, s: NodeId, sugar: u32) -> Option<Candidate> {
        let h = self.nf(s);
        if h == NodeId::ZERO {
            self.stats.zero_reductions += 1;
            return None;
        }
        Some(Candidate { poly: h, sugar, closed: false, expand: true })
    }

    /// Some live generator `k` has a lead dividing `lcm(i, j)`, and each side
    /// pair is either no longer queued or has a strictly smaller lcm.
    fn chain_applies(&self, i: usize, j: usize) -> bool {
        let lcm = lcm_vars(&self.gens[i].lead_vars, &self.gens[j].lead_vars);
        for (k, g) in self.gens.iter().enumerate() {
            if k == i || k == j || !g.alive || !divides(&g.lead_vars, &lcm) {
                continue;
            }
            let side_ok = |a: usize| {
                let key = (a.min(k), a.max(k));
                !self.pending.contains(&key) || lcm_vars(&self.gens[a].lead_vars, &g.lead_vars) != lcm
            };
            if side_ok(i) && side_ok(j) {
                return true;
            }
        }
        false
    }

    fn add_candidates(&mut self, mut work: Vec<Candidate>) {
        work.reverse();
        while let Some(c) = work.pop() {
            let h = self.nf(c.poly);
            if h == NodeId::ZERO {
                continue;
            }
            if h == NodeId::ONE {
                self.inconsistent = true;
                return;
            }
            let closed = c.closed && h == c.poly;
            if !closed && c.expand && self.symmetry {
                if let Some(basis) = self.try_bgb(h) {
                    if basis.len() == 1 && basis[0] == h {
                        self.insert(h, c.sugar, true, &mut work);
                    } else {
                        for b in basis.into_iter().rev() {
                            work.push(Candidate { poly: b, sugar: c.sugar, closed: true, expand: false });
                        }
                    }
                    continue;
                }
            }
            self.insert(h, c.sugar, closed, &mut work);
        }
    }

    fn try_bgb(&mut self, h: NodeId) -> Option<Vec<NodeId>> {
        let (factors, core) = symmetry::factor_nodes(self.mgr, h);
        let nv = self.mgr.support(core).len() as u32;
        if nv > self.strat.sym_max_vars {
            return None;
        }
        let out = symmetry::bgb_single_nodes(self.mgr, h, &self.ord, &self.strat, Some((factors, core)));
        match out {
            Ok((basis, hit)) => {
                if hit {
                    self.stats.sym_hits += 1;
                } else {
                    self.stats.sym_misses += 1;
                }
                Some(basis)
            }
            Err(_) => None,
        }
    }

    fn insert(&mut self, h: NodeId, sugar: u32, closed: bool, work: &mut Vec<Candidate>) {
        let lead = self.mgr.lead(h, &self.ord);
        let lead_vars = self.mgr.path_vars(lead);
        let idx = self.gens.len();
        // generators whose lead is a multiple of the new lead are retired and re-reduced
        for k in 0..idx {
            if self.gens[k].alive && divides(&lead_vars, &self.gens[k].lead_vars) {
                self.gens[k].alive = false;
                let old_lead = self.gens[k].lead;
                self.reducers.remove(self.mgr, old_lead);
                work.push(Candidate {
                    poly: self.gens[k].poly,
                    sugar: self.gens[k].sugar,
                    closed: false,
                    expand: true,
                });
            }
        }
        self.gens.push(Gen { poly: h, lead, lead_vars: lead_vars.clone(), sugar, alive: true });
        self.reducers.insert(self.mgr, h, lead, idx);
        let deg_lead = lead_vars.len() as u32;
        for k in 0..idx {
            if !self.gens[k].alive {
                continue;
            }
            let other = &self.gens[k];
            if self.strat.product_criterion && other.lead_vars.iter().all(|v| !lead_vars.contains(v)) {
                self.stats.product += 1;
                continue;
            }
            let lcm = lcm_vars(&other.lead_vars, &lead_vars);
            let d = lcm.len() as u32;
            let s = (other.sugar + d - other.lead_vars.len() as u32).max(sugar + d - deg_lead);
            self.push(s, &lcm, PairKind::Poly(k, idx));
        }
        if closed {
            return;
        }
        for v in self.mgr.support(h) {
            if !lead_vars.contains(&v) && self.strat.product_criterion {
                self.stats.product += 1;
                continue;
            }
            if self.strat.linear_lead_criterion && symmetry::has_linear_factor(self.mgr, h, v) {
                self.stats.linear_lead += 1;
                continue;
            }
            let mut lcm = lead_vars.clone();
            if let Err(pos) = lcm.binary_search(&v) {
                lcm.insert(pos, v);
            }
            self.push(sugar + 1, &lcm, PairKind::Field(idx, v));
        }
    }

    fn final_basis(&mut self) -> Vec<NodeId> {
        let w = self.strat.weighted_length;
        let mut out: Vec<(Vec<u32>, NodeId)> = Vec::new();
        let live: Vec<usize> = (0..self.gens.len()).filter(|&k| self.gens[k].alive).collect();
        for k in live {
            let g = self.gens[k].poly;
            let lead = self.gens[k].lead;
            let tail = self.mgr.add(g, lead);
            let tail = self.reducers.nf_full(self.mgr, tail, &self.ord, w);
            let reduced = self.mgr.add(tail, lead);
            out.push((order_key(&self.ord, &self.gens[k].lead_vars), reduced));
        }
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out.into_iter().map(|x| x.1).collect()
    }
}

/// Leads of a reduced basis, for tests and statistics.
#[allow(dead_code)]
pub(crate) fn lead_map(mgr: &mut ZddManager, basis: &[NodeId], ord: &Ordering) -> FxHashMap<NodeId, NodeId> {
    basis.iter().map(|&g| (mgr.lead(g, ord), g)).collect()
}
