//! Zero-suppressed binary decision diagrams.
//!
//! A [`ZddManager`] owns every node it creates. Nodes are hash-consed in a
//! unique table keyed by `(var, then, else)`, so two diagrams denote the same
//! family of sets exactly when their [`NodeId`]s are equal. A node whose
//! then-child is the empty family is never stored; [`ZddManager::mk`] returns
//! the else-child instead.
//!
//! Variables are numbered `0..n`. Index 0 is the top (largest) variable and
//! indices strictly increase along every path.
//!
//! The kernel works on raw [`NodeId`]s through `&mut ZddManager`. The
//! [`Zdd`] handle bundles an id with a shared manager reference for callers
//! who prefer a value-style API.

mod handle;
mod path;

pub use handle::{ManagerRef, Zdd};
pub use path::{Path, PathIter};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Identifier of a node inside one manager.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    /// The empty family, i.e. the zero polynomial.
    pub const ZERO: NodeId = NodeId(0);
    /// The family `{∅}`, i.e. the constant polynomial 1.
    pub const ONE: NodeId = NodeId(1);

    pub fn is_terminal(self) -> bool {
        self.0 < 2
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

/// Variable index; smaller means larger in every ordering.
pub type VarIndex = u32;

/// Pseudo variable of the terminals; compares above every real variable.
pub const TERMINAL_VAR: VarIndex = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Node {
    pub var: VarIndex,
    pub hi: NodeId,
    pub lo: NodeId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub(crate) enum Op {
    Union,
    Intersect,
    Diff,
    Add,
    Mul,
    Subset0,
    Subset1,
    Divisors,
    NfMonomials,
    Closure,
    Minimal,
    Zeros,
    Isl,
    Simple,
}

/// Node store with unique table and operation caches.
pub struct ZddManager {
    nvars: u32,
    nodes: Vec<Node>,
    unique: FxHashMap<Node, NodeId>,
    cache: FxHashMap<(Op, u32, u32), NodeId>,
    pub(crate) deg_cache: FxHashMap<(NodeId, u32), u32>,
    pub(crate) deg_bounded_cache: FxHashMap<(NodeId, u32), u32>,
    pub(crate) lead_cache: FxHashMap<(u32, NodeId), NodeId>,
    pub(crate) orderings: Vec<crate::boolpoly::Ordering>,
    pub(crate) sym_cache: FxHashMap<(u32, NodeId), Vec<NodeId>>,
    pub(crate) tables_loaded: rustc_hash::FxHashSet<u32>,
}

impl std::fmt::Debug for ZddManager {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ZddManager").field("nvars", &self.nvars).field("nodes", &self.nodes.len()).finish()
    }
}

impl ZddManager {
    pub fn new(nvars: u32) -> ZddManager {
        let terminal = Node { var: TERMINAL_VAR, hi: NodeId::ZERO, lo: NodeId::ZERO };
        ZddManager {
            nvars,
            nodes: vec![terminal, terminal],
            unique: FxHashMap::default(),
            cache: FxHashMap::default(),
            deg_cache: FxHashMap::default(),
            deg_bounded_cache: FxHashMap::default(),
            lead_cache: FxHashMap::default(),
            orderings: Vec::new(),
            sym_cache: FxHashMap::default(),
            tables_loaded: Default::default(),
        }
    }

    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    /// Number of stored nodes, terminals included.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Drops every node and cached result.
    pub fn reset(&mut self) {
        *self = ZddManager::new(self.nvars);
    }

    /// Drops cached operation results but keeps the nodes.
    pub fn clear_caches(&mut self) {
        self.cache.clear();
        self.deg_cache.clear();
        self.deg_bounded_cache.clear();
        self.lead_cache.clear();
    }

    #[inline]
    pub(crate) fn node(&self, id: NodeId) -> Node {
        self.nodes[id.0 as usize]
    }

    /// Top variable; [`TERMINAL_VAR`] for terminals.
    #[inline]
    pub fn var(&self, id: NodeId) -> VarIndex {
        self.nodes[id.0 as usize].var
    }

    #[inline]
    pub fn hi(&self, id: NodeId) -> NodeId {
        self.nodes[id.0 as usize].hi
    }

    #[inline]
    pub fn lo(&self, id: NodeId) -> NodeId {
        self.nodes[id.0 as usize].lo
    }

    pub fn top(&self, id: NodeId) -> Result<VarIndex> {
        if id.is_terminal() {
            return Err(Error::Terminal);
        }
        Ok(self.var(id))
    }

    pub fn then_branch(&self, id: NodeId) -> Result<NodeId> {
        if id.is_terminal() {
            return Err(Error::Terminal);
        }
        Ok(self.hi(id))
    }

    pub fn else_branch(&self, id: NodeId) -> Result<NodeId> {
        if id.is_terminal() {
            return Err(Error::Terminal);
        }
        Ok(self.lo(id))
    }

    /// Checked node constructor.
    pub fn mk_node(&mut self, var: VarIndex, hi: NodeId, lo: NodeId) -> Result<NodeId> {
        if var >= self.nvars {
            return Err(Error::VariableOutOfRange(var));
        }
        for child in [hi, lo] {
            let cv = self.var(child);
            if cv <= var {
                return Err(Error::VariableOrder { var, child: cv });
            }
        }
        Ok(self.mk(var, hi, lo))
    }

    /// Unchecked constructor used by the recursive operations.
    #[inline]
    pub(crate) fn mk(&mut self, var: VarIndex, hi: NodeId, lo: NodeId) -> NodeId {
        if hi == NodeId::ZERO {
            return lo;
        }
        debug_assert!(self.var(hi) > var && self.var(lo) > var);
        let node = Node { var, hi, lo };
        if let Some(&id) = self.unique.get(&node) {
            return id;
        }
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(node);
        self.unique.insert(node, id);
        id
    }

    #[inline]
    fn cached(&self, op: Op, a: NodeId, b: u32) -> Option<NodeId> {
        self.cache.get(&(op, a.0, b)).copied()
    }

    #[inline]
    fn store(&mut self, op: Op, a: NodeId, b: u32, r: NodeId) -> NodeId {
        self.cache.insert((op, a.0, b), r);
        r
    }

    pub(crate) fn cache_get(&self, op: Op, a: NodeId, b: NodeId) -> Option<NodeId> {
        self.cached(op, a, b.0)
    }

    pub(crate) fn cache_put(&mut self, op: Op, a: NodeId, b: NodeId, r: NodeId) -> NodeId {
        self.store(op, a, b.0, r)
    }

    /// The single variable `x_v` as a one-term family `{{v}}`.
    pub fn variable(&mut self, v: VarIndex) -> NodeId {
        assert!(v < self.nvars, "variable x{v} out of range");
        self.mk(v, NodeId::ONE, NodeId::ZERO)
    }

    /// The monomial with the given variables (any order, duplicates merge).
    pub fn monomial(&mut self, vars: &[VarIndex]) -> NodeId {
        let mut vs = vars.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut r = NodeId::ONE;
        for &v in vs.iter().rev() {
            assert!(v < self.nvars, "variable x{v} out of range");
            r = self.mk(v, r, NodeId::ZERO);
        }
        r
    }

    /// Builds the family from explicit member sets.
    pub fn from_sets<S: AsRef<[VarIndex]>>(&mut self, sets: &[S]) -> NodeId {
        let mut r = NodeId::ZERO;
        for s in sets {
            let m = self.monomial(s.as_ref());
            r = self.union(r, m);
        }
        r
    }

    /// The family of all subsets of `{0..n}`; `n` nodes.
    pub fn power_set(&mut self) -> NodeId {
        let mut r = NodeId::ONE;
        for v in (0..self.nvars).rev() {
            r = self.mk(v, r, r);
        }
        r
    }

    pub fn contains_empty(&self, mut f: NodeId) -> bool {
        while !f.is_terminal() {
            f = self.lo(f);
        }
        f == NodeId::ONE
    }

    pub fn union(&mut self, f: NodeId, g: NodeId) -> NodeId {
        if f == NodeId::ZERO || f == g {
            return g;
        }
        if g == NodeId::ZERO {
            return f;
        }
        let (f, g) = if f < g { (f, g) } else { (g, f) };
        if let Some(r) = self.cached(Op::Union, f, g.0) {
            return r;
        }
        let (nf, ng) = (self.node(f), self.node(g));
        let r = if nf.var < ng.var {
            let lo = self.union(nf.lo, g);
            self.mk(nf.var, nf.hi, lo)
        } else if nf.var > ng.var {
            let lo = self.union(f, ng.lo);
            self.mk(ng.var, ng.hi, lo)
        } else {
            let hi = self.union(nf.hi, ng.hi);
            let lo = self.union(nf.lo, ng.lo);
            self.mk(nf.var, hi, lo)
        };
        self.store(Op::Union, f, g.0, r)
    }

    pub fn intersect(&mut self, f: NodeId, g: NodeId) -> NodeId {
        if f == NodeId::ZERO || g == NodeId::ZERO {
            return NodeId::ZERO;
        }
        if f == g {
            return f;
        }
        let (f, g) = if f < g { (f, g) } else { (g, f) };
        if let Some(r) = self.cached(Op::Intersect, f, g.0) {
            return r;
        }
        let (nf, ng) = (self.node(f), self.node(g));
        let r = if nf.var < ng.var {
            self.intersect(nf.lo, g)
        } else if nf.var > ng.var {
            self.intersect(f, ng.lo)
        } else {
            let hi = self.intersect(nf.hi, ng.hi);
            let lo = self.intersect(nf.lo, ng.lo);
            self.mk(nf.var, hi, lo)
        };
        self.store(Op::Intersect, f, g.0, r)
    }

    pub fn diff(&mut self, f: NodeId, g: NodeId) -> NodeId {
        if f == NodeId::ZERO || f == g {
            return NodeId::ZERO;
        }
        if g == NodeId::ZERO {
            return f;
        }
        if let Some(r) = self.cached(Op::Diff, f, g.0) {
            return r;
        }
        let (nf, ng) = (self.node(f), self.node(g));
        let r = if nf.var < ng.var {
            let lo = self.diff(nf.lo, g);
            self.mk(nf.var, nf.hi, lo)
        } else if nf.var > ng.var {
            self.diff(f, ng.lo)
        } else {
            let hi = self.diff(nf.hi, ng.hi);
            let lo = self.diff(nf.lo, ng.lo);
            self.mk(nf.var, hi, lo)
        };
        self.store(Op::Diff, f, g.0, r)
    }

    /// Symmetric difference; polynomial addition over Z/2.
    pub fn add(&mut self, f: NodeId, g: NodeId) -> NodeId {
        if f == NodeId::ZERO {
            return g;
        }
        if g == NodeId::ZERO {
            return f;
        }
        if f == g {
            return NodeId::ZERO;
        }
        let (f, g) = if f < g { (f, g) } else { (g, f) };
        if let Some(r) = self.cached(Op::Add, f, g.0) {
            return r;
        }
        let (nf, ng) = (self.node(f), self.node(g));
        let r = if nf.var < ng.var {
            let lo = self.add(nf.lo, g);
            self.mk(nf.var, nf.hi, lo)
        } else if nf.var > ng.var {
            let lo = self.add(f, ng.lo);
            self.mk(ng.var, ng.hi, lo)
        } else {
            let hi = self.add(nf.hi, ng.hi);
            let lo = self.add(nf.lo, ng.lo);
            self.mk(nf.var, hi, lo)
        };
        self.store(Op::Add, f, g.0, r)
    }

    /// Product of Boolean polynomials modulo the field relations `x² = x`.
    pub fn mul(&mut self, f: NodeId, g: NodeId) -> NodeId {
        if f == NodeId::ONE {
            return g;
        }
        if f == NodeId::ZERO || g == NodeId::ZERO {
            return NodeId::ZERO;
        }
        if g == NodeId::ONE || f == g {
            return f;
        }
        let (f, g) = if f < g { (f, g) } else { (g, f) };
        if let Some(r) = self.cached(Op::Mul, f, g.0) {
            return r;
        }
        let (nf, ng) = (self.node(f), self.node(g));
        let v = nf.var.min(ng.var);
        let (p1, p0) = if nf.var == v { (nf.hi, nf.lo) } else { (NodeId::ZERO, f) };
        let (q1, q0) = if ng.var == v { (ng.hi, ng.lo) } else { (NodeId::ZERO, g) };
        // x·(p1·(q1+q0) + p0·q1) + p0·q0
        let q = self.add(q1, q0);
        let a = self.mul(p1, q);
        let b = self.mul(p0, q1);
        let hi = self.add(a, b);
        let lo = self.mul(p0, q0);
        let r = self.mk(v, hi, lo);
        self.store(Op::Mul, f, g.0, r)
    }

    /// `{s \ {v} | v ∈ s ∈ f}`.
    pub fn subset1(&mut self, f: NodeId, v: VarIndex) -> NodeId {
        let n = self.node(f);
        if n.var > v {
            return NodeId::ZERO;
        }
        if n.var == v {
            return n.hi;
        }
        if let Some(r) = self.cached(Op::Subset1, f, v) {
            return r;
        }
        let hi = self.subset1(n.hi, v);
        let lo = self.subset1(n.lo, v);
        let r = self.mk(n.var, hi, lo);
        self.store(Op::Subset1, f, v, r)
    }

    /// `{s ∈ f | v ∉ s}`.
    pub fn subset0(&mut self, f: NodeId, v: VarIndex) -> NodeId {
        let n = self.node(f);
        if n.var > v {
            return f;
        }
        if n.var == v {
            return n.lo;
        }
        if let Some(r) = self.cached(Op::Subset0, f, v) {
            return r;
        }
        let hi = self.subset0(n.hi, v);
        let lo = self.subset0(n.lo, v);
        let r = self.mk(n.var, hi, lo);
        self.store(Op::Subset0, f, v, r)
    }

    /// Members of `set` that are subsets of the single-path family `m`.
    pub fn divisors_within(&mut self, set: NodeId, m: NodeId) -> NodeId {
        if set.is_terminal() {
            return set;
        }
        if m == NodeId::ONE {
            return if self.contains_empty(set) { NodeId::ONE } else { NodeId::ZERO };
        }
        if let Some(r) = self.cached(Op::Divisors, set, m.0) {
            return r;
        }
        let (ns, nm) = (self.node(set), self.node(m));
        let r = if ns.var < nm.var {
            self.divisors_within(ns.lo, m)
        } else if ns.var > nm.var {
            self.divisors_within(set, nm.hi)
        } else {
            let hi = self.divisors_within(ns.hi, nm.hi);
            let lo = self.divisors_within(ns.lo, nm.hi);
            self.mk(ns.var, hi, lo)
        };
        self.store(Op::Divisors, set, m.0, r)
    }

    /// Members of `f` having no subset in `g`. As polynomials: the terms of
    /// `f` not divisible by any monomial of `g`.
    pub fn nf_monomial_set(&mut self, f: NodeId, mut g: NodeId) -> NodeId {
        if g == NodeId::ZERO || f == NodeId::ZERO {
            return f;
        }
        if self.contains_empty(g) {
            return NodeId::ZERO;
        }
        if f == NodeId::ONE {
            return f;
        }
        let nf = self.node(f);
        while self.var(g) < nf.var {
            g = self.lo(g);
        }
        if g == NodeId::ZERO {
            return f;
        }
        if let Some(r) = self.cached(Op::NfMonomials, f, g.0) {
            return r;
        }
        let ng = self.node(g);
        let r = if ng.var == nf.var {
            let t = self.nf_monomial_set(nf.hi, ng.lo);
            let hi = self.nf_monomial_set(t, ng.hi);
            let lo = self.nf_monomial_set(nf.lo, ng.lo);
            self.mk(nf.var, hi, lo)
        } else {
            let hi = self.nf_monomial_set(nf.hi, g);
            let lo = self.nf_monomial_set(nf.lo, g);
            self.mk(nf.var, hi, lo)
        };
        self.store(Op::NfMonomials, f, g.0, r)
    }

    /// All subsets of members of `f` (divisor closure of a monomial set).
    pub fn subset_closure(&mut self, f: NodeId) -> NodeId {
        if f.is_terminal() {
            return f;
        }
        if let Some(r) = self.cached(Op::Closure, f, 0) {
            return r;
        }
        let n = self.node(f);
        let hi = self.subset_closure(n.hi);
        let lo = self.subset_closure(n.lo);
        let lo = self.union(hi, lo);
        let r = self.mk(n.var, hi, lo);
        self.store(Op::Closure, f, 0, r)
    }

    /// Members of `f` with no proper subset in `f`.
    pub fn minimal_elements(&mut self, f: NodeId) -> NodeId {
        if f.is_terminal() {
            return f;
        }
        if self.contains_empty(f) {
            return NodeId::ONE;
        }
        if let Some(r) = self.cached(Op::Minimal, f, 0) {
            return r;
        }
        let n = self.node(f);
        let hi = self.minimal_elements(n.hi);
        let lo = self.minimal_elements(n.lo);
        let hi = self.nf_monomial_set(hi, lo);
        let r = self.mk(n.var, hi, lo);
        self.store(Op::Minimal, f, 0, r)
    }

    /// Number of members (paths to the 1-terminal).
    pub fn count_paths(&self, f: NodeId) -> u128 {
        let mut memo = FxHashMap::default();
        self.count_rec(f, &mut memo)
    }

    fn count_rec(&self, f: NodeId, memo: &mut FxHashMap<NodeId, u128>) -> u128 {
        if f.is_terminal() {
            return f.0 as u128;
        }
        if let Some(&c) = memo.get(&f) {
            return c;
        }
        let n = self.node(f);
        let c = self.count_rec(n.hi, memo) + self.count_rec(n.lo, memo);
        memo.insert(f, c);
        c
    }

    /// Number of decision nodes reachable from `f`.
    pub fn dag_size(&self, f: NodeId) -> usize {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut stack = vec![f];
        while let Some(x) = stack.pop() {
            if x.is_terminal() || !seen.insert(x) {
                continue;
            }
            let n = self.node(x);
            stack.push(n.hi);
            stack.push(n.lo);
        }
        seen.len()
    }

    /// Sorted list of variables occurring in some member.
    pub fn support(&self, f: NodeId) -> Vec<VarIndex> {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut vars = std::collections::BTreeSet::new();
        let mut stack = vec![f];
        while let Some(x) = stack.pop() {
            if x.is_terminal() || !seen.insert(x) {
                continue;
            }
            let n = self.node(x);
            vars.insert(n.var);
            stack.push(n.hi);
            stack.push(n.lo);
        }
        vars.into_iter().collect()
    }

    /// Renames variables by an order-preserving map (`map[v]` for each
    /// occurring `v`).
    pub fn relabel(&mut self, f: NodeId, map: &FxHashMap<VarIndex, VarIndex>) -> NodeId {
        let mut memo = FxHashMap::default();
        self.relabel_rec(f, map, &mut memo)
    }

    fn relabel_rec(
        &mut self,
        f: NodeId,
        map: &FxHashMap<VarIndex, VarIndex>,
        memo: &mut FxHashMap<NodeId, NodeId>,
    ) -> NodeId {
        if f.is_terminal() {
            return f;
        }
        if let Some(&r) = memo.get(&f) {
            return r;
        }
        let n = self.node(f);
        let hi = self.relabel_rec(n.hi, map, memo);
        let lo = self.relabel_rec(n.lo, map, memo);
        let r = self.mk(map[&n.var], hi, lo);
        memo.insert(f, r);
        r
    }

    /// Members as sorted variable lists, in natural path order.
    pub fn members(&self, f: NodeId) -> Vec<Vec<VarIndex>> {
        PathIter::new(self, f).collect()
    }

    /// Variables of a single-path family, ascending.
    pub fn path_vars(&self, mut m: NodeId) -> Vec<VarIndex> {
        let mut out = Vec::new();
        while !m.is_terminal() {
            let n = self.node(m);
            out.push(n.var);
            m = n.hi;
        }
        out
    }

    /// Whether some member of `f` equals `vars` (sorted ascending).
    pub fn contains_set(&self, mut f: NodeId, vars: &[VarIndex]) -> bool {
        let mut i = 0;
        loop {
            if f.is_terminal() {
                return i == vars.len() && f == NodeId::ONE;
            }
            let n = self.node(f);
            if i < vars.len() && vars[i] < n.var {
                return false;
            }
            if i < vars.len() && vars[i] == n.var {
                f = n.hi;
                i += 1;
            } else {
                f = n.lo;
            }
        }
    }

    /// Scans the unique table for canonicity, zero-suppression and order.
    pub fn check_invariants(&self) -> Result<()> {
        if self.unique.len() + 2 != self.nodes.len() {
            return Err(Error::Invariant("unique table out of sync".into()));
        }
        for (i, n) in self.nodes.iter().enumerate().skip(2) {
            if n.hi == NodeId::ZERO {
                return Err(Error::Invariant(format!("node {i} has then-child 0")));
            }
            if self.var(n.hi) <= n.var || self.var(n.lo) <= n.var {
                return Err(Error::Invariant(format!("node {i} breaks the variable order")));
            }
            if self.unique.get(n) != Some(&NodeId(i as u32)) {
                return Err(Error::Invariant(format!("node {i} is not canonical")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
