use std::fmt::Write as _;
use std::path::Path;

use rustc_hash::FxHashMap;

use super::engine::Engine;
use super::Strategy;
use crate::boolpoly::Ordering;
use crate::error::{Error, Result};
use crate::zdd::{NodeId, VarIndex, ZddManager};

/// A factor `x_v` (`plus_one == false`) or `x_v + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinearFactor {
    pub var: VarIndex,
    pub plus_one: bool,
}

pub(crate) fn factor_node(mgr: &mut ZddManager, f: LinearFactor) -> NodeId {
    let x = mgr.variable(f.var);
    if f.plus_one {
        mgr.add(x, NodeId::ONE)
    } else {
        x
    }
}

/// `f = x_v ⊙ g` or `f = (x_v + 1) ⊙ g` for some `g` free of `x_v`.
pub(crate) fn has_linear_factor(mgr: &mut ZddManager, f: NodeId, v: VarIndex) -> bool {
    let p0 = mgr.subset0(f, v);
    let p1 = mgr.subset1(f, v);
    p1 != NodeId::ZERO && (p0 == NodeId::ZERO || p0 == p1)
}

/// Strips linear factors greedily by ascending variable.
pub(crate) fn factor_nodes(mgr: &mut ZddManager, f: NodeId) -> (Vec<LinearFactor>, NodeId) {
    let mut factors = Vec::new();
    let mut core = f;
    for v in mgr.support(f) {
        let p0 = mgr.subset0(core, v);
        let p1 = mgr.subset1(core, v);
        if p1 == NodeId::ZERO {
            continue;
        }
        if p0 == NodeId::ZERO {
            factors.push(LinearFactor { var: v, plus_one: false });
            core = p1;
        } else if p0 == p1 {
            factors.push(LinearFactor { var: v, plus_one: true });
            core = p0;
        }
    }
    (factors, core)
}

/// Order-preserving relabelling of the support of `f` onto the lowest indices
/// of its block. Returns the shifted node and the original variables, so
/// `vars[i]` is the preimage of the `i`-th shifted variable.
pub(crate) fn shift_nodes(
    mgr: &mut ZddManager,
    f: NodeId,
    ord: &Ordering,
) -> Result<(NodeId, VarIndex, Vec<VarIndex>)> {
    let vars = mgr.support(f);
    let start = match vars.first() {
        None => 0,
        Some(&v0) => {
            let (start, end, _) = ord.block_of(v0);
            if vars.iter().any(|&v| v >= end) {
                return Err(Error::NonSymmetricOrdering);
            }
            start
        }
    };
    let map: FxHashMap<VarIndex, VarIndex> =
        vars.iter().enumerate().map(|(i, &v)| (v, start + i as VarIndex)).collect();
    let g = mgr.relabel(f, &map);
    Ok((g, start, vars))
}

pub(crate) fn unshift(mgr: &mut ZddManager, f: NodeId, start: VarIndex, vars: &[VarIndex]) -> NodeId {
    let map: FxHashMap<VarIndex, VarIndex> =
        vars.iter().enumerate().map(|(i, &v)| (start + i as VarIndex, v)).collect();
    mgr.relabel(f, &map)
}

/// Reduced Boolean Gröbner basis of the principal ideal `⟨f⟩`. The flag
/// reports whether the core's basis came from the cache.
pub(crate) fn bgb_single_nodes(
    mgr: &mut ZddManager,
    f: NodeId,
    ord: &Ordering,
    strat: &Strategy,
    stripped: Option<(Vec<LinearFactor>, NodeId)>,
) -> Result<(Vec<NodeId>, bool)> {
    if f == NodeId::ZERO {
        return Ok((Vec::new(), false));
    }
    let (factors, core) = match stripped {
        Some(s) => s,
        None => factor_nodes(mgr, f),
    };
    if core == NodeId::ONE {
        return Ok((vec![f], false));
    }
    let (shifted, start, vars) = shift_nodes(mgr, core, ord)?;
    let slot = mgr.ordering_slot(ord);
    let (basis, hit) = match mgr.sym_cache.get(&(slot, shifted)) {
        Some(b) if strat.sym_cache => (b.clone(), true),
        _ => {
            let inner = Strategy { symmetry: false, table: None, ..strat.clone() };
            let (b, _) = Engine::new(mgr, ord.clone(), inner).without_symmetry().run(&[shifted]);
            if strat.sym_cache {
                mgr.sym_cache.insert((slot, shifted), b.clone());
            }
            (b, false)
        }
    };
    let mut prod = NodeId::ONE;
    for fac in factors {
        let l = factor_node(mgr, fac);
        prod = mgr.mul(prod, l);
    }
    let out = basis
        .into_iter()
        .map(|g| {
            let g = unshift(mgr, g, start, &vars);
            mgr.mul(g, prod)
        })
        .collect();
    Ok((out, hit))
}

fn term_string(vars: &[VarIndex]) -> String {
    if vars.is_empty() {
        return "1".into();
    }
    vars.iter().map(|v| format!("x{v}")).collect::<Vec<_>>().join("*")
}

fn node_string(mgr: &ZddManager, f: NodeId) -> String {
    if f == NodeId::ZERO {
        return "0".into();
    }
    mgr.members(f).iter().map(|t| term_string(t)).collect::<Vec<_>>().join(" + ")
}

fn parse_node(mgr: &mut ZddManager, s: &str) -> Option<NodeId> {
    let mut acc = NodeId::ZERO;
    for term in s.split('+').map(str::trim) {
        if term == "0" {
            continue;
        }
        let mut vars = Vec::new();
        if term != "1" {
            for v in term.split('*') {
                vars.push(v.trim().strip_prefix('x')?.parse::<VarIndex>().ok()?);
            }
        }
        vars.sort_unstable();
        let m = mgr.monomial(&vars);
        acc = mgr.add(acc, m);
    }
    Some(acc)
}

/// Precomputed bases of every factor-free core in at most four variables,
/// stored as `ordering \t core \t basis;basis;...` lines.
pub(crate) fn load_or_generate_table(mgr: &mut ZddManager, ord: &Ordering, path: &Path) -> Result<usize> {
    let name = ord.to_string();
    if let Ok(text) = std::fs::read_to_string(path) {
        let slot = mgr.ordering_slot(ord);
        let mut n = 0;
        for (lineno, line) in text.lines().enumerate() {
            let mut cols = line.split('\t');
            let (Some(o), Some(core), Some(basis)) = (cols.next(), cols.next(), cols.next()) else {
                continue;
            };
            if o != name {
                continue;
            }
            let bad = || Error::parse(lineno + 1, 0, "malformed table entry");
            let core = parse_node(mgr, core).ok_or_else(bad)?;
            let basis = basis.split(';').map(|b| parse_node(mgr, b).ok_or_else(bad)).collect::<Result<Vec<_>>>()?;
            mgr.sym_cache.insert((slot, core), basis);
            n += 1;
        }
        if n > 0 {
            return Ok(n);
        }
    }
    let lines = generate_table(mgr, ord)?;
    let mut text = std::fs::read_to_string(path).unwrap_or_default();
    for l in &lines {
        text.push_str(l);
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| Error::Invariant(format!("cannot write table {}: {e}", path.display())))?;
    Ok(lines.len())
}

fn generate_table(mgr: &mut ZddManager, ord: &Ordering) -> Result<Vec<String>> {
    let k: VarIndex = 4.min(mgr.nvars());
    let (start, end, _) = ord.block_of(0);
    if end < start + k {
        return Err(Error::NonSymmetricOrdering);
    }
    let monomials: Vec<NodeId> = (0u32..1 << k)
        .map(|mask| {
            let vars: Vec<VarIndex> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            mgr.monomial(&vars)
        })
        .collect();
    let strat = Strategy { symmetry: false, table: None, ..Strategy::default() };
    let slot = mgr.ordering_slot(ord);
    let name = ord.to_string();
    let mut lines = Vec::new();
    for bits in 2u64..1 << monomials.len() {
        let mut f = NodeId::ZERO;
        for (i, &m) in monomials.iter().enumerate() {
            if bits >> i & 1 == 1 {
                f = mgr.add(f, m);
            }
        }
        let (factors, core) = factor_nodes(mgr, f);
        if !factors.is_empty() {
            continue;
        }
        let (shifted, _, _) = shift_nodes(mgr, core, ord)?;
        if shifted != f {
            continue;
        }
        let (basis, _) = Engine::new(mgr, ord.clone(), strat.clone()).without_symmetry().run(&[f]);
        let mut line = String::new();
        let _ = write!(line, "{name}\t{}\t", node_string(mgr, f));
        line.push_str(&basis.iter().map(|&b| node_string(mgr, b)).collect::<Vec<_>>().join(";"));
        mgr.sym_cache.insert((slot, f), basis);
        lines.push(line);
    }
    Ok(lines)
}
