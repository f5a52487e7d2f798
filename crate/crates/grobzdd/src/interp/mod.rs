//! Variety-level algorithms over point sets in `{0,1}^n`.
//!
//! A point `v` is stored as the set `{i | v_i = 1}`, so a set of points is a
//! ZDD in the ring's manager. Interpolation and normal forms here are with
//! respect to lex, whatever the ring ordering.

mod kernel;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolpoly::{BoolPoly, BoolRing, Ordering};
use crate::error::{Error, Result};
use crate::zdd::{NodeId, VarIndex, Zdd};

/// Default seed of the random subsets drawn by [`standard_monomials`].
pub const DEFAULT_SEED: u64 = 0;

/// Iteration cap of [`standard_monomials`].
pub const MAX_ITERATIONS: u32 = 64;

/// A set of points of `{0,1}^n`, `n` the number of ring variables.
#[derive(Clone)]
pub struct PointSet {
    ring: BoolRing,
    id: NodeId,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &PointSet) -> bool {
        self.id == other.id && self.ring.compatible(&other.ring)
    }
}

impl Eq for PointSet {}

impl std::fmt::Debug for PointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.points().iter().map(|p| bits(p))).finish()
    }
}

fn bits(p: &[bool]) -> String {
    p.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl PointSet {
    pub fn empty(ring: &BoolRing) -> PointSet {
        PointSet { ring: ring.clone(), id: NodeId::ZERO }
    }

    /// All `2^n` points.
    pub fn full(ring: &BoolRing) -> PointSet {
        let id = ring.manager().borrow_mut().power_set();
        PointSet { ring: ring.clone(), id }
    }

    pub fn from_points<P: AsRef<[bool]>>(ring: &BoolRing, points: &[P]) -> Result<PointSet> {
        let n = ring.nvars();
        let mut sets = Vec::with_capacity(points.len());
        for p in points {
            let p = p.as_ref();
            if p.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: p.len() });
            }
            sets.push((0..n as VarIndex).filter(|&i| p[i as usize]).collect::<Vec<_>>());
        }
        let id = ring.manager().borrow_mut().from_sets(&sets);
        Ok(PointSet { ring: ring.clone(), id })
    }

    /// Parses one point per line as a 0/1 string of length `n`. Blank lines
    /// and `#` comments are skipped.
    pub fn parse(ring: &BoolRing, src: &str) -> Result<PointSet> {
        let mut pts = Vec::new();
        for (k, line) in src.lines().enumerate() {
            let t = line.split('#').next().unwrap_or("").trim();
            if t.is_empty() {
                continue;
            }
            let mut p = Vec::with_capacity(t.len());
            for (col, ch) in t.chars().enumerate() {
                match ch {
                    '0' => p.push(false),
                    '1' => p.push(true),
                    _ => return Err(Error::parse(k + 1, col + 1, format!("expected 0 or 1, found {ch:?}"))),
                }
            }
            if p.len() != ring.nvars() {
                return Err(Error::parse(
                    k + 1,
                    1,
                    format!("point has {} coordinates, expected {}", p.len(), ring.nvars()),
                ));
            }
            pts.push(p);
        }
        PointSet::from_points(ring, &pts)
    }

    /// Wraps a family whose members are point supports.
    pub fn from_zdd(ring: &BoolRing, z: &Zdd) -> Result<PointSet> {
        if !std::rc::Rc::ptr_eq(ring.manager(), z.manager()) {
            return Err(Error::ManagerMismatch);
        }
        Ok(PointSet { ring: ring.clone(), id: z.id() })
    }

    pub fn ring(&self) -> &BoolRing {
        &self.ring
    }

    pub fn id(&self) -> NodeId {
        self.id
    }

    pub fn zdd(&self) -> Zdd {
        Zdd::new(self.ring.manager(), self.id)
    }

    pub fn len(&self) -> u128 {
        self.ring.manager().borrow().count_paths(self.id)
    }

    pub fn is_empty(&self) -> bool {
        self.id == NodeId::ZERO
    }

    pub fn contains(&self, p: &[bool]) -> bool {
        let vars: Vec<VarIndex> = (0..p.len() as VarIndex).filter(|&i| p[i as usize]).collect();
        self.ring.manager().borrow().contains_set(self.id, &vars)
    }

    /// Points in natural path order.
    pub fn points(&self) -> Vec<Vec<bool>> {
        let n = self.ring.nvars();
        self.ring
            .manager()
            .borrow()
            .members(self.id)
            .into_iter()
            .map(|s| {
                let mut p = vec![false; n];
                for v in s {
                    p[v as usize] = true;
                }
                p
            })
            .collect()
    }

    /// One line per point.
    pub fn to_text(&self) -> String {
        self.points().iter().map(|p| bits(p) + "\n").collect()
    }

    fn with(&self, id: NodeId) -> PointSet {
        PointSet { ring: self.ring.clone(), id }
    }

    fn binop(
        &self,
        other: &PointSet,
        f: fn(&mut crate::zdd::ZddManager, NodeId, NodeId) -> NodeId,
    ) -> Result<PointSet> {
        if !self.ring.compatible(&other.ring) {
            return Err(Error::ManagerMismatch);
        }
        let id = f(&mut self.ring.manager().borrow_mut(), self.id, other.id);
        Ok(self.with(id))
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.binop(other, |m, a, b| m.union(a, b))
    }

    pub fn intersect(&self, other: &PointSet) -> Result<PointSet> {
        self.binop(other, |m, a, b| m.intersect(a, b))
    }

    pub fn diff(&self, other: &PointSet) -> Result<PointSet> {
        self.binop(other, |m, a, b| m.diff(a, b))
    }

    pub fn sym_diff(&self, other: &PointSet) -> Result<PointSet> {
        self.binop(other, |m, a, b| m.add(a, b))
    }
}

/// A partial Boolean function: 0 on `zeros`, 1 on `ones`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFn {
    zeros: PointSet,
    ones: PointSet,
}

impl PartialFn {
    pub fn new(zeros: PointSet, ones: PointSet) -> Result<PartialFn> {
        if !zeros.intersect(&ones)?.is_empty() {
            return Err(Error::OverlappingPartialFn);
        }
        Ok(PartialFn { zeros, ones })
    }

    pub fn zeros(&self) -> &PointSet {
        &self.zeros
    }

    pub fn ones(&self) -> &PointSet {
        &self.ones
    }

    pub fn domain(&self) -> PointSet {
        self.zeros.union(&self.ones).expect("same ring by construction")
    }

    /// Sum on the common domain.
    pub fn add(&self, other: &PartialFn) -> Result<PartialFn> {
        let dom = self.domain().intersect(&other.domain())?;
        let z = self.zeros.intersect(&other.zeros)?.union(&self.ones.intersect(&other.ones)?)?;
        let o = self.ones.sym_diff(&other.ones)?.intersect(&dom)?;
        let z = z.intersect(&dom)?;
        Ok(PartialFn { zeros: z, ones: o })
    }
}

fn same(p: &BoolPoly, s: &PointSet) -> Result<()> {
    if p.ring().compatible(&s.ring) {
        Ok(())
    } else {
        Err(Error::ManagerMismatch)
    }
}

/// Points of `s` where `p` vanishes.
pub fn zeros(p: &BoolPoly, s: &PointSet) -> Result<PointSet> {
    same(p, s)?;
    let id = s.ring.manager().borrow_mut().zeros(p.id(), s.id);
    Ok(s.with(id))
}

/// Points of `s` where `p` is 1.
pub fn ones(p: &BoolPoly, s: &PointSet) -> Result<PointSet> {
    same(p, s)?;
    let id = s.ring.manager().borrow_mut().ones(p.id(), s.id);
    Ok(s.with(id))
}

/// Some polynomial agreeing with `b` on its domain.
pub fn interpolate_simple(b: &PartialFn) -> BoolPoly {
    let ring = &b.zeros.ring;
    let id = ring.manager().borrow_mut().interpolate_simple(b.zeros.id, b.ones.id);
    ring.poly(id)
}

/// The lex-smallest polynomial agreeing with `b` on its domain.
pub fn interpolate_smallest_lex(b: &PartialFn) -> BoolPoly {
    let ring = &b.zeros.ring;
    let id = ring.manager().borrow_mut().interpolate_smallest_lex(b.zeros.id, b.ones.id);
    ring.poly(id)
}

/// Reduced lex normal form of `f` modulo the vanishing ideal of `p`.
pub fn nf_by_interpolate(f: &BoolPoly, p: &PointSet) -> Result<BoolPoly> {
    same(f, p)?;
    let mut mgr = p.ring.manager().borrow_mut();
    let z = mgr.zeros(f.id(), p.id);
    let o = mgr.diff(p.id, z);
    let id = mgr.interpolate_smallest_lex(z, o);
    drop(mgr);
    Ok(p.ring.poly(id))
}

/// Lex standard monomials of the vanishing ideal of `p`, as a monomial
/// family. Interpolates random 0/1 labellings of `p` (one fair coin per
/// point) until the divisor closure of the supports has `|p|` members.
pub fn standard_monomials(p: &PointSet, seed: u64) -> Result<Zdd> {
    let target = p.len();
    let pts = p.ring.manager().borrow().members(p.id);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mgr = p.ring.manager().borrow_mut();
    let mut s = NodeId::ZERO;
    let mut iterations = 0;
    while mgr.count_paths(s) != target {
        if iterations == MAX_ITERATIONS {
            return Err(Error::IterationCap { iterations, seed });
        }
        iterations += 1;
        let chosen: Vec<&Vec<VarIndex>> = pts.iter().filter(|_| rng.gen::<bool>()).collect();
        let z = mgr.from_sets(&chosen);
        let o = mgr.diff(p.id, z);
        let q = mgr.interpolate_smallest_lex(z, o);
        s = mgr.union(s, q);
        s = mgr.subset_closure(s);
    }
    drop(mgr);
    Ok(Zdd::new(p.ring.manager(), s))
}

/// Minimal members of `s` under inclusion (divisibility of monomials).
pub fn minimal_elements(s: &Zdd) -> Zdd {
    let id = s.manager().borrow_mut().minimal_elements(s.id());
    Zdd::new(s.manager(), id)
}

/// Leading monomials of the reduced lex basis of the vanishing ideal of `p`.
pub fn leading_monomials_variety(p: &PointSet) -> Result<Zdd> {
    leading_monomials_variety_seeded(p, DEFAULT_SEED)
}

pub fn leading_monomials_variety_seeded(p: &PointSet, seed: u64) -> Result<Zdd> {
    let std = standard_monomials(p, seed)?;
    let mut mgr = p.ring.manager().borrow_mut();
    let all = mgr.power_set();
    let rest = mgr.diff(all, std.id());
    let id = mgr.minimal_elements(rest);
    drop(mgr);
    Ok(Zdd::new(p.ring.manager(), id))
}

/// Reduced lex Boolean Gröbner basis of the vanishing ideal of `p`, sorted by
/// leading monomial, largest first.
pub fn points_gb(p: &PointSet) -> Result<Vec<BoolPoly>> {
    points_gb_seeded(p, DEFAULT_SEED)
}

pub fn points_gb_seeded(p: &PointSet, seed: u64) -> Result<Vec<BoolPoly>> {
    let leads = leading_monomials_variety_seeded(p, seed)?;
    let ring = &p.ring;
    let mut mgr = ring.manager().borrow_mut();
    let mut out = Vec::new();
    for t in mgr.terms_sorted(leads.id(), &Ordering::Lex) {
        let m = mgr.monomial(&t);
        let z = mgr.zeros(m, p.id);
        let o = mgr.diff(p.id, z);
        let tail = mgr.interpolate_smallest_lex(z, o);
        out.push(mgr.add(m, tail));
    }
    drop(mgr);
    Ok(out.into_iter().map(|g| ring.poly(g)).collect())
}
