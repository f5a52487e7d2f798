//! Boolean polynomials: polynomials over Z/2 modulo the field relations
//! `x² = x`, stored as the ZDD of their term set.
//!
//! A term is a set of variables, so a polynomial is a family of sets and
//! addition is symmetric difference. Multiplication merges terms and cancels
//! pairs, giving the canonical representative of the product.

mod kernel;
mod ordering;

pub use ordering::{Block, BlockKind, Ordering};

use std::cell::RefCell;
use std::cmp::Ordering as Cmp;
use std::fmt;
use std::ops::{Add, Mul};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::text::{parse_raw, parse_system_text, RawPoly};
use crate::zdd::{ManagerRef, NodeId, VarIndex, Zdd, ZddManager};

struct RingData {
    mgr: ManagerRef,
    names: Vec<String>,
    ordering: Ordering,
}

/// `Z/2[x_0..x_{n-1}] / FP` with variable names and an active ordering.
#[derive(Clone)]
pub struct BoolRing(Rc<RingData>);

impl fmt::Debug for BoolRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoolRing").field("names", &self.0.names).field("ordering", &self.0.ordering).finish()
    }
}

impl BoolRing {
    pub fn new<S: AsRef<str>>(names: &[S], ordering: Ordering) -> Result<BoolRing> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::InvalidOrdering("a ring needs at least one variable".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidOrdering(format!("duplicate variable name `{n}`")));
            }
        }
        ordering.validate(names.len() as u32)?;
        let mgr = Rc::new(RefCell::new(ZddManager::new(names.len() as u32)));
        Ok(BoolRing(Rc::new(RingData { mgr, names, ordering })))
    }

    /// Ring on `x0..x{n-1}`.
    pub fn with_vars(n: usize, ordering: Ordering) -> Result<BoolRing> {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        BoolRing::new(&names, ordering)
    }

    /// Same manager and names under another ordering.
    pub fn with_ordering(&self, ordering: Ordering) -> Result<BoolRing> {
        ordering.validate(self.nvars() as u32)?;
        Ok(BoolRing(Rc::new(RingData { mgr: self.0.mgr.clone(), names: self.0.names.clone(), ordering })))
    }

    pub fn manager(&self) -> &ManagerRef {
        &self.0.mgr
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn ordering(&self) -> &Ordering {
        &self.0.ordering
    }

    pub fn var_index(&self, name: &str) -> Option<VarIndex> {
        self.0.names.iter().position(|n| n == name).map(|i| i as VarIndex)
    }

    /// Shares the manager with `other`.
    pub fn compatible(&self, other: &BoolRing) -> bool {
        Rc::ptr_eq(&self.0.mgr, &other.0.mgr)
    }

    pub fn poly(&self, id: NodeId) -> BoolPoly {
        BoolPoly { ring: self.clone(), id }
    }

    pub fn zero(&self) -> BoolPoly {
        self.poly(NodeId::ZERO)
    }

    pub fn one(&self) -> BoolPoly {
        self.poly(NodeId::ONE)
    }

    pub fn var(&self, v: VarIndex) -> BoolPoly {
        let id = self.0.mgr.borrow_mut().variable(v);
        self.poly(id)
    }

    /// Variable by name; panics on unknown names.
    pub fn named(&self, name: &str) -> BoolPoly {
        let v = self.var_index(name).unwrap_or_else(|| panic!("unknown variable `{name}`"));
        self.var(v)
    }

    pub fn monomial(&self, vars: &[VarIndex]) -> BoolMonomial {
        let id = self.0.mgr.borrow_mut().monomial(vars);
        BoolMonomial::from_node(self, id)
    }

    /// Polynomial from explicit terms (each a variable list); repeated terms cancel.
    pub fn from_terms<S: AsRef<[VarIndex]>>(&self, terms: &[S]) -> BoolPoly {
        let mut mgr = self.0.mgr.borrow_mut();
        let mut acc = NodeId::ZERO;
        for t in terms {
            let m = mgr.monomial(t.as_ref());
            acc = mgr.add(acc, m);
        }
        drop(mgr);
        self.poly(acc)
    }

    fn poly_of_raw(&self, raw: &RawPoly) -> BoolPoly {
        let mut mgr = self.0.mgr.borrow_mut();
        let mut acc = NodeId::ZERO;
        for t in raw {
            if t.coeff.rem_euclid(2) == 0 {
                continue;
            }
            let vars: Vec<VarIndex> = t.vars.iter().map(|&(v, _)| v as VarIndex).collect();
            let m = mgr.monomial(&vars);
            acc = mgr.add(acc, m);
        }
        drop(mgr);
        self.poly(acc)
    }

    /// Parses one polynomial; `x^k` becomes `x` for `k ≥ 1`.
    pub fn parse(&self, s: &str) -> Result<BoolPoly> {
        self.parse_at(s, 1, 0)
    }

    pub(crate) fn parse_at(&self, s: &str, line: usize, column: usize) -> Result<BoolPoly> {
        let raw = parse_raw(s, &self.0.names, line, column)?;
        Ok(self.poly_of_raw(&raw))
    }

    /// Parses a system file (see [`crate::text`]). `ordering` overrides the
    /// file's `order` line; the default is lex.
    pub fn parse_system(src: &str, ordering: Option<Ordering>) -> Result<(BoolRing, Vec<BoolPoly>)> {
        let sys = parse_system_text(src)?;
        let ord = match (ordering, &sys.order) {
            (Some(o), _) => o,
            (None, Some(s)) => s.parse()?,
            (None, None) => Ordering::Lex,
        };
        let ring = BoolRing::new(&sys.vars, ord)?;
        let polys = sys.polys.iter().map(|(line, text)| ring.parse_at(text, *line, 0)).collect::<Result<Vec<_>>>()?;
        Ok((ring, polys))
    }

    /// Renders a system in the file format.
    pub fn format_system(&self, polys: &[BoolPoly]) -> String {
        let mut out = format!("vars {}\norder {}\n", self.0.names.join(" "), self.0.ordering);
        for p in polys {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    fn fmt_term(&self, vars: &[VarIndex]) -> String {
        if vars.is_empty() {
            return "1".into();
        }
        vars.iter().map(|&v| self.0.names[v as usize].as_str()).collect::<Vec<_>>().join("*")
    }
}

/// A Boolean polynomial bound to its ring.
#[derive(Clone)]
pub struct BoolPoly {
    ring: BoolRing,
    id: NodeId,
}

impl PartialEq for BoolPoly {
    fn eq(&self, other: &BoolPoly) -> bool {
        self.id == other.id && self.ring.compatible(&other.ring)
    }
}

impl Eq for BoolPoly {}

impl std::hash::Hash for BoolPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

impl fmt::Debug for BoolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolPoly({self})")
    }
}

impl fmt::Display for BoolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms = self.terms();
        let parts: Vec<String> = terms.iter().map(|m| self.ring.fmt_term(&m.vars())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl BoolPoly {
    pub fn ring(&self) -> &BoolRing {
        &self.ring
    }

    pub fn id(&self) -> NodeId {
        self.id
    }

    pub fn zdd(&self) -> Zdd {
        Zdd::new(self.ring.manager(), self.id)
    }

    pub fn is_zero(&self) -> bool {
        self.id == NodeId::ZERO
    }

    pub fn is_one(&self) -> bool {
        self.id == NodeId::ONE
    }

    fn mgr(&self) -> std::cell::RefMut<'_, ZddManager> {
        self.ring.0.mgr.borrow_mut()
    }

    fn wrap(&self, id: NodeId) -> BoolPoly {
        self.ring.poly(id)
    }

    fn check(&self, other: &BoolPoly) -> Result<()> {
        if self.ring.compatible(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &BoolPoly) -> Result<BoolPoly> {
        self.check(other)?;
        let id = self.mgr().add(self.id, other.id);
        Ok(self.wrap(id))
    }

    pub fn checked_mul(&self, other: &BoolPoly) -> Result<BoolPoly> {
        self.check(other)?;
        let id = self.mgr().mul(self.id, other.id);
        Ok(self.wrap(id))
    }

    pub fn mul_monomial(&self, m: &BoolMonomial) -> BoolPoly {
        let id = self.mgr().mul(self.id, m.id);
        self.wrap(id)
    }

    pub fn quotient_by_monomial(&self, m: &BoolMonomial) -> BoolPoly {
        let id = self.mgr().quotient_by_monomial(self.id, m.id);
        self.wrap(id)
    }

    /// Drops every term divisible by a member of the monomial set `g`.
    pub fn nf_monomial_set(&self, g: &Zdd) -> Result<BoolPoly> {
        if !Rc::ptr_eq(g.manager(), self.ring.manager()) {
            return Err(Error::ManagerMismatch);
        }
        let id = self.mgr().nf_monomial_set(self.id, g.id());
        Ok(self.wrap(id))
    }

    pub fn deg(&self) -> u32 {
        self.mgr().deg(self.id)
    }

    pub fn deg_bounded(&self, bound: u32) -> u32 {
        self.mgr().deg_bounded(self.id, bound)
    }

    /// Leading monomial under the ring's ordering.
    pub fn lead(&self) -> Result<BoolMonomial> {
        self.lead_with(&self.ring.0.ordering.clone())
    }

    pub fn lead_with(&self, ord: &Ordering) -> Result<BoolMonomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let id = self.mgr().lead(self.id, ord);
        Ok(BoolMonomial::from_node(&self.ring, id))
    }

    /// Terms in decreasing order under the ring's ordering.
    pub fn terms(&self) -> Vec<BoolMonomial> {
        self.terms_with(&self.ring.0.ordering.clone())
    }

    pub fn terms_with(&self, ord: &Ordering) -> Vec<BoolMonomial> {
        let lists = self.mgr().terms_sorted(self.id, ord);
        lists.iter().map(|t| self.ring.monomial(t)).collect()
    }

    pub fn n_terms(&self) -> u128 {
        self.ring.0.mgr.borrow().count_paths(self.id)
    }

    /// Value at a point given as `point[v] = x_v`.
    pub fn eval(&self, point: &[bool]) -> bool {
        assert_eq!(point.len(), self.ring.nvars(), "point length");
        self.ring.0.mgr.borrow().eval(self.id, point)
    }

    pub fn vars_of(&self) -> Vec<VarIndex> {
        self.ring.0.mgr.borrow().support(self.id)
    }

    /// `(lcm/lm f)·f + (lcm/lm g)·g` with Boolean products.
    pub fn spoly(&self, other: &BoolPoly) -> Result<BoolPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ord = self.ring.0.ordering.clone();
        let id = spoly_nodes(&mut self.mgr(), self.id, other.id, &ord);
        Ok(self.wrap(id))
    }
}

pub(crate) fn spoly_nodes(mgr: &mut ZddManager, f: NodeId, g: NodeId, ord: &Ordering) -> NodeId {
    let lf = mgr.lead(f, ord);
    let lg = mgr.lead(g, ord);
    let lf_vars = mgr.path_vars(lf);
    let lg_vars = mgr.path_vars(lg);
    let uf: Vec<VarIndex> = lg_vars.iter().copied().filter(|v| !lf_vars.contains(v)).collect();
    let ug: Vec<VarIndex> = lf_vars.iter().copied().filter(|v| !lg_vars.contains(v)).collect();
    let mf = mgr.monomial(&uf);
    let mg = mgr.monomial(&ug);
    let a = mgr.mul(f, mf);
    let b = mgr.mul(g, mg);
    mgr.add(a, b)
}

impl Add for &BoolPoly {
    type Output = BoolPoly;

    /// Panics if the operands live in different managers.
    fn add(self, rhs: &BoolPoly) -> BoolPoly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Mul for &BoolPoly {
    type Output = BoolPoly;

    /// Boolean product; panics if the operands live in different managers.
    fn mul(self, rhs: &BoolPoly) -> BoolPoly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

/// A single-term polynomial with its degree.
#[derive(Clone)]
pub struct BoolMonomial {
    ring: BoolRing,
    id: NodeId,
    deg: u32,
}

impl PartialEq for BoolMonomial {
    fn eq(&self, other: &BoolMonomial) -> bool {
        self.id == other.id && self.ring.compatible(&other.ring)
    }
}

impl Eq for BoolMonomial {}

impl fmt::Debug for BoolMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMonomial({self})")
    }
}

impl fmt::Display for BoolMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.fmt_term(&self.vars()))
    }
}

impl BoolMonomial {
    pub(crate) fn from_node(ring: &BoolRing, id: NodeId) -> BoolMonomial {
        let deg = ring.0.mgr.borrow().path_vars(id).len() as u32;
        BoolMonomial { ring: ring.clone(), id, deg }
    }

    pub fn id(&self) -> NodeId {
        self.id
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn vars(&self) -> Vec<VarIndex> {
        self.ring.0.mgr.borrow().path_vars(self.id)
    }

    pub fn to_poly(&self) -> BoolPoly {
        self.ring.poly(self.id)
    }

    pub fn divides(&self, other: &BoolMonomial) -> bool {
        let o = other.vars();
        self.vars().iter().all(|v| o.contains(v))
    }

    pub fn compare(&self, other: &BoolMonomial, ord: &Ordering) -> Cmp {
        self.ring.0.mgr.borrow().compare_monomials(self.id, other.id, ord)
    }
}
