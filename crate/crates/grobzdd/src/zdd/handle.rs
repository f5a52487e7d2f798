use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;

use super::{NodeId, VarIndex, ZddManager};
use crate::error::{Error, Result};

/// Shared, single-threaded manager handle.
pub type ManagerRef = Rc<RefCell<ZddManager>>;

/// A node id bound to the manager that owns it.
#[derive(Clone)]
pub struct Zdd {
    id: NodeId,
    mgr: ManagerRef,
}

impl fmt::Debug for Zdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members = self.mgr.borrow().members(self.id);
        f.debug_struct("Zdd").field("id", &self.id.0).field("members", &members).finish()
    }
}

impl PartialEq for Zdd {
    fn eq(&self, other: &Zdd) -> bool {
        self.id == other.id && Rc::ptr_eq(&self.mgr, &other.mgr)
    }
}

impl Eq for Zdd {}

impl Zdd {
    pub fn new(mgr: &ManagerRef, id: NodeId) -> Zdd {
        Zdd { id, mgr: mgr.clone() }
    }

    pub fn empty(mgr: &ManagerRef) -> Zdd {
        Zdd::new(mgr, NodeId::ZERO)
    }

    pub fn base(mgr: &ManagerRef) -> Zdd {
        Zdd::new(mgr, NodeId::ONE)
    }

    pub fn id(&self) -> NodeId {
        self.id
    }

    pub fn manager(&self) -> &ManagerRef {
        &self.mgr
    }

    pub fn is_empty(&self) -> bool {
        self.id == NodeId::ZERO
    }

    fn same(&self, other: &Zdd) -> Result<()> {
        if Rc::ptr_eq(&self.mgr, &other.mgr) {
            Ok(())
        } else {
            Err(Error::ManagerMismatch)
        }
    }

    fn wrap(&self, id: NodeId) -> Zdd {
        Zdd { id, mgr: self.mgr.clone() }
    }

    fn binary(&self, other: &Zdd, op: fn(&mut ZddManager, NodeId, NodeId) -> NodeId) -> Result<Zdd> {
        self.same(other)?;
        let id = op(&mut self.mgr.borrow_mut(), self.id, other.id);
        Ok(self.wrap(id))
    }

    /// If-then-else node on `v`; zero-suppressed when `hi` is empty.
    pub fn mk_node(v: VarIndex, hi: &Zdd, lo: &Zdd) -> Result<Zdd> {
        hi.same(lo)?;
        let id = hi.mgr.borrow_mut().mk_node(v, hi.id, lo.id)?;
        Ok(hi.wrap(id))
    }

    pub fn top(&self) -> Result<VarIndex> {
        self.mgr.borrow().top(self.id)
    }

    pub fn then_branch(&self) -> Result<Zdd> {
        let id = self.mgr.borrow().then_branch(self.id)?;
        Ok(self.wrap(id))
    }

    pub fn else_branch(&self) -> Result<Zdd> {
        let id = self.mgr.borrow().else_branch(self.id)?;
        Ok(self.wrap(id))
    }

    pub fn union(&self, other: &Zdd) -> Result<Zdd> {
        self.binary(other, ZddManager::union)
    }

    pub fn intersect(&self, other: &Zdd) -> Result<Zdd> {
        self.binary(other, ZddManager::intersect)
    }

    pub fn diff(&self, other: &Zdd) -> Result<Zdd> {
        self.binary(other, ZddManager::diff)
    }

    pub fn sym_diff(&self, other: &Zdd) -> Result<Zdd> {
        self.binary(other, ZddManager::add)
    }

    pub fn subset1(&self, v: VarIndex) -> Zdd {
        let id = self.mgr.borrow_mut().subset1(self.id, v);
        self.wrap(id)
    }

    pub fn subset0(&self, v: VarIndex) -> Zdd {
        let id = self.mgr.borrow_mut().subset0(self.id, v);
        self.wrap(id)
    }

    /// Members of `self` that are subsets of the single-path family `m`.
    pub fn divisors_within(&self, m: &Zdd) -> Result<Zdd> {
        self.binary(m, ZddManager::divisors_within)
    }

    pub fn count_paths(&self) -> u128 {
        self.mgr.borrow().count_paths(self.id)
    }

    pub fn members(&self) -> Vec<Vec<VarIndex>> {
        self.mgr.borrow().members(self.id)
    }

    pub fn first_path(&self) -> Result<super::Path> {
        self.mgr.borrow().first_path(self.id)
    }

    pub fn succ_path(&self, p: &mut super::Path) -> bool {
        self.mgr.borrow().succ_path(p)
    }
}
