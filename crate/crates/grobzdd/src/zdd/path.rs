use super::{NodeId, VarIndex, ZddManager};
use crate::error::{Error, Result};

/// A root-to-1 path, stored as the visited decision nodes and the edge taken
/// at each (`true` for the then-edge).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    steps: Vec<(NodeId, bool)>,
}

impl Path {
    pub fn steps(&self) -> &[(NodeId, bool)] {
        &self.steps
    }
}

impl ZddManager {
    /// The all-then path of `f`.
    pub fn first_path(&self, f: NodeId) -> Result<Path> {
        if f == NodeId::ZERO {
            return Err(Error::ZeroPolynomial);
        }
        let mut p = Path { steps: Vec::new() };
        self.descend(&mut p, f);
        Ok(p)
    }

    fn descend(&self, p: &mut Path, mut f: NodeId) {
        while !f.is_terminal() {
            p.steps.push((f, true));
            f = self.hi(f);
        }
    }

    /// Advances `p` to its successor in the natural path sequence. Returns
    /// `false` (leaving `p` empty) when `p` was the last path.
    pub fn succ_path(&self, p: &mut Path) -> bool {
        while let Some((node, took_then)) = p.steps.pop() {
            if took_then {
                let lo = self.lo(node);
                if lo != NodeId::ZERO {
                    p.steps.push((node, false));
                    self.descend(p, lo);
                    return true;
                }
            }
        }
        false
    }

    /// Variable list of a path, looked up through the manager.
    pub fn path_monomial(&self, p: &Path) -> Vec<VarIndex> {
        p.steps.iter().filter(|s| s.1).map(|s| self.var(s.0)).collect()
    }
}

/// Iterates the members of a family in natural path order.
pub struct PathIter<'a> {
    mgr: &'a ZddManager,
    path: Option<Path>,
}

impl<'a> PathIter<'a> {
    pub fn new(mgr: &'a ZddManager, f: NodeId) -> PathIter<'a> {
        PathIter { mgr, path: mgr.first_path(f).ok() }
    }
}

impl Iterator for PathIter<'_> {
    type Item = Vec<VarIndex>;

    fn next(&mut self) -> Option<Vec<VarIndex>> {
        let p = self.path.as_mut()?;
        let out = self.mgr.path_monomial(p);
        if !self.mgr.succ_path(p) {
            self.path = None;
        }
        Some(out)
    }
}
