use crate::zdd::{NodeId, Op, ZddManager};

impl ZddManager {
    /// Points of `s` where `p` evaluates to 0.
    pub fn zeros(&mut self, mut p: NodeId, s: NodeId) -> NodeId {
        if p == NodeId::ZERO {
            return s;
        }
        if p == NodeId::ONE || s == NodeId::ZERO {
            return NodeId::ZERO;
        }
        if s == NodeId::ONE {
            return if self.contains_empty(p) { NodeId::ZERO } else { s };
        }
        let top_s = self.var(s);
        // variables above the top of S are 0 at every point
        while self.var(p) < top_s {
            p = self.lo(p);
        }
        if let Some(r) = self.cache_get(Op::Zeros, p, s) {
            return r;
        }
        let i = self.var(p).min(top_s);
        let p0 = self.subset0(p, i);
        let p1 = self.subset1(p, i);
        let s0 = self.subset0(s, i);
        let s1 = self.subset1(s, i);
        let z00 = self.zeros(p0, s0);
        let z01 = self.zeros(p0, s1);
        let z11 = self.zeros(p1, s1);
        let odd = self.add(z01, z11);
        let hi = self.diff(s1, odd);
        let r = self.mk(i, hi, z00);
        self.cache_put(Op::Zeros, p, s, r)
    }

    /// Points of `s` where `p` evaluates to 1.
    pub fn ones(&mut self, p: NodeId, s: NodeId) -> NodeId {
        let z = self.zeros(p, s);
        self.diff(s, z)
    }

    /// Interpolant of the partial function that is 0 on `z` and 1 on `o`,
    /// built else-branch first.
    pub fn interpolate_simple(&mut self, z: NodeId, o: NodeId) -> NodeId {
        if z == NodeId::ZERO {
            return NodeId::ONE;
        }
        if o == NodeId::ZERO {
            return NodeId::ZERO;
        }
        if let Some(r) = self.cache_get(Op::Simple, z, o) {
            return r;
        }
        let i = self.var(z).min(self.var(o));
        let (z1, z0) = (self.subset1(z, i), self.subset0(z, i));
        let (o1, o0) = (self.subset1(o, i), self.subset0(o, i));
        let he = self.interpolate_simple(z0, o0);
        let h = self.interpolate_simple(z1, o1);
        let ht = self.add(h, he);
        let r = self.mk(i, ht, he);
        self.cache_put(Op::Simple, z, o, r)
    }

    /// Lex-smallest interpolant of the partial function that is 0 on `z` and
    /// 1 on `o`.
    pub fn interpolate_smallest_lex(&mut self, z: NodeId, o: NodeId) -> NodeId {
        if o == NodeId::ZERO {
            return NodeId::ZERO;
        }
        if z == NodeId::ZERO {
            return NodeId::ONE;
        }
        if let Some(r) = self.cache_get(Op::Isl, z, o) {
            return r;
        }
        let i = self.var(z).min(self.var(o));
        let (z1, z0) = (self.subset1(z, i), self.subset0(z, i));
        let (o1, o0) = (self.subset1(o, i), self.subset0(o, i));
        let d1 = self.union(z1, o1);
        let d0 = self.union(z0, o0);
        let c = self.intersect(d1, d0);
        // f + g on the conflict points C
        let same_z = self.intersect(z1, z0);
        let same_o = self.intersect(o1, o0);
        let cz = self.union(same_z, same_o);
        let cross_a = self.intersect(z1, o0);
        let cross_b = self.intersect(o1, z0);
        let co = self.union(cross_a, cross_b);
        let ht = self.interpolate_smallest_lex(cz, co);
        let free = self.diff(d1, c);
        let f = self.ones(ht, free);
        let z1c = self.diff(z1, c);
        let o1c = self.diff(o1, c);
        let wz = self.add(z1c, f);
        let wz = self.union(wz, z0);
        let wo = self.add(o1c, f);
        let wo = self.union(wo, o0);
        let he = self.interpolate_smallest_lex(wz, wo);
        let r = self.mk(i, ht, he);
        self.cache_put(Op::Isl, z, o, r)
    }
}
