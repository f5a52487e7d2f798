use proptest::prelude::*;

use super::*;

const N: u32 = 6;

/// Families over six variables as 64-bit masks: bit `s` is set when the set
/// with variable bitmask `s` is a member.
fn build(mgr: &mut ZddManager, fam: u64) -> NodeId {
    let mut r = NodeId::ZERO;
    for s in 0..64u32 {
        if fam >> s & 1 == 1 {
            let vars: Vec<u32> = (0..N).filter(|v| s >> v & 1 == 1).collect();
            let m = mgr.monomial(&vars);
            r = mgr.union(r, m);
        }
    }
    r
}

fn read(mgr: &ZddManager, f: NodeId) -> u64 {
    let mut fam = 0u64;
    for m in mgr.members(f) {
        let s: u32 = m.iter().map(|v| 1u32 << v).sum();
        fam |= 1 << s;
    }
    fam
}

fn oracle_mul(f: u64, g: u64) -> u64 {
    let mut r = 0u64;
    for s in 0..64 {
        for t in 0..64 {
            if f >> s & 1 == 1 && g >> t & 1 == 1 {
                r ^= 1 << (s | t);
            }
        }
    }
    r
}

#[test]
fn zero_suppression_and_canonicity() {
    let mut m = ZddManager::new(3);
    let g = m.variable(2);
    assert_eq!(m.mk_node(0, NodeId::ZERO, g).unwrap(), g);
    let a = m.mk_node(0, NodeId::ONE, NodeId::ZERO).unwrap();
    let b = m.mk_node(0, NodeId::ONE, NodeId::ZERO).unwrap();
    assert_eq!(a, b);
    assert!(matches!(m.mk_node(2, a, NodeId::ZERO), Err(Error::VariableOrder { .. })));
    assert!(m.mk_node(5, NodeId::ONE, NodeId::ZERO).is_err());
}

#[test]
fn ac_plus_c_shares_the_c_node() {
    // a > b > c as indices 0, 1, 2
    let mut m = ZddManager::new(3);
    let f = m.from_sets(&[vec![0, 2], vec![2]]);
    assert_eq!(m.dag_size(f), 2);
    assert_eq!(m.hi(f), m.lo(f));
    assert_eq!(m.top(f).unwrap(), 0);
    let c = m.variable(2);
    assert_eq!(m.else_branch(f).unwrap(), c);
    assert_eq!(m.then_branch(c).unwrap(), NodeId::ONE);
    assert!(m.top(NodeId::ONE).is_err());
    assert_eq!(m.subset1(f, 0), c);
    assert_eq!(m.subset0(f, 0), c);
    assert_eq!(m.subset1(f, 1), NodeId::ZERO);
}

#[test]
fn set_algebra_examples() {
    let mut m = ZddManager::new(3);
    let s = m.from_sets(&[vec![0u32, 1], vec![2]]);
    assert_eq!(m.union(s, NodeId::ZERO), s);
    assert_eq!(m.intersect(s, s), s);
    let a = m.variable(0);
    let both = m.union(NodeId::ONE, a);
    assert_eq!(m.diff(both, a), NodeId::ONE);
}

#[test]
fn divisors_within_examples() {
    let mut m = ZddManager::new(3);
    let leads = m.from_sets(&[vec![0u32], vec![0, 1], vec![2]]);
    let xy = m.monomial(&[0, 1]);
    let expect = m.from_sets(&[vec![0u32], vec![0, 1]]);
    assert_eq!(m.divisors_within(leads, xy), expect);
    assert_eq!(m.divisors_within(leads, NodeId::ONE), NodeId::ZERO);
    let with_one = m.union(leads, NodeId::ONE);
    assert_eq!(m.divisors_within(with_one, NodeId::ONE), NodeId::ONE);
    assert_eq!(m.divisors_within(NodeId::ZERO, xy), NodeId::ZERO);
}

#[test]
fn path_sequence_examples() {
    let mut m = ZddManager::new(3);
    let f = m.from_sets(&[vec![0u32, 2], vec![2]]);
    let mut p = m.first_path(f).unwrap();
    assert_eq!(m.path_monomial(&p), vec![0, 2]);
    assert!(m.succ_path(&mut p));
    assert_eq!(m.path_monomial(&p), vec![2]);
    assert!(!m.succ_path(&mut p));
    assert!(m.first_path(NodeId::ZERO).is_err());
}

#[test]
fn count_paths_examples() {
    let mut m = ZddManager::new(3);
    assert_eq!(m.count_paths(NodeId::ZERO), 0);
    assert_eq!(m.count_paths(NodeId::ONE), 1);
    let f = m.from_sets(&[vec![0u32, 2], vec![1, 2], vec![2]]);
    assert_eq!(m.count_paths(f), 3);
    let full = m.power_set();
    assert_eq!(m.count_paths(full), 8);
    assert_eq!(m.dag_size(full), 3);
}

#[test]
fn minimal_elements_and_closure() {
    let mut m = ZddManager::new(3);
    let s = m.from_sets(&[vec![0u32], vec![0, 1]]);
    let x = m.variable(0);
    assert_eq!(m.minimal_elements(s), x);
    let anti = m.from_sets(&[vec![0u32], vec![1, 2]]);
    assert_eq!(m.minimal_elements(anti), anti);
    assert_eq!(m.minimal_elements(NodeId::ZERO), NodeId::ZERO);
    let xy = m.monomial(&[0, 1]);
    let closed = m.from_sets(&[vec![], vec![0u32], vec![1], vec![0, 1]]);
    assert_eq!(m.subset_closure(xy), closed);
}

proptest! {
    #[test]
    fn set_ops_match_bitmask_oracle(f in any::<u64>(), g in any::<u64>()) {
        let mut m = ZddManager::new(N);
        let (zf, zg) = (build(&mut m, f), build(&mut m, g));
        let u = m.union(zf, zg);
        prop_assert_eq!(read(&m, u), f | g);
        let i = m.intersect(zf, zg);
        prop_assert_eq!(read(&m, i), f & g);
        let d = m.diff(zf, zg);
        prop_assert_eq!(read(&m, d), f & !g);
        let a = m.add(zf, zg);
        prop_assert_eq!(read(&m, a), f ^ g);
        prop_assert_eq!(m.count_paths(u) + m.count_paths(i), m.count_paths(zf) + m.count_paths(zg));
        m.check_invariants().unwrap();
    }

    #[test]
    fn mul_matches_oracle(f in any::<u64>(), g in any::<u64>()) {
        let mut m = ZddManager::new(N);
        let (zf, zg) = (build(&mut m, f), build(&mut m, g));
        let p = m.mul(zf, zg);
        prop_assert_eq!(read(&m, p), oracle_mul(f, g));
        let q = m.mul(zg, zf);
        prop_assert_eq!(p, q);
    }

    #[test]
    fn canonical_across_construction_orders(f in any::<u64>()) {
        let mut m = ZddManager::new(N);
        let a = build(&mut m, f);
        // rebuild by descending insertion and symmetric differences
        let mut b = NodeId::ZERO;
        for s in (0..64u32).rev() {
            if f >> s & 1 == 1 {
                let vars: Vec<u32> = (0..N).filter(|v| s >> v & 1 == 1).collect();
                let t = m.monomial(&vars);
                b = m.add(b, t);
            }
        }
        prop_assert_eq!(a, b);
    }

    #[test]
    fn cofactors_and_divisors(f in any::<u64>(), v in 0..N, msk in 0u32..64) {
        let mut m = ZddManager::new(N);
        let z = build(&mut m, f);
        let s1 = m.subset1(z, v);
        let s0 = m.subset0(z, v);
        let mut e1 = 0u64;
        let mut e0 = 0u64;
        for s in 0..64u32 {
            if f >> s & 1 == 1 {
                if s >> v & 1 == 1 { e1 |= 1 << (s & !(1 << v)); } else { e0 |= 1 << s; }
            }
        }
        prop_assert_eq!(read(&m, s1), e1);
        prop_assert_eq!(read(&m, s0), e0);
        let vars: Vec<u32> = (0..N).filter(|x| msk >> x & 1 == 1).collect();
        let mono = m.monomial(&vars);
        let d = m.divisors_within(z, mono);
        let mut ed = 0u64;
        for s in 0..64u32 {
            if f >> s & 1 == 1 && s & !msk == 0 { ed |= 1 << s; }
        }
        prop_assert_eq!(read(&m, d), ed);
    }

    #[test]
    fn nf_monomial_set_drops_multiples(f in any::<u64>(), g in any::<u64>()) {
        let mut m = ZddManager::new(N);
        let (zf, zg) = (build(&mut m, f), build(&mut m, g));
        let r = m.nf_monomial_set(zf, zg);
        let mut e = 0u64;
        for s in 0..64u32 {
            let divisible = (0..64u32).any(|t| g >> t & 1 == 1 && t & !s == 0);
            if f >> s & 1 == 1 && !divisible { e |= 1 << s; }
        }
        prop_assert_eq!(read(&m, r), e);
    }

    #[test]
    fn natural_path_sequence_is_lex_descending(f in any::<u64>()) {
        let mut m = ZddManager::new(N);
        let z = build(&mut m, f);
        let ms = m.members(z);
        prop_assert_eq!(ms.len() as u128, m.count_paths(z));
        for w in ms.windows(2) {
            prop_assert_eq!(crate::boolpoly::Ordering::Lex.compare(&w[0], &w[1]), std::cmp::Ordering::Greater);
        }
        for p in &ms {
            prop_assert!(p.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn minimal_elements_oracle(f in any::<u64>()) {
        let mut m = ZddManager::new(N);
        let z = build(&mut m, f);
        let r = m.minimal_elements(z);
        let mut e = 0u64;
        for s in 0..64u32 {
            let proper = (0..64u32).any(|t| t != s && f >> t & 1 == 1 && t & !s == 0);
            if f >> s & 1 == 1 && !proper { e |= 1 << s; }
        }
        prop_assert_eq!(read(&m, r), e);
    }
}
