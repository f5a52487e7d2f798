use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{mono_divides, mono_lcm};
use super::{Modulus, RingOrdering, ZmPoly};

/// Criteria switches for [`std_basis`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingCriteria {
    pub product: bool,
    pub chain: bool,
    pub zero: bool,
}

impl Default for RingCriteria {
    fn default() -> RingCriteria {
        RingCriteria { product: true, chain: true, zero: true }
    }
}

impl RingCriteria {
    pub fn none() -> RingCriteria {
        RingCriteria { product: false, chain: false, zero: false }
    }
}

/// Counters from one [`std_basis`] run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StdStats {
    pub pairs: u64,
    pub extended: u64,
    pub product: u64,
    pub chain: u64,
    pub zero: u64,
    pub zero_reductions: u64,
}

/// Weak normal form: reduces the lead term while it lies in the lead ideal
/// of the reducers. Reducers are chosen with the smallest maximal ecart; a
/// single reducer whose lead coefficient divides is preferred.
pub fn nf_ring(f: &ZmPoly, g: &[ZmPoly]) -> ZmPoly {
    let mut t: Vec<ZmPoly> = g.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut f = f.clone();
    let m = f.ring().modulus().clone();
    while let Some((c, e)) = f.lead_term().cloned() {
        let Some(chosen) = choose_reducers(&m, c, &e, &t) else { break };
        if chosen.iter().map(|&(i, _)| t[i].ecart()).max().unwrap_or(0) > 0 {
            t.push(f.clone());
        }
        let mut next = f.clone();
        for (i, x) in chosen {
            let r = &t[i];
            let shift: Vec<u32> = e.iter().zip(r.lead_monomial().expect("nonzero")).map(|(a, b)| a - b).collect();
            next = next.sub(&r.mul_term(x, &shift)).expect("same ring");
        }
        debug_assert!(next.lead_monomial() != Some(&e[..]) || next.lead_coeff() != Some(c));
        f = next;
    }
    f
}

/// Reducers for the lead term `c x^e`: indices into `t` with multipliers.
fn choose_reducers(m: &Modulus, c: u64, e: &[u32], t: &[ZmPoly]) -> Option<Vec<(usize, u64)>> {
    let mut cands: Vec<usize> =
        (0..t.len()).filter(|&i| mono_divides(t[i].lead_monomial().expect("nonzero"), e)).collect();
    if cands.is_empty() {
        return None;
    }
    cands.sort_by_key(|&i| (t[i].ecart(), i));
    if let Some(&i) = cands.iter().find(|&&i| m.divides(t[i].lead_coeff().expect("nonzero"), c)) {
        return Some(vec![(i, m.quotient(c, t[i].lead_coeff().expect("nonzero"))?)]);
    }
    // smallest ecart prefix whose coefficients generate c
    for k in 1..=cands.len() {
        if k < cands.len() && t[cands[k]].ecart() == t[cands[k - 1]].ecart() {
            continue;
        }
        let coeffs: Vec<u64> = cands[..k].iter().map(|&i| t[i].lead_coeff().expect("nonzero")).collect();
        if let Some(x) = m.solve_lead(c, &coeffs) {
            return Some(cands[..k].iter().copied().zip(x).filter(|p| p.1 != 0).collect());
        }
    }
    None
}

/// Leading monomials coprime and both leading coefficients units.
pub fn product_criterion_ring(f: &ZmPoly, g: &ZmPoly) -> bool {
    let m = f.ring().modulus();
    match (f.lead_term(), g.lead_term()) {
        (Some((a, ea)), Some((b, eb))) => {
            m.is_unit(*a) && m.is_unit(*b) && ea.iter().zip(eb).all(|(x, y)| *x == 0 || *y == 0)
        }
        _ => false,
    }
}

/// The lead term of `mid` divides `lcm(lt outer_a, lt outer_b)`.
pub fn chain_criterion_ring(outer_a: &ZmPoly, mid: &ZmPoly, outer_b: &ZmPoly) -> bool {
    let m = mid.ring().modulus();
    let (Some((ca, ea)), Some((cj, ej)), Some((cb, eb))) = (outer_a.lead_term(), mid.lead_term(), outer_b.lead_term())
    else {
        return false;
    };
    mono_divides(ej, &mono_lcm(ea, eb)) && m.divides(*cj, m.lcm(*ca, *cb))
}

/// Pair `(i, l)` with `c_i` the lead coefficient of the newer element: the
/// cofactor `lcm(c_i, c_l)/c_i` is a multiple of `ann(c_i)`, so the pair is
/// covered by the extended pair of `i`.
pub fn zero_criterion(m: &Modulus, c_i: u64, c_l: u64) -> bool {
    let cofactor = m.lcm_core(c_i, c_l) / m.core(c_i);
    let ann = m.ann_generator(c_i);
    ann != 0 && m.divides(ann, cofactor % m.value())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Pair {
    Poly(usize, usize),
    Extended(usize),
}

/// A standard basis of the ideal generated by `gens`, minimized so that no
/// lead term divides another, sorted by descending lead monomial.
pub fn std_basis(gens: &[ZmPoly], criteria: RingCriteria) -> Vec<ZmPoly> {
    std_basis_with_stats(gens, criteria).0
}

struct State {
    g: Vec<ZmPoly>,
    /// (lcm exponents, age, pair); popped smallest lcm first, then oldest.
    queue: Vec<(Vec<u32>, u64, Pair)>,
    age: u64,
}

impl State {
    fn push(&mut self, key: Vec<u32>, p: Pair) {
        self.age += 1;
        self.queue.push((key, self.age, p));
    }

    fn add(&mut self, h: ZmPoly) {
        let i = self.g.len();
        let lm = h.lead_monomial().expect("nonzero").to_vec();
        for j in 0..i {
            let key = mono_lcm(&lm, self.g[j].lead_monomial().expect("nonzero"));
            self.push(key, Pair::Poly(i, j));
        }
        self.push(lm, Pair::Extended(i));
        self.g.push(h);
    }

    fn pop(&mut self, ord: RingOrdering) -> Option<Pair> {
        let q = &self.queue;
        let pos = (0..q.len()).min_by(|&a, &b| ord.compare(&q[a].0, &q[b].0).then(q[a].1.cmp(&q[b].1)))?;
        Some(self.queue.swap_remove(pos).2)
    }
}

pub fn std_basis_with_stats(gens: &[ZmPoly], criteria: RingCriteria) -> (Vec<ZmPoly>, StdStats) {
    let mut stats = StdStats::default();
    let Some(first) = gens.first() else {
        return (Vec::new(), stats);
    };
    let m = first.ring().modulus().clone();
    let ord = first.ring().ordering();
    let mut st = State { g: Vec::new(), queue: Vec::new(), age: 0 };
    for f in gens.iter().filter(|f| !f.is_zero()) {
        st.add(f.clone());
    }
    let mut done: BTreeSet<Pair> = BTreeSet::new();
    while let Some(pair) = st.pop(ord) {
        let g = &st.g;
        let s = match pair {
            Pair::Extended(i) => {
                if m.is_unit(g[i].lead_coeff().expect("nonzero")) {
                    done.insert(pair);
                    continue;
                }
                stats.extended += 1;
                g[i].spoly_extended().expect("nonzero")
            }
            Pair::Poly(i, l) => {
                if criteria.product && product_criterion_ring(&g[i], &g[l]) {
                    stats.product += 1;
                    done.insert(pair);
                    continue;
                }
                let (ci, cl) = (g[i].lead_coeff().expect("nonzero"), g[l].lead_coeff().expect("nonzero"));
                if criteria.zero && done.contains(&Pair::Extended(i)) && zero_criterion(&m, ci, cl) {
                    stats.zero += 1;
                    done.insert(pair);
                    continue;
                }
                if criteria.chain && chain_applies(g, i, l, &done) {
                    stats.chain += 1;
                    done.insert(pair);
                    continue;
                }
                stats.pairs += 1;
                g[i].spoly(&g[l]).expect("nonzero")
            }
        };
        done.insert(pair);
        let h = nf_ring(&s, &st.g);
        if h.is_zero() {
            stats.zero_reductions += 1;
        } else {
            st.add(h);
        }
    }
    (minimize(st.g), stats)
}

fn chain_applies(g: &[ZmPoly], i: usize, l: usize, done: &BTreeSet<Pair>) -> bool {
    let key = |a: usize, b: usize| Pair::Poly(a.max(b), a.min(b));
    (0..g.len()).any(|j| {
        j != i
            && j != l
            && done.contains(&key(i, j))
            && done.contains(&key(j, l))
            && chain_criterion_ring(&g[i], &g[j], &g[l])
    })
}

/// Drops elements whose lead term is divisible by another's; among equal
/// lead terms the first is kept.
fn minimize(g: Vec<ZmPoly>) -> Vec<ZmPoly> {
    let mut keep = vec![true; g.len()];
    for i in 0..g.len() {
        for j in 0..g.len() {
            if i == j || !keep[j] || !g[j].lead_divides(&g[i]) {
                continue;
            }
            let mutual = g[i].lead_divides(&g[j]);
            if !mutual || j < i {
                keep[i] = false;
                break;
            }
        }
    }
    let mut out: Vec<ZmPoly> = g.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    out.sort_by(|a, b| {
        let (Some(ea), Some(eb)) = (a.lead_monomial(), b.lead_monomial()) else { return b.is_zero().cmp(&a.is_zero()) };
        let m = a.ring().modulus();
        a.ring()
            .ordering()
            .compare(eb, ea)
            .then_with(|| m.core(a.lead_coeff().unwrap()).cmp(&m.core(b.lead_coeff().unwrap())))
    });
    out
}

/// Whether top reduction of `f` by `g` reaches 0 with every subtracted
/// multiple having lead at most `lm(f)`.
pub fn verify_standard_rep(f: &ZmPoly, g: &[ZmPoly]) -> bool {
    let Some(bound) = f.lead_monomial().map(<[u32]>::to_vec) else {
        return true;
    };
    let ord = f.ring().ordering();
    let m = f.ring().modulus().clone();
    let gs: Vec<ZmPoly> = g.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut r = f.clone();
    while let Some((c, e)) = r.lead_term().cloned() {
        if ord.compare(&e, &bound).is_gt() {
            return false;
        }
        let Some(chosen) = choose_reducers(&m, c, &e, &gs) else { return false };
        for (i, x) in chosen {
            let shift: Vec<u32> = e.iter().zip(gs[i].lead_monomial().expect("nonzero")).map(|(a, b)| a - b).collect();
            r = r.sub(&gs[i].mul_term(x, &shift)).expect("same ring");
        }
    }
    true
}

/// Samples `samples` random combinations `Σ h_i g_i` (each `h_i` a random
/// polynomial of degree at most 2) and checks that some lead term of `g`
/// divides each nonzero one.
pub fn is_strong_basis(g: &[ZmPoly], samples: usize, seed: u64) -> bool {
    let Some(first) = g.first() else {
        return true;
    };
    let ring = first.ring().clone();
    let n = ring.nvars();
    let mv = ring.modulus().value();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut f = ring.zero();
        for gi in g {
            let terms = (0..rng.gen_range(0..4))
                .map(|_| {
                    let mut e = vec![0; n];
                    for _ in 0..rng.gen_range(0..=2) {
                        if n > 0 {
                            e[rng.gen_range(0..n)] += 1;
                        }
                    }
                    (rng.gen_range(0..mv), e)
                })
                .collect();
            let h = ring.from_terms(terms);
            f = f.add(&h.mul(gi).expect("same ring")).expect("same ring");
        }
        if !f.is_zero() && !g.iter().any(|gi| gi.lead_divides(&f)) {
            return false;
        }
    }
    true
}
