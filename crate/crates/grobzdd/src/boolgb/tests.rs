use proptest::prelude::{any, prop_assert, prop_assert_eq, prop_assume, proptest, Just, ProptestConfig};
use proptest::strategy::Strategy as Gen;

use super::*;
use crate::boolpoly::BoolRing;

fn ring(names: &[&str], ord: &str) -> BoolRing {
    BoolRing::new(names, ord.parse().unwrap()).unwrap()
}

fn polys(r: &BoolRing, src: &[&str]) -> Vec<BoolPoly> {
    src.iter().map(|s| r.parse(s).unwrap()).collect()
}

fn strs(ps: &[BoolPoly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn points(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u32 << n).map(move |s| (0..n).map(|i| s >> i & 1 == 1).collect())
}

fn variety(n: usize, gens: &[BoolPoly]) -> Vec<Vec<bool>> {
    points(n).filter(|p| gens.iter().all(|g| !g.eval(p))).collect()
}

/// Reduced basis read off the variety: standard monomials are those whose
/// evaluation vectors are independent of all smaller monomials'.
fn oracle_gb(r: &BoolRing, gens: &[BoolPoly]) -> Vec<BoolPoly> {
    let n = r.nvars();
    let v = variety(n, gens);
    if v.is_empty() {
        return vec![r.one()];
    }
    let mut monos: Vec<Vec<u32>> =
        (0..1u32 << n).map(|s| (0..n as u32).filter(|i| s >> i & 1 == 1).collect()).collect();
    let ord = r.ordering().clone();
    monos.sort_by(|a, b| r.monomial(a).compare(&r.monomial(b), &ord));
    let evalv = |m: &[u32]| -> u128 {
        v.iter().enumerate().filter(|(_, p)| m.iter().all(|&i| p[i as usize])).fold(0, |acc, (k, _)| acc | 1 << k)
    };
    // rows: (vector, pivot bit, combination over standard monomials)
    let mut rows: Vec<(u128, u32, u128)> = Vec::new();
    let mut std_monos: Vec<Vec<u32>> = Vec::new();
    let mut nonstd: Vec<(Vec<u32>, u128)> = Vec::new();
    for m in monos {
        let mut vec = evalv(&m);
        let mut comb = 0u128;
        for &(rv, piv, rc) in &rows {
            if vec >> piv & 1 == 1 {
                vec ^= rv;
                comb ^= rc;
            }
        }
        if vec != 0 {
            comb ^= 1 << std_monos.len();
            std_monos.push(m);
            rows.push((vec, vec.trailing_zeros(), comb));
        } else {
            nonstd.push((m, comb));
        }
    }
    let is_sub = |a: &[u32], b: &[u32]| a.iter().all(|x| b.contains(x));
    let mut out: Vec<BoolPoly> = Vec::new();
    for (m, comb) in &nonstd {
        if nonstd.iter().any(|(d, _)| d != m && is_sub(d, m)) {
            continue;
        }
        let mut terms = vec![m.clone()];
        for (k, s) in std_monos.iter().enumerate() {
            if comb >> k & 1 == 1 {
                terms.push(s.clone());
            }
        }
        out.push(r.from_terms(&terms));
    }
    out.sort_by(|a, b| b.lead().unwrap().compare(&a.lead().unwrap(), &ord));
    out
}

/// Every s-polynomial, field pairs included, reduces to zero.
fn certificate(r: &BoolRing, basis: &[BoolPoly]) -> bool {
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            if !greedy_nf(&f.spoly(g).unwrap(), basis).unwrap().is_zero() {
                return false;
            }
        }
        for v in f.vars_of() {
            let x = r.var(v);
            let s = &(&x * f) + f;
            if !greedy_nf(&s, basis).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

fn is_reduced(basis: &[BoolPoly]) -> bool {
    basis.iter().enumerate().all(|(i, f)| {
        f.terms().iter().all(|t| basis.iter().enumerate().all(|(j, g)| j == i || !g.lead().unwrap().divides(t)))
    })
}

#[test]
fn greedy_nf_examples() {
    let r = ring(&["a", "b", "c"], "lp");
    let f = r.parse("a*b + c + 1").unwrap();
    assert!(greedy_nf(&f, ::std::slice::from_ref(&f)).unwrap().is_zero());
    assert!(greedy_nf(&r.parse("a*c + c").unwrap(), &polys(&r, &["c"])).unwrap().is_zero());
    let r = ring(&["x", "y"], "lp");
    let f = r.parse("x*y + x").unwrap();
    let g = polys(&r, &["y + 1"]);
    // x*y + x vanishes wherever y = 1
    for p in variety(2, &g) {
        assert!(!f.eval(&p));
    }
    assert!(greedy_nf(&f, &g).unwrap().is_zero());
    assert!(greedy_nf(&r.zero(), &g).unwrap().is_zero());
}

#[test]
fn search_reductor_examples() {
    let r = ring(&["x", "y", "z"], "lp");
    let gens = polys(&r, &["x", "x*y", "z"]);
    assert_eq!(search_reductor(&gens, &r.monomial(&[0, 1])).unwrap(), vec![0, 1]);
    assert!(search_reductor(&gens, &r.monomial(&[])).unwrap().is_empty());
    assert!(search_reductor(&[], &r.monomial(&[0])).unwrap().is_empty());
}

#[test]
fn product_and_chain_examples() {
    let r = ring(&["x", "y", "z"], "lp");
    let p = |s| r.parse(s).unwrap();
    assert!(product_criterion(&p("x"), &p("y")).unwrap());
    assert!(!product_criterion(&p("x*y"), &p("y*z")).unwrap());
    assert!(product_criterion(&p("1"), &p("x*y + z")).unwrap());

    let leads = vec![r.monomial(&[0, 1]), r.monomial(&[1, 2]), r.monomial(&[1])];
    assert!(chain_criterion(&leads, (0, 1), &[]));
    // same lcm on a pending side pair blocks the criterion
    let wide = vec![r.monomial(&[0, 1]), r.monomial(&[1, 2]), r.monomial(&[0, 2])];
    assert!(!chain_criterion(&wide, (0, 1), &[(0, 2)]));
    assert!(chain_criterion(&wide, (0, 1), &[]));
    let none = vec![r.monomial(&[0, 1]), r.monomial(&[1, 2]), r.monomial(&[0, 2, 1])];
    assert!(!chain_criterion(&none[..2], (0, 1), &[]));
    assert!(chain_criterion(&none, (0, 1), &[]));
    // mediator equal to an endpoint is not a mediator
    assert!(!chain_criterion(&[r.monomial(&[0]), r.monomial(&[1])], (0, 1), &[]));
}

#[test]
fn linear_lead_examples() {
    let r = ring(&["x", "y", "z"], "lp");
    assert!(linear_lead_criterion(&r.parse("x*y + x").unwrap(), 0));
    assert!(linear_lead_criterion(&r.parse("x").unwrap(), 0));
    assert!(!linear_lead_criterion(&r.parse("x*y + z").unwrap(), 0));
}

/// Does `f` have a factor `x` or `x + 1`? Checked by exhaustive search over
/// cofactors in the other variables.
fn has_factor_brute(r: &BoolRing, f: &BoolPoly, v: u32) -> bool {
    let others: Vec<u32> = (0..r.nvars() as u32).filter(|&w| w != v).collect();
    let monos: Vec<Vec<u32>> = (0..1u32 << others.len())
        .map(|s| others.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).map(|(_, &w)| w).collect())
        .collect();
    let x = r.var(v);
    let x1 = &x + &r.one();
    (1..1u64 << monos.len()).any(|s| {
        let terms: Vec<&Vec<u32>> = monos.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).map(|(_, m)| m).collect();
        let g = r.from_terms(&terms.iter().map(|t| t.as_slice()).collect::<Vec<_>>());
        &x * &g == *f || &x1 * &g == *f
    })
}

#[test]
fn linear_factor_brute_force() {
    let r = ring(&["x", "y", "z"], "lp");
    for s in 1..1u32 << 8 {
        let terms: Vec<Vec<u32>> =
            (0..8).filter(|i| s >> i & 1 == 1).map(|m: u32| (0..3).filter(|b| m >> b & 1 == 1).collect()).collect();
        let f = r.from_terms(&terms);
        for v in 0..3 {
            assert_eq!(linear_lead_criterion(&f, v), has_factor_brute(&r, &f, v), "{f} / {v}");
        }
    }
}

#[test]
fn factor_examples() {
    let r = ring(&["x", "y"], "lp");
    let f = r.parse("x*y + y").unwrap();
    let (factors, core) = factor_linear_leads(&f);
    assert!(core.is_one());
    assert_eq!(factors, vec![LinearFactor { var: 0, plus_one: true }, LinearFactor { var: 1, plus_one: false }]);
    let prod = factors.iter().fold(r.one(), |acc, l| &acc * &l.to_poly(&r));
    for p in points(2) {
        assert_eq!(prod.eval(&p), f.eval(&p));
    }
    assert_eq!(factor_linear_leads(&r.named("x")), (vec![LinearFactor { var: 0, plus_one: false }], r.one()));
    let g = r.parse("x*y + 1").unwrap();
    assert_eq!(factor_linear_leads(&g), (vec![], g.clone()));
}

#[test]
fn shift_examples() {
    let names: Vec<String> = (0..10).map(|i| format!("x{i}")).collect();
    let r = BoolRing::new(&names, Ordering::Lex).unwrap();
    let (g, map) = suitable_shift(&r.parse("x5*x9 + x9").unwrap()).unwrap();
    assert_eq!(g, r.parse("x0*x1 + x1").unwrap());
    assert_eq!(map, vec![(5, 0), (9, 1)]);
    let (h, map) = suitable_shift(&g).unwrap();
    assert_eq!(h, g);
    assert!(map.iter().all(|(a, b)| a == b));
    let rb = BoolRing::new(&names, "block(dlex:4,dp_asc:10)".parse().unwrap()).unwrap();
    assert!(matches!(suitable_shift(&rb.parse("x1 + x7").unwrap()), Err(Error::NonSymmetricOrdering)));
    let (g, map) = suitable_shift(&rb.parse("x6*x8").unwrap()).unwrap();
    assert_eq!(g, rb.parse("x4*x5").unwrap());
    assert_eq!(map, vec![(6, 4), (8, 5)]);
}

#[test]
fn bgb_single_examples() {
    let r = ring(&["x", "y"], "lp");
    let s = Strategy::default();
    assert_eq!(strs(&bgb_single(&r.named("x"), &s).unwrap()), ["x"]);
    let xy = r.parse("x*y").unwrap();
    assert_eq!(bgb_single(&xy, &s).unwrap(), oracle_gb(&r, ::std::slice::from_ref(&xy)));
    assert_eq!(strs(&bgb_single(&xy, &s).unwrap()), ["x*y"]);
    let f = r.parse("x*y + 1").unwrap();
    assert_eq!(bgb_single(&f, &s).unwrap(), oracle_gb(&r, ::std::slice::from_ref(&f)));
    assert_eq!(strs(&bgb_single(&f, &s).unwrap()), ["x + 1", "y + 1"]);
}

#[test]
fn buchberger_examples() {
    let r = ring(&["x", "y"], "lp");
    let s = Strategy::default();
    assert_eq!(strs(&buchberger(&polys(&r, &["x + y", "y"]), &s)), ["x", "y"]);
    assert_eq!(strs(&buchberger(&polys(&r, &["x*y + 1"]), &s)), ["x + 1", "y + 1"]);
    assert_eq!(strs(&buchberger(&polys(&r, &["x", "x + 1"]), &s)), ["1"]);
    assert!(buchberger(&[], &s).is_empty());
    assert!(buchberger(&[r.zero()], &s).is_empty());
}

/// Pigeon `i` in hole `j` is variable `2 i + j`.
fn pigeonhole2(r: &BoolRing) -> Vec<BoolPoly> {
    let x = |i: u32, j: u32| r.var(2 * i + j);
    let mut out = Vec::new();
    for i in 0..3 {
        out.push(&(&x(i, 0) + &r.one()) * &(&x(i, 1) + &r.one()));
    }
    for j in 0..2 {
        for a in 0..3 {
            for b in a + 1..3 {
                out.push(&x(a, j) * &x(b, j));
            }
        }
    }
    out
}

#[test]
fn sat_examples() {
    let r = ring(&["x", "y"], "lp");
    let s = Strategy::default();
    assert_eq!(sat_check(&polys(&r, &["x", "x + 1"]), &s).unwrap(), SatResult::Unsat);
    assert_eq!(sat_check(&polys(&r, &["x*y + 1"]), &s).unwrap(), SatResult::Sat(vec![true, true]));
    let r6 = BoolRing::with_vars(6, Ordering::Lex).unwrap();
    assert_eq!(sat_check(&pigeonhole2(&r6), &s).unwrap(), SatResult::Unsat);
    assert_eq!(sat_check(&pigeonhole2(&r6), &Strategy::plain()).unwrap(), SatResult::Unsat);
    assert_eq!(ideal_generator(&pigeonhole2(&r6), 1 << 20).unwrap().unwrap(), r6.one());
    assert_eq!(ideal_generator(&polys(&r, &["x", "y"]), 1).unwrap(), None);
    assert_eq!(ideal_generator(&polys(&r, &["x", "y"]), 8).unwrap().unwrap().to_string(), "x*y + x + y");
}

#[test]
fn table_round_trip() {
    let dir = std::env::temp_dir().join(format!("grobzdd-table-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bgb4.txt");
    let _ = std::fs::remove_file(&path);
    let s = Strategy { table: Some(path.clone()), ..Strategy::default() };
    let r = ring(&["a", "b", "c", "d"], "dlex");
    let gens = polys(&r, &["a*b + c*d + 1", "a + b*c"]);
    let with_gen = buchberger(&gens, &s);
    assert!(path.exists());
    let r2 = ring(&["a", "b", "c", "d"], "dlex");
    let gens2 = polys(&r2, &["a*b + c*d + 1", "a + b*c"]);
    let with_load = buchberger(&gens2, &s);
    assert_eq!(strs(&with_gen), strs(&with_load));
    assert_eq!(with_gen, oracle_gb(&r, &gens));
    std::fs::remove_dir_all(&dir).unwrap();
}

const ORDERS: [&str; 5] = ["lp", "dlex", "dp_asc", "block", "block"];

fn system() -> impl Gen<Value = (usize, usize, Vec<Vec<Vec<u32>>>)> {
    (2usize..=6, 0usize..ORDERS.len()).prop_flat_map(|(n, o)| {
        let term = proptest::collection::btree_set(0..n as u32, 0..=3).prop_map(|s| s.into_iter().collect::<Vec<_>>());
        let poly = proptest::collection::vec(term, 1..=5);
        (Just(n), Just(o), proptest::collection::vec(poly, 1..=4))
    })
}

fn build(n: usize, o: usize, sys: &[Vec<Vec<u32>>]) -> (BoolRing, Vec<BoolPoly>) {
    let ord: Ordering = match o {
        3 => format!("block(dlex:{},dp_asc:{n})", n / 2).parse().unwrap(),
        4 => format!("block(dp_asc:1,dlex:{n})").parse().unwrap(),
        _ => ORDERS[o].parse().unwrap(),
    };
    let r = BoolRing::with_vars(n, ord).unwrap();
    let gens = sys.iter().map(|p| r.from_terms(p)).collect();
    (r, gens)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn matches_variety_oracle((n, o, sys) in system()) {
        let (r, gens) = build(n, o, &sys);
        let gb = buchberger(&gens, &Strategy::default());
        prop_assert_eq!(&gb, &oracle_gb(&r, &gens));
        prop_assert_eq!(variety(n, &gb), variety(n, &gens));
        prop_assert!(is_reduced(&gb));
        prop_assert!(certificate(&r, &gb));
    }

    #[test]
    fn criteria_are_conservative((n, o, sys) in system()) {
        let (_, gens) = build(n, o, &sys);
        let full = buchberger(&gens, &Strategy::default());
        prop_assert_eq!(&buchberger(&gens, &Strategy::plain()), &full);
        let weighted = Strategy { weighted_length: true, sugar: false, ..Strategy::default() };
        prop_assert_eq!(&buchberger(&gens, &weighted), &full);
        let nosym = Strategy { symmetry: false, ..Strategy::default() };
        prop_assert_eq!(&buchberger(&gens, &nosym), &full);
    }

    #[test]
    fn bgb_single_is_principal((n, o, sys) in system()) {
        let (r, gens) = build(n, o, &sys);
        let p = &gens[0];
        prop_assume!(!p.is_zero());
        match bgb_single(p, &Strategy::default()) {
            Ok(b) => {
                prop_assert_eq!(variety(n, &b), variety(n, ::std::slice::from_ref(p)));
                prop_assert_eq!(&b, &oracle_gb(&r, ::std::slice::from_ref(p)));
            }
            Err(e) => prop_assert!(matches!(e, Error::NonSymmetricOrdering)),
        }
    }

    #[test]
    fn fresh_linear_factor_keeps_basis((n, o, sys) in system(), plus in any::<bool>()) {
        prop_assume!(n >= 3);
        let (r, gens) = build(n, o, &sys);
        let last = (n - 1) as u32;
        let gens: Vec<BoolPoly> = gens.iter().map(|g| {
            let keep: Vec<Vec<u32>> = g.terms().iter().map(|t| t.vars()).filter(|t| !t.contains(&last)).collect();
            r.from_terms(&keep)
        }).collect();
        let gb = buchberger(&gens, &Strategy::default());
        let l = if plus { &r.var(last) + &r.one() } else { r.var(last) };
        let prod: Vec<BoolPoly> = gb.iter().map(|g| &l * g).collect();
        prop_assert!(certificate(&r, &prod));
    }

    #[test]
    fn greedy_nf_clears_leads((n, o, sys) in system(), f in proptest::collection::vec(proptest::collection::btree_set(0..6u32, 0..=3), 0..6)) {
        let (r, gens) = build(n, o, &sys);
        let f = r.from_terms(&f.iter().map(|t| t.iter().copied().filter(|&v| (v as usize) < n).collect::<Vec<_>>()).collect::<Vec<_>>());
        let nf = greedy_nf(&f, &gens).unwrap();
        for t in nf.terms() {
            for g in gens.iter().filter(|g| !g.is_zero()) {
                prop_assert!(!g.lead().unwrap().divides(&t));
            }
        }
        for p in variety(n, &gens) {
            prop_assert_eq!(f.eval(&p), nf.eval(&p));
        }
    }

    #[test]
    fn sat_agrees_with_enumeration((n, o, sys) in system()) {
        let (_, gens) = build(n, o, &sys);
        let v = variety(n, &gens);
        match sat_check(&gens, &Strategy::default()).unwrap() {
            SatResult::Unsat => prop_assert!(v.is_empty()),
            SatResult::Sat(m) => prop_assert!(v.contains(&m)),
        }
    }

    #[test]
    fn ideal_generator_keeps_variety((n, o, sys) in system()) {
        let (r, gens) = build(n, o, &sys);
        prop_assume!(!gens.is_empty());
        let p = ideal_generator(&gens, usize::MAX).unwrap().unwrap();
        prop_assert_eq!(variety(n, ::std::slice::from_ref(&p)), variety(n, &gens));
        prop_assert_eq!(strs(&buchberger(&[p], &Strategy::default())), strs(&oracle_gb(&r, &gens)));
    }

    #[test]
    fn sat_without_conjoin_agrees((n, o, sys) in system()) {
        let (_, gens) = build(n, o, &sys);
        let off = Strategy { conjoin_limit: 0, ..Strategy::default() };
        let a = sat_check(&gens, &Strategy::default()).unwrap().is_sat();
        prop_assert_eq!(a, sat_check(&gens, &off).unwrap().is_sat());
    }

    #[test]
    fn deterministic((n, o, sys) in system()) {
        let (_, g1) = build(n, o, &sys);
        let (_, g2) = build(n, o, &sys);
        let a = strs(&buchberger(&g1, &Strategy::default()));
        let b = strs(&buchberger(&g2, &Strategy::default()));
        prop_assert_eq!(a, b);
    }
}

#[test]
fn expansion_reducing_back_terminates() {
    let r = BoolRing::with_vars(3, Ordering::DegRevLexAsc).unwrap();
    let gens = vec![r.from_terms(&[vec![1u32, 2], vec![0, 1]]), r.from_terms(&[vec![2u32], vec![1, 2]])];
    let gb = buchberger(&gens, &Strategy::default());
    assert_eq!(gb, oracle_gb(&r, &gens));
    assert_eq!(strs(&gb), strs(&buchberger(&gens, &Strategy::plain())));
}
