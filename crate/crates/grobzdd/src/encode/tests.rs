use proptest::prelude::*;

use super::*;
use crate::boolgb::{buchberger, sat_check, SatResult, Strategy as Gb};
use crate::boolpoly::{BoolPoly, BoolRing, Ordering};
use crate::ringstd::{RingOrdering, ZmRing};

fn words_ring(n: usize) -> (BoolRing, Vec<BoolPoly>, Vec<BoolPoly>) {
    let names: Vec<String> = (0..n).map(|j| format!("a_{j}")).chain((0..n).map(|j| format!("b_{j}"))).collect();
    let r = BoolRing::new(&names, Ordering::Lex).unwrap();
    let a = (0..n).map(|j| r.var(j as u32)).collect();
    let b = (0..n).map(|j| r.var((n + j) as u32)).collect();
    (r, a, b)
}

fn point(n: usize, a: u64, b: u64) -> Vec<bool> {
    (0..n).map(|j| a >> j & 1 == 1).chain((0..n).map(|j| b >> j & 1 == 1)).collect()
}

fn value(bits: &[BoolPoly], pt: &[bool]) -> u64 {
    bits.iter().enumerate().filter(|(_, p)| p.eval(pt)).map(|(j, _)| 1u64 << j).sum()
}

#[test]
fn running_example_generators() {
    for n in 1..=5 {
        let ws = word_level_encode(&Circuit::rtl_example(n).unwrap()).unwrap();
        let r = ws.ring();
        assert_eq!(r.names(), ["a", "b", "c", "d", "e", "f", "s"]);
        let want: Vec<_> = ["b + c - d", "a*d - e", "b", "a*c - f"]
            .iter()
            .map(|s| r.parse(s).unwrap())
            .chain([r.parse(&format!("s*(f - e) - {}", 1u64 << (n - 1))).unwrap()])
            .collect();
        assert_eq!(ws.polys(), want);
        assert_eq!(ws.refutation().unwrap().len(), 5);
    }
}

#[test]
fn plain_circuits() {
    let c = Circuit::parse("wordlen 3\nsignal x y z\nassign z = x + y\nassign x = 3\n").unwrap();
    let ws = word_level_encode(&c).unwrap();
    let r = ws.ring();
    assert_eq!(ws.polys(), vec![r.parse("x + y - z").unwrap(), r.parse("x - 3").unwrap()]);
    assert!(matches!(ws.refutation(), Err(crate::Error::Circuit(_))));
    assert_eq!(Circuit::parse(&c.to_text()).unwrap(), c);
}

#[test]
fn circuit_errors() {
    assert!(matches!(Circuit::parse("signal a\n"), Err(crate::Error::Parse { line: 1, .. })));
    assert!(matches!(
        Circuit::parse("wordlen 2\nsignal a\nassign a = a + b\n"),
        Err(crate::Error::Parse { line: 3, .. })
    ));
    let cyc = "wordlen 2\nsignal a b\nassign a = b * b\nassign b = a + a\n";
    assert!(matches!(Circuit::parse(cyc), Err(crate::Error::Parse { line: 4, .. })));
    assert!(Circuit::parse("wordlen 0\n").is_err());
    let bad = Circuit::parse("wordlen 2\nsignal a\nassert a = q\n").unwrap();
    assert!(word_level_encode(&bad).is_err());
    let c = Circuit::parse("wordlen 2\nsignal s t\ndisequal s t\n").unwrap();
    assert_eq!(word_level_encode(&c).unwrap().ring().names(), ["s", "t", "s_"]);
}

#[test]
fn gadget_solvable_iff_different() {
    for n in 1..=4u32 {
        let c = Circuit::parse(&format!("wordlen {n}\nsignal f e\ndisequal f e\n")).unwrap();
        let ws = word_level_encode(&c).unwrap();
        let g = ws.polys().pop().unwrap();
        let m = 1u64 << n;
        for f in 0..m {
            for e in 0..m {
                let solvable = (0..m).any(|s| g.eval(&[f, e, s]) == 0);
                assert_eq!(solvable, f != e, "n={n} f={f} e={e}");
            }
        }
    }
}

#[test]
fn bit_mul_displayed_bits() {
    let (r, a, b) = words_ring(4);
    let (p, aux) = bit_mul(&a, &b).unwrap();
    assert!(aux.is_empty());
    let q = |s: &str| r.parse(s).unwrap();
    assert_eq!(p[0], q("a_0*b_0"));
    assert_eq!(p[1], q("a_1*b_0 + a_0*b_1"));
    assert_eq!(p[2], q("a_2*b_0 + a_1*b_1 + a_0*b_2 + a_1*a_0*b_1*b_0"));
    let p3 = q("a_3*b_0 + a_2*b_1 + a_1*b_2 + a_0*b_3 + a_2*a_1*a_0*b_1*b_0 + a_2*a_1*b_1*b_0 + a_2*a_0*b_2*b_0 \
                + a_1*a_0*b_2*b_1*b_0 + a_1*a_0*b_2*b_1 + a_1*a_0*b_1*b_0");
    assert_eq!(p[3], p3);
}

#[test]
fn bit_add_single_bit() {
    let (r, a, b) = words_ring(1);
    let (s, _) = bit_add(&a, &b).unwrap();
    assert_eq!(s, vec![r.parse("a_0 + b_0").unwrap()]);
    let (_, a2, _) = words_ring(2);
    assert!(matches!(bit_add(&a2, &b), Err(crate::Error::LengthMismatch { expected: 2, got: 1 })));
}

#[test]
fn bit_arithmetic_matches_integers() {
    for n in 1..=5usize {
        let (_, a, b) = words_ring(n);
        let (sum, _) = bit_add(&a, &b).unwrap();
        let (prod, _) = bit_mul(&a, &b).unwrap();
        let m = 1u64 << n;
        for x in 0..m {
            for y in 0..m {
                let pt = point(n, x, y);
                assert_eq!(value(&sum, &pt), (x + y) % m);
                assert_eq!(value(&prod, &pt), x * y % m, "n={n} {x}*{y}");
            }
        }
    }
}

/// Auxiliary carries: every input extends uniquely to the carry variables and
/// the output bits then equal the integer result.
#[test]
fn aux_carries_match_integers() {
    for n in 1..=3usize {
        for mul in [false, true] {
            let k = if mul { mul_carries(n) } else { add_carries(n) };
            let mut names: Vec<String> = (0..k).map(|i| format!("t{i}")).collect();
            names.extend((0..n).map(|j| format!("a_{j}")).chain((0..n).map(|j| format!("b_{j}"))));
            let r = BoolRing::new(&names, Ordering::Lex).unwrap();
            let t: Vec<BoolPoly> = (0..k).map(|i| r.var(i as u32)).collect();
            let a: Vec<BoolPoly> = (0..n).map(|j| r.var((k + j) as u32)).collect();
            let b: Vec<BoolPoly> = (0..n).map(|j| r.var((k + n + j) as u32)).collect();
            let (bits, defs) = if mul { bit_mul_aux(&a, &b, &t).unwrap() } else { bit_add_aux(&a, &b, &t).unwrap() };
            assert_eq!(defs.len(), k);
            let m = 1u64 << n;
            for x in 0..m {
                for y in 0..m {
                    let ext: Vec<Vec<bool>> = (0..1u64 << k)
                        .map(|tv| (0..k).map(|i| tv >> i & 1 == 1).chain(point(n, x, y)).collect())
                        .filter(|pt: &Vec<bool>| defs.iter().all(|d| !d.eval(pt)))
                        .collect();
                    assert_eq!(ext.len(), 1);
                    let want = if mul { x * y % m } else { (x + y) % m };
                    assert_eq!(value(&bits, &ext[0]), want);
                }
            }
        }
    }
    let (_, a, b) = words_ring(3);
    assert!(bit_mul_aux(&a, &b, &[]).is_err());
}

#[test]
fn blast_examples() {
    let zero = Circuit::parse("wordlen 2\nsignal x\nassert x = 0\n").unwrap();
    let bs = blast(&word_level_encode(&zero).unwrap(), CarryMode::Expanded).unwrap();
    let mut got: Vec<String> = bs.polys().iter().map(|p| p.to_string()).collect();
    got.sort();
    assert_eq!(got, ["x_0", "x_1"]);
    assert_eq!(bs.ring().names(), ["x_1", "x_0"]);

    let ne = Circuit::parse("wordlen 1\nsignal f e\ndisequal f e\n").unwrap();
    let bs = blast(&word_level_encode(&ne).unwrap(), CarryMode::Expanded).unwrap();
    assert_eq!(bs.polys().len(), 1);
    assert_eq!(bs.polys()[0], bs.ring().parse("1 + f_0 + e_0").unwrap());

    let mul = Circuit::parse("wordlen 4\nsignal a b p\nassign p = a * b\n").unwrap();
    let bs = blast(&word_level_encode(&mul).unwrap(), CarryMode::Expanded).unwrap();
    let r = bs.ring();
    assert_eq!(r.names()[..4], ["p_3", "p_2", "p_1", "p_0"]);
    let bits = |w: &str| (0..4).map(|j| r.named(&format!("{w}_{j}"))).collect::<Vec<_>>();
    let (prod, _) = bit_mul(&bits("a"), &bits("b")).unwrap();
    let want: Vec<BoolPoly> = bits("p").iter().zip(&prod).map(|(x, y)| x + y).collect();
    assert_eq!(bs.polys(), want);
}

#[test]
fn running_example_is_refuted_at_bit_level() {
    for n in 1..=3 {
        let ws = word_level_encode(&Circuit::rtl_example(n).unwrap()).unwrap();
        for mode in [CarryMode::Expanded, CarryMode::Aux] {
            let bs = blast(&ws, mode).unwrap();
            assert_eq!(buchberger(bs.polys(), &Gb::default()), vec![bs.ring().one()]);
        }
    }
}

type TermLists = Vec<Vec<(u64, Vec<u32>)>>;

fn random_word_system() -> impl Strategy<Value = (u32, usize, TermLists, Option<(usize, usize)>)> {
    (1u32..=4, 1usize..=3).prop_flat_map(|(n, k)| {
        let m = 1u64 << n;
        let exps = proptest::collection::vec(0u32..=2, k).prop_filter("deg ≤ 2", |e| e.iter().sum::<u32>() <= 2);
        let poly = proptest::collection::vec((0..m, exps), 1..=3);
        let diseq = proptest::option::of((0..k, 0..k));
        (Just(n), Just(k), proptest::collection::vec(poly, 0..=3), diseq)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn blast_preserves_solutions((n, k, eqs, diseq) in random_word_system(), aux in any::<bool>()) {
        let mut names: Vec<String> = (0..k).map(|i| format!("w{i}")).collect();
        let extra = usize::from(diseq.is_some());
        names.extend(diseq.map(|_| "s".to_string()));
        let wr = ZmRing::new(1 << n, &names, RingOrdering::Lex).unwrap();
        let equations = eqs.iter().map(|t| {
            let terms = t.iter().map(|(c, e)| (*c, e.iter().copied().chain(std::iter::repeat_n(0, extra)).collect())).collect();
            (wr.from_terms(terms), wr.zero())
        }).collect();
        let mut ws = WordSystem::new(wr.clone(), equations, vec![0]).unwrap();
        if let Some((f, e)) = diseq {
            ws = ws.with_disequality(wr.var(f), wr.var(e), k).unwrap();
        }
        let mode = if aux { CarryMode::Aux } else { CarryMode::Expanded };
        let bs = blast(&ws, mode).unwrap();
        let m = 1u64 << n;
        let polys = ws.polys();
        for w in 0..m.pow(k as u32) {
            let word: Vec<u64> = (0..k).map(|i| w / m.pow(i as u32) % m).collect();
            let word_ok = (0..m).any(|s| {
                let pt: Vec<u64> = word.iter().copied().chain(std::iter::repeat_n(s, extra)).collect();
                polys.iter().all(|p| p.eval(&pt) == 0)
            });
            let mut base = vec![false; bs.nvars()];
            for (name, bits) in bs.words() {
                let v = word[names.iter().position(|x| x == name).unwrap()];
                for (j, &b) in bits.iter().enumerate() {
                    base[b as usize] = v >> j & 1 == 1;
                }
            }
            // carry t_i is the value of its defining polynomial at t_i = 0
            let na = bs.aux().len();
            let defs = &bs.polys()[bs.polys().len() - na..];
            for (i, d) in defs.iter().enumerate() {
                let v = bs.aux()[na - 1 - i] as usize;
                base[v] = d.eval(&base);
            }
            prop_assert_eq!(word_ok, bs.polys().iter().all(|p| !p.eval(&base)), "word {:?}", word);
        }
    }

    #[test]
    fn cnf_polys_vanish_on_models(nvars in 1usize..=10, clauses in proptest::collection::vec(proptest::collection::vec((1i32..=10, any::<bool>()), 0..=4), 0..=8)) {
        let clauses: Vec<Vec<i32>> = clauses.iter().map(|c| c.iter().map(|(v, s)| {
            let v = (*v - 1) % nvars as i32 + 1;
            if *s { v } else { -v }
        }).collect()).collect();
        let cnf = Cnf::new(nvars, clauses.clone()).unwrap();
        let bs = cnf.to_polys().unwrap();
        prop_assert_eq!(Cnf::parse_dimacs(&cnf.to_dimacs()).unwrap(), cnf);
        for s in 0..1u32 << nvars {
            let pt: Vec<bool> = (0..nvars).map(|i| s >> i & 1 == 1).collect();
            let sat = clauses.iter().all(|c| c.iter().any(|&l| pt[l.unsigned_abs() as usize - 1] == (l > 0)));
            prop_assert_eq!(sat, bs.polys().iter().all(|p| !p.eval(&pt)));
        }
    }
}

#[test]
fn cnf_examples() {
    let bs = cnf_to_polys("p cnf 2 3\n1 0\n1 -2 0\n0\n").unwrap();
    let r = bs.ring();
    assert_eq!(bs.polys()[0], r.parse("x1 + 1").unwrap());
    assert_eq!(bs.polys()[1], r.parse("(x1 + 1)*x2").unwrap());
    assert!(bs.polys()[2].is_one());
    for (x1, x2) in [(false, false), (false, true), (true, false), (true, true)] {
        assert_eq!(!bs.polys()[1].eval(&[x1, x2]), x1 || !x2);
    }
}

#[test]
fn dimacs_errors() {
    assert!(matches!(Cnf::parse_dimacs("p cnf x 1\n1 0\n"), Err(crate::Error::Parse { line: 1, .. })));
    match Cnf::parse_dimacs("c hi\np cnf 2 1\n1 -3 0\n") {
        Err(crate::Error::Parse { line: 3, column: 3, .. }) => {}
        other => panic!("unexpected {other:?}"),
    }
    assert!(Cnf::parse_dimacs("1 0\n").is_err());
    assert!(Cnf::parse_dimacs("p cnf 2 2\n1 0\n").is_err());
    let cnf = Cnf::parse_dimacs("p cnf 3 2\n1 2\n -3 0 2 0\n%\n0\n").unwrap();
    assert_eq!(cnf.clauses(), [vec![1, 2, -3], vec![2]]);
}

#[test]
fn pigeonhole_instances() {
    let h6 = pigeonhole_cnf(6).unwrap();
    assert_eq!((h6.nvars(), h6.clauses().len()), (42, 133));
    assert!(pigeonhole_cnf(0).is_err());
    for k in 1..=3 {
        let cnf = pigeonhole_cnf(k).unwrap();
        let nv = cnf.nvars();
        assert!((0..1u32 << nv).all(|s| !cnf.satisfied_by(&(0..nv).map(|i| s >> i & 1 == 1).collect::<Vec<_>>())));
        let bs = pigeonhole(k).unwrap();
        assert_eq!(sat_check(bs.polys(), &Gb::default()).unwrap(), SatResult::Unsat);
    }
}

#[test]
fn multiplier_encodings_agree() {
    let bs = mult_verification(2).unwrap();
    let n = bs.nvars();
    let (rest, diseq) = bs.polys().split_at(bs.polys().len() - 1);
    let mut solutions = 0;
    for s in 0..1u64 << n {
        let pt: Vec<bool> = (0..n).map(|i| s >> i & 1 == 1).collect();
        if rest.iter().all(|p| !p.eval(&pt)) {
            solutions += 1;
            let w: std::collections::HashMap<String, u64> = bs.decode(&pt).into_iter().collect();
            assert_eq!(w["p"], w["a"] * w["b"] % 4);
            assert_eq!(w["q"], w["p"]);
            assert!(diseq[0].eval(&pt));
        }
    }
    assert_eq!(solutions, 16);
    for n in 2..=3 {
        let bs = mult_verification(n).unwrap();
        assert_eq!(sat_check(bs.polys(), &Gb::default()).unwrap(), SatResult::Unsat);
        assert_eq!(buchberger(bs.polys(), &Gb::default()), vec![bs.ring().one()]);
    }
    assert!(mult_verification(1).is_err());
}

#[test]
fn tampered_multiplier_has_countermodel() {
    for n in 2..=3 {
        let bs = mult_verification_tampered(n).unwrap();
        let SatResult::Sat(model) = sat_check(bs.polys(), &Gb::default()).unwrap() else { panic!("expected SAT") };
        let w: std::collections::HashMap<String, u64> = bs.decode(&model).into_iter().collect();
        let m = 1u64 << n;
        assert_eq!(w["p"], w["a"] * w["b"] % m);
        assert_ne!(w["q"], w["p"]);
        // the dropped partial product is a_0·b_1, worth 2
        assert_eq!((w["q"] + 2 * (w["a"] & 1) * (w["b"] >> 1 & 1)) % m, w["p"]);
    }
}
