use std::collections::VecDeque;

use super::bits::{mul_bits, BitSystem, Carries};
use crate::boolpoly::{BoolPoly, BoolRing, Ordering};
use crate::error::{Error, Result};
use crate::zdd::VarIndex;

/// Column-wise multiplier: all partial products of a column are summed with
/// full and half adders, carries going to the next column. `skip` drops one
/// partial product `(i, j)`.
fn column_mul(
    a: &[BoolPoly],
    b: &[BoolPoly],
    skip: Option<(usize, usize)>,
    carries: &mut Carries,
) -> Result<Vec<BoolPoly>> {
    let n = a.len();
    let mut cols: Vec<VecDeque<BoolPoly>> =
        (0..n).map(|j| (0..=j).filter(|&i| skip != Some((i, j - i))).map(|i| &a[i] * &b[j - i]).collect()).collect();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        while cols[j].len() > 1 {
            let x = cols[j].pop_front().unwrap();
            let y = cols[j].pop_front().unwrap();
            let xy = &x + &y;
            let (s, maj) = if !cols[j].is_empty() {
                let z = cols[j].pop_front().unwrap();
                (&xy + &z, &(&x * &y) + &(&z * &xy))
            } else {
                (xy, &x * &y)
            };
            cols[j].push_back(s);
            if j + 1 < n {
                let c = carries.carry(maj)?;
                cols[j + 1].push_back(c);
            }
        }
        out.push(cols[j].pop_front().unwrap_or_else(|| a[0].ring().zero()));
    }
    Ok(out)
}

fn build(n: usize, skip: Option<(usize, usize)>) -> Result<BitSystem> {
    if n < 2 {
        return Err(Error::Circuit(format!("multiplier width {n} below 2")));
    }
    let word = |w: &'static str| (0..n).rev().map(move |j| format!("{w}_{j}"));
    let inputs: Vec<String> = word("a").chain(word("b")).collect();
    let probe = BoolRing::new(&inputs, Ordering::Lex)?;
    let bits = |r: &BoolRing, base: usize| (0..n).map(|j| r.var((base + n - 1 - j) as VarIndex)).collect::<Vec<_>>();
    let mut count = Carries::Count(0);
    column_mul(&bits(&probe, 0), &bits(&probe, n), skip, &mut count)?;
    let Carries::Count(k) = count else { unreachable!() };

    let mut names: Vec<String> = word("p").chain(word("q")).collect();
    names.extend((0..k).rev().map(|i| format!("_c{i}")));
    let first_in = names.len();
    names.extend(inputs);
    let ring = BoolRing::new(&names, Ordering::Lex)?;
    let (a, b) = (bits(&ring, first_in), bits(&ring, first_in + n));
    let (p, q) = (bits(&ring, 0), bits(&ring, n));
    let fresh: Vec<BoolPoly> = (0..k).map(|i| ring.var((2 * n + k - 1 - i) as VarIndex)).collect();

    let array = mul_bits(&a, &b, &mut Carries::Expand)?;
    let mut carries = Carries::Fresh { vars: &fresh, defs: Vec::new() };
    let column = column_mul(&a, &b, skip, &mut carries)?;
    let Carries::Fresh { defs, .. } = carries else { unreachable!() };

    let mut polys: Vec<BoolPoly> = p.iter().zip(&array).map(|(x, y)| x + y).collect();
    polys.extend(q.iter().zip(&column).map(|(x, y)| x + y));
    polys.extend(defs);
    let one = ring.one();
    polys.push(p.iter().zip(&q).fold(one.clone(), |acc, (x, y)| &acc * &(&(&one + x) + y)));

    let idx = |base: usize| (0..n).map(|j| (base + n - 1 - j) as VarIndex).collect::<Vec<_>>();
    let words =
        vec![("p".into(), idx(0)), ("q".into(), idx(n)), ("a".into(), idx(first_in)), ("b".into(), idx(first_in + n))];
    let aux = (2 * n..2 * n + k).map(|v| v as VarIndex).collect();
    BitSystem::new(ring, polys, words, aux)
}

/// Equivalence of an array multiplier `p = a·b` (carries expanded) and a
/// column-compression multiplier `q = a·b` (carries as variables), with the
/// disequality `p ≠ q`. The system has no common zero.
pub fn mult_verification(n: usize) -> Result<BitSystem> {
    build(n, None)
}

/// As [`mult_verification`] with the partial product `a_0·b_1` missing from
/// the column multiplier, so some input makes `p ≠ q`.
pub fn mult_verification_tampered(n: usize) -> Result<BitSystem> {
    build(n, Some((0, 1)))
}
