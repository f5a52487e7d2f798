use super::word::WordSystem;
use crate::boolpoly::{BoolPoly, BoolRing, Ordering};
use crate::error::{Error, Result};
use crate::ringstd::ZmPoly;
use crate::zdd::VarIndex;

/// How carry bits are represented.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CarryMode {
    /// Carries are substituted, so every bit is a polynomial in the inputs.
    #[default]
    Expanded,
    /// Each carry is a fresh variable `t` with a defining polynomial
    /// `t + expr`.
    Aux,
}

pub(crate) enum Carries<'a> {
    Expand,
    Count(usize),
    Fresh { vars: &'a [BoolPoly], defs: Vec<BoolPoly> },
}

impl Carries<'_> {
    pub(crate) fn carry(&mut self, expr: BoolPoly) -> Result<BoolPoly> {
        match self {
            Carries::Expand => Ok(expr),
            Carries::Count(k) => {
                *k += 1;
                Ok(expr)
            }
            Carries::Fresh { vars, defs } => {
                let t = vars.get(defs.len()).ok_or_else(|| Error::Invariant("ran out of carry variables".into()))?;
                defs.push(t + &expr);
                Ok(t.clone())
            }
        }
    }

    fn used(&self) -> usize {
        match self {
            Carries::Expand => 0,
            Carries::Count(k) => *k,
            Carries::Fresh { defs, .. } => defs.len(),
        }
    }
}

fn same_ring(xs: &[&[BoolPoly]]) -> Result<()> {
    let mut all = xs.iter().flat_map(|v| v.iter());
    if let Some(first) = all.next() {
        if all.any(|p| !p.ring().compatible(first.ring())) {
            return Err(Error::RingMismatch);
        }
    }
    Ok(())
}

fn check_len(a: &[BoolPoly], b: &[BoolPoly]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), got: b.len() });
    }
    same_ring(&[a, b])
}

/// Ripple-carry sum, bit `i` of weight `2^i`; the carry out of the top bit is
/// dropped.
pub(crate) fn add_bits(a: &[BoolPoly], b: &[BoolPoly], carries: &mut Carries) -> Result<Vec<BoolPoly>> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    let mut c: Option<BoolPoly> = None;
    for i in 0..n {
        let ab = &a[i] + &b[i];
        let s = match &c {
            Some(c) => &ab + c,
            None => ab.clone(),
        };
        out.push(s);
        if i + 1 < n {
            let maj = match &c {
                Some(c) => &(&a[i] * &b[i]) + &(c * &ab),
                None => &a[i] * &b[i],
            };
            c = Some(carries.carry(maj)?);
        }
    }
    Ok(out)
}

/// Schoolbook product: row `k` is `b_k · (a << k)`, added into the running
/// sum on positions `k..n`.
pub(crate) fn mul_bits(a: &[BoolPoly], b: &[BoolPoly], carries: &mut Carries) -> Result<Vec<BoolPoly>> {
    let n = a.len();
    let mut acc: Vec<BoolPoly> = a.iter().map(|x| x * &b[0]).collect();
    for k in 1..n {
        let row: Vec<BoolPoly> = (k..n).map(|j| &a[j - k] * &b[k]).collect();
        let high = add_bits(&acc[k..], &row, carries)?;
        acc.splice(k.., high);
    }
    Ok(acc)
}

/// Carry variables used by [`bit_add_aux`] on `n` bits.
pub fn add_carries(n: usize) -> usize {
    n.saturating_sub(1)
}

/// Carry variables used by [`bit_mul_aux`] on `n` bits.
pub fn mul_carries(n: usize) -> usize {
    (1..n).map(|k| add_carries(n - k)).sum()
}

/// Bits of `a + b mod 2^n` with carries expanded; the second component is
/// always empty.
pub fn bit_add(a: &[BoolPoly], b: &[BoolPoly]) -> Result<(Vec<BoolPoly>, Vec<BoolPoly>)> {
    check_len(a, b)?;
    Ok((add_bits(a, b, &mut Carries::Expand)?, Vec::new()))
}

/// Bits of `a · b mod 2^n` with carries expanded; the second component is
/// always empty.
pub fn bit_mul(a: &[BoolPoly], b: &[BoolPoly]) -> Result<(Vec<BoolPoly>, Vec<BoolPoly>)> {
    check_len(a, b)?;
    if a.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    Ok((mul_bits(a, b, &mut Carries::Expand)?, Vec::new()))
}

type BitOp = fn(&[BoolPoly], &[BoolPoly], &mut Carries) -> Result<Vec<BoolPoly>>;

fn with_fresh(
    a: &[BoolPoly],
    b: &[BoolPoly],
    fresh: &[BoolPoly],
    need: usize,
    f: BitOp,
) -> Result<(Vec<BoolPoly>, Vec<BoolPoly>)> {
    check_len(a, b)?;
    same_ring(&[a, fresh])?;
    if fresh.len() != need {
        return Err(Error::LengthMismatch { expected: need, got: fresh.len() });
    }
    if a.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut carries = Carries::Fresh { vars: fresh, defs: Vec::new() };
    let bits = f(a, b, &mut carries)?;
    let Carries::Fresh { defs, .. } = carries else { unreachable!() };
    Ok((bits, defs))
}

/// Like [`bit_add`], with carry `k` replaced by `fresh[k]` and its defining
/// polynomial returned. `fresh.len()` must be [`add_carries`]`(n)`.
pub fn bit_add_aux(a: &[BoolPoly], b: &[BoolPoly], fresh: &[BoolPoly]) -> Result<(Vec<BoolPoly>, Vec<BoolPoly>)> {
    with_fresh(a, b, fresh, add_carries(a.len()), add_bits)
}

/// Like [`bit_mul`], with fresh carry variables; `fresh.len()` must be
/// [`mul_carries`]`(n)`.
pub fn bit_mul_aux(a: &[BoolPoly], b: &[BoolPoly], fresh: &[BoolPoly]) -> Result<(Vec<BoolPoly>, Vec<BoolPoly>)> {
    with_fresh(a, b, fresh, mul_carries(a.len()), mul_bits)
}

/// Boolean polynomials with the map from words to their bit variables.
#[derive(Clone, Debug)]
pub struct BitSystem {
    ring: BoolRing,
    polys: Vec<BoolPoly>,
    words: Vec<(String, Vec<VarIndex>)>,
    aux: Vec<VarIndex>,
}

impl BitSystem {
    /// `words` maps a word name to its bit variables, least significant
    /// first; `aux` lists auxiliary variables.
    pub fn new(
        ring: BoolRing,
        polys: Vec<BoolPoly>,
        words: Vec<(String, Vec<VarIndex>)>,
        aux: Vec<VarIndex>,
    ) -> Result<BitSystem> {
        if polys.iter().any(|p| !p.ring().compatible(&ring)) {
            return Err(Error::RingMismatch);
        }
        let n = ring.nvars() as u32;
        if let Some(&v) = words.iter().flat_map(|w| &w.1).chain(&aux).find(|&&v| v >= n) {
            return Err(Error::VariableOutOfRange(v));
        }
        Ok(BitSystem { ring, polys, words, aux })
    }

    pub fn ring(&self) -> &BoolRing {
        &self.ring
    }

    pub fn polys(&self) -> &[BoolPoly] {
        &self.polys
    }

    pub fn words(&self) -> &[(String, Vec<VarIndex>)] {
        &self.words
    }

    pub fn aux(&self) -> &[VarIndex] {
        &self.aux
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Same polynomials in the ring with another ordering.
    pub fn with_ordering(&self, ordering: Ordering) -> Result<BitSystem> {
        let ring = self.ring.with_ordering(ordering)?;
        let polys = self.polys.iter().map(|p| ring.poly(p.id())).collect();
        Ok(BitSystem { ring, polys, words: self.words.clone(), aux: self.aux.clone() })
    }

    /// Word values of a Boolean assignment.
    pub fn decode(&self, model: &[bool]) -> Vec<(String, u64)> {
        self.words
            .iter()
            .map(|(name, bits)| {
                let v = bits.iter().enumerate().filter(|(_, &b)| model[b as usize]).map(|(i, _)| 1u64 << i).sum();
                (name.clone(), v)
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        self.ring.format_system(&self.polys)
    }
}

struct Blaster<'a> {
    ring: &'a BoolRing,
    width: usize,
    /// Bit polynomials of each word variable.
    vars: Vec<Vec<BoolPoly>>,
}

impl Blaster<'_> {
    fn constant(&self, c: u64) -> Vec<BoolPoly> {
        (0..self.width).map(|i| if c >> i & 1 == 1 { self.ring.one() } else { self.ring.zero() }).collect()
    }

    fn word(&self, p: &ZmPoly, carries: &mut Carries) -> Result<Vec<BoolPoly>> {
        let mut acc: Option<Vec<BoolPoly>> = None;
        for (c, e) in p.terms() {
            let mut term: Option<Vec<BoolPoly>> = None;
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = Some(match term {
                        None => self.vars[v].clone(),
                        Some(t) => mul_bits(&t, &self.vars[v], carries)?,
                    });
                }
            }
            let term = match term {
                None => self.constant(*c),
                Some(t) if *c == 1 => t,
                Some(t) => mul_bits(&t, &self.constant(*c), carries)?,
            };
            acc = Some(match acc {
                None => term,
                Some(a) => add_bits(&a, &term, carries)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.constant(0)))
    }

    fn system(&self, ws: &WordSystem, carries: &mut Carries) -> Result<Vec<BoolPoly>> {
        let mut out = Vec::new();
        for (l, r) in ws.equations() {
            let (lb, rb) = (self.word(l, carries)?, self.word(r, carries)?);
            out.extend(lb.iter().zip(&rb).map(|(x, y)| x + y));
        }
        if let Some((f, e)) = ws.disequality() {
            let (fb, eb) = (self.word(f, carries)?, self.word(e, carries)?);
            let one = self.ring.one();
            let prod = fb.iter().zip(&eb).fold(one.clone(), |acc, (x, y)| &acc * &(&(&one + x) + y));
            out.push(prod);
        }
        Ok(out)
    }
}

/// Rewrites every word equation as `width` bit equations. Variables are
/// ordered outputs first, then the other words, then any carry variables,
/// each word most significant bit first; bit `j` of word `x` is `x_j` and
/// carry `k` is `_ck`.
pub fn blast(ws: &WordSystem, mode: CarryMode) -> Result<BitSystem> {
    let wr = ws.ring();
    let width = ws.width() as usize;
    let gadget = ws.gadget();
    for p in ws.equations().iter().flat_map(|(l, r)| [l, r]) {
        if let Some(s) = gadget {
            if p.terms().iter().any(|t| t.1[s] > 0) {
                return Err(Error::Circuit("gadget variable inside an equation".into()));
            }
        }
    }
    let mut order: Vec<usize> = ws.outputs().to_vec();
    order.extend((0..wr.nvars()).filter(|v| !ws.outputs().contains(v) && Some(*v) != gadget));

    let mut names: Vec<String> = Vec::new();
    let mut words = Vec::new();
    for &v in &order {
        let name = &wr.names()[v];
        let base = names.len() as VarIndex;
        names.extend((0..width).rev().map(|j| format!("{name}_{j}")));
        let bits: Vec<VarIndex> = (0..width as VarIndex).map(|j| base + width as VarIndex - 1 - j).collect();
        words.push((v, name.clone(), bits));
    }
    fn build<'r>(
        ring: &'r BoolRing,
        width: usize,
        nwords: usize,
        words: &[(usize, String, Vec<VarIndex>)],
    ) -> Blaster<'r> {
        let mut vars = vec![Vec::new(); nwords];
        for (v, _, bits) in words {
            vars[*v] = bits.iter().map(|&b| ring.var(b)).collect();
        }
        Blaster { ring, width, vars }
    }

    let word_map: Vec<(String, Vec<VarIndex>)> = words.iter().map(|(_, n, b)| (n.clone(), b.clone())).collect();
    match mode {
        CarryMode::Expanded => {
            let ring = BoolRing::new(&names, Ordering::Lex)?;
            let polys = build(&ring, width, wr.nvars(), &words).system(ws, &mut Carries::Expand)?;
            BitSystem::new(ring, polys, word_map, Vec::new())
        }
        CarryMode::Aux => {
            let probe = BoolRing::new(&names, Ordering::Lex)?;
            let mut count = Carries::Count(0);
            build(&probe, width, wr.nvars(), &words).system(ws, &mut count)?;
            let k = count.used();
            let first = names.len();
            names.extend((0..k).rev().map(|i| format!("_c{i}")));
            let ring = BoolRing::new(&names, Ordering::Lex)?;
            let fresh: Vec<BoolPoly> = (0..k).map(|i| ring.var((first + k - 1 - i) as VarIndex)).collect();
            let mut carries = Carries::Fresh { vars: &fresh, defs: Vec::new() };
            let mut polys = build(&ring, width, wr.nvars(), &words).system(ws, &mut carries)?;
            let Carries::Fresh { defs, .. } = carries else { unreachable!() };
            polys.extend(defs);
            let aux = (first as VarIndex..names.len() as VarIndex).collect();
            BitSystem::new(ring, polys, word_map, aux)
        }
    }
}
