use std::fmt::Write as _;

use super::bits::BitSystem;
use crate::boolpoly::{BoolPoly, BoolRing, Ordering};
use crate::error::{Error, Result};

/// A CNF formula on variables `1..=nvars`; literals are signed variable
/// numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    nvars: usize,
    clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(nvars: usize, clauses: Vec<Vec<i32>>) -> Result<Cnf> {
        for c in &clauses {
            if let Some(&l) = c.iter().find(|l| **l == 0 || l.unsigned_abs() as usize > nvars) {
                return Err(Error::VariableOutOfRange(l.unsigned_abs()));
            }
        }
        Ok(Cnf { nvars, clauses })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Reads DIMACS: `c` comment lines, a `p cnf V C` header, then
    /// 0-terminated clauses. A `%` line ends the input.
    pub fn parse_dimacs(src: &str) -> Result<Cnf> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let t = raw.trim_start();
            let indent = raw.len() - t.len();
            if t.is_empty() || t.starts_with('c') {
                continue;
            }
            if t.starts_with('%') {
                break;
            }
            if t.starts_with('p') {
                let f: Vec<&str> = t.split_whitespace().collect();
                let parsed = match f.as_slice() {
                    ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                    _ => None,
                };
                if header.is_some() || parsed.is_none() {
                    return Err(Error::parse(line, indent + 1, "malformed `p cnf V C` header"));
                }
                header = parsed;
                continue;
            }
            let (nvars, _) = header.ok_or_else(|| Error::parse(line, indent + 1, "clause before `p cnf` header"))?;
            let mut col = 0;
            for tok in raw.split_inclusive(char::is_whitespace) {
                let start = col + 1;
                col += tok.len();
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                let lit: i32 = tok.parse().map_err(|_| Error::parse(line, start, format!("bad literal `{tok}`")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else if lit.unsigned_abs() as usize > nvars {
                    return Err(Error::parse(line, start, format!("literal {lit} out of range 1..={nvars}")));
                } else {
                    current.push(lit);
                }
            }
        }
        let (nvars, nclauses) = header.ok_or_else(|| Error::parse(1, 1, "missing `p cnf` header"))?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != nclauses {
            let last = src.lines().count().max(1);
            return Err(Error::parse(last, 1, format!("header announces {nclauses} clauses, found {}", clauses.len())));
        }
        Ok(Cnf { nvars, clauses })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.nvars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// `model[v - 1]` is the value of variable `v`.
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    /// One polynomial per clause on variables `x1..xV` (lex, `x1` largest):
    /// the product of `x_v + 1` over positive and `x_v` over negative
    /// literals.
    pub fn to_polys(&self) -> Result<BitSystem> {
        if self.nvars == 0 {
            return Err(Error::Circuit("CNF without variables".into()));
        }
        let names: Vec<String> = (1..=self.nvars).map(|v| format!("x{v}")).collect();
        let ring = BoolRing::new(&names, Ordering::Lex)?;
        let one = ring.one();
        let polys: Vec<BoolPoly> = self
            .clauses
            .iter()
            .map(|c| {
                c.iter().fold(one.clone(), |acc, &l| {
                    let x = ring.var(l.unsigned_abs() - 1);
                    if l > 0 {
                        &acc * &(&x + &one)
                    } else {
                        &acc * &x
                    }
                })
            })
            .collect();
        BitSystem::new(ring, polys, Vec::new(), Vec::new())
    }
}

/// Parses DIMACS and converts it with [`Cnf::to_polys`].
pub fn cnf_to_polys(src: &str) -> Result<BitSystem> {
    Cnf::parse_dimacs(src)?.to_polys()
}

/// `k + 1` pigeons in `k` holes. Variable `i·k + h + 1` says pigeon `i` sits
/// in hole `h`.
pub fn pigeonhole_cnf(k: usize) -> Result<Cnf> {
    if k == 0 {
        return Err(Error::Circuit("pigeonhole needs at least one hole".into()));
    }
    let var = |i: usize, h: usize| (i * k + h + 1) as i32;
    let mut clauses: Vec<Vec<i32>> = (0..=k).map(|i| (0..k).map(|h| var(i, h)).collect()).collect();
    for h in 0..k {
        for i in 0..=k {
            for j in i + 1..=k {
                clauses.push(vec![-var(i, h), -var(j, h)]);
            }
        }
    }
    Cnf::new(k * (k + 1), clauses)
}

pub fn pigeonhole(k: usize) -> Result<BitSystem> {
    pigeonhole_cnf(k)?.to_polys()
}
