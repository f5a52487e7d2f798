//! Polynomial text syntax shared by the Boolean and the `Z/m` layers, and the
//! line-oriented system file format.
//!
//! Polynomials are sums of products: `x*y + 3*z^2 - 1`, with parentheses
//! expanded on parse. A system file holds header lines followed by one
//! polynomial per line:
//!
//! ```text
//! # comment
//! vars x y z
//! order lp
//! modulus 4
//! x*y + 1
//! ```
//!
//! `modulus` is present only for systems over `Z/m`; `order` is optional.

use crate::error::{Error, Result};

/// A product of variable powers with an integer coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub coeff: i128,
    /// `(variable index, exponent)` pairs, unsorted, possibly repeated.
    pub vars: Vec<(usize, u32)>,
}

/// Unnormalized sum of terms.
pub type RawPoly = Vec<RawTerm>;

fn mul_raw(a: &RawPoly, b: &RawPoly) -> RawPoly {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for s in a {
        for t in b {
            let mut vars = s.vars.clone();
            vars.extend_from_slice(&t.vars);
            out.push(RawTerm { coeff: s.coeff.wrapping_mul(t.coeff), vars });
        }
    }
    out
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.line, self.col0 + self.pos + 1, msg))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<i128> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        match s.parse() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.err("number too large")
            }
        }
    }

    fn expr(&mut self) -> Result<RawPoly> {
        let mut out = Vec::new();
        let mut sign = 1i128;
        match self.peek() {
            Some('-') => {
                sign = -1;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let mut t = self.term()?;
            if sign < 0 {
                for x in &mut t {
                    x.coeff = -x.coeff;
                }
            }
            out.extend(t);
            match self.peek() {
                Some('+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -1;
                    self.pos += 1;
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<RawPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul_raw(&acc, &f);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Option<u32>> {
        if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.number()?;
            if e > u32::MAX as i128 {
                self.pos = at;
                return self.err("exponent too large");
            }
            return Ok(Some(e as u32));
        }
        Ok(None)
    }

    fn factor(&mut self) -> Result<RawPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                let e = self.exponent()?.unwrap_or(1);
                let mut acc = vec![RawTerm { coeff: 1, vars: Vec::new() }];
                for _ in 0..e {
                    acc = mul_raw(&acc, &inner);
                }
                Ok(acc)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let e = self.exponent()?.unwrap_or(1);
                let mut v: i128 = 1;
                for _ in 0..e {
                    v = v.wrapping_mul(n);
                }
                Ok(vec![RawTerm { coeff: v, vars: Vec::new() }])
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let Some(idx) = self.names.iter().position(|n| *n == name) else {
                    self.pos = start;
                    return self.err(format!("unknown variable `{name}`"));
                };
                let e = self.exponent()?.unwrap_or(1);
                let vars = if e == 0 { Vec::new() } else { vec![(idx, e)] };
                Ok(vec![RawTerm { coeff: 1, vars }])
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses one polynomial. `line`/`column` locate `s` in its source for errors.
pub fn parse_raw(s: &str, names: &[String], line: usize, column: usize) -> Result<RawPoly> {
    let mut p = Parser { chars: s.chars().collect(), pos: 0, line, col0: column, names };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parsed system file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SystemText {
    pub vars: Vec<String>,
    pub order: Option<String>,
    pub modulus: Option<u64>,
    /// `(line number, text)` of each polynomial line.
    pub polys: Vec<(usize, String)>,
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

/// Splits a system file into header fields and polynomial lines.
pub fn parse_system_text(src: &str) -> Result<SystemText> {
    let mut sys = SystemText::default();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("");
        let trimmed = text.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = text.len() - text.trim_start().len();
        let (head, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = indent + head.len() + 2;
        match head {
            "vars" => {
                for name in rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                    if !is_identifier(name) {
                        return Err(Error::parse(line, rest_col, format!("bad variable name `{name}`")));
                    }
                    if sys.vars.iter().any(|v| v == name) {
                        return Err(Error::parse(line, rest_col, format!("duplicate variable `{name}`")));
                    }
                    sys.vars.push(name.to_string());
                }
            }
            "order" => sys.order = Some(rest.trim().to_string()),
            "modulus" => {
                let m = rest.trim().parse().map_err(|_| Error::parse(line, rest_col, "bad modulus"))?;
                sys.modulus = Some(m);
            }
            _ => {
                if sys.vars.is_empty() {
                    return Err(Error::parse(line, indent + 1, "polynomial before `vars` header"));
                }
                sys.polys.push((line, text.to_string()));
            }
        }
    }
    if sys.vars.is_empty() {
        return Err(Error::parse(1, 1, "missing `vars` header"));
    }
    Ok(sys)
}
