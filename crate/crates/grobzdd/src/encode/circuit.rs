use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Right-hand side of an assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssignOp {
    Add(String, String),
    Mul(String, String),
    Const(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub target: String,
    pub op: AssignOp,
}

/// Word-level circuit with properties.
///
/// Text form, one statement per line, `#` starts a comment:
///
/// ```text
/// wordlen 4
/// signal a b c d e f
/// assign d = b + c
/// assign e = a * d
/// assert b = 0
/// assert a*c = f
/// disequal f e
/// ```
///
/// Assert sides are polynomials in the signals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    width: u32,
    signals: Vec<String>,
    assignments: Vec<Assignment>,
    properties: Vec<(String, String)>,
    disequality: Option<(String, String)>,
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

impl Circuit {
    /// Empty circuit of word length `width`, `1 ≤ width ≤ 31`.
    pub fn new(width: u32) -> Result<Circuit> {
        if !(1..=31).contains(&width) {
            return Err(Error::Circuit(format!("word length {width} outside 1..=31")));
        }
        Ok(Circuit { width, signals: Vec::new(), assignments: Vec::new(), properties: Vec::new(), disequality: None })
    }

    /// The two-block design `d = b + c`, `e = a·d` with the property
    /// `b = 0 ∧ a·c = f` and the disequality `f ≠ e`.
    pub fn rtl_example(width: u32) -> Result<Circuit> {
        let mut c = Circuit::new(width)?;
        for s in ["a", "b", "c", "d", "e", "f"] {
            c.signal(s)?;
        }
        c.assign("d", AssignOp::Add("b".into(), "c".into()))?;
        c.assign("e", AssignOp::Mul("a".into(), "d".into()))?;
        c.assert_eq("b", "0")?;
        c.assert_eq("a*c", "f")?;
        c.disequal("f", "e")?;
        Ok(c)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn signals(&self) -> &[String] {
        &self.signals
    }

    pub fn assignments(&self) -> &[Assignment] {
        &self.assignments
    }

    pub fn properties(&self) -> &[(String, String)] {
        &self.properties
    }

    pub fn disequality(&self) -> Option<(&str, &str)> {
        self.disequality.as_ref().map(|(f, e)| (f.as_str(), e.as_str()))
    }

    pub fn signal(&mut self, name: &str) -> Result<()> {
        if !is_identifier(name) {
            return Err(Error::Circuit(format!("bad signal name `{name}`")));
        }
        if self.signals.iter().any(|s| s == name) {
            return Err(Error::Circuit(format!("signal `{name}` declared twice")));
        }
        self.signals.push(name.to_string());
        Ok(())
    }

    fn declared(&self, name: &str) -> Result<()> {
        if self.signals.iter().any(|s| s == name) {
            Ok(())
        } else {
            Err(Error::Circuit(format!("undeclared signal `{name}`")))
        }
    }

    /// Adds `target = op`. Each signal is assigned at most once and the
    /// assignments must stay acyclic.
    pub fn assign(&mut self, target: &str, op: AssignOp) -> Result<()> {
        self.declared(target)?;
        if let AssignOp::Add(x, y) | AssignOp::Mul(x, y) = &op {
            self.declared(x)?;
            self.declared(y)?;
        }
        if self.assignments.iter().any(|a| a.target == target) {
            return Err(Error::Circuit(format!("signal `{target}` assigned twice")));
        }
        self.assignments.push(Assignment { target: target.to_string(), op });
        if let Some(s) = self.find_cycle() {
            self.assignments.pop();
            return Err(Error::Circuit(format!("combinational cycle through `{s}`")));
        }
        Ok(())
    }

    /// Asserts `lhs = rhs`. Both sides are checked when the circuit is
    /// encoded.
    pub fn assert_eq(&mut self, lhs: &str, rhs: &str) -> Result<()> {
        self.properties.push((lhs.trim().to_string(), rhs.trim().to_string()));
        Ok(())
    }

    pub fn disequal(&mut self, f: &str, e: &str) -> Result<()> {
        self.declared(f)?;
        self.declared(e)?;
        if self.disequality.is_some() {
            return Err(Error::Circuit("more than one disequality".into()));
        }
        self.disequality = Some((f.to_string(), e.to_string()));
        Ok(())
    }

    /// Signals assigned by the circuit.
    pub fn outputs(&self) -> Vec<&str> {
        self.assignments.iter().map(|a| a.target.as_str()).collect()
    }

    fn find_cycle(&self) -> Option<String> {
        let deps = |s: &str| -> Vec<&str> {
            match self.assignments.iter().find(|a| a.target == s).map(|a| &a.op) {
                Some(AssignOp::Add(x, y) | AssignOp::Mul(x, y)) => vec![x.as_str(), y.as_str()],
                _ => Vec::new(),
            }
        };
        // 0 unvisited, 1 on stack, 2 done
        let mut state = vec![0u8; self.signals.len()];
        let idx = |s: &str| self.signals.iter().position(|t| t == s).unwrap();
        for start in 0..self.signals.len() {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state[start] = 1;
            while let Some(&mut (v, ref mut k)) = stack.last_mut() {
                let ds = deps(&self.signals[v]);
                if *k < ds.len() {
                    let w = idx(ds[*k]);
                    *k += 1;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => return Some(self.signals[w].clone()),
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn parse(src: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("");
            let trimmed = text.trim();
            if trimmed.is_empty() {
                continue;
            }
            let col = text.len() - text.trim_start().len() + 1;
            let (head, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            let rest = rest.trim();
            let at = |e: Error| match e {
                Error::Circuit(m) => Error::parse(line, col, m),
                other => other,
            };
            if head == "wordlen" {
                if circuit.is_some() {
                    return Err(Error::parse(line, col, "`wordlen` must come first and only once"));
                }
                let n = rest.parse().map_err(|_| Error::parse(line, col + head.len() + 1, "bad word length"))?;
                circuit = Some(Circuit::new(n).map_err(at)?);
                continue;
            }
            let c = circuit.as_mut().ok_or_else(|| Error::parse(line, col, "missing `wordlen` header"))?;
            match head {
                "signal" => {
                    for s in rest.split(|ch: char| ch.is_whitespace() || ch == ',').filter(|s| !s.is_empty()) {
                        c.signal(s).map_err(at)?;
                    }
                }
                "assign" => {
                    let (target, expr) =
                        rest.split_once('=').ok_or_else(|| Error::parse(line, col, "expected `assign z = x op y`"))?;
                    let expr = expr.trim();
                    let op = if let Some((x, y)) = expr.split_once('+') {
                        AssignOp::Add(x.trim().into(), y.trim().into())
                    } else if let Some((x, y)) = expr.split_once('*') {
                        AssignOp::Mul(x.trim().into(), y.trim().into())
                    } else {
                        let v =
                            expr.parse().map_err(|_| Error::parse(line, col, format!("bad assignment `{expr}`")))?;
                        AssignOp::Const(v)
                    };
                    c.assign(target.trim(), op).map_err(at)?;
                }
                "assert" => {
                    let (l, r) =
                        rest.split_once('=').ok_or_else(|| Error::parse(line, col, "expected `assert lhs = rhs`"))?;
                    c.assert_eq(l, r).map_err(at)?;
                }
                "disequal" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() != 2 {
                        return Err(Error::parse(line, col, "expected `disequal f e`"));
                    }
                    c.disequal(parts[0], parts[1]).map_err(at)?;
                }
                other => return Err(Error::parse(line, col, format!("unknown statement `{other}`"))),
            }
        }
        circuit.ok_or_else(|| Error::parse(1, 1, "missing `wordlen` header"))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("wordlen {}\nsignal {}\n", self.width, self.signals.join(" "));
        for a in &self.assignments {
            let _ = match &a.op {
                AssignOp::Add(x, y) => writeln!(out, "assign {} = {x} + {y}", a.target),
                AssignOp::Mul(x, y) => writeln!(out, "assign {} = {x} * {y}", a.target),
                AssignOp::Const(v) => writeln!(out, "assign {} = {v}", a.target),
            };
        }
        for (l, r) in &self.properties {
            let _ = writeln!(out, "assert {l} = {r}");
        }
        if let Some((f, e)) = &self.disequality {
            let _ = writeln!(out, "disequal {f} {e}");
        }
        out
    }
}
