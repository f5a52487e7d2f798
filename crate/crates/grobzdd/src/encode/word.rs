use super::circuit::{AssignOp, Circuit};
use crate::error::{Error, Result};
use crate::ringstd::{RingOrdering, ZmPoly, ZmRing};

/// Equations `lhs = rhs` over `Z/2^n`, with an optional disequality `f ≠ e`
/// encoded through a gadget variable.
#[derive(Clone, Debug)]
pub struct WordSystem {
    ring: ZmRing,
    width: u32,
    equations: Vec<(ZmPoly, ZmPoly)>,
    disequality: Option<(ZmPoly, ZmPoly)>,
    gadget: Option<usize>,
    outputs: Vec<usize>,
}

impl WordSystem {
    /// `outputs` lists ring variables placed first when blasting.
    pub fn new(ring: ZmRing, equations: Vec<(ZmPoly, ZmPoly)>, outputs: Vec<usize>) -> Result<WordSystem> {
        let m = ring.modulus().value();
        if !m.is_power_of_two() {
            return Err(Error::InvalidModulus(m));
        }
        if equations.iter().any(|(l, r)| l.ring() != &ring || r.ring() != &ring) {
            return Err(Error::RingMismatch);
        }
        if let Some(&v) = outputs.iter().find(|&&v| v >= ring.nvars()) {
            return Err(Error::VariableOutOfRange(v as u32));
        }
        let width = m.trailing_zeros();
        Ok(WordSystem { ring, width, equations, disequality: None, gadget: None, outputs })
    }

    /// Adds `f ≠ e` with `s` the index of the gadget variable.
    pub fn with_disequality(mut self, f: ZmPoly, e: ZmPoly, s: usize) -> Result<WordSystem> {
        if f.ring() != &self.ring || e.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if s >= self.ring.nvars() {
            return Err(Error::VariableOutOfRange(s as u32));
        }
        self.disequality = Some((f, e));
        self.gadget = Some(s);
        Ok(self)
    }

    pub fn ring(&self) -> &ZmRing {
        &self.ring
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn equations(&self) -> &[(ZmPoly, ZmPoly)] {
        &self.equations
    }

    pub fn disequality(&self) -> Option<&(ZmPoly, ZmPoly)> {
        self.disequality.as_ref()
    }

    pub fn gadget(&self) -> Option<usize> {
        self.gadget
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    fn gadget_poly(&self) -> Option<ZmPoly> {
        let (f, e) = self.disequality.as_ref()?;
        let s = self.ring.var(self.gadget?);
        let diff = f.sub(e).ok()?;
        let half = self.ring.constant(1i128 << (self.width - 1));
        s.mul(&diff).ok()?.sub(&half).ok()
    }

    /// `lhs − rhs` for each equation, then `s·(f − e) − 2^(n−1)`.
    pub fn polys(&self) -> Vec<ZmPoly> {
        let mut out: Vec<ZmPoly> = self.equations.iter().map(|(l, r)| l.sub(r).expect("same ring")).collect();
        out.extend(self.gadget_poly());
        out
    }

    /// The system whose solvability refutes the property.
    pub fn refutation(&self) -> Result<Vec<ZmPoly>> {
        if self.disequality.is_none() {
            return Err(Error::Circuit("no disequality pair to refute".into()));
        }
        Ok(self.polys())
    }

    pub fn to_text(&self) -> String {
        self.ring.format_system(&self.polys())
    }
}

/// One polynomial per assignment and property, in that order, and the
/// disequality gadget last. Ring variables are the signals followed by the
/// gadget `s` (renamed if a signal is called `s`).
pub fn word_level_encode(c: &Circuit) -> Result<WordSystem> {
    let mut names: Vec<String> = c.signals().to_vec();
    let gadget_name = c.disequality().map(|_| {
        let mut s = String::from("s");
        while names.contains(&s) {
            s.push('_');
        }
        s
    });
    names.extend(gadget_name.clone());
    let ring = ZmRing::new(1u64 << c.width(), &names, RingOrdering::Lex)?;
    let var = |name: &str| ring.var(names.iter().position(|n| n == name).expect("declared"));
    let mut equations = Vec::new();
    for a in c.assignments() {
        let z = var(&a.target);
        equations.push(match &a.op {
            AssignOp::Add(x, y) => (var(x).add(&var(y))?, z),
            AssignOp::Mul(x, y) => (var(x).mul(&var(y))?, z),
            AssignOp::Const(v) => (z, ring.constant(*v as i128)),
        });
    }
    for (l, r) in c.properties() {
        let lp = ring.parse(l)?;
        let rp = ring.parse(r)?;
        if let Some(g) = &gadget_name {
            let gi = names.len() - 1;
            if lp.terms().iter().chain(rp.terms()).any(|t| t.1[gi] > 0) {
                return Err(Error::Circuit(format!("`{g}` is not a signal")));
            }
        }
        equations.push((lp, rp));
    }
    let outputs = c.outputs().iter().map(|o| names.iter().position(|n| n == o).unwrap()).collect();
    let ws = WordSystem::new(ring.clone(), equations, outputs)?;
    match c.disequality() {
        Some((f, e)) => ws.with_disequality(var(f), var(e), names.len() - 1),
        None => Ok(ws),
    }
}
