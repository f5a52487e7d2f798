use std::cmp::Ordering as Cmp;
use std::fmt;
use std::sync::Arc;

use super::Modulus;
use crate::error::{Error, Result};
use crate::text::{parse_raw, parse_system_text};

/// Global monomial orderings for polynomials over `Z/m`, with `x_0` the
/// largest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingOrdering {
    Lex,
    DegLex,
}

impl RingOrdering {
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Cmp {
        match self {
            RingOrdering::Lex => a.cmp(b),
            RingOrdering::DegLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
        }
    }
}

impl std::str::FromStr for RingOrdering {
    type Err = Error;

    fn from_str(s: &str) -> Result<RingOrdering> {
        match s.trim() {
            "lp" | "lex" => Ok(RingOrdering::Lex),
            "dlex" | "Dp" | "deglex" => Ok(RingOrdering::DegLex),
            other => Err(Error::InvalidOrdering(format!("{other} (ring mode supports lp and dlex)"))),
        }
    }
}

impl fmt::Display for RingOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingOrdering::Lex => "lp",
            RingOrdering::DegLex => "dlex",
        })
    }
}

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    modulus: Modulus,
    names: Vec<String>,
    ordering: RingOrdering,
}

/// `Z/m[x_0, ..., x_{n-1}]` with a global ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZmRing(Arc<RingData>);

/// A term: coefficient and exponent vector.
pub type ZmTerm = (u64, Vec<u32>);

/// A polynomial over `Z/m`: nonzero terms, strictly descending.
#[derive(Clone, PartialEq, Eq)]
pub struct ZmPoly {
    ring: ZmRing,
    terms: Vec<ZmTerm>,
}

impl ZmRing {
    pub fn new<S: AsRef<str>>(m: u64, names: &[S], ordering: RingOrdering) -> Result<ZmRing> {
        let modulus = Modulus::new(m)?;
        let names = names.iter().map(|s| s.as_ref().to_string()).collect();
        Ok(ZmRing(Arc::new(RingData { modulus, names, ordering })))
    }

    pub fn modulus(&self) -> &Modulus {
        &self.0.modulus
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn ordering(&self) -> RingOrdering {
        self.0.ordering
    }

    pub fn zero(&self) -> ZmPoly {
        ZmPoly { ring: self.clone(), terms: Vec::new() }
    }

    pub fn constant(&self, c: i128) -> ZmPoly {
        self.from_terms(vec![(self.modulus().reduce(c), vec![0; self.nvars()])])
    }

    pub fn var(&self, v: usize) -> ZmPoly {
        let mut e = vec![0; self.nvars()];
        e[v] = 1;
        self.from_terms(vec![(1, e)])
    }

    /// Sorts, merges equal exponents and drops zero coefficients.
    pub fn from_terms(&self, mut terms: Vec<ZmTerm>) -> ZmPoly {
        let m = self.modulus();
        let ord = self.ordering();
        terms.sort_by(|a, b| ord.compare(&b.1, &a.1));
        let mut out: Vec<ZmTerm> = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            match out.last_mut() {
                Some(last) if last.1 == e => last.0 = m.add(last.0, c),
                _ => out.push((c % m.value(), e)),
            }
        }
        out.retain(|t| t.0 != 0);
        ZmPoly { ring: self.clone(), terms: out }
    }

    pub fn parse(&self, s: &str) -> Result<ZmPoly> {
        self.parse_at(s, 1, 0)
    }

    fn parse_at(&self, s: &str, line: usize, column: usize) -> Result<ZmPoly> {
        let raw = parse_raw(s, self.names(), line, column)?;
        let terms = raw
            .into_iter()
            .map(|t| {
                let mut e = vec![0; self.nvars()];
                for (v, k) in t.vars {
                    e[v] += k;
                }
                (self.modulus().reduce(t.coeff), e)
            })
            .collect();
        Ok(self.from_terms(terms))
    }

    /// Parses a system file with a `modulus` header line. `m` and `ordering`
    /// override the file; the default ordering is lex.
    pub fn parse_system(src: &str, m: Option<u64>, ordering: Option<RingOrdering>) -> Result<(ZmRing, Vec<ZmPoly>)> {
        let sys = parse_system_text(src)?;
        let m = m.or(sys.modulus).ok_or_else(|| Error::parse(1, 1, "missing modulus"))?;
        let ord = match (ordering, &sys.order) {
            (Some(o), _) => o,
            (None, Some(s)) => s.parse()?,
            (None, None) => RingOrdering::Lex,
        };
        let ring = ZmRing::new(m, &sys.vars, ord)?;
        let polys = sys.polys.iter().map(|(line, t)| ring.parse_at(t, *line, 0)).collect::<Result<Vec<_>>>()?;
        Ok((ring, polys))
    }

    /// Renders a system in the file format.
    pub fn format_system(&self, polys: &[ZmPoly]) -> String {
        let mut out =
            format!("modulus {}\nvars {}\norder {}\n", self.modulus().value(), self.0.names.join(" "), self.0.ordering);
        for p in polys {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    fn fmt_monomial(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { self.0.names[i].clone() } else { format!("{}^{k}", self.0.names[i]) })
            .collect();
        parts.join("*")
    }
}

pub(crate) fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn mono_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn div_mono(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl ZmPoly {
    pub fn ring(&self) -> &ZmRing {
        &self.ring
    }

    pub fn terms(&self) -> &[ZmTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_term(&self) -> Option<&ZmTerm> {
        self.terms.first()
    }

    pub fn lead_coeff(&self) -> Option<u64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lead_monomial(&self) -> Option<&[u32]> {
        self.terms.first().map(|t| t.1.as_slice())
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn deg(&self) -> u32 {
        self.terms.iter().map(|t| t.1.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// `deg f - deg lm(f)`.
    pub fn ecart(&self) -> u32 {
        match self.lead_monomial() {
            None => 0,
            Some(e) => self.deg() - e.iter().sum::<u32>(),
        }
    }

    fn check(&self, other: &ZmPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &ZmPoly, sign: bool) -> ZmPoly {
        let m = self.ring.modulus();
        let ord = self.ring.ordering();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let neg = |c: u64| if sign { m.sub(0, c) } else { c };
        while i < a.len() || j < b.len() {
            let c = if i == a.len() {
                Cmp::Less
            } else if j == b.len() {
                Cmp::Greater
            } else {
                ord.compare(&a[i].1, &b[j].1)
            };
            match c {
                Cmp::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Cmp::Less => {
                    out.push((neg(b[j].0), b[j].1.clone()));
                    j += 1;
                }
                Cmp::Equal => {
                    let s = m.add(a[i].0, neg(b[j].0));
                    if s != 0 {
                        out.push((s, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ZmPoly { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &ZmPoly) -> Result<ZmPoly> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &ZmPoly) -> Result<ZmPoly> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    /// `c · x^e · self`.
    pub fn mul_term(&self, c: u64, e: &[u32]) -> ZmPoly {
        let m = self.ring.modulus();
        let terms = self
            .terms
            .iter()
            .filter_map(|(a, f)| {
                let p = m.mul(*a, c);
                (p != 0).then(|| (p, f.iter().zip(e).map(|(x, y)| x + y).collect()))
            })
            .collect();
        // multiplying by a monomial preserves the order; zero products only drop terms
        ZmPoly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: u64) -> ZmPoly {
        self.mul_term(c, &vec![0; self.ring.nvars()])
    }

    pub fn mul(&self, other: &ZmPoly) -> Result<ZmPoly> {
        self.check(other)?;
        let mut acc = self.ring.zero();
        for (c, e) in &other.terms {
            acc = acc.merge(&self.mul_term(*c, e), false);
        }
        Ok(acc)
    }

    /// Value at a point of `(Z/m)^n`.
    pub fn eval(&self, point: &[u64]) -> u64 {
        let m = self.ring.modulus();
        self.terms.iter().fold(0, |acc, (c, e)| {
            let t = e.iter().zip(point).fold(*c, |t, (&k, &x)| (0..k).fold(t, |t, _| m.mul(t, x)));
            m.add(acc, t)
        })
    }

    /// `lcm(lt f, lt g)/lt f · f - lcm(lt f, lt g)/lt g · g`.
    pub fn spoly(&self, g: &ZmPoly) -> Result<ZmPoly> {
        self.check(g)?;
        let ((cf, ef), (cg, eg)) = match (self.lead_term(), g.lead_term()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::ZeroPolynomial),
        };
        let m = self.ring.modulus();
        let l = m.lcm(*cf, *cg);
        let mono = mono_lcm(ef, eg);
        let af = m.quotient(l, *cf).expect("lcm is a multiple");
        let ag = m.quotient(l, *cg).expect("lcm is a multiple");
        let a = self.mul_term(af, &div_mono(&mono, ef));
        let b = g.mul_term(ag, &div_mono(&mono, eg));
        Ok(a.merge(&b, true))
    }

    /// `ann(lc f) · f`.
    pub fn spoly_extended(&self) -> Result<ZmPoly> {
        let c = self.lead_coeff().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(self.ring.modulus().ann_generator(c)))
    }

    /// Whether the lead term of `self` divides that of `other`.
    pub fn lead_divides(&self, other: &ZmPoly) -> bool {
        match (self.lead_term(), other.lead_term()) {
            (Some((a, ea)), Some((b, eb))) => mono_divides(ea, eb) && self.ring.modulus().divides(*a, *b),
            _ => false,
        }
    }
}

impl fmt::Display for ZmPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, e)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mono = self.ring.fmt_monomial(e);
            match (*c, mono.is_empty()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => f.write_str(&mono)?,
                (c, false) => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZmPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZmPoly({self})")
    }
}
