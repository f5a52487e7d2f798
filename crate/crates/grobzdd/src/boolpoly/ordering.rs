use std::cmp::Ordering as Cmp;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::zdd::VarIndex;

/// Degree ordering usable inside a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    DegLex,
    /// Degree reverse lexicographic with the variable order reversed.
    DegRevLexAsc,
}

/// One segment `[previous end, end)` of a block ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub kind: BlockKind,
    pub end: VarIndex,
}

/// Monomial ordering. Variable `x_0` is the largest variable in `Lex` and
/// `DegLex`; `DegRevLexAsc` is degrevlex on `x_{n-1} > … > x_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ordering {
    Lex,
    DegLex,
    DegRevLexAsc,
    Block(Vec<Block>),
}

impl Ordering {
    /// Checks that block segments partition `0..n`.
    pub fn validate(&self, n: u32) -> Result<()> {
        if let Ordering::Block(blocks) = self {
            if blocks.is_empty() {
                return Err(Error::InvalidOrdering("empty block list".into()));
            }
            let mut prev = 0;
            for b in blocks {
                if b.end <= prev {
                    return Err(Error::InvalidOrdering("block ends must increase".into()));
                }
                prev = b.end;
            }
            if prev != n {
                return Err(Error::InvalidOrdering(format!("last block ends at {prev}, expected {n}")));
            }
        }
        Ok(())
    }

    pub fn is_degree_ordering(&self) -> bool {
        !matches!(self, Ordering::Lex)
    }

    /// Block containing `v` as `(start, end, kind)`.
    pub(crate) fn block_of(&self, v: VarIndex) -> (VarIndex, VarIndex, BlockKind) {
        match self {
            Ordering::Lex | Ordering::DegLex => (0, VarIndex::MAX, BlockKind::DegLex),
            Ordering::DegRevLexAsc => (0, VarIndex::MAX, BlockKind::DegRevLexAsc),
            Ordering::Block(blocks) => {
                let mut start = 0;
                for b in blocks {
                    if v < b.end {
                        return (start, b.end, b.kind);
                    }
                    start = b.end;
                }
                let last = blocks.last().expect("validated block ordering");
                (start, VarIndex::MAX, last.kind)
            }
        }
    }

    /// Compares monomials given as ascending variable lists.
    pub fn compare(&self, a: &[VarIndex], b: &[VarIndex]) -> Cmp {
        match self {
            Ordering::Lex => lex_cmp(a, b),
            Ordering::DegLex => a.len().cmp(&b.len()).then_with(|| lex_cmp(a, b)),
            Ordering::DegRevLexAsc => a.len().cmp(&b.len()).then_with(|| lex_cmp(b, a)),
            Ordering::Block(blocks) => {
                let mut start = 0;
                for blk in blocks {
                    let ra: Vec<VarIndex> = a.iter().copied().filter(|&v| v >= start && v < blk.end).collect();
                    let rb: Vec<VarIndex> = b.iter().copied().filter(|&v| v >= start && v < blk.end).collect();
                    let c = match blk.kind {
                        BlockKind::DegLex => Ordering::DegLex.compare(&ra, &rb),
                        BlockKind::DegRevLexAsc => Ordering::DegRevLexAsc.compare(&ra, &rb),
                    };
                    if c != Cmp::Equal {
                        return c;
                    }
                    start = blk.end;
                }
                Cmp::Equal
            }
        }
    }
}

/// Lexicographic comparison with `x_0` largest: the monomial containing the
/// smallest index in the symmetric difference wins.
pub(crate) fn lex_cmp(a: &[VarIndex], b: &[VarIndex]) -> Cmp {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return if x < y { Cmp::Greater } else { Cmp::Less };
        }
    }
    a.len().cmp(&b.len())
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = |k: &BlockKind| match k {
            BlockKind::DegLex => "dlex",
            BlockKind::DegRevLexAsc => "dp_asc",
        };
        match self {
            Ordering::Lex => write!(f, "lp"),
            Ordering::DegLex => write!(f, "dlex"),
            Ordering::DegRevLexAsc => write!(f, "dp_asc"),
            Ordering::Block(bs) => {
                write!(f, "block(")?;
                for (i, b) in bs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}:{}", kind(&b.kind), b.end)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for Ordering {
    type Err = Error;

    /// Accepts `lp`/`lex`, `dlex`/`Dp`, `dp_asc`, and
    /// `block(dlex:3,dp_asc:7)` where each number is a block end.
    fn from_str(s: &str) -> Result<Ordering> {
        let s = s.trim();
        match s {
            "lp" | "lex" => return Ok(Ordering::Lex),
            "dlex" | "Dp" | "deglex" => return Ok(Ordering::DegLex),
            "dp_asc" => return Ok(Ordering::DegRevLexAsc),
            _ => {}
        }
        let inner = s
            .strip_prefix("block(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidOrdering(format!("unknown ordering `{s}`")))?;
        let mut blocks = Vec::new();
        for seg in inner.split(',') {
            let (k, e) = seg
                .split_once(':')
                .ok_or_else(|| Error::InvalidOrdering(format!("block segment `{seg}` needs kind:end")))?;
            let kind = match k.trim() {
                "dlex" | "Dp" => BlockKind::DegLex,
                "dp_asc" => BlockKind::DegRevLexAsc,
                other => return Err(Error::InvalidOrdering(format!("`{other}` is not a degree ordering"))),
            };
            let end = e.trim().parse().map_err(|_| Error::InvalidOrdering(format!("bad block end `{e}`")))?;
            blocks.push(Block { kind, end });
        }
        Ok(Ordering::Block(blocks))
    }
}
