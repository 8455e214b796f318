//! Bundle expressions such as `P1: O(0)^2 + O(1) + O(2)` or
//! `P2: rank2(c1=3,c2=3)`.

use std::fmt;

use thiserror::Error;

use super::lex::{tokenize, Cursor, SyntaxError, Tok};
use crate::theorems::PlaneBundleInput;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    Line,
    Plane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Summand {
    /// `O(twist)^multiplicity`
    Line { twist: i64, multiplicity: u32 },
    Rank2 { c1: i64, c2: i64 },
}

impl Summand {
    fn rank(&self) -> u64 {
        match self {
            Summand::Line { multiplicity, .. } => u64::from(*multiplicity),
            Summand::Rank2 { .. } => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BundleExpr {
    pub base: Base,
    pub summands: Vec<Summand>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("{0}")]
    Syntax(SyntaxError),
    #[error("{0}")]
    Rank(String),
}

impl From<SyntaxError> for BundleError {
    fn from(e: SyntaxError) -> Self {
        BundleError::Syntax(e)
    }
}

pub fn parse_bundle(text: &str) -> Result<BundleExpr, BundleError> {
    let mut cur = Cursor::new(tokenize(text, ":+^(),=-")?, text.chars().count());
    let base = match cur.next() {
        Some(Tok::Ident(s)) if s == "P1" => Base::Line,
        Some(Tok::Ident(s)) if s == "P2" => Base::Plane,
        _ => {
            return Err(SyntaxError {
                pos: 0,
                message: "expected base P1 or P2".into(),
            }
            .into())
        }
    };
    cur.expect_punct(':')?;
    let mut summands = vec![term(&mut cur)?];
    while cur.eat_punct('+') {
        summands.push(term(&mut cur)?);
    }
    cur.expect_end()?;
    Ok(BundleExpr { base, summands })
}

fn term(cur: &mut Cursor) -> Result<Summand, SyntaxError> {
    match cur.peek() {
        Some(Tok::Ident(s)) if s == "O" => {
            cur.next();
            cur.expect_punct('(')?;
            let twist = cur.signed()?;
            cur.expect_punct(')')?;
            let multiplicity = if cur.eat_punct('^') {
                let pos = cur.pos();
                match u32::try_from(cur.unsigned()?) {
                    Ok(m) if m > 0 => m,
                    _ => {
                        return Err(SyntaxError {
                            pos,
                            message: "exponent must be a positive integer".into(),
                        })
                    }
                }
            } else {
                1
            };
            Ok(Summand::Line { twist, multiplicity })
        }
        Some(Tok::Ident(s)) if s == "rank2" => {
            cur.next();
            cur.expect_punct('(')?;
            cur.expect_ident("c1")?;
            cur.expect_punct('=')?;
            let c1 = cur.signed()?;
            cur.expect_punct(',')?;
            cur.expect_ident("c2")?;
            cur.expect_punct('=')?;
            let c2 = cur.signed()?;
            cur.expect_punct(')')?;
            Ok(Summand::Rank2 { c1, c2 })
        }
        _ => cur.error("expected O(n) or rank2(c1=..,c2=..)"),
    }
}

impl BundleExpr {
    pub fn rank(&self) -> u64 {
        self.summands.iter().map(Summand::rank).sum()
    }

    fn line_twists(&self) -> Option<Vec<i64>> {
        let mut out = Vec::new();
        for s in &self.summands {
            match s {
                Summand::Line { twist, multiplicity } => {
                    out.extend(std::iter::repeat_n(*twist, *multiplicity as usize))
                }
                Summand::Rank2 { .. } => return None,
            }
        }
        Some(out)
    }

    /// The four twists of a split rank four bundle on the line.
    pub fn rank4_line(&self) -> Result<[i64; 4], BundleError> {
        if self.base != Base::Line {
            return Err(BundleError::Rank("expected a bundle on P1".into()));
        }
        let twists = self
            .line_twists()
            .ok_or_else(|| BundleError::Rank("rank2(...) summands are only allowed on P2".into()))?;
        twists
            .as_slice()
            .try_into()
            .map_err(|_| BundleError::Rank(format!("expected rank 4 on P1, got rank {}", self.rank())))
    }

    /// A rank two bundle on the plane, split if given by line bundles.
    pub fn rank2_plane(&self) -> Result<PlaneBundleInput, BundleError> {
        if self.base != Base::Plane {
            return Err(BundleError::Rank("expected a bundle on P2".into()));
        }
        if self.rank() != 2 {
            return Err(BundleError::Rank(format!("expected rank 2 on P2, got rank {}", self.rank())));
        }
        match (self.summands.as_slice(), self.line_twists()) {
            ([Summand::Rank2 { c1, c2 }], _) => Ok(PlaneBundleInput::new(*c1, *c2)),
            (_, Some(t)) => Ok(PlaneBundleInput::split(t[0], t[1])),
            _ => unreachable!("rank two from a single rank2 term or two line bundles"),
        }
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            Base::Line => "P1",
            Base::Plane => "P2",
        };
        write!(f, "{base}: ")?;
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match s {
                Summand::Line { twist, multiplicity: 1 } => write!(f, "O({twist})")?,
                Summand::Line { twist, multiplicity } => write!(f, "O({twist})^{multiplicity}")?,
                Summand::Rank2 { c1, c2 } => write!(f, "rank2(c1={c1},c2={c2})")?,
            }
        }
        Ok(())
    }
}
