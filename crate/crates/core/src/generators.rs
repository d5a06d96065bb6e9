//! The standard generators `x0`, `x1` and words in them.
//!
//! A word is read left to right: `x0 x1` applies `x0` first. This matches
//! [`PLMap::compose`] and diagram concatenation (top to bottom).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::plmap::PLMap;
use crate::strand::StrandDiagram;
use crate::tree::Tree;

pub fn x0() -> PLMap {
    PLMap::from_ints(&[((0, 1), (0, 1)), ((1, 2), (1, 4)), ((3, 4), (1, 2)), ((1, 1), (1, 1))])
        .expect("valid breakpoints")
}

pub fn x1() -> PLMap {
    PLMap::from_ints(&[
        ((0, 1), (0, 1)),
        ((1, 2), (1, 2)),
        ((3, 4), (5, 8)),
        ((7, 8), (3, 4)),
        ((1, 1), (1, 1)),
    ])
    .expect("valid breakpoints")
}

/// An element with four fixed points in (0,1]: attracting at 0, repelling
/// with slope 4 at 1/3, attracting from the left and repelling from the
/// right at 3/4, attracting at 1. Locally it acts by
/// `.a -> .0a` near 0, `.0101a -> .01a` near 1/3,
/// `.10a -> .101a` and `.1100a -> .110a` near 3/4, `.111a -> .1111a` near 1.
pub fn four_fixed_point_element() -> PLMap {
    PLMap::from_ints(&[
        ((0, 1), (0, 1)),
        ((1, 4), (1, 8)),
        ((5, 16), (1, 4)),
        ((3, 8), (1, 2)),
        ((1, 2), (5, 8)),
        ((3, 4), (3, 4)),
        ((13, 16), (7, 8)),
        ((7, 8), (15, 16)),
        ((1, 1), (1, 1)),
    ])
    .expect("valid breakpoints")
}

/// `x_index^{±1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: u8, inverse: bool) -> Letter {
        Letter { index, inverse }
    }

    pub fn all() -> [Letter; 4] {
        [Letter::new(0, false), Letter::new(0, true), Letter::new(1, false), Letter::new(1, true)]
    }

    pub fn inverted(self) -> Letter {
        Letter { inverse: !self.inverse, ..self }
    }

    pub fn pl_map(self) -> PLMap {
        let f = if self.index == 0 { x0() } else { x1() };
        if self.inverse {
            f.invert()
        } else {
            f
        }
    }

    pub fn diagram(self) -> StrandDiagram {
        let (d, r) = if self.index == 0 {
            ("(*(**))", "((**)*)")
        } else {
            ("(*(*(**)))", "(*((**)*))")
        };
        let (d, r): (Tree, Tree) = (d.parse().unwrap(), r.parse().unwrap());
        let diag = StrandDiagram::from_tree_pair(&d, &r).expect("equal leaf counts");
        if self.inverse {
            diag.invert()
        } else {
            diag
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn pl_map(&self) -> PLMap {
        self.0.iter().fold(PLMap::identity_unit(1), |acc, l| {
            acc.compose(&l.pl_map()).expect("unit interval maps compose")
        })
    }

    /// Concatenation of the generator diagrams, unreduced.
    pub fn diagram(&self) -> StrandDiagram {
        self.0.iter().fold(StrandDiagram::trivial(1), |acc, l| {
            acc.concatenate(&l.diagram()).expect("(1,1) diagrams concatenate")
        })
    }

    /// All words of length exactly `len` over `x0^{±1}, x1^{±1}`.
    pub fn all_of_length(len: usize) -> Vec<Word> {
        let mut out = vec![Word::default()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    Letter::all().into_iter().map(move |l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }

    /// All words of length at most `len`.
    pub fn all_up_to(len: usize) -> Vec<Word> {
        (0..=len).flat_map(Word::all_of_length).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.inverse { format!("x{}^-1", l.index) } else { format!("x{}", l.index) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses whitespace-separated tokens `x0`, `x1`, optionally raised to an
/// integer power (`x1^-1`, `x0^2`). `offset` shifts reported positions.
pub(crate) fn parse_word(s: &str, offset: usize) -> Result<Word> {
    let mut letters = Vec::new();
    let mut pos = 0;
    for tok in s.split_whitespace() {
        let at = offset + pos + s[pos..].find(tok).unwrap_or(0);
        pos = at - offset + tok.len();
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => {
                let e: i64 = e.parse().map_err(|_| {
                    Error::parse(at + b.len() + 1, format!("bad exponent {e:?}"))
                })?;
                (b, e)
            }
            None => (tok, 1),
        };
        let index = match base {
            "x0" => 0,
            "x1" => 1,
            _ => return Err(Error::parse(at, format!("unknown generator {base:?}"))),
        };
        if exp.unsigned_abs() > 10_000 {
            return Err(Error::parse(at, "exponent too large"));
        }
        let letter = Letter::new(index, exp < 0);
        letters.extend(std::iter::repeat(letter).take(exp.unsigned_abs() as usize));
    }
    Ok(Word(letters))
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse_word(s, 0)
    }
}
