//! Finite rooted binary trees, i.e. standard dyadic subdivisions of an interval.

use std::fmt;
use std::str::FromStr;

use crate::dyadic::{q, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn caret() -> Tree {
        Tree::node(Tree::Leaf, Tree::Leaf)
    }

    pub fn node(l: Tree, r: Tree) -> Tree {
        Tree::Node(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Leaf intervals of `[lo, hi]` in left-to-right order.
    pub fn leaf_intervals(&self, lo: &Q, hi: &Q) -> Vec<(Q, Q)> {
        let mut out = Vec::new();
        self.collect(lo.clone(), hi.clone(), &mut out);
        out
    }

    fn collect(&self, lo: Q, hi: Q, out: &mut Vec<(Q, Q)>) {
        match self {
            Tree::Leaf => out.push((lo, hi)),
            Tree::Node(l, r) => {
                let mid = (&lo + &hi) / q(2, 1);
                l.collect(lo, mid.clone(), out);
                r.collect(mid, hi, out);
            }
        }
    }

    /// The tree whose leaves are the pieces of `[lo, hi]` cut at `cuts`
    /// (strictly interior, increasing). Fails unless the cuts form a
    /// standard dyadic subdivision.
    pub fn from_cuts(lo: &Q, hi: &Q, cuts: &[Q]) -> Result<Tree> {
        if cuts.is_empty() {
            return Ok(Tree::Leaf);
        }
        let mid = (lo + hi) / q(2, 1);
        let Ok(at) = cuts.binary_search(&mid) else {
            return Err(Error::InvalidMap(format!(
                "cut points do not form a standard dyadic subdivision of [{lo}, {hi}]"
            )));
        };
        Ok(Tree::node(
            Tree::from_cuts(lo, &mid, &cuts[..at])?,
            Tree::from_cuts(&mid, hi, &cuts[at + 1..])?,
        ))
    }

    /// Replaces leaf `i` (0-based, left to right) by a caret.
    pub fn split_leaf(&self, i: usize) -> Tree {
        fn go(t: &Tree, i: &mut usize) -> Tree {
            match t {
                Tree::Leaf => {
                    if *i == 0 {
                        *i = usize::MAX;
                        Tree::caret()
                    } else {
                        *i = i.wrapping_sub(1);
                        Tree::Leaf
                    }
                }
                Tree::Node(l, r) => {
                    let l = go(l, i);
                    let r = go(r, i);
                    Tree::node(l, r)
                }
            }
        }
        let mut k = i;
        go(self, &mut k)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "*"),
            Tree::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

/// Parses `*` for a leaf and `(LR)` for a caret; whitespace is ignored.
/// `offset` shifts reported error positions.
pub(crate) fn parse_tree(s: &str, offset: usize) -> Result<Tree> {
    let chars: Vec<(usize, char)> =
        s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut pos = 0;
    let t = parse_at(&chars, &mut pos, offset, s.len())?;
    if pos != chars.len() {
        return Err(Error::parse(offset + chars[pos].0, "trailing input after tree"));
    }
    Ok(t)
}

fn parse_at(chars: &[(usize, char)], pos: &mut usize, offset: usize, end: usize) -> Result<Tree> {
    let Some(&(at, c)) = chars.get(*pos) else {
        return Err(Error::parse(offset + end, "unexpected end of tree"));
    };
    *pos += 1;
    match c {
        '*' => Ok(Tree::Leaf),
        '(' => {
            let l = parse_at(chars, pos, offset, end)?;
            let r = parse_at(chars, pos, offset, end)?;
            match chars.get(*pos) {
                Some((_, ')')) => {
                    *pos += 1;
                    Ok(Tree::node(l, r))
                }
                Some(&(at, _)) => Err(Error::parse(offset + at, "expected ')'")),
                None => Err(Error::parse(offset + end, "missing ')'")),
            }
        }
        _ => Err(Error::parse(offset + at, format!("unexpected {c:?} in tree"))),
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        parse_tree(s, 0)
    }
}
