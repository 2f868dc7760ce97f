//! Rooted plane trees of the two kinds studied here.
//!
//! A [`DaryTree`] gives every vertex `d` positional child slots, any of which
//! may be empty; the slot index of a child is the *type* of the edge above it.
//! A [`BracketTree`] (a `[d]`-tree) keeps only an ordered list of at most `d`
//! children per vertex. Both are immutable values stored in preorder, so
//! structural equality coincides with plane-tree isomorphism.
//!
//! Slot types and child positions are 1-based throughout the public API.

mod bracket;
mod code;
mod count;
mod dary;
mod enumerate;
pub mod random;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bracket::BracketTree;
pub use code::decode;
pub use count::{count_bracket, count_dary};
pub use dary::DaryTree;
pub use enumerate::{enumerate_bracket, enumerate_dary};

use crate::{Error, Result};

pub(crate) const NIL: u32 = u32::MAX;

/// Which family of plane trees a value or query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Dary,
    Bracket,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Dary => "dary",
            Kind::Bracket => "bracket",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dary" | "d-ary" => Ok(Kind::Dary),
            "bracket" => Ok(Kind::Bracket),
            _ => Err(Error::InvalidArgument(format!("unknown tree kind {s:?}"))),
        }
    }
}

/// Path from the root: a sequence of 1-based slot types (d-ary) or child
/// positions (bracket). The empty path is the root.
///
/// Paths to existing vertices stay valid when a tree is grown by gluing, which
/// is what the recursive constructions rely on.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexRef(Vec<usize>);

impl VertexRef {
    pub fn root() -> Self {
        VertexRef(Vec::new())
    }

    pub fn new(path: Vec<usize>) -> Self {
        VertexRef(path)
    }

    pub fn path(&self) -> &[usize] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// The vertex reached by one more step.
    pub fn child(&self, step: usize) -> Self {
        let mut p = self.0.clone();
        p.push(step);
        VertexRef(p)
    }

    /// This path followed by `rest`.
    pub fn join(&self, rest: &VertexRef) -> Self {
        let mut p = self.0.clone();
        p.extend_from_slice(&rest.0);
        VertexRef(p)
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// A tree of either kind, as produced by [`decode`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Dary(DaryTree),
    Bracket(BracketTree),
}

impl Tree {
    pub fn kind(&self) -> Kind {
        match self {
            Tree::Dary(_) => Kind::Dary,
            Tree::Bracket(_) => Kind::Bracket,
        }
    }

    /// Arity of a d-ary tree or child bound of a bracket tree.
    pub fn degree_bound(&self) -> usize {
        match self {
            Tree::Dary(t) => t.arity(),
            Tree::Bracket(t) => t.bound(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Tree::Dary(t) => t.size(),
            Tree::Bracket(t) => t.size(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Tree::Dary(t) => t.height(),
            Tree::Bracket(t) => t.height(),
        }
    }

    pub fn encode(&self) -> String {
        match self {
            Tree::Dary(t) => t.encode(),
            Tree::Bracket(t) => t.encode(),
        }
    }

    pub fn glue(&self, at: &VertexRef, sub: &Tree) -> Result<Tree> {
        match (self, sub) {
            (Tree::Dary(h), Tree::Dary(s)) => h.glue(at, s).map(Tree::Dary),
            (Tree::Bracket(h), Tree::Bracket(s)) => h.glue(at, s).map(Tree::Bracket),
            _ => Err(Error::KindMismatch(
                self.kind().to_string(),
                sub.kind().to_string(),
            )),
        }
    }

    pub fn as_dary(&self) -> Option<&DaryTree> {
        match self {
            Tree::Dary(t) => Some(t),
            Tree::Bracket(_) => None,
        }
    }

    pub fn as_bracket(&self) -> Option<&BracketTree> {
        match self {
            Tree::Bracket(t) => Some(t),
            Tree::Dary(_) => None,
        }
    }
}

impl From<DaryTree> for Tree {
    fn from(t: DaryTree) -> Self {
        Tree::Dary(t)
    }
}

impl From<BracketTree> for Tree {
    fn from(t: BracketTree) -> Self {
        Tree::Bracket(t)
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        decode(s)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// Reads a tree-list file: one code per line, `#` comments and blank lines skipped.
pub fn parse_tree_list(text: &str) -> Result<Vec<Tree>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(decode)
        .collect()
}
