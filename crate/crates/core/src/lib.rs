//! Universal rooted plane trees.
//!
//! Tree types and canonical codes live in [`tree`]; [`containment`] decides
//! contiguous and noncontiguous pattern containment; [`constructions`] builds
//! the universal families together with their size recurrences; [`perm`] holds
//! the bijection between binary plane trees and 231-avoiding permutations;
//! [`transforms`] converts between tree kinds; [`bounds`] evaluates the closed
//! forms; [`search`] computes exact minimal universal sizes by exhaustion.

pub mod bounds;
pub mod constructions;
pub mod containment;
pub mod error;
pub mod perm;
pub mod search;
pub mod transforms;
pub mod tree;

pub use error::{Error, Result};
pub use tree::{decode, BracketTree, DaryTree, Kind, Tree, VertexRef};
