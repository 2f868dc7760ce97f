//! Contiguous and noncontiguous pattern containment, and universality checks.
//!
//! Contiguous containment is decided directly by matching the pattern at each
//! host vertex. Noncontiguous containment is decided by exhaustive search over
//! the trees reachable by legal edge contractions, keyed by structural value;
//! the only pruning is by size and height, since contraction lowers the size by
//! exactly one and never raises the height.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::tree::{enumerate_bracket, enumerate_dary, BracketTree, DaryTree, Kind, Tree};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Contiguous,
    Noncontiguous,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Contiguous => "contiguous",
            Mode::Noncontiguous => "noncontiguous",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "contiguous" | "con" => Ok(Mode::Contiguous),
            "noncontiguous" | "non" => Ok(Mode::Noncontiguous),
            _ => Err(Error::InvalidArgument(format!(
                "unknown containment mode {s:?}"
            ))),
        }
    }
}

/// What the containment and search machinery needs from a tree kind.
pub trait PlaneTree: Clone + Eq + Hash + Send + Sync + fmt::Debug {
    const KIND: Kind;

    fn degree_bound(&self) -> usize;
    fn size(&self) -> usize;
    fn height(&self) -> usize;
    fn encode(&self) -> String;
    /// Every tree obtained by one legal contraction.
    fn contractions(&self) -> Vec<Self>;
    fn contains_contiguously(&self, pattern: &Self) -> bool;
    /// All trees of this kind on `k` vertices in code order.
    fn enumerate(d: usize, k: usize) -> Vec<Self>;
}

impl PlaneTree for DaryTree {
    const KIND: Kind = Kind::Dary;

    fn degree_bound(&self) -> usize {
        self.arity()
    }
    fn size(&self) -> usize {
        DaryTree::size(self)
    }
    fn height(&self) -> usize {
        DaryTree::height(self)
    }
    fn encode(&self) -> String {
        DaryTree::encode(self)
    }
    fn contractions(&self) -> Vec<Self> {
        let parents = self.parents();
        (1..DaryTree::size(self))
            .filter(|&v| self.legal_with(v, &parents))
            .map(|v| self.contract_child(v, &parents))
            .collect()
    }
    fn contains_contiguously(&self, pattern: &Self) -> bool {
        contig_dary_unchecked(self, pattern)
    }
    fn enumerate(d: usize, k: usize) -> Vec<Self> {
        enumerate_dary(d, k)
    }
}

impl PlaneTree for BracketTree {
    const KIND: Kind = Kind::Bracket;

    fn degree_bound(&self) -> usize {
        self.bound()
    }
    fn size(&self) -> usize {
        BracketTree::size(self)
    }
    fn height(&self) -> usize {
        BracketTree::height(self)
    }
    fn encode(&self) -> String {
        BracketTree::encode(self)
    }
    fn contractions(&self) -> Vec<Self> {
        let parents = self.parents();
        (1..BracketTree::size(self))
            .filter(|&v| self.legal_with(v, &parents))
            .map(|v| self.contract_child(v, &parents))
            .collect()
    }
    fn contains_contiguously(&self, pattern: &Self) -> bool {
        contig_bracket_unchecked(self, pattern)
    }
    fn enumerate(d: usize, k: usize) -> Vec<Self> {
        enumerate_bracket(d, k)
    }
}

fn contig_dary_unchecked(host: &DaryTree, pattern: &DaryTree) -> bool {
    fn matches(h: &DaryTree, x: usize, p: &DaryTree, y: usize) -> bool {
        p.children(y)
            .all(|(s, pc)| h.child(x, s).is_some_and(|hc| matches(h, hc, p, pc)))
    }
    pattern.size() <= host.size() && (0..host.size()).any(|x| matches(host, x, pattern, 0))
}

fn contig_bracket_unchecked(host: &BracketTree, pattern: &BracketTree) -> bool {
    let (n, m) = (host.size(), pattern.size());
    if m > n {
        return false;
    }
    // fits[x * m + y]: pattern subtree at y embeds with its root at host vertex x.
    // Reverse preorder fills children before parents.
    let mut fits = vec![false; n * m];
    for x in (0..n).rev() {
        for y in (0..m).rev() {
            // leftmost greedy choice is optimal for an order-preserving subsequence
            let mut hs = host.children(x);
            let ok = pattern.children(y).all(|pc| hs.any(|hc| fits[hc * m + pc]));
            fits[x * m + y] = ok;
        }
    }
    (0..n).any(|x| fits[x * m])
}

fn check_compatible<T: PlaneTree>(host: &T, pattern: &T) -> Result<()> {
    if host.degree_bound() != pattern.degree_bound() {
        return Err(Error::ArityMismatch(
            host.degree_bound(),
            pattern.degree_bound(),
        ));
    }
    Ok(())
}

/// Whether `pattern` occurs in `host` as a connected induced subgraph with matching slot types.
pub fn contig_dary(host: &DaryTree, pattern: &DaryTree) -> Result<bool> {
    check_compatible(host, pattern)?;
    Ok(contig_dary_unchecked(host, pattern))
}

/// Whether `pattern` occurs in `host` as a connected induced subgraph respecting child order.
pub fn contig_bracket(host: &BracketTree, pattern: &BracketTree) -> Result<bool> {
    check_compatible(host, pattern)?;
    Ok(contig_bracket_unchecked(host, pattern))
}

/// Whether `pattern` is reachable from `host` by legal edge contractions.
pub fn noncontig<T: PlaneTree>(host: &T, pattern: &T) -> Result<bool> {
    check_compatible(host, pattern)?;
    Ok(noncontig_unchecked(host, pattern).0)
}

/// Returns the verdict and the number of distinct states visited.
fn noncontig_unchecked<T: PlaneTree>(host: &T, pattern: &T) -> (bool, usize) {
    let (k, h) = (pattern.size(), pattern.height());
    if host.size() < k || host.height() < h {
        return (false, 0);
    }
    let mut seen: HashSet<T> = HashSet::new();
    let mut stack = vec![host.clone()];
    seen.insert(host.clone());
    while let Some(t) = stack.pop() {
        if t.size() == k {
            if &t == pattern {
                return (true, seen.len());
            }
            continue;
        }
        for c in t.contractions() {
            if c.height() >= h && !seen.contains(&c) {
                seen.insert(c.clone());
                stack.push(c);
            }
        }
    }
    (false, seen.len())
}

/// All size-`k` trees reachable from a host by legal contractions.
#[derive(Debug, Clone)]
pub struct Closure<T> {
    pub trees: HashSet<T>,
    /// Distinct trees visited, including the host.
    pub states: usize,
}

pub fn closure_at_size<T: PlaneTree>(host: &T, k: usize) -> Closure<T> {
    let mut trees = HashSet::new();
    if k == 0 || k > host.size() {
        return Closure { trees, states: 0 };
    }
    let mut seen: HashSet<T> = HashSet::new();
    seen.insert(host.clone());
    let mut stack = vec![host.clone()];
    while let Some(t) = stack.pop() {
        if t.size() == k {
            trees.insert(t);
            continue;
        }
        for c in t.contractions() {
            if !seen.contains(&c) {
                seen.insert(c.clone());
                stack.push(c);
            }
        }
    }
    Closure {
        trees,
        states: seen.len(),
    }
}

/// Canonical codes of [`closure_at_size`] for a tree of either kind.
pub fn closure_codes(host: &Tree, k: usize) -> BTreeSet<String> {
    match host {
        Tree::Dary(t) => closure_at_size(t, k)
            .trees
            .iter()
            .map(DaryTree::encode)
            .collect(),
        Tree::Bracket(t) => closure_at_size(t, k)
            .trees
            .iter()
            .map(BracketTree::encode)
            .collect(),
    }
}

/// Containment for trees of either kind.
pub fn contains(host: &Tree, pattern: &Tree, mode: Mode) -> Result<bool> {
    match (host, pattern, mode) {
        (Tree::Dary(h), Tree::Dary(p), Mode::Contiguous) => contig_dary(h, p),
        (Tree::Bracket(h), Tree::Bracket(p), Mode::Contiguous) => contig_bracket(h, p),
        (Tree::Dary(h), Tree::Dary(p), Mode::Noncontiguous) => noncontig(h, p),
        (Tree::Bracket(h), Tree::Bracket(p), Mode::Noncontiguous) => noncontig(h, p),
        _ => Err(Error::KindMismatch(
            host.kind().to_string(),
            pattern.kind().to_string(),
        )),
    }
}

/// Outcome of checking one host against a full pattern list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// Index (in the pattern list) of the first pattern not contained.
    pub first_missing: Option<usize>,
    pub patterns_checked: usize,
    pub states: usize,
}

impl Verdict {
    pub fn universal(&self) -> bool {
        self.first_missing.is_none()
    }
}

/// Sequential universality check; `patterns` must all have the same size.
pub fn check_universal<T: PlaneTree>(host: &T, patterns: &[T], mode: Mode) -> Verdict {
    let Some(k) = patterns.first().map(PlaneTree::size) else {
        return Verdict {
            first_missing: None,
            patterns_checked: 0,
            states: 0,
        };
    };
    match mode {
        Mode::Contiguous => {
            let first_missing = patterns.iter().position(|p| !host.contains_contiguously(p));
            Verdict {
                first_missing,
                patterns_checked: first_missing.map_or(patterns.len(), |i| i + 1),
                states: 0,
            }
        }
        Mode::Noncontiguous => {
            let closure = closure_at_size(host, k);
            let first_missing = patterns.iter().position(|p| !closure.trees.contains(p));
            Verdict {
                first_missing,
                patterns_checked: first_missing.map_or(patterns.len(), |i| i + 1),
                states: closure.states,
            }
        }
    }
}

/// Like [`check_universal`] but fans contiguous pattern checks out over the
/// current rayon pool; the reported counterexample is still the first in order.
pub fn check_universal_par<T: PlaneTree>(host: &T, patterns: &[T], mode: Mode) -> Verdict {
    match mode {
        Mode::Contiguous => {
            let first_missing = patterns
                .par_iter()
                .position_first(|p| !host.contains_contiguously(p));
            Verdict {
                first_missing,
                patterns_checked: first_missing.map_or(patterns.len(), |i| i + 1),
                states: 0,
            }
        }
        // one closure serves every pattern
        Mode::Noncontiguous => check_universal(host, patterns, mode),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalityStats {
    pub patterns_checked: usize,
    pub states: usize,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalityReport {
    pub host: String,
    pub d: usize,
    pub k: usize,
    pub kind: Kind,
    pub mode: Mode,
    pub verdict: bool,
    pub counterexample: Option<String>,
    pub stats: UniversalityStats,
}

fn report_for<T: PlaneTree>(host: &T, k: usize, mode: Mode) -> UniversalityReport {
    let start = Instant::now();
    let d = host.degree_bound();
    let patterns = T::enumerate(d, k);
    let v = check_universal_par(host, &patterns, mode);
    UniversalityReport {
        host: host.encode(),
        d,
        k,
        kind: T::KIND,
        mode,
        verdict: v.universal(),
        counterexample: v.first_missing.map(|i| patterns[i].encode()),
        stats: UniversalityStats {
            patterns_checked: v.patterns_checked,
            states: v.states,
            elapsed_ms: start.elapsed().as_millis() as u64,
        },
    }
}

/// Does `host` contain every `k`-vertex tree of its kind under `mode`?
///
/// `d` and `kind` must agree with the host.
pub fn universal(
    host: &Tree,
    d: usize,
    k: usize,
    kind: Kind,
    mode: Mode,
) -> Result<UniversalityReport> {
    if host.kind() != kind {
        return Err(Error::KindMismatch(
            host.kind().to_string(),
            kind.to_string(),
        ));
    }
    if host.degree_bound() != d {
        return Err(Error::ArityMismatch(host.degree_bound(), d));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(match host {
        Tree::Dary(t) => report_for(t, k, mode),
        Tree::Bracket(t) => report_for(t, k, mode),
    })
}
