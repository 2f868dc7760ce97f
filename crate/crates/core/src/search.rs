//! Exhaustive computation of minimal universal tree sizes.
//!
//! Hosts are visited size by size and, within a size, in canonical code order.
//! Each chunk of hosts is checked in parallel, then scanned sequentially, so
//! the reported witness and statistics do not depend on the worker count.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::independent_lower;
use crate::containment::{check_universal, Mode, PlaneTree};
use crate::tree::{BracketTree, DaryTree, Kind};
use crate::{Error, Result};

const CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityResult {
    pub d: usize,
    pub k: usize,
    pub kind: Kind,
    pub mode: Mode,
    pub n_start: usize,
    pub n_min: usize,
    pub witness: String,
    /// Hosts examined at each size; sizes below `n_min` were exhausted.
    pub hosts_checked: BTreeMap<usize, u64>,
    pub states: u64,
    pub elapsed_ms: u64,
}

impl MinimalityResult {
    pub fn total_hosts(&self) -> u64 {
        self.hosts_checked.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeScan {
    pub n: usize,
    /// First universal host in code order.
    pub witness: Option<String>,
    pub hosts_checked: u64,
    pub states: u64,
}

impl SizeScan {
    /// No host of this size is universal.
    pub fn refuted(&self) -> bool {
        self.witness.is_none()
    }
}

fn scan<T: PlaneTree>(d: usize, n: usize, patterns: &[T], mode: Mode) -> SizeScan {
    let k = patterns.first().map_or(0, PlaneTree::size);
    if n < k {
        return SizeScan {
            n,
            witness: None,
            hosts_checked: 0,
            states: 0,
        };
    }
    let need_height = patterns.iter().map(PlaneTree::height).max().unwrap_or(0);
    let hosts = T::enumerate(d, n);
    let (mut checked, mut states) = (0u64, 0u64);
    for chunk in hosts.chunks(CHUNK) {
        let verdicts: Vec<(bool, usize)> = chunk
            .par_iter()
            .map(|h| {
                if h.height() < need_height {
                    return (false, 0);
                }
                let v = check_universal(h, patterns, mode);
                (v.universal(), v.states)
            })
            .collect();
        for (h, (ok, s)) in chunk.iter().zip(verdicts) {
            checked += 1;
            states += s as u64;
            if ok {
                return SizeScan {
                    n,
                    witness: Some(h.encode()),
                    hosts_checked: checked,
                    states,
                };
            }
        }
    }
    SizeScan {
        n,
        witness: None,
        hosts_checked: checked,
        states,
    }
}

fn check_query(d: usize, k: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "d must be at least 2, got {d}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

/// Checks every `n`-vertex host; runs on the current rayon pool.
pub fn refute_size(d: usize, k: usize, kind: Kind, mode: Mode, n: usize) -> Result<SizeScan> {
    check_query(d, k)?;
    Ok(match kind {
        Kind::Dary => scan(d, n, &DaryTree::enumerate(d, k), mode),
        Kind::Bracket => scan(d, n, &BracketTree::enumerate(d, k), mode),
    })
}

/// Where a search starts when no size is given: the best lower bound that
/// does not assume the answer.
pub fn default_start(d: usize, k: usize, kind: Kind, mode: Mode) -> Result<usize> {
    Ok(independent_lower(d, k, kind, mode)? as usize)
}

fn minimal_generic<T: PlaneTree>(
    d: usize,
    k: usize,
    mode: Mode,
    n_start: usize,
    n_cap: usize,
) -> Result<MinimalityResult> {
    let start = Instant::now();
    let patterns = T::enumerate(d, k);
    let mut hosts_checked = BTreeMap::new();
    let mut states = 0u64;
    for n in n_start..=n_cap {
        let s = scan(d, n, &patterns, mode);
        hosts_checked.insert(n, s.hosts_checked);
        states += s.states;
        if let Some(witness) = s.witness {
            return Ok(MinimalityResult {
                d,
                k,
                kind: T::KIND,
                mode,
                n_start,
                n_min: n,
                witness,
                hosts_checked,
                states,
                elapsed_ms: start.elapsed().as_millis() as u64,
            });
        }
    }
    Err(Error::CapExceeded {
        from: n_start,
        cap: n_cap,
    })
}

/// Smallest host size admitting a universal tree, with the first witness in
/// code order. Every size from `n_start` (default [`default_start`]) up to
/// the answer is exhausted; sizes below `n_start` are covered by the bound.
pub fn minimal_size(
    d: usize,
    k: usize,
    kind: Kind,
    mode: Mode,
    n_start: Option<usize>,
    n_cap: usize,
) -> Result<MinimalityResult> {
    check_query(d, k)?;
    if n_cap < k {
        return Err(Error::InvalidArgument(format!(
            "n_cap {n_cap} is below k = {k}"
        )));
    }
    let n_start = match n_start {
        Some(n) => n,
        None => default_start(d, k, kind, mode)?,
    };
    if n_start > n_cap {
        return Err(Error::CapExceeded {
            from: n_start,
            cap: n_cap,
        });
    }
    match kind {
        Kind::Dary => minimal_generic::<DaryTree>(d, k, mode, n_start, n_cap),
        Kind::Bracket => minimal_generic::<BracketTree>(d, k, mode, n_start, n_cap),
    }
}

/// Append-only JSON-lines file of [`MinimalityResult`]s.
#[derive(Debug, Clone)]
pub struct ResultsStore {
    path: PathBuf,
}

impl ResultsStore {
    pub const ENV: &'static str = "SUPERTREE_RESULTS";
    pub const DEFAULT_FILE: &'static str = "supertree_results.jsonl";

    pub fn new(path: impl Into<PathBuf>) -> Self {
        ResultsStore { path: path.into() }
    }

    /// `$SUPERTREE_RESULTS`, else `supertree_results.jsonl` in the working directory.
    pub fn from_env() -> Self {
        let path = std::env::var_os(Self::ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(Self::DEFAULT_FILE));
        ResultsStore { path }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn load(&self) -> Result<Vec<MinimalityResult>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Error::Io(e.to_string())),
        };
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::Io(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let r = serde_json::from_str(&line)
                .map_err(|e| Error::Io(format!("{}:{}: {e}", self.path.display(), i + 1)))?;
            out.push(r);
        }
        Ok(out)
    }

    /// The most recent entry for a query.
    pub fn find(
        &self,
        d: usize,
        k: usize,
        kind: Kind,
        mode: Mode,
    ) -> Result<Option<MinimalityResult>> {
        Ok(self
            .load()?
            .into_iter()
            .rev()
            .find(|r| r.d == d && r.k == k && r.kind == kind && r.mode == mode))
    }

    pub fn append(&self, r: &MinimalityResult) -> Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::Io(e.to_string()))?;
        let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(f, "{line}").map_err(|e| Error::Io(e.to_string()))
    }

    /// [`minimal_size`], reusing a stored answer unless `recompute` is set.
    /// A stored answer above the cap is reported as exceeding it.
    pub fn minimal_size(&self, q: &Query, recompute: bool) -> Result<MinimalityResult> {
        if !recompute {
            if let Some(r) = self.find(q.d, q.k, q.kind, q.mode)? {
                if r.n_min > q.n_cap {
                    return Err(Error::CapExceeded {
                        from: r.n_start,
                        cap: q.n_cap,
                    });
                }
                return Ok(r);
            }
        }
        let r = minimal_size(q.d, q.k, q.kind, q.mode, q.n_start, q.n_cap)?;
        self.append(&r)?;
        Ok(r)
    }
}

/// Arguments of [`minimal_size`] bundled for the results store.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Query {
    pub d: usize,
    pub k: usize,
    pub kind: Kind,
    pub mode: Mode,
    pub n_start: Option<usize>,
    pub n_cap: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exact_values() {
        let r = minimal_size(2, 3, Kind::Dary, Mode::Contiguous, Some(3), 8).unwrap();
        assert_eq!(r.n_min, 6);
        assert_eq!(r.hosts_checked[&5], 42);
        let r = minimal_size(2, 3, Kind::Dary, Mode::Noncontiguous, Some(3), 8).unwrap();
        assert_eq!(r.n_min, 5);
        let r = minimal_size(2, 3, Kind::Bracket, Mode::Contiguous, Some(3), 8).unwrap();
        assert_eq!(r.n_min, 4);
        let r = minimal_size(2, 3, Kind::Bracket, Mode::Noncontiguous, Some(3), 8).unwrap();
        assert_eq!(r.n_min, 4);
    }

    #[test]
    fn refutation() {
        assert!(!refute_size(2, 3, Kind::Dary, Mode::Contiguous, 6)
            .unwrap()
            .refuted());
        assert!(refute_size(2, 3, Kind::Dary, Mode::Contiguous, 5)
            .unwrap()
            .refuted());
        assert!(refute_size(3, 4, Kind::Bracket, Mode::Noncontiguous, 2)
            .unwrap()
            .refuted());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            minimal_size(2, 3, Kind::Dary, Mode::Contiguous, Some(3), 5),
            Err(Error::CapExceeded { from: 3, cap: 5 })
        ));
        assert!(minimal_size(2, 3, Kind::Dary, Mode::Contiguous, None, 2).is_err());
    }

    #[test]
    fn store_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let store = ResultsStore::new(dir.path().join("r.jsonl"));
        assert!(store.load().unwrap().is_empty());
        let q = Query {
            d: 2,
            k: 2,
            kind: Kind::Dary,
            mode: Mode::Contiguous,
            n_start: None,
            n_cap: 6,
        };
        let a = store.minimal_size(&q, false).unwrap();
        let b = store.minimal_size(&q, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(store.load().unwrap().len(), 1);
        store.minimal_size(&q, true).unwrap();
        let low_cap = Query { n_cap: 2, ..q };
        assert!(matches!(
            store.minimal_size(&low_cap, false),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(store.load().unwrap().len(), 2);
    }
}
