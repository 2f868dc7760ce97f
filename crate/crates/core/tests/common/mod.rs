//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the library's counting, recurrence, permutation or
//! containment code; the oracles work from first principles so that agreement
//! with the library is evidence rather than tautology.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use supertree::{BracketTree, DaryTree, VertexRef};

/// Catalan numbers by the convolution recurrence.
pub fn catalan(n: usize) -> u128 {
    let mut c = vec![1u128];
    for m in 1..=n {
        c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
    }
    c[n]
}

/// d-ary plane trees on `n` vertices, counted by splitting `n - 1` over `d`
/// possibly empty slots.
pub fn dary_count(d: usize, n: usize) -> u128 {
    let mut t = vec![1u128; 1]; // t[0] counts the empty slot
    for m in 1..=n {
        // ways[j][s]: first j slots hold s vertices in total
        let mut ways = vec![0u128; m];
        ways[0] = 1;
        for _ in 0..d {
            let mut next = vec![0u128; m];
            for (s, &w) in ways.iter().enumerate() {
                for a in 0..m - s {
                    next[s + a] += w * t[a];
                }
            }
            ways = next;
        }
        t.push(ways[m - 1]);
    }
    t[n]
}

/// `[d]`-trees on `n` vertices: ordered lists of at most `d` nonempty subtrees.
pub fn bracket_count(d: usize, n: usize) -> u128 {
    let mut t = vec![0u128; n + 1];
    for m in 1..=n {
        // lists[s]: ordered lists of exactly j nonempty trees with s vertices
        let mut lists = vec![0u128; m];
        lists[0] = 1;
        let mut total = lists[m - 1];
        for _ in 0..d {
            let mut next = vec![0u128; m];
            for (s, &w) in lists.iter().enumerate() {
                for a in 1..m - s {
                    next[s + a] += w * t[a];
                }
            }
            lists = next;
            total += lists[m - 1];
        }
        t[m] = total;
    }
    t[n]
}

pub fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All permutations of `1..=n`, lexicographic.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q: Vec<usize> = p.clone();
            q.insert(at, n);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub fn contains_231(w: &[usize]) -> bool {
    let n = w.len();
    (0..n).any(|i| (i + 1..n).any(|j| (j + 1..n).any(|k| w[k] < w[i] && w[i] < w[j])))
}

/// Pattern containment by trying every index subset.
pub fn pattern_in(w: &[usize], p: &[usize]) -> bool {
    let (n, k) = (w.len(), p.len());
    if k > n {
        return false;
    }
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .any(|mask| {
            let sub: Vec<usize> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| w[i])
                .collect();
            (0..k).all(|a| (0..k).all(|b| (sub[a] < sub[b]) == (p[a] < p[b])))
        })
}

/// Parent and slot type of every vertex.
fn dary_parent_table(t: &DaryTree) -> Vec<Option<(usize, usize)>> {
    let mut parent = vec![None; t.size()];
    for v in 0..t.size() {
        for (s, c) in t.children(v) {
            parent[c] = Some((v, s));
        }
    }
    parent
}

/// Codes of every connected `k`-vertex piece of a d-ary host, as d-ary trees.
pub fn dary_pieces(host: &DaryTree, k: usize) -> BTreeSet<String> {
    let parent = dary_parent_table(host);
    let mut out = BTreeSet::new();
    for r in 0..host.size() {
        grow(r, k, host.size(), &|v| parent[v].map(|p| p.0), &mut |set| {
            out.insert(encode_dary_piece(host, r, set));
        });
    }
    out
}

/// Codes of every connected `k`-vertex piece of a bracket host.
pub fn bracket_pieces(host: &BracketTree, k: usize) -> BTreeSet<String> {
    let mut parent = vec![None; host.size()];
    for v in 0..host.size() {
        for c in host.children(v) {
            parent[c] = Some(v);
        }
    }
    let mut out = BTreeSet::new();
    for r in 0..host.size() {
        grow(r, k, host.size(), &|v| parent[v], &mut |set| {
            out.insert(encode_bracket_piece(host, r, set));
        });
    }
    out
}

/// Calls `emit` on every vertex set of size `k` that contains `r`, is closed
/// under taking parents up to `r`, and lies below `r`.
fn grow(
    r: usize,
    k: usize,
    n: usize,
    parent: &dyn Fn(usize) -> Option<usize>,
    emit: &mut dyn FnMut(&HashSet<usize>),
) {
    // brute force over subsets of descendants is fine for hosts of <= 16 vertices
    let below: Vec<usize> = (0..n)
        .filter(|&v| {
            let mut u = Some(v);
            while let Some(x) = u {
                if x == r {
                    return true;
                }
                u = parent(x);
            }
            false
        })
        .filter(|&v| v != r)
        .collect();
    if k == 0 || below.len() + 1 < k {
        return;
    }
    let m = below.len();
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize != k - 1 {
            continue;
        }
        let mut set: HashSet<usize> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| below[i])
            .collect();
        set.insert(r);
        if set
            .iter()
            .all(|&v| v == r || parent(v).is_some_and(|p| set.contains(&p)))
        {
            emit(&set);
        }
    }
}

fn encode_dary_piece(t: &DaryTree, v: usize, set: &HashSet<usize>) -> String {
    fn node(t: &DaryTree, v: usize, set: &HashSet<usize>, out: &mut String) {
        out.push('(');
        for s in 1..=t.arity() {
            match t.child(v, s) {
                Some(c) if set.contains(&c) => node(t, c, set, out),
                _ => out.push('_'),
            }
        }
        out.push(')');
    }
    let mut out = format!("d{}:", t.arity());
    node(t, v, set, &mut out);
    out
}

fn encode_bracket_piece(t: &BracketTree, v: usize, set: &HashSet<usize>) -> String {
    fn node(t: &BracketTree, v: usize, set: &HashSet<usize>, out: &mut String) {
        out.push('(');
        for c in t.children(v) {
            if set.contains(&c) {
                node(t, c, set, out);
            }
        }
        out.push(')');
    }
    let mut out = format!("b{}:", t.bound());
    node(t, v, set, &mut out);
    out
}

/// Everything reachable on `k` vertices, by exhaustive search over the public
/// contraction API (edges named by vertex paths).
pub fn dary_reachable(host: &DaryTree, k: usize) -> BTreeSet<String> {
    let mut seen: HashSet<DaryTree> = HashSet::from([host.clone()]);
    let mut frontier = vec![host.clone()];
    let mut out = BTreeSet::new();
    while let Some(t) = frontier.pop() {
        if t.size() == k {
            out.insert(t.encode());
            continue;
        }
        for (at, _) in t.legal_edges() {
            let c = t.contract(&at).expect("listed edge is legal");
            if seen.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    out
}

pub fn bracket_reachable(host: &BracketTree, k: usize) -> BTreeSet<String> {
    let mut seen: HashSet<BracketTree> = HashSet::from([host.clone()]);
    let mut frontier = vec![host.clone()];
    let mut out = BTreeSet::new();
    while let Some(t) = frontier.pop() {
        if t.size() == k {
            out.insert(t.encode());
            continue;
        }
        for at in t.legal_edges() {
            let c = t.contract(&at).expect("listed edge is legal");
            if seen.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    out
}

/// `M_d(k)` straight from the displayed recurrence.
pub fn m_oracle(d: usize, k: usize) -> i128 {
    let dl = i128::from(d == 2);
    let d = d as i128;
    let mut m: Vec<i128> = vec![0, 1, d + 1, 2 * d + 1];
    for n in 4..=k {
        let f = n / 2;
        let c = n.div_ceil(2);
        let sum: i128 = (1..=f.saturating_sub(2)).map(|i| m[i] - 1).sum();
        let v = (d + 1)
            + (f as i128 - dl) * (3 * d - 2)
            + 2 * sum
            + (m[f - 1] - 1)
            + (m[c - 1] - 1)
            + (m[c] - 1)
            + 2 * (1 - dl) * (m[(n + 1) / 4] - 1);
        m.push(v);
    }
    m[k]
}

/// `M'_d(k)`, reading the last term of its recurrence as `M'_d`.
pub fn mp_oracle(d: usize, k: usize) -> i128 {
    let dl = i128::from(d == 2);
    let mut m: Vec<i128> = vec![0, 1, 2, 4];
    for n in 4..=k {
        let f = n / 2;
        let c = n.div_ceil(2);
        let sum: i128 = (1..=f.saturating_sub(2)).map(|i| m[i] - 1).sum();
        let v = 2
            + (3 + dl) * (f as i128 - dl)
            + 2 * sum
            + (m[f - 1] - 1)
            + (m[c - 1] - 1)
            + (m[c] - 1)
            + 2 * (1 - dl) * (m[(n + 1) / 4] - 1);
        m.push(v);
    }
    m[k]
}

/// `L_d(k)` from its two-case recurrence.
pub fn l_oracle(d: usize, k: usize) -> i128 {
    let mut l: Vec<i128> = vec![0, 1];
    for n in 2..=k {
        let v = if n <= d {
            let a: i128 = (1..=(n / 2).saturating_sub(1)).map(|i| l[i]).sum();
            let b: i128 = (1..=n.div_ceil(2).saturating_sub(1)).map(|i| l[i]).sum();
            1 + l[n - 1] + a + b
        } else {
            let lo = n - d;
            let a: i128 = (lo..=n - d / 2 - 2).map(|i| l[i]).sum();
            let b: i128 = (lo..=n - d.div_ceil(2) - 1).map(|i| l[i]).sum();
            1 + l[n - 1] + a + b
        };
        l.push(v);
    }
    l[k]
}

/// Every vertex path of a d-ary tree, root first.
pub fn dary_refs(t: &DaryTree) -> Vec<VertexRef> {
    (0..t.size()).map(|v| t.vertex_ref(v)).collect()
}
