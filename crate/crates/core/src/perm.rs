//! The bijection between binary plane trees and 231-avoiding permutations,
//! and the permutation pattern utilities used alongside it.

use std::fmt;
use std::str::FromStr;

use crate::tree::DaryTree;
use crate::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{word:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(word))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() <= 9 { "" } else { "," };
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidPermutation(s.to_string());
        let word = if s.contains(',') {
            s.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|x| x as usize).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(word)
    }
}

fn require_binary(t: &DaryTree) -> Result<()> {
    if t.arity() != 2 {
        return Err(Error::ArityMismatch(2, t.arity()));
    }
    Ok(())
}

/// Postorder labels `1..=n`, indexed by vertex id.
pub(crate) fn postorder_labels(t: &DaryTree) -> Vec<usize> {
    let mut label = vec![0; t.size()];
    for (i, v) in t.postorder().into_iter().enumerate() {
        label[v] = i + 1;
    }
    label
}

/// Labels the vertices of a binary tree in postorder and reads them in-order.
pub fn psi(t: &DaryTree) -> Result<Permutation> {
    require_binary(t)?;
    let label = postorder_labels(t);
    let mut word = Vec::with_capacity(t.size());
    let mut stack = Vec::new();
    let mut cur = Some(0);
    // iterative in-order walk
    loop {
        while let Some(v) = cur {
            stack.push(v);
            cur = t.child(v, 1);
        }
        let Some(v) = stack.pop() else { break };
        word.push(label[v]);
        cur = t.child(v, 2);
    }
    Ok(Permutation(word))
}

/// The binary tree whose image under [`psi`] is `p`.
///
/// The root carries the largest label, so `p = A n B` with `A` the left
/// subtree's reading on the smallest `|A|` values; any other split puts a 231
/// pattern through `n`.
pub fn psi_inv(p: &Permutation) -> Result<DaryTree> {
    if p.is_empty() {
        return Err(Error::InvalidPermutation("empty".into()));
    }
    fn build(w: &[usize], lo: usize, p: &Permutation) -> Result<Option<DaryTree>> {
        if w.is_empty() {
            return Ok(None);
        }
        let top = lo + w.len();
        let at = w.iter().position(|&x| x == top).expect("maximum present");
        let (a, b) = (&w[..at], &w[at + 1..]);
        if a.iter().any(|&x| x > lo + a.len()) {
            return Err(Error::Contains231(p.to_string()));
        }
        let left = build(a, lo, p)?;
        let right = build(b, lo + a.len(), p)?;
        Ok(Some(DaryTree::join(2, &[left.as_ref(), right.as_ref()])))
    }
    Ok(build(&p.0, 0, p)?.expect("nonempty"))
}

/// Whether some subsequence of `sigma` is order-isomorphic to `mu`.
pub fn perm_contains(sigma: &Permutation, mu: &Permutation) -> bool {
    fn extend(s: &[usize], m: &[usize], from: usize, chosen: &mut Vec<usize>) -> bool {
        let j = chosen.len();
        if j == m.len() {
            return true;
        }
        // leave room for the rest of the pattern
        for i in from..=s.len() - (m.len() - j) {
            let x = s[i];
            let fits = chosen.iter().zip(m).all(|(&y, &my)| (y < x) == (my < m[j]));
            if fits {
                chosen.push(x);
                if extend(s, m, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    mu.len() <= sigma.len() && extend(&sigma.0, &mu.0, 0, &mut Vec::with_capacity(mu.len()))
}

/// Removes `value` and shifts the larger entries down by one.
pub fn delete_normalize(p: &Permutation, value: usize) -> Result<Permutation> {
    if !p.0.contains(&value) {
        return Err(Error::MissingValue(value));
    }
    Ok(Permutation(
        p.0.iter()
            .filter(|&&x| x != value)
            .map(|&x| if x > value { x - 1 } else { x })
            .collect(),
    ))
}

pub fn avoids(p: &Permutation, patterns: &[Permutation]) -> bool {
    patterns.iter().all(|mu| !perm_contains(p, mu))
}

/// Avoids both 231 and 312; equivalently a direct sum of decreasing blocks.
pub fn is_layered(p: &Permutation) -> bool {
    let pats = [Permutation(vec![2, 3, 1]), Permutation(vec![3, 1, 2])];
    avoids(p, &pats)
}

/// All layered permutations of length `k`, one per composition of `k`.
pub fn enumerate_layered(k: usize) -> Vec<Permutation> {
    if k == 0 {
        return vec![Permutation(Vec::new())];
    }
    // bit i set: a block ends after position i
    (0..1u64 << (k - 1))
        .map(|cuts| {
            let mut word = Vec::with_capacity(k);
            let mut start = 0;
            for end in 1..=k {
                if end == k || cuts >> (end - 1) & 1 == 1 {
                    word.extend((start + 1..=end).rev());
                    start = end;
                }
            }
            Permutation(word)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("312").word(), &[3, 1, 2]);
        let long = Permutation::identity(10);
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert!("112".parse::<Permutation>().is_err());
        assert!("13".parse::<Permutation>().is_err());
        assert!("1a".parse::<Permutation>().is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&DaryTree::single(2)).unwrap(), p("1"));
        assert_eq!(psi(&DaryTree::path(2, &[1]).unwrap()).unwrap(), p("12"));
        assert_eq!(psi(&DaryTree::path(2, &[2]).unwrap()).unwrap(), p("21"));
        assert!(psi(&DaryTree::single(3)).is_err());
    }

    #[test]
    fn psi_inv_examples() {
        assert_eq!(psi_inv(&p("1")).unwrap(), DaryTree::single(2));
        assert_eq!(psi_inv(&p("21")).unwrap(), DaryTree::path(2, &[2]).unwrap());
        assert!(matches!(psi_inv(&p("231")), Err(Error::Contains231(_))));
        assert!(psi_inv(&p("1432")).is_ok());
    }

    #[test]
    fn containment_and_deletion() {
        let sigma = p("17324658");
        assert!(perm_contains(&sigma, &sigma));
        assert_eq!(delete_normalize(&sigma, 4).unwrap(), p("1632547"));
        assert!(perm_contains(&sigma, &p("1632547")));
        assert!(!perm_contains(&p("123"), &p("21")));
        assert_eq!(delete_normalize(&p("21"), 2).unwrap(), p("1"));
        assert_eq!(delete_normalize(&p("123"), 2).unwrap(), p("12"));
        assert!(matches!(
            delete_normalize(&p("12"), 3),
            Err(Error::MissingValue(3))
        ));
    }

    #[test]
    fn layered() {
        assert_eq!(enumerate_layered(3).len(), 4);
        assert!(is_layered(&p("321")));
        assert!(!is_layered(&p("312")));
        for k in 1..=7 {
            let all = enumerate_layered(k);
            assert_eq!(all.len(), 1 << (k - 1));
            assert!(all.iter().all(is_layered));
        }
    }
}
