//! Reductions between tree kinds: d-ary to binary by gadget substitution, and
//! `[d]`-trees to d-ary trees by edge expansion.

use serde::{Deserialize, Serialize};

use crate::tree::{BracketTree, DaryTree, Tree};
use crate::{Error, Result};

/// `f[r]` is the number of vertices with exactly `r` children.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildProfile {
    pub f: Vec<usize>,
}

impl ChildProfile {
    pub fn count(&self, r: usize) -> usize {
        self.f.get(r).copied().unwrap_or(0)
    }

    /// `2 f_0 + f_1 - 1`, the size of the binarized tree.
    pub fn binarized_size(&self) -> usize {
        2 * self.count(0) + self.count(1) - 1
    }
}

pub fn child_profile(t: &Tree) -> ChildProfile {
    let (bound, counts): (usize, Vec<usize>) = match t {
        Tree::Dary(t) => (
            t.arity(),
            (0..t.size()).map(|v| t.num_children(v)).collect(),
        ),
        Tree::Bracket(t) => (
            t.bound(),
            (0..t.size()).map(|v| t.num_children(v)).collect(),
        ),
    };
    let mut f = vec![0; bound + 1];
    for c in counts {
        f[c] += 1;
    }
    ChildProfile { f }
}

/// Replaces every vertex with `m >= 3` children by the gadget `J` on its child
/// types, keeping the arity; the subtrees hang from the gadget's leaves in
/// their original order and with their original types.
pub fn binarize_intermediate(t: &DaryTree) -> DaryTree {
    fn rebuild(t: &DaryTree, v: usize) -> DaryTree {
        let d = t.arity();
        let kids: Vec<(usize, DaryTree)> = t.children(v).map(|(s, c)| (s, rebuild(t, c))).collect();
        let mut subs: Vec<Option<&DaryTree>> = vec![None; d];
        if kids.len() <= 2 {
            for (s, c) in &kids {
                subs[s - 1] = Some(c);
            }
            return DaryTree::join(d, &subs);
        }
        subs[kids[0].0 - 1] = Some(&kids[0].1);
        subs[kids[1].0 - 1] = Some(&kids[1].1);
        let mut cur = DaryTree::join(d, &subs);
        for (s, c) in &kids[2..] {
            let mut subs: Vec<Option<&DaryTree>> = vec![None; d];
            subs[0] = Some(&cur);
            subs[s - 1] = Some(c);
            cur = DaryTree::join(d, &subs);
        }
        cur
    }
    rebuild(t, 0)
}

/// The binary tree on `2 f_0 + f_1 - 1` vertices obtained from a d-ary tree,
/// `d >= 3`, by gadget substitution followed by slot relabeling.
///
/// An only child keeps type 1 if it had type 1 and becomes type 2 otherwise;
/// two children become types 1 and 2 in slot order.
pub fn binarize(t: &DaryTree) -> Result<DaryTree> {
    if t.arity() < 3 {
        return Err(Error::InvalidArgument(format!(
            "binarize needs arity at least 3, got {}",
            t.arity()
        )));
    }
    fn remap(t: &DaryTree, v: usize) -> DaryTree {
        let kids: Vec<(usize, usize)> = t.children(v).collect();
        let sub: Vec<DaryTree> = kids.iter().map(|&(_, c)| remap(t, c)).collect();
        let subs = match kids.as_slice() {
            [] => [None, None],
            [(1, _)] => [Some(&sub[0]), None],
            [_] => [None, Some(&sub[0])],
            [_, _] => [Some(&sub[0]), Some(&sub[1])],
            _ => unreachable!("at most two children after substitution"),
        };
        DaryTree::join(2, &subs)
    }
    Ok(remap(&binarize_intermediate(t), 0))
}

/// Replaces each edge to the `i`-th child by a path of `d` edges with types
/// `i`, then `1..=d` without `i` in ascending order.
pub fn expand(t: &BracketTree, d: usize) -> Result<DaryTree> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "d must be at least 2, got {d}"
        )));
    }
    if let Some(v) = (0..t.size()).find(|&v| t.num_children(v) > d) {
        return Err(Error::InvalidArgument(format!(
            "vertex {} has {} children, more than {d}",
            t.vertex_ref(v),
            t.num_children(v)
        )));
    }
    fn rebuild(t: &BracketTree, v: usize, d: usize) -> DaryTree {
        let mut chains = vec![None; d];
        for (pos, c) in t.children(v).enumerate() {
            let i = pos + 1;
            let mut cur = rebuild(t, c, d);
            for ty in (1..=d).rev().filter(|&ty| ty != i) {
                let mut subs = vec![None; d];
                subs[ty - 1] = Some(&cur);
                cur = DaryTree::join(d, &subs);
            }
            chains[pos] = Some(cur);
        }
        let subs: Vec<Option<&DaryTree>> = chains.iter().map(Option::as_ref).collect();
        DaryTree::join(d, &subs)
    }
    Ok(rebuild(t, 0, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{crescent, j_gadget};

    #[test]
    fn profiles() {
        let p = child_profile(&DaryTree::single(3).into());
        assert_eq!(p.f, vec![1, 0, 0, 0]);
        let p = child_profile(&DaryTree::perfect(2, 1).into());
        assert_eq!(p.f, vec![2, 0, 1]);
        let p = child_profile(&crescent(3).unwrap().into());
        assert_eq!(p.f, vec![1, 3, 0, 0]);
    }

    #[test]
    fn binarize_star() {
        let star = DaryTree::perfect(3, 1);
        assert_eq!(
            binarize_intermediate(&star),
            j_gadget(3, &[1, 2, 3]).unwrap()
        );
        let b = binarize(&star).unwrap();
        assert_eq!(b.size(), 5);
        assert_eq!(b.arity(), 2);
        assert_eq!(b.encode(), "d2:(((__)(__))(__))");
    }

    #[test]
    fn binarize_low_degree_only_remaps() {
        let t = DaryTree::path(3, &[3, 1, 2]).unwrap();
        let b = binarize(&t).unwrap();
        assert_eq!(b, DaryTree::path(2, &[2, 1, 2]).unwrap());
        assert!(binarize(&DaryTree::single(2)).is_err());
    }

    #[test]
    fn expand_examples() {
        let e = expand(&BracketTree::path(2, 2), 2).unwrap();
        assert_eq!(e, DaryTree::path(2, &[1, 2]).unwrap());
        let t = BracketTree::path(3, 5);
        assert_eq!(expand(&t, 3).unwrap().size(), 13);
        assert_eq!(
            expand(&BracketTree::single(4), 4).unwrap(),
            DaryTree::single(4)
        );
        let leaf = BracketTree::single(3);
        let fan = BracketTree::join(3, &[&leaf, &leaf, &leaf]).unwrap();
        assert!(expand(&fan, 2).is_err());
        // second child: top type 2, then 1 and 3
        let e = expand(&BracketTree::join(3, &[&leaf, &leaf]).unwrap(), 3).unwrap();
        let second = e.resolve(&crate::VertexRef::new(vec![2, 1, 3])).unwrap();
        assert!(e.is_leaf(second));
    }
}
