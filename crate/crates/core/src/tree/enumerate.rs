use super::{BracketTree, DaryTree};

/// Calls `f` with every way of writing `total` as `parts` ordered summands,
/// each at least `min`.
fn compositions(total: usize, parts: usize, min: usize, f: &mut impl FnMut(&[usize])) {
    fn go(
        rest: usize,
        left: usize,
        min: usize,
        acc: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if left == 0 {
            if rest == 0 {
                f(acc);
            }
            return;
        }
        if rest < min * left {
            return;
        }
        for s in min..=rest - min * (left - 1) {
            acc.push(s);
            go(rest - s, left - 1, min, acc, f);
            acc.pop();
        }
    }
    go(total, parts, min, &mut Vec::with_capacity(parts), f);
}

/// Cartesian product over per-position candidate lists.
fn product<'a, T>(lists: &[&'a [T]], f: &mut impl FnMut(&[&'a T])) {
    fn go<'a, T>(lists: &[&'a [T]], acc: &mut Vec<&'a T>, f: &mut impl FnMut(&[&'a T])) {
        match lists.split_first() {
            None => f(acc),
            Some((head, tail)) => {
                for x in head.iter() {
                    acc.push(x);
                    go(tail, acc, f);
                    acc.pop();
                }
            }
        }
    }
    go(lists, &mut Vec::with_capacity(lists.len()), f);
}

/// Every d-ary plane tree on `k` vertices, once each, in ascending code order.
pub fn enumerate_dary(d: usize, k: usize) -> Vec<DaryTree> {
    assert!(d >= 2 && k >= 1);
    // by_size[0] stands for the empty slot
    let mut by_size: Vec<Vec<Option<DaryTree>>> = vec![vec![None]];
    for n in 1..=k {
        let mut level = Vec::new();
        compositions(n - 1, d, 0, &mut |sizes| {
            let lists: Vec<&[Option<DaryTree>]> =
                sizes.iter().map(|&s| by_size[s].as_slice()).collect();
            product(&lists, &mut |subs| {
                let subs: Vec<Option<&DaryTree>> = subs.iter().map(|s| s.as_ref()).collect();
                level.push(Some(DaryTree::join(d, &subs)));
            });
        });
        by_size.push(level);
    }
    let mut out: Vec<DaryTree> = by_size.pop().unwrap().into_iter().flatten().collect();
    out.sort_by_cached_key(DaryTree::encode);
    out
}

/// Every `[d]`-tree on `k` vertices, once each, in ascending code order.
pub fn enumerate_bracket(d: usize, k: usize) -> Vec<BracketTree> {
    assert!(d >= 2 && k >= 1);
    let mut by_size: Vec<Vec<BracketTree>> = vec![Vec::new()];
    for n in 1..=k {
        let mut level = Vec::new();
        for j in 0..=d.min(n - 1) {
            compositions(n - 1, j, 1, &mut |sizes| {
                let lists: Vec<&[BracketTree]> =
                    sizes.iter().map(|&s| by_size[s].as_slice()).collect();
                product(&lists, &mut |subs| {
                    level.push(BracketTree::join(d, subs).expect("at most d children"));
                });
            });
        }
        by_size.push(level);
    }
    let mut out = by_size.pop().unwrap();
    out.sort_by_cached_key(BracketTree::encode);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{count_bracket, count_dary};
    use num_bigint::BigUint;
    use std::collections::HashSet;

    #[test]
    fn dary_counts_match_fuss_catalan() {
        assert_eq!(enumerate_dary(2, 3).len(), 5);
        assert_eq!(enumerate_dary(3, 2).len(), 3);
        assert_eq!(enumerate_dary(2, 1).len(), 1);
        for d in 2..=3 {
            for k in 1..=7 {
                let all = enumerate_dary(d, k);
                assert_eq!(BigUint::from(all.len()), count_dary(d, k));
                let distinct: HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
                assert!(all.iter().all(|t| t.size() == k));
            }
        }
    }

    #[test]
    fn bracket_counts_match_motzkin() {
        assert_eq!(enumerate_bracket(2, 4).len(), 4);
        assert_eq!(enumerate_bracket(3, 4).len(), 5);
        assert_eq!(enumerate_bracket(2, 1).len(), 1);
        let motzkin = [1usize, 1, 2, 4, 9, 21, 51, 127];
        for (k, &m) in (1..=8).zip(motzkin.iter()) {
            assert_eq!(enumerate_bracket(2, k).len(), m);
        }
        for k in 1..=7 {
            assert_eq!(
                BigUint::from(enumerate_bracket(3, k).len()),
                count_bracket(3, k)
            );
        }
    }

    #[test]
    fn ascending_code_order() {
        let codes: Vec<String> = enumerate_dary(2, 4).iter().map(DaryTree::encode).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
        let codes: Vec<String> = enumerate_bracket(3, 5)
            .iter()
            .map(BracketTree::encode)
            .collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(codes[0], "b3:((((()))))");
    }
}
