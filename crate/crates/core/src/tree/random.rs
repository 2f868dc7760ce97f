//! Random tree generators for sampling-based checks.
//!
//! Trees grow one leaf at a time at a uniformly chosen free position. The
//! resulting distribution is not uniform over shapes, which is fine for
//! property sampling.

use rand::Rng;

use super::{BracketTree, DaryTree, NIL};

pub fn random_dary<R: Rng + ?Sized>(d: usize, n: usize, rng: &mut R) -> DaryTree {
    assert!(d >= 2 && n >= 1);
    let mut arena = vec![NIL; d];
    for id in 1..n {
        let free: Vec<usize> = arena
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == NIL)
            .map(|(i, _)| i)
            .collect();
        let cell = free[rng.gen_range(0..free.len())];
        arena[cell] = id as u32;
        arena.extend(std::iter::repeat_n(NIL, d));
    }
    DaryTree::from_arena(d, &arena)
}

pub fn random_bracket<R: Rng + ?Sized>(d: usize, n: usize, rng: &mut R) -> BracketTree {
    assert!(d >= 2 && n >= 1);
    let mut arena: Vec<Vec<u32>> = vec![Vec::new()];
    for id in 1..n {
        // each open vertex offers len+1 insertion gaps
        let gaps: Vec<(usize, usize)> = arena
            .iter()
            .enumerate()
            .filter(|(_, k)| k.len() < d)
            .flat_map(|(v, k)| (0..=k.len()).map(move |g| (v, g)))
            .collect();
        let (v, g) = gaps[rng.gen_range(0..gaps.len())];
        arena[v].insert(g, id as u32);
        arena.push(Vec::new());
    }
    BracketTree::from_arena(d, &arena)
}
