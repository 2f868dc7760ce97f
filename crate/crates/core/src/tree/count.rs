use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Exact binomial coefficient.
pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // running product stays integral: C(n, i+1) = C(n, i) * (n-i) / (i+1)
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of d-ary plane trees on `k` vertices (Fuss-Catalan), with 1 for k = 0.
pub fn count_dary(d: usize, k: usize) -> BigUint {
    let (d, k) = (d as u64, k as u64);
    binomial(d * k, k) / ((d - 1) * k + 1)
}

/// Number of `[d]`-trees on `k >= 1` vertices (0 for k = 0).
pub fn count_bracket(d: usize, k: usize) -> BigUint {
    // t[n] = sum over j <= d of the number of j-tuples of trees with total size n-1
    let mut t = vec![BigUint::zero(); k + 1];
    for n in 1..=k {
        // forests[j][m]: ordered j-tuples of trees of total size m
        let mut forest = vec![BigUint::zero(); n];
        forest[0] = BigUint::one();
        let mut total = forest[n - 1].clone();
        for _ in 1..=d {
            let mut next = vec![BigUint::zero(); n];
            for (m, slot) in next.iter_mut().enumerate() {
                for s in 1..=m {
                    if !forest[m - s].is_zero() && !t[s].is_zero() {
                        *slot += &forest[m - s] * &t[s];
                    }
                }
            }
            forest = next;
            total += &forest[n - 1];
        }
        t[n] = total;
    }
    t[k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fuss_catalan_values() {
        assert_eq!(count_dary(2, 4), BigUint::from(14u32));
        assert_eq!(count_dary(3, 4), BigUint::from(55u32));
        assert_eq!(count_dary(2, 0), BigUint::one());
        assert_eq!(count_dary(2, 3), BigUint::from(5u32));
        assert_eq!(count_dary(3, 2), BigUint::from(3u32));
        // C(33, 11)-scale values stay exact
        assert_eq!(count_dary(3, 11), binomial(33, 11) / 23u32);
    }

    #[test]
    fn motzkin_values() {
        let expect = [1u32, 1, 2, 4, 9, 21, 51, 127];
        for (k, &m) in (1..=8).zip(expect.iter()) {
            assert_eq!(count_bracket(2, k), BigUint::from(m), "k={k}");
        }
        assert_eq!(count_bracket(3, 4), BigUint::from(5u32));
    }

    #[test]
    fn large_bound_counts_all_plane_trees() {
        // with d >= k-1 every plane tree qualifies: Catalan(k-1)
        assert_eq!(count_bracket(10, 6), BigUint::from(42u32));
    }
}
