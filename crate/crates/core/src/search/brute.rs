use std::time::Instant;

use crate::ambient::DenseSet;
use crate::error::Result;

use super::{Method, Problem, SearchConfig, SearchResult};

/// Exhaustive oracle: tries subsets level by level from the largest size
/// down, testing each with the problem predicate. Among maximum sets the
/// lexicographically smallest element list is returned.
pub fn brute_force_max(problem: &Problem, config: &SearchConfig) -> Result<SearchResult> {
    let n = problem.order();
    config.check_cap(Method::BruteForce, n)?;
    let start = Instant::now();
    let ambient = problem.ambient;
    let mut explored = 0u64;
    for size in (0..=n).rev() {
        let mut best: Option<u64> = None;
        for mask in subsets_of_size(n, size) {
            explored += 1;
            if best.is_some_and(|b| !lex_smaller(mask, b)) {
                continue;
            }
            if problem.admits(&DenseSet::from_mask(ambient, mask as u128)) {
                best = Some(mask);
            }
        }
        if let Some(mask) = best {
            return SearchResult {
                problem: *problem,
                max: size as usize,
                witness: DenseSet::from_mask(ambient, mask as u128),
                method: Method::BruteForce,
                explored,
                elapsed: start.elapsed(),
                optimal: true,
            }
            .verified();
        }
    }
    unreachable!("the empty set avoids every pattern")
}

/// For equal-size sets: the one holding the lowest differing element sorts first.
fn lex_smaller(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & diff & diff.wrapping_neg() != 0
}

/// All `n`-bit masks with `k` bits set, in increasing numeric order.
fn subsets_of_size(n: u32, k: u32) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = Some(first).filter(|&m| k == 0 || m < limit);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let m = (((r ^ cur) >> 2) / c) | r;
            (m < limit).then_some(m)
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Ambient;
    use crate::error::Error;

    #[test]
    fn gosper_enumerates_binomially() {
        for n in 0..=12u32 {
            for k in 0..=n {
                let v: Vec<u64> = subsets_of_size(n, k).collect();
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                assert!(v.iter().all(|m| m.count_ones() == k && *m < 1 << n));
                let binom = (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
                assert_eq!(v.len() as u64, binom, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn lex_order_on_masks() {
        // {0, 3} < {1, 2}
        assert!(lex_smaller(0b1001, 0b0110));
        assert!(!lex_smaller(0b0110, 0b1001));
        assert!(!lex_smaller(0b11, 0b11));
    }

    #[test]
    fn examples() {
        let cfg = SearchConfig::default();
        let p = Problem::cube_free(Ambient::cyclic(6).unwrap(), 3).unwrap();
        let r = brute_force_max(&p, &cfg).unwrap();
        assert_eq!((r.max, r.witness.to_vec()), (4, vec![1, 2, 4, 5]));

        let p = Problem::cube_free(Ambient::cyclic(3).unwrap(), 3).unwrap();
        let r = brute_force_max(&p, &cfg).unwrap();
        assert_eq!((r.max, r.witness.to_vec()), (2, vec![1, 2]));

        let p = Problem::pair_free(Ambient::cyclic(10).unwrap(), 2).unwrap();
        assert_eq!(brute_force_max(&p, &cfg).unwrap().max, 5);
    }

    #[test]
    fn cap_is_enforced() {
        let p = Problem::pair_free(Ambient::cyclic(23).unwrap(), 2).unwrap();
        assert!(matches!(
            brute_force_max(&p, &SearchConfig::default()),
            Err(Error::CapExceeded { .. })
        ));
    }
}
