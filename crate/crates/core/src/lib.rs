//! Cube-free subsets of cyclic groups and integer intervals.
//!
//! The crate is organised bottom-up:
//!
//! * [`ambient`]: `Z_N` / `[N]` and the [`DenseSet`] bitset.
//! * [`cube`]: projective cubes, cube-freeness with witnesses, shifted
//!   intersections and diagonal patterns `{x, 2x, ..., (d−1)x}`.
//! * [`constructions`]: the extremal examples and the chain/layer/block
//!   decompositions used in the counting arguments.
//! * [`additive`]: sumsets, exhaustive Cauchy–Davenport and subset-sum
//!   lemma checks, and incidence counting for indexed families.
//! * [`search`]: exact maximum pattern-free sets (brute force, branch and
//!   bound, chain and functional-graph dynamic programs) plus closed-form
//!   bounds.

pub mod additive;
pub mod ambient;
pub mod constructions;
pub mod cube;
pub mod error;
pub mod search;

pub use ambient::{factorize, preimage_count, Ambient, AmbientKind, DenseSet, Factorization};
pub use cube::{
    diagonal_witness, find_cube, is_cube_free, project_cube, shifted_intersection, CubeWitness,
    GeneratorMultiset,
};
pub use error::{Error, Result};
pub use search::{Bound, Method, Problem, ProblemKind, SearchConfig, SearchResult};

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|k| k * k <= n)
            .all(|k| !n.is_multiple_of(k))
}

/// Smallest prime factor of `n >= 2`.
pub fn smallest_prime_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    (2..)
        .take_while(|k| k * k <= n)
        .find(|k| n.is_multiple_of(*k))
        .or(Some(n))
}

/// `Some((p, l))` when `n = p^l` with `p` prime and `l >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let p = smallest_prime_factor(n)?;
    let mut m = n;
    let mut l = 0;
    while m.is_multiple_of(p) {
        m /= p;
        l += 1;
    }
    (m == 1).then_some((p, l))
}
