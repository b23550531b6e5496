//! Exact maximum pattern-free sets.
//!
//! Three pattern families are supported, each over `Z_N` or `[N]`:
//!
//! * [`ProblemKind::CubeFree`]: no projective `d`-cube inside the set.
//! * [`ProblemKind::DiagonalFree`]: no `{x, 2x, ..., (d−1)x}` with `x ≠ 0`.
//! * [`ProblemKind::DiagonalFreeWithZero`]: the same with `x = 0` allowed too,
//!   which keeps 0 out of the set.
//! * [`ProblemKind::PairFree`]: `A ∩ d·A = ∅`, so fixed points of
//!   `x ↦ dx` are never allowed.
//!
//! Every solver re-checks its witness with the predicates from
//! [`crate::cube`] and [`crate::ambient`] before returning.

mod bnb;
mod bounds;
mod brute;
mod dp;

use std::fmt;
use std::time::Duration;

use serde::{Serialize, Serializer};

use crate::ambient::{Ambient, AmbientKind, DenseSet};
use crate::cube::{diagonal_witness, find_cube, CubeWitness};
use crate::error::{Error, Result};

pub use bnb::branch_and_bound_max;
pub use bounds::{Bound, BoundParams};
pub use brute::brute_force_max;
pub use dp::{chain_dp_max_pairfree_interval, graph_dp_max_pairfree_cyclic};

/// Absolute limit for exhaustive subset enumeration.
pub const BRUTE_FORCE_HARD_LIMIT: u32 = 32;
/// Absolute limit for branch and bound (masks are `u128`).
pub const BRANCH_AND_BOUND_HARD_LIMIT: u32 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    CubeFree(u32),
    DiagonalFree(u32),
    DiagonalFreeWithZero(u32),
    PairFree(u32),
}

impl ProblemKind {
    pub fn d(&self) -> u32 {
        match *self {
            ProblemKind::CubeFree(d)
            | ProblemKind::DiagonalFree(d)
            | ProblemKind::DiagonalFreeWithZero(d)
            | ProblemKind::PairFree(d) => d,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::CubeFree(_) => "cube",
            ProblemKind::DiagonalFree(_) => "diag",
            ProblemKind::DiagonalFreeWithZero(_) => "diag0",
            ProblemKind::PairFree(_) => "pair",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Problem {
    pub kind: ProblemKind,
    pub ambient: Ambient,
}

/// Why a set fails a problem's predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "pattern", rename_all = "snake_case")]
pub enum Violation {
    Cube(CubeWitness),
    Diagonal { x: u32, elements: Vec<u32> },
    Pair { x: u32, image: u32 },
}

impl Problem {
    pub fn new(kind: ProblemKind, ambient: Ambient) -> Result<Self> {
        let d = kind.d();
        let min = match kind {
            ProblemKind::CubeFree(_) => 1,
            ProblemKind::DiagonalFree(_)
            | ProblemKind::DiagonalFreeWithZero(_)
            | ProblemKind::PairFree(_) => 2,
        };
        if d < min {
            return Err(Error::invalid(format!(
                "{} problems need d >= {min}, got {d}",
                kind.name()
            )));
        }
        Ok(Problem { kind, ambient })
    }

    pub fn cube_free(ambient: Ambient, d: u32) -> Result<Self> {
        Self::new(ProblemKind::CubeFree(d), ambient)
    }

    pub fn diagonal_free(ambient: Ambient, d: u32) -> Result<Self> {
        Self::new(ProblemKind::DiagonalFree(d), ambient)
    }

    pub fn diagonal_free_with_zero(ambient: Ambient, d: u32) -> Result<Self> {
        Self::new(ProblemKind::DiagonalFreeWithZero(d), ambient)
    }

    pub fn pair_free(ambient: Ambient, d: u32) -> Result<Self> {
        Self::new(ProblemKind::PairFree(d), ambient)
    }

    pub fn order(&self) -> u32 {
        self.ambient.order()
    }

    pub fn violation(&self, set: &DenseSet) -> Result<Option<Violation>> {
        self.ambient.require_same(&set.ambient())?;
        Ok(match self.kind {
            ProblemKind::CubeFree(d) => find_cube(set, d as usize).map(Violation::Cube),
            ProblemKind::DiagonalFree(d) | ProblemKind::DiagonalFreeWithZero(d) => {
                let include_zero = matches!(self.kind, ProblemKind::DiagonalFreeWithZero(_));
                diagonal_witness(set, d as usize, include_zero)?.map(|x| Violation::Diagonal {
                    x,
                    elements: (1..d as u64)
                        .filter_map(|j| self.ambient.reduce(j * x as u64))
                        .collect(),
                })
            }
            ProblemKind::PairFree(d) => {
                set.intersection(&set.dilate(d as u64))?.min().map(|image| {
                    let x = set
                        .iter()
                        .find(|&x| self.ambient.reduce(x as u64 * d as u64) == Some(image))
                        .expect("image has a preimage in the set");
                    Violation::Pair { x, image }
                })
            }
        })
    }

    /// Whether `set` avoids every forbidden pattern.
    pub fn admits(&self, set: &DenseSet) -> bool {
        matches!(self.violation(set), Ok(None))
    }

    /// Every forbidden pattern as a bitmask over element indices. Patterns
    /// are deduplicated; the order is ascending by mask value.
    pub fn patterns(&self) -> Result<Vec<u128>> {
        let n = self.order();
        if n > BRANCH_AND_BOUND_HARD_LIMIT {
            return Err(Error::CapExceeded {
                method: "pattern",
                order: n as u64,
                cap: BRANCH_AND_BOUND_HARD_LIMIT as u64,
            });
        }
        let amb = self.ambient;
        let bit = |e: u32| 1u128 << amb.index_of(e);
        let mut out = Vec::new();
        match self.kind {
            ProblemKind::CubeFree(d) => {
                cube_patterns(amb, d as usize, amb.base(), 0, &mut out);
            }
            ProblemKind::DiagonalFree(d) | ProblemKind::DiagonalFreeWithZero(d) => {
                let include_zero = matches!(self.kind, ProblemKind::DiagonalFreeWithZero(_));
                for x in amb.elements().filter(|&x| include_zero || x != 0) {
                    let multiples: Option<Vec<u32>> =
                        (1..d as u64).map(|j| amb.reduce(j * x as u64)).collect();
                    if let Some(m) = multiples {
                        out.push(m.into_iter().fold(0, |acc, e| acc | bit(e)));
                    }
                }
            }
            ProblemKind::PairFree(d) => {
                for x in amb.elements() {
                    if let Some(y) = amb.reduce(x as u64 * d as u64) {
                        out.push(bit(x) | bit(y));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

fn cube_patterns(amb: Ambient, remaining: usize, start: u32, sums: u128, out: &mut Vec<u128>) {
    if remaining == 0 {
        out.push(sums);
        return;
    }
    let n = amb.order();
    let full = if n == 128 { !0 } else { (1u128 << n) - 1 };
    for a in start..amb.base() + n {
        let idx = amb.index_of(a);
        let next = match amb.kind() {
            AmbientKind::Cyclic => {
                let rotated = if a == 0 {
                    sums
                } else {
                    ((sums << a) | (sums >> (n - a))) & full
                };
                sums | rotated | 1 << idx
            }
            AmbientKind::Interval => {
                // element e sits at bit e - 1, so e + a sits at bit (e - 1) + a
                if sums != 0 && (127 - sums.leading_zeros()) + a >= n {
                    break;
                }
                sums | (sums << a) | 1 << idx
            }
        };
        cube_patterns(amb, remaining - 1, a, next, out);
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}) on {}",
            self.kind.name(),
            self.kind.d(),
            self.ambient
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    BranchAndBound,
    ChainDp,
    FunctionalGraphDp,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::BruteForce => "brute_force",
            Method::BranchAndBound => "branch_and_bound",
            Method::ChainDp => "chain_dp",
            Method::FunctionalGraphDp => "functional_graph_dp",
        }
    }

    /// The natural solver for a problem: the linear-time dynamic programs
    /// for pair-free problems, branch and bound otherwise.
    pub fn auto(problem: &Problem) -> Method {
        match (problem.kind, problem.ambient.kind()) {
            (ProblemKind::PairFree(_), AmbientKind::Interval) => Method::ChainDp,
            (ProblemKind::PairFree(_), AmbientKind::Cyclic) => Method::FunctionalGraphDp,
            _ => Method::BranchAndBound,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub brute_force_cap: u32,
    pub branch_and_bound_cap: u32,
    /// Ignore the configurable caps (hard limits still apply).
    pub force: bool,
    /// Stop branch and bound after this long and report best-so-far.
    pub time_limit: Option<Duration>,
    /// Depth at which branch and bound splits into independent subtrees.
    pub split_depth: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            brute_force_cap: 22,
            branch_and_bound_cap: 30,
            force: false,
            time_limit: None,
            split_depth: 10,
        }
    }
}

impl SearchConfig {
    pub(crate) fn check_cap(&self, method: Method, order: u32) -> Result<()> {
        let (cap, hard) = match method {
            Method::BruteForce => (self.brute_force_cap, BRUTE_FORCE_HARD_LIMIT),
            Method::BranchAndBound => (self.branch_and_bound_cap, BRANCH_AND_BOUND_HARD_LIMIT),
            Method::ChainDp | Method::FunctionalGraphDp => return Ok(()),
        };
        let limit = if self.force { hard } else { cap.min(hard) };
        if order > limit {
            return Err(Error::CapExceeded {
                method: method.name(),
                order: order as u64,
                cap: limit as u64,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub problem: Problem,
    pub max: usize,
    pub witness: DenseSet,
    pub method: Method,
    pub explored: u64,
    pub elapsed: Duration,
    /// False when the search stopped early; `max` is then a lower bound.
    pub optimal: bool,
}

impl SearchResult {
    pub(crate) fn verified(self) -> Result<Self> {
        if self.witness.len() != self.max || !self.problem.admits(&self.witness) {
            return Err(Error::WitnessRejected(format!(
                "{} via {}: {:?}",
                self.problem, self.method, self.witness
            )));
        }
        Ok(self)
    }
}

impl Serialize for SearchResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            problem: &'static str,
            ambient: AmbientKind,
            #[serde(rename = "N")]
            n: u32,
            d: u32,
            max: usize,
            witness: &'a DenseSet,
            method: Method,
            explored: u64,
            elapsed_ms: u64,
            optimal: bool,
        }
        Repr {
            problem: self.problem.kind.name(),
            ambient: self.problem.ambient.kind(),
            n: self.problem.order(),
            d: self.problem.kind.d(),
            max: self.max,
            witness: &self.witness,
            method: self.method,
            explored: self.explored,
            elapsed_ms: self.elapsed.as_millis() as u64,
            optimal: self.optimal,
        }
        .serialize(s)
    }
}

/// Runs the requested solver, or [`Method::auto`] when `method` is `None`.
pub fn solve(
    problem: &Problem,
    method: Option<Method>,
    config: &SearchConfig,
) -> Result<SearchResult> {
    match method.unwrap_or_else(|| Method::auto(problem)) {
        Method::BruteForce => brute_force_max(problem, config),
        Method::BranchAndBound => branch_and_bound_max(problem, config),
        Method::ChainDp => chain_dp_max_pairfree_interval(problem),
        Method::FunctionalGraphDp => graph_dp_max_pairfree_cyclic(problem),
    }
}
