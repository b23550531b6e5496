use std::time::Instant;

use crate::ambient::{AmbientKind, DenseSet};
use crate::error::{Error, Result};

use super::{Method, Problem, ProblemKind, SearchResult};

fn pair_ratio(problem: &Problem, kind: AmbientKind, op: &'static str) -> Result<u64> {
    let ProblemKind::PairFree(d) = problem.kind else {
        return Err(Error::invalid(format!(
            "{op} solves pair-free problems, got {problem}"
        )));
    };
    if problem.ambient.kind() != kind {
        return Err(Error::UnsupportedAmbient {
            op,
            kind: problem.ambient.kind(),
        });
    }
    Ok(d as u64)
}

/// Exact maximum `{x, dx}`-free subset of `[N]`.
///
/// `[N]` splits into chains `l, dl, d²l, ...`; the constraint only links
/// neighbours in a chain, so each chain is a path solved independently
/// (the optimum keeps its odd positions, `⌈len/2⌉` elements).
pub fn chain_dp_max_pairfree_interval(problem: &Problem) -> Result<SearchResult> {
    let d = pair_ratio(problem, AmbientKind::Interval, "chain_dp")?;
    let start = Instant::now();
    let n = problem.order() as u64;
    let mut witness = DenseSet::empty(problem.ambient);
    let mut chain = Vec::new();
    let mut explored = 0;
    for starter in (1..=n).filter(|l| l % d != 0) {
        chain.clear();
        let mut m = starter;
        loop {
            chain.push(m);
            match m.checked_mul(d) {
                Some(next) if next <= n => m = next,
                _ => break,
            }
        }
        explored += chain.len() as u64;
        // solved back to front so ties keep the chain's starter
        let unit = vec![UNIT; chain.len()];
        let (_, take) = path_dp(&unit, &vec![true; chain.len()]);
        for (&m, keep) in chain.iter().rev().zip(take) {
            if keep {
                witness.insert(m as u32);
            }
        }
    }
    SearchResult {
        problem: *problem,
        max: witness.len(),
        witness,
        method: Method::ChainDp,
        explored,
        elapsed: start.elapsed(),
        optimal: true,
    }
    .verified()
}

#[derive(Clone, Copy)]
struct Weight {
    include: i64,
    exclude: i64,
}

const UNIT: Weight = Weight {
    include: 1,
    exclude: 0,
};

/// Best assignment along a path of cycle vertices with the given weights.
/// `allowed[i]` is false for vertices that must stay out.
fn path_dp(weights: &[Weight], allowed: &[bool]) -> (i64, Vec<bool>) {
    let len = weights.len();
    if len == 0 {
        return (0, Vec::new());
    }
    // (value if included, value if excluded) for the prefix ending at i
    let mut table = Vec::with_capacity(len);
    for i in 0..len {
        let (prev_in, prev_out) = if i == 0 {
            (i64::MIN / 4, 0)
        } else {
            table[i - 1]
        };
        let inc = if allowed[i] {
            prev_out + weights[i].include
        } else {
            i64::MIN / 4
        };
        let exc = prev_in.max(prev_out) + weights[i].exclude;
        table.push((inc, exc));
    }
    let mut take = vec![false; len];
    let (last_in, last_out) = table[len - 1];
    let mut state_in = last_in >= last_out;
    let best = last_in.max(last_out);
    for i in (0..len).rev() {
        take[i] = state_in;
        if i > 0 {
            let (pi, po) = table[i - 1];
            state_in = !state_in && pi >= po;
        }
    }
    (best, take)
}

/// Exact maximum subset of `Z_N` with `A ∩ d·A = ∅`.
///
/// The constraint is an independent-set condition on the functional graph
/// `x → dx mod N`, whose components are cycles with in-trees hanging off
/// them. Trees are folded onto their roots bottom-up, then each cycle is
/// solved twice (first vertex out, first vertex in) as a path. Fixed
/// points `x = dx` are self-loops and never chosen.
pub fn graph_dp_max_pairfree_cyclic(problem: &Problem) -> Result<SearchResult> {
    let d = pair_ratio(problem, AmbientKind::Cyclic, "functional_graph_dp")?;
    let start = Instant::now();
    let n = problem.order() as usize;
    let next: Vec<usize> = (0..n).map(|x| (x as u64 * d % n as u64) as usize).collect();

    // peel tree vertices leaves-first
    let mut indegree = vec![0u32; n];
    for &y in &next {
        indegree[y] += 1;
    }
    let mut order: Vec<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
    let mut head = 0;
    while head < order.len() {
        let y = next[order[head]];
        head += 1;
        indegree[y] -= 1;
        if indegree[y] == 0 {
            order.push(y);
        }
    }
    let on_cycle: Vec<bool> = indegree.iter().map(|&k| k > 0).collect();

    let mut weight = vec![UNIT; n];
    for &x in &order {
        let Weight { include, exclude } = weight[x];
        let parent = &mut weight[next[x]];
        parent.include += exclude;
        parent.exclude += include.max(exclude);
    }

    let mut chosen = vec![false; n];
    let mut visited = vec![false; n];
    for root in 0..n {
        if !on_cycle[root] || visited[root] {
            continue;
        }
        let mut cycle = vec![root];
        visited[root] = true;
        let mut v = next[root];
        while v != root {
            visited[v] = true;
            cycle.push(v);
            v = next[v];
        }
        let w: Vec<Weight> = cycle.iter().map(|&v| weight[v]).collect();
        let len = cycle.len();
        let assignment = if len == 1 {
            // self-loop
            vec![false]
        } else {
            // first vertex out: the rest is a free path
            let mut allowed = vec![true; len];
            allowed[0] = false;
            let (out_value, out_take) = path_dp(&w, &allowed);
            // first vertex in: both neighbours out
            let mut allowed = vec![true; len];
            allowed[1] = false;
            allowed[len - 1] = false;
            let (mut in_value, mut in_take) = path_dp(&w[1..], &allowed[1..]);
            in_value += w[0].include;
            in_take.insert(0, true);
            if in_value > out_value {
                in_take
            } else {
                out_take
            }
        };
        for (&v, take) in cycle.iter().zip(assignment) {
            chosen[v] = take;
        }
    }
    // push decisions down the trees, parents before children
    for &x in order.iter().rev() {
        let w = weight[x];
        chosen[x] = !chosen[next[x]] && w.include >= w.exclude;
    }

    let mut witness = DenseSet::empty(problem.ambient);
    for x in (0..n).filter(|&x| chosen[x]) {
        witness.insert(x as u32);
    }
    SearchResult {
        problem: *problem,
        max: witness.len(),
        witness,
        method: Method::FunctionalGraphDp,
        explored: n as u64,
        elapsed: start.elapsed(),
        optimal: true,
    }
    .verified()
}
