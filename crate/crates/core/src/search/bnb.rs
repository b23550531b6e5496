use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::ambient::DenseSet;
use crate::error::Result;

use super::{Method, Problem, SearchConfig, SearchResult};

/// Forbidden patterns as a hypergraph on element indices.
struct Hypergraph {
    n: usize,
    edges: Vec<u128>,
    /// Edge ids containing each element.
    incident: Vec<Vec<u32>>,
    /// Elements that form a pattern on their own.
    banned: u128,
}

impl Hypergraph {
    fn new(problem: &Problem) -> Result<Self> {
        let n = problem.order() as usize;
        let patterns = problem.patterns()?;
        let banned = patterns
            .iter()
            .filter(|p| p.count_ones() == 1)
            .fold(0u128, |acc, p| acc | p);
        let edges: Vec<u128> = patterns.into_iter().filter(|p| p & banned == 0).collect();
        let mut incident = vec![Vec::new(); n];
        for (id, &e) in edges.iter().enumerate() {
            let mut rest = e;
            while rest != 0 {
                incident[rest.trailing_zeros() as usize].push(id as u32);
                rest &= rest - 1;
            }
        }
        Ok(Hypergraph {
            n,
            edges,
            incident,
            banned,
        })
    }

    /// Elements that become forbidden once `i` joins `chosen`: the last
    /// missing element of every pattern through `i`.
    #[inline]
    fn forced_by(&self, i: usize, chosen: u128) -> u128 {
        let with = chosen | 1 << i;
        let mut forced = 0;
        for &id in &self.incident[i] {
            let rest = self.edges[id as usize] & !with;
            debug_assert_ne!(rest, 0, "pattern completed despite propagation");
            if rest & (rest - 1) == 0 {
                forced |= rest;
            }
        }
        forced
    }

    fn suffix(&self, i: usize) -> u128 {
        if i >= 128 {
            0
        } else {
            (!0u128 << i) & full_mask(self.n)
        }
    }
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        !0
    } else {
        (1u128 << n) - 1
    }
}

#[derive(Clone, Copy)]
struct Node {
    depth: usize,
    chosen: u128,
    forbidden: u128,
}

struct Subtree<'a> {
    graph: &'a Hypergraph,
    best: i64,
    best_set: Option<u128>,
    nodes: u64,
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
}

impl Subtree<'_> {
    fn dfs(&mut self, node: Node) {
        self.nodes += 1;
        if self.nodes & 4095 == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        let Node {
            depth,
            chosen,
            forbidden,
        } = node;
        let size = chosen.count_ones() as i64;
        let available = (self.graph.suffix(depth) & !forbidden).count_ones() as i64;
        if size + available <= self.best {
            return;
        }
        if depth == self.graph.n {
            self.best = size;
            self.best_set = Some(chosen);
            return;
        }
        let bit = 1u128 << depth;
        if forbidden & bit == 0 {
            self.dfs(Node {
                depth: depth + 1,
                chosen: chosen | bit,
                forbidden: forbidden | self.graph.forced_by(depth, chosen),
            });
        }
        self.dfs(Node {
            depth: depth + 1,
            chosen,
            forbidden: forbidden | bit,
        });
    }
}

/// Lexicographically first maximal set: include every element that is not
/// yet forbidden.
fn greedy(graph: &Hypergraph) -> u128 {
    let mut chosen = 0u128;
    let mut forbidden = graph.banned;
    for i in 0..graph.n {
        if forbidden >> i & 1 == 0 {
            forbidden |= graph.forced_by(i, chosen);
            chosen |= 1 << i;
        }
    }
    chosen
}

/// Roots of the independent subtrees, in depth-first (include-first) order.
fn frontier(graph: &Hypergraph, split_depth: usize) -> (Vec<Node>, u64) {
    let mut roots = Vec::new();
    let mut nodes = 0;
    let mut stack = vec![Node {
        depth: 0,
        chosen: 0,
        forbidden: graph.banned,
    }];
    while let Some(node) = stack.pop() {
        if node.depth == split_depth.min(graph.n) {
            roots.push(node);
            continue;
        }
        nodes += 1;
        let bit = 1u128 << node.depth;
        // pushed in reverse so the include branch is expanded first
        stack.push(Node {
            depth: node.depth + 1,
            chosen: node.chosen,
            forbidden: node.forbidden | bit,
        });
        if node.forbidden & bit == 0 {
            stack.push(Node {
                depth: node.depth + 1,
                chosen: node.chosen | bit,
                forbidden: node.forbidden | graph.forced_by(node.depth, node.chosen),
            });
        }
    }
    (roots, nodes)
}

/// Depth-first branch and bound over include/exclude decisions in
/// ascending element order.
///
/// Including an element marks the last free element of each pattern it
/// nearly completes as forbidden, so no pattern is ever completed. A node
/// is cut when its chosen count plus the remaining allowed elements cannot
/// beat the incumbent. The tree is split at `config.split_depth` into
/// subtrees that run in parallel, each seeded with the size of the greedy
/// set; the result and the node count do not depend on the thread count.
pub fn branch_and_bound_max(problem: &Problem, config: &SearchConfig) -> Result<SearchResult> {
    config.check_cap(Method::BranchAndBound, problem.order())?;
    let start = Instant::now();
    let graph = Hypergraph::new(problem)?;
    let seed = greedy(&graph);
    let threshold = seed.count_ones() as i64 - 1;
    let (roots, prefix_nodes) = frontier(&graph, config.split_depth as usize);
    let deadline = config.time_limit.map(|t| start + t);
    let stop = AtomicBool::new(false);

    let outcomes: Vec<(i64, Option<u128>, u64)> = roots
        .par_iter()
        .map(|&root| {
            let mut sub = Subtree {
                graph: &graph,
                best: threshold,
                best_set: None,
                nodes: 0,
                deadline,
                stop: &stop,
            };
            sub.dfs(root);
            (sub.best, sub.best_set, sub.nodes)
        })
        .collect();

    let explored = prefix_nodes + outcomes.iter().map(|o| o.2).sum::<u64>();
    let mut best = seed;
    let mut best_size = -1i64;
    for (size, set, _) in outcomes {
        if let Some(set) = set {
            if size > best_size {
                best_size = size;
                best = set;
            }
        }
    }
    let optimal = !stop.load(Ordering::Relaxed);
    SearchResult {
        problem: *problem,
        max: best.count_ones() as usize,
        witness: DenseSet::from_mask(problem.ambient, best),
        method: Method::BranchAndBound,
        explored,
        elapsed: start.elapsed(),
        optimal,
    }
    .verified()
}
