//! Backtracking search for admissible generators on small lattices.
//!
//! Values are drawn from a bounded grid (integers by default, rationals when
//! extra denominators are allowed). Elements are assigned in a linear
//! extension of the order; injectivity and strict monotonicity against
//! already-assigned comparable elements prune the tree, `f(e1) = 0` is
//! pinned, and each leaf runs the full condition check. Anchor triples are
//! either fixed by the caller or enumerated (in parallel across workers).

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::conditions::{check_conditions, CheckMode};
use crate::genfun::{build_unchecked, Anchors, Direction, Generator};
use crate::lattice::{ElemId, FiniteLattice};
use crate::value::{ExtValue, Rational};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Fixed anchors, or `None` to enumerate every `e1 <= a <= e2` triple.
    pub anchors: Option<Anchors>,
    /// Values range over `[-max_abs, max_abs]`.
    pub max_abs: i64,
    /// Denominators of the value grid; `[1]` searches integers only.
    pub denominators: Vec<i64>,
    /// Refuse lattices larger than this.
    pub max_elements: usize,
    /// Backtracking node budget; exceeding it yields a partial result.
    pub node_budget: u64,
    /// Stop after this many admissible generators.
    pub max_results: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            anchors: None,
            max_abs: 3,
            denominators: vec![1],
            max_elements: 8,
            node_budget: 2_000_000,
            max_results: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub generators: Vec<Generator>,
    pub nodes: u64,
    /// True when the node budget or result cap cut the search short.
    pub partial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("lattice has {n} elements, above the search guard of {limit}; raise the limit explicitly")]
    TooLarge { n: usize, limit: usize },
    #[error("search grid is empty")]
    EmptyGrid,
}

/// Enumerate admissible increasing generators. Results are sorted by
/// (anchors, value vector) so outputs are deterministic regardless of the
/// worker count.
pub fn search_generators(
    lattice: &Arc<FiniteLattice>,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let n = lattice.n();
    if n > cfg.max_elements {
        return Err(SearchError::TooLarge { n, limit: cfg.max_elements });
    }
    let mut grid: Vec<Rational> = Vec::new();
    for &d in &cfg.denominators {
        if d <= 0 {
            continue;
        }
        for p in -cfg.max_abs * d..=cfg.max_abs * d {
            grid.push(Rational::new(p, d));
        }
    }
    grid.sort_unstable();
    grid.dedup();
    if grid.is_empty() {
        return Err(SearchError::EmptyGrid);
    }
    let grid: Vec<ExtValue> = grid.into_iter().map(ExtValue::Finite).collect();

    let anchor_sets: Vec<Anchors> = match cfg.anchors {
        Some(a) => vec![a],
        None => {
            let mut out = Vec::new();
            for e1 in 0..n {
                for a in 0..n {
                    if !lattice.leq(e1, a) {
                        continue;
                    }
                    for e2 in 0..n {
                        if !lattice.leq(a, e2) {
                            continue;
                        }
                        // a = e2 below the top puts the pair (f(e2), f(x))
                        // of any x > a into the absorption band, killing the
                        // upper neutrality; the construction never yields a
                        // 2-uninorm there, so the triple is not enumerated.
                        if a == e2 && e2 != lattice.top() {
                            continue;
                        }
                        out.push(Anchors { e1, a, e2 });
                    }
                }
            }
            out
        }
    };

    // Linear extension: every strict predecessor is assigned first.
    let mut order: Vec<ElemId> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&y| lattice.lt(y, x)).count());

    let per_anchor_budget = (cfg.node_budget / anchor_sets.len().max(1) as u64).max(1);
    let results: Vec<(bool, u64, Vec<Generator>)> = anchor_sets
        .par_iter()
        .map(|&anchors| {
            let nodes = AtomicU64::new(0);
            let mut found = Vec::new();
            let mut values: Vec<Option<ExtValue>> = vec![None; n];
            let mut exhausted = true;
            assign(
                lattice,
                &grid,
                anchors,
                &order,
                0,
                &mut values,
                &nodes,
                per_anchor_budget,
                cfg.max_results,
                &mut found,
                &mut exhausted,
            );
            (exhausted, nodes.load(Ordering::Relaxed), found)
        })
        .collect();

    let mut generators = Vec::new();
    let mut nodes = 0;
    let mut partial = false;
    for (exhausted, anchor_nodes, found) in results {
        partial |= !exhausted;
        nodes += anchor_nodes;
        generators.extend(found);
    }
    generators.sort_by(|a, b| {
        let ka = (a.anchors().e1, a.anchors().a, a.anchors().e2);
        let kb = (b.anchors().e1, b.anchors().a, b.anchors().e2);
        ka.cmp(&kb).then_with(|| a.values().cmp(b.values()))
    });
    if let Some(cap) = cfg.max_results {
        if generators.len() > cap {
            generators.truncate(cap);
            partial = true;
        }
    }
    Ok(SearchOutcome { generators, nodes, partial })
}

#[allow(clippy::too_many_arguments)]
fn assign(
    lattice: &Arc<FiniteLattice>,
    grid: &[ExtValue],
    anchors: Anchors,
    order: &[ElemId],
    depth: usize,
    values: &mut Vec<Option<ExtValue>>,
    nodes: &AtomicU64,
    budget: u64,
    max_results: Option<usize>,
    found: &mut Vec<Generator>,
    exhausted: &mut bool,
) {
    if let Some(cap) = max_results {
        if found.len() >= cap {
            *exhausted = false;
            return;
        }
    }
    if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
        *exhausted = false;
        return;
    }
    if depth == order.len() {
        let vals: Vec<ExtValue> = values.iter().map(|v| v.expect("complete")).collect();
        let g = build_unchecked(
            Arc::clone(lattice),
            vals,
            Direction::Increasing,
            anchors,
        );
        let report = check_conditions(&g, CheckMode::Full).expect("full mode");
        if report.passed() {
            found.push(g);
        }
        return;
    }
    let x = order[depth];
    let candidates: Vec<ExtValue> = if x == anchors.e1 {
        vec![ExtValue::zero()]
    } else {
        grid.to_vec()
    };
    'outer: for v in candidates {
        for y in 0..lattice.n() {
            if let Some(w) = values[y] {
                if w == v {
                    continue 'outer;
                }
                if lattice.lt(y, x) && !(w < v) {
                    continue 'outer;
                }
                if lattice.lt(x, y) && !(v < w) {
                    continue 'outer;
                }
            }
        }
        // e1 is pinned at zero, so every comparable element must straddle it
        // the right way; that falls out of the generic pruning above once e1
        // is assigned, and e1 comes first only when the order says so. Pin
        // the sign early instead of waiting for the clash.
        if lattice.lt(x, anchors.e1) && v >= ExtValue::zero() {
            continue;
        }
        if lattice.lt(anchors.e1, x) && v <= ExtValue::zero() {
            continue;
        }
        values[x] = Some(v);
        assign(
            lattice, grid, anchors, order, depth + 1, values, nodes, budget, max_results, found,
            exhausted,
        );
        values[x] = None;
        if !*exhausted && max_results.map(|cap| found.len() >= cap).unwrap_or(false) {
            return;
        }
    }
}
