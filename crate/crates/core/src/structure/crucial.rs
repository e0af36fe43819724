//! The swap-toward-`b` deviation that bounds `D(a)` by `D(b) + 1`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::game::{build_graph, cost_with_strategy, eccentricity, Edge, GameConfig, StrategyProfile};
use crate::rational::{int, Cost, Dist, Rational};

use super::spt::{shortest_path_tree, ShortestPathTree, TieRule};

/// Agent `a` swaps its edge to `swapped` for an edge to `target` and drops
/// every other purchased edge outside `tree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrucialDeviation {
    pub agent: usize,
    pub target: usize,
    pub swapped: usize,
    pub removed: Vec<usize>,
    /// Shortest-path tree rooted at `target` under which the edge to
    /// `swapped` qualifies.
    pub tree: ShortestPathTree,
    pub old_strategy: BTreeSet<usize>,
    pub new_strategy: BTreeSet<usize>,
    pub old_cost: Cost,
    pub new_cost: Cost,
    /// `D(a)` before and after.
    pub old_usage: Dist,
    pub new_usage: Dist,
    /// `D(b)` before the change.
    pub target_usage: Dist,
}

impl CrucialDeviation {
    /// `new_cost - α|s_a|`: what the deviation costs beyond the current
    /// creation cost.
    pub fn relative_cost(&self, alpha: Rational) -> Cost {
        match self.new_cost {
            Cost::Finite(c) => Cost::Finite(c - alpha * int(self.old_strategy.len() as i64)),
            Cost::Infinite => Cost::Infinite,
        }
    }

    /// `D(b) + 1`, less `α` when an extra edge was dropped.
    pub fn bound(&self, alpha: Rational) -> Cost {
        let base = self.target_usage.to_cost() + Cost::Finite(int(1));
        match base {
            Cost::Finite(b) if !self.removed.is_empty() => Cost::Finite(b - alpha),
            other => other,
        }
    }

    /// `relative_cost ≤ bound`. Holds by construction for connected graphs;
    /// at an equilibrium it gives `D(a) ≤ bound`.
    pub fn within_bound(&self, alpha: Rational) -> bool {
        self.relative_cost(alpha) <= self.bound(alpha)
    }
}

/// Builds the deviation for `a` toward `b`. With `tree` given it must be a
/// shortest-path tree rooted at `b`; without one the canonical tree is
/// tried first and then trees with a single parent re-hung.
pub fn crucial_deviation(
    config: &GameConfig,
    profile: &StrategyProfile,
    a: usize,
    b: usize,
    tree: Option<&ShortestPathTree>,
) -> Result<CrucialDeviation> {
    config.check_profile(profile)?;
    config.check_agent(a)?;
    config.check_agent(b)?;
    if a == b {
        return Err(Error::PreconditionUnmet("agent and target coincide".into()));
    }
    let graph = build_graph(profile);
    let owned: Vec<usize> = profile.strategy(a).iter().copied().collect();
    if owned.is_empty() {
        return Err(Error::PreconditionUnmet(format!("agent {a} buys no edge")));
    }

    let (tree, swapped) = match tree {
        Some(t) => {
            if t.root() != b || !t.is_valid_for(&graph) {
                return Err(Error::InvalidArgument(format!(
                    "supplied tree is not a shortest-path tree rooted at {b}"
                )));
            }
            let a1 = qualifying(t, a, &owned).ok_or_else(|| no_qualifying(a, b))?;
            (t.clone(), a1)
        }
        None => {
            let canonical = shortest_path_tree(&graph, b, TieRule::SmallestIndexParent)?;
            match qualifying(&canonical, a, &owned) {
                Some(a1) => (canonical, a1),
                None => rehung(&graph, &canonical, a, &owned).ok_or_else(|| no_qualifying(a, b))?,
            }
        }
    };

    let removed: Vec<usize> = owned
        .iter()
        .copied()
        .filter(|&w| w != swapped && w != b && !tree.contains_edge(Edge::new(a, w)))
        .collect();
    let old_strategy = profile.strategy(a).clone();
    let mut new_strategy = old_strategy.clone();
    new_strategy.remove(&swapped);
    for w in &removed {
        new_strategy.remove(w);
    }
    new_strategy.insert(b);

    let next = profile.with_strategy(a, new_strategy.clone())?;
    Ok(CrucialDeviation {
        agent: a,
        target: b,
        swapped,
        removed,
        old_cost: crate::game::agent_cost(config, profile, a)?.total,
        new_cost: cost_with_strategy(config, profile, a, &new_strategy)?,
        old_usage: eccentricity(&graph, a),
        new_usage: eccentricity(&build_graph(&next), a),
        target_usage: eccentricity(&graph, b),
        tree,
        old_strategy,
        new_strategy,
    })
}

fn no_qualifying(a: usize, b: usize) -> Error {
    Error::PreconditionUnmet(format!(
        "agent {a} buys no edge to its tree parent or outside a shortest-path tree rooted at {b}"
    ))
}

/// The owned neighbor to swap: the tree parent if `a` bought that edge,
/// else the first owned non-tree edge.
fn qualifying(tree: &ShortestPathTree, a: usize, owned: &[usize]) -> Option<usize> {
    if let Some(p) = tree.parent(a).filter(|p| owned.contains(p)) {
        return Some(p);
    }
    owned.iter().copied().find(|&w| !tree.contains_edge(Edge::new(a, w)))
}

/// Searches trees differing from `tree` in one parent pointer: either `a`
/// re-hung under an owned neighbor, or an owned child of `a` re-hung
/// elsewhere so that its edge to `a` leaves the tree.
fn rehung(
    graph: &crate::game::OwnedGraph,
    tree: &ShortestPathTree,
    a: usize,
    owned: &[usize],
) -> Option<(ShortestPathTree, usize)> {
    for &w in owned {
        if let Ok(t) = tree.with_parent(graph, a, w) {
            return Some((t, w));
        }
    }
    for &w in owned.iter().filter(|&&w| tree.parent(w) == Some(a)) {
        for &p in graph.neighbors(w).iter().filter(|&&p| p != a) {
            if let Ok(t) = tree.with_parent(graph, w, p) {
                return Some((t, w));
            }
        }
    }
    None
}
