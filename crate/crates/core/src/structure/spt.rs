use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::game::{Edge, OwnedGraph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieRule {
    /// Among neighbors one level closer to the root, take the smallest index.
    #[default]
    SmallestIndexParent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortestPathTree {
    root: usize,
    parent: Vec<Option<usize>>,
    depth: Vec<u32>,
}

impl ShortestPathTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> u32 {
        self.depth[v]
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.parent[e.lo()] == Some(e.hi()) || self.parent[e.hi()] == Some(e.lo())
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| Edge::new(v, p)))
    }

    /// Same tree with `v` re-hung under `new_parent`, which must be a graph
    /// neighbor one level closer to the root.
    pub fn with_parent(&self, graph: &OwnedGraph, v: usize, new_parent: usize) -> Result<Self> {
        if v == self.root
            || !graph.has_edge(v, new_parent)
            || self.depth[new_parent] + 1 != self.depth[v]
        {
            return Err(Error::PreconditionUnmet(format!(
                "{new_parent} cannot be the shortest-path parent of {v}"
            )));
        }
        let mut next = self.clone();
        next.parent[v] = Some(new_parent);
        Ok(next)
    }

    /// Checks that this is a shortest-path tree of `graph`.
    pub fn is_valid_for(&self, graph: &OwnedGraph) -> bool {
        let dist = crate::game::bfs(graph, self.root);
        (0..graph.n()).all(|v| {
            dist[v].finite() == Some(self.depth[v])
                && match self.parent[v] {
                    None => v == self.root,
                    Some(p) => graph.has_edge(v, p) && self.depth[p] + 1 == self.depth[v],
                }
        })
    }
}

/// BFS tree from `root`. Fails with [`Error::Disconnected`] if some vertex
/// is unreachable.
pub fn shortest_path_tree(graph: &OwnedGraph, root: usize, tie_rule: TieRule) -> Result<ShortestPathTree> {
    let n = graph.n();
    if root >= n {
        return Err(Error::InvalidArgument(format!("root {root} out of range")));
    }
    let TieRule::SmallestIndexParent = tie_rule;
    let mut depth = vec![u32::MAX; n];
    let mut parent = vec![None; n];
    let mut queue = VecDeque::from([root]);
    depth[root] = 0;
    // BFS pops vertices in nondecreasing depth and, within a level, the first
    // discoverer is not necessarily the smallest; fix parents afterwards.
    while let Some(x) = queue.pop_front() {
        for &y in graph.neighbors(x) {
            if depth[y] == u32::MAX {
                depth[y] = depth[x] + 1;
                queue.push_back(y);
            }
        }
    }
    if depth.contains(&u32::MAX) {
        return Err(Error::Disconnected);
    }
    for v in (0..n).filter(|&v| v != root) {
        parent[v] = graph
            .neighbors(v)
            .iter()
            .copied()
            .find(|&u| depth[u] + 1 == depth[v]);
    }
    Ok(ShortestPathTree { root, parent, depth })
}
