//! Objects defined relative to one biconnected component `H`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::game::{bfs, Edge, OwnedGraph};
use crate::rational::Dist;

use super::blocks::BiconnectedComponent;
use super::spt::{shortest_path_tree, ShortestPathTree, TieRule};

/// `x_0, x_1, …, x_k, x_{k+1}` with every interior vertex of degree 2 in
/// `H` and both endpoints of other degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwoDegreePath {
    pub vertices: Vec<usize>,
}

impl TwoDegreePath {
    pub fn k(&self) -> usize {
        self.vertices.len() - 2
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], self.vertices[self.vertices.len() - 1])
    }

    pub fn interior(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoDegreePaths {
    /// Every vertex of `H` has degree 2: `H` is a single cycle, given in
    /// cyclic order. No path has valid endpoints.
    FullCycle(Vec<usize>),
    Paths(Vec<TwoDegreePath>),
}

/// All maximal paths of `H` whose interior vertices have degree 2 in `H`,
/// each listed once with the smaller endpoint first.
pub fn two_degree_paths(component: &BiconnectedComponent) -> TwoDegreePaths {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in component.edges() {
        adj.entry(e.lo()).or_default().push(e.hi());
        adj.entry(e.hi()).or_default().push(e.lo());
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let deg = |v: usize| adj[&v].len();

    if component.vertices().iter().all(|&v| deg(v) == 2) {
        let start = component.vertices()[0];
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = adj[&start][0];
        while cur != start {
            order.push(cur);
            let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
            prev = cur;
            cur = next;
        }
        return TwoDegreePaths::FullCycle(order);
    }

    let mut paths = Vec::new();
    for &hub in component.vertices().iter().filter(|&&v| deg(v) != 2) {
        for &first in adj[&hub].iter().filter(|&&w| deg(w) == 2) {
            let mut vertices = vec![hub, first];
            let mut prev = hub;
            let mut cur = first;
            while deg(cur) == 2 {
                let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
                vertices.push(next);
                prev = cur;
                cur = next;
            }
            // each path is walked from both ends; keep one orientation
            let last = vertices.len() - 1;
            if (vertices[0], vertices[1]) <= (vertices[last], vertices[last - 1]) {
                paths.push(TwoDegreePath { vertices });
            }
        }
    }
    paths.sort();
    TwoDegreePaths::Paths(paths)
}

/// Each vertex of the graph mapped to its unique closest vertex of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosestAssignment {
    component: Vec<usize>,
    closest: Vec<usize>,
}

impl ClosestAssignment {
    /// The `H`-vertex that `w` is assigned to.
    pub fn closest(&self, w: usize) -> usize {
        self.closest[w]
    }

    /// `S(v)`, sorted.
    pub fn set(&self, v: usize) -> Vec<usize> {
        (0..self.closest.len()).filter(|&w| self.closest[w] == v).collect()
    }

    pub fn component_vertices(&self) -> &[usize] {
        &self.component
    }
}

/// Fails with [`Error::AssignmentAmbiguous`] if some vertex is equidistant
/// from two component vertices, which cannot happen for a true biconnected
/// component of a connected graph.
pub fn closest_assignment(graph: &OwnedGraph, component: &BiconnectedComponent) -> Result<ClosestAssignment> {
    let n = graph.n();
    // (distance, closest, another vertex at the same distance)
    let mut best: Vec<Option<(u32, usize, Option<usize>)>> = vec![None; n];
    for &h in component.vertices() {
        for (w, d) in bfs(graph, h).into_iter().enumerate() {
            let Dist::Finite(d) = d else {
                return Err(Error::Disconnected);
            };
            match &mut best[w] {
                Some((bd, _, tie)) if *bd == d => *tie = tie.or(Some(h)),
                Some((bd, _, _)) if *bd < d => {}
                slot => *slot = Some((d, h, None)),
            }
        }
    }
    let mut closest = Vec::with_capacity(n);
    for (w, b) in best.into_iter().enumerate() {
        let (_, h, tie) = b.expect("component nonempty");
        if let Some(second) = tie {
            return Err(Error::AssignmentAmbiguous {
                vertex: w,
                first: h,
                second,
            });
        }
        closest.push(h);
    }
    let assignment = ClosestAssignment {
        component: component.vertices().to_vec(),
        closest,
    };
    for &h in component.vertices() {
        assert_eq!(
            assignment.set(h).into_iter().filter(|&w| component.contains(w)).collect::<Vec<_>>(),
            vec![h],
            "component vertex {h} must be alone in its own set"
        );
    }
    Ok(assignment)
}

/// `T_H`: a shortest-path tree restricted to the edges of `H`, rooted at the
/// component vertex nearest the tree root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeRestriction {
    pub root: usize,
    parent: BTreeMap<usize, usize>,
    depth: BTreeMap<usize, u32>,
}

impl TreeRestriction {
    pub fn new(tree: &ShortestPathTree, component: &BiconnectedComponent) -> Result<Self> {
        let root = *component
            .vertices()
            .iter()
            .min_by_key(|&&v| (tree.depth(v), v))
            .expect("component nonempty");
        let mut parent = BTreeMap::new();
        let mut depth = BTreeMap::new();
        for &v in component.vertices() {
            depth.insert(v, tree.depth(v) - tree.depth(root));
            if v == root {
                continue;
            }
            match tree.parent(v) {
                Some(p) if component.contains_edge(Edge::new(v, p)) => {
                    parent.insert(v, p);
                }
                _ => {
                    return Err(Error::PreconditionUnmet(format!(
                        "tree parent of {v} leaves the component"
                    )))
                }
            }
        }
        Ok(Self { root, parent, depth })
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).copied()
    }

    pub fn depth(&self, v: usize) -> u32 {
        self.depth[&v]
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.parent(e.lo()) == Some(e.hi()) || self.parent(e.hi()) == Some(e.lo())
    }

    pub fn lowest_common_ancestor(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth(a) > self.depth(b) {
            a = self.parent[&a];
        }
        while self.depth(b) > self.depth(a) {
            b = self.parent[&b];
        }
        while a != b {
            a = self.parent[&a];
            b = self.parent[&b];
        }
        a
    }

    pub fn distance(&self, a: usize, b: usize) -> u32 {
        let x = self.lowest_common_ancestor(a, b);
        self.depth(a) + self.depth(b) - 2 * self.depth(x)
    }
}

/// Component vertices that buy an `H`-edge outside `T_H`, with those edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShoppingVertexSet {
    pub tree_root: usize,
    pub members: BTreeMap<usize, Vec<Edge>>,
}

impl ShoppingVertexSet {
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.keys().copied()
    }
}

/// Shopping vertices of `H` for the smallest-index-parent shortest-path tree
/// rooted at `tree_root`.
pub fn shopping_vertices(
    graph: &OwnedGraph,
    component: &BiconnectedComponent,
    tree_root: usize,
) -> Result<ShoppingVertexSet> {
    let tree = shortest_path_tree(graph, tree_root, TieRule::SmallestIndexParent)?;
    Ok(shopping_vertices_for(graph, component, &tree))
}

pub(crate) fn shopping_vertices_for(
    graph: &OwnedGraph,
    component: &BiconnectedComponent,
    tree: &ShortestPathTree,
) -> ShoppingVertexSet {
    let mut members: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for &e in component.edges().iter().filter(|&&e| !tree.contains_edge(e)) {
        for v in [e.lo(), e.hi()] {
            if graph.bought_by(v, e.other(v)) {
                members.entry(v).or_default().push(e);
            }
        }
    }
    ShoppingVertexSet {
        tree_root: tree.root(),
        members,
    }
}
