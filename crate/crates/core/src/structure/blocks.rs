use std::collections::BTreeSet;

use crate::game::{Edge, OwnedGraph};
use crate::rational::Rational;

/// Maximal biconnected subgraph with at least three vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiconnectedComponent {
    vertices: Vec<usize>,
    edges: Vec<Edge>,
}

impl BiconnectedComponent {
    pub(crate) fn from_edges(mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let vertices: BTreeSet<usize> = edges.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
        Self {
            vertices: vertices.into_iter().collect(),
            edges,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// `deg_H(v)`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// `2|E(H)| / |V(H)|`, exact.
    pub fn average_degree(&self) -> Rational {
        Rational::new(2 * self.edges.len() as i64, self.vertices.len() as i64)
    }

    /// The component as a graph on the parent's vertex set, ownership kept.
    pub fn subgraph(&self, graph: &OwnedGraph) -> OwnedGraph {
        graph.restricted(self.edges.iter().copied())
    }
}

/// Edge sets of all blocks, bridges included, via an iterative
/// Hopcroft–Tarjan traversal.
pub(crate) fn blocks(graph: &OwnedGraph) -> Vec<Vec<Edge>> {
    const UNSEEN: usize = usize::MAX;
    let n = graph.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<Edge> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, dfs parent, next neighbor position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, parent, pos) = stack[top];
            if let Some(&w) = graph.neighbors(v).get(pos) {
                stack[top].2 += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(Edge::new(v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(Edge::new(v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let closing = Edge::new(parent, v);
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == closing {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Biconnected components with at least three vertices, sorted by their
/// smallest vertex. A forest yields none.
pub fn biconnected_components(graph: &OwnedGraph) -> Vec<BiconnectedComponent> {
    let mut comps: Vec<BiconnectedComponent> = blocks(graph)
        .into_iter()
        .filter(|b| b.len() >= 3)
        .map(BiconnectedComponent::from_edges)
        .collect();
    comps.sort();
    comps
}

/// Vertices whose removal disconnects their connected component.
pub fn cut_vertices(graph: &OwnedGraph) -> Vec<usize> {
    let mut count = vec![0usize; graph.n()];
    for block in blocks(graph) {
        let vs: BTreeSet<usize> = block.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
        for v in vs {
            count[v] += 1;
        }
    }
    (0..graph.n()).filter(|&v| count[v] >= 2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn tree_has_no_components() {
        let g = OwnedGraph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert!(biconnected_components(&g).is_empty());
        assert_eq!(cut_vertices(&g), vec![1, 3]);
    }

    #[test]
    fn square_with_pendant() {
        let g = OwnedGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)]);
        let comps = biconnected_components(&g);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].vertices(), &[0, 1, 2, 3]);
        assert_eq!(comps[0].average_degree(), int(2));
        assert_eq!(cut_vertices(&g), vec![3]);
    }

    #[test]
    fn bowtie_splits_at_shared_vertex() {
        let g = OwnedGraph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let comps = biconnected_components(&g);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertices(), &[0, 1, 2]);
        assert_eq!(comps[1].vertices(), &[2, 3, 4]);
        assert_eq!(cut_vertices(&g), vec![2]);
    }

    #[test]
    fn k4_is_one_component() {
        let g = OwnedGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let comps = biconnected_components(&g);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].edges().len(), 6);
        assert_eq!(comps[0].average_degree(), int(3));
    }
}
