use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::game::{bfs, Edge, OwnedGraph, Ownership};
use crate::rational::Dist;

/// A cycle in cyclic vertex order, with ownership of each edge
/// `(vertices[i], vertices[i + 1 mod k])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCycle {
    pub vertices: Vec<usize>,
    pub owners: Vec<Ownership>,
    pub directed: bool,
}

impl MinCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        cycle_edges(&self.vertices)
    }
}

fn cycle_edges(cycle: &[usize]) -> impl Iterator<Item = Edge> + '_ {
    let k = cycle.len();
    (0..k).map(move |i| Edge::new(cycle[i], cycle[(i + 1) % k]))
}

/// True when `cycle` lists at least three distinct vertices joined
/// consecutively (and last to first) by graph edges.
pub fn is_cycle(graph: &OwnedGraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 || cycle.iter().any(|&v| v >= graph.n()) {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == k && (0..k).all(|i| graph.has_edge(cycle[i], cycle[(i + 1) % k]))
}

/// Whether the cycle distance between every two cycle vertices equals their
/// graph distance. Returns false for anything that is not a cycle.
pub fn is_min_cycle(graph: &OwnedGraph, cycle: &[usize]) -> bool {
    if !is_cycle(graph, cycle) {
        return false;
    }
    let k = cycle.len();
    (0..k).all(|i| {
        let dist = bfs(graph, cycle[i]);
        (i + 1..k).all(|j| {
            let along = (j - i).min(k - (j - i)) as u32;
            dist[cycle[j]] == Dist::Finite(along)
        })
    })
}

/// Whether some orientation of the cycle has every vertex buying the edge to
/// its successor.
pub fn is_directed_cycle(graph: &OwnedGraph, cycle: &[usize]) -> bool {
    if !is_cycle(graph, cycle) {
        return false;
    }
    let k = cycle.len();
    let forward = (0..k).all(|i| graph.bought_by(cycle[i], cycle[(i + 1) % k]));
    let backward = (0..k).all(|i| graph.bought_by(cycle[(i + 1) % k], cycle[i]));
    forward || backward
}

/// Shortest cycle through `edge`, or `None` for a bridge. The result is
/// always a min cycle; this is asserted.
pub fn min_cycle_through_edge(graph: &OwnedGraph, edge: Edge) -> Result<Option<MinCycle>> {
    if edge.hi() >= graph.n() || graph.owner(edge).is_none() {
        return Err(Error::InvalidArgument(format!("edge {edge} is not in the graph")));
    }
    let Some(path) = shortest_path_avoiding(graph, edge.lo(), edge.hi(), edge) else {
        return Ok(None);
    };
    let cycle = MinCycle {
        owners: cycle_edges(&path)
            .map(|e| graph.owner(e).expect("cycle edge in graph"))
            .collect(),
        directed: is_directed_cycle(graph, &path),
        vertices: path,
    };
    assert!(
        is_min_cycle(graph, &cycle.vertices),
        "shortest cycle through {edge} is not a min cycle: {:?}",
        cycle.vertices
    );
    Ok(Some(cycle))
}

/// BFS path `from -> to` that does not use `skip`; smallest-index
/// neighbors are explored first.
fn shortest_path_avoiding(graph: &OwnedGraph, from: usize, to: usize, skip: Edge) -> Option<Vec<usize>> {
    let n = graph.n();
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::from([from]);
    parent[from] = from;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in graph.neighbors(x) {
            if parent[y] == usize::MAX && Edge::new(x, y) != skip {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    if parent[to] == usize::MAX {
        return None;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(graph: &OwnedGraph) -> Option<u32> {
    let n = graph.n();
    let mut best: Option<u32> = None;
    for root in 0..n {
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::from([root]);
        dist[root] = 0;
        while let Some(x) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[x] >= b) {
                break;
            }
            for &y in graph.neighbors(x) {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// A shortest cycle of the graph: the first minimum over edges in edge
/// order of [`min_cycle_through_edge`].
pub fn shortest_cycle(graph: &OwnedGraph) -> Option<MinCycle> {
    let mut best: Option<MinCycle> = None;
    for e in graph.edges() {
        if let Some(c) = min_cycle_through_edge(graph, e).expect("edge from graph") {
            if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                best = Some(c);
            }
        }
    }
    best
}
