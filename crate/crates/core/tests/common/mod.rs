//! Brute-force oracles written against plain adjacency matrices. They share
//! no code with the library beyond reading purchase lists.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ncg::game::StrategyProfile;
use ncg::rational::Rational;
use rand::Rng;

pub const INF: u32 = u32::MAX / 4;

pub fn purchases(p: &StrategyProfile) -> Vec<(usize, usize)> {
    p.purchases().collect()
}

pub fn matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for &(u, v) in edges {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

pub fn floyd_warshall(adj: &[Vec<bool>]) -> Vec<Vec<u32>> {
    let n = adj.len();
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// `α·count + ecc`, `None` when some vertex is unreachable.
pub fn oracle_cost(alpha: Rational, count: usize, dist_row: &[u32]) -> Option<Rational> {
    let ecc = *dist_row.iter().max().unwrap();
    (ecc < INF).then(|| alpha * Rational::from(count as i64) + Rational::from(i64::from(ecc)))
}

fn less(a: Option<Rational>, b: Option<Rational>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    }
}

/// Cost of every agent.
pub fn oracle_agent_costs(n: usize, alpha: Rational, buys: &[(usize, usize)]) -> Vec<Option<Rational>> {
    let d = floyd_warshall(&matrix(n, buys));
    (0..n)
        .map(|v| oracle_cost(alpha, buys.iter().filter(|&&(u, _)| u == v).count(), &d[v]))
        .collect()
}

/// Cost of `v` after replacing its purchases with `strategy`.
pub fn oracle_cost_with(n: usize, alpha: Rational, buys: &[(usize, usize)], v: usize, strategy: &[usize]) -> Option<Rational> {
    let mut edges: Vec<(usize, usize)> = buys.iter().copied().filter(|&(u, _)| u != v).collect();
    edges.extend(strategy.iter().map(|&w| (v, w)));
    let d = floyd_warshall(&matrix(n, &edges));
    oracle_cost(alpha, strategy.len(), &d[v])
}

/// Full subset enumeration of every agent's alternatives.
pub fn oracle_is_nash(n: usize, alpha: Rational, buys: &[(usize, usize)]) -> bool {
    let current = oracle_agent_costs(n, alpha, buys);
    for (v, &cur) in current.iter().enumerate() {
        let others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        for mask in 0u32..1 << others.len() {
            let s: Vec<usize> = (0..others.len()).filter(|&i| mask >> i & 1 == 1).map(|i| others[i]).collect();
            if less(oracle_cost_with(n, alpha, buys, v, &s), cur) {
                return false;
            }
        }
    }
    true
}

/// All simple cycles (length ≥ 3) as vertex lists, each once.
pub fn simple_cycles(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let adj = matrix(n, edges);
    let mut out = Vec::new();
    // each cycle is rooted at its smallest vertex and its second vertex is
    // smaller than its last, which fixes one representative
    fn dfs(adj: &[Vec<bool>], start: usize, path: &mut Vec<usize>, on: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for w in 0..adj.len() {
            if !adj[last][w] || w < start {
                continue;
            }
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if !on[w] && w != start {
                on[w] = true;
                path.push(w);
                dfs(adj, start, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        dfs(&adj, s, &mut vec![s], &mut on, &mut out);
    }
    out
}

pub fn oracle_girth(n: usize, edges: &[(usize, usize)]) -> Option<u32> {
    simple_cycles(n, edges).iter().map(|c| c.len() as u32).min()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

/// Vertex sets of blocks with ≥ 3 vertices: classes of edges that share a
/// simple cycle.
pub fn oracle_blocks(n: usize, edges: &[(usize, usize)]) -> BTreeSet<Vec<usize>> {
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    let list: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| norm(a, b)).collect::<BTreeSet<_>>().into_iter().collect();
    let index = |e: (usize, usize)| list.iter().position(|&x| x == e).unwrap();
    let mut parent: Vec<usize> = (0..list.len()).collect();
    let mut on_cycle = vec![false; list.len()];
    for c in simple_cycles(n, edges) {
        let ids: Vec<usize> = (0..c.len()).map(|i| index(norm(c[i], c[(i + 1) % c.len()]))).collect();
        for &i in &ids {
            on_cycle[i] = true;
            let (a, b) = (find(&mut parent, ids[0]), find(&mut parent, i));
            parent[a] = b;
        }
    }
    let mut classes: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
    for i in (0..list.len()).filter(|&i| on_cycle[i]) {
        let r = find(&mut parent, i);
        let e = list[i];
        classes.entry(r).or_default().extend([e.0, e.1]);
    }
    classes.into_values().map(|s| s.into_iter().collect()).collect()
}

/// Vertices whose deletion splits their connected component.
pub fn oracle_cut_vertices(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let count = |skip: Option<usize>| {
        let kept: Vec<(usize, usize)> = edges.iter().copied().filter(|&(a, b)| Some(a) != skip && Some(b) != skip).collect();
        let d = floyd_warshall(&matrix(n, &kept));
        let mut seen = vec![false; n];
        let mut comps = 0;
        for v in (0..n).filter(|&v| Some(v) != skip) {
            if !seen[v] {
                comps += 1;
                for w in 0..n {
                    if d[v][w] < INF {
                        seen[w] = true;
                    }
                }
            }
        }
        comps
    };
    let base = count(None);
    (0..n)
        .filter(|&v| edges.iter().any(|&(a, b)| a == v || b == v) && count(Some(v)) > base)
        .collect()
}

/// Uniform random graph edge list on `n` vertices with edge density `p`.
pub fn random_edges<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Random single-owner profile: each present pair is bought by a random
/// endpoint.
pub fn random_profile<R: Rng>(rng: &mut R, n: usize, p: f64) -> StrategyProfile {
    let buys: Vec<(usize, usize)> = random_edges(rng, n, p)
        .into_iter()
        .map(|(u, v)| if rng.random_bool(0.5) { (u, v) } else { (v, u) })
        .collect();
    StrategyProfile::from_purchases(n, buys).unwrap()
}

/// Every single-owner profile on `n` agents (3^(n(n-1)/2) of them).
pub fn all_profiles(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut buys = Vec::new();
            for &(u, v) in &pairs {
                match code % 3 {
                    1 => buys.push((u, v)),
                    2 => buys.push((v, u)),
                    _ => {}
                }
                code /= 3;
            }
            buys
        })
        .collect()
}

/// Every graph on `n` vertices as an edge list.
pub fn all_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect())
        .collect()
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    floyd_warshall(&matrix(n, edges))[0].iter().all(|&d| d < INF)
}
