//! Strategy profiles, the graph they induce, hop distances and the
//! max-distance cost model.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{self, Cost, Dist, Rational};

pub type Agent = usize;

const UNREACHED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GameConfig {
    n: usize,
    alpha: Rational,
}

impl GameConfig {
    pub fn new(n: usize, alpha: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("agent count must be at least 1".into()));
        }
        if !rational::is_positive(&alpha) {
            return Err(Error::InvalidArgument(format!(
                "edge price must be positive, got {alpha}"
            )));
        }
        Ok(Self { n, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> Rational {
        self.alpha
    }

    pub(crate) fn check_profile(&self, profile: &StrategyProfile) -> Result<()> {
        if profile.n() != self.n {
            return Err(Error::InvalidArgument(format!(
                "profile has {} agents but the game has {}",
                profile.n(),
                self.n
            )));
        }
        Ok(())
    }

    pub(crate) fn check_agent(&self, v: Agent) -> Result<()> {
        if v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "agent {v} out of range for n = {}",
                self.n
            )));
        }
        Ok(())
    }
}

/// Per-agent purchase sets. Sets are kept sorted, so equal profiles compare
/// and hash equal regardless of construction order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyProfile {
    buys: Vec<BTreeSet<Agent>>,
}

impl StrategyProfile {
    pub fn empty(n: usize) -> Self {
        Self {
            buys: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_sets(buys: Vec<BTreeSet<Agent>>) -> Result<Self> {
        let n = buys.len();
        for (i, s) in buys.iter().enumerate() {
            for &j in s {
                validate_purchase(n, i, j)?;
            }
        }
        Ok(Self { buys })
    }

    /// Builds a profile from `(buyer, target)` pairs.
    pub fn from_purchases<I>(n: usize, purchases: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Agent, Agent)>,
    {
        let mut profile = Self::empty(n);
        for (u, v) in purchases {
            validate_purchase(n, u, v)?;
            profile.buys[u].insert(v);
        }
        Ok(profile)
    }

    pub fn n(&self) -> usize {
        self.buys.len()
    }

    pub fn strategy(&self, v: Agent) -> &BTreeSet<Agent> {
        &self.buys[v]
    }

    pub fn purchase_count(&self, v: Agent) -> usize {
        self.buys[v].len()
    }

    pub fn total_purchases(&self) -> usize {
        self.buys.iter().map(BTreeSet::len).sum()
    }

    pub fn buys(&self, u: Agent, v: Agent) -> bool {
        self.buys[u].contains(&v)
    }

    /// All `(buyer, target)` pairs in ascending order.
    pub fn purchases(&self) -> impl Iterator<Item = (Agent, Agent)> + '_ {
        self.buys
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
    }

    /// Copy with agent `v`'s purchase set replaced.
    pub fn with_strategy(&self, v: Agent, strategy: BTreeSet<Agent>) -> Result<Self> {
        if v >= self.n() {
            return Err(Error::InvalidArgument(format!("agent {v} out of range")));
        }
        for &t in &strategy {
            validate_purchase(self.n(), v, t)?;
        }
        let mut next = self.clone();
        next.buys[v] = strategy;
        Ok(next)
    }

    pub fn has_double_purchase(&self) -> bool {
        self.purchases().any(|(u, v)| self.buys(v, u))
    }

    /// Relabels agent `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[Agent]) -> Self {
        let mut out = Self::empty(self.n());
        for (u, v) in self.purchases() {
            out.buys[perm[u]].insert(perm[v]);
        }
        out
    }
}

fn validate_purchase(n: usize, u: Agent, v: Agent) -> Result<()> {
    if u >= n || v >= n {
        return Err(Error::InvalidArgument(format!(
            "purchase {u}->{v} out of range for n = {n}"
        )));
    }
    if u == v {
        return Err(Error::InvalidArgument(format!("agent {u} cannot buy a self-loop")));
    }
    Ok(())
}

/// Undirected edge with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: usize,
    hi: usize,
}

impl Edge {
    /// Panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop");
        Self {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// Which endpoints paid for an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ownership {
    Lo,
    Hi,
    Both,
}

impl Ownership {
    pub fn bought_by(self, edge: Edge, v: usize) -> bool {
        match self {
            Ownership::Lo => v == edge.lo,
            Ownership::Hi => v == edge.hi,
            Ownership::Both => edge.contains(v),
        }
    }
}

/// Simple undirected graph with per-edge ownership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OwnedGraph {
    adj: Vec<Vec<usize>>,
    owners: BTreeMap<Edge, Ownership>,
}

impl OwnedGraph {
    /// Graph on `n` vertices from unordered pairs; each edge is owned by its
    /// lower endpoint. Useful when ownership is irrelevant.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut owners = BTreeMap::new();
        for (a, b) in edges {
            assert!(a < n && b < n, "edge {a}-{b} out of range");
            owners.insert(Edge::new(a, b), Ownership::Lo);
        }
        Self::from_owners(n, owners)
    }

    fn from_owners(n: usize, owners: BTreeMap<Edge, Ownership>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in owners.keys() {
            adj[e.lo].push(e.hi);
            adj[e.hi].push(e.lo);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { adj, owners }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.owners.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.owners.keys().copied()
    }

    pub fn owned_edges(&self) -> impl Iterator<Item = (Edge, Ownership)> + '_ {
        self.owners.iter().map(|(e, o)| (*e, *o))
    }

    pub fn owner(&self, e: Edge) -> Option<Ownership> {
        self.owners.get(&e).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.owners.contains_key(&Edge::new(a, b))
    }

    /// True when `v` paid for the edge `{v, w}`.
    pub fn bought_by(&self, v: usize, w: usize) -> bool {
        let e = Edge::new(v, w);
        self.owner(e).is_some_and(|o| o.bought_by(e, v))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || bfs(self, 0).iter().all(|d| d.is_finite())
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    /// Subgraph on the same vertex set keeping only `edges`.
    pub fn restricted<I: IntoIterator<Item = Edge>>(&self, edges: I) -> Self {
        let owners = edges
            .into_iter()
            .filter_map(|e| self.owner(e).map(|o| (e, o)))
            .collect();
        Self::from_owners(self.n(), owners)
    }
}

pub fn build_graph(profile: &StrategyProfile) -> OwnedGraph {
    let mut owners: BTreeMap<Edge, Ownership> = BTreeMap::new();
    for (u, v) in profile.purchases() {
        let e = Edge::new(u, v);
        let mine = if u == e.lo { Ownership::Lo } else { Ownership::Hi };
        owners
            .entry(e)
            .and_modify(|o| {
                if *o != mine {
                    *o = Ownership::Both;
                }
            })
            .or_insert(mine);
    }
    OwnedGraph::from_owners(profile.n(), owners)
}

/// Single-source hop distances.
pub fn bfs(graph: &OwnedGraph, source: usize) -> Vec<Dist> {
    raw_bfs(graph.n(), source, |v| graph.neighbors(v))
        .into_iter()
        .map(to_dist)
        .collect()
}

pub(crate) fn raw_bfs<'a, F>(n: usize, source: usize, neighbors: F) -> Vec<u32>
where
    F: Fn(usize) -> &'a [usize],
{
    let mut dist = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(x) = queue.pop_front() {
        for &y in neighbors(x) {
            if dist[y] == UNREACHED {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

fn to_dist(d: u32) -> Dist {
    if d == UNREACHED {
        Dist::Infinite
    } else {
        Dist::Finite(d)
    }
}

/// Eccentricity of one vertex.
pub fn eccentricity(graph: &OwnedGraph, v: usize) -> Dist {
    bfs(graph, v).into_iter().max().unwrap_or(Dist::Finite(0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Dist {
        to_dist(self.dist[u * self.n + v])
    }

    /// Finite distance, `None` across components.
    pub fn hops(&self, u: usize, v: usize) -> Option<u32> {
        self.get(u, v).finite()
    }

    pub fn row(&self, u: usize) -> impl Iterator<Item = Dist> + '_ {
        self.dist[u * self.n..(u + 1) * self.n].iter().map(|&d| to_dist(d))
    }
}

pub fn all_pairs_distances(graph: &OwnedGraph) -> DistanceTable {
    let n = graph.n();
    let mut dist = Vec::with_capacity(n * n);
    for s in 0..n {
        dist.extend(raw_bfs(n, s, |v| graph.neighbors(v)));
    }
    DistanceTable { n, dist }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metrics {
    pub ecc: Vec<Dist>,
    pub radius: Dist,
    pub diameter: Dist,
    pub centers: Vec<usize>,
}

impl Metrics {
    pub fn is_connected(&self) -> bool {
        self.diameter.is_finite()
    }
}

pub fn metrics(table: &DistanceTable) -> Metrics {
    let n = table.n();
    let ecc: Vec<Dist> = (0..n)
        .map(|u| table.row(u).max().unwrap_or(Dist::Finite(0)))
        .collect();
    let radius = ecc.iter().copied().min().unwrap_or(Dist::Finite(0));
    let diameter = ecc.iter().copied().max().unwrap_or(Dist::Finite(0));
    let centers = (0..n).filter(|&v| ecc[v] == radius).collect();
    Metrics {
        ecc,
        radius,
        diameter,
        centers,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostBreakdown {
    pub creation: Rational,
    pub usage: Dist,
    pub total: Cost,
}

impl CostBreakdown {
    fn new(alpha: Rational, purchases: usize, usage: Dist) -> Self {
        let creation = alpha * rational::int(purchases as i64);
        Self {
            creation,
            usage,
            total: Cost::Finite(creation) + usage.to_cost(),
        }
    }
}

/// `α·|s_v| + D(v)` in the graph induced by `profile`.
pub fn agent_cost(config: &GameConfig, profile: &StrategyProfile, v: Agent) -> Result<CostBreakdown> {
    config.check_profile(profile)?;
    config.check_agent(v)?;
    let graph = build_graph(profile);
    Ok(agent_cost_in(config, profile, &graph, v))
}

pub(crate) fn agent_cost_in(
    config: &GameConfig,
    profile: &StrategyProfile,
    graph: &OwnedGraph,
    v: Agent,
) -> CostBreakdown {
    CostBreakdown::new(config.alpha(), profile.purchase_count(v), eccentricity(graph, v))
}

/// Sum of agent costs. Counts purchases, so a doubly bought edge is paid
/// twice; equals `α|E| + Σ D(v)` whenever no edge is doubly bought.
pub fn social_cost(config: &GameConfig, profile: &StrategyProfile) -> Result<Cost> {
    config.check_profile(profile)?;
    let graph = build_graph(profile);
    Ok((0..config.n())
        .map(|v| agent_cost_in(config, profile, &graph, v).total)
        .sum())
}

/// Agent `v`'s cost after replacing its purchase set with `strategy`,
/// others fixed.
pub fn cost_with_strategy(
    config: &GameConfig,
    profile: &StrategyProfile,
    v: Agent,
    strategy: &BTreeSet<Agent>,
) -> Result<Cost> {
    config.check_profile(profile)?;
    let next = profile.with_strategy(v, strategy.clone())?;
    let graph = build_graph(&next);
    Ok(agent_cost_in(config, &next, &graph, v).total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn profile(n: usize, buys: &[(usize, usize)]) -> StrategyProfile {
        StrategyProfile::from_purchases(n, buys.iter().copied()).unwrap()
    }

    #[test]
    fn single_purchase_edge() {
        let g = build_graph(&profile(2, &[(0, 1)]));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.owner(Edge::new(0, 1)), Some(Ownership::Lo));
        assert!(g.bought_by(0, 1));
        assert!(!g.bought_by(1, 0));
    }

    #[test]
    fn double_purchase_is_one_edge_with_two_owners() {
        let p = profile(2, &[(0, 1), (1, 0)]);
        let g = build_graph(&p);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.owner(Edge::new(0, 1)), Some(Ownership::Both));
        assert!(p.has_double_purchase());
    }

    #[test]
    fn path_ownership() {
        let g = build_graph(&profile(3, &[(0, 1), (1, 2)]));
        let edges: Vec<_> = g.owned_edges().collect();
        assert_eq!(
            edges,
            vec![(Edge::new(0, 1), Ownership::Lo), (Edge::new(1, 2), Ownership::Lo)]
        );
    }

    #[test]
    fn rejects_self_loops_and_out_of_range() {
        assert!(StrategyProfile::from_purchases(3, [(1, 1)]).is_err());
        assert!(StrategyProfile::from_purchases(3, [(0, 3)]).is_err());
        assert!(GameConfig::new(0, int(1)).is_err());
        assert!(GameConfig::new(3, int(0)).is_err());
        assert!(GameConfig::new(3, frac(-1, 2)).is_err());
    }

    #[test]
    fn distances_basic() {
        let path = build_graph(&profile(3, &[(0, 1), (1, 2)]));
        assert_eq!(all_pairs_distances(&path).get(0, 2), Dist::Finite(2));

        let isolated = build_graph(&StrategyProfile::empty(2));
        assert_eq!(all_pairs_distances(&isolated).get(0, 1), Dist::Infinite);

        let k4 = OwnedGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let t = all_pairs_distances(&k4);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(t.get(u, v), Dist::Finite(u32::from(u != v)));
            }
        }
    }

    #[test]
    fn metrics_examples() {
        let star = OwnedGraph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]);
        let m = metrics(&all_pairs_distances(&star));
        assert_eq!(m.ecc[0], Dist::Finite(1));
        assert_eq!(m.radius, Dist::Finite(1));
        assert_eq!(m.diameter, Dist::Finite(2));
        assert_eq!(m.centers, vec![0]);

        let path = OwnedGraph::from_edges(3, [(0, 1), (1, 2)]);
        let m = metrics(&all_pairs_distances(&path));
        assert_eq!((m.radius, m.diameter), (Dist::Finite(1), Dist::Finite(2)));
        assert_eq!(m.centers, vec![1]);

        let split = OwnedGraph::from_edges(3, [(0, 1)]);
        let m = metrics(&all_pairs_distances(&split));
        assert_eq!((m.radius, m.diameter), (Dist::Infinite, Dist::Infinite));
        assert!(m.ecc.iter().all(|d| *d == Dist::Infinite));
    }

    #[test]
    fn agent_cost_examples() {
        let cfg = GameConfig::new(3, int(5)).unwrap();
        let star = profile(3, &[(0, 1), (2, 1)]);
        let leaf = agent_cost(&cfg, &star, 0).unwrap();
        assert_eq!(leaf.creation, int(5));
        assert_eq!(leaf.usage, Dist::Finite(2));
        assert_eq!(leaf.total, Cost::Finite(int(7)));
        let center = agent_cost(&cfg, &star, 1).unwrap();
        assert_eq!(center.creation, int(0));
        assert_eq!(center.total, Cost::Finite(int(1)));

        let isolated = profile(3, &[(0, 1)]);
        assert_eq!(agent_cost(&cfg, &isolated, 2).unwrap().total, Cost::Infinite);
    }

    #[test]
    fn social_cost_examples() {
        let star = profile(5, &[(1, 0), (2, 0), (3, 0), (4, 0)]);
        let cfg = GameConfig::new(5, int(1)).unwrap();
        assert_eq!(social_cost(&cfg, &star).unwrap(), Cost::Finite(int(13)));

        let clique = profile(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        );
        let cfg = GameConfig::new(5, frac(1, 4)).unwrap();
        assert_eq!(social_cost(&cfg, &clique).unwrap(), Cost::Finite(frac(15, 2)));

        let double = profile(2, &[(0, 1), (1, 0)]);
        let cfg = GameConfig::new(2, int(1)).unwrap();
        assert_eq!(social_cost(&cfg, &double).unwrap(), Cost::Finite(int(4)));
    }

    #[test]
    fn mismatched_profile_is_rejected() {
        let cfg = GameConfig::new(3, int(1)).unwrap();
        assert!(social_cost(&cfg, &StrategyProfile::empty(4)).is_err());
        assert!(agent_cost(&cfg, &StrategyProfile::empty(3), 3).is_err());
    }
}
