//! Structural predicates that every equilibrium graph satisfies, evaluated
//! on an arbitrary profile.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;

use crate::game::{all_pairs_distances, build_graph, metrics, DistanceTable, GameConfig, Metrics, OwnedGraph, StrategyProfile};
use crate::rational::{frac, int, Dist, Rational};
use crate::Result;

use super::blocks::{biconnected_components, BiconnectedComponent};
use super::component::{closest_assignment, shopping_vertices_for, two_degree_paths, TreeRestriction, TwoDegreePaths};
use super::cycles::{girth, min_cycle_through_edge, shortest_cycle};
use super::spt::{shortest_path_tree, TieRule};

/// The object a failed check points at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessObject {
    Cycle(Vec<usize>),
    Path(Vec<usize>),
    Vertex(usize),
    Pair(usize, usize),
    Component(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub object: WitnessObject,
    pub detail: String,
}

impl Witness {
    fn new(object: WitnessObject, detail: impl Into<String>) -> Self {
        Self {
            object,
            detail: detail.into(),
        }
    }
}

fn join(vs: &[usize], sep: &str) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for WitnessObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessObject::Cycle(c) => write!(f, "cycle {}", join(c, "-")),
            WitnessObject::Path(p) => write!(f, "path {}", join(p, "-")),
            WitnessObject::Vertex(v) => write!(f, "vertex {v}"),
            WitnessObject::Pair(a, b) => write!(f, "pair {a} {b}"),
            WitnessObject::Component(vs) => write!(f, "component {{{}}}", join(vs, " ")),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.object, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    /// α is outside the check's range, or a precondition such as
    /// connectivity fails.
    NotApplicable,
    /// Applicable, but there is no object to check.
    Vacuous,
    Passed,
    Failed(Vec<Witness>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: &'static str,
    pub status: CheckStatus,
}

impl CheckRecord {
    pub fn applicable(&self) -> bool {
        self.status != CheckStatus::NotApplicable
    }

    /// False only for a failure; inapplicable and vacuous checks pass.
    pub fn passed(&self) -> bool {
        !matches!(self.status, CheckStatus::Failed(_))
    }

    pub fn witnesses(&self) -> &[Witness] {
        match &self.status {
            CheckStatus::Failed(w) => w,
            _ => &[],
        }
    }

    /// One-line witness text; `vacuous` for vacuous passes, empty otherwise.
    pub fn witness_summary(&self) -> String {
        match &self.status {
            CheckStatus::Vacuous => "vacuous".to_string(),
            CheckStatus::Failed(w) => w.iter().map(Witness::to_string).collect::<Vec<_>>().join("; "),
            _ => String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub records: Vec<CheckRecord>,
}

impl LemmaReport {
    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Check identifiers in report order.
pub const CHECK_IDS: [&str; 14] = [
    "connected",
    "girth_alpha_plus_2",
    "girth_two_alpha_minus_1",
    "min_cycles_directed",
    "component_vertices_buy",
    "ecc_within_radius_plus_2",
    "outsider_distance",
    "two_degree_path_length",
    "degree_three_neighborhood",
    "avg_degree_lower",
    "shopping_lca_distance",
    "shopping_tree_distance",
    "avg_degree_upper",
    "single_non_tree_edge",
];

struct Ctx<'a> {
    alpha: Rational,
    profile: &'a StrategyProfile,
    graph: OwnedGraph,
    components: Vec<BiconnectedComponent>,
    /// Present only for connected graphs.
    dist: Option<(DistanceTable, Metrics)>,
}

fn dist_value(d: Dist) -> Rational {
    int(i64::from(d.finite().expect("connected graph")))
}

/// Runs every check. The report is meaningful for equilibria, but any
/// profile is accepted and raw predicate outcomes are returned.
pub fn audit_equilibrium_structure(config: &GameConfig, profile: &StrategyProfile) -> Result<LemmaReport> {
    config.check_profile(profile)?;
    let graph = build_graph(profile);
    let components = biconnected_components(&graph);
    let dist = graph.is_connected().then(|| {
        let table = all_pairs_distances(&graph);
        let m = metrics(&table);
        (table, m)
    });
    let ctx = Ctx {
        alpha: config.alpha(),
        profile,
        graph,
        components,
        dist,
    };
    let a = ctx.alpha;
    let gt = |x: i64| a > int(x);

    let records = vec![
        record("connected", true, || ctx.connected()),
        record("girth_alpha_plus_2", true, || ctx.girth_at_least(a + int(2), "α+2")),
        record("girth_two_alpha_minus_1", true, || {
            ctx.girth_at_least(int(2) * a - int(1), "2α-1")
        }),
        record("min_cycles_directed", gt(2), || ctx.per_component(|h| ctx.min_cycles_directed(h))),
        record("component_vertices_buy", gt(2), || ctx.per_component(|h| ctx.vertices_buy(h))),
        record("ecc_within_radius_plus_2", gt(2), || ctx.with_distances(|t, m| ctx.ecc_bound(t, m))),
        record("outsider_distance", gt(2), || ctx.with_distances(|t, m| ctx.outsider(t, m))),
        record("two_degree_path_length", gt(5), || ctx.with_distances(|_, m| ctx.two_degree(m))),
        record("degree_three_neighborhood", gt(5), || {
            ctx.per_component(|h| ctx.degree_three_neighborhood(h))
        }),
        record("avg_degree_lower", gt(5), || {
            ctx.per_component(|h| {
                let d = h.average_degree();
                if d >= frac(11, 5) {
                    vec![]
                } else {
                    vec![Witness::new(
                        WitnessObject::Component(h.vertices().to_vec()),
                        format!("average degree {d} < 11/5"),
                    )]
                }
            })
        }),
        record("shopping_lca_distance", gt(2), || ctx.with_distances(|_, m| ctx.shopping_pairs(m, true))),
        record("shopping_tree_distance", gt(2), || ctx.with_distances(|_, m| ctx.shopping_pairs(m, false))),
        record("avg_degree_upper", gt(2), || {
            let bound = int(2) + int(2) / ((a - int(1)) / int(2)).ceil();
            ctx.per_component(|h| {
                let d = h.average_degree();
                if d < bound {
                    vec![]
                } else {
                    vec![Witness::new(
                        WitnessObject::Component(h.vertices().to_vec()),
                        format!("average degree {d} >= {bound}"),
                    )]
                }
            })
        }),
        record("single_non_tree_edge", gt(1), || ctx.with_distances(|_, m| ctx.single_non_tree(m))),
    ];
    debug_assert!(records.iter().map(|r| r.id).eq(CHECK_IDS));
    Ok(LemmaReport { records })
}

fn record(id: &'static str, in_range: bool, run: impl FnOnce() -> CheckStatus) -> CheckRecord {
    CheckRecord {
        id,
        status: if in_range { run() } else { CheckStatus::NotApplicable },
    }
}

fn outcome(witnesses: Vec<Witness>) -> CheckStatus {
    if witnesses.is_empty() {
        CheckStatus::Passed
    } else {
        CheckStatus::Failed(witnesses)
    }
}

impl Ctx<'_> {
    fn connected(&self) -> CheckStatus {
        let from0 = crate::game::bfs(&self.graph, 0);
        match from0.iter().position(|d| !d.is_finite()) {
            None => CheckStatus::Passed,
            Some(w) => CheckStatus::Failed(vec![Witness::new(
                WitnessObject::Pair(0, w),
                "no path",
            )]),
        }
    }

    fn girth_at_least(&self, bound: Rational, label: &str) -> CheckStatus {
        match girth(&self.graph) {
            None => CheckStatus::Vacuous,
            Some(g) if int(i64::from(g)) >= bound => CheckStatus::Passed,
            Some(g) => {
                let c = shortest_cycle(&self.graph).expect("graph has a cycle");
                CheckStatus::Failed(vec![Witness::new(
                    WitnessObject::Cycle(c.vertices),
                    format!("length {g} < {label} = {bound}"),
                )])
            }
        }
    }

    fn per_component(&self, check: impl Fn(&BiconnectedComponent) -> Vec<Witness>) -> CheckStatus {
        if self.components.is_empty() {
            return CheckStatus::Vacuous;
        }
        outcome(self.components.iter().flat_map(check).collect())
    }

    /// Runs `check` for connected graphs with at least one component.
    fn with_distances(&self, check: impl Fn(&DistanceTable, &Metrics) -> Vec<Witness>) -> CheckStatus {
        match &self.dist {
            None => CheckStatus::NotApplicable,
            Some(_) if self.components.is_empty() => CheckStatus::Vacuous,
            Some((t, m)) => outcome(check(t, m)),
        }
    }

    fn min_cycles_directed(&self, h: &BiconnectedComponent) -> Vec<Witness> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &e in h.edges() {
            let c = min_cycle_through_edge(&self.graph, e)
                .expect("component edge is in the graph")
                .expect("component edge lies on a cycle");
            if !c.directed {
                let mut key = c.vertices.clone();
                key.sort_unstable();
                if seen.insert(key) {
                    out.push(Witness::new(WitnessObject::Cycle(c.vertices), format!("min cycle through {e} not directed")));
                }
            }
        }
        out
    }

    fn vertices_buy(&self, h: &BiconnectedComponent) -> Vec<Witness> {
        h.vertices()
            .iter()
            .filter(|&&v| !self.profile.strategy(v).iter().any(|&w| h.contains_edge(crate::game::Edge::new(v, w))))
            .map(|&v| Witness::new(WitnessObject::Vertex(v), "buys no component edge"))
            .collect()
    }

    fn ecc_bound(&self, _: &DistanceTable, m: &Metrics) -> Vec<Witness> {
        let limit = dist_value(m.radius) + int(2);
        let vs: BTreeSet<usize> = self.components.iter().flat_map(|h| h.vertices().iter().copied()).collect();
        vs.into_iter()
            .filter(|&v| dist_value(m.ecc[v]) > limit)
            .map(|v| Witness::new(WitnessObject::Vertex(v), format!("eccentricity {} > radius+2 = {limit}", m.ecc[v])))
            .collect()
    }

    fn outsider(&self, t: &DistanceTable, m: &Metrics) -> Vec<Witness> {
        let mut out = Vec::new();
        for h in &self.components {
            let assignment = closest_assignment(&self.graph, h).expect("connected graph, true component");
            for &v in h.vertices() {
                let limit = dist_value(m.ecc[v]) + int(2) - self.alpha;
                for w in assignment.set(v) {
                    let d = dist_value(t.get(v, w));
                    if d > limit {
                        out.push(Witness::new(WitnessObject::Pair(v, w), format!("distance {d} > D+2-α = {limit}")));
                    }
                }
            }
        }
        out
    }

    fn two_degree(&self, m: &Metrics) -> Vec<Witness> {
        let rad = m.radius;
        let mut out = Vec::new();
        for h in &self.components {
            match two_degree_paths(h) {
                TwoDegreePaths::FullCycle(c) => {
                    let k = c.len() - 2;
                    if k > 3 {
                        out.push(Witness::new(WitnessObject::Cycle(c), format!("component is a bare cycle; path with k = {k} > 3")));
                    }
                }
                TwoDegreePaths::Paths(paths) => {
                    for p in paths {
                        let k = p.k();
                        if k > 3 {
                            out.push(Witness::new(WitnessObject::Path(p.vertices), format!("k = {k} > 3")));
                        } else if k == 3 {
                            let endpoint_rule = |tail: usize, head: usize| m.ecc[tail] == rad && m.ecc[head] != rad;
                            let (x0, x4) = p.endpoints();
                            let forward = self.path_bought_forward(&p.vertices);
                            let mut rev = p.vertices.clone();
                            rev.reverse();
                            let backward = self.path_bought_forward(&rev);
                            let ok = match (forward, backward) {
                                (true, false) => endpoint_rule(x0, x4),
                                (false, true) => endpoint_rule(x4, x0),
                                _ => endpoint_rule(x0, x4) || endpoint_rule(x4, x0),
                            };
                            if !ok {
                                out.push(Witness::new(
                                    WitnessObject::Path(p.vertices.clone()),
                                    format!("k = 3 with endpoint eccentricities {} and {} and radius {rad}", m.ecc[x0], m.ecc[x4]),
                                ));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn path_bought_forward(&self, path: &[usize]) -> bool {
        path.windows(2).all(|w| self.profile.buys(w[0], w[1]))
    }

    fn degree_three_neighborhood(&self, h: &BiconnectedComponent) -> Vec<Witness> {
        let sub = h.subgraph(&self.graph);
        let mut out = Vec::new();
        for &v in h.vertices() {
            let d = crate::game::bfs(&sub, v);
            let at = |k: u32| h.vertices().iter().copied().filter(|&u| d[u] == Dist::Finite(k)).collect::<Vec<_>>();
            let (n1, ring2) = ([vec![v], at(1)].concat(), at(2));
            let cond_a = n1.iter().any(|&u| h.degree(u) >= 3);
            let cond_b = n1.iter().all(|&u| h.degree(u) == 2) && ring2.iter().all(|&u| h.degree(u) >= 3);
            if !cond_a && !cond_b {
                out.push(Witness::new(WitnessObject::Vertex(v), "no degree-3 vertex within distance 1 and a degree-2 vertex at distance 2"));
            }
        }
        out
    }

    fn restriction(&self, m: &Metrics, h: &BiconnectedComponent) -> (TreeRestriction, super::component::ShoppingVertexSet) {
        let root = m.centers[0];
        let tree = shortest_path_tree(&self.graph, root, TieRule::SmallestIndexParent).expect("connected graph");
        let th = TreeRestriction::new(&tree, h).expect("shortest paths between component vertices stay inside it");
        (th, shopping_vertices_for(&self.graph, h, &tree))
    }

    fn shopping_pairs(&self, m: &Metrics, via_lca: bool) -> Vec<Witness> {
        let half = (self.alpha - Rational::one()) / int(2);
        let mut out = Vec::new();
        for h in &self.components {
            let (th, shop) = self.restriction(m, h);
            let members: Vec<usize> = shop.vertices().collect();
            for (i, &u1) in members.iter().enumerate() {
                for &u2 in &members[i + 1..] {
                    let (value, what) = if via_lca {
                        let x = th.lowest_common_ancestor(u1, u2);
                        (th.distance(u1, x).max(th.distance(u2, x)), format!("max tree distance to common ancestor {x}"))
                    } else {
                        (th.distance(u1, u2), "tree distance".to_string())
                    };
                    if int(i64::from(value)) < half {
                        out.push(Witness::new(WitnessObject::Pair(u1, u2), format!("{what} {value} < (α-1)/2 = {half}")));
                    }
                }
            }
        }
        out
    }

    fn single_non_tree(&self, m: &Metrics) -> Vec<Witness> {
        let mut out = Vec::new();
        for h in &self.components {
            let (_, shop) = self.restriction(m, h);
            for (&u, edges) in &shop.members {
                if edges.len() != 1 {
                    let list = edges.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
                    out.push(Witness::new(WitnessObject::Vertex(u), format!("buys {} non-tree edges: {list}", edges.len())));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: usize, alpha: Rational, buys: &[(usize, usize)]) -> LemmaReport {
        let config = GameConfig::new(n, alpha).unwrap();
        let p = StrategyProfile::from_purchases(n, buys.iter().copied()).unwrap();
        audit_equilibrium_structure(&config, &p).unwrap()
    }

    #[test]
    fn tree_equilibrium_passes_vacuously() {
        let r = run(4, int(25), &[(1, 0), (2, 0), (3, 0)]);
        assert!(r.all_passed());
        assert_eq!(r.get("connected").unwrap().status, CheckStatus::Passed);
        for id in ["girth_alpha_plus_2", "min_cycles_directed", "avg_degree_lower", "shopping_lca_distance"] {
            assert_eq!(r.get(id).unwrap().status, CheckStatus::Vacuous, "{id}");
        }
        assert_eq!(r.records.len(), CHECK_IDS.len());
    }

    #[test]
    fn directed_c4_fails_girth() {
        let r = run(4, int(5), &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let girth = r.get("girth_alpha_plus_2").unwrap();
        let w = girth.witnesses();
        assert_eq!(w.len(), 1);
        match &w[0].object {
            WitnessObject::Cycle(c) => assert_eq!(c.len(), 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(!r.get("girth_two_alpha_minus_1").unwrap().passed());
        assert!(girth.witness_summary().starts_with("cycle "));
    }

    #[test]
    fn alpha_gates() {
        let r = run(3, int(1), &[(0, 1), (1, 2), (2, 0)]);
        for id in ["min_cycles_directed", "two_degree_path_length", "avg_degree_upper", "single_non_tree_edge"] {
            assert!(!r.get(id).unwrap().applicable(), "{id}");
        }
        assert!(r.get("girth_alpha_plus_2").unwrap().passed());
    }

    #[test]
    fn undirected_min_cycle_is_flagged() {
        let r = run(3, int(3), &[(0, 1), (0, 2), (1, 2)]);
        assert!(!r.get("min_cycles_directed").unwrap().passed());
        // vertex 2 buys nothing inside the triangle
        let w = r.get("component_vertices_buy").unwrap().witnesses().to_vec();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].object, WitnessObject::Vertex(2));
    }

    #[test]
    fn bare_long_cycle_fails_two_degree_check() {
        let k = 12;
        let buys: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        let r = run(k, int(6), &buys);
        assert!(!r.get("two_degree_path_length").unwrap().passed());
        assert!(!r.get("degree_three_neighborhood").unwrap().passed());
        assert!(!r.get("avg_degree_lower").unwrap().passed());
    }

    #[test]
    fn disconnected_skips_distance_checks() {
        let r = run(6, int(3), &[(0, 1), (1, 2), (2, 0)]);
        assert!(!r.get("connected").unwrap().passed());
        assert!(!r.get("ecc_within_radius_plus_2").unwrap().applicable());
        assert!(!r.get("shopping_tree_distance").unwrap().applicable());
    }
}
