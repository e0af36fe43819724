//! Exact Nash verification, deviation witnesses, dynamics and equilibrium
//! enumeration/search.

mod dynamics;
mod enumerate;
mod search;

pub use dynamics::{best_response_dynamics, DynamicsOutcome, DynamicsStep, DynamicsTrace, Schedule};
pub use enumerate::{
    canonical_key, double_purchase_counterexample, enumerate_equilibria, EnumerationResult,
    EquilibriumRecord, MAX_ENUMERATION_AGENTS,
};
pub use search::search_nontree_equilibria;

use std::collections::{BTreeSet, VecDeque};

use crate::bitgame::{self, Price, Scaled, INF};
use crate::error::{size_guard, Result};
use crate::game::{self, Agent, GameConfig, StrategyProfile};
use crate::rational::{Cost, Rational};

/// Largest `n` for which exact best responses (2^(n-1) subsets) are attempted.
pub const MAX_EXACT_AGENTS: usize = 20;

/// A strictly improving unilateral deviation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeviationWitness {
    pub agent: Agent,
    pub old_strategy: BTreeSet<Agent>,
    pub new_strategy: BTreeSet<Agent>,
    pub old_cost: Cost,
    pub new_cost: Cost,
}

impl DeviationWitness {
    /// Recomputes both costs from scratch and checks strict improvement.
    pub fn verify(&self, config: &GameConfig, profile: &StrategyProfile) -> bool {
        if self.agent >= profile.n() || profile.strategy(self.agent) != &self.old_strategy {
            return false;
        }
        let old = game::cost_with_strategy(config, profile, self.agent, &self.old_strategy);
        let new = game::cost_with_strategy(config, profile, self.agent, &self.new_strategy);
        matches!((old, new), (Ok(o), Ok(n)) if o == self.old_cost && n == self.new_cost && n < o)
    }

    /// The profile after the deviation.
    pub fn apply(&self, profile: &StrategyProfile) -> Result<StrategyProfile> {
        profile.with_strategy(self.agent, self.new_strategy.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestResponse {
    pub strategy: BTreeSet<Agent>,
    pub cost: Cost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub is_nash: bool,
    pub witness: Option<DeviationWitness>,
    /// Every agent's best response, filled when the profile is an equilibrium.
    pub per_agent_best: Option<Vec<BestResponse>>,
}

pub(crate) fn unscale(price_denom: i64, s: Scaled) -> Cost {
    if s == INF {
        Cost::Infinite
    } else {
        let num = i64::try_from(s).expect("scaled cost fits in i64");
        Cost::Finite(Rational::new(num, price_denom))
    }
}

fn exact_guard(n: usize) -> Result<()> {
    size_guard("best response", n, MAX_EXACT_AGENTS)
}

/// Minimum-cost strategy of `v` with everyone else fixed. Ties go to the
/// fewest purchases, then the lexicographically smallest purchase list.
pub fn best_response_exact(
    config: &GameConfig,
    profile: &StrategyProfile,
    v: Agent,
) -> Result<BestResponse> {
    config.check_profile(profile)?;
    config.check_agent(v)?;
    exact_guard(config.n())?;
    let masks = bitgame::masks_of(profile);
    let (strategy, cost) = bitgame::best_response(config.n(), &masks, Price::of(config), v);
    Ok(BestResponse {
        strategy: bitgame::set_of(strategy),
        cost: unscale(*config.alpha().denom(), cost),
    })
}

/// Exact equilibrium test. On failure the witness is the first agent (by
/// index) that can improve, paired with its exact best response.
pub fn is_nash(config: &GameConfig, profile: &StrategyProfile) -> Result<EquilibriumReport> {
    config.check_profile(profile)?;
    exact_guard(config.n())?;
    let n = config.n();
    let price = Price::of(config);
    let denom = *config.alpha().denom();
    let masks = bitgame::masks_of(profile);
    let adj = bitgame::adjacency(n, &masks);
    let mut table = Vec::with_capacity(n);
    for v in 0..n {
        let old = bitgame::current_cost(n, &masks, &adj, price, v);
        let (strategy, best) = bitgame::best_response(n, &masks, price, v);
        if best < old {
            return Ok(EquilibriumReport {
                is_nash: false,
                witness: Some(DeviationWitness {
                    agent: v,
                    old_strategy: profile.strategy(v).clone(),
                    new_strategy: bitgame::set_of(strategy),
                    old_cost: unscale(denom, old),
                    new_cost: unscale(denom, best),
                }),
                per_agent_best: None,
            });
        }
        table.push(BestResponse {
            strategy: bitgame::set_of(strategy),
            cost: unscale(denom, best),
        });
    }
    Ok(EquilibriumReport {
        is_nash: true,
        witness: None,
        per_agent_best: Some(table),
    })
}

/// Evaluates `v`'s usage cost under alternative strategies of `v` alone.
pub(crate) struct AgentView {
    v: Agent,
    adj: Vec<Vec<Agent>>,
    incoming: BTreeSet<Agent>,
}

impl AgentView {
    pub(crate) fn new(profile: &StrategyProfile, v: Agent) -> Self {
        let n = profile.n();
        let mut adj = vec![Vec::new(); n];
        let mut incoming = BTreeSet::new();
        for (a, b) in profile.purchases().filter(|&(a, _)| a != v) {
            adj[a].push(b);
            adj[b].push(a);
            if b == v {
                incoming.insert(a);
            }
        }
        Self { v, adj, incoming }
    }

    pub(crate) fn usage(&self, strategy: &BTreeSet<Agent>) -> Option<u32> {
        let n = self.adj.len();
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        dist[self.v] = 0;
        let mut reached = 1;
        for &w in self.incoming.iter().chain(strategy) {
            if dist[w] == u32::MAX {
                dist[w] = 1;
                reached += 1;
                queue.push_back(w);
            }
        }
        let mut far = u32::from(reached > 1);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    far = dist[y];
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        (reached == n).then_some(far)
    }

    pub(crate) fn cost(&self, alpha: Rational, strategy: &BTreeSet<Agent>) -> Cost {
        match self.usage(strategy) {
            Some(d) => Cost::Finite(
                alpha * Rational::from_integer(strategy.len() as i64)
                    + Rational::from_integer(i64::from(d)),
            ),
            None => Cost::Infinite,
        }
    }
}

/// Best single add, remove or swap for `v`, if it strictly improves.
/// `None` does not imply equilibrium.
pub fn improving_move_heuristic(
    config: &GameConfig,
    profile: &StrategyProfile,
    v: Agent,
) -> Result<Option<DeviationWitness>> {
    config.check_profile(profile)?;
    config.check_agent(v)?;
    let alpha = config.alpha();
    let view = AgentView::new(profile, v);
    let current = profile.strategy(v);
    let old_cost = view.cost(alpha, current);
    let outside: Vec<Agent> = (0..config.n())
        .filter(|&u| u != v && !current.contains(&u))
        .collect();

    let mut candidates: Vec<BTreeSet<Agent>> = Vec::new();
    for &x in current {
        let mut s = current.clone();
        s.remove(&x);
        candidates.push(s);
    }
    for &y in &outside {
        let mut s = current.clone();
        s.insert(y);
        candidates.push(s);
    }
    for &x in current {
        for &y in &outside {
            let mut s = current.clone();
            s.remove(&x);
            s.insert(y);
            candidates.push(s);
        }
    }

    let mut best: Option<(Cost, BTreeSet<Agent>)> = None;
    for s in candidates {
        let c = view.cost(alpha, &s);
        if c < old_cost && best.as_ref().is_none_or(|(b, _)| c < *b) {
            best = Some((c, s));
        }
    }
    Ok(best.map(|(new_cost, new_strategy)| DeviationWitness {
        agent: v,
        old_strategy: current.clone(),
        new_strategy,
        old_cost,
        new_cost,
    }))
}
