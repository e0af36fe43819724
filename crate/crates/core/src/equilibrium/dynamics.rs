use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitgame::{self, Price};
use crate::error::{size_guard, Error, Result};
use crate::game::{Agent, GameConfig, StrategyProfile};
use crate::rational::Cost;

use super::{unscale, MAX_EXACT_AGENTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Schedule {
    RoundRobin,
    UniformRandom,
}

/// One strictly improving move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicsStep {
    /// Activation index at which the move happened.
    pub activation: usize,
    pub agent: Agent,
    pub strategy: BTreeSet<Agent>,
    pub cost_before: Cost,
    pub cost_after: Cost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DynamicsOutcome {
    Converged(StrategyProfile),
    /// Round-robin returned to a visited (profile, next agent) state.
    Cycle(StrategyProfile),
    BudgetExhausted(StrategyProfile),
}

impl DynamicsOutcome {
    pub fn profile(&self) -> &StrategyProfile {
        match self {
            DynamicsOutcome::Converged(p)
            | DynamicsOutcome::Cycle(p)
            | DynamicsOutcome::BudgetExhausted(p) => p,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            DynamicsOutcome::Converged(_) => "converged",
            DynamicsOutcome::Cycle(_) => "cycle",
            DynamicsOutcome::BudgetExhausted(_) => "budget",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicsTrace {
    pub steps: Vec<DynamicsStep>,
    pub activations: usize,
    pub outcome: DynamicsOutcome,
}

/// Exact best-response dynamics. `budget` bounds agent activations. The
/// random schedule draws agents from a ChaCha8 stream seeded with `seed`;
/// round-robin ignores the seed.
pub fn best_response_dynamics(
    config: &GameConfig,
    initial: &StrategyProfile,
    schedule: Schedule,
    seed: u64,
    budget: usize,
) -> Result<DynamicsTrace> {
    config.check_profile(initial)?;
    size_guard("best response", config.n(), MAX_EXACT_AGENTS)?;
    if budget == 0 {
        return Err(Error::InvalidArgument("step budget must be at least 1".into()));
    }
    let n = config.n();
    let price = Price::of(config);
    let denom = *config.alpha().denom();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut masks = bitgame::masks_of(initial);
    let mut steps = Vec::new();
    let mut seen: HashSet<(Vec<u64>, Agent)> = HashSet::new();
    let mut settled: BTreeSet<Agent> = BTreeSet::new();

    for activation in 0..budget {
        let agent = match schedule {
            Schedule::RoundRobin => {
                if !seen.insert((masks[..n].to_vec(), activation % n)) {
                    return Ok(DynamicsTrace {
                        steps,
                        activations: activation,
                        outcome: DynamicsOutcome::Cycle(bitgame::profile_of(n, &masks)),
                    });
                }
                activation % n
            }
            Schedule::UniformRandom => rng.random_range(0..n),
        };
        let adj = bitgame::adjacency(n, &masks);
        let before = bitgame::current_cost(n, &masks, &adj, price, agent);
        let (strategy, after) = bitgame::best_response(n, &masks, price, agent);
        if after < before {
            masks[agent] = strategy;
            settled.clear();
            steps.push(DynamicsStep {
                activation,
                agent,
                strategy: bitgame::set_of(strategy),
                cost_before: unscale(denom, before),
                cost_after: unscale(denom, after),
            });
        } else {
            settled.insert(agent);
            if settled.len() == n {
                return Ok(DynamicsTrace {
                    steps,
                    activations: activation + 1,
                    outcome: DynamicsOutcome::Converged(bitgame::profile_of(n, &masks)),
                });
            }
        }
    }
    Ok(DynamicsTrace {
        steps,
        activations: budget,
        outcome: DynamicsOutcome::BudgetExhausted(bitgame::profile_of(n, &masks)),
    })
}
