//! Best-response dynamics from a path under both schedules.

use ncg::equilibrium::{best_response_dynamics, is_nash, Schedule};
use ncg::format::{ownership_string, strategy_list};
use ncg::game::{GameConfig, StrategyProfile};
use ncg::rational::int;

pub fn main() -> ncg::Result<()> {
    let config = GameConfig::new(5, int(3))?;
    let start = StrategyProfile::from_purchases(5, [(0, 1), (1, 2), (2, 3), (3, 4)])?;
    for (schedule, seed) in [(Schedule::RoundRobin, 0), (Schedule::UniformRandom, 42)] {
        let trace = best_response_dynamics(&config, &start, schedule, seed, 500)?;
        println!("{schedule:?}: {} moves in {} activations", trace.steps.len(), trace.activations);
        for s in &trace.steps {
            println!("  step {} agent {} -> {} ({} -> {})", s.activation, s.agent, strategy_list(&s.strategy), s.cost_before, s.cost_after);
        }
        let end = trace.outcome.profile();
        println!("  {} at {}", trace.outcome.label(), ownership_string(end));
        if trace.outcome.label() == "converged" {
            assert!(is_nash(&config, end)?.is_nash);
        }
    }
    Ok(())
}
