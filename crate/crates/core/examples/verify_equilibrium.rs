//! Cost model and exact Nash verification: a star where every leaf buys
//! its edge is stable at α = 5, a directed 4-cycle is not.

use ncg::equilibrium::is_nash;
use ncg::format::strategy_list;
use ncg::game::{agent_cost, social_cost, GameConfig, StrategyProfile};
use ncg::rational::int;

pub fn main() -> ncg::Result<()> {
    let config = GameConfig::new(4, int(5))?;

    let star = StrategyProfile::from_purchases(4, [(1, 0), (2, 0), (3, 0)])?;
    for v in 0..4 {
        let c = agent_cost(&config, &star, v)?;
        println!("star agent {v}: creation {} usage {} total {}", c.creation, c.usage, c.total);
    }
    let report = is_nash(&config, &star)?;
    println!("star social cost {} nash {}", social_cost(&config, &star)?, report.is_nash);
    assert!(report.is_nash);

    let cycle = StrategyProfile::from_purchases(4, [(0, 1), (1, 2), (2, 3), (3, 0)])?;
    let report = is_nash(&config, &cycle)?;
    let w = report.witness.expect("the cycle is not stable");
    println!(
        "cycle: agent {} moves {} -> {} and pays {} instead of {}",
        w.agent,
        strategy_list(&w.old_strategy),
        strategy_list(&w.new_strategy),
        w.new_cost,
        w.old_cost
    );
    assert!(w.verify(&config, &cycle));
    Ok(())
}
