//! The swap-toward-b deviation on a directed 5-cycle: the antipodal agent
//! swaps its edge for one to b and ends within D(b) + 1.

use ncg::game::{GameConfig, StrategyProfile};
use ncg::rational::int;
use ncg::structure::crucial_deviation;

pub fn main() -> ncg::Result<()> {
    let config = GameConfig::new(5, int(3))?;
    let c5 = StrategyProfile::from_purchases(5, (0..5).map(|i| (i, (i + 1) % 5)))?;
    for a in 1..5 {
        match crucial_deviation(&config, &c5, a, 0, None) {
            Ok(d) => println!(
                "a {a}: swap {} -> 0, drop {:?}; D(a) {} -> {}, D(b) {}, within bound {}",
                d.swapped,
                d.removed,
                d.old_usage,
                d.new_usage,
                d.target_usage,
                d.within_bound(config.alpha())
            ),
            Err(e) => println!("a {a}: {e}"),
        }
    }
    Ok(())
}
