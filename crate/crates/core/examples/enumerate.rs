//! Exhaustive enumeration of equilibria for small games, grouped into
//! isomorphism classes.

use ncg::equilibrium::enumerate_equilibria;
use ncg::game::GameConfig;
use ncg::rational::{frac, int};

pub fn main() -> ncg::Result<()> {
    for alpha in [frac(1, 3), int(2), int(25)] {
        let config = GameConfig::new(4, alpha)?;
        let result = enumerate_equilibria(&config)?;
        let classes = result.isomorphism_classes()?;
        println!(
            "n 4 alpha {alpha}: {} equilibria ({} trees) in {} classes",
            result.equilibria.len(),
            result.tree_count,
            classes.len(),
        );
        if let (Some(best), Some(worst)) = (result.best_cost, result.worst_cost) {
            println!("  social cost from {best} to {worst}");
        }
        for (key, ids) in &classes {
            println!("  {key}: {} labelings", ids.len());
        }
    }
    Ok(())
}
