//! Social optimum (closed form and brute force), exhaustive price of
//! anarchy, and the tree certificate for each tree equilibrium.

use ncg::equilibrium::enumerate_equilibria;
use ncg::game::GameConfig;
use ncg::optimum::{optimum_analytic, optimum_bruteforce, price_of_anarchy, tree_poa_certificate};
use ncg::rational::{frac, int};

pub fn main() -> ncg::Result<()> {
    for (n, alpha) in [(4, frac(1, 4)), (5, int(1)), (5, int(25))] {
        let config = GameConfig::new(n, alpha)?;
        let analytic = optimum_analytic(&config);
        let brute = optimum_bruteforce(&config)?;
        let poa = price_of_anarchy(&config)?;
        println!(
            "n {n} alpha {alpha}: optimum {} (brute force {}), {} equilibria, poa {}",
            analytic.cost, brute.cost, poa.equilibria_considered, poa.poa
        );
        for r in enumerate_equilibria(&config)?.equilibria.iter().filter(|r| r.is_tree) {
            let cert = tree_poa_certificate(&config, &r.profile)?;
            assert!(cert.all_passed());
        }
    }
    Ok(())
}
