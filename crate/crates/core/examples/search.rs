//! Randomized search for equilibria that contain a cycle. At α = 1 the
//! triangle-rich graphs are stable; at large α the search comes back empty.

use ncg::equilibrium::search_nontree_equilibria;
use ncg::format::purchase_list;
use ncg::game::{build_graph, GameConfig};
use ncg::rational::int;
use ncg::structure::girth;

pub fn main() -> ncg::Result<()> {
    for (n, alpha) in [(5, int(1)), (7, int(2)), (7, int(25))] {
        let config = GameConfig::new(n, alpha)?;
        let found = search_nontree_equilibria(&config, 2024, 200)?;
        println!("n {n} alpha {alpha}: {} cyclic equilibria", found.len());
        for p in found.iter().take(3) {
            println!("  girth {:?}: {}", girth(&build_graph(p)), purchase_list(p));
        }
    }
    Ok(())
}
