use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{size_guard, Error, Result};
use crate::format::ownership_string;
use crate::game::{build_graph, GameConfig, StrategyProfile};

use super::{improving_move_heuristic, is_nash, MAX_EXACT_AGENTS};

/// Seeded stochastic search for equilibria whose graph contains a cycle.
///
/// Each iteration starts from a random profile (its own ChaCha8 stream,
/// `seed` with stream id = iteration), descends with single add/remove/swap
/// moves, and falls back to the exact best response once no single move
/// helps. Only profiles passing [`is_nash`] are returned, deduplicated and
/// sorted by ownership string, so the output does not depend on the thread
/// count. An empty result proves nothing.
pub fn search_nontree_equilibria(
    config: &GameConfig,
    seed: u64,
    iterations: usize,
) -> Result<Vec<StrategyProfile>> {
    if iterations == 0 {
        return Err(Error::InvalidArgument("iterations must be at least 1".into()));
    }
    size_guard("equilibrium verification", config.n(), MAX_EXACT_AGENTS)?;
    let hits: Vec<Option<StrategyProfile>> = (0..iterations)
        .into_par_iter()
        .map(|i| run_one(config, seed, i as u64))
        .collect::<Result<_>>()?;
    let unique: BTreeMap<String, StrategyProfile> = hits
        .into_iter()
        .flatten()
        .map(|p| (ownership_string(&p), p))
        .collect();
    Ok(unique.into_values().collect())
}

fn random_profile(n: usize, rng: &mut ChaCha8Rng) -> StrategyProfile {
    let density = rng.random_range(0.15..0.9);
    let mut purchases = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                purchases.push(if rng.random_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    StrategyProfile::from_purchases(n, purchases).expect("valid pairs")
}

fn run_one(config: &GameConfig, seed: u64, stream: u64) -> Result<Option<StrategyProfile>> {
    let n = config.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut profile = random_profile(n, &mut rng);
    let max_rounds = 20 * n.max(1);

    for _ in 0..max_rounds {
        let mut moved = false;
        for v in 0..n {
            if let Some(w) = improving_move_heuristic(config, &profile, v)? {
                profile = w.apply(&profile)?;
                moved = true;
            }
        }
        if moved {
            continue;
        }
        let report = is_nash(config, &profile)?;
        match report.witness {
            None => {
                let g = build_graph(&profile);
                let cyclic = g.edge_count() >= g.n();
                return Ok(cyclic.then_some(profile));
            }
            Some(w) => profile = w.apply(&profile)?,
        }
    }
    Ok(None)
}
