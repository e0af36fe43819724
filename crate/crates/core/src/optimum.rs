//! Social optimum and price of anarchy.

use std::fmt;

use rayon::prelude::*;

use crate::bitgame::{self, Price, MAX_AGENTS};
use crate::equilibrium::{enumerate_equilibria, is_nash, unscale, MAX_ENUMERATION_AGENTS};
use crate::error::{size_guard, Error, Result};
use crate::game::{all_pairs_distances, build_graph, cost_with_strategy, metrics, social_cost, GameConfig, StrategyProfile};
use crate::rational::{frac, int, Cost, Dist, Rational};

pub const MAX_BRUTEFORCE_AGENTS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptimumMethod {
    Analytic,
    BruteForce,
}

impl fmt::Display for OptimumMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptimumMethod::Analytic => "analytic",
            OptimumMethod::BruteForce => "brute-force",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimumResult {
    pub method: OptimumMethod,
    pub cost: Rational,
    /// Single-owner profile whose social cost is `cost`.
    pub witness: StrategyProfile,
}

/// Star with leaves buying the edge to center 0.
pub fn star_profile(n: usize) -> StrategyProfile {
    StrategyProfile::from_purchases(n, (1..n).map(|v| (v, 0))).expect("valid star")
}

/// Complete graph with each edge bought by its smaller endpoint.
pub fn clique_profile(n: usize) -> StrategyProfile {
    StrategyProfile::from_purchases(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid clique")
}

/// Closed form: the cheaper of star `(n-1)α + 2n - 1` and clique
/// `α n(n-1)/2 + n`, with the star taken from `α = 2/(n-2)` upward.
pub fn optimum_analytic(config: &GameConfig) -> OptimumResult {
    let n = config.n();
    let alpha = config.alpha();
    let (cost, witness) = match n {
        1 => (int(0), StrategyProfile::empty(1)),
        2 => (alpha + int(2), StrategyProfile::from_purchases(2, [(1, 0)]).expect("valid")),
        _ => {
            let ni = n as i64;
            if alpha >= frac(2, ni - 2) {
                (alpha * int(ni - 1) + int(2 * ni - 1), star_profile(n))
            } else {
                (alpha * int(ni * (ni - 1) / 2) + int(ni), clique_profile(n))
            }
        }
    };
    OptimumResult {
        method: OptimumMethod::Analytic,
        cost,
        witness,
    }
}

/// Exhaustive minimum over all `2^(n(n-1)/2)` graphs. Ties go to the
/// edge set whose bitmask over pairs in lexicographic order is smallest.
pub fn optimum_bruteforce(config: &GameConfig) -> Result<OptimumResult> {
    let n = config.n();
    size_guard("optimum", n, MAX_BRUTEFORCE_AGENTS)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let price = Price::of(config);
    let to_buys = |mask: u64| {
        let mut buys = [0u64; MAX_AGENTS];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                buys[u] |= 1 << v;
            }
        }
        buys
    };
    let (best, mask) = (0..1u64 << pairs.len())
        .into_par_iter()
        .map(|mask| (bitgame::social_cost(n, &to_buys(mask), price), mask))
        .min()
        .expect("at least the empty graph");
    let cost = unscale(*config.alpha().denom(), best)
        .finite()
        .expect("the complete graph is connected");
    Ok(OptimumResult {
        method: OptimumMethod::BruteForce,
        cost,
        witness: bitgame::profile_of(n, &to_buys(mask)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoA {
    Ratio(Rational),
    /// No equilibrium was available.
    Undefined,
}

impl fmt::Display for PoA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoA::Ratio(r) => write!(f, "{r}"),
            PoA::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoAReport {
    pub alpha: Rational,
    pub n: usize,
    pub worst_equilibrium_cost: Option<Rational>,
    pub optimum_cost: Rational,
    pub poa: PoA,
    pub equilibria_considered: usize,
    pub exhaustive: bool,
}

fn report(config: &GameConfig, worst: Option<Rational>, count: usize, exhaustive: bool) -> PoAReport {
    let optimum = optimum_analytic(config).cost;
    PoAReport {
        alpha: config.alpha(),
        n: config.n(),
        worst_equilibrium_cost: worst,
        optimum_cost: optimum,
        // n = 1 prices 0 / 0; every equilibrium is then optimal
        poa: worst.map_or(PoA::Undefined, |w| {
            PoA::Ratio(if w == optimum { int(1) } else { w / optimum })
        }),
        equilibria_considered: count,
        exhaustive,
    }
}

/// Worst equilibrium over the analytic optimum, with every equilibrium
/// enumerated and the optimum confirmed by brute force.
pub fn price_of_anarchy(config: &GameConfig) -> Result<PoAReport> {
    size_guard("price of anarchy", config.n(), MAX_ENUMERATION_AGENTS)?;
    let eq = enumerate_equilibria(config)?;
    let analytic = optimum_analytic(config).cost;
    let brute = optimum_bruteforce(config)?.cost;
    assert_eq!(analytic, brute, "closed-form optimum disagrees with brute force at {config:?}");
    Ok(report(config, eq.worst_cost, eq.equilibria.len(), true))
}

/// Price of anarchy over a supplied set of equilibria. Each profile is
/// verified first.
pub fn price_of_anarchy_over(config: &GameConfig, equilibria: &[StrategyProfile]) -> Result<PoAReport> {
    let mut worst: Option<Rational> = None;
    for p in equilibria {
        if !is_nash(config, p)?.is_nash {
            return Err(Error::NotEquilibrium);
        }
        let c = social_cost(config, p)?.finite().expect("equilibria are connected");
        worst = Some(worst.map_or(c, |w| w.max(c)));
    }
    Ok(report(config, worst, equilibria.len(), false))
}

/// The numbers behind the bound for a tree equilibrium.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePoACertificate {
    pub diameter: u32,
    /// `2α + 3`.
    pub diameter_bound: Rational,
    pub diameter_ok: bool,
    pub cost: Rational,
    pub optimum: Rational,
    pub ratio: Rational,
    pub ratio_ok: bool,
    /// Smallest-index center and the deepest vertex below it.
    pub center: usize,
    pub deepest_leaf: usize,
    pub deviation_old_cost: Cost,
    /// Cost to the leaf of additionally buying the edge to the center.
    pub deviation_new_cost: Cost,
    pub deviation_non_improving: bool,
}

impl TreePoACertificate {
    pub fn all_passed(&self) -> bool {
        self.diameter_ok && self.ratio_ok && self.deviation_non_improving
    }
}

pub fn tree_poa_certificate(config: &GameConfig, profile: &StrategyProfile) -> Result<TreePoACertificate> {
    config.check_profile(profile)?;
    let graph = build_graph(profile);
    if !graph.is_tree() {
        return Err(Error::NotTree);
    }
    if !is_nash(config, profile)?.is_nash {
        return Err(Error::NotEquilibrium);
    }
    let alpha = config.alpha();
    let table = all_pairs_distances(&graph);
    let m = metrics(&table);
    let Dist::Finite(diameter) = m.diameter else {
        unreachable!("trees are connected")
    };
    let center = m.centers[0];
    let deepest_leaf = (0..config.n())
        .max_by_key(|&u| (table.get(center, u), std::cmp::Reverse(u)))
        .expect("nonempty");

    let cost = social_cost(config, profile)?.finite().expect("trees are connected");
    let optimum = optimum_analytic(config).cost;
    let ratio = cost / optimum;
    let diameter_bound = int(2) * alpha + int(3);

    let old = crate::game::agent_cost(config, profile, deepest_leaf)?.total;
    let new = if deepest_leaf == center {
        old
    } else {
        let mut s = profile.strategy(deepest_leaf).clone();
        s.insert(center);
        cost_with_strategy(config, profile, deepest_leaf, &s)?
    };

    Ok(TreePoACertificate {
        diameter,
        diameter_ok: int(i64::from(diameter)) <= diameter_bound,
        diameter_bound,
        cost,
        optimum,
        ratio,
        ratio_ok: ratio < int(3),
        center,
        deepest_leaf,
        deviation_old_cost: old,
        deviation_new_cost: new,
        deviation_non_improving: new >= old,
    })
}
