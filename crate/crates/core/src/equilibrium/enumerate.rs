use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bitgame::{self, Masks, Price, MAX_AGENTS};
use crate::error::{size_guard, Result};
use crate::format::ownership_string;
use crate::game::{build_graph, GameConfig, StrategyProfile};
use crate::rational::{Cost, Rational};

use super::unscale;

pub const MAX_ENUMERATION_AGENTS: usize = 6;
const MAX_CANONICAL_AGENTS: usize = 8;
const MAX_DOUBLE_CHECK_AGENTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumRecord {
    /// Ownership string of the labeled profile.
    pub id: String,
    pub profile: StrategyProfile,
    pub is_tree: bool,
    pub social_cost: Rational,
    pub max_agent_cost: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub config: GameConfig,
    /// All labeled equilibria, sorted by id.
    pub equilibria: Vec<EquilibriumRecord>,
    pub tree_count: usize,
    pub nontree_count: usize,
    pub worst_cost: Option<Rational>,
    pub best_cost: Option<Rational>,
}

impl EnumerationResult {
    /// Equilibria grouped by isomorphism class (canonical key -> ids).
    pub fn isomorphism_classes(&self) -> Result<BTreeMap<String, Vec<String>>> {
        let mut classes: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for rec in &self.equilibria {
            classes
                .entry(canonical_key(&rec.profile)?)
                .or_default()
                .push(rec.id.clone());
        }
        Ok(classes)
    }
}

/// Pairs `(u, v)`, `u < v`, in ownership-string order.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// Decodes a base-3 index: digit 0 absent, 1 lower endpoint buys, 2 upper
/// endpoint buys. The first pair is the most significant digit, so index
/// order matches ownership-string order.
fn decode(pairs: &[(usize, usize)], mut index: u64) -> Masks {
    let mut buys = [0u64; MAX_AGENTS];
    for &(u, v) in pairs.iter().rev() {
        match index % 3 {
            1 => buys[u] |= 1 << v,
            2 => buys[v] |= 1 << u,
            _ => {}
        }
        index /= 3;
    }
    buys
}

/// Every pure Nash equilibrium without doubly bought edges. Double
/// purchases are never equilibria for α > 0; see
/// [`double_purchase_counterexample`].
pub fn enumerate_equilibria(config: &GameConfig) -> Result<EnumerationResult> {
    let n = config.n();
    size_guard("enumeration", n, MAX_ENUMERATION_AGENTS)?;
    let price = Price::of(config);
    let denom = *config.alpha().denom();
    let pairs = pairs(n);
    let total = 3u64.pow(pairs.len() as u32);

    let found: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&index| {
            let buys = decode(&pairs, index);
            bitgame::is_nash(n, &buys, price)
        })
        .collect();

    let mut equilibria: Vec<EquilibriumRecord> = found
        .into_iter()
        .map(|index| {
            let buys = decode(&pairs, index);
            let profile = bitgame::profile_of(n, &buys);
            let adj = bitgame::adjacency(n, &buys);
            let max_agent = (0..n)
                .map(|v| bitgame::current_cost(n, &buys, &adj, price, v))
                .max()
                .unwrap_or(0);
            EquilibriumRecord {
                id: ownership_string(&profile),
                is_tree: build_graph(&profile).is_tree(),
                social_cost: finite(unscale(denom, bitgame::social_cost(n, &buys, price))),
                max_agent_cost: finite(unscale(denom, max_agent)),
                profile,
            }
        })
        .collect();
    equilibria.sort_by(|a, b| a.id.cmp(&b.id));

    let tree_count = equilibria.iter().filter(|r| r.is_tree).count();
    Ok(EnumerationResult {
        config: *config,
        tree_count,
        nontree_count: equilibria.len() - tree_count,
        worst_cost: equilibria.iter().map(|r| r.social_cost).max(),
        best_cost: equilibria.iter().map(|r| r.social_cost).min(),
        equilibria,
    })
}

fn finite(c: Cost) -> Rational {
    c.finite().expect("equilibria are connected")
}

/// Scans every profile with at least one doubly bought edge and returns one
/// that is nonetheless an equilibrium, if any. Exhaustive over 4^(n(n-1)/2)
/// profiles, so limited to n ≤ 4.
pub fn double_purchase_counterexample(config: &GameConfig) -> Result<Option<StrategyProfile>> {
    let n = config.n();
    size_guard("double-purchase scan", n, MAX_DOUBLE_CHECK_AGENTS)?;
    let price = Price::of(config);
    let pairs = pairs(n);
    let total = 4u64.pow(pairs.len() as u32);
    let hit = (0..total).into_par_iter().find_first(|&index| {
        let mut buys = [0u64; MAX_AGENTS];
        let mut double = false;
        let mut rest = index;
        for &(u, v) in &pairs {
            let digit = rest % 4;
            rest /= 4;
            if digit & 1 == 1 {
                buys[u] |= 1 << v;
            }
            if digit & 2 == 2 {
                buys[v] |= 1 << u;
            }
            double |= digit == 3;
        }
        double && bitgame::is_nash(n, &buys, price)
    });
    Ok(hit.map(|index| {
        let mut buys = [0u64; MAX_AGENTS];
        let mut rest = index;
        for &(u, v) in &pairs {
            let digit = rest % 4;
            rest /= 4;
            if digit & 1 == 1 {
                buys[u] |= 1 << v;
            }
            if digit & 2 == 2 {
                buys[v] |= 1 << u;
            }
        }
        bitgame::profile_of(n, &buys)
    }))
}

/// Lexicographically smallest ownership string over all relabelings.
/// Factorial in `n`, limited to n ≤ 8.
pub fn canonical_key(profile: &StrategyProfile) -> Result<String> {
    let n = profile.n();
    size_guard("canonical form", n, MAX_CANONICAL_AGENTS)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = ownership_string(profile);
    while next_permutation(&mut perm) {
        let key = ownership_string(&profile.permuted(&perm));
        if key < best {
            best = key;
        }
    }
    Ok(best)
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
