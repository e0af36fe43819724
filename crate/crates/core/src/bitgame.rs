//! Bitmask game state for the exhaustive routines.
//!
//! Agent `v`'s purchases are a `u64` mask, and costs are scaled by the
//! denominator of α so comparisons stay in integer arithmetic:
//! `q·(α·k + D) = p·k + q·D` for `α = p/q`.

use std::collections::BTreeSet;

use crate::game::{GameConfig, StrategyProfile};

pub(crate) const MAX_AGENTS: usize = 64;

pub(crate) type Masks = [u64; MAX_AGENTS];

/// Scaled cost; `INF` for disconnection.
pub(crate) type Scaled = i128;
pub(crate) const INF: Scaled = i128::MAX;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Price {
    p: i128,
    q: i128,
}

impl Price {
    pub(crate) fn of(config: &GameConfig) -> Self {
        let a = config.alpha();
        Self {
            p: i128::from(*a.numer()),
            q: i128::from(*a.denom()),
        }
    }

    pub(crate) fn cost(self, purchases: u32, ecc: Option<u32>) -> Scaled {
        match ecc {
            Some(d) => self.p * i128::from(purchases) + self.q * i128::from(d),
            None => INF,
        }
    }
}

#[inline]
pub(crate) fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) struct Bits(pub(crate) u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

pub(crate) fn masks_of(profile: &StrategyProfile) -> Masks {
    assert!(profile.n() <= MAX_AGENTS);
    let mut buys = [0u64; MAX_AGENTS];
    for (u, v) in profile.purchases() {
        buys[u] |= 1 << v;
    }
    buys
}

pub(crate) fn profile_of(n: usize, buys: &Masks) -> StrategyProfile {
    let sets = (0..n).map(|u| Bits(buys[u]).collect()).collect();
    StrategyProfile::from_sets(sets).expect("mask profile is valid")
}

pub(crate) fn set_of(mask: u64) -> BTreeSet<usize> {
    Bits(mask).collect()
}

pub(crate) fn adjacency(n: usize, buys: &Masks) -> Masks {
    let mut adj = [0u64; MAX_AGENTS];
    for u in 0..n {
        adj[u] |= buys[u];
        for v in Bits(buys[u]) {
            adj[v] |= 1 << u;
        }
    }
    adj
}

/// Adjacency with `v`'s own purchases withdrawn.
pub(crate) fn adjacency_without(n: usize, buys: &Masks, v: usize) -> Masks {
    let mut adj = [0u64; MAX_AGENTS];
    for u in (0..n).filter(|&u| u != v) {
        adj[u] |= buys[u];
        for w in Bits(buys[u]) {
            adj[w] |= 1 << u;
        }
    }
    adj
}

/// Eccentricity of `v` when its neighborhood is `first` and everyone else
/// uses `adj`. Edges back into `v` are irrelevant once `v` is visited.
#[inline]
pub(crate) fn ecc_with(n: usize, adj: &Masks, v: usize, first: u64) -> Option<u32> {
    let all = full(n);
    let mut visited = 1u64 << v;
    if visited == all {
        return Some(0);
    }
    let mut frontier = first & !visited;
    let mut depth = 0;
    while frontier != 0 {
        depth += 1;
        visited |= frontier;
        if visited == all {
            return Some(depth);
        }
        let mut next = 0;
        for x in Bits(frontier) {
            next |= adj[x];
        }
        frontier = next & !visited;
    }
    None
}

pub(crate) fn ecc(n: usize, adj: &Masks, v: usize) -> Option<u32> {
    ecc_with(n, adj, v, adj[v])
}

pub(crate) fn is_connected(n: usize, adj: &Masks) -> bool {
    ecc(n, adj, 0).is_some()
}

pub(crate) fn current_cost(n: usize, buys: &Masks, adj: &Masks, price: Price, v: usize) -> Scaled {
    price.cost(buys[v].count_ones(), ecc(n, adj, v))
}

/// Exact best response of `v`: minimum scaled cost, ties broken by fewest
/// purchases and then lexicographic order of the sorted purchase list.
pub(crate) fn best_response(n: usize, buys: &Masks, price: Price, v: usize) -> (u64, Scaled) {
    let base = adjacency_without(n, buys, v);
    let mut candidates = [0usize; MAX_AGENTS];
    let mut m = 0;
    for u in (0..n).filter(|&u| u != v) {
        candidates[m] = u;
        m += 1;
    }
    let incoming = base[v];

    let mut best_mask = 0u64;
    let mut best = price.cost(0, ecc_with(n, &base, v, incoming));
    let min_usage = u32::from(n > 1);
    let mut idx = [0usize; MAX_AGENTS];
    for k in 1..=m {
        if price.cost(k as u32, Some(min_usage)) >= best {
            break;
        }
        for (i, slot) in idx.iter_mut().take(k).enumerate() {
            *slot = i;
        }
        loop {
            let mut mask = 0u64;
            for &i in &idx[..k] {
                mask |= 1 << candidates[i];
            }
            let c = price.cost(k as u32, ecc_with(n, &base, v, incoming | mask));
            if c < best {
                best = c;
                best_mask = mask;
            }
            // next combination in lexicographic order
            let mut i = k;
            while i > 0 && idx[i - 1] == m - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    (best_mask, best)
}

/// Exact equilibrium test on masks.
pub(crate) fn is_nash(n: usize, buys: &Masks, price: Price) -> bool {
    let adj = adjacency(n, buys);
    if n > 1 && !is_connected(n, &adj) {
        return false;
    }
    (0..n).all(|v| {
        let old = current_cost(n, buys, &adj, price, v);
        best_response(n, buys, price, v).1 >= old
    })
}

/// Scaled social cost `Σ (p·|s_v| + q·D(v))`.
pub(crate) fn social_cost(n: usize, buys: &Masks, price: Price) -> Scaled {
    let adj = adjacency(n, buys);
    let mut total: Scaled = 0;
    for v in 0..n {
        let c = current_cost(n, buys, &adj, price, v);
        if c == INF {
            return INF;
        }
        total += c;
    }
    total
}
