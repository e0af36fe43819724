//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance`.

mod common;

use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ncg::equilibrium::{enumerate_equilibria, is_nash, EnumerationResult};
use ncg::game::{build_graph, GameConfig, OwnedGraph, StrategyProfile};
use ncg::harness::{render, ExperimentConfig, Mode};
use ncg::optimum::{optimum_analytic, optimum_bruteforce, price_of_anarchy, tree_poa_certificate, PoA};
use ncg::rational::{frac, int, Cost, Rational};
use ncg::structure::{
    audit_equilibrium_structure, biconnected_components, girth, is_min_cycle, min_cycle_through_edge, CheckStatus,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn enumerate(n: usize, alpha: Rational) -> EnumerationResult {
    enumerate_equilibria(&GameConfig::new(n, alpha).unwrap()).unwrap()
}

fn only_trees_at_high_alpha() -> Outcome {
    let mut total = 0;
    for alpha in [int(20), int(25), int(100)] {
        for n in 3..=5 {
            let r = enumerate(n, alpha);
            ensure(!r.equilibria.is_empty(), || format!("no equilibria at n {n} alpha {alpha}"))?;
            ensure(r.nontree_count == 0, || format!("{} non-tree equilibria at n {n} alpha {alpha}", r.nontree_count))?;
            // recount trees independently: connected with n-1 distinct edges
            for rec in &r.equilibria {
                let edges = common::purchases(&rec.profile);
                ensure(edges.len() == n - 1 && common::is_connected(n, &edges), || format!("{} is not a tree", rec.id))?;
            }
            total += r.equilibria.len();
        }
    }
    Ok(format!("{total} equilibria over n 3..5 and alpha 20 25 100, all trees"))
}

fn audit_closure() -> Outcome {
    let mut profiles = 0;
    let mut checks = 0;
    let mut vacuous = 0;
    for alpha in [int(3), int(6), int(20), int(25), int(100)] {
        for n in 1..=5 {
            let config = GameConfig::new(n, alpha).unwrap();
            for rec in enumerate(n, alpha).equilibria {
                let report = audit_equilibrium_structure(&config, &rec.profile).unwrap();
                if let Some(f) = report.failures().next() {
                    return Err(format!("n {n} alpha {alpha} profile {}: {} {}", rec.id, f.id, f.witness_summary()));
                }
                profiles += 1;
                checks += report.records.iter().filter(|r| r.applicable()).count();
                vacuous += report.records.iter().filter(|r| r.status == CheckStatus::Vacuous).count();
            }
        }
    }
    Ok(format!("{profiles} equilibria, {checks} applicable checks, 0 failures ({vacuous} vacuous)"))
}

fn poa_bounds() -> Outcome {
    let mut certs = 0;
    for n in [4usize, 5] {
        let small = frac(1, 2 * (n as i64 - 2));
        let config = GameConfig::new(n, small).unwrap();
        let r = price_of_anarchy(&config).unwrap();
        ensure(r.poa == PoA::Ratio(int(1)), || format!("n {n} alpha {small}: poa {}", r.poa))?;

        for alpha in [int(20), int(25)] {
            let config = GameConfig::new(n, alpha).unwrap();
            let r = price_of_anarchy(&config).unwrap();
            let PoA::Ratio(p) = r.poa else {
                return Err(format!("n {n} alpha {alpha}: no equilibria"));
            };
            ensure(p < int(3), || format!("n {n} alpha {alpha}: poa {p}"))?;
            for rec in enumerate(n, alpha).equilibria.iter().filter(|r| r.is_tree) {
                let cert = tree_poa_certificate(&config, &rec.profile).unwrap();
                // diameter from the independent distance oracle
                let d = common::floyd_warshall(&common::matrix(n, &common::purchases(&rec.profile)));
                let diam = d.iter().flatten().copied().max().unwrap();
                ensure(diam == cert.diameter, || format!("{}: diameter {} vs oracle {diam}", rec.id, cert.diameter))?;
                ensure(int(i64::from(diam)) <= int(2) * alpha + int(3), || format!("{}: diameter {diam}", rec.id))?;
                ensure(cert.all_passed(), || format!("{}: certificate {cert:?}", rec.id))?;
                certs += 1;
            }
        }
    }
    Ok(format!("poa 1 at alpha 1/(2(n-2)), poa < 3 at alpha 20 25, {certs} tree certificates"))
}

fn optimum_agreement() -> Outcome {
    let mut cases = 0;
    for n in 1..=6usize {
        let mut alphas = vec![frac(1, 4), frac(1, 3), int(1), int(2), int(3), int(25)];
        if n >= 3 {
            alphas.push(frac(2, n as i64 - 2));
        }
        for alpha in alphas {
            let config = GameConfig::new(n, alpha).unwrap();
            let a = optimum_analytic(&config);
            let b = optimum_bruteforce(&config).unwrap();
            ensure(a.cost == b.cost, || format!("n {n} alpha {alpha}: analytic {} brute {}", a.cost, b.cost))?;
            for w in [&a.witness, &b.witness] {
                let costs = common::oracle_agent_costs(n, alpha, &common::purchases(w));
                let sum: Rational = costs.iter().map(|c| c.expect("optimum is connected")).sum();
                ensure(sum == a.cost, || format!("n {n} alpha {alpha}: witness costs {sum}"))?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, alpha) cases agree including alpha = 2/(n-2)"))
}

fn verifier_equivalence() -> Outcome {
    let mut compared = 0;
    for alpha in [frac(1, 3), int(2), int(5), int(25)] {
        for n in 1..=4usize {
            let config = GameConfig::new(n, alpha).unwrap();
            let bad: Vec<String> = common::all_profiles(n)
                .into_par_iter()
                .filter_map(|buys| {
                    let p = StrategyProfile::from_purchases(n, buys.clone()).unwrap();
                    let lib = is_nash(&config, &p).unwrap().is_nash;
                    (lib != common::oracle_is_nash(n, alpha, &buys)).then(|| format!("{buys:?}"))
                })
                .collect();
            ensure(bad.is_empty(), || format!("n {n} alpha {alpha}: {} disagreements, e.g. {}", bad.len(), bad[0]))?;
            compared += 3usize.pow((n * (n - 1) / 2) as u32);
        }
    }
    Ok(format!("{compared} profiles, 0 disagreements"))
}

fn witness_soundness() -> Outcome {
    const PROFILES: u64 = 100_000;
    let alphas = [frac(1, 3), frac(1, 2), int(1), frac(3, 2), int(2), int(3), int(5), frac(19, 2), int(25)];
    let results: Vec<Result<bool, String>> = (0..PROFILES)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            rng.set_stream(i);
            let n = rng.random_range(2..=8usize);
            let alpha = alphas[rng.random_range(0..alphas.len())];
            let density = rng.random_range(0.05..0.6);
            // ordered pairs drawn independently, so double purchases occur
            let buys: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v)
                .filter(|_| rng.random_bool(density))
                .collect();
            let config = GameConfig::new(n, alpha).unwrap();
            let p = StrategyProfile::from_purchases(n, buys.clone()).unwrap();
            let report = is_nash(&config, &p).unwrap();
            let Some(w) = report.witness else {
                return Ok(false);
            };
            if !w.verify(&config, &p) {
                return Err(format!("library re-verification failed for {buys:?}"));
            }
            let old = common::oracle_agent_costs(n, alpha, &buys)[w.agent];
            let strategy: Vec<usize> = w.new_strategy.iter().copied().collect();
            let new = common::oracle_cost_with(n, alpha, &buys, w.agent, &strategy);
            let as_cost = |c: Option<Rational>| c.map_or(Cost::Infinite, Cost::Finite);
            if as_cost(old) != w.old_cost || as_cost(new) != w.new_cost || as_cost(new) >= as_cost(old) {
                return Err(format!("oracle disagrees on witness for {buys:?}: {w:?}"));
            }
            Ok(true)
        })
        .collect();
    let mut witnesses = 0;
    for r in results {
        witnesses += usize::from(r?);
    }
    Ok(format!("{PROFILES} random profiles (n 2..8), {witnesses} witnesses, all re-verified"))
}

fn check_structure(n: usize, edges: &[(usize, usize)]) -> Result<(), String> {
    let graph = OwnedGraph::from_edges(n, edges.iter().copied());
    let lib: std::collections::BTreeSet<Vec<usize>> =
        biconnected_components(&graph).iter().map(|h| h.vertices().to_vec()).collect();
    let oracle = common::oracle_blocks(n, edges);
    ensure(lib == oracle, || format!("{edges:?}: components {lib:?} vs oracle {oracle:?}"))?;
    let cuts = ncg::structure::cut_vertices(&graph);
    ensure(cuts == common::oracle_cut_vertices(n, edges), || format!("{edges:?}: cut vertices {cuts:?}"))?;
    let g = girth(&graph);
    ensure(g == common::oracle_girth(n, edges), || format!("{edges:?}: girth {g:?}"))?;
    let d = common::floyd_warshall(&common::matrix(n, edges));
    for e in graph.edges() {
        if let Some(c) = min_cycle_through_edge(&graph, e).unwrap() {
            ensure(is_min_cycle(&graph, &c.vertices), || format!("{edges:?}: {:?} not min", c.vertices))?;
            let k = c.len();
            for i in 0..k {
                for j in i + 1..k {
                    let along = (j - i).min(k - (j - i)) as u32;
                    ensure(d[c.vertices[i]][c.vertices[j]] == along, || format!("{edges:?}: {:?} has a shortcut", c.vertices))?;
                }
            }
        }
    }
    Ok(())
}

fn structural_oracles() -> Outcome {
    let mut exhaustive = 0;
    for n in 1..=5 {
        let graphs: Vec<Vec<(usize, usize)>> =
            common::all_graphs(n).into_iter().filter(|e| common::is_connected(n, e)).collect();
        graphs.par_iter().try_for_each(|e| check_structure(n, e))?;
        exhaustive += graphs.len();
    }
    const SAMPLE: u64 = 10_000;
    (0..SAMPLE).into_par_iter().try_for_each(|i| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xb10c);
        rng.set_stream(i);
        let n = rng.random_range(6..=7usize);
        let p = rng.random_range(0.25..0.75);
        // resample until connected so every sample counts
        loop {
            let e = common::random_edges(&mut rng, n, p);
            if common::is_connected(n, &e) {
                return check_structure(n, &e);
            }
        }
    })?;
    Ok(format!("{exhaustive} connected graphs n <= 5 exhaustively and {SAMPLE} random connected graphs n 6..7"))
}

fn negative_controls() -> Outcome {
    for k in [3usize, 4] {
        let config = GameConfig::new(k, int(5)).unwrap();
        let p = StrategyProfile::from_purchases(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap();
        let report = is_nash(&config, &p).unwrap();
        let w = report.witness.ok_or(format!("directed C{k} accepted"))?;
        ensure(w.new_strategy.is_subset(&w.old_strategy) && w.new_strategy.len() < w.old_strategy.len(), || {
            format!("C{k} witness is not a removal: {w:?}")
        })?;
        let audit = audit_equilibrium_structure(&config, &p).unwrap();
        let rec = audit.get("girth_alpha_plus_2").unwrap();
        ensure(!rec.passed(), || format!("C{k} girth check passed"))?;
        let cycle = match &rec.witnesses()[0].object {
            ncg::structure::WitnessObject::Cycle(c) => c.clone(),
            other => return Err(format!("unexpected witness {other:?}")),
        };
        ensure(cycle.len() == k && ncg::structure::is_cycle(&build_graph(&p), &cycle), || {
            format!("C{k} witness {cycle:?} is not a cycle of the graph")
        })?;
    }
    Ok("directed C3 and C4 at alpha 5 rejected by removal witnesses and flagged by the girth audit".into())
}

fn determinism() -> Outcome {
    let mut cfgs = Vec::new();
    let base = |mode| ExperimentConfig {
        n: Some(5),
        alpha: Some(int(3)),
        seed: 17,
        ..ExperimentConfig::new(mode)
    };
    cfgs.push(base(Mode::Enumerate));
    cfgs.push(ExperimentConfig {
        n: Some(6),
        alpha: Some(int(1)),
        ..base(Mode::Search { iterations: 300 })
    });
    cfgs.push(base(Mode::Dynamics {
        schedule: ncg::equilibrium::Schedule::UniformRandom,
        budget: 200,
    }));
    for cfg in &cfgs {
        let one = render(&ExperimentConfig { workers: 1, ..cfg.clone() }).map_err(|e| e.to_string())?.text;
        let four = render(&ExperimentConfig { workers: 4, ..cfg.clone() }).map_err(|e| e.to_string())?.text;
        ensure(one == four, || format!("{} differs between 1 and 4 workers", cfg.mode.name()))?;
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 3] = [
        &["enumerate", "--n", "5", "--alpha", "25"],
        &["search", "--n", "6", "--alpha", "1", "--iters", "300", "--seed", "9"],
        &["dynamics", "--n", "6", "--alpha", "2", "--schedule", "rand", "--budget", "300", "--seed", "9"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for workers in ["1", "4"] {
            let out = dir.path().join(format!("{}-{workers}.csv", args[0]));
            let status = Command::new(env!("CARGO_BIN_EXE_ncg"))
                .args(args)
                .args(["--workers", workers, "--out"])
                .arg(&out)
                .status()
                .map_err(|e| e.to_string())?;
            ensure(status.success(), || format!("ncg {} exited with {status}", args[0]))?;
            outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        ensure(outputs[0] == outputs[1], || format!("ncg {} output depends on workers", args[0]))?;
    }
    Ok("enumerate search dynamics byte-identical with 1 and 4 workers (library and binary)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("only tree equilibria at high alpha", only_trees_at_high_alpha),
        ("structural audit closure", audit_closure),
        ("price of anarchy bounds", poa_bounds),
        ("optimum oracle agreement", optimum_agreement),
        ("verifier equivalence", verifier_equivalence),
        ("witness soundness", witness_soundness),
        ("structural algorithm oracles", structural_oracles),
        ("negative controls", negative_controls),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
