//! Experiment runner behind the `ncg` binary: dispatches one mode, renders
//! its CSV and writes the CSV plus a JSON manifest.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::equilibrium::{
    best_response_dynamics, best_response_exact, enumerate_equilibria, is_nash, search_nontree_equilibria, Schedule,
};
use crate::error::{Error, Result};
use crate::format::{ownership_string, parse_profile, purchase_list, strategy_list};
use crate::game::{agent_cost, build_graph, social_cost, GameConfig, StrategyProfile};
use crate::optimum::{optimum_analytic, optimum_bruteforce, price_of_anarchy, MAX_BRUTEFORCE_AGENTS};
use crate::rational::{format_rational, Cost, Rational};
use crate::structure::{audit_equilibrium_structure, girth};

pub const CSV_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Verify,
    BestResponse { agent: usize },
    Dynamics { schedule: Schedule, budget: usize },
    Enumerate,
    Search { iterations: usize },
    Audit,
    Poa,
    Optimum,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Verify => "verify",
            Mode::BestResponse { .. } => "best-response",
            Mode::Dynamics { .. } => "dynamics",
            Mode::Enumerate => "enumerate",
            Mode::Search { .. } => "search",
            Mode::Audit => "audit",
            Mode::Poa => "poa",
            Mode::Optimum => "optimum",
        }
    }

    pub fn columns(&self) -> &'static [&'static str] {
        match self {
            Mode::Verify => &["profile_id", "n", "alpha", "is_nash", "social_cost", "agent", "old_cost", "new_cost", "new_strategy"],
            Mode::BestResponse { .. } => {
                &["profile_id", "n", "alpha", "agent", "current_cost", "best_cost", "best_strategy", "improves"]
            }
            Mode::Dynamics { .. } => &["event", "step", "agent", "strategy", "cost_before", "cost_after", "profile_id"],
            Mode::Enumerate => &["alpha", "n", "profile_id", "edges", "is_tree", "social_cost", "max_agent_cost"],
            Mode::Search { .. } => &["alpha", "n", "profile_id", "edges", "social_cost", "girth"],
            Mode::Audit => &["profile_id", "check_id", "applicable", "passed", "witness_summary"],
            Mode::Poa => &["alpha", "n", "worst_eq_cost", "opt_cost", "poa", "exhaustive"],
            Mode::Optimum => &["alpha", "n", "method", "cost", "witness_edges"],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n: Option<usize>,
    pub alpha: Option<Rational>,
    pub seed: u64,
    /// Profile file in `ncg v1` format.
    pub input: Option<PathBuf>,
    /// CSV destination; the manifest goes next to it.
    pub output: Option<PathBuf>,
    /// Thread count; 0 lets the pool pick.
    pub workers: usize,
}

impl ExperimentConfig {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            n: None,
            alpha: None,
            seed: 0,
            input: None,
            output: None,
            workers: 0,
        }
    }

    fn echo(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "mode": self.mode.name(),
            "n": self.n,
            "alpha": self.alpha.map(|a| format_rational(&a)),
            "seed": self.seed,
            "input": self.input.as_ref().map(|p| p.display().to_string()),
            "output": self.output.as_ref().map(|p| p.display().to_string()),
            "workers": self.workers,
        });
        let extra = match &self.mode {
            Mode::BestResponse { agent } => serde_json::json!({ "agent": agent }),
            Mode::Dynamics { schedule, budget } => serde_json::json!({
                "schedule": match schedule { Schedule::RoundRobin => "rr", Schedule::UniformRandom => "rand" },
                "budget": budget,
            }),
            Mode::Search { iterations } => serde_json::json!({ "iterations": iterations }),
            _ => serde_json::json!({}),
        };
        if let (Some(obj), serde_json::Value::Object(extra)) = (v.as_object_mut(), extra) {
            obj.extend(extra);
        }
        v
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config: serde_json::Value,
    pub wall_time_seconds: f64,
    pub csv_schema_version: u32,
    pub columns: Vec<String>,
    pub rows: usize,
    /// Hex SHA-256 of the CSV bytes.
    pub result_sha256: String,
}

/// Rendered CSV: the full file contents and the data row count.
pub struct CsvOutput {
    pub text: String,
    pub rows: usize,
}

/// Runs the experiment, writes the CSV (stdout when no output path is set)
/// and, with an output path, `<output>.manifest.json`.
pub fn run(config: &ExperimentConfig) -> Result<RunManifest> {
    let start = Instant::now();
    let csv = render(config)?;
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.echo(),
        wall_time_seconds: start.elapsed().as_secs_f64(),
        csv_schema_version: CSV_SCHEMA_VERSION,
        columns: config.mode.columns().iter().map(ToString::to_string).collect(),
        rows: csv.rows,
        result_sha256: hex_digest(csv.text.as_bytes()),
    };
    match &config.output {
        Some(path) => {
            fs::write(path, &csv.text)?;
            let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
            fs::write(manifest_path(path), json + "\n")?;
        }
        None => print!("{}", csv.text),
    }
    Ok(manifest)
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Computes the CSV for `config` on a pool of `config.workers` threads.
pub fn render(config: &ExperimentConfig) -> Result<CsvOutput> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| render_rows(config))
}

struct Table {
    writer: csv::Writer<Vec<u8>>,
    rows: usize,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(columns).expect("in-memory write");
        Self { writer, rows: 0 }
    }

    fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).expect("in-memory write");
        self.rows += 1;
    }

    fn finish(self) -> CsvOutput {
        let bytes = self.writer.into_inner().expect("in-memory flush");
        CsvOutput {
            text: String::from_utf8(bytes).expect("utf-8 fields"),
            rows: self.rows,
        }
    }
}

fn rat(r: Rational) -> String {
    format_rational(&r)
}

fn cost(c: Cost) -> String {
    c.to_string()
}

/// `(config, profile)` from `--in`, checked against any `--n`/`--alpha`.
fn load_input(config: &ExperimentConfig) -> Result<Option<(GameConfig, StrategyProfile)>> {
    let Some(path) = &config.input else {
        return Ok(None);
    };
    let text = fs::read_to_string(path)?;
    let (game, profile) = parse_profile(&text)?;
    if config.n.is_some_and(|n| n != game.n()) || config.alpha.is_some_and(|a| a != game.alpha()) {
        return Err(Error::InvalidArgument(format!(
            "--n/--alpha disagree with {} (n {}, alpha {})",
            path.display(),
            game.n(),
            format_rational(&game.alpha())
        )));
    }
    Ok(Some((game, profile)))
}

fn game_from_flags(config: &ExperimentConfig) -> Result<GameConfig> {
    match (config.n, config.alpha) {
        (Some(n), Some(alpha)) => GameConfig::new(n, alpha),
        _ => Err(Error::InvalidArgument(format!("{} needs --n and --alpha", config.mode.name()))),
    }
}

fn required_input(config: &ExperimentConfig) -> Result<(GameConfig, StrategyProfile)> {
    load_input(config)?.ok_or_else(|| Error::InvalidArgument(format!("{} needs --in FILE", config.mode.name())))
}

fn render_rows(config: &ExperimentConfig) -> Result<CsvOutput> {
    let mut t = Table::new(config.mode.columns());
    match &config.mode {
        Mode::Verify => {
            let (game, profile) = required_input(config)?;
            let report = is_nash(&game, &profile)?;
            let id = ownership_string(&profile);
            let total = cost(social_cost(&game, &profile)?);
            let (agent, old, new, strategy) = match &report.witness {
                Some(w) => (w.agent.to_string(), cost(w.old_cost), cost(w.new_cost), strategy_list(&w.new_strategy)),
                None => Default::default(),
            };
            t.row([
                id,
                game.n().to_string(),
                rat(game.alpha()),
                report.is_nash.to_string(),
                total,
                agent,
                old,
                new,
                strategy,
            ]);
        }
        Mode::BestResponse { agent } => {
            let (game, profile) = required_input(config)?;
            let current = agent_cost(&game, &profile, *agent)?.total;
            let best = best_response_exact(&game, &profile, *agent)?;
            t.row([
                ownership_string(&profile),
                game.n().to_string(),
                rat(game.alpha()),
                agent.to_string(),
                cost(current),
                cost(best.cost),
                strategy_list(&best.strategy),
                (best.cost < current).to_string(),
            ]);
        }
        Mode::Dynamics { schedule, budget } => {
            let (game, initial) = match load_input(config)? {
                Some(loaded) => loaded,
                None => {
                    let game = game_from_flags(config)?;
                    (game, StrategyProfile::empty(game.n()))
                }
            };
            let trace = best_response_dynamics(&game, &initial, *schedule, config.seed, *budget)?;
            let mut current = initial;
            t.row(["start".into(), "0".into(), String::new(), String::new(), String::new(), String::new(), ownership_string(&current)]);
            for step in &trace.steps {
                current = current.with_strategy(step.agent, step.strategy.clone())?;
                t.row([
                    "move".into(),
                    step.activation.to_string(),
                    step.agent.to_string(),
                    strategy_list(&step.strategy),
                    cost(step.cost_before),
                    cost(step.cost_after),
                    ownership_string(&current),
                ]);
            }
            t.row([
                trace.outcome.label().to_string(),
                trace.activations.to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                ownership_string(trace.outcome.profile()),
            ]);
        }
        Mode::Enumerate => {
            let game = game_from_flags(config)?;
            let result = enumerate_equilibria(&game)?;
            for r in &result.equilibria {
                t.row([
                    rat(game.alpha()),
                    game.n().to_string(),
                    r.id.clone(),
                    purchase_list(&r.profile),
                    r.is_tree.to_string(),
                    rat(r.social_cost),
                    rat(r.max_agent_cost),
                ]);
            }
        }
        Mode::Search { iterations } => {
            let game = game_from_flags(config)?;
            for p in search_nontree_equilibria(&game, config.seed, *iterations)? {
                let g = girth(&build_graph(&p)).map_or_else(String::new, |g| g.to_string());
                t.row([
                    rat(game.alpha()),
                    game.n().to_string(),
                    ownership_string(&p),
                    purchase_list(&p),
                    cost(social_cost(&game, &p)?),
                    g,
                ]);
            }
        }
        Mode::Audit => {
            let (game, profiles) = match load_input(config)? {
                Some((game, p)) => (game, vec![p]),
                None => {
                    let game = game_from_flags(config)?;
                    let eq = enumerate_equilibria(&game)?;
                    (game, eq.equilibria.into_iter().map(|r| r.profile).collect())
                }
            };
            for p in &profiles {
                let id = ownership_string(p);
                for rec in audit_equilibrium_structure(&game, p)?.records {
                    t.row([
                        id.clone(),
                        rec.id.to_string(),
                        rec.applicable().to_string(),
                        rec.passed().to_string(),
                        rec.witness_summary(),
                    ]);
                }
            }
        }
        Mode::Poa => {
            let game = game_from_flags(config)?;
            let r = price_of_anarchy(&game)?;
            t.row([
                rat(r.alpha),
                r.n.to_string(),
                r.worst_equilibrium_cost.map_or_else(|| "none".to_string(), rat),
                rat(r.optimum_cost),
                r.poa.to_string(),
                r.exhaustive.to_string(),
            ]);
        }
        Mode::Optimum => {
            let game = game_from_flags(config)?;
            let mut results = vec![optimum_analytic(&game)];
            if game.n() <= MAX_BRUTEFORCE_AGENTS {
                results.push(optimum_bruteforce(&game)?);
            }
            for r in results {
                t.row([
                    rat(game.alpha()),
                    game.n().to_string(),
                    r.method.to_string(),
                    rat(r.cost),
                    purchase_list(&r.witness),
                ]);
            }
        }
    }
    Ok(t.finish())
}

/// Process exit status for a failed run: 2 for malformed input, 3 for an
/// instance over a size limit, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => 2,
        Error::SizeGuard { .. } => 3,
        _ => 1,
    }
}
