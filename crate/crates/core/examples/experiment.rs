//! Library entry point of the CLI: run an experiment and read back the
//! CSV and manifest it writes.

use ncg::harness::{manifest_path, run, ExperimentConfig, Mode};
use ncg::rational::int;

pub fn main() -> ncg::Result<()> {
    let out = std::env::temp_dir().join(format!("ncg-example-{}.csv", std::process::id()));
    let config = ExperimentConfig {
        n: Some(4),
        alpha: Some(int(25)),
        output: Some(out.clone()),
        ..ExperimentConfig::new(Mode::Enumerate)
    };
    let manifest = run(&config)?;
    print!("{}", std::fs::read_to_string(&out)?);
    println!("{} rows, sha256 {}", manifest.rows, manifest.result_sha256);
    std::fs::remove_file(manifest_path(&out))?;
    std::fs::remove_file(&out)?;
    Ok(())
}
