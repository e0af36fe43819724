//! Structural audit of every equilibrium at n = 5, α = 6, and of a
//! negative control that fails the girth checks.

use ncg::equilibrium::enumerate_equilibria;
use ncg::game::{GameConfig, StrategyProfile};
use ncg::rational::int;
use ncg::structure::{audit_equilibrium_structure, CheckStatus};

pub fn main() -> ncg::Result<()> {
    let config = GameConfig::new(5, int(6))?;
    let eq = enumerate_equilibria(&config)?;
    let mut vacuous = 0;
    for r in &eq.equilibria {
        let report = audit_equilibrium_structure(&config, &r.profile)?;
        assert!(report.all_passed(), "{} fails", r.id);
        vacuous += report.records.iter().filter(|c| c.status == CheckStatus::Vacuous).count();
    }
    println!("{} equilibria audited, {vacuous} vacuous checks, no failures", eq.equilibria.len());

    let c3 = StrategyProfile::from_purchases(3, [(0, 1), (1, 2), (2, 0)])?;
    let report = audit_equilibrium_structure(&GameConfig::new(3, int(5))?, &c3)?;
    for rec in report.failures() {
        println!("{}: {}", rec.id, rec.witness_summary());
    }
    Ok(())
}
