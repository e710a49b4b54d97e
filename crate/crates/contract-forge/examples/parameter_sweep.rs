//! Sweep the effort-cost coefficient and print figure-ready CSV.
//!
//! ```text
//! cargo run --example parameter_sweep > sweep.csv
//! ```
//!
//! Emits one block of rows per regime (`as`, `joint`, `mh`), values
//! ascending, using the conventional c ∈ [1, 10] range. Pipe the output into
//! any plotting tool to reproduce payoff-versus-cost curves.

use contract_forge::cli::{sweep_csv, sweep_rows, SweepSpec, SweepVariable};
use contract_forge::{MarketParams, Result, TypeProfile};

fn main() -> Result<()> {
    let profile = TypeProfile::new(vec![1.0, 2.0], vec![0.5, 0.5])?;
    let params = MarketParams::new(1.0, 5.0)?;
    let spec = SweepSpec::default_range(SweepVariable::CostC);

    let rows = sweep_rows(&profile, &params, &spec)?;
    print!("{}", sweep_csv(&rows));

    // A quick sanity read-out on stderr so the CSV stays clean on stdout.
    let joint: Vec<&_> = rows
        .iter()
        .filter(|row| row.scenario == contract_forge::ScenarioKind::Joint)
        .collect();
    eprintln!(
        "joint PU payoff falls from {:.4} (c = {}) to {:.4} (c = {}) as effort gets dearer",
        joint.first().unwrap().pu_payoff,
        joint.first().unwrap().value,
        joint.last().unwrap().pu_payoff,
        joint.last().unwrap().value,
    );
    Ok(())
}
