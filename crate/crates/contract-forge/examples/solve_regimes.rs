//! Solve the same market under all three information regimes and compare.
//!
//! ```text
//! cargo run --example solve_regimes
//! ```

use contract_forge::{
    default_fixed_effort, solve, MarketParams, Result, ScenarioKind, TypeProfile,
};

fn main() -> Result<()> {
    // Two SU types: the strong one is twice as capable as the weak one and
    // both are equally likely. Success pays R = 1; effort costs (c/2)e² with
    // c = 5.
    let profile = TypeProfile::new(vec![1.0, 2.0], vec![0.5, 0.5])?;
    let params = MarketParams::new(1.0, 5.0)?;

    println!("market: θ = {:?}, β = {:?}, R = {}, c = {}", profile.thetas, profile.betas, params.revenue_r, params.cost_c);
    println!();

    for regime in ScenarioKind::all() {
        // The reimbursement regime needs a contractible effort level; use the
        // weak type's first-best effort, the same default the CLI applies.
        let params = match regime {
            ScenarioKind::MoralHazardOnly => MarketParams::with_fixed_effort(
                params.revenue_r,
                params.cost_c,
                default_fixed_effort(&profile, &params)?,
            )?,
            _ => params.clone(),
        };
        let report = solve(regime, &profile, &params)?;

        println!("regime `{}`", regime);
        println!("  PU expected payoff: {:.6}", report.pu_payoff);
        println!("  social welfare:     {:.6}", report.welfare);
        for (i, contract) in report.menu.iter().enumerate() {
            println!(
                "  type {}: t = {:+.6}, r = {:.6}, effort = {:.4}, SU payoff = {:.6}",
                i + 1,
                contract.down_payment_t,
                contract.installment_r,
                report.efforts[i],
                report.su_payoffs[i],
            );
        }
        println!();
    }

    println!("reading the menus:");
    println!("- observable effort (`as`): cash-only sale, every SU kept at zero payoff;");
    println!("- both frictions (`joint`): weak types pay by installment, the strongest");
    println!("  type pays cash only, and stronger types keep information rents;");
    println!("- hidden effort with known capability (`mh`): the PU funds the effort");
    println!("  upfront (negative down payment) and takes the whole revenue back.");
    Ok(())
}
