//! Monte Carlo a solved menu, deriving the success revenue from a wireless
//! link budget.
//!
//! ```text
//! cargo run --release --example market_simulation
//! ```

use contract_forge::{
    data_rate, run_simulation, solve_joint, LinkParams, MarketParams, Result, SimConfig,
    TypeProfile,
};

fn main() -> Result<()> {
    // Revenue per successful deployment: value of the achievable data rate on
    // the PU's channel. W·log₂(1 + p·|h|²/(d·N₀)) with a unit-bandwidth
    // normalized link.
    let link = LinkParams {
        bandwidth_w: 1.0,
        power_p: 6.0,
        channel_gain_h: 1.0,
        gain_exponent: 2.0,
        distance_d: 2.0,
        noise_n0: 1.0,
    };
    let rate = data_rate(&link)?;
    // Price the rate at 1/4 per rate unit; with c = 3 even the strongest
    // type's success probability θ²R/c stays below 1, so nothing clamps.
    let revenue = 0.25 * rate;
    println!("link rate {rate} → success revenue R = {revenue}");

    let profile = TypeProfile::new(vec![1.0, 1.6, 2.2], vec![0.3, 0.4, 0.3])?;
    let params = MarketParams::new(revenue, 3.0)?;
    let report = solve_joint(&profile, &params)?;
    println!(
        "solved joint menu: {:?}",
        report
            .menu
            .iter()
            .map(|c| (c.down_payment_t, c.installment_r))
            .collect::<Vec<_>>()
    );
    println!("analytic PU payoff: {:.6}", report.pu_payoff);

    let config = SimConfig { trials: 100_000, seed: 2024, ..SimConfig::default() };
    let stats = run_simulation(&report.menu, &profile, &params, &config)?;

    println!("\n{} trials (seed {}):", stats.trials, config.seed);
    println!(
        "  mean PU payoff: {:.6} ± {:.6}",
        stats.mean_pu_payoff,
        stats.stderr_pu_payoff.unwrap()
    );
    for i in 0..profile.n() {
        println!(
            "  type {}: drawn {} times, success rate {:.4}, mean SU payoff {:.6} (analytic {:.6})",
            i + 1,
            stats.trials_by_type[i],
            stats.success_rate_by_type[i].unwrap(),
            stats.mean_su_payoff_by_type[i].unwrap(),
            report.su_payoffs[i],
        );
    }
    if stats.clamp_events > 0 {
        println!("  warning: {} trials clamped θe above 1", stats.clamp_events);
    }

    let z = (stats.mean_pu_payoff - report.pu_payoff) / stats.stderr_pu_payoff.unwrap();
    println!("\nsimulated minus analytic PU payoff = {z:+.2} standard errors");
    Ok(())
}
