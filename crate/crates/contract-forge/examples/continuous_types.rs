//! Discretize a continuous capability distribution and watch the solution
//! converge as the type grid refines.
//!
//! ```text
//! cargo run --example continuous_types
//! ```

use contract_forge::{
    solve_continuous, MarketParams, Result, ScenarioKind, TypeDistribution,
};

fn main() -> Result<()> {
    let params = MarketParams::new(0.5, 5.0)?;

    // Capabilities spread uniformly over [1, 10]: equal-mass bins, one type
    // per bin at the bin's conditional mean.
    let uniform = TypeDistribution::Uniform { lo: 1.0, hi: 10.0 };
    println!("uniform capabilities on [1, 10], R = 0.5, c = 5, joint regime:");
    let mut previous: Option<f64> = None;
    for n in [5, 10, 20, 40, 80] {
        let solved = solve_continuous(&uniform, n, &params, ScenarioKind::Joint)?;
        let payoff = solved.report.pu_payoff;
        match previous {
            Some(prev) => println!(
                "  n = {n:>2}: PU payoff {payoff:.8} (moved {:+.2e} from the previous grid)",
                payoff - prev
            ),
            None => println!("  n = {n:>2}: PU payoff {payoff:.8}"),
        }
        previous = Some(payoff);
    }

    // A two-segment piecewise-linear CDF: half the mass on [1, 2], the rest
    // stretched to 4 — capability is usually modest, occasionally strong.
    let skewed = TypeDistribution::PiecewiseLinearCdf {
        knots: vec![(1.0, 0.0), (2.0, 0.5), (4.0, 1.0)],
    };
    let solved = solve_continuous(&skewed, 4, &params, ScenarioKind::Joint)?;
    println!("\nskewed capabilities (piecewise-linear CDF), 4 types:");
    println!("  quantile edges: {:?}", solved.quantile_edges);
    println!("  type ladder:    {:?}", solved.profile.thetas);
    for (i, contract) in solved.report.menu.iter().enumerate() {
        println!(
            "  type {}: t = {:+.6}, r = {:.6}",
            i + 1,
            contract.down_payment_t,
            contract.installment_r
        );
    }
    println!("  PU payoff: {:.6}", solved.report.pu_payoff);
    Ok(())
}
