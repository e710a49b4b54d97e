//! Cross-check the closed-form solver against the brute-force grid oracle.
//!
//! ```text
//! cargo run --release --example oracle_audit [r_steps t_steps refine_rounds]
//! ```
//!
//! Runs a single-type and a two-type market through `grid_search` (default
//! 200×200 with 3 refinement rounds), reports the payoff gap against the
//! closed form, and audits which constraints bind in the closed-form menu.

use contract_forge::{
    grid_search, solve_joint, verify_binding_pattern, GridSpec, MarketParams, Result,
    TypeProfile, EQUALITY_TOL,
};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let mut next = |default: usize| {
        args.next()
            .map(|s| s.parse().expect("grid sizes must be integers"))
            .unwrap_or(default)
    };
    let spec = GridSpec::new(next(200), next(200), next(3));

    let markets = [
        ("single type", TypeProfile::new(vec![1.0], vec![1.0])?, MarketParams::new(1.0, 0.5)?),
        (
            "two types",
            TypeProfile::new(vec![1.0, 2.0], vec![0.5, 0.5])?,
            MarketParams::new(1.0, 5.0)?,
        ),
    ];

    for (label, profile, params) in markets {
        let started = std::time::Instant::now();
        let verdict = grid_search(&profile, &params, &spec)?;
        let elapsed = started.elapsed();

        println!("{label}: {} r-steps × {} t-steps, {} refinement rounds", spec.r_steps, spec.t_steps, spec.refine_rounds);
        println!("  closed-form payoff: {:.12}", verdict.closed_form_payoff);
        println!("  oracle payoff:      {:.12}", verdict.best_payoff.unwrap());
        println!("  gap (oracle − closed form): {:+.3e}", verdict.gap.unwrap());
        if let Some(menu) = &verdict.best_menu {
            for (i, c) in menu.iter().enumerate() {
                println!("  oracle contract {}: t = {:.6}, r = {:.6}", i + 1, c.down_payment_t, c.installment_r);
            }
        }

        let closed = solve_joint(&profile, &params)?;
        let audit = verify_binding_pattern(&closed.menu, &profile, &params, EQUALITY_TOL)?;
        println!(
            "  binding pattern (weakest IR + adjacent downward IC bind): {}",
            if audit.matches { "confirmed" } else { "VIOLATED" }
        );
        println!("  search time: {:.2?}", elapsed);
        println!();
    }
    Ok(())
}
