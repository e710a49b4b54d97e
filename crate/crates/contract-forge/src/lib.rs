//! Financing-contract design and market simulation for spectrum trading.
//!
//! A primary user (PU) leases spectrum to secondary users (SUs) who cannot
//! pay upfront. Each SU privately knows its capability θ and privately
//! chooses an effort e; a deployment succeeds with probability θe and then
//! earns revenue R. The PU screens capabilities with a menu of financing
//! contracts (t, r): a down payment t now, plus an installment r paid only
//! out of success revenue. This crate solves the optimal menu in closed form
//! under three information regimes, cross-checks it against a brute-force
//! grid oracle, discretizes continuous capability distributions, sweeps
//! market parameters into figure-ready CSV, and Monte Carlo simulates the
//! resulting market.
//!
//! # Entry points
//!
//! - [`solve`] / [`solve_joint`] / [`solve_adverse_only`] / [`solve_moral_only`]
//!   — closed-form menus per regime, with payoffs and binding diagnostics.
//! - [`check_constraints`] / [`verify_binding_pattern`] — feasibility audits.
//! - [`grid_search`] / [`grid_search_adverse_only`] — independent numeric
//!   oracle for small markets.
//! - [`discretize`] / [`solve_continuous`] — equal-mass quantile
//!   discretization of continuous capability distributions.
//! - [`run_simulation`] / [`select_contract`] / [`data_rate`] — Monte Carlo
//!   market play-out and the wireless-link revenue model.
//! - [`cli`] — the `contract-forge` binary's implementation: `solve`,
//!   `sweep`, `verify`, and `simulate` subcommands over a JSON config.
//!
//! # Example
//!
//! ```
//! use contract_forge::{solve, MarketParams, ScenarioKind, TypeProfile};
//!
//! let profile = TypeProfile::new(vec![1.0, 2.0], vec![0.5, 0.5])?;
//! let params = MarketParams::new(1.0, 5.0)?;
//! let report = solve(ScenarioKind::Joint, &profile, &params)?;
//!
//! // The weakest type's installment is highest; the strongest pays none.
//! assert!(report.menu[0].installment_r > report.menu[1].installment_r);
//! assert_eq!(report.menu[1].installment_r, 0.0);
//! # Ok::<(), contract_forge::Error>(())
//! ```
//!
//! The `examples/` directory exercises every major capability end to end;
//! start with `solve_regimes`.

#![warn(missing_docs)]

pub mod cli;
pub mod contracts;
pub mod continuous;
pub mod error;
pub mod fixtures;
pub mod model;
pub mod oracle;
pub mod sim;

pub use contracts::{
    check_constraints, default_fixed_effort, solve, solve_adverse_only, solve_joint,
    solve_moral_only, ConstraintReport, MultiplierLadder,
};
pub use continuous::{discretize, solve_continuous, ContinuousReport, Discretization, TypeDistribution};
pub use error::{Error, Result};
pub use model::{
    best_effort, best_response_efforts, effort_cost, pu_expected_payoff, social_welfare,
    su_payoff, su_payoff_at_best_response, success_probability, BindingDiagnostics, Contract,
    ContractMenu, MarketParams, ScenarioKind, SolveReport, TypeProfile, EQUALITY_TOL,
};
pub use oracle::{
    grid_search, grid_search_adverse_only, verify_binding_pattern, BindingAudit, GridSpec,
    OracleVerdict,
};
pub use sim::{
    data_rate, run_simulation, select_contract, LinkParams, SimConfig, SimStats,
};
