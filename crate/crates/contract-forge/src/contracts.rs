//! Closed-form optimal menus for the three information regimes.
//!
//! The PU designs one contract per capability type so that every SU reports
//! truthfully (picks the contract meant for it) and agrees to participate.
//! Three regimes differ in what the PU can see:
//!
//! - **Joint** ([`solve_joint`]) — capability and effort both hidden. The menu
//!   trades installment distortions against information rent: each type's
//!   participation or adjacent incentive constraint binds, the top type gets an
//!   installment of zero (full effort incentives), lower types get positive
//!   installments to make their contracts unattractive to stronger types.
//! - **Adverse selection only** ([`solve_adverse_only`]) — effort observable.
//!   The PU extracts the whole first-best surplus type by type with a pure
//!   down payment: tᵢ = θᵢ²R²/(2c), rᵢ = 0.
//! - **Moral hazard only** ([`solve_moral_only`]) — capability known, effort
//!   enforced at a fixed level ê. The PU reimburses the effort cost upfront
//!   (t = −(c/2)ê², a payment *to* the SU) and keeps the entire revenue
//!   (r = R). Every type's payoff is exactly zero.
//!
//! The joint menu is the relaxed-program optimum: participation binds for the
//! weakest type, the local downward incentive constraint binds for every other
//! type, and the down payments follow by telescoping. On regular profiles
//! (installments strictly decreasing) the relaxed solution satisfies every
//! global incentive constraint; [`check_constraints`] audits any menu for the
//! full constraint set and reports violations, which *can* occur on irregular
//! profiles — see the tests for a frozen example.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    best_response_efforts, check_lengths, effort_cost, gross_best_response_surplus,
    pu_payoff_with_efforts, su_payoff, su_payoff_at_best_response, welfare_with_efforts,
    BindingDiagnostics, Contract, ContractMenu, MarketParams, ScenarioKind, SolveReport,
    TypeProfile,
};

/// Cumulative tail masses μᵢ = Σ_{k ≥ i} βₖ used by the joint-regime menu.
///
/// μᵢ₊₁ weighs the information rent that raising type i's surplus concedes to
/// every stronger type; the telescoping identity μᵢ = βᵢ + μᵢ₊₁ holds by
/// construction and μ₁ = 1 up to the profile's mass tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierLadder {
    values: Vec<f64>,
}

impl MultiplierLadder {
    /// Computes the tail masses of a profile.
    pub fn new(profile: &TypeProfile) -> Self {
        let n = profile.n();
        let mut values = vec![0.0; n];
        let mut tail = 0.0;
        for i in (0..n).rev() {
            tail += profile.betas[i];
            values[i] = tail;
        }
        Self { values }
    }

    /// Tail mass per type, `values()[i]` = Σ_{k ≥ i} βₖ.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Tail mass strictly above type `i` (zero for the top type).
    pub fn above(&self, i: usize) -> f64 {
        self.values.get(i + 1).copied().unwrap_or(0.0)
    }
}

/// Full constraint audit of a menu under hidden capability and hidden effort.
///
/// Every type is assumed to best-respond in effort to whichever contract it
/// takes, so payoffs are the reduced form (θ(R−r))²/(2c) − t. Slacks are
/// "own payoff minus alternative": nonnegative means satisfied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    /// Tolerance below zero at which a slack counts as a violation.
    pub tol: f64,
    /// Participation slack per type: the type's own-contract payoff.
    pub ir_slack: Vec<f64>,
    /// Adjacent downward incentive slack; entry i−1 compares type i's own
    /// contract against contract i−1.
    pub ldic_slack: Vec<f64>,
    /// Types whose participation constraint fails, with the shortfall
    /// magnitude, ascending by type index.
    pub ir_violations: Vec<(usize, f64)>,
    /// Incentive violations (i, j, magnitude): type i strictly prefers
    /// contract j over its own by `magnitude`, ascending by (i, j).
    pub global_ic_violations: Vec<(usize, usize, f64)>,
}

impl ConstraintReport {
    /// True when no participation or incentive constraint is violated.
    pub fn is_feasible(&self) -> bool {
        self.ir_violations.is_empty() && self.global_ic_violations.is_empty()
    }
}

/// The fixed effort level used by the moral-hazard-only regime when a
/// configuration does not pin one down: the weakest type's best response to a
/// zero installment, ê = θ₁R/c.
pub fn default_fixed_effort(profile: &TypeProfile, params: &MarketParams) -> Result<f64> {
    profile.validate()?;
    params.validate_for_solve()?;
    Ok(profile.thetas[0] * params.revenue_r / params.cost_c)
}

/// Solves the joint regime (hidden capability, hidden effort).
///
/// Installments: rₙ = 0 and, for i < n,
/// rᵢ = μᵢ₊₁(θᵢ₊₁² − θᵢ²)R / (μᵢ₊₁(θᵢ₊₁² − θᵢ²) + βᵢθᵢ²).
/// Down payments telescope so that the weakest type's participation constraint
/// and every adjacent downward incentive constraint bind exactly.
pub fn solve_joint(profile: &TypeProfile, params: &MarketParams) -> Result<SolveReport> {
    profile.validate()?;
    params.validate_for_solve()?;
    let n = profile.n();
    let ladder = MultiplierLadder::new(profile);

    let mut installments = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        let theta_sq = profile.thetas[i] * profile.thetas[i];
        let delta = profile.thetas[i + 1] * profile.thetas[i + 1] - theta_sq;
        let rent_weight = ladder.above(i) * delta;
        installments[i] =
            rent_weight * params.revenue_r / (rent_weight + profile.betas[i] * theta_sq);
    }
    // installments[n-1] stays zero: the strongest type's effort is left
    // undistorted because no stronger type's rent depends on it.

    let mut down_payments = vec![0.0; n];
    down_payments[0] = gross_best_response_surplus(profile.thetas[0], installments[0], params);
    for i in 1..n {
        down_payments[i] = gross_best_response_surplus(profile.thetas[i], installments[i], params)
            - gross_best_response_surplus(profile.thetas[i], installments[i - 1], params)
            + down_payments[i - 1];
    }

    let menu = ContractMenu(
        (0..n)
            .map(|i| Contract::new(down_payments[i], installments[i]))
            .collect(),
    );
    report_with_best_response(ScenarioKind::Joint, menu, profile, params)
}

/// Solves the adverse-selection-only regime (effort observable).
///
/// With effort contractible the PU leaves no rent: each type pays its whole
/// first-best surplus upfront, tᵢ = θᵢ²R²/(2c), and keeps the entire revenue
/// margin (rᵢ = 0) so that the efficient effort θᵢR/c is chosen.
pub fn solve_adverse_only(profile: &TypeProfile, params: &MarketParams) -> Result<SolveReport> {
    profile.validate()?;
    params.validate_for_solve()?;
    let menu = ContractMenu(
        profile
            .thetas
            .iter()
            .map(|&theta| Contract::new(gross_best_response_surplus(theta, 0.0, params), 0.0))
            .collect(),
    );
    report_with_best_response(ScenarioKind::AdverseSelectionOnly, menu, profile, params)
}

/// Solves the moral-hazard-only regime (capability known, effort enforced at
/// the fixed level ê from `params.fixed_effort`).
///
/// The PU reimburses the effort cost upfront (t = −(c/2)ê² < 0 whenever
/// ê > 0) and collects the whole revenue on success (r = R); every type's
/// payoff is exactly zero. Errors with [`Error::MissingFixedEffort`] when the
/// parameters carry no effort level — see [`default_fixed_effort`].
pub fn solve_moral_only(profile: &TypeProfile, params: &MarketParams) -> Result<SolveReport> {
    profile.validate()?;
    params.validate_for_solve()?;
    let e_hat = params.fixed_effort.ok_or(Error::MissingFixedEffort)?;
    let n = profile.n();

    let contract = Contract::new(-effort_cost(params.cost_c, e_hat), params.revenue_r);
    let menu = ContractMenu(vec![contract; n]);
    let efforts = vec![e_hat; n];

    let su_payoffs: Vec<f64> = (0..n)
        .map(|i| su_payoff(profile.thetas[i], e_hat, &menu[i], params))
        .collect();
    let pu_payoff = pu_payoff_with_efforts(&menu, profile, &efforts)?;
    let welfare = welfare_with_efforts(profile, params, &efforts)?;
    // Every contract is identical and effort is enforced, so deviating to a
    // neighbouring contract changes nothing: incentive slack is exactly zero.
    let ldic_slack = vec![0.0; n.saturating_sub(1)];
    Ok(SolveReport {
        regime: ScenarioKind::MoralHazardOnly,
        menu,
        efforts,
        pu_payoff,
        su_payoffs: su_payoffs.clone(),
        welfare,
        binding: BindingDiagnostics { ir_slack: su_payoffs, ldic_slack },
    })
}

/// Solves whichever regime is requested.
pub fn solve(
    regime: ScenarioKind,
    profile: &TypeProfile,
    params: &MarketParams,
) -> Result<SolveReport> {
    match regime {
        ScenarioKind::Joint => solve_joint(profile, params),
        ScenarioKind::AdverseSelectionOnly => solve_adverse_only(profile, params),
        ScenarioKind::MoralHazardOnly => solve_moral_only(profile, params),
    }
}

/// Audits a menu against the full participation and incentive constraint set
/// under hidden capability and hidden effort.
///
/// A slack more than `tol` below zero is recorded as a violation. The joint
/// menu's binding constraints sit exactly at zero, so pass a small positive
/// tolerance (e.g. [`crate::model::EQUALITY_TOL`]) to keep floating-point
/// noise out of the violation lists.
pub fn check_constraints(
    menu: &ContractMenu,
    profile: &TypeProfile,
    params: &MarketParams,
    tol: f64,
) -> Result<ConstraintReport> {
    profile.validate()?;
    params.validate_for_solve()?;
    menu.validate(params)?;
    check_lengths(menu, profile)?;
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "constraint tolerance {tol} must be nonnegative and finite"
        )));
    }
    let n = profile.n();

    // Reduced payoff of type i under contract j, each type best-responding in
    // effort to the contract it actually holds.
    let payoff = |i: usize, j: usize| -> f64 {
        su_payoff_at_best_response(profile.thetas[i], &menu[j], params)
    };

    let ir_slack: Vec<f64> = (0..n).map(|i| payoff(i, i)).collect();
    let ldic_slack: Vec<f64> = (1..n).map(|i| ir_slack[i] - payoff(i, i - 1)).collect();

    let mut ir_violations = Vec::new();
    for (i, &slack) in ir_slack.iter().enumerate() {
        if slack < -tol {
            ir_violations.push((i, -slack));
        }
    }
    let mut global_ic_violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let slack = ir_slack[i] - payoff(i, j);
            if slack < -tol {
                global_ic_violations.push((i, j, -slack));
            }
        }
    }

    Ok(ConstraintReport { tol, ir_slack, ldic_slack, ir_violations, global_ic_violations })
}

/// Assembles a report for menus whose holders best-respond in effort.
fn report_with_best_response(
    regime: ScenarioKind,
    menu: ContractMenu,
    profile: &TypeProfile,
    params: &MarketParams,
) -> Result<SolveReport> {
    let n = profile.n();
    let efforts = best_response_efforts(&menu, profile, params)?;
    let su_payoffs: Vec<f64> = (0..n)
        .map(|i| su_payoff_at_best_response(profile.thetas[i], &menu[i], params))
        .collect();
    let pu_payoff = pu_payoff_with_efforts(&menu, profile, &efforts)?;
    let welfare = welfare_with_efforts(profile, params, &efforts)?;
    let ldic_slack: Vec<f64> = (1..n)
        .map(|i| {
            su_payoffs[i] - su_payoff_at_best_response(profile.thetas[i], &menu[i - 1], params)
        })
        .collect();
    Ok(SolveReport {
        regime,
        menu,
        efforts,
        pu_payoff,
        su_payoffs: su_payoffs.clone(),
        welfare,
        binding: BindingDiagnostics { ir_slack: su_payoffs, ldic_slack },
    })
}
