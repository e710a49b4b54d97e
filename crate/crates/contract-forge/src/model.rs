//! Core market model: participants, financing contracts, and payoff formulas.
//!
//! The market has one primary user (PU) — a spectrum licensee acting as the
//! principal — and a population of secondary users (SUs) characterized by a
//! capability type θ (higher θ ⇒ higher chance of monetizing the band at equal
//! effort). The PU offers a menu of financing contracts `(t, r)`:
//!
//! - `t` — down payment, cash at signing (may be negative: the PU pays the SU),
//! - `r` — installment, paid only if the SU's transmission succeeds, out of the
//!   realized revenue `R`.
//!
//! An SU of type θ exerting hidden effort `e` succeeds with probability `θ·e`
//! and bears the quadratic effort cost `ψ(e) = (c/2)·e²`. The formulas here are
//! the building blocks shared by the closed-form solvers, the brute-force
//! verification oracle, and the Monte Carlo simulator.
//!
//! Solver-side formulas never clamp `θ·e` into [0, 1]: the closed forms assume
//! the interior expression, and several standard parameterizations (θ up to 10
//! with R = 0.5, c = 5) exceed 1. Only the simulator clamps, and it counts how
//! often it had to.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for equality-style invariants on payoffs and slacks.
///
/// All formulas are low-degree polynomials at O(1) scale, so a single absolute
/// tolerance is appropriate.
pub const EQUALITY_TOL: f64 = 1e-9;

/// Absolute tolerance for probability-mass bookkeeping (β sums, μ telescoping).
pub const MASS_TOL: f64 = 1e-12;

// =============================================================================
// Domain types
// =============================================================================

/// Discrete distribution of SU capability types.
///
/// `thetas` are strictly ascending and positive; `betas[i]` is the probability
/// that a random SU has capability `thetas[i]`, and the masses sum to 1 within
/// [`MASS_TOL`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeProfile {
    /// Capability values θ₁ < θ₂ < … < θₙ, all positive.
    pub thetas: Vec<f64>,
    /// Probability mass per type, βᵢ ∈ [0, 1], Σβᵢ = 1.
    pub betas: Vec<f64>,
}

impl TypeProfile {
    /// Builds a profile and checks its invariants.
    pub fn new(thetas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        let profile = Self { thetas, betas };
        profile.validate()?;
        Ok(profile)
    }

    /// The equal-weight integer ladder θᵢ = i, βᵢ = 1/n — the standard
    /// benchmark population used throughout the examples and tests.
    pub fn integer_ladder(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidProfile("need at least one type".into()));
        }
        let thetas = (1..=n).map(|i| i as f64).collect();
        let betas = vec![1.0 / n as f64; n];
        Self::new(thetas, betas)
    }

    /// Number of types.
    pub fn n(&self) -> usize {
        self.thetas.len()
    }

    /// Checks all profile invariants, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidProfile(msg));
        if self.thetas.is_empty() {
            return fail("need at least one type".into());
        }
        if self.thetas.len() != self.betas.len() {
            return fail(format!(
                "thetas has {} entries but betas has {}",
                self.thetas.len(),
                self.betas.len()
            ));
        }
        for (i, &theta) in self.thetas.iter().enumerate() {
            if !theta.is_finite() {
                return fail(format!("thetas[{i}] is not finite"));
            }
            if theta <= 0.0 {
                return fail(format!("thetas[{i}] = {theta} must be positive"));
            }
            if i > 0 && theta <= self.thetas[i - 1] {
                return fail(format!(
                    "thetas must be strictly ascending, but thetas[{}] = {} >= thetas[{}] = {}",
                    i - 1,
                    self.thetas[i - 1],
                    i,
                    theta
                ));
            }
        }
        for (i, &beta) in self.betas.iter().enumerate() {
            if !beta.is_finite() || !(0.0..=1.0).contains(&beta) {
                return fail(format!("betas[{i}] = {beta} must lie in [0, 1]"));
            }
        }
        let total: f64 = self.betas.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return fail(format!("betas must sum to 1 within {MASS_TOL:e}, got {total}"));
        }
        Ok(())
    }
}

/// Market-wide economic parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarketParams {
    /// Revenue R realized by a successful transmission.
    #[serde(alias = "revenue_R")]
    pub revenue_r: f64,
    /// Effort cost coefficient c in ψ(e) = (c/2)e².
    pub cost_c: f64,
    /// Fixed effort level ê used by the moral-hazard-only regime, where effort
    /// is contractible. `None` means the caller must supply one (the config
    /// layer defaults it to θ₁R/c, see `contracts::default_fixed_effort`).
    #[serde(default)]
    pub fixed_effort: Option<f64>,
}

impl MarketParams {
    /// Parameters without a fixed effort level.
    pub fn new(revenue_r: f64, cost_c: f64) -> Result<Self> {
        let params = Self { revenue_r, cost_c, fixed_effort: None };
        params.validate()?;
        Ok(params)
    }

    /// Parameters with an explicit fixed effort ê for the moral-hazard-only
    /// regime.
    pub fn with_fixed_effort(revenue_r: f64, cost_c: f64, fixed_effort: f64) -> Result<Self> {
        let params = Self { revenue_r, cost_c, fixed_effort: Some(fixed_effort) };
        params.validate()?;
        Ok(params)
    }

    /// Checks the boundary invariants: R > 0, c > 0, ê ≥ 0 when present, all
    /// finite. Use at every configuration boundary.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if !self.revenue_r.is_finite() || self.revenue_r <= 0.0 {
            return fail(format!("revenue_r = {} must be positive and finite", self.revenue_r));
        }
        self.validate_for_solve()
    }

    /// The weaker check used by solver entry points: finite, c > 0, R ≥ 0.
    ///
    /// Solvers deliberately accept the degenerate R = 0 market (no surplus
    /// exists; every formula collapses to the all-zero menu) so the
    /// verification oracle can exercise that corner.
    pub(crate) fn validate_for_solve(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if !self.revenue_r.is_finite() || self.revenue_r < 0.0 {
            return fail(format!("revenue_r = {} must be nonnegative and finite", self.revenue_r));
        }
        if !self.cost_c.is_finite() || self.cost_c <= 0.0 {
            return fail(format!("cost_c = {} must be positive and finite", self.cost_c));
        }
        if let Some(e_hat) = self.fixed_effort {
            if !e_hat.is_finite() || e_hat < 0.0 {
                return fail(format!("fixed_effort = {e_hat} must be nonnegative and finite"));
            }
        }
        Ok(())
    }
}

/// A single financing contract: down payment plus success-contingent
/// installment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contract {
    /// Down payment t, cash at signing. Negative values mean the PU pays the
    /// SU upfront (the moral-hazard-only solution does this).
    pub down_payment_t: f64,
    /// Installment r ∈ [0, R], paid only on success out of the revenue.
    pub installment_r: f64,
}

impl Contract {
    /// Convenience constructor.
    pub fn new(down_payment_t: f64, installment_r: f64) -> Self {
        Self { down_payment_t, installment_r }
    }
}

/// An ordered menu of contracts, one per capability type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContractMenu(pub Vec<Contract>);

impl ContractMenu {
    /// Number of contracts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when the menu has no contracts.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Iterates over the contracts in menu order.
    pub fn iter(&self) -> std::slice::Iter<'_, Contract> {
        self.0.iter()
    }

    /// Checks menu invariants against the governing parameters:
    /// finite payments and 0 ≤ r ≤ R. Down payments may be negative.
    pub fn validate(&self, params: &MarketParams) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidMenu(msg));
        if self.0.is_empty() {
            return fail("menu has no contracts".into());
        }
        for (j, contract) in self.0.iter().enumerate() {
            if !contract.down_payment_t.is_finite() {
                return fail(format!("contract {j}: down payment is not finite"));
            }
            if !contract.installment_r.is_finite()
                || contract.installment_r < 0.0
                || contract.installment_r > params.revenue_r
            {
                return fail(format!(
                    "contract {j}: installment {} must lie in [0, {}]",
                    contract.installment_r, params.revenue_r
                ));
            }
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for ContractMenu {
    type Output = Contract;
    fn index(&self, j: usize) -> &Contract {
        &self.0[j]
    }
}

/// Which pieces of private information the contract must cope with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScenarioKind {
    /// Hidden capability and hidden effort (the general case).
    #[serde(rename = "joint", alias = "Joint")]
    Joint,
    /// Hidden capability only; effort is observable and contractible.
    #[serde(rename = "as", alias = "adverse_selection", alias = "AdverseSelectionOnly")]
    AdverseSelectionOnly,
    /// Hidden effort only; capability is known.
    #[serde(rename = "mh", alias = "moral_hazard", alias = "MoralHazardOnly")]
    MoralHazardOnly,
}

impl ScenarioKind {
    /// Short stable label used in CSV output and CLI flags (`as|joint|mh`).
    pub fn label(&self) -> &'static str {
        match self {
            ScenarioKind::Joint => "joint",
            ScenarioKind::AdverseSelectionOnly => "as",
            ScenarioKind::MoralHazardOnly => "mh",
        }
    }

    /// All regimes in the canonical reporting order (alphabetical by label,
    /// which is also the theoretical payoff ordering — see the solvers).
    pub fn all() -> [ScenarioKind; 3] {
        [
            ScenarioKind::AdverseSelectionOnly,
            ScenarioKind::Joint,
            ScenarioKind::MoralHazardOnly,
        ]
    }
}

impl std::fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for ScenarioKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "joint" => Ok(ScenarioKind::Joint),
            "as" | "adverse_selection" => Ok(ScenarioKind::AdverseSelectionOnly),
            "mh" | "moral_hazard" => Ok(ScenarioKind::MoralHazardOnly),
            other => Err(format!("unknown regime `{other}` (expected joint|as|mh)")),
        }
    }
}

/// Slack diagnostics attached to a solved menu.
///
/// `ir_slack[i]` is type i's equilibrium payoff (the distance from its
/// participation constraint); `ldic_slack[i-1]` is how much type i prefers its
/// own contract over type i−1's. Values are computed under the report's
/// regime-specific effort rule. For regimes whose program omits a constraint
/// family (the adverse-selection-only program has no incentive constraints —
/// effort is observable) the corresponding entries are informational, not
/// guarantees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BindingDiagnostics {
    /// Participation slack per type (own-contract expected payoff).
    pub ir_slack: Vec<f64>,
    /// Adjacent downward incentive slack, entry i−1 for the pair (i, i−1).
    pub ldic_slack: Vec<f64>,
}

/// Complete output of a closed-form solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    /// The information regime that was solved.
    pub regime: ScenarioKind,
    /// One contract per type, in type order.
    pub menu: ContractMenu,
    /// Effort each type exerts under its own contract (best response, or ê in
    /// the moral-hazard-only regime).
    pub efforts: Vec<f64>,
    /// PU expected payoff Σᵢ βᵢ(tᵢ + θᵢeᵢrᵢ).
    pub pu_payoff: f64,
    /// SU expected payoff per type under its own contract.
    pub su_payoffs: Vec<f64>,
    /// Social welfare Σᵢ βᵢ(θᵢeᵢR − (c/2)eᵢ²); payments cancel out.
    pub welfare: f64,
    /// Participation and local-incentive slack values.
    pub binding: BindingDiagnostics,
}

// =============================================================================
// Payoff formulas
// =============================================================================

/// Effort cost ψ(e) = (c/2)e².
///
/// Shared by every payoff expression so that algebraic cancellations (e.g. the
/// moral-hazard-only SU payoff being exactly zero) also cancel bitwise.
#[inline]
pub fn effort_cost(cost_c: f64, effort: f64) -> f64 {
    (cost_c / 2.0) * effort * effort
}

/// The SU's payoff-maximizing effort under contract terms `(·, r)`:
/// e* = θ(R − r)/c.
///
/// Independent of the down payment (a sunk transfer) and nonincreasing in the
/// installment. Errors when θ ≤ 0, r is outside [0, R], or the parameters are
/// unusable.
pub fn best_effort(theta: f64, installment_r: f64, params: &MarketParams) -> Result<f64> {
    params.validate_for_solve()?;
    if !theta.is_finite() || theta <= 0.0 {
        return Err(Error::InvalidInput(format!("theta = {theta} must be positive")));
    }
    if !installment_r.is_finite()
        || installment_r < 0.0
        || installment_r > params.revenue_r
    {
        return Err(Error::InvalidInput(format!(
            "installment {installment_r} must lie in [0, {}]",
            params.revenue_r
        )));
    }
    Ok(theta * (params.revenue_r - installment_r) / params.cost_c)
}

/// Expected SU payoff at a given effort level:
/// θe(R − r) − t − (c/2)e².
pub fn su_payoff(theta: f64, effort: f64, contract: &Contract, params: &MarketParams) -> f64 {
    theta * effort * (params.revenue_r - contract.installment_r) - contract.down_payment_t
        - effort_cost(params.cost_c, effort)
}

/// Gross best-response surplus (θ(R − r))²/(2c): the SU's expected payoff from
/// contract terms `(0, r)` after substituting e*.
#[inline]
pub(crate) fn gross_best_response_surplus(theta: f64, installment_r: f64, params: &MarketParams) -> f64 {
    let margin = theta * (params.revenue_r - installment_r);
    margin * margin / (2.0 * params.cost_c)
}

/// SU payoff under a contract after substituting the best-response effort:
/// (θ(R − r))²/(2c) − t.
///
/// This is the reduced form the menu design works with; it agrees with
/// [`su_payoff`] evaluated at [`best_effort`] within [`EQUALITY_TOL`].
pub fn su_payoff_at_best_response(theta: f64, contract: &Contract, params: &MarketParams) -> f64 {
    gross_best_response_surplus(theta, contract.installment_r, params) - contract.down_payment_t
}

/// PU expected payoff Σᵢ βᵢ(tᵢ + θᵢeᵢrᵢ) with the given per-type efforts.
pub fn pu_payoff_with_efforts(
    menu: &ContractMenu,
    profile: &TypeProfile,
    efforts: &[f64],
) -> Result<f64> {
    check_lengths(menu, profile)?;
    if efforts.len() != profile.n() {
        return Err(Error::LengthMismatch { menu_len: efforts.len(), n: profile.n() });
    }
    let mut total = 0.0;
    for i in 0..profile.n() {
        let contract = &menu[i];
        total += profile.betas[i]
            * (contract.down_payment_t + profile.thetas[i] * efforts[i] * contract.installment_r);
    }
    Ok(total)
}

/// PU expected payoff with every type playing its best-response effort.
pub fn pu_expected_payoff(
    menu: &ContractMenu,
    profile: &TypeProfile,
    params: &MarketParams,
) -> Result<f64> {
    let efforts = best_response_efforts(menu, profile, params)?;
    pu_payoff_with_efforts(menu, profile, &efforts)
}

/// Social welfare Σᵢ βᵢ(θᵢeᵢR − (c/2)eᵢ²) at the given efforts; transfer
/// payments cancel between the two sides and do not appear.
pub fn welfare_with_efforts(
    profile: &TypeProfile,
    params: &MarketParams,
    efforts: &[f64],
) -> Result<f64> {
    if efforts.len() != profile.n() {
        return Err(Error::LengthMismatch { menu_len: efforts.len(), n: profile.n() });
    }
    let mut total = 0.0;
    for i in 0..profile.n() {
        total += profile.betas[i]
            * (profile.thetas[i] * efforts[i] * params.revenue_r
                - effort_cost(params.cost_c, efforts[i]));
    }
    Ok(total)
}

/// Social welfare with every type playing its best-response effort.
pub fn social_welfare(
    menu: &ContractMenu,
    profile: &TypeProfile,
    params: &MarketParams,
) -> Result<f64> {
    let efforts = best_response_efforts(menu, profile, params)?;
    welfare_with_efforts(profile, params, &efforts)
}

/// Transmission success probability θ·e, optionally clamped into [0, 1].
///
/// Solvers never clamp (their algebra assumes the interior expression); the
/// Monte Carlo simulator always clamps and counts the events.
pub fn success_probability(theta: f64, effort: f64, clamp: bool) -> f64 {
    let p = theta * effort;
    if clamp {
        p.clamp(0.0, 1.0)
    } else {
        p
    }
}

/// Best-response efforts for every type under its own menu contract.
pub fn best_response_efforts(
    menu: &ContractMenu,
    profile: &TypeProfile,
    params: &MarketParams,
) -> Result<Vec<f64>> {
    check_lengths(menu, profile)?;
    (0..profile.n())
        .map(|i| best_effort(profile.thetas[i], menu[i].installment_r, params))
        .collect()
}

pub(crate) fn check_lengths(menu: &ContractMenu, profile: &TypeProfile) -> Result<()> {
    if menu.len() != profile.n() {
        return Err(Error::LengthMismatch { menu_len: menu.len(), n: profile.n() });
    }
    Ok(())
}

// =============================================================================
// Tests
// =============================================================================
