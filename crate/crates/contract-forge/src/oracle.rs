//! Brute-force grid verification of the closed-form menus.
//!
//! The oracle maximizes the PU's expected payoff directly over a grid of
//! candidate menus, subject to the participation and incentive constraints
//! (each type best-responding in effort to whichever contract it takes),
//! without using any structure of the closed forms. Agreement between the two
//! — grid optimum within a grid step of the formula optimum — is the strongest
//! check this crate has that the closed forms are right.
//!
//! The search enumerates installments and down payments on uniform grids and
//! then refines: each round shrinks every axis tenfold around the incumbent
//! (clamped to the original box) and rescans, so three rounds sharpen a
//! 200-step axis to ~10⁻³ of its original resolution at ~4× the single-pass
//! cost. The incumbent is carried across rounds and replaced only by a
//! strictly better candidate, so refinement can never lose ground.
//!
//! Cost grows steeply with the number of types: the innermost down payment is
//! resolved in closed form (see below), so a pass costs roughly
//! `r_steps·(t_steps·r_steps)^(n-1)·log(t_steps)` contract evaluations.
//! Defaults are sized for n ≤ 2; at n = 3 choose ~30 steps per axis. Beyond
//! n = 3 the search refuses to run ([`Error::TooManyTypes`]).
//!
//! Two exact prunes keep the search honest *and* fast:
//!
//! - Down payments enter every constraint linearly, so for fixed installments
//!   and fixed other contracts the last type's feasible down payments form an
//!   interval. The payoff is increasing in that down payment, so only the
//!   largest feasible grid value can win (the smallest when the type has zero
//!   mass, matching the lexicographic tie-break). A binary search replaces the
//!   innermost loop.
//! - Participation of enumerated types fails monotonically as their down
//!   payment grows, so ascending scans break early.
//!
//! Ties are broken deterministically: higher payoff first, then the
//! lexicographically smallest `(r₁…rₙ, t₁…tₙ)` vector. The parallel reduction
//! uses the same total order, so results do not depend on thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contracts::{solve_adverse_only, solve_joint};
use crate::error::{Error, Result};
use crate::model::{
    gross_best_response_surplus, su_payoff_at_best_response, Contract, ContractMenu, MarketParams,
    TypeProfile,
};

/// Constraint slack the grid search tolerates, mirroring how the closed forms
/// sit exactly on their binding constraints: a grid point is feasible when
/// every slack is ≥ −[`FEASIBILITY_TOL`].
pub const FEASIBILITY_TOL: f64 = 1e-6;

/// Largest population the joint grid search accepts.
pub const MAX_ORACLE_TYPES: usize = 3;

/// Grid geometry for the brute-force search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Installment grid points per type over [0, R].
    pub r_steps: usize,
    /// Down-payment grid points per type over [−t_max, t_max].
    pub t_steps: usize,
    /// Half-width of the down-payment box. `None` derives it from the market:
    /// 1.5 × maxᵢ θᵢ²R²/(2c), which brackets every closed-form down payment.
    pub t_max: Option<f64>,
    /// Extra tenfold refinement passes after the initial scan.
    pub refine_rounds: usize,
}

impl GridSpec {
    /// Grid with a derived down-payment box.
    pub fn new(r_steps: usize, t_steps: usize, refine_rounds: usize) -> Self {
        Self { r_steps, t_steps, t_max: None, refine_rounds }
    }

    /// Checks the geometry is usable.
    pub fn validate(&self) -> Result<()> {
        if self.r_steps < 2 || self.t_steps < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 steps per axis, got r_steps = {}, t_steps = {}",
                self.r_steps, self.t_steps
            )));
        }
        if let Some(t_max) = self.t_max {
            if !t_max.is_finite() || t_max < 0.0 {
                return Err(Error::InvalidGrid(format!(
                    "t_max = {t_max} must be nonnegative and finite"
                )));
            }
        }
        Ok(())
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::new(200, 200, 3)
    }
}

/// Outcome of a grid search, compared against the closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleVerdict {
    /// Whether any grid menu satisfied all constraints.
    pub feasible: bool,
    /// The best feasible grid menu, if any.
    pub best_menu: Option<ContractMenu>,
    /// PU payoff of the best grid menu.
    pub best_payoff: Option<f64>,
    /// PU payoff of the closed-form menu for the same market.
    pub closed_form_payoff: f64,
    /// `best_payoff − closed_form_payoff`. Slightly negative (about one grid
    /// step) when the grid straddles the true optimum; up to
    /// [`FEASIBILITY_TOL`] positive because the grid may exploit the relaxed
    /// constraints.
    pub gap: Option<f64>,
}

/// Audit of which constraints a menu makes tight, against the expected
/// pattern: the weakest type's participation binds, every adjacent downward
/// incentive constraint binds, everything else is slack.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BindingAudit {
    /// Tolerance used for "binds" and "holds".
    pub tol: f64,
    /// True when the menu matches the expected binding pattern and violates
    /// nothing.
    pub matches: bool,
    /// Participation slack per type.
    pub ir_slack: Vec<f64>,
    /// Adjacent downward incentive slack, entry i−1 for the pair (i, i−1).
    pub ldic_slack: Vec<f64>,
    /// `pair_slacks[i][j]`: for j ≠ i, how much type i prefers its own
    /// contract over contract j; the diagonal holds the participation slack.
    pub pair_slacks: Vec<Vec<f64>>,
}

// =============================================================================
// Search internals
// =============================================================================

/// A scored menu candidate. Ordering: payoff descending, then the
/// lexicographically smallest `(rs, ts)` vector.
#[derive(Debug, Clone)]
struct Candidate {
    payoff: f64,
    rs: Vec<f64>,
    ts: Vec<f64>,
}

fn is_better(a: &Candidate, b: &Candidate) -> bool {
    if a.payoff != b.payoff {
        return a.payoff > b.payoff;
    }
    for (x, y) in a.rs.iter().zip(&b.rs).chain(a.ts.iter().zip(&b.ts)) {
        if x != y {
            return x < y;
        }
    }
    false
}

fn merge(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if is_better(&a, &b) { a } else { b }),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Uniformly spaced grid including both endpoints; collapses to a single
/// point when the interval is degenerate.
fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 || lo == hi {
        return vec![lo];
    }
    (0..steps)
        .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
        .collect()
}

/// Picks the winning grid down payment inside the feasible interval
/// [lo, hi]: the largest when the type's mass makes the payoff increase in
/// it, otherwise the smallest (the lexicographic tie-break).
fn pick_t(grid: &[f64], lo: f64, hi: f64, maximize: bool) -> Option<f64> {
    let lo_idx = grid.partition_point(|&t| t < lo);
    let hi_idx = grid.partition_point(|&t| t <= hi);
    if lo_idx >= hi_idx {
        None
    } else if maximize {
        Some(grid[hi_idx - 1])
    } else {
        Some(grid[lo_idx])
    }
}

/// One type's search box for the current pass.
#[derive(Debug, Clone, Copy)]
struct Window {
    r_lo: f64,
    r_hi: f64,
    t_lo: f64,
    t_hi: f64,
}

/// Shrinks `[lo, hi]` tenfold around `center`, keeping it inside
/// `[bound_lo, bound_hi]`.
fn shrink(lo: f64, hi: f64, center: f64, bound_lo: f64, bound_hi: f64) -> (f64, f64) {
    let width = (hi - lo) / 10.0;
    let mut new_lo = center - width / 2.0;
    if new_lo < bound_lo {
        new_lo = bound_lo;
    }
    if new_lo + width > bound_hi {
        new_lo = (bound_hi - width).max(bound_lo);
    }
    (new_lo, (new_lo + width).min(bound_hi))
}

/// Per-pass precomputed tables.
struct Tables {
    /// `r_grids[k][j]`: installment grid of type k.
    r_grids: Vec<Vec<f64>>,
    /// `t_grids[k][j]`: down-payment grid of type k (ascending).
    t_grids: Vec<Vec<f64>>,
    /// `gross[i][k][j]`: best-response surplus of capability θᵢ under
    /// installment `r_grids[k][j]`, gross of any down payment.
    gross: Vec<Vec<Vec<f64>>>,
    /// `own_yield[k][j]`: θₖ·e*·r — the installment revenue type k hands the
    /// PU under its own contract with installment `r_grids[k][j]`.
    own_yield: Vec<Vec<f64>>,
}

fn build_tables(profile: &TypeProfile, params: &MarketParams, windows: &[Window], spec: &GridSpec) -> Tables {
    let n = profile.n();
    let r_grids: Vec<Vec<f64>> = windows
        .iter()
        .map(|w| linspace(w.r_lo, w.r_hi, spec.r_steps))
        .collect();
    let t_grids: Vec<Vec<f64>> = windows
        .iter()
        .map(|w| linspace(w.t_lo, w.t_hi, spec.t_steps))
        .collect();
    let gross = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    r_grids[k]
                        .iter()
                        .map(|&r| gross_best_response_surplus(profile.thetas[i], r, params))
                        .collect()
                })
                .collect()
        })
        .collect();
    let own_yield = (0..n)
        .map(|k| {
            let theta = profile.thetas[k];
            r_grids[k]
                .iter()
                .map(|&r| theta * (theta * (params.revenue_r - r) / params.cost_c) * r)
                .collect()
        })
        .collect();
    Tables { r_grids, t_grids, gross, own_yield }
}

fn pass_one_type(profile: &TypeProfile, tables: &Tables) -> Option<Candidate> {
    let beta = profile.betas[0];
    (0..tables.r_grids[0].len())
        .into_par_iter()
        .map(|j| {
            let hi = tables.gross[0][0][j] + FEASIBILITY_TOL;
            let t = pick_t(&tables.t_grids[0], f64::NEG_INFINITY, hi, beta > 0.0)?;
            Some(Candidate {
                payoff: beta * (t + tables.own_yield[0][j]),
                rs: vec![tables.r_grids[0][j]],
                ts: vec![t],
            })
        })
        .reduce(|| None, merge)
}

fn pass_two_types(profile: &TypeProfile, tables: &Tables) -> Option<Candidate> {
    let (beta0, beta1) = (profile.betas[0], profile.betas[1]);
    (0..tables.r_grids[0].len())
        .into_par_iter()
        .map(|j0| {
            let mut best: Option<Candidate> = None;
            let g00 = tables.gross[0][0][j0];
            let g10 = tables.gross[1][0][j0];
            for &t0 in &tables.t_grids[0] {
                let u00 = g00 - t0;
                if u00 < -FEASIBILITY_TOL {
                    break; // higher down payments only violate participation harder
                }
                let share0 = beta0 * (t0 + tables.own_yield[0][j0]);
                for j1 in 0..tables.r_grids[1].len() {
                    let g11 = tables.gross[1][1][j1];
                    let g01 = tables.gross[0][1][j1];
                    // Participation of type 1 and the pairwise incentive
                    // constraints bound t1 to an interval.
                    let hi = (g11 + FEASIBILITY_TOL).min(g11 - g10 + t0 + FEASIBILITY_TOL);
                    let lo = g01 - u00 - FEASIBILITY_TOL;
                    if let Some(t1) = pick_t(&tables.t_grids[1], lo, hi, beta1 > 0.0) {
                        let cand = Candidate {
                            payoff: share0 + beta1 * (t1 + tables.own_yield[1][j1]),
                            rs: vec![tables.r_grids[0][j0], tables.r_grids[1][j1]],
                            ts: vec![t0, t1],
                        };
                        if best.as_ref().map_or(true, |b| is_better(&cand, b)) {
                            best = Some(cand);
                        }
                    }
                }
            }
            best
        })
        .reduce(|| None, merge)
}

fn pass_three_types(profile: &TypeProfile, tables: &Tables) -> Option<Candidate> {
    let (beta0, beta1, beta2) = (profile.betas[0], profile.betas[1], profile.betas[2]);
    (0..tables.r_grids[0].len())
        .into_par_iter()
        .map(|j0| {
            let mut best: Option<Candidate> = None;
            let g00 = tables.gross[0][0][j0];
            let g10 = tables.gross[1][0][j0];
            let g20 = tables.gross[2][0][j0];
            for &t0 in &tables.t_grids[0] {
                let u00 = g00 - t0;
                if u00 < -FEASIBILITY_TOL {
                    break;
                }
                let u10_gross = g10 - t0; // payoff type 1 would get from contract 0
                let share0 = beta0 * (t0 + tables.own_yield[0][j0]);
                for j1 in 0..tables.r_grids[1].len() {
                    let g11 = tables.gross[1][1][j1];
                    let g01 = tables.gross[0][1][j1];
                    let g21 = tables.gross[2][1][j1];
                    // t1 must keep type 1 participating and the (0, 1) pair
                    // mutually honest.
                    let t1_hi = (g11 + FEASIBILITY_TOL).min(g11 - u10_gross + FEASIBILITY_TOL);
                    let t1_lo = g01 - u00 - FEASIBILITY_TOL;
                    let t_grid1 = &tables.t_grids[1];
                    let start = t_grid1.partition_point(|&t| t < t1_lo);
                    for &t1 in &t_grid1[start..] {
                        if t1 > t1_hi {
                            break;
                        }
                        let u11 = g11 - t1;
                        let share01 = share0 + beta1 * (t1 + tables.own_yield[1][j1]);
                        for j2 in 0..tables.r_grids[2].len() {
                            let g22 = tables.gross[2][2][j2];
                            let g02 = tables.gross[0][2][j2];
                            let g12 = tables.gross[1][2][j2];
                            let hi = (g22 + FEASIBILITY_TOL)
                                .min(g22 - (g20 - t0) + FEASIBILITY_TOL)
                                .min(g22 - (g21 - t1) + FEASIBILITY_TOL);
                            let lo = (g02 - u00 - FEASIBILITY_TOL)
                                .max(g12 - u11 - FEASIBILITY_TOL);
                            if let Some(t2) = pick_t(&tables.t_grids[2], lo, hi, beta2 > 0.0) {
                                let cand = Candidate {
                                    payoff: share01 + beta2 * (t2 + tables.own_yield[2][j2]),
                                    rs: vec![
                                        tables.r_grids[0][j0],
                                        tables.r_grids[1][j1],
                                        tables.r_grids[2][j2],
                                    ],
                                    ts: vec![t0, t1, t2],
                                };
                                if best.as_ref().map_or(true, |b| is_better(&cand, b)) {
                                    best = Some(cand);
                                }
                            }
                        }
                    }
                }
            }
            best
        })
        .reduce(|| None, merge)
}

fn run_pass(profile: &TypeProfile, params: &MarketParams, windows: &[Window], spec: &GridSpec) -> Option<Candidate> {
    let tables = build_tables(profile, params, windows, spec);
    match profile.n() {
        1 => pass_one_type(profile, &tables),
        2 => pass_two_types(profile, &tables),
        3 => pass_three_types(profile, &tables),
        _ => unreachable!("guarded by MAX_ORACLE_TYPES"),
    }
}

fn default_t_max(profile: &TypeProfile, params: &MarketParams) -> f64 {
    let max_surplus = profile
        .thetas
        .iter()
        .map(|&theta| gross_best_response_surplus(theta, 0.0, params))
        .fold(0.0_f64, f64::max);
    1.5 * max_surplus
}

// =============================================================================
// Public entry points
// =============================================================================

/// Grid-searches the joint regime's menu space and compares the best feasible
/// grid menu against [`solve_joint`].
pub fn grid_search(profile: &TypeProfile, params: &MarketParams, spec: &GridSpec) -> Result<OracleVerdict> {
    profile.validate()?;
    params.validate_for_solve()?;
    spec.validate()?;
    let n = profile.n();
    if n > MAX_ORACLE_TYPES {
        return Err(Error::TooManyTypes { n, max: MAX_ORACLE_TYPES });
    }
    let closed_form_payoff = solve_joint(profile, params)?.pu_payoff;

    let t_max = match spec.t_max {
        Some(t_max) => t_max,
        None => default_t_max(profile, params),
    };
    let full_box = Window {
        r_lo: 0.0,
        r_hi: params.revenue_r,
        t_lo: -t_max,
        t_hi: t_max,
    };
    let mut windows = vec![full_box; n];
    let mut incumbent: Option<Candidate> = None;

    for round in 0..=spec.refine_rounds {
        if round > 0 {
            let Some(center) = &incumbent else {
                break; // nothing feasible to refine around
            };
            for (k, w) in windows.iter_mut().enumerate() {
                let (r_lo, r_hi) = shrink(w.r_lo, w.r_hi, center.rs[k], 0.0, params.revenue_r);
                let (t_lo, t_hi) = shrink(w.t_lo, w.t_hi, center.ts[k], -t_max, t_max);
                *w = Window { r_lo, r_hi, t_lo, t_hi };
            }
        }
        let pass = run_pass(profile, params, &windows, spec);
        incumbent = match (incumbent, pass) {
            (Some(inc), Some(new)) if is_better(&new, &inc) => Some(new),
            (None, new) => new,
            (inc, _) => inc,
        };
    }

    Ok(verdict_from(incumbent, closed_form_payoff))
}

/// Grid-searches the observable-effort regime: each type independently, under
/// its participation constraint alone, compared against
/// [`solve_adverse_only`]. No population-size limit — types don't interact.
pub fn grid_search_adverse_only(
    profile: &TypeProfile,
    params: &MarketParams,
    spec: &GridSpec,
) -> Result<OracleVerdict> {
    profile.validate()?;
    params.validate_for_solve()?;
    spec.validate()?;
    let closed_form_payoff = solve_adverse_only(profile, params)?.pu_payoff;

    let t_max = match spec.t_max {
        Some(t_max) => t_max,
        None => default_t_max(profile, params),
    };

    let mut rs = Vec::with_capacity(profile.n());
    let mut ts = Vec::with_capacity(profile.n());
    let mut payoff = 0.0;
    for i in 0..profile.n() {
        let theta = profile.thetas[i];
        let beta = profile.betas[i];
        let single = TypeProfile { thetas: vec![theta], betas: vec![1.0] };
        let mut window = Window {
            r_lo: 0.0,
            r_hi: params.revenue_r,
            t_lo: -t_max,
            t_hi: t_max,
        };
        let mut incumbent: Option<Candidate> = None;
        for round in 0..=spec.refine_rounds {
            if round > 0 {
                let Some(center) = &incumbent else { break };
                let (r_lo, r_hi) =
                    shrink(window.r_lo, window.r_hi, center.rs[0], 0.0, params.revenue_r);
                let (t_lo, t_hi) = shrink(window.t_lo, window.t_hi, center.ts[0], -t_max, t_max);
                window = Window { r_lo, r_hi, t_lo, t_hi };
            }
            let tables = build_tables(&single, params, std::slice::from_ref(&window), spec);
            let pass = pass_one_type(&single, &tables);
            incumbent = match (incumbent, pass) {
                (Some(inc), Some(new)) if is_better(&new, &inc) => Some(new),
                (None, new) => new,
                (inc, _) => inc,
            };
        }
        match incumbent {
            Some(c) => {
                payoff += beta * c.payoff; // c.payoff was computed with β = 1
                rs.push(c.rs[0]);
                ts.push(c.ts[0]);
            }
            None => {
                return Ok(OracleVerdict {
                    feasible: false,
                    best_menu: None,
                    best_payoff: None,
                    closed_form_payoff,
                    gap: None,
                })
            }
        }
    }

    let menu = ContractMenu(
        rs.iter()
            .zip(&ts)
            .map(|(&r, &t)| Contract::new(t, r))
            .collect(),
    );
    Ok(OracleVerdict {
        feasible: true,
        best_menu: Some(menu),
        best_payoff: Some(payoff),
        closed_form_payoff,
        gap: Some(payoff - closed_form_payoff),
    })
}

fn verdict_from(candidate: Option<Candidate>, closed_form_payoff: f64) -> OracleVerdict {
    match candidate {
        Some(c) => OracleVerdict {
            feasible: true,
            best_menu: Some(ContractMenu(
                c.rs.iter().zip(&c.ts).map(|(&r, &t)| Contract::new(t, r)).collect(),
            )),
            best_payoff: Some(c.payoff),
            closed_form_payoff,
            gap: Some(c.payoff - closed_form_payoff),
        },
        None => OracleVerdict {
            feasible: false,
            best_menu: None,
            best_payoff: None,
            closed_form_payoff,
            gap: None,
        },
    }
}

/// Checks a menu against the expected binding pattern: the weakest type's
/// participation constraint tight, every adjacent downward incentive
/// constraint tight, and every other constraint satisfied with room to spare.
pub fn verify_binding_pattern(
    menu: &ContractMenu,
    profile: &TypeProfile,
    params: &MarketParams,
    tol: f64,
) -> Result<BindingAudit> {
    profile.validate()?;
    params.validate_for_solve()?;
    menu.validate(params)?;
    crate::model::check_lengths(menu, profile)?;
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "audit tolerance {tol} must be nonnegative and finite"
        )));
    }
    let n = profile.n();
    let payoff = |i: usize, j: usize| -> f64 {
        su_payoff_at_best_response(profile.thetas[i], &menu[j], params)
    };

    let ir_slack: Vec<f64> = (0..n).map(|i| payoff(i, i)).collect();
    let ldic_slack: Vec<f64> = (1..n).map(|i| ir_slack[i] - payoff(i, i - 1)).collect();
    let pair_slacks: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ir_slack[i] } else { ir_slack[i] - payoff(i, j) })
                .collect()
        })
        .collect();

    let weakest_binds = ir_slack[0].abs() <= tol;
    let ladder_binds = ldic_slack.iter().all(|s| s.abs() <= tol);
    let all_hold = pair_slacks
        .iter()
        .flatten()
        .all(|&s| s >= -tol);
    Ok(BindingAudit {
        tol,
        matches: weakest_binds && ladder_binds && all_hold,
        ir_slack,
        ldic_slack,
        pair_slacks,
    })
}
