//! Continuous capability distributions, discretized for the menu solvers.
//!
//! When SU capability is drawn from a continuum instead of a finite list, the
//! menu designers still apply: the distribution is cut into `n` equal-mass
//! (quantile) bins, each bin is represented by its conditional mean
//! capability, and the discrete solver runs on the resulting profile.
//! Equal-mass binning keeps every βᵢ = 1/n — no tiny-probability types to
//! destabilize the payoff sums — and increasing `n` sharpens the
//! approximation; the PU payoff settles quickly (see the convergence test).

use serde::{Deserialize, Serialize};

use crate::contracts::solve;
use crate::error::{Error, Result};
use crate::model::{MarketParams, ScenarioKind, SolveReport, TypeProfile, MASS_TOL};

/// A continuous distribution of SU capability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TypeDistribution {
    /// Uniform on [lo, hi], 0 < lo < hi.
    Uniform {
        /// Smallest capability.
        lo: f64,
        /// Largest capability.
        hi: f64,
    },
    /// Distribution given by a piecewise-linear CDF through `knots`
    /// (capability, cumulative probability). Knot capabilities are positive
    /// and strictly ascending; cumulative values run strictly from 0 to 1, so
    /// the density is piecewise constant and positive.
    PiecewiseLinearCdf {
        /// CDF control points, first (x₀, 0) to last (xₖ, 1).
        knots: Vec<(f64, f64)>,
    },
}

impl TypeDistribution {
    /// Checks the distribution's invariants.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidDistribution(msg));
        match self {
            TypeDistribution::Uniform { lo, hi } => {
                if !lo.is_finite() || !hi.is_finite() {
                    return fail("uniform bounds must be finite".into());
                }
                if *lo <= 0.0 {
                    return fail(format!("uniform lower bound {lo} must be positive"));
                }
                if lo >= hi {
                    return fail(format!("uniform bounds must satisfy lo < hi, got [{lo}, {hi}]"));
                }
            }
            TypeDistribution::PiecewiseLinearCdf { knots } => {
                if knots.len() < 2 {
                    return fail("piecewise CDF needs at least two knots".into());
                }
                for (k, &(x, y)) in knots.iter().enumerate() {
                    if !x.is_finite() || !y.is_finite() {
                        return fail(format!("knot {k} has a non-finite coordinate"));
                    }
                    if x <= 0.0 {
                        return fail(format!("knot {k}: capability {x} must be positive"));
                    }
                    if k > 0 {
                        if x <= knots[k - 1].0 {
                            return fail(format!(
                                "knot capabilities must be strictly ascending, knot {k} = {x}"
                            ));
                        }
                        if y <= knots[k - 1].1 {
                            return fail(format!(
                                "cumulative values must be strictly ascending, knot {k} = {y}"
                            ));
                        }
                    }
                }
                if knots[0].1.abs() > MASS_TOL {
                    return fail(format!("first cumulative value must be 0, got {}", knots[0].1));
                }
                if (knots[knots.len() - 1].1 - 1.0).abs() > MASS_TOL {
                    return fail(format!(
                        "last cumulative value must be 1, got {}",
                        knots[knots.len() - 1].1
                    ));
                }
            }
        }
        Ok(())
    }

    /// Capability at cumulative probability `p` (the inverse CDF), for
    /// p ∈ [0, 1].
    pub fn quantile(&self, p: f64) -> f64 {
        match self {
            TypeDistribution::Uniform { lo, hi } => lo + (hi - lo) * p,
            TypeDistribution::PiecewiseLinearCdf { knots } => {
                if p <= knots[0].1 {
                    return knots[0].0;
                }
                let last = knots.len() - 1;
                if p >= knots[last].1 {
                    return knots[last].0;
                }
                // First knot with cumulative value ≥ p closes the segment.
                let hi_k = knots.partition_point(|&(_, y)| y < p);
                let (x0, y0) = knots[hi_k - 1];
                let (x1, y1) = knots[hi_k];
                x0 + (p - y0) * (x1 - x0) / (y1 - y0)
            }
        }
    }

    /// Mean capability conditional on lying in [a, b] ⊆ support.
    fn conditional_mean(&self, a: f64, b: f64) -> f64 {
        match self {
            // Uniform density: the conditional mean is the midpoint.
            TypeDistribution::Uniform { .. } => (a + b) / 2.0,
            TypeDistribution::PiecewiseLinearCdf { knots } => {
                // Piecewise-linear CDF ⇒ piecewise-constant density. Sum each
                // segment's overlap mass times its overlap midpoint.
                let mut mass = 0.0;
                let mut weighted = 0.0;
                for w in knots.windows(2) {
                    let (x0, y0) = w[0];
                    let (x1, y1) = w[1];
                    let lo = a.max(x0);
                    let hi = b.min(x1);
                    if hi <= lo {
                        continue;
                    }
                    let density = (y1 - y0) / (x1 - x0);
                    let seg_mass = density * (hi - lo);
                    mass += seg_mass;
                    weighted += seg_mass * (lo + hi) / 2.0;
                }
                weighted / mass
            }
        }
    }
}

/// A continuous distribution reduced to a solvable discrete profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    /// Equal-mass profile: βᵢ = 1/n, θᵢ = conditional mean of bin i.
    pub profile: TypeProfile,
    /// The n+1 capability values cutting the support into equal-mass bins.
    pub quantile_edges: Vec<f64>,
}

/// Cuts a distribution into `n` equal-mass bins, each represented by its
/// conditional mean capability.
pub fn discretize(dist: &TypeDistribution, n: usize) -> Result<Discretization> {
    dist.validate()?;
    if n == 0 {
        return Err(Error::InvalidInput("need at least one bin".into()));
    }
    let quantile_edges: Vec<f64> =
        (0..=n).map(|k| dist.quantile(k as f64 / n as f64)).collect();
    let thetas: Vec<f64> = (0..n)
        .map(|i| dist.conditional_mean(quantile_edges[i], quantile_edges[i + 1]))
        .collect();
    let profile = TypeProfile::new(thetas, vec![1.0 / n as f64; n])?;
    Ok(Discretization { profile, quantile_edges })
}

/// A regime solved on a discretized continuous population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousReport {
    /// The discretized profile the solver ran on.
    pub profile: TypeProfile,
    /// Equal-mass bin edges in capability space.
    pub quantile_edges: Vec<f64>,
    /// The solved menu and payoffs.
    pub report: SolveReport,
}

/// Discretizes `dist` into `n` types and solves the requested regime.
pub fn solve_continuous(
    dist: &TypeDistribution,
    n: usize,
    params: &MarketParams,
    regime: ScenarioKind,
) -> Result<ContinuousReport> {
    let Discretization { profile, quantile_edges } = discretize(dist, n)?;
    let report = solve(regime, &profile, params)?;
    Ok(ContinuousReport { profile, quantile_edges, report })
}
