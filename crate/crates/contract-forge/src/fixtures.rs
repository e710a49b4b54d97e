//! Randomized market generators for stress tests and demos.
//!
//! Two flavors:
//!
//! - [`loose_market`] draws any valid market — arbitrary type spacings and
//!   masses. Good for exercising formulas that hold unconditionally (the
//!   extreme-regime closed forms, payoff identities, validation).
//! - [`regular_market`] additionally screens for *regular* markets: the joint
//!   menu's installments strictly decrease with a real margin and every
//!   installment stays clearly below the revenue. On such markets the locally
//!   binding menu provably satisfies the full global constraint set, so tests
//!   of the binding pattern and self-selection use this sampler. Bunched
//!   profiles that fail the screen are legitimate markets too — the solver
//!   accepts them — but their menus can violate non-adjacent incentive
//!   constraints (see the irregular-profile test in `contracts`), which is
//!   exactly why the screen exists.
//!
//! Both samplers are pure functions of the RNG stream, so a seeded generator
//! reproduces the same market sequence everywhere.

use rand::Rng;

use crate::contracts::solve_joint;
use crate::model::{MarketParams, TypeProfile};

/// Installment gap (relative to R) below which a market is considered too
/// bunched for the regular suite.
const MIN_INSTALLMENT_GAP: f64 = 1e-3;

/// Required relative headroom between every installment and the revenue.
const MIN_REVENUE_MARGIN: f64 = 1e-2;

/// Draws an arbitrary valid market: 1–6 types with any positive spacing,
/// simplex-uniform masses, R ∈ [0.1, 2), c ∈ [0.5, 10).
pub fn loose_market<R: Rng>(rng: &mut R) -> (TypeProfile, MarketParams) {
    let n = rng.gen_range(1..=6);
    let mut thetas = Vec::with_capacity(n);
    let mut theta = rng.gen_range(0.1..2.0);
    thetas.push(theta);
    for _ in 1..n {
        theta += rng.gen_range(0.01..0.8);
        thetas.push(theta);
    }
    let betas = simplex_point(rng, n);
    let params = sample_params(rng);
    let profile = TypeProfile::new(thetas, betas).expect("constructed within bounds");
    (profile, params)
}

/// Draws a regular market: well-separated types (adjacent gaps ≥ 0.1,
/// θ ∈ [0.3, 4.75]), masses ≥ 0.05 each, and a joint menu passing the
/// installment-monotonicity screen described in the module docs.
pub fn regular_market<R: Rng>(rng: &mut R) -> (TypeProfile, MarketParams) {
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=6);
        let mut thetas = Vec::with_capacity(n);
        let mut theta = 0.3 + rng.gen_range(0.0..1.2);
        thetas.push(theta);
        for _ in 1..n {
            theta += rng.gen_range(0.1..0.65);
            thetas.push(theta);
        }
        let betas = bounded_simplex_point(rng, n, 0.05);
        let params = sample_params(rng);
        let profile = TypeProfile::new(thetas, betas).expect("constructed within bounds");

        if passes_regularity_screen(&profile, &params) {
            return (profile, params);
        }
    }
    unreachable!("regular markets are plentiful; 10000 rejections means a bug");
}

/// Economic parameters shared by both samplers: R ∈ [0.1, 2), c ∈ [0.5, 10).
pub fn sample_params<R: Rng>(rng: &mut R) -> MarketParams {
    MarketParams {
        revenue_r: rng.gen_range(0.1..2.0),
        cost_c: rng.gen_range(0.5..10.0),
        fixed_effort: None,
    }
}

/// True when the joint menu's installments strictly decrease with at least
/// 1e-3·R between neighbours and keep 1e-2·R of headroom below R.
pub fn passes_regularity_screen(profile: &TypeProfile, params: &MarketParams) -> bool {
    let Ok(report) = solve_joint(profile, params) else {
        return false;
    };
    let r = params.revenue_r;
    let menu = &report.menu;
    for i in 0..menu.len() {
        if r - menu[i].installment_r < MIN_REVENUE_MARGIN * r {
            return false;
        }
        if i + 1 < menu.len()
            && menu[i].installment_r - menu[i + 1].installment_r < MIN_INSTALLMENT_GAP * r
        {
            return false;
        }
    }
    true
}

/// Uniform point on the probability simplex (normalized exponentials).
fn simplex_point<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..n)
        .map(|_| 1e-9 - (1.0 - rng.gen::<f64>()).ln())
        .collect();
    let total: f64 = draws.iter().sum();
    draws.iter().map(|d| d / total).collect()
}

/// Simplex point with every coordinate at least `min_mass` (by rejection,
/// falling back to the uniform mass vector).
fn bounded_simplex_point<R: Rng>(rng: &mut R, n: usize, min_mass: f64) -> Vec<f64> {
    for _ in 0..200 {
        let point = simplex_point(rng, n);
        if point.iter().all(|&b| b >= min_mass) {
            return point;
        }
    }
    vec![1.0 / n as f64; n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn loose_markets_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let (profile, params) = loose_market(&mut rng);
            profile.validate().expect("sampled profile must validate");
            params.validate().expect("sampled params must validate");
        }
    }

    #[test]
    fn regular_markets_pass_their_own_screen() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let (profile, params) = regular_market(&mut rng);
            profile.validate().unwrap();
            assert!(passes_regularity_screen(&profile, &params));
        }
    }

    #[test]
    fn samplers_are_deterministic_given_the_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let (pa, qa) = regular_market(&mut a);
            let (pb, qb) = regular_market(&mut b);
            assert_eq!(pa, pb, "profiles must match draw for draw");
            assert_eq!(qa, qb, "params must match draw for draw");
        }
    }

    #[test]
    fn bounded_masses_respect_the_floor() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let point = bounded_simplex_point(&mut rng, 6, 0.05);
            assert!(point.iter().all(|&b| b >= 0.05));
            let total: f64 = point.iter().sum();
            assert!((total - 1.0).abs() <= 1e-12);
        }
    }
}
