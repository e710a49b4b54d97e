//! Randomized invariants of the solvers, payoff algebra, and selection rule.

use contract_forge::fixtures::{loose_market, passes_regularity_screen, regular_market};
use contract_forge::{
    best_effort, check_constraints, default_fixed_effort, select_contract, solve_adverse_only,
    solve_joint, solve_moral_only, su_payoff, su_payoff_at_best_response, Contract, MarketParams,
    EQUALITY_TOL,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    /// A higher installment never induces more effort.
    #[test]
    fn best_effort_is_nonincreasing_in_the_installment(
        theta in 0.05f64..5.0,
        revenue in 0.1f64..2.0,
        cost in 0.5f64..10.0,
        split in 0.0f64..1.0,
        gap in 0.0f64..1.0,
    ) {
        let params = MarketParams::new(revenue, cost).unwrap();
        let r_low = split * gap * revenue;
        let r_high = split * revenue;
        let e_low = best_effort(theta, r_low, &params).unwrap();
        let e_high = best_effort(theta, r_high, &params).unwrap();
        prop_assert!(e_low >= e_high, "e({r_low}) = {e_low} < e({r_high}) = {e_high}");
    }

    /// The reduced payoff (θ(R−r))²/(2c) − t agrees with playing out the
    /// full payoff at the best-response effort.
    #[test]
    fn reduced_payoff_agrees_with_the_full_payoff(
        theta in 0.05f64..5.0,
        revenue in 0.1f64..2.0,
        cost in 0.5f64..10.0,
        r_frac in 0.0f64..=1.0,
        t in -1.0f64..2.0,
    ) {
        let params = MarketParams::new(revenue, cost).unwrap();
        let contract = Contract::new(t, r_frac * revenue);
        let effort = best_effort(theta, contract.installment_r, &params).unwrap();
        let full = su_payoff(theta, effort, &contract, &params);
        let reduced = su_payoff_at_best_response(theta, &contract, &params);
        prop_assert!(
            rel_close(full, reduced, 1e-12),
            "full {full} vs reduced {reduced}"
        );
    }

    /// PU payoff plus mass-weighted SU payoffs equals social welfare for the
    /// solved joint menu.
    #[test]
    fn welfare_decomposes_into_pu_plus_weighted_rents(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (profile, params) = loose_market(&mut rng);
        let report = solve_joint(&profile, &params).unwrap();
        let rents: f64 = profile
            .betas
            .iter()
            .zip(&report.su_payoffs)
            .map(|(beta, su)| beta * su)
            .sum();
        prop_assert!(
            rel_close(report.pu_payoff + rents, report.welfare, 1e-9),
            "pu {} + rents {} != welfare {}",
            report.pu_payoff,
            rents,
            report.welfare
        );
    }

    /// Installments depend only on the capability ladder and revenue, so
    /// rescaling the effort-cost coefficient must not move them by a single
    /// bit (down payments do move).
    #[test]
    fn installments_ignore_the_cost_coefficient_bitwise(
        seed in any::<u64>(),
        scale in prop::sample::select(vec![0.1f64, 3.7, 10.0]),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (profile, params) = loose_market(&mut rng);
        let scaled = MarketParams::new(params.revenue_r, params.cost_c * scale).unwrap();
        let a = solve_joint(&profile, &params).unwrap();
        let b = solve_joint(&profile, &scaled).unwrap();
        for (ca, cb) in a.menu.iter().zip(b.menu.iter()) {
            prop_assert_eq!(
                ca.installment_r.to_bits(),
                cb.installment_r.to_bits(),
                "installments must be bitwise invariant to c"
            );
        }
    }

    /// Scaling every capability by k and the cost coefficient by k² leaves
    /// the whole solution invariant (the model only sees θ²/c).
    #[test]
    fn joint_scaling_of_capability_and_cost_preserves_the_solution(
        seed in any::<u64>(),
        k in 0.3f64..3.0,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (profile, params) = loose_market(&mut rng);
        let scaled_profile = contract_forge::TypeProfile::new(
            profile.thetas.iter().map(|t| t * k).collect(),
            profile.betas.clone(),
        )
        .unwrap();
        let scaled_params =
            MarketParams::new(params.revenue_r, params.cost_c * k * k).unwrap();
        let a = solve_joint(&profile, &params).unwrap();
        let b = solve_joint(&scaled_profile, &scaled_params).unwrap();
        prop_assert!(rel_close(a.pu_payoff, b.pu_payoff, 1e-9));
        for (ca, cb) in a.menu.iter().zip(b.menu.iter()) {
            prop_assert!(rel_close(ca.installment_r, cb.installment_r, 1e-9));
            prop_assert!(rel_close(ca.down_payment_t, cb.down_payment_t, 1e-9));
        }
    }

    /// On regular markets the solved joint menu is monotone, passes the full
    /// incentive audit, and every type picks its own line.
    #[test]
    fn joint_menus_are_monotone_feasible_and_self_selecting(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (profile, params) = regular_market(&mut rng);
        prop_assert!(passes_regularity_screen(&profile, &params));
        let report = solve_joint(&profile, &params).unwrap();
        let n = profile.n();

        for i in 1..n {
            prop_assert!(
                report.menu[i].installment_r <= report.menu[i - 1].installment_r,
                "installments must not rise with capability"
            );
            prop_assert!(
                report.menu[i].down_payment_t >= report.menu[i - 1].down_payment_t,
                "down payments must not fall with capability"
            );
            prop_assert!(
                report.su_payoffs[i] >= report.su_payoffs[i - 1] - 1e-12,
                "information rents must rise with capability"
            );
        }
        prop_assert_eq!(report.menu[n - 1].installment_r, 0.0, "top type pays no installment");

        let audit = check_constraints(&report.menu, &profile, &params, EQUALITY_TOL).unwrap();
        prop_assert!(audit.is_feasible(), "audit failed: {audit:?}");
        prop_assert!(audit.ir_slack[0].abs() <= 1e-9, "weakest type's IR must bind");

        for (i, &theta) in profile.thetas.iter().enumerate() {
            prop_assert_eq!(
                select_contract(theta, &report.menu, &params, Some(i)),
                i,
                "type {} must prefer its own line",
                i
            );
        }
    }

    /// The observable-effort benchmark extracts every unit of surplus: zero
    /// installments and *exactly* zero SU payoffs.
    #[test]
    fn observable_effort_menus_extract_all_surplus_exactly(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (profile, params) = loose_market(&mut rng);
        let report = solve_adverse_only(&profile, &params).unwrap();
        for (contract, su) in report.menu.iter().zip(&report.su_payoffs) {
            prop_assert_eq!(contract.installment_r, 0.0);
            prop_assert_eq!(*su, 0.0, "surplus extraction must be exact, not approximate");
        }
    }

    /// The reimbursement regime hands the full revenue right back as the
    /// installment, funds effort upfront, and leaves exactly zero rent.
    #[test]
    fn reimbursement_menus_leave_no_rent_exactly(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (profile, params) = loose_market(&mut rng);
        let effort = default_fixed_effort(&profile, &params).unwrap();
        let params = MarketParams::with_fixed_effort(params.revenue_r, params.cost_c, effort)
            .unwrap();
        let report = solve_moral_only(&profile, &params).unwrap();
        for ((contract, su), e) in report.menu.iter().zip(&report.su_payoffs).zip(&report.efforts)
        {
            prop_assert!(contract.down_payment_t < 0.0, "the PU must pay the SU upfront");
            prop_assert_eq!(contract.installment_r, params.revenue_r);
            prop_assert_eq!(*su, 0.0);
            prop_assert_eq!(*e, effort);
        }
    }

    /// With effort observable the PU attains first-best welfare, which caps
    /// the payoff of both friction regimes.
    #[test]
    fn the_observable_effort_payoff_dominates_both_frictions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (profile, params) = loose_market(&mut rng);
        let effort = default_fixed_effort(&profile, &params).unwrap();
        let with_effort =
            MarketParams::with_fixed_effort(params.revenue_r, params.cost_c, effort).unwrap();
        let first_best = solve_adverse_only(&profile, &params).unwrap().pu_payoff;
        let joint = solve_joint(&profile, &params).unwrap().pu_payoff;
        let reimbursed = solve_moral_only(&profile, &with_effort).unwrap().pu_payoff;
        let slack = 1e-9 * first_best.abs().max(1.0);
        prop_assert!(first_best >= joint - slack, "first-best {first_best} < joint {joint}");
        prop_assert!(
            first_best >= reimbursed - slack,
            "first-best {first_best} < reimbursement {reimbursed}"
        );
    }
}
