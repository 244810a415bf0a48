//! Cross-module invariants: property-based checks on the estimators plus
//! statistical consistency of the simulators viewed through the fitters.

use proptest::prelude::*;

use riskkit::chaos::simulate_ndc;
use riskkit::series::{ReturnKind, ReturnSeries};
use riskkit::stats::sample_excess_kurtosis;
use riskkit::var::{aggregate_portfolio_sigma, historical_var, parametric_var};
use riskkit::volatility::fit_garch;
use riskkit::{rng, FitConfig, GarchParams, NdcParams, PortfolioSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parametric_var_is_monotone_in_level_and_nonnegative(
        mu in -0.01..0.01f64,
        sigma in 1e-6..0.1f64,
        lo in 0.90..0.95f64,
        hi in 0.95..0.999f64,
    ) {
        let a = parametric_var(mu, sigma, lo).unwrap().value;
        let b = parametric_var(mu, sigma, hi).unwrap().value;
        prop_assert!(a >= 0.0);
        prop_assert!(b + 1e-15 >= a, "VaR fell from {a} to {b} as the level rose");
    }

    #[test]
    fn diversification_never_increases_portfolio_sigma(
        w in 0.05..0.95f64,
        s1 in 0.01..0.5f64,
        s2 in 0.01..0.5f64,
        rho in -0.99..0.99f64,
    ) {
        let spec = PortfolioSpec::new(
            vec![w, 1.0 - w],
            vec![s1, s2],
            vec![vec![1.0, rho], vec![rho, 1.0]],
        )
        .unwrap();
        let sigma = aggregate_portfolio_sigma(&spec).unwrap();
        let undiversified = w * s1 + (1.0 - w) * s2;
        prop_assert!(
            sigma <= undiversified + 1e-12,
            "σ_p = {sigma} exceeds the weighted sum {undiversified}"
        );
    }
}

/// With every extension switched off the NDC simulator is iid Gaussian;
/// its sample excess kurtosis at n = 100,000 should be statistically zero
/// (SE ≈ √(24/n) ≈ 0.0155, so ±0.2 is a very wide gate).
#[test]
fn degenerate_ndc_returns_have_gaussian_tails() {
    let params = NdcParams {
        core: GarchParams {
            omega: 1e-4,
            alpha: 0.0,
            beta: 0.0,
            mu: 0.0,
        },
        cycles: vec![],
        gamma: 0.0,
        delta: 0.0,
        r: 4.0,
        x0: 0.618_033_988_75,
        variance_floor: 1e-12,
    };
    let sim = simulate_ndc(&params, 100_000, 8).unwrap().value;
    let kurtosis = sample_excess_kurtosis(sim.returns.values()).unwrap();
    assert!(kurtosis.abs() < 0.2, "excess kurtosis {kurtosis}");
}

/// Fitting plain GARCH to NDC output with dormant extensions (γ = δ = 0)
/// recovers the generating persistence: α̂ + β̂ within ±0.03 of 0.98 at
/// n = 10,000.
#[test]
fn garch_fit_recovers_a_dormant_ndc_process() {
    let params = NdcParams {
        core: GarchParams {
            omega: 2e-6,
            alpha: 0.08,
            beta: 0.90,
            mu: 0.0,
        },
        cycles: vec![],
        gamma: 0.0,
        delta: 0.0,
        r: 4.0,
        x0: 0.618_033_988_75,
        variance_floor: 1e-18,
    };
    let sim = simulate_ndc(&params, 10_000, 21).unwrap().value;
    let fit = fit_garch(&sim.returns, FitConfig::default()).unwrap();
    assert!(fit.converged);
    let persistence = fit.params.alpha + fit.params.beta;
    assert!((persistence - 0.98).abs() < 0.03, "α̂ + β̂ = {persistence}");
}

/// On iid normal data the historical and parametric estimators must agree:
/// the empirical 99% quantile of 100,000 draws sits within a few percent
/// of the Gaussian one.
#[test]
fn historical_and_parametric_var_agree_on_gaussian_data() {
    let sigma = 0.02;
    let values: Vec<f64> = (0..100_000)
        .map(|i| sigma * rng::standard_normal(55, 0, i))
        .collect();
    let series = ReturnSeries::new(values, ReturnKind::Log, 252).unwrap();
    let hist = historical_var(&series, 0.99).unwrap().value.value;
    let para = parametric_var(0.0, sigma, 0.99).unwrap().value;
    assert!(
        (hist - para).abs() / para < 0.05,
        "historical {hist} vs parametric {para}"
    );
}
