//! Value-at-Risk: estimation (parametric, historical, filtered historical
//! simulation, extreme-value tail), Kupiec backtesting, and portfolio
//! aggregation/decomposition.
//!
//! Conventions, fixed globally:
//! - VaR is reported as a **positive loss fraction**; negative computed
//!   quantiles clamp to 0.
//! - Empirical quantiles interpolate linearly between order statistics with
//!   plotting position (k−1)/(n−1) (see [`crate::stats`]).
//! - A backtest violation is the strict inequality −r_t > VaR; ties count
//!   as survival.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result, Warned};
use crate::normal;
use crate::scalar::{mean, sample_variance, Scalar};
use crate::series::ReturnSeries;
use crate::stats::quantile;
use crate::volatility::{
    fit_garch, forecast_variance, garch_variance_path, FitConfig, GarchFit, GarchParams,
    VarianceSeed,
};

/// Estimation method behind a [`VarEstimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarMethod {
    ParametricNormal,
    Historical,
    Fhs,
    EvtGpd,
    MonteCarlo,
}

impl VarMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            VarMethod::ParametricNormal => "parametric_normal",
            VarMethod::Historical => "historical",
            VarMethod::Fhs => "fhs",
            VarMethod::EvtGpd => "evt_gpd",
            VarMethod::MonteCarlo => "monte_carlo",
        }
    }
}

/// Broad risk taxonomy used as report metadata only — no quantification is
/// attached to a category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiskCategory {
    Market,
    Credit,
    Operational,
    Rollover,
    Transaction,
    ForeignExchange,
    Reputation,
    EmergingMarkets,
    Environmental,
    Geopolitical,
}

/// A single VaR figure: the loss fraction not exceeded with probability
/// `level` over `horizon_periods` periods, estimated as of `as_of_index`
/// in the source series (0 when no series was involved).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarEstimate<F> {
    pub level: F,
    pub horizon_periods: u32,
    pub value: F,
    pub method: VarMethod,
    pub as_of_index: usize,
}

pub(crate) fn validate_level<F: Scalar>(level: F) -> Result<()> {
    if !(level > F::zero() && level < F::one()) {
        return Err(Error::invalid(
            "level",
            format!("must lie strictly between 0 and 1, got {level}"),
        ));
    }
    Ok(())
}

/// Gaussian VaR: value = max(0, −(mu − sigma·z_level)). With mu = 0 this is
/// sigma·z_level — VaR proportional to volatility.
pub fn parametric_var<F: Scalar>(mu: F, sigma: F, level: F) -> Result<VarEstimate<F>> {
    validate_level(level)?;
    if !(sigma >= F::zero()) || !sigma.is_finite() {
        return Err(Error::invalid("sigma", format!("must be ≥ 0, got {sigma}")));
    }
    if !mu.is_finite() {
        return Err(Error::invalid("mu", format!("must be finite, got {mu}")));
    }
    let z = normal::inv_cdf(level).expect("level validated to lie in (0,1)");
    let value = (-(mu - sigma * z)).max(F::zero());
    Ok(VarEstimate {
        level,
        horizon_periods: 1,
        value,
        method: VarMethod::ParametricNormal,
        as_of_index: 0,
    })
}

/// Empirical-quantile VaR. Refuses series shorter than 20 returns and warns
/// below 100, where the tail quantile rests on a handful of points.
pub fn historical_var<F: Scalar>(
    series: &ReturnSeries<F>,
    level: F,
) -> Result<Warned<VarEstimate<F>>> {
    validate_level(level)?;
    let n = series.len();
    if n < 20 {
        return Err(Error::InsufficientData(format!(
            "historical VaR needs at least 20 returns, got {n}"
        )));
    }
    let q = quantile(series.values(), F::one() - level)?;
    let estimate = VarEstimate {
        level,
        horizon_periods: 1,
        value: (-q).max(F::zero()),
        method: VarMethod::Historical,
        as_of_index: n - 1,
    };
    let mut warnings = Vec::new();
    if n < 100 {
        warnings.push(format!(
            "historical VaR estimated from only {n} returns; quantiles below 100 observations are noisy"
        ));
    }
    Ok(Warned::new(estimate, warnings))
}

/// Filtered historical simulation: devolatilize residuals with the fitted
/// σ_t path, take the empirical quantile of z_t = ε_t/σ_t, and revolatilize
/// with the one-step-ahead forecast σ_{T+1}.
pub fn fhs_var<F: Scalar>(
    series: &ReturnSeries<F>,
    fit: &GarchFit<F>,
    level: F,
) -> Result<VarEstimate<F>> {
    validate_level(level)?;
    let n = series.len();
    if fit.variance_path.len() != n || fit.residuals.len() != n {
        return Err(Error::invalid(
            "fit",
            format!(
                "variance path ({}) and residuals ({}) must both match the series length ({n})",
                fit.variance_path.len(),
                fit.residuals.len()
            ),
        ));
    }
    if n < 100 {
        return Err(Error::InsufficientData(format!(
            "filtered historical simulation needs at least 100 returns, got {n}"
        )));
    }
    let mut z = Vec::with_capacity(n);
    for (t, (&sigma2, &eps)) in fit.variance_path.iter().zip(&fit.residuals).enumerate() {
        if !(sigma2 > F::zero()) || !sigma2.is_finite() {
            return Err(Error::Numerical(format!(
                "degenerate variance {sigma2} at index {t} — cannot standardize residuals"
            )));
        }
        z.push(eps / sigma2.sqrt());
    }
    let q = quantile(&z, F::one() - level)?;
    let sigma_next = forecast_variance(fit, 1)?[0].sqrt();
    let value = (-(fit.params.mu + sigma_next * q)).max(F::zero());
    Ok(VarEstimate {
        level,
        horizon_periods: 1,
        value,
        method: VarMethod::Fhs,
        as_of_index: n - 1,
    })
}

/// A generalized Pareto fit to the tail of standardized losses above a
/// threshold (the McNeil–Frey two-step approach).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GpdTailFit<F> {
    /// Threshold u (empirical quantile of losses at the requested level).
    pub threshold: F,
    /// GPD shape ξ; > 0 is heavy-tailed, ξ = 0 the exponential limit.
    pub xi: F,
    /// GPD scale β > 0.
    pub beta_gpd: F,
    /// Total number of standardized losses the fit saw.
    pub n: usize,
    /// Number of exceedances above the threshold.
    pub n_exceed: usize,
    /// False when the tail optimizer exhausted its budget (best-so-far fit).
    pub converged: bool,
}

/// Shape values closer to zero than this are routed to the exponential
/// limit formulas (the GPD density and quantile are removable-singular
/// in ξ at 0).
const XI_EXPONENTIAL_LIMIT: f64 = 1e-6;

/// Fits a GPD to the exceedances of `standardized_losses` above the
/// empirical `threshold_quantile`, by maximum likelihood over
/// (ξ unconstrained, β = exp(b)) with a deterministic simplex search.
///
/// Needs at least 10 exceedances; below that a tail fit is noise.
pub fn fit_gpd_tail<F: Scalar>(
    standardized_losses: &[F],
    threshold_quantile: F,
) -> Result<GpdTailFit<F>> {
    if !(threshold_quantile > F::zero() && threshold_quantile < F::one()) {
        return Err(Error::invalid(
            "threshold_quantile",
            format!("must lie strictly between 0 and 1, got {threshold_quantile}"),
        ));
    }
    for (i, x) in standardized_losses.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::invalid(
                "standardized_losses",
                format!("non-finite value at index {i}"),
            ));
        }
    }
    let u = quantile(standardized_losses, threshold_quantile)?;
    let exceedances: Vec<f64> = standardized_losses
        .iter()
        .filter(|&&x| x > u)
        .map(|&x| (x - u).as_f64())
        .collect();
    let n_exceed = exceedances.len();
    if n_exceed < 10 {
        return Err(Error::InsufficientData(format!(
            "GPD tail fit needs at least 10 exceedances above the threshold, got {n_exceed}"
        )));
    }

    // Negative log-likelihood; +∞ outside the support constraint 1 + ξy/β > 0.
    let nll = |x: &[f64]| -> f64 {
        let xi = x[0];
        let beta = x[1].exp();
        if !beta.is_finite() || beta <= 0.0 {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        if xi.abs() < XI_EXPONENTIAL_LIMIT {
            for &y in &exceedances {
                acc += x[1] + y / beta;
            }
        } else {
            for &y in &exceedances {
                let arg = 1.0 + xi * y / beta;
                if arg <= 0.0 {
                    return f64::INFINITY;
                }
                acc += x[1] + (1.0 + 1.0 / xi) * arg.ln();
            }
        }
        if acc.is_nan() {
            f64::INFINITY
        } else {
            acc
        }
    };

    // Moment start: for a GPD, E[y] = β/(1−ξ) and Var[y] = β²/((1−ξ)²(1−2ξ)),
    // so ξ₀ = (1 − m²/v)/2 and β₀ = m(1−ξ₀). Clamped to a sane box in case the
    // sample moments are wild.
    let m = exceedances.iter().sum::<f64>() / n_exceed as f64;
    let v = exceedances.iter().map(|y| (y - m).powi(2)).sum::<f64>() / (n_exceed as f64 - 1.0);
    let xi0 = if v > 0.0 {
        (0.5 * (1.0 - m * m / v)).clamp(-0.45, 0.9)
    } else {
        0.1
    };
    let beta0 = (m * (1.0 - xi0)).max(f64::MIN_POSITIVE);

    let opts = crate::optim::SimplexOptions {
        tolerance: 1e-10,
        max_iterations: 10_000,
        ..crate::optim::SimplexOptions::default()
    };
    let run = crate::optim::minimize(nll, &[xi0, beta0.ln()], &opts);

    Ok(GpdTailFit {
        threshold: u,
        xi: F::cst(run.x[0]),
        beta_gpd: F::cst(run.x[1].exp()),
        n: standardized_losses.len(),
        n_exceed,
        converged: run.converged,
    })
}

/// EVT quantile of the standardized loss distribution implied by a GPD tail
/// fit, revolatilized into a VaR:
///
/// ```text
/// q = u + (β/ξ)·[((n/n_exceed)(1−level))^(−ξ) − 1]      (ξ ≠ 0)
/// q = u + β·ln(n_exceed / (n(1−level)))                 (ξ = 0)
/// value = max(0, −(mu − sigma_next·q))
/// ```
///
/// `level` must reach into the fitted tail: 1−level ≤ n_exceed/n.
pub fn evt_var<F: Scalar>(
    fit_tail: &GpdTailFit<F>,
    sigma_next: F,
    mu: F,
    level: F,
) -> Result<VarEstimate<F>> {
    validate_level(level)?;
    if !(sigma_next > F::zero()) || !sigma_next.is_finite() {
        return Err(Error::invalid(
            "sigma_next",
            format!("must be > 0, got {sigma_next}"),
        ));
    }
    if !mu.is_finite() {
        return Err(Error::invalid("mu", format!("must be finite, got {mu}")));
    }
    let n = fit_tail.n as f64;
    let n_exceed = fit_tail.n_exceed as f64;
    let tail_prob = (F::one() - level).as_f64();
    if tail_prob > n_exceed / n {
        return Err(Error::invalid(
            "level",
            format!(
                "must reach beyond the fitted tail: 1−level = {tail_prob} exceeds n_exceed/n = {}",
                n_exceed / n
            ),
        ));
    }
    let xi = fit_tail.xi.as_f64();
    let beta = fit_tail.beta_gpd.as_f64();
    let u = fit_tail.threshold.as_f64();
    let ratio = (n / n_exceed) * tail_prob;
    let q = if xi.abs() < XI_EXPONENTIAL_LIMIT {
        u - beta * ratio.ln()
    } else {
        u + beta / xi * (ratio.powf(-xi) - 1.0)
    };
    let q = F::cst(q);
    let value = (-(mu - sigma_next * q)).max(F::zero());
    Ok(VarEstimate {
        level,
        horizon_periods: 1,
        value,
        method: VarMethod::EvtGpd,
        as_of_index: 0,
    })
}

/// Kupiec (1995) proportion-of-failures test outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BacktestResult<F> {
    pub n: usize,
    pub violations: usize,
    /// 1 − level: the violation rate a calibrated model should show.
    pub expected_rate: F,
    pub lr_statistic: F,
    pub p_value: F,
    pub reject_at_5pct: bool,
}

impl<F: Scalar> Serialize for BacktestResult<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BacktestResult", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("violations", &self.violations)?;
        st.serialize_field("lr", &self.lr_statistic.as_f64())?;
        st.serialize_field("p_value", &self.p_value.as_f64())?;
        st.serialize_field("reject_at_5pct", &self.reject_at_5pct)?;
        st.end()
    }
}

/// Kupiec proportion-of-failures likelihood-ratio test: under a calibrated
/// model, violations are Binomial(n, 1−level); the LR statistic is
/// asymptotically χ²(1). Terms with a zero count contribute 0 (0·ln 0 = 0).
pub fn kupiec_test<F: Scalar>(violations: usize, n: usize, level: F) -> Result<BacktestResult<F>> {
    validate_level(level)?;
    if n == 0 {
        return Err(Error::invalid(
            "n",
            "backtest needs at least one observation",
        ));
    }
    if violations > n {
        return Err(Error::invalid(
            "violations",
            format!("{violations} exceeds the number of observations {n}"),
        ));
    }
    let p = 1.0 - level.as_f64();
    let x = violations as f64;
    let nf = n as f64;
    // count·ln(prob) with the 0·ln 0 = 0 convention
    let term = |count: f64, prob: f64| if count == 0.0 { 0.0 } else { count * prob.ln() };
    let null = term(nf - x, 1.0 - p) + term(x, p);
    let alt = term(nf - x, 1.0 - x / nf) + term(x, x / nf);
    let lr = (2.0 * (alt - null)).max(0.0);
    let p_value = normal::chi2_sf_1df(lr);
    Ok(BacktestResult {
        n,
        violations,
        expected_rate: F::cst(p),
        lr_statistic: F::cst(lr),
        p_value: F::cst(p_value),
        reject_at_5pct: p_value < 0.05,
    })
}

/// VaR method rolled across backtest windows. Settings that the method
/// estimates per window may instead be pinned (`mu`/`sigma`), e.g. to
/// backtest against known process parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RollingEstimator<F> {
    /// Gaussian VaR from the window mean/standard deviation; either moment
    /// may be overridden with a fixed value.
    ParametricNormal { mu: Option<F>, sigma: Option<F> },
    /// Empirical-quantile VaR over the window.
    Historical,
    /// Filtered historical simulation; the GARCH parameters are refit every
    /// `refit_every` steps and the variance path is recomputed every window.
    Fhs { refit_every: usize },
}

/// One row of the rolling-backtest violation log.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ViolationRecord<F> {
    pub index: usize,
    pub return_value: F,
    pub var_value: F,
    pub violation: bool,
}

/// A rolling backtest: the aggregate Kupiec result plus the per-step log.
#[derive(Debug, Clone, PartialEq)]
pub struct RollingBacktest<F> {
    pub result: BacktestResult<F>,
    pub log: Vec<ViolationRecord<F>>,
}

/// Walks the series, estimating VaR at each t from the trailing `window`
/// observations and recording a violation when −r_t strictly exceeds it,
/// then aggregates with [`kupiec_test`]. Requires more than window + 10
/// observations so the test has at least a handful of points.
pub fn rolling_backtest<F: Scalar>(
    series: &ReturnSeries<F>,
    estimator: &RollingEstimator<F>,
    window: usize,
    level: F,
) -> Result<Warned<RollingBacktest<F>>> {
    validate_level(level)?;
    if window == 0 {
        return Err(Error::invalid("window", "must be ≥ 1"));
    }
    match estimator {
        RollingEstimator::ParametricNormal { mu, sigma } => {
            if let Some(m) = mu {
                if !m.is_finite() {
                    return Err(Error::invalid(
                        "mu",
                        format!("fixed mean must be finite, got {m}"),
                    ));
                }
            }
            if let Some(s) = sigma {
                if !(*s >= F::zero()) || !s.is_finite() {
                    return Err(Error::invalid(
                        "sigma",
                        format!("fixed volatility must be finite and ≥ 0, got {s}"),
                    ));
                }
            }
        }
        RollingEstimator::Fhs { refit_every } => {
            if *refit_every == 0 {
                return Err(Error::invalid("refit_every", "must be ≥ 1"));
            }
        }
        RollingEstimator::Historical => {}
    }
    let values = series.values();
    let n = values.len();
    if n <= window + 10 {
        return Err(Error::InsufficientData(format!(
            "rolling backtest needs more than window + 10 = {} observations, got {n}",
            window + 10
        )));
    }

    let mut warnings: Vec<String> = Vec::new();
    let mut note = |w: String| {
        if !warnings.contains(&w) {
            warnings.push(w);
        }
    };
    let window_series = |slice: &[F]| -> Result<ReturnSeries<F>> {
        ReturnSeries::new(slice.to_vec(), series.kind(), series.periods_per_year())
    };

    let mut log = Vec::with_capacity(n - window);
    let mut violations = 0usize;
    let mut cached_params: Option<GarchParams<F>> = None;
    let mut steps_since_refit = 0usize;

    for t in window..n {
        let slice = &values[t - window..t];
        let value = match estimator {
            RollingEstimator::ParametricNormal { mu, sigma } => {
                let m = mu.unwrap_or_else(|| mean(slice));
                let s = sigma.unwrap_or_else(|| sample_variance(slice).sqrt());
                parametric_var(m, s, level)?.value
            }
            RollingEstimator::Historical => {
                let est = historical_var(&window_series(slice)?, level)?;
                for w in est.warnings {
                    note(w);
                }
                est.value.value
            }
            RollingEstimator::Fhs { refit_every } => {
                let ws = window_series(slice)?;
                if cached_params.is_none() || steps_since_refit >= *refit_every {
                    let fit = fit_garch(&ws, FitConfig::default())?;
                    if !fit.converged {
                        note(format!("GARCH refit before index {t} did not converge"));
                    }
                    cached_params = Some(fit.params);
                    steps_since_refit = 0;
                }
                steps_since_refit += 1;
                let params = cached_params.expect("params freshly cached");
                let seed = VarianceSeed::Value(sample_variance(slice));
                let variance_path = garch_variance_path(&ws, &params, seed)?;
                let residuals: Vec<F> = slice.iter().map(|&r| r - params.mu).collect();
                let fit = GarchFit {
                    params,
                    variance_path,
                    residuals,
                    log_likelihood: F::zero(),
                    converged: true,
                    iterations: 0,
                };
                fhs_var(&ws, &fit, level)?.value
            }
        };
        if !value.is_finite() {
            return Err(Error::Numerical(format!(
                "VaR estimate at index {t} is not finite ({value})"
            )));
        }
        let violation = -values[t] > value;
        if violation {
            violations += 1;
        }
        log.push(ViolationRecord {
            index: t,
            return_value: values[t],
            var_value: value,
            violation,
        });
    }

    let result = kupiec_test(violations, n - window, level)?;
    Ok(Warned::new(RollingBacktest { result, log }, warnings))
}

/// Portfolio weights, per-asset volatilities, and their correlation matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PortfolioSpec<F> {
    pub weights: Vec<F>,
    pub volatilities: Vec<F>,
    pub correlations: Vec<Vec<F>>,
}

const WEIGHT_SUM_TOL: f64 = 1e-9;
const MATRIX_ENTRY_TOL: f64 = 1e-12;
const PSD_EIGENVALUE_TOL: f64 = -1e-10;

impl<F: Scalar> PortfolioSpec<F> {
    pub fn new(weights: Vec<F>, volatilities: Vec<F>, correlations: Vec<Vec<F>>) -> Result<Self> {
        let spec = PortfolioSpec {
            weights,
            volatilities,
            correlations,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks dimensions, weight normalization, σ ≥ 0, and that the
    /// correlation matrix is symmetric with unit diagonal, entries in
    /// [−1, 1], and positive semidefinite (smallest eigenvalue ≥ −1e−10,
    /// by a Jacobi eigendecomposition).
    pub fn validate(&self) -> Result<()> {
        let k = self.weights.len();
        if k == 0 {
            return Err(Error::invalid(
                "weights",
                "portfolio needs at least one asset",
            ));
        }
        if self.volatilities.len() != k || self.correlations.len() != k {
            return Err(Error::invalid(
                "portfolio",
                format!(
                    "dimension mismatch: {k} weights, {} volatilities, {} correlation rows",
                    self.volatilities.len(),
                    self.correlations.len()
                ),
            ));
        }
        let mut sum = 0.0;
        for w in &self.weights {
            if !w.is_finite() {
                return Err(Error::invalid("weights", format!("non-finite weight {w}")));
            }
            sum += w.as_f64();
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::invalid(
                "weights",
                format!("must sum to 1, got {sum}"),
            ));
        }
        for s in &self.volatilities {
            if !(*s >= F::zero()) || !s.is_finite() {
                return Err(Error::invalid(
                    "volatilities",
                    format!("must be finite and ≥ 0, got {s}"),
                ));
            }
        }
        for (i, row) in self.correlations.iter().enumerate() {
            if row.len() != k {
                return Err(Error::invalid(
                    "correlations",
                    format!("row {i} has {} entries, expected {k}", row.len()),
                ));
            }
            for (j, r) in row.iter().enumerate() {
                let r = r.as_f64();
                if !r.is_finite() || r.abs() > 1.0 + MATRIX_ENTRY_TOL {
                    return Err(Error::invalid(
                        "correlations",
                        format!("entry ({i},{j}) = {r} is outside [−1, 1]"),
                    ));
                }
                let rt = self.correlations[j][i].as_f64();
                if (r - rt).abs() > MATRIX_ENTRY_TOL {
                    return Err(Error::invalid(
                        "correlations",
                        format!("matrix is not symmetric at ({i},{j}): {r} vs {rt}"),
                    ));
                }
            }
            if (row[i].as_f64() - 1.0).abs() > MATRIX_ENTRY_TOL {
                return Err(Error::invalid(
                    "correlations",
                    format!("diagonal entry ({i},{i}) = {} must be 1", row[i]),
                ));
            }
        }
        let min_eig = min_symmetric_eigenvalue(&self.correlations);
        if min_eig < PSD_EIGENVALUE_TOL {
            return Err(Error::invalid(
                "correlations",
                format!("matrix is not positive semidefinite (smallest eigenvalue {min_eig:e})"),
            ));
        }
        Ok(())
    }

    fn assets(&self) -> usize {
        self.weights.len()
    }

    /// (Σw)_i with Σ_ij = ρ_ij σ_i σ_j.
    fn covariance_times_weights(&self) -> Vec<F> {
        (0..self.assets())
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.assets() {
                    acc = acc
                        + self.correlations[i][j]
                            * self.volatilities[i]
                            * self.volatilities[j]
                            * self.weights[j];
                }
                acc
            })
            .collect()
    }

    /// wᵀΣw.
    fn quadratic_form(&self) -> F {
        let sw = self.covariance_times_weights();
        let mut acc = F::zero();
        for (w, s) in self.weights.iter().zip(&sw) {
            acc = acc + *w * *s;
        }
        acc
    }
}

/// Portfolio volatility σ_p = √(wᵀΣw). Never exceeds Σ|w_i|σ_i, with
/// equality only under perfect positive correlation.
pub fn aggregate_portfolio_sigma<F: Scalar>(spec: &PortfolioSpec<F>) -> Result<F> {
    spec.validate()?;
    // the PSD tolerance admits quadratic forms a hair below zero
    Ok(spec.quadratic_form().max(F::zero()).sqrt())
}

/// Euler decomposition of a total VaR into per-asset contributions
/// total·w_i(Σw)_i/(wᵀΣw); exact additivity is an algebraic identity.
pub fn component_var<F: Scalar>(
    spec: &PortfolioSpec<F>,
    total_var: &VarEstimate<F>,
) -> Result<Vec<F>> {
    spec.validate()?;
    let quad = spec.quadratic_form();
    if !(quad > F::zero()) {
        return Err(Error::Numerical(
            "portfolio volatility is zero — Euler decomposition is undefined".into(),
        ));
    }
    let sw = spec.covariance_times_weights();
    Ok(spec
        .weights
        .iter()
        .zip(&sw)
        .map(|(&w, &s)| total_var.value * w * s / quad)
        .collect())
}

/// Smallest eigenvalue of a symmetric matrix by the cyclic Jacobi method.
/// The matrices here are small correlation matrices, where Jacobi is
/// simple, robust, and more than fast enough.
// The rotation updates touch columns p and q of every row k; indexed loops
// keep them in the textbook form.
#[allow(clippy::needless_range_loop)]
fn min_symmetric_eigenvalue<F: Scalar>(matrix: &[Vec<F>]) -> f64 {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix
        .iter()
        .map(|row| row.iter().map(|x| x.as_f64()).collect())
        .collect();
    if n == 1 {
        return a[0][0];
    }
    let frobenius: f64 = a
        .iter()
        .flatten()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(1.0);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q] * a[p][q])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-14 * frobenius {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                // rotation angle choosing the smaller root, which zeroes a_pq
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).fold(f64::INFINITY, f64::min)
}
