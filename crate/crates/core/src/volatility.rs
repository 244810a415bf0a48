//! Conditional-variance models: EWMA, ARCH(1), and GARCH(1,1).
//!
//! The GARCH(1,1) recursion (Bollerslev 1986) is
//!
//! ```text
//! σ²_t = ω + α·ε²_{t−1} + β·σ²_{t−1},   ε_t = r_t − μ,
//! ```
//!
//! with ARCH(1) (Engle 1982) the β = 0 special case and EWMA the
//! intercept-free boundary σ²_t = λσ²_{t−1} + (1−λ)r²_{t−1}. Fitting is
//! Gaussian quasi-maximum-likelihood with a deterministic derivative-free
//! optimizer, so refitting identical inputs is bit-identical.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::optim::{minimize, SimplexOptions};
use crate::scalar::{mean, sample_variance, Scalar};
use crate::series::ReturnSeries;

/// ln(2π), the per-observation constant of the Gaussian log-likelihood.
const LN_TWO_PI: f64 = 2.0 * crate::normal::LN_SQRT_2PI;

/// GARCH(1,1) parameters. `omega` is the variance intercept, `alpha` the
/// shock weight, `beta` the persistence weight, `mu` the constant mean of
/// the return process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GarchParams<F> {
    pub omega: F,
    pub alpha: F,
    pub beta: F,
    pub mu: F,
}

impl<F: Scalar> GarchParams<F> {
    pub fn new(omega: F, alpha: F, beta: F, mu: F) -> Result<Self> {
        let params = GarchParams {
            omega,
            alpha,
            beta,
            mu,
        };
        params.validate()?;
        Ok(params)
    }

    /// Checks positivity and covariance stationarity (α + β < 1).
    pub fn validate(&self) -> Result<()> {
        if !(self.omega > F::zero()) || !self.omega.is_finite() {
            return Err(Error::invalid(
                "omega",
                format!("must be > 0, got {}", self.omega),
            ));
        }
        if !(self.alpha >= F::zero()) || !self.alpha.is_finite() {
            return Err(Error::invalid(
                "alpha",
                format!("must be ≥ 0, got {}", self.alpha),
            ));
        }
        if !(self.beta >= F::zero()) || !self.beta.is_finite() {
            return Err(Error::invalid(
                "beta",
                format!("must be ≥ 0, got {}", self.beta),
            ));
        }
        if !(self.alpha + self.beta < F::one()) {
            return Err(Error::invalid(
                "alpha+beta",
                format!(
                    "must be < 1 for stationarity, got {}",
                    self.alpha + self.beta
                ),
            ));
        }
        if !self.mu.is_finite() {
            return Err(Error::invalid(
                "mu",
                format!("must be finite, got {}", self.mu),
            ));
        }
        Ok(())
    }

    /// Long-run variance ω/(1−α−β) implied by stationarity.
    pub fn unconditional_variance(&self) -> Result<F> {
        self.validate()?;
        Ok(self.omega / (F::one() - self.alpha - self.beta))
    }
}

/// Free function spelling of [`GarchParams::unconditional_variance`].
pub fn unconditional_variance<F: Scalar>(params: &GarchParams<F>) -> Result<F> {
    params.unconditional_variance()
}

/// One step of the GARCH recursion. Kept as the single shared expression so
/// every caller (paths, likelihood, forecasts, and the nonlinear extension in
/// [`crate::chaos`]) produces bit-identical arithmetic.
#[inline]
pub(crate) fn garch_step<F: Scalar>(
    omega: F,
    alpha: F,
    beta: F,
    eps_sq_prev: F,
    sigma2_prev: F,
) -> F {
    omega + alpha * eps_sq_prev + beta * sigma2_prev
}

/// How to seed σ²_1 when rolling a variance recursion forward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VarianceSeed<F> {
    /// An explicit starting variance (must be > 0).
    Value(F),
    /// The long-run variance ω/(1−α−β); requires α + β < 1.
    Unconditional,
}

impl<F: Scalar> VarianceSeed<F> {
    fn resolve(self, params: &GarchParams<F>) -> Result<F> {
        match self {
            VarianceSeed::Value(v) => {
                if !(v > F::zero()) || !v.is_finite() {
                    return Err(Error::invalid(
                        "seed_variance",
                        format!("must be > 0, got {v}"),
                    ));
                }
                Ok(v)
            }
            VarianceSeed::Unconditional => params.unconditional_variance(),
        }
    }
}

/// EWMA (RiskMetrics-style) parameters: decay λ in [0, 1] and a positive
/// seed variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EwmaParams<F> {
    pub lambda: F,
    pub seed_variance: F,
}

impl<F: Scalar> EwmaParams<F> {
    pub fn new(lambda: F, seed_variance: F) -> Result<Self> {
        let params = EwmaParams {
            lambda,
            seed_variance,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda >= F::zero() && self.lambda <= F::one()) {
            return Err(Error::invalid(
                "lambda",
                format!("must lie in [0, 1], got {}", self.lambda),
            ));
        }
        if !(self.seed_variance > F::zero()) || !self.seed_variance.is_finite() {
            return Err(Error::invalid(
                "seed_variance",
                format!("must be > 0, got {}", self.seed_variance),
            ));
        }
        Ok(())
    }
}

/// σ²_t path of the EWMA recursion, aligned to the return series
/// (σ²_1 = seed, σ²_t = λσ²_{t−1} + (1−λ)r²_{t−1}).
pub fn ewma_variance_path<F: Scalar>(
    series: &ReturnSeries<F>,
    params: &EwmaParams<F>,
) -> Result<Vec<F>> {
    params.validate()?;
    let rs = series.values();
    let mut path = Vec::with_capacity(rs.len());
    let mut sigma2 = params.seed_variance;
    path.push(sigma2);
    for &r_prev in &rs[..rs.len() - 1] {
        sigma2 = params.lambda * sigma2 + (F::one() - params.lambda) * r_prev * r_prev;
        path.push(sigma2);
    }
    Ok(path)
}

/// σ²_t path of the GARCH(1,1) recursion, aligned to the return series.
pub fn garch_variance_path<F: Scalar>(
    series: &ReturnSeries<F>,
    params: &GarchParams<F>,
    seed: VarianceSeed<F>,
) -> Result<Vec<F>> {
    params.validate()?;
    let rs = series.values();
    let mut path = Vec::with_capacity(rs.len());
    let mut sigma2 = seed.resolve(params)?;
    path.push(sigma2);
    for &r_prev in &rs[..rs.len() - 1] {
        let eps_prev = r_prev - params.mu;
        sigma2 = garch_step(
            params.omega,
            params.alpha,
            params.beta,
            eps_prev * eps_prev,
            sigma2,
        );
        path.push(sigma2);
    }
    Ok(path)
}

/// Gaussian quasi-log-likelihood L = −½ Σ_t [ln 2π + ln σ²_t + ε²_t/σ²_t]
/// over the seeded variance path.
pub fn garch_log_likelihood<F: Scalar>(
    series: &ReturnSeries<F>,
    params: &GarchParams<F>,
    seed: VarianceSeed<F>,
) -> Result<F> {
    params.validate()?;
    let ln_two_pi = F::cst(LN_TWO_PI);
    let half = F::cst(0.5);
    let mut sigma2 = seed.resolve(params)?;
    let mut acc = F::zero();
    for (t, &r) in series.values().iter().enumerate() {
        if t > 0 {
            let eps_prev = series.values()[t - 1] - params.mu;
            sigma2 = garch_step(
                params.omega,
                params.alpha,
                params.beta,
                eps_prev * eps_prev,
                sigma2,
            );
        }
        let eps = r - params.mu;
        acc = acc + ln_two_pi + sigma2.ln() + eps * eps / sigma2;
    }
    Ok(-half * acc)
}

/// A fitted GARCH(1,1) model. `variance_path` and `residuals` (ε_t = r_t − μ̂)
/// are aligned to the fitted series; `converged` is true only when the
/// optimizer met its termination tolerance within the iteration budget.
#[derive(Debug, Clone, PartialEq)]
pub struct GarchFit<F> {
    pub params: GarchParams<F>,
    pub variance_path: Vec<F>,
    pub residuals: Vec<F>,
    pub log_likelihood: F,
    pub converged: bool,
    pub iterations: usize,
}

impl<F: Scalar> Serialize for GarchFit<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GarchFit", 7)?;
        st.serialize_field("omega", &self.params.omega.as_f64())?;
        st.serialize_field("alpha", &self.params.alpha.as_f64())?;
        st.serialize_field("beta", &self.params.beta.as_f64())?;
        st.serialize_field("mu", &self.params.mu.as_f64())?;
        st.serialize_field("log_likelihood", &self.log_likelihood.as_f64())?;
        st.serialize_field("converged", &self.converged)?;
        st.serialize_field("iterations", &self.iterations)?;
        st.end()
    }
}

/// Optimizer settings for [`fit_garch`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig<F> {
    /// Absolute tolerance on the log-likelihood spread of the simplex.
    pub tolerance: F,
    /// Iteration budget per start point.
    pub max_iterations: usize,
}

impl<F: Scalar> Default for FitConfig<F> {
    fn default() -> Self {
        FitConfig {
            tolerance: F::cst(1e-8),
            max_iterations: 10_000,
        }
    }
}

/// Stationarity margin: α + β is kept strictly below 1 − δ during fitting.
const STATIONARITY_MARGIN: f64 = 1e-6;

/// Fixed multi-start grid for the optimizer, as (α₀, β₀) pairs. Four points
/// covering low/high shock and persistence regimes; ω₀ is chosen so each
/// start's long-run variance matches the sample variance.
const FIT_STARTS: [(f64, f64); 4] = [(0.05, 0.90), (0.10, 0.80), (0.02, 0.95), (0.25, 0.55)];

fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// Maps the optimizer's unconstrained coordinates (a, b, c, m) onto valid
/// GARCH parameters: ω = exp(a), α = logistic(b)·(1−δ),
/// β = logistic(c)·(1−α−δ), μ = m, with δ the stationarity margin.
fn params_from_unconstrained<F: Scalar>(x: &[f64]) -> GarchParams<F> {
    let omega = x[0].exp();
    let alpha = logistic(x[1]) * (1.0 - STATIONARITY_MARGIN);
    let beta = logistic(x[2]) * (1.0 - alpha - STATIONARITY_MARGIN);
    GarchParams {
        omega: F::cst(omega),
        alpha: F::cst(alpha),
        beta: F::cst(beta),
        mu: F::cst(x[3]),
    }
}

fn unconstrained_from_params(omega: f64, alpha: f64, beta: f64, mu: f64) -> [f64; 4] {
    let a = omega.ln();
    let b = logit(alpha / (1.0 - STATIONARITY_MARGIN));
    let c = logit(beta / (1.0 - alpha - STATIONARITY_MARGIN));
    [a, b, c, mu]
}

/// Fits GARCH(1,1) by quasi-maximum likelihood.
///
/// The search runs a deterministic Nelder–Mead simplex from a fixed
/// four-point start grid over a transformed unconstrained space, so the
/// stationarity constraint can never be violated and refitting the same
/// series is bit-identical. σ²_1 is seeded with the sample variance.
///
/// Errors on series shorter than 50 observations or with zero variance.
/// If every start exhausts its iteration budget the best point found is
/// still returned, with `converged = false`.
pub fn fit_garch<F: Scalar>(series: &ReturnSeries<F>, config: FitConfig<F>) -> Result<GarchFit<F>> {
    let rs = series.values();
    if rs.len() < 50 {
        return Err(Error::InsufficientData(format!(
            "GARCH fitting needs at least 50 observations, got {}",
            rs.len()
        )));
    }
    // exact-constancy check: the rounded mean can leave a tiny nonzero
    // sample variance on a constant series, so `> 0` alone is not enough
    if rs.iter().all(|&r| r == rs[0]) {
        return Err(Error::invalid(
            "series",
            "zero variance (constant series) — nothing to fit",
        ));
    }
    let sample_var = sample_variance(rs);
    if !(sample_var > F::zero()) {
        return Err(Error::invalid(
            "series",
            "zero variance (constant series) — nothing to fit",
        ));
    }
    let sample_mean = mean(rs);

    let seed = VarianceSeed::Value(sample_var);
    let objective = |x: &[f64]| -> f64 {
        let params = params_from_unconstrained::<F>(x);
        if params.validate().is_err() {
            return f64::INFINITY;
        }
        match garch_log_likelihood(series, &params, seed) {
            Ok(ll) if ll.is_finite() => -ll.as_f64(),
            _ => f64::INFINITY,
        }
    };

    let opts = SimplexOptions {
        tolerance: config.tolerance.as_f64(),
        max_iterations: config.max_iterations,
        ..SimplexOptions::default()
    };
    let mut best: Option<crate::optim::SimplexResult<f64>> = None;
    for &(alpha0, beta0) in &FIT_STARTS {
        let omega0 = sample_var.as_f64() * (1.0 - alpha0 - beta0);
        let x0 = unconstrained_from_params(omega0, alpha0, beta0, sample_mean.as_f64());
        let run = minimize(objective, &x0, &opts);
        let better = match &best {
            None => true,
            Some(b) => run.value < b.value,
        };
        if better {
            best = Some(run);
        }
    }
    let best = best.expect("at least one start point");

    let params = params_from_unconstrained::<F>(&best.x);
    let variance_path = garch_variance_path(series, &params, seed)?;
    let residuals: Vec<F> = rs.iter().map(|&r| r - params.mu).collect();
    let log_likelihood = garch_log_likelihood(series, &params, seed)?;
    Ok(GarchFit {
        params,
        variance_path,
        residuals,
        log_likelihood,
        converged: best.converged,
        iterations: best.iterations,
    })
}

/// Multi-step variance forecast from the end of a fitted path:
/// σ²_{T+1} = ω + αε²_T + βσ²_T, then σ²_{T+h} = ω + (α+β)·σ²_{T+h−1},
/// which converges monotonically to the unconditional variance.
pub fn forecast_variance<F: Scalar>(fit: &GarchFit<F>, horizon: usize) -> Result<Vec<F>> {
    fit.params.validate()?;
    if horizon == 0 {
        return Err(Error::invalid("horizon", "must be ≥ 1"));
    }
    let (last_sigma2, last_eps) = match (fit.variance_path.last(), fit.residuals.last()) {
        (Some(&s), Some(&e)) => (s, e),
        _ => {
            return Err(Error::InsufficientData(
                "fit has an empty variance path".into(),
            ))
        }
    };
    let p = &fit.params;
    let mut out = Vec::with_capacity(horizon);
    let mut sigma2 = garch_step(p.omega, p.alpha, p.beta, last_eps * last_eps, last_sigma2);
    out.push(sigma2);
    let persistence = p.alpha + p.beta;
    for _ in 1..horizon {
        sigma2 = p.omega + persistence * sigma2;
        out.push(sigma2);
    }
    Ok(out)
}
