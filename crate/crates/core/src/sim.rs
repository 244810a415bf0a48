//! Monte Carlo simulation of geometric Brownian motion and Monte-Carlo VaR.
//!
//! Randomness follows the counter-based contract of [`crate::rng`]: the
//! normal draw for (path p, step k) is a pure function of (seed, p, k), so
//! paths can be filled on any number of worker threads and the output is
//! bit-identical. The price update is the exact GBM scheme
//! S_{t+1} = S_t·exp((μ − σ²/2)dt + σ√dt·Z), which has no discretization
//! bias at any step size.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng;
use crate::scalar::Scalar;
use crate::stats::quantile;
use crate::var::{validate_level, VarEstimate, VarMethod};

/// Geometric-Brownian-motion simulation settings. `mu` and `sigma` are
/// annualized; `dt` is the step size in years.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GbmParams<F> {
    pub s0: F,
    pub mu: F,
    pub sigma: F,
    pub dt: F,
    pub steps: usize,
    pub n_paths: usize,
    pub seed: u64,
}

impl<F: Scalar> GbmParams<F> {
    pub fn validate(&self) -> Result<()> {
        if !(self.s0 > F::zero()) || !self.s0.is_finite() {
            return Err(Error::invalid(
                "s0",
                format!("must be > 0, got {}", self.s0),
            ));
        }
        if !self.mu.is_finite() {
            return Err(Error::invalid(
                "mu",
                format!("must be finite, got {}", self.mu),
            ));
        }
        if !(self.sigma >= F::zero()) || !self.sigma.is_finite() {
            return Err(Error::invalid(
                "sigma",
                format!("must be ≥ 0, got {}", self.sigma),
            ));
        }
        if !(self.dt > F::zero()) || !self.dt.is_finite() {
            return Err(Error::invalid(
                "dt",
                format!("must be > 0, got {}", self.dt),
            ));
        }
        if self.steps == 0 {
            return Err(Error::invalid("steps", "must be ≥ 1"));
        }
        if self.n_paths == 0 {
            return Err(Error::invalid("n_paths", "must be ≥ 1"));
        }
        Ok(())
    }

    /// Per-step drift (μ − σ²/2)·dt and diffusion σ·√dt.
    fn step_coefficients(&self) -> (F, F) {
        let half = F::cst(0.5);
        let drift = (self.mu - half * self.sigma * self.sigma) * self.dt;
        let vol = self.sigma * self.dt.sqrt();
        (drift, vol)
    }
}

/// Simulated price paths, one row per path, `steps + 1` columns
/// (column 0 is the initial price).
#[derive(Debug, Clone, PartialEq)]
pub struct PathMatrix<F> {
    n_paths: usize,
    n_steps: usize,
    data: Vec<F>,
}

impl<F: Scalar> PathMatrix<F> {
    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    /// Number of time steps per path (the row length is `n_steps + 1`).
    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn path(&self, p: usize) -> &[F] {
        let w = self.n_steps + 1;
        &self.data[p * w..(p + 1) * w]
    }

    pub fn paths(&self) -> impl Iterator<Item = &[F]> + '_ {
        self.data.chunks_exact(self.n_steps + 1)
    }

    pub fn terminal_prices(&self) -> impl Iterator<Item = F> + '_ {
        self.paths().map(|row| row[self.n_steps])
    }
}

/// One multiplicative price update. The draw is addressed by (path, step),
/// never by call order, which is what makes parallel fills reproducible.
#[inline]
fn step_price<F: Scalar>(s: F, drift: F, vol: F, seed: u64, path: u64, step: u64) -> F {
    let z = rng::standard_normal_as::<F>(seed, path, step);
    s * (drift + vol * z).exp()
}

/// Simulates `n_paths` GBM paths in parallel. Output is bit-identical for a
/// fixed seed regardless of thread count. Non-finite prices (overflow from
/// extreme μ·steps) are reported as an error, never returned silently.
pub fn simulate_gbm_paths<F: Scalar>(params: &GbmParams<F>) -> Result<PathMatrix<F>> {
    params.validate()?;
    let (drift, vol) = params.step_coefficients();
    let width = params.steps + 1;
    let mut data = vec![F::zero(); params.n_paths * width];
    data.par_chunks_exact_mut(width)
        .enumerate()
        .for_each(|(p, row)| {
            let mut s = params.s0;
            row[0] = s;
            for k in 0..params.steps {
                s = step_price(s, drift, vol, params.seed, p as u64, k as u64);
                row[k + 1] = s;
            }
        });
    if let Some(bad) = data.iter().position(|x| !x.is_finite()) {
        return Err(Error::Numerical(format!(
            "price overflow at path {}, step {} — drift/volatility too extreme for the horizon",
            bad / width,
            bad % width
        )));
    }
    Ok(PathMatrix {
        n_paths: params.n_paths,
        n_steps: params.steps,
        data,
    })
}

/// Terminal prices only, computed without materializing the full matrix.
/// Arithmetic is step-for-step identical to [`simulate_gbm_paths`].
fn simulate_terminal_prices<F: Scalar>(params: &GbmParams<F>) -> Result<Vec<F>> {
    params.validate()?;
    let (drift, vol) = params.step_coefficients();
    let terminals: Vec<F> = (0..params.n_paths)
        .into_par_iter()
        .map(|p| {
            let mut s = params.s0;
            for k in 0..params.steps {
                s = step_price(s, drift, vol, params.seed, p as u64, k as u64);
            }
            s
        })
        .collect();
    if let Some(p) = terminals.iter().position(|x| !x.is_finite()) {
        return Err(Error::Numerical(format!(
            "price overflow at path {p} — drift/volatility too extreme for the horizon"
        )));
    }
    Ok(terminals)
}

/// Monte-Carlo VaR over the simulated horizon: losses ℓ = 1 − S_T/s0, value
/// = the empirical `level`-quantile of ℓ (clamped at 0). Needs at least
/// 1000 paths for the tail quantile to mean anything.
pub fn monte_carlo_var<F: Scalar>(params: &GbmParams<F>, level: F) -> Result<VarEstimate<F>> {
    validate_level(level)?;
    if params.n_paths < 1000 {
        return Err(Error::InsufficientData(format!(
            "Monte-Carlo VaR needs at least 1000 paths, got {}",
            params.n_paths
        )));
    }
    let terminals = simulate_terminal_prices(params)?;
    let losses: Vec<F> = terminals
        .iter()
        .map(|&s| F::one() - s / params.s0)
        .collect();
    let q = quantile(&losses, level)?;
    Ok(VarEstimate {
        level,
        horizon_periods: params.steps as u32,
        value: q.max(F::zero()),
        method: VarMethod::MonteCarlo,
        as_of_index: 0,
    })
}
