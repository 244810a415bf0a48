//! Logistic-map chaos diagnostics and the nonlinear-dynamic-conditional
//! (NDC) variance process.
//!
//! The NDC process extends GARCH(1,1) with two extra variance drivers: a
//! multiplicative product of seasonal cycles and a chaotic logistic orbit,
//!
//! σ²_t = ω + α·ε²_{t−1} + β·σ²_{t−1} + γ·|C_t| + δ·x_t,
//!
//! floored at `variance_floor`. With γ = δ = 0 the recursion reduces
//! bit-for-bit to plain GARCH because the GARCH terms are evaluated through
//! the same shared expression ([`crate::volatility`]'s one-step update).
//! The chaos diagnostics (Lyapunov exponent, trajectory divergence) make
//! sensitivity to initial conditions measurable rather than anecdotal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Warned};
use crate::rng;
use crate::scalar::Scalar;
use crate::series::{ReturnKind, ReturnSeries};
use crate::volatility::{garch_step, GarchParams};

/// Orbit clamp budget: round-off can push r·x·(1−x) marginally outside
/// [0, 1] at r = 4; excursions are clamped and counted, and anything above
/// this rate means the iteration is numerically unreliable.
const MAX_CLAMP_RATE: f64 = 1e-3;

/// Lyapunov estimates shorter than this are dominated by transient noise.
const MIN_LYAPUNOV_STEPS: usize = 10_000;

/// One seasonal cycle A·sin(2πt/P + φ) entering the NDC interaction signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cycle<F> {
    pub amplitude: F,
    pub period: F,
    pub phase: F,
}

impl<F: Scalar> Cycle<F> {
    fn validate(&self, index: usize) -> Result<()> {
        if !(self.amplitude >= F::zero()) || !self.amplitude.is_finite() {
            return Err(Error::invalid(
                "cycles",
                format!(
                    "cycle {index}: amplitude must be ≥ 0, got {}",
                    self.amplitude
                ),
            ));
        }
        if !(self.period > F::zero()) || !self.period.is_finite() {
            return Err(Error::invalid(
                "cycles",
                format!("cycle {index}: period must be > 0, got {}", self.period),
            ));
        }
        if !self.phase.is_finite() {
            return Err(Error::invalid(
                "cycles",
                format!("cycle {index}: phase must be finite, got {}", self.phase),
            ));
        }
        Ok(())
    }
}

fn default_x0<F: Scalar>() -> F {
    F::cst(0.618_033_988_75)
}

/// NDC process parameters: a GARCH(1,1) core plus cycle and chaos loadings.
/// `gamma` weights |C_t|, `delta` weights the logistic state x_t, `r` is the
/// logistic growth rate, `x0` the initial map state (defaults to the golden
/// ratio conjugate, a known non-periodic point of the r = 4 map).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "F: Deserialize<'de> + Scalar"))]
pub struct NdcParams<F> {
    #[serde(flatten)]
    pub core: GarchParams<F>,
    pub cycles: Vec<Cycle<F>>,
    pub gamma: F,
    pub delta: F,
    pub r: F,
    #[serde(default = "default_x0")]
    pub x0: F,
    pub variance_floor: F,
}

impl<F: Scalar> NdcParams<F> {
    pub fn validate(&self) -> Result<()> {
        self.core.validate()?;
        for (i, cycle) in self.cycles.iter().enumerate() {
            cycle.validate(i)?;
        }
        if !(self.gamma >= F::zero()) || !self.gamma.is_finite() {
            return Err(Error::invalid(
                "gamma",
                format!("must be ≥ 0, got {}", self.gamma),
            ));
        }
        if !(self.delta >= F::zero()) || !self.delta.is_finite() {
            return Err(Error::invalid(
                "delta",
                format!("must be ≥ 0, got {}", self.delta),
            ));
        }
        validate_r(self.r)?;
        validate_x0(self.x0)?;
        if !(self.variance_floor > F::zero()) || !self.variance_floor.is_finite() {
            return Err(Error::invalid(
                "variance_floor",
                format!("must be > 0, got {}", self.variance_floor),
            ));
        }
        Ok(())
    }

    /// Non-fatal diagnostics: cycles with period ≤ 2 are sampled at or below
    /// the Nyquist rate, so they alias instead of resolving an oscillation.
    pub fn warnings(&self) -> Vec<String> {
        self.cycles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.period <= F::cst(2.0))
            .map(|(i, c)| {
                format!(
                    "cycle {i} has period {} ≤ 2 sampling intervals; it aliases \
                     instead of contributing a resolvable oscillation",
                    c.period
                )
            })
            .collect()
    }
}

fn validate_r<F: Scalar>(r: F) -> Result<()> {
    if !(r > F::zero()) || !(r <= F::cst(4.0)) {
        return Err(Error::invalid("r", format!("must be in (0, 4], got {r}")));
    }
    Ok(())
}

fn validate_x0<F: Scalar>(x0: F) -> Result<()> {
    if !(x0 > F::zero()) || !(x0 < F::one()) {
        return Err(Error::invalid("x0", format!("must be in (0, 1), got {x0}")));
    }
    Ok(())
}

/// One logistic-map step r·x·(1−x). Errors if the state has left [0, 1]
/// or the growth rate is outside (0, 4]; the result is clamped back into
/// [0, 1] if round-off pushes it marginally outside.
pub fn logistic_step<F: Scalar>(x: F, r: F) -> Result<F> {
    validate_r(r)?;
    if !(x >= F::zero()) || !(x <= F::one()) {
        return Err(Error::invalid("x", format!("must be in [0, 1], got {x}")));
    }
    let mut ignored = 0;
    Ok(clamped_logistic(x, r, &mut ignored))
}

/// Internal step with clamp accounting. Callers validate x and r up front.
fn clamped_logistic<F: Scalar>(x: F, r: F, clamped: &mut usize) -> F {
    let y = r * x * (F::one() - x);
    if y < F::zero() {
        *clamped += 1;
        F::zero()
    } else if y > F::one() {
        *clamped += 1;
        F::one()
    } else {
        y
    }
}

fn clamp_health(clamped: usize, total: usize) -> Result<()> {
    if total > 0 && clamped as f64 > MAX_CLAMP_RATE * total as f64 {
        return Err(Error::Numerical(format!(
            "logistic orbit clamped on {clamped} of {total} steps (> 0.1%); \
             the map iteration is numerically unreliable"
        )));
    }
    Ok(())
}

/// Advances the orbit one step. `None` signals collapse onto the
/// zero-derivative fixed point x = 1/2 (superstable; λ = −∞). Landing
/// exactly on any other fixed point gets a 1e−9 perturbation so the orbit
/// keeps sampling the attractor instead of stalling.
fn advance_guarded<F: Scalar>(x: F, r: F, clamped: &mut usize) -> Option<F> {
    let next = clamped_logistic(x, r, clamped);
    if next == x {
        if x == F::cst(0.5) {
            return None;
        }
        let bump = F::cst(1e-9);
        let bumped = next + bump;
        return Some(if bumped < F::one() {
            bumped
        } else {
            next - bump
        });
    }
    Some(next)
}

/// Time average of ln|r(1−2x_k)| with no input validation and no minimum
/// length; −∞ means the orbit collapsed onto a zero-derivative point.
fn lyapunov_unchecked<F: Scalar>(r: F, x0: F, burn_in: usize, n: usize, clamped: &mut usize) -> F {
    let mut x = x0;
    for _ in 0..burn_in {
        match advance_guarded(x, r, clamped) {
            Some(next) => x = next,
            None => return F::neg_infinity(),
        }
    }
    let two = F::cst(2.0);
    let mut acc = F::zero();
    for _ in 0..n {
        acc = acc + (r * (F::one() - two * x)).abs().ln();
        match advance_guarded(x, r, clamped) {
            Some(next) => x = next,
            // every remaining derivative term is ln 0
            None => return F::neg_infinity(),
        }
    }
    acc / F::of_usize(n)
}

/// Largest Lyapunov exponent of the logistic map, estimated as the orbit
/// average of ln|r(1−2x)| over `n` steps after `burn_in` discarded steps.
/// Positive means exponential sensitivity to initial conditions (≈ ln 2 at
/// r = 4); −∞ is returned as a flagged value when the orbit collapses onto
/// a zero-derivative point (e.g. the superstable fixed point at r = 2).
pub fn lyapunov_exponent<F: Scalar>(r: F, x0: F, burn_in: usize, n: usize) -> Result<F> {
    validate_r(r)?;
    validate_x0(x0)?;
    if n < MIN_LYAPUNOV_STEPS {
        return Err(Error::InsufficientData(format!(
            "Lyapunov estimation needs at least {MIN_LYAPUNOV_STEPS} orbit steps, got {n}"
        )));
    }
    let mut clamped = 0;
    let lambda = lyapunov_unchecked(r, x0, burn_in, n, &mut clamped);
    clamp_health(clamped, burn_in + n)?;
    Ok(lambda)
}

/// The multiplicative cycle-interaction signal C_t = Π A_k·sin(2πt/P_k + φ_k)
/// at period index `t`. An empty cycle set contributes nothing (C_t = 0).
pub fn cycle_interaction_signal<F: Scalar>(cycles: &[Cycle<F>], t: F) -> F {
    if cycles.is_empty() {
        return F::zero();
    }
    let two_pi = F::cst(std::f64::consts::TAU);
    let mut signal = F::one();
    for cycle in cycles {
        signal = signal * cycle.amplitude * (two_pi * t / cycle.period + cycle.phase).sin();
    }
    signal
}

/// NDC recursion state. Period indices are 1-based: x_1 = x0 and C_1 are
/// the values entering the first variance.
struct NdcState<F> {
    omega: F,
    alpha: F,
    beta: F,
    gamma: F,
    delta: F,
    r: F,
    floor: F,
    cycles: Vec<Cycle<F>>,
    t: usize,
    x: F,
    sigma2: F,
    clamped: usize,
}

impl<F: Scalar> NdcState<F> {
    /// Validates and computes σ²_1 = max(ω/(1−α−β) + γ|C_1| + δx_1, floor),
    /// seeding the recursion at the unconditional GARCH level.
    fn start(params: &NdcParams<F>, x0: F) -> Result<Self> {
        params.validate()?;
        let v = params.core.unconditional_variance()?;
        let c1 = cycle_interaction_signal(&params.cycles, F::one());
        let sigma2 = (v + params.gamma * c1.abs() + params.delta * x0).max(params.variance_floor);
        Ok(NdcState {
            omega: params.core.omega,
            alpha: params.core.alpha,
            beta: params.core.beta,
            gamma: params.gamma,
            delta: params.delta,
            r: params.r,
            floor: params.variance_floor,
            cycles: params.cycles.clone(),
            t: 1,
            x: x0,
            sigma2,
            clamped: 0,
        })
    }

    /// Advances to period t+1 given the realized innovation of period t,
    /// returning σ²_{t+1}.
    fn advance(&mut self, eps_prev: F) -> F {
        self.t += 1;
        self.x = clamped_logistic(self.x, self.r, &mut self.clamped);
        let c = cycle_interaction_signal(&self.cycles, F::of_usize(self.t));
        self.sigma2 = (garch_step(
            self.omega,
            self.alpha,
            self.beta,
            eps_prev * eps_prev,
            self.sigma2,
        ) + self.gamma * c.abs()
            + self.delta * self.x)
            .max(self.floor);
        self.sigma2
    }
}

/// Runs the NDC variance recursion against a given innovation sequence,
/// starting the orbit at `x0` and counting clamped map steps.
fn run_ndc_path<F: Scalar>(
    innovations: &[F],
    params: &NdcParams<F>,
    x0: F,
) -> Result<(Vec<F>, usize)> {
    if innovations.is_empty() {
        return Err(Error::InsufficientData(
            "NDC variance path needs at least one period".into(),
        ));
    }
    if let Some(bad) = innovations.iter().find(|e| !e.is_finite()) {
        return Err(Error::invalid(
            "innovations",
            format!("must be finite, got {bad}"),
        ));
    }
    let mut state = NdcState::start(params, x0)?;
    let mut path = Vec::with_capacity(innovations.len());
    path.push(state.sigma2);
    for &eps in &innovations[..innovations.len() - 1] {
        path.push(state.advance(eps));
    }
    Ok((path, state.clamped))
}

/// The NDC conditional-variance path for a realized innovation sequence
/// (ε_1, …, ε_n); entry t−1 holds σ²_t. Innovation ε_t feeds the variance
/// of period t+1, so the last innovation only matters for forecasting.
pub fn ndc_variance_path<F: Scalar>(innovations: &[F], params: &NdcParams<F>) -> Result<Vec<F>> {
    run_ndc_path(innovations, params, params.x0).map(|(path, _)| path)
}

/// A simulated NDC return series with its generating variance path and the
/// fraction of logistic steps that needed clamping.
#[derive(Debug, Clone)]
pub struct NdcSimulation<F> {
    pub returns: ReturnSeries<F>,
    pub variance_path: Vec<F>,
    pub clamp_rate: f64,
}

/// Simulates n periods of NDC returns r_t = μ + σ_t·z_t with z_t standard
/// normal drawn from the counter-based generator (stream 0, index t−1).
/// The realized variance path satisfies [`ndc_variance_path`] applied to
/// the realized innovations, bit for bit. Returns are labeled as log
/// returns at a daily (252/year) convention. A clamp rate above 0.1% is
/// surfaced as a warning, not an error.
pub fn simulate_ndc<F: Scalar>(
    params: &NdcParams<F>,
    n: usize,
    seed: u64,
) -> Result<Warned<NdcSimulation<F>>> {
    if n == 0 {
        return Err(Error::invalid("n", "must be ≥ 1"));
    }
    let mut state = NdcState::start(params, params.x0)?;
    let mut values = Vec::with_capacity(n);
    let mut variance_path = Vec::with_capacity(n);
    let mu = params.core.mu;
    let mut eps = state.sigma2.sqrt() * rng::standard_normal_as::<F>(seed, 0, 0);
    values.push(mu + eps);
    variance_path.push(state.sigma2);
    for t in 1..n {
        let sigma2 = state.advance(eps);
        eps = sigma2.sqrt() * rng::standard_normal_as::<F>(seed, 0, t as u64);
        values.push(mu + eps);
        variance_path.push(sigma2);
    }
    let mut warnings = params.warnings();
    let orbit_steps = n - 1;
    let clamp_rate = if orbit_steps == 0 {
        0.0
    } else {
        state.clamped as f64 / orbit_steps as f64
    };
    if clamp_rate > MAX_CLAMP_RATE {
        warnings.push(format!(
            "logistic orbit clamped on {} of {} steps (> 0.1%); simulated variances \
             may be distorted by round-off",
            state.clamped, orbit_steps
        ));
    }
    let returns = ReturnSeries::new(values, ReturnKind::Log, 252)?;
    Ok(Warned::new(
        NdcSimulation {
            returns,
            variance_path,
            clamp_rate,
        },
        warnings,
    ))
}

/// [`simulate_ndc`] reduced to the return series.
pub fn simulate_ndc_returns<F: Scalar>(
    params: &NdcParams<F>,
    n: usize,
    seed: u64,
) -> Result<Warned<ReturnSeries<F>>> {
    simulate_ndc(params, n, seed).map(|w| {
        let Warned { value, warnings } = w;
        Warned::new(value.returns, warnings)
    })
}

/// Sensitivity diagnostics for an NDC parameterization: a Lyapunov estimate
/// over the diagnostic horizon, the observed divergence time for the probed
/// perturbation, and the absolute variance gap per period (for plotting).
#[derive(Debug, Clone, Serialize)]
pub struct ChaosDiagnostics<F> {
    /// Orbit-averaged ln|r(1−2x)| over the diagnostic horizon (−∞ if the
    /// orbit collapsed onto a zero-derivative point).
    pub lyapunov_estimate: F,
    /// (perturbation η, elapsed periods until |σ² − σ²′| first exceeded
    /// e·δ·η). Empty when the gap never crossed within the horizon.
    pub divergence_times: Vec<(F, F)>,
    /// True when the chaos channel is active (δ > 0) and the Lyapunov
    /// estimate is positive.
    pub chaotic: bool,
    /// |σ²_t − σ²′_t| for t = 1..n; entry 0 is the initial gap δ·η.
    #[serde(skip_serializing)]
    pub gap_path: Vec<F>,
}

/// Probes sensitivity to initial conditions: runs the variance recursion
/// twice, from x0 and x0+η, under identical innovations, and records when
/// the variance gap first exceeds e times its initial size δ·η. The gap
/// dynamics do not depend on the innovation values (they cancel between
/// the paths), so the shared innovations are taken as zeros and the
/// diagnostic is fully deterministic. η must be positive, below 1e−4, and
/// small enough that x0+η stays inside (0, 1).
pub fn divergence_diagnostic<F: Scalar>(
    params: &NdcParams<F>,
    eta: F,
    n: usize,
) -> Result<ChaosDiagnostics<F>> {
    params.validate()?;
    if !(eta > F::zero()) || !(eta < F::cst(1e-4)) {
        return Err(Error::invalid(
            "eta",
            format!("perturbation must be in (0, 1e-4), got {eta}"),
        ));
    }
    let perturbed_x0 = params.x0 + eta;
    if !(perturbed_x0 < F::one()) {
        return Err(Error::invalid(
            "eta",
            format!("perturbed start x0 + eta = {perturbed_x0} leaves (0, 1)"),
        ));
    }
    if n < 2 {
        return Err(Error::InsufficientData(
            "divergence diagnostic needs at least 2 periods".into(),
        ));
    }
    let innovations = vec![F::zero(); n];
    let (base, clamped_base) = run_ndc_path(&innovations, params, params.x0)?;
    let (shifted, clamped_shifted) = run_ndc_path(&innovations, params, perturbed_x0)?;
    let gap_path: Vec<F> = base
        .iter()
        .zip(&shifted)
        .map(|(&a, &b)| (a - b).abs())
        .collect();
    let threshold = F::cst(std::f64::consts::E) * params.delta * eta;
    let divergence_times = gap_path
        .iter()
        .position(|&g| g > threshold)
        .map(|idx| vec![(eta, F::of_usize(idx))])
        .unwrap_or_default();
    let mut clamped = clamped_base + clamped_shifted;
    let lambda = lyapunov_unchecked(params.r, params.x0, 0, n, &mut clamped);
    clamp_health(clamped, 2 * (n - 1) + n)?;
    Ok(ChaosDiagnostics {
        lyapunov_estimate: lambda,
        divergence_times,
        chaotic: params.delta > F::zero() && lambda > F::zero(),
        gap_path,
    })
}
