//! Quantitative risk-management toolkit: volatility models (EWMA,
//! ARCH/GARCH, and a chaos-augmented GARCH variant), Value-at-Risk
//! estimation and backtesting, Monte Carlo simulation, cost-of-capital
//! estimation, and capital-budgeting analytics.
//!
//! Everything numerical is generic over the [`Scalar`] float type
//! (`f32`/`f64`); the crate root re-exports `f64` aliases for the common
//! case. Randomness is counter-based throughout — every draw is a pure
//! function of (seed, stream, index) — so simulations are reproducible
//! bit-for-bit at any thread count.
//!
//! Design ground rules:
//!
//! - **Validated constructors.** Parameter structs expose `validate()`;
//!   every operation validates before computing. Degenerate data is an
//!   [`Error`], never a NaN.
//! - **Warnings ride along.** Diagnostics that should not abort a run
//!   (short samples, out-of-band estimates) surface in [`Warned`].
//! - **Determinism.** Fixed inputs and seed produce identical bytes,
//!   including under [rayon](https://docs.rs/rayon) parallelism.

// Validators write `!(x > 0)` rather than `x <= 0` so that NaN fails the
// check in a single comparison; reference constants keep every digit of
// the independently computed value even where f64 rounds them away.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod budgeting;
pub mod capital;
pub mod chaos;
pub mod error;
pub mod normal;
pub mod optim;
pub mod rng;
pub mod scalar;
pub mod series;
pub mod sim;
pub mod stats;
pub mod var;
pub mod volatility;

pub use error::{Error, Result, Warned};
pub use scalar::Scalar;

pub use budgeting::OptionKind;
pub use series::ReturnKind;
pub use var::{RiskCategory, VarMethod};

/// `f64` aliases for the generic core types. Code that needs `f32` (or a
/// custom float) can name the generic types through their modules.
pub mod f64_aliases {
    pub type PriceSeries = crate::series::PriceSeries<f64>;
    pub type ReturnSeries = crate::series::ReturnSeries<f64>;
    pub type SeriesStats = crate::series::SeriesStats<f64>;

    pub type GarchParams = crate::volatility::GarchParams<f64>;
    pub type GarchFit = crate::volatility::GarchFit<f64>;
    pub type EwmaParams = crate::volatility::EwmaParams<f64>;
    pub type FitConfig = crate::volatility::FitConfig<f64>;
    pub type VarianceSeed = crate::volatility::VarianceSeed<f64>;

    pub type VarEstimate = crate::var::VarEstimate<f64>;
    pub type GpdTailFit = crate::var::GpdTailFit<f64>;
    pub type BacktestResult = crate::var::BacktestResult<f64>;
    pub type RollingEstimator = crate::var::RollingEstimator<f64>;
    pub type RollingBacktest = crate::var::RollingBacktest<f64>;
    pub type ViolationRecord = crate::var::ViolationRecord<f64>;
    pub type PortfolioSpec = crate::var::PortfolioSpec<f64>;

    pub type GbmParams = crate::sim::GbmParams<f64>;
    pub type PathMatrix = crate::sim::PathMatrix<f64>;

    pub type Cycle = crate::chaos::Cycle<f64>;
    pub type NdcParams = crate::chaos::NdcParams<f64>;
    pub type NdcSimulation = crate::chaos::NdcSimulation<f64>;
    pub type ChaosDiagnostics = crate::chaos::ChaosDiagnostics<f64>;

    pub type CapitalStructure = crate::capital::CapitalStructure<f64>;
    pub type CapmInputs = crate::capital::CapmInputs<f64>;

    pub type CashflowSchedule = crate::budgeting::CashflowSchedule<f64>;
    pub type IrrResult = crate::budgeting::IrrResult<f64>;
    pub type Payback = crate::budgeting::Payback<f64>;
    pub type OptionSpec = crate::budgeting::OptionSpec<f64>;

    pub type SimplexOptions = crate::optim::SimplexOptions<f64>;
    pub type SimplexResult = crate::optim::SimplexResult<f64>;
}

pub use f64_aliases::*;
