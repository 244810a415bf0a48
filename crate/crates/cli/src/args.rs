//! Command-line surface: one verb per analysis, plus global report options.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use riskkit::{OptionKind, ReturnKind, VarMethod};

#[derive(Debug, Parser)]
#[command(
    name = "riskkit",
    version,
    about = "Volatility models, Value-at-Risk, simulation, and capital analytics",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Where to write the JSON report ('-' for stdout)
    #[arg(long, global = true, default_value = "-")]
    pub output: String,

    /// Seed for every random draw the run makes
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Directory to fill with plot-data CSV files
    #[arg(long, global = true)]
    pub plot_dir: Option<PathBuf>,
}

/// Price-series input shared by the volatility and risk verbs.
#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// CSV price history with a `date,price` header
    #[arg(long)]
    pub input: PathBuf,

    /// Observations per year (252 for daily trading data)
    #[arg(long, default_value_t = 252)]
    pub periods_per_year: u32,

    /// How returns are computed from prices
    #[arg(long, value_enum, default_value_t = KindArg::Log)]
    pub kind: KindArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum KindArg {
    Log,
    Simple,
}

impl From<KindArg> for ReturnKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Log => ReturnKind::Log,
            KindArg::Simple => ReturnKind::Simple,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum MethodArg {
    ParametricNormal,
    Historical,
    Fhs,
    EvtGpd,
    MonteCarlo,
}

impl From<MethodArg> for VarMethod {
    fn from(method: MethodArg) -> Self {
        match method {
            MethodArg::ParametricNormal => VarMethod::ParametricNormal,
            MethodArg::Historical => VarMethod::Historical,
            MethodArg::Fhs => VarMethod::Fhs,
            MethodArg::EvtGpd => VarMethod::EvtGpd,
            MethodArg::MonteCarlo => VarMethod::MonteCarlo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum EstimatorArg {
    ParametricNormal,
    Historical,
    Fhs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum OptionKindArg {
    Call,
    Put,
}

impl From<OptionKindArg> for OptionKind {
    fn from(kind: OptionKindArg) -> Self {
        match kind {
            OptionKindArg::Call => OptionKind::Call,
            OptionKindArg::Put => OptionKind::Put,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a GARCH(1,1) volatility model to a price series
    Fit(SeriesArgs),

    /// Fit GARCH(1,1) and forecast the variance term structure
    Forecast {
        #[command(flatten)]
        series: SeriesArgs,
        /// Forecast horizon in periods
        #[arg(long, default_value_t = 10)]
        horizon: usize,
    },

    /// Estimate Value-at-Risk for a price series
    Var {
        #[command(flatten)]
        series: SeriesArgs,
        /// Estimation method
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Confidence level, e.g. 0.99
        #[arg(long, default_value_t = 0.99)]
        level: f64,
        /// Quantile of standardized losses used as the tail threshold (evt_gpd only)
        #[arg(long, default_value_t = 0.95)]
        threshold_quantile: f64,
        /// Number of simulated paths (monte_carlo only)
        #[arg(long, default_value_t = 100_000)]
        paths: usize,
        /// Horizon in periods (monte_carlo only)
        #[arg(long, default_value_t = 1)]
        horizon: usize,
    },

    /// Roll a VaR estimator through history and Kupiec-test the violations
    Backtest {
        #[command(flatten)]
        series: SeriesArgs,
        /// Which estimator to roll
        #[arg(long, value_enum, default_value_t = EstimatorArg::ParametricNormal)]
        estimator: EstimatorArg,
        /// Estimation window length in periods
        #[arg(long, default_value_t = 250)]
        window: usize,
        /// Confidence level, e.g. 0.99
        #[arg(long, default_value_t = 0.99)]
        level: f64,
        /// Fix the per-period mean instead of estimating it (parametric_normal only)
        #[arg(long)]
        mu: Option<f64>,
        /// Fix the per-period volatility instead of estimating it (parametric_normal only)
        #[arg(long)]
        sigma: Option<f64>,
        /// How often the GARCH model is refit, in periods (fhs only)
        #[arg(long, default_value_t = 250)]
        refit_every: usize,
    },

    /// Simulate geometric-Brownian-motion price paths
    Simulate {
        /// Initial price
        #[arg(long, default_value_t = 100.0)]
        s0: f64,
        /// Annualized drift
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
        /// Annualized volatility
        #[arg(long, default_value_t = 0.2)]
        sigma: f64,
        /// Step size in years
        #[arg(long, default_value_t = 1.0 / 252.0)]
        dt: f64,
        /// Steps per path
        #[arg(long, default_value_t = 252)]
        steps: usize,
        /// Number of paths
        #[arg(long, default_value_t = 1000)]
        paths: usize,
    },

    /// Simulate the cycle-and-chaos-augmented GARCH return process
    Ndc {
        /// JSON file with the process parameters
        #[arg(long)]
        params: PathBuf,
        /// Number of periods to simulate
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },

    /// Chaos diagnostics: Lyapunov exponent and trajectory divergence
    Chaos {
        /// JSON file with the process parameters
        #[arg(long)]
        params: PathBuf,
        /// Initial-state perturbation for the divergence probe
        #[arg(long, default_value_t = 1e-8)]
        eta: f64,
        /// Number of periods for the divergence probe
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },

    /// Estimate an asset's market beta from two return histories
    Beta {
        /// CSV price history for the asset (`date,price` header)
        #[arg(long)]
        asset: PathBuf,
        /// CSV price history for the market (`date,price` header)
        #[arg(long)]
        market: PathBuf,
        /// Observations per year for both series
        #[arg(long, default_value_t = 252)]
        periods_per_year: u32,
        /// How returns are computed from prices
        #[arg(long, value_enum, default_value_t = KindArg::Log)]
        kind: KindArg,
    },

    /// CAPM cost of equity
    Capm {
        /// Risk-free rate
        #[arg(long)]
        rf: f64,
        /// Asset beta
        #[arg(long)]
        beta: f64,
        /// Market risk premium
        #[arg(long)]
        mrp: f64,
    },

    /// Weighted average cost of capital
    Wacc {
        /// Pre-tax cost of debt
        #[arg(long)]
        kd: f64,
        /// Corporate tax rate
        #[arg(long)]
        tax: f64,
        /// Debt share of total capital
        #[arg(long)]
        dv: f64,
        /// Cost of equity
        #[arg(long)]
        ke: f64,
        /// Equity share of total capital
        #[arg(long)]
        ev: f64,
        /// Cost of preferred stock
        #[arg(long, default_value_t = 0.0)]
        kp: f64,
        /// Preferred share of total capital
        #[arg(long, default_value_t = 0.0)]
        pv: f64,
    },

    /// Net present value of a cash-flow schedule
    Npv {
        /// CSV cash-flow schedule (`time,amount` rows, header optional)
        #[arg(long)]
        input: PathBuf,
        /// Annual discount rate
        #[arg(long)]
        rate: f64,
    },

    /// Internal rate of return of a cash-flow schedule
    Irr {
        /// CSV cash-flow schedule (`time,amount` rows, header optional)
        #[arg(long)]
        input: PathBuf,
    },

    /// Simple or discounted payback period
    Payback {
        /// CSV cash-flow schedule (`time,amount` rows, header optional)
        #[arg(long)]
        input: PathBuf,
        /// Annual discount rate (used when --discounted is set)
        #[arg(long, default_value_t = 0.0)]
        rate: f64,
        /// Discount flows before accumulating them
        #[arg(long)]
        discounted: bool,
    },

    /// Accounting rate of return
    Arr {
        /// CSV cash-flow schedule (`time,amount` rows, header optional)
        #[arg(long)]
        input: PathBuf,
    },

    /// Black–Scholes European option price
    Option {
        /// Spot price of the underlying
        #[arg(long)]
        spot: f64,
        /// Strike price
        #[arg(long)]
        strike: f64,
        /// Continuously compounded risk-free rate
        #[arg(long)]
        rate: f64,
        /// Annualized volatility
        #[arg(long)]
        sigma: f64,
        /// Time to expiry in years
        #[arg(long)]
        maturity: f64,
        /// Option style
        #[arg(long, value_enum)]
        kind: OptionKindArg,
    },
}
