//! Verb dispatch, report assembly, and the exit-code contract.
//!
//! Exit codes: 0 success; 1 usage error (bad flags or verbs, reported by
//! the parser); 2 invalid or insufficient input data (message on stderr,
//! no report); 3 numerical failure (a report is still written, with null
//! results or a warning flagging the non-converged estimate).

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use riskkit::budgeting::{arr, black_scholes_price, irr, npv, payback_period};
use riskkit::capital::{capm_cost_of_equity, estimate_beta, wacc};
use riskkit::chaos::{divergence_diagnostic, simulate_ndc};
use riskkit::scalar::{mean, sample_variance};
use riskkit::series::summary_stats;
use riskkit::sim::{monte_carlo_var, simulate_gbm_paths};
use riskkit::var::{
    evt_var, fhs_var, fit_gpd_tail, historical_var, parametric_var, rolling_backtest,
};
use riskkit::volatility::{fit_garch, forecast_variance};
use riskkit::{
    CapitalStructure, CapmInputs, CashflowSchedule, Error, FitConfig, GarchFit, GbmParams,
    NdcParams, OptionSpec, PriceSeries, Result, ReturnSeries, RollingEstimator, VarMethod, Warned,
};

use crate::args::{Cli, Command, EstimatorArg, MethodArg, SeriesArgs};
use crate::plots;
use crate::report::{InputDigest, Provenance, Report};

pub fn main_exit_code() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version travel through Err as well; they are not
            // usage errors and keep the success exit code.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();

    let mut ctx = Context {
        cli: &cli,
        inputs: Vec::new(),
        warnings: Vec::new(),
        numerical_failure: false,
    };
    match catch_unwind(AssertUnwindSafe(|| execute(&mut ctx))) {
        Ok(Ok(results)) => {
            let report = ctx.into_report(argv, results);
            match emit(&cli.output, &report) {
                Ok(()) if report_flags_numerical_failure(&report) => 3,
                Ok(()) => 0,
                Err(message) => {
                    eprintln!("riskkit: {message}");
                    2
                }
            }
        }
        Ok(Err(err)) => {
            eprintln!("riskkit: {err}");
            match err {
                Error::InvalidInput { .. } | Error::Parse { .. } | Error::InsufficientData(_) => 2,
                Error::Numerical(message) => {
                    // A numerical failure still yields a report so downstream
                    // tooling sees what was attempted and why it failed.
                    ctx.warnings.push(message);
                    let report = ctx.into_report(argv, Value::Null);
                    if let Err(io_message) = emit(&cli.output, &report) {
                        eprintln!("riskkit: {io_message}");
                    }
                    3
                }
            }
        }
        Err(_) => {
            eprintln!("riskkit: internal error (panic); please report this");
            3
        }
    }
}

/// The numerical-failure marker survives in the report as a warning, so the
/// exit code can be decided after the report is assembled.
const NON_CONVERGENCE_NOTE: &str = "estimate did not converge";

fn report_flags_numerical_failure(report: &Report) -> bool {
    report
        .warnings
        .iter()
        .any(|w| w.contains(NON_CONVERGENCE_NOTE))
}

fn emit(output: &str, report: &Report) -> std::result::Result<(), String> {
    let text = report.to_json_text();
    if output == "-" {
        print!("{text}");
        Ok(())
    } else {
        fs::write(output, text).map_err(|e| format!("cannot write report to {output}: {e}"))
    }
}

/// Run state threaded through the verb handlers: accumulated input digests
/// and warnings survive even when the handler itself errors out.
struct Context<'a> {
    cli: &'a Cli,
    inputs: Vec<InputDigest>,
    warnings: Vec<String>,
    numerical_failure: bool,
}

impl Context<'_> {
    fn read_input(&mut self, path: &Path, what: &'static str) -> Result<String> {
        let bytes = fs::read(path)
            .map_err(|e| Error::invalid(what, format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).map_err(|_| Error::Parse {
            context: what,
            line: 1,
            reason: "file is not valid UTF-8".into(),
        })
    }

    fn absorb<T>(&mut self, warned: Warned<T>) -> T {
        self.warnings.extend(warned.warnings);
        warned.value
    }

    fn note_non_convergence(&mut self, what: &str) {
        self.warnings
            .push(format!("{what} {NON_CONVERGENCE_NOTE} within the iteration budget; reporting the best point found"));
        self.numerical_failure = true;
    }

    fn load_returns(&mut self, args: &SeriesArgs) -> Result<ReturnSeries> {
        let text = self.read_input(&args.input, "input")?;
        let prices = PriceSeries::from_csv(&text, args.periods_per_year)?;
        Ok(prices.returns(args.kind.into()))
    }

    fn fit_series(&mut self, series: &ReturnSeries) -> Result<GarchFit> {
        let fit = fit_garch(series, FitConfig::default())?;
        if !fit.converged {
            self.note_non_convergence("GARCH fit");
        }
        Ok(fit)
    }

    fn plot_dir(&self) -> Option<&Path> {
        self.cli.plot_dir.as_deref()
    }

    fn into_report(self, argv: Vec<String>, results: Value) -> Report {
        Report {
            schema_version: "1",
            command: argv,
            results,
            warnings: self.warnings,
            provenance: Provenance {
                inputs: self.inputs,
                seed: self.cli.seed,
            },
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<Value> {
    serde_json::to_value(value).map_err(|e| Error::Numerical(format!("cannot encode results: {e}")))
}

fn execute(ctx: &mut Context) -> Result<Value> {
    match &ctx.cli.command {
        Command::Fit(series_args) => {
            let series = ctx.load_returns(series_args)?;
            let fit = ctx.fit_series(&series)?;
            if let Some(dir) = ctx.plot_dir() {
                plots::write_variance_csv(dir, &fit.variance_path)?;
            }
            to_json(&fit)
        }

        Command::Forecast { series, horizon } => {
            let returns = ctx.load_returns(series)?;
            let fit = ctx.fit_series(&returns)?;
            let forecast = forecast_variance(&fit, *horizon)?;
            if let Some(dir) = ctx.plot_dir() {
                plots::write_variance_csv(dir, &forecast)?;
            }
            Ok(json!({ "fit": to_json(&fit)?, "variance_forecast": forecast }))
        }

        Command::Var {
            series,
            method,
            level,
            threshold_quantile,
            paths,
            horizon,
        } => run_var(
            ctx,
            series,
            *method,
            *level,
            *threshold_quantile,
            *paths,
            *horizon,
        ),

        Command::Backtest {
            series,
            estimator,
            window,
            level,
            mu,
            sigma,
            refit_every,
        } => {
            let returns = ctx.load_returns(series)?;
            let rolling = match estimator {
                EstimatorArg::ParametricNormal => RollingEstimator::ParametricNormal {
                    mu: *mu,
                    sigma: *sigma,
                },
                EstimatorArg::Historical => RollingEstimator::Historical,
                EstimatorArg::Fhs => RollingEstimator::Fhs {
                    refit_every: *refit_every,
                },
            };
            let backtest = ctx.absorb(rolling_backtest(&returns, &rolling, *window, *level)?);
            if let Some(dir) = ctx.plot_dir() {
                plots::write_violations_csv(dir, &backtest.log)?;
            }
            Ok(json!({
                "window": window,
                "level": level,
                "kupiec": to_json(&backtest.result)?,
            }))
        }

        Command::Simulate {
            s0,
            mu,
            sigma,
            dt,
            steps,
            paths,
        } => {
            let params = GbmParams {
                s0: *s0,
                mu: *mu,
                sigma: *sigma,
                dt: *dt,
                steps: *steps,
                n_paths: *paths,
                seed: ctx.cli.seed,
            };
            let matrix = simulate_gbm_paths(&params)?;
            if let Some(dir) = ctx.plot_dir() {
                plots::write_paths_csv(dir, &matrix)?;
            }
            let terminals: Vec<f64> = matrix.terminal_prices().collect();
            let terminal_std = (terminals.len() >= 2).then(|| sample_variance(&terminals).sqrt());
            Ok(json!({
                "n_paths": matrix.n_paths(),
                "steps": matrix.n_steps(),
                "dt": dt,
                "terminal": {
                    "mean": mean(&terminals),
                    "std_dev": terminal_std,
                    "min": terminals.iter().copied().fold(f64::INFINITY, f64::min),
                    "max": terminals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                },
            }))
        }

        Command::Ndc { params, n } => {
            let spec = read_ndc_params(ctx, params)?;
            let sim = ctx.absorb(simulate_ndc(&spec, *n, ctx.cli.seed)?);
            if let Some(dir) = ctx.plot_dir() {
                plots::write_variance_csv(dir, &sim.variance_path)?;
            }
            Ok(json!({
                "n": n,
                "clamp_rate": sim.clamp_rate,
                "stats": to_json(&summary_stats(&sim.returns))?,
            }))
        }

        Command::Chaos { params, eta, n } => {
            let spec = read_ndc_params(ctx, params)?;
            let diagnostics = divergence_diagnostic(&spec, *eta, *n)?;
            if !diagnostics.lyapunov_estimate.is_finite() {
                ctx.warnings.push(
                    "Lyapunov estimate is not finite (the orbit collapsed onto a \
                     zero-derivative point); reported as null"
                        .into(),
                );
            }
            if let Some(dir) = ctx.plot_dir() {
                plots::write_gap_csv(dir, &diagnostics.gap_path)?;
            }
            to_json(&diagnostics)
        }

        Command::Beta {
            asset,
            market,
            periods_per_year,
            kind,
        } => {
            let asset_text = ctx.read_input(asset, "asset")?;
            let market_text = ctx.read_input(market, "market")?;
            let asset_returns =
                PriceSeries::from_csv(&asset_text, *periods_per_year)?.returns((*kind).into());
            let market_returns =
                PriceSeries::from_csv(&market_text, *periods_per_year)?.returns((*kind).into());
            let beta = ctx.absorb(estimate_beta(&asset_returns, &market_returns)?);
            Ok(json!({ "beta": beta, "n_observations": asset_returns.len() }))
        }

        Command::Capm { rf, beta, mrp } => {
            let inputs = CapmInputs {
                rf: *rf,
                beta: *beta,
                mrp: *mrp,
            };
            let cost = capm_cost_of_equity(&inputs)?;
            ctx.warnings.extend(inputs.warnings());
            Ok(json!({ "cost_of_equity": cost }))
        }

        Command::Wacc {
            kd,
            tax,
            dv,
            ke,
            ev,
            kp,
            pv,
        } => {
            let structure = CapitalStructure {
                kd: *kd,
                tax_rate: *tax,
                d_v: *dv,
                ke: *ke,
                e_v: *ev,
                kp: *kp,
                p_v: *pv,
            };
            Ok(json!({ "wacc": wacc(&structure)? }))
        }

        Command::Npv { input, rate } => {
            let schedule = read_schedule(ctx, input, *rate)?;
            Ok(json!({
                "rate": rate,
                "n_flows": schedule.flows().len(),
                "npv": npv(&schedule),
            }))
        }

        Command::Irr { input } => {
            let schedule = read_schedule(ctx, input, 0.0)?;
            let result = irr(&schedule)?;
            if result.multiple_roots {
                ctx.warnings.push(format!(
                    "the schedule has {} IRR roots; `rate` is the smallest",
                    result.roots.len()
                ));
            }
            to_json(&result)
        }

        Command::Payback {
            input,
            rate,
            discounted,
        } => {
            let schedule = read_schedule(ctx, input, *rate)?;
            let payback = payback_period(&schedule, *discounted)?;
            Ok(json!({
                "discounted": discounted,
                "recovered": payback.years().is_some(),
                "payback_years": to_json(&payback)?,
            }))
        }

        Command::Arr { input } => {
            let schedule = read_schedule(ctx, input, 0.0)?;
            Ok(json!({ "arr": arr(&schedule)? }))
        }

        Command::Option {
            spot,
            strike,
            rate,
            sigma,
            maturity,
            kind,
        } => {
            let spec = OptionSpec {
                spot: *spot,
                strike: *strike,
                rate: *rate,
                sigma: *sigma,
                maturity: *maturity,
                kind: (*kind).into(),
            };
            Ok(json!({ "kind": to_json(&spec.kind)?, "price": black_scholes_price(&spec)? }))
        }
    }
}

fn run_var(
    ctx: &mut Context,
    series_args: &SeriesArgs,
    method: MethodArg,
    level: f64,
    threshold_quantile: f64,
    paths: usize,
    horizon: usize,
) -> Result<Value> {
    let series = ctx.load_returns(series_args)?;
    match method {
        MethodArg::ParametricNormal => {
            let sigma = series
                .variance()
                .ok_or_else(|| {
                    Error::InsufficientData("parametric VaR needs at least 2 returns".into())
                })?
                .sqrt();
            let mut estimate = parametric_var(series.mean(), sigma, level)?;
            estimate.as_of_index = series.len() - 1;
            Ok(json!({ "estimate": to_json(&estimate)? }))
        }
        MethodArg::Historical => {
            let estimate = ctx.absorb(historical_var(&series, level)?);
            Ok(json!({ "estimate": to_json(&estimate)? }))
        }
        MethodArg::Fhs => {
            let fit = ctx.fit_series(&series)?;
            let estimate = fhs_var(&series, &fit, level)?;
            if let Some(dir) = ctx.plot_dir() {
                plots::write_variance_csv(dir, &fit.variance_path)?;
            }
            Ok(json!({ "estimate": to_json(&estimate)?, "fit": to_json(&fit)? }))
        }
        MethodArg::EvtGpd => {
            let fit = ctx.fit_series(&series)?;
            let standardized_losses: Vec<f64> = fit
                .residuals
                .iter()
                .zip(&fit.variance_path)
                .map(|(&e, &v)| -(e / v.sqrt()))
                .collect();
            let tail = fit_gpd_tail(&standardized_losses, threshold_quantile)?;
            if !tail.converged {
                ctx.note_non_convergence("GPD tail fit");
            }
            let sigma_next = forecast_variance(&fit, 1)?[0].sqrt();
            let mut estimate = evt_var(&tail, sigma_next, fit.params.mu, level)?;
            estimate.as_of_index = series.len() - 1;
            if let Some(dir) = ctx.plot_dir() {
                plots::write_variance_csv(dir, &fit.variance_path)?;
            }
            Ok(json!({
                "estimate": to_json(&estimate)?,
                "tail": to_json(&tail)?,
                "fit": to_json(&fit)?,
            }))
        }
        MethodArg::MonteCarlo => {
            let ppy = f64::from(series.periods_per_year());
            let sigma2 = series.variance().ok_or_else(|| {
                Error::InsufficientData("Monte-Carlo VaR needs at least 2 returns".into())
            })?;
            let params = GbmParams {
                s0: 1.0,
                mu: series.mean() * ppy,
                sigma: (sigma2 * ppy).sqrt(),
                dt: 1.0 / ppy,
                steps: horizon,
                n_paths: paths,
                seed: ctx.cli.seed,
            };
            let mut estimate = monte_carlo_var(&params, level)?;
            estimate.as_of_index = series.len() - 1;
            debug_assert_eq!(estimate.method, VarMethod::MonteCarlo);
            Ok(json!({
                "estimate": to_json(&estimate)?,
                "annualized_mu": params.mu,
                "annualized_sigma": params.sigma,
                "paths": paths,
            }))
        }
    }
}

fn read_ndc_params(ctx: &mut Context, path: &Path) -> Result<NdcParams> {
    let text = ctx.read_input(path, "params")?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        context: "params json",
        line: e.line(),
        reason: e.to_string(),
    })
}

fn read_schedule(ctx: &mut Context, path: &Path, rate: f64) -> Result<CashflowSchedule> {
    let text = ctx.read_input(path, "input")?;
    CashflowSchedule::from_csv(&text, rate)
}
