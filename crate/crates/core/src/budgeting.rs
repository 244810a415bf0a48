//! Capital budgeting: NPV, IRR, payback periods, accounting rate of
//! return, and Black–Scholes pricing for real-option valuations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::cdf;
use crate::scalar::{mean, Scalar};

/// Bisection stops when the IRR bracket is narrower than this.
const IRR_TOLERANCE: f64 = 1e-12;

/// IRR roots are searched on (−0.999, 10] in steps of this width.
const IRR_SCAN_STEP: f64 = 0.01;

/// A dated cash-flow schedule. Times are in years from now (t = 0 is
/// today); flows are kept sorted by time, with ties preserved in input
/// order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CashflowSchedule<F> {
    flows: Vec<(F, F)>,
    discount_rate: F,
}

impl<F: Scalar> CashflowSchedule<F> {
    /// Builds a schedule of (time, amount) pairs discounted at `rate`.
    /// Times must be finite and ≥ 0, amounts finite, and the rate > −1.
    pub fn new(mut flows: Vec<(F, F)>, discount_rate: F) -> Result<Self> {
        if flows.is_empty() {
            return Err(Error::InsufficientData(
                "cash-flow schedule is empty".into(),
            ));
        }
        for &(t, a) in &flows {
            if !(t >= F::zero()) || !t.is_finite() {
                return Err(Error::invalid("time", format!("must be ≥ 0, got {t}")));
            }
            if !a.is_finite() {
                return Err(Error::invalid("amount", format!("must be finite, got {a}")));
            }
        }
        if !(discount_rate > -F::one()) || !discount_rate.is_finite() {
            return Err(Error::invalid(
                "discount_rate",
                format!("must be > -1, got {discount_rate}"),
            ));
        }
        flows.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("times are finite"));
        Ok(CashflowSchedule {
            flows,
            discount_rate,
        })
    }

    /// Parses CSV text of `time,amount` rows (the header line is optional),
    /// with `.` decimal separators. Errors carry 1-based line numbers.
    pub fn from_csv(text: &str, discount_rate: F) -> Result<Self> {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        let mut flows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let row = raw.trim();
            if row.is_empty() {
                continue;
            }
            if line_no == 1 && row.eq_ignore_ascii_case("time,amount") {
                continue;
            }
            let bad = |reason: String| Error::Parse {
                context: "cashflow csv",
                line: line_no,
                reason,
            };
            let (time_str, amount_str) = row
                .split_once(',')
                .ok_or_else(|| bad(format!("expected `time,amount`, got `{row}`")))?;
            let time: f64 = time_str
                .trim()
                .parse()
                .map_err(|e| bad(format!("bad time `{}`: {e}", time_str.trim())))?;
            let amount: f64 = amount_str
                .trim()
                .parse()
                .map_err(|e| bad(format!("bad amount `{}`: {e}", amount_str.trim())))?;
            flows.push((F::cst(time), F::cst(amount)));
        }
        Self::new(flows, discount_rate)
    }

    pub fn flows(&self) -> &[(F, F)] {
        &self.flows
    }

    pub fn discount_rate(&self) -> F {
        self.discount_rate
    }
}

fn npv_at<F: Scalar>(flows: &[(F, F)], rate: F) -> F {
    let base = F::one() + rate;
    let mut total = F::zero();
    for &(t, a) in flows {
        total = total + a / base.powf(t);
    }
    total
}

/// Net present value Σ aₜ/(1+r)^t at the schedule's discount rate.
pub fn npv<F: Scalar>(schedule: &CashflowSchedule<F>) -> F {
    npv_at(&schedule.flows, schedule.discount_rate)
}

/// The outcome of an IRR search: `rate` is the smallest root found in
/// (−0.999, 10], `roots` lists every root in that range, and
/// `multiple_roots` flags non-conventional schedules where the IRR
/// ranking is ambiguous.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrrResult<F> {
    pub rate: F,
    pub roots: Vec<F>,
    pub multiple_roots: bool,
}

/// Internal rate of return: the discount rates where NPV crosses zero,
/// located by a bracket scan over (−0.999, 10] in 0.01 steps plus
/// bisection to 1e−12. A schedule whose amounts never change sign has no
/// IRR by construction (invalid input); a sign-changing schedule whose
/// roots all lie outside the scan range is a numerical failure.
pub fn irr<F: Scalar>(schedule: &CashflowSchedule<F>) -> Result<IrrResult<F>> {
    let flows = &schedule.flows;
    let has_positive = flows.iter().any(|&(_, a)| a > F::zero());
    let has_negative = flows.iter().any(|&(_, a)| a < F::zero());
    if !(has_positive && has_negative) {
        return Err(Error::invalid(
            "flows",
            "cash flows never change sign, so NPV is monotone and no IRR exists",
        ));
    }

    let mut grid: Vec<F> = (0..1100)
        .map(|k| F::cst(-0.999 + IRR_SCAN_STEP * k as f64))
        .collect();
    grid.push(F::cst(10.0));

    let mut roots: Vec<F> = Vec::new();
    let push_root = |roots: &mut Vec<F>, r: F| {
        if roots
            .last()
            .map_or(true, |&prev| (r - prev).abs() > F::cst(1e-9))
        {
            roots.push(r);
        }
    };

    let mut prev_rate = grid[0];
    let mut prev_value = npv_at(flows, prev_rate);
    if prev_value == F::zero() {
        push_root(&mut roots, prev_rate);
    }
    for &rate in &grid[1..] {
        let value = npv_at(flows, rate);
        if value == F::zero() {
            push_root(&mut roots, rate);
        } else if prev_value != F::zero() && (prev_value > F::zero()) != (value > F::zero()) {
            let (mut lo, mut hi) = (prev_rate, rate);
            let mut f_lo = prev_value;
            while hi - lo > F::cst(IRR_TOLERANCE) {
                let mid = F::cst(0.5) * (lo + hi);
                let f_mid = npv_at(flows, mid);
                if f_mid == F::zero() {
                    lo = mid;
                    hi = mid;
                } else if (f_mid > F::zero()) == (f_lo > F::zero()) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            push_root(&mut roots, F::cst(0.5) * (lo + hi));
        }
        prev_rate = rate;
        prev_value = value;
    }

    match roots.first() {
        Some(&rate) => Ok(IrrResult {
            rate,
            multiple_roots: roots.len() > 1,
            roots,
        }),
        None => Err(Error::Numerical(
            "NPV does not cross zero for any rate in (-0.999, 10]; no IRR in the searchable range"
                .into(),
        )),
    }
}

/// Payback outcome: either the (possibly fractional) year in which the
/// cumulative flows first reach zero, or an explicit statement that they
/// never do. Serializes as a number or `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Payback<F> {
    Recovered(F),
    Never,
}

impl<F: Copy> Payback<F> {
    pub fn years(&self) -> Option<F> {
        match *self {
            Payback::Recovered(y) => Some(y),
            Payback::Never => None,
        }
    }
}

impl<F: Scalar + Serialize> Serialize for Payback<F> {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.years().serialize(serializer)
    }
}

/// Time until cumulative (optionally discounted) flows first reach zero,
/// interpolating linearly between flow dates. The first flow must be a
/// negative initial investment.
pub fn payback_period<F: Scalar>(
    schedule: &CashflowSchedule<F>,
    discounted: bool,
) -> Result<Payback<F>> {
    let flows = &schedule.flows;
    if !(flows[0].1 < F::zero()) {
        return Err(Error::invalid(
            "flows",
            "payback requires a negative initial investment as the first flow",
        ));
    }
    let base = F::one() + schedule.discount_rate;
    let mut cumulative = F::zero();
    let mut prev_time = flows[0].0;
    for (k, &(t, a)) in flows.iter().enumerate() {
        let value = if discounted { a / base.powf(t) } else { a };
        let before = cumulative;
        cumulative = cumulative + value;
        if k > 0 && before < F::zero() && cumulative >= F::zero() {
            let tau = if t == prev_time || cumulative == before {
                t
            } else {
                prev_time + (F::zero() - before) / (cumulative - before) * (t - prev_time)
            };
            return Ok(Payback::Recovered(tau));
        }
        prev_time = t;
    }
    Ok(Payback::Never)
}

/// Accounting rate of return: mean undiscounted post-investment flow over
/// the magnitude of the initial investment. A schedule with no flows after
/// the investment returns 0.
pub fn arr<F: Scalar>(schedule: &CashflowSchedule<F>) -> Result<F> {
    let flows = &schedule.flows;
    if !(flows[0].1 < F::zero()) {
        return Err(Error::invalid(
            "flows",
            "accounting rate of return requires a negative initial investment as the first flow",
        ));
    }
    if flows.len() == 1 {
        return Ok(F::zero());
    }
    let amounts: Vec<F> = flows[1..].iter().map(|&(_, a)| a).collect();
    Ok(mean(&amounts) / flows[0].1.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptionKind {
    Call,
    Put,
}

/// A European option contract on a non-dividend-paying asset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptionSpec<F> {
    pub spot: F,
    pub strike: F,
    pub rate: F,
    pub sigma: F,
    pub maturity: F,
    pub kind: OptionKind,
}

impl<F: Scalar> OptionSpec<F> {
    pub fn validate(&self) -> Result<()> {
        if !(self.spot > F::zero()) || !self.spot.is_finite() {
            return Err(Error::invalid(
                "spot",
                format!("must be > 0, got {}", self.spot),
            ));
        }
        if !(self.strike > F::zero()) || !self.strike.is_finite() {
            return Err(Error::invalid(
                "strike",
                format!("must be > 0, got {}", self.strike),
            ));
        }
        if !self.rate.is_finite() {
            return Err(Error::invalid(
                "rate",
                format!("must be finite, got {}", self.rate),
            ));
        }
        if !(self.sigma >= F::zero()) || !self.sigma.is_finite() {
            return Err(Error::invalid(
                "sigma",
                format!("must be ≥ 0, got {}", self.sigma),
            ));
        }
        if !(self.maturity > F::zero()) || !self.maturity.is_finite() {
            return Err(Error::invalid(
                "maturity",
                format!("must be > 0, got {}", self.maturity),
            ));
        }
        Ok(())
    }
}

/// Black–Scholes price of a European option. The call is
/// S·Φ(d₁) − K·e^{−rT}·Φ(d₂); the put follows from put–call parity,
/// clamped at intrinsic zero. σ√T = 0 collapses to the deterministic
/// discounted payoff.
pub fn black_scholes_price<F: Scalar>(spec: &OptionSpec<F>) -> Result<F> {
    spec.validate()?;
    let discounted_strike = spec.strike * (-spec.rate * spec.maturity).exp();
    let vol = spec.sigma * spec.maturity.sqrt();
    let call = if vol == F::zero() {
        (spec.spot - discounted_strike).max(F::zero())
    } else {
        let half = F::cst(0.5);
        let d1 = ((spec.spot / spec.strike).ln()
            + (spec.rate + half * spec.sigma * spec.sigma) * spec.maturity)
            / vol;
        let d2 = d1 - vol;
        spec.spot * cdf(d1) - discounted_strike * cdf(d2)
    };
    Ok(match spec.kind {
        OptionKind::Call => call,
        OptionKind::Put => (call - spec.spot + discounted_strike).max(F::zero()),
    })
}
