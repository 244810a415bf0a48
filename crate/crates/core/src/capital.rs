//! Cost-of-capital estimation: OLS beta, the CAPM cost of equity, and the
//! weighted average cost of capital.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Warned};
use crate::scalar::{mean, Scalar};
use crate::series::ReturnSeries;

/// Capital-structure weights must sum to 1 within this tolerance.
const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Fewer observations than this make the OLS beta too noisy to report.
const MIN_BETA_OBSERVATIONS: usize = 30;

/// Financing mix and component costs. `kd`, `ke`, `kp` are the costs of
/// debt, equity, and preferred stock; `d_v`, `e_v`, `p_v` their value
/// weights (summing to 1); `tax_rate` the corporate rate shielding debt.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapitalStructure<F> {
    pub kd: F,
    pub tax_rate: F,
    pub d_v: F,
    pub ke: F,
    pub e_v: F,
    pub kp: F,
    pub p_v: F,
}

impl<F: Scalar> CapitalStructure<F> {
    pub fn validate(&self) -> Result<()> {
        for (name, cost) in [("kd", self.kd), ("ke", self.ke), ("kp", self.kp)] {
            if !cost.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {cost}")));
            }
        }
        if !(self.tax_rate >= F::zero()) || !(self.tax_rate <= F::one()) {
            return Err(Error::invalid(
                "tax_rate",
                format!("must be in [0, 1], got {}", self.tax_rate),
            ));
        }
        let weights = [("d_v", self.d_v), ("e_v", self.e_v), ("p_v", self.p_v)];
        for (name, w) in weights {
            if !(w >= F::zero()) || !w.is_finite() {
                return Err(Error::invalid(name, format!("must be ≥ 0, got {w}")));
            }
        }
        let total = self.d_v + self.e_v + self.p_v;
        if (total - F::one()).abs() > F::cst(WEIGHT_SUM_TOL) {
            return Err(Error::invalid(
                "d_v",
                format!("financing weights must sum to 1, got {total}"),
            ));
        }
        Ok(())
    }
}

/// CAPM inputs: risk-free rate, systematic beta, and the market risk
/// premium E[r_m] − r_f.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapmInputs<F> {
    pub rf: F,
    pub beta: F,
    pub mrp: F,
}

impl<F: Scalar> CapmInputs<F> {
    pub fn validate(&self) -> Result<()> {
        for (name, x) in [("rf", self.rf), ("beta", self.beta), ("mrp", self.mrp)] {
            if !x.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {x}")));
            }
        }
        Ok(())
    }

    /// Non-fatal diagnostics: a non-positive market risk premium prices
    /// systematic risk at zero or negative compensation.
    pub fn warnings(&self) -> Vec<String> {
        if self.mrp <= F::zero() {
            vec![format!(
                "market risk premium {} is not positive; beta exposure earns no reward",
                self.mrp
            )]
        } else {
            Vec::new()
        }
    }
}

/// OLS beta of an asset against the market: cov(asset, market)/var(market),
/// computed on the raw return values. Both series need the same length and
/// at least 30 observations. Estimates outside the typical [0, 2] equity
/// band are flagged with a warning, not rejected.
pub fn estimate_beta<F: Scalar>(
    asset: &ReturnSeries<F>,
    market: &ReturnSeries<F>,
) -> Result<Warned<F>> {
    let a = asset.values();
    let m = market.values();
    if a.len() != m.len() {
        return Err(Error::invalid(
            "market",
            format!("length {} does not match asset length {}", m.len(), a.len()),
        ));
    }
    if a.len() < MIN_BETA_OBSERVATIONS {
        return Err(Error::InsufficientData(format!(
            "beta estimation needs at least {MIN_BETA_OBSERVATIONS} observations, got {}",
            a.len()
        )));
    }
    if m.iter().all(|&y| y == m[0]) {
        return Err(Error::invalid(
            "market",
            "market returns are constant; beta is undefined",
        ));
    }
    let a_bar = mean(a);
    let m_bar = mean(m);
    let mut cov = F::zero();
    let mut var = F::zero();
    for (&x, &y) in a.iter().zip(m) {
        let dm = y - m_bar;
        cov = cov + (x - a_bar) * dm;
        var = var + dm * dm;
    }
    if !(var > F::zero()) {
        return Err(Error::invalid(
            "market",
            "market returns have zero variance; beta is undefined",
        ));
    }
    let beta = cov / var;
    let warnings = if beta < F::zero() || beta > F::cst(2.0) {
        vec![format!(
            "estimated beta {beta} is outside the typical [0, 2] range for equities"
        )]
    } else {
        Vec::new()
    };
    Ok(Warned::new(beta, warnings))
}

/// CAPM cost of equity k_e = r_f + β·(E[r_m] − r_f).
pub fn capm_cost_of_equity<F: Scalar>(inputs: &CapmInputs<F>) -> Result<F> {
    inputs.validate()?;
    Ok(inputs.rf + inputs.beta * inputs.mrp)
}

/// Weighted average cost of capital
/// k_d·(1−T)·d_v + k_e·e_v + k_p·p_v, with the tax shield applied to debt
/// only.
pub fn wacc<F: Scalar>(structure: &CapitalStructure<F>) -> Result<F> {
    structure.validate()?;
    Ok(
        structure.kd * (F::one() - structure.tax_rate) * structure.d_v
            + structure.ke * structure.e_v
            + structure.kp * structure.p_v,
    )
}
