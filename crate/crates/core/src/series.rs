//! Price and return series: the data model every other module consumes.
//!
//! Prices are (calendar date, positive price) pairs at a stated sampling
//! frequency (`periods_per_year`, e.g. 252 for daily closes). Missing dates
//! are fine — returns are always between consecutive observations, with no
//! calendar-gap interpolation. Sample variance is unbiased (n−1) here and
//! everywhere downstream.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{mean, sample_variance, Scalar};
use crate::stats::{sample_excess_kurtosis, sample_skewness};

/// How a return series was computed from prices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReturnKind {
    /// r_t = ln(p_t / p_{t−1})
    Log,
    /// r_t = p_t / p_{t−1} − 1
    Simple,
}

/// An ordered series of dated prices.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries<F> {
    observations: Vec<(NaiveDate, F)>,
    periods_per_year: u32,
}

impl<F: Scalar> PriceSeries<F> {
    /// Builds a series from (date, price) pairs. Rows may arrive in any
    /// order — they are normalized to ascending date. Duplicate dates,
    /// non-positive or non-finite prices, and fewer than 2 rows are errors.
    pub fn new(mut observations: Vec<(NaiveDate, F)>, periods_per_year: u32) -> Result<Self> {
        if observations.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "price series needs at least 2 rows, got {}",
                observations.len()
            )));
        }
        if periods_per_year == 0 {
            return Err(Error::invalid("periods_per_year", "must be positive"));
        }
        for (date, price) in &observations {
            if !(*price > F::zero()) || !price.is_finite() {
                return Err(Error::invalid(
                    "price",
                    format!("non-positive price {price} at {date}"),
                ));
            }
        }
        observations.sort_by_key(|(date, _)| *date);
        for pair in observations.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::invalid(
                    "date",
                    format!("duplicate date {}", pair[0].0),
                ));
            }
        }
        Ok(PriceSeries {
            observations,
            periods_per_year,
        })
    }

    /// Parses CSV text with a `date,price` header, ISO-8601 dates, and `.`
    /// decimal separators. Errors carry 1-based line numbers.
    pub fn from_csv(text: &str, periods_per_year: u32) -> Result<Self> {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim().eq_ignore_ascii_case("date,price") => {}
            Some((_, header)) => {
                return Err(Error::Parse {
                    context: "price csv",
                    line: 1,
                    reason: format!("expected header `date,price`, got `{}`", header.trim()),
                })
            }
            None => {
                return Err(Error::Parse {
                    context: "price csv",
                    line: 1,
                    reason: "empty input".into(),
                })
            }
        }

        let mut observations = Vec::new();
        for (idx, raw) in lines {
            let line_no = idx + 1;
            let row = raw.trim();
            if row.is_empty() {
                continue;
            }
            let bad = |reason: String| Error::Parse {
                context: "price csv",
                line: line_no,
                reason,
            };
            let (date_str, price_str) = row
                .split_once(',')
                .ok_or_else(|| bad(format!("expected `date,price`, got `{row}`")))?;
            let date = NaiveDate::parse_from_str(date_str.trim(), "%Y-%m-%d")
                .map_err(|e| bad(format!("bad date `{}`: {e}", date_str.trim())))?;
            let price: f64 = price_str
                .trim()
                .parse()
                .map_err(|e| bad(format!("bad price `{}`: {e}", price_str.trim())))?;
            if !(price > 0.0) || !price.is_finite() {
                return Err(bad(format!("non-positive price {price}")));
            }
            observations.push((date, F::cst(price)));
        }
        Self::new(observations, periods_per_year)
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn periods_per_year(&self) -> u32 {
        self.periods_per_year
    }

    pub fn observations(&self) -> &[(NaiveDate, F)] {
        &self.observations
    }

    pub fn prices(&self) -> impl Iterator<Item = F> + '_ {
        self.observations.iter().map(|&(_, p)| p)
    }

    /// Period-over-period returns between consecutive observations.
    pub fn returns(&self, kind: ReturnKind) -> ReturnSeries<F> {
        let values = self
            .observations
            .windows(2)
            .map(|w| {
                let ratio = w[1].1 / w[0].1;
                match kind {
                    ReturnKind::Log => ratio.ln(),
                    ReturnKind::Simple => ratio - F::one(),
                }
            })
            .collect();
        ReturnSeries {
            values,
            kind,
            periods_per_year: self.periods_per_year,
        }
    }
}

/// An ordered series of per-period returns of a single, fixed kind.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries<F> {
    values: Vec<F>,
    kind: ReturnKind,
    periods_per_year: u32,
}

impl<F: Scalar> ReturnSeries<F> {
    pub fn new(values: Vec<F>, kind: ReturnKind, periods_per_year: u32) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData("empty return series".into()));
        }
        if periods_per_year == 0 {
            return Err(Error::invalid("periods_per_year", "must be positive"));
        }
        for (i, r) in values.iter().enumerate() {
            if !r.is_finite() {
                return Err(Error::invalid(
                    "returns",
                    format!("non-finite value at index {i}"),
                ));
            }
            if kind == ReturnKind::Simple && *r <= F::cst(-1.0) {
                return Err(Error::invalid(
                    "returns",
                    format!("simple return {r} at index {i} is ≤ −1"),
                ));
            }
        }
        Ok(ReturnSeries {
            values,
            kind,
            periods_per_year,
        })
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn kind(&self) -> ReturnKind {
        self.kind
    }

    pub fn periods_per_year(&self) -> u32 {
        self.periods_per_year
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> F {
        mean(&self.values)
    }

    /// Unbiased sample variance; `None` below 2 observations.
    pub fn variance(&self) -> Option<F> {
        (self.values.len() >= 2).then(|| sample_variance(&self.values))
    }
}

/// Descriptive moments of a return series. Higher moments are `None` when
/// the sample is too short for the unbiased formula (variance: n ≥ 2,
/// skewness: n ≥ 3, excess kurtosis: n ≥ 4) or the series is constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesStats<F> {
    pub mean: F,
    pub variance: Option<F>,
    pub std_dev: Option<F>,
    pub skewness: Option<F>,
    pub excess_kurtosis: Option<F>,
    pub min: F,
    pub max: F,
    pub count: usize,
}

/// Sample moments with the crate's conventions: unbiased variance,
/// adjusted Fisher–Pearson skewness G1, unbiased excess kurtosis G2
/// (exact formulas in [`crate::stats`]).
pub fn summary_stats<F: Scalar>(series: &ReturnSeries<F>) -> SeriesStats<F> {
    let xs = series.values();
    let variance = series.variance();
    let min = xs.iter().copied().fold(F::infinity(), F::min);
    let max = xs.iter().copied().fold(F::neg_infinity(), F::max);
    SeriesStats {
        mean: series.mean(),
        variance,
        std_dev: variance.map(F::sqrt),
        skewness: sample_skewness(xs),
        excess_kurtosis: sample_excess_kurtosis(xs),
        min,
        max,
        count: xs.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> NaiveDate {
        NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
    }

    #[test]
    fn minimal_csv_parses() {
        let series: PriceSeries<f64> =
            PriceSeries::from_csv("date,price\n2020-01-02,100\n2020-01-03,101\n", 252).unwrap();
        assert_eq!(series.len(), 2);
        assert_eq!(series.observations()[0].0, d("2020-01-02"));
    }

    #[test]
    fn non_positive_price_is_rejected_with_line_number() {
        let err = PriceSeries::<f64>::from_csv("date,price\n2020-01-02,100\n2020-01-03,-5\n", 252)
            .unwrap_err();
        match err {
            Error::Parse { line, reason, .. } => {
                assert_eq!(line, 3);
                assert!(reason.contains("non-positive"), "{reason}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn malformed_row_reports_line() {
        let err = PriceSeries::<f64>::from_csv("date,price\n2020-01-02,100\nnot a row\n", 252)
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn missing_header_is_an_error() {
        let err =
            PriceSeries::<f64>::from_csv("2020-01-02,100\n2020-01-03,101\n", 252).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn shuffled_rows_ingest_identically() {
        let sorted: PriceSeries<f64> = PriceSeries::from_csv(
            "date,price\n2020-01-02,100\n2020-01-03,101\n2020-01-06,99\n",
            252,
        )
        .unwrap();
        let shuffled: PriceSeries<f64> = PriceSeries::from_csv(
            "date,price\n2020-01-06,99\n2020-01-02,100\n2020-01-03,101\n",
            252,
        )
        .unwrap();
        assert_eq!(sorted, shuffled);
    }

    #[test]
    fn duplicate_dates_are_rejected() {
        let err = PriceSeries::<f64>::new(
            vec![(d("2020-01-02"), 100.0), (d("2020-01-02"), 101.0)],
            252,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput { field: "date", .. }));
    }

    #[test]
    fn fewer_than_two_rows_is_an_error() {
        assert!(PriceSeries::<f64>::new(vec![(d("2020-01-02"), 100.0)], 252).is_err());
    }

    #[test]
    fn simple_and_log_returns_match_hand_values() {
        let series = PriceSeries::<f64>::new(
            vec![(d("2020-01-02"), 100.0), (d("2020-01-03"), 101.0)],
            252,
        )
        .unwrap();
        let simple = series.returns(ReturnKind::Simple);
        assert!((simple.values()[0] - 0.01).abs() < 1e-15);
        let log = series.returns(ReturnKind::Log);
        assert!((log.values()[0] - 0.009_950_330_853_168_083).abs() < 1e-15);
    }

    #[test]
    fn constant_prices_give_zero_returns_either_kind() {
        let series = PriceSeries::new(
            vec![
                (d("2020-01-02"), 50.0),
                (d("2020-01-03"), 50.0),
                (d("2020-01-06"), 50.0),
            ],
            252,
        )
        .unwrap();
        assert!(series
            .returns(ReturnKind::Simple)
            .values()
            .iter()
            .all(|&r| r == 0.0));
        assert!(series
            .returns(ReturnKind::Log)
            .values()
            .iter()
            .all(|&r| r == 0.0));
    }

    #[test]
    fn simple_return_round_trip_reconstructs_prices() {
        let prices = vec![
            (d("2021-03-01"), 100.0),
            (d("2021-03-02"), 103.5),
            (d("2021-03-03"), 97.25),
            (d("2021-03-04"), 99.875),
            (d("2021-03-08"), 121.0),
        ];
        let series = PriceSeries::<f64>::new(prices.clone(), 252).unwrap();
        let rets = series.returns(ReturnKind::Simple);
        let mut p = prices[0].1;
        for (r, expected) in rets.values().iter().zip(prices.iter().skip(1)) {
            p *= 1.0 + r;
            assert!(
                (p - expected.1).abs() <= 1e-12 * expected.1,
                "{p} vs {}",
                expected.1
            );
        }
    }

    #[test]
    fn log_return_never_exceeds_simple_return() {
        let series = PriceSeries::new(
            vec![
                (d("2021-03-01"), 100.0),
                (d("2021-03-02"), 130.0),
                (d("2021-03-03"), 70.0),
                (d("2021-03-04"), 70.0),
            ],
            252,
        )
        .unwrap();
        let log = series.returns(ReturnKind::Log);
        let simple = series.returns(ReturnKind::Simple);
        for (l, s) in log.values().iter().zip(simple.values()) {
            assert!(l <= s);
            if *s == 0.0 {
                assert_eq!(*l, 0.0);
            }
        }
    }

    #[test]
    fn simple_returns_below_minus_one_are_rejected() {
        assert!(ReturnSeries::new(vec![-1.5f64], ReturnKind::Simple, 252).is_err());
        // fine as a log return
        assert!(ReturnSeries::new(vec![-1.5f64], ReturnKind::Log, 252).is_ok());
    }

    #[test]
    fn summary_stats_hand_cases() {
        let constant = ReturnSeries::new(vec![0.01f64, 0.01, 0.01], ReturnKind::Log, 252).unwrap();
        let s = summary_stats(&constant);
        assert_eq!(s.mean, 0.01);
        assert_eq!(s.variance, Some(0.0));
        assert_eq!(s.count, 3);
        assert!(s.skewness.is_none(), "zero-variance skewness is undefined");

        let two = ReturnSeries::new(vec![-0.01f64, 0.01], ReturnKind::Log, 252).unwrap();
        let s2 = summary_stats(&two);
        assert!((s2.mean - 0.0).abs() < 1e-18);
        assert!((s2.variance.unwrap() - 2e-4).abs() < 1e-18);
        assert!(s2.excess_kurtosis.is_none());
        assert_eq!((s2.min, s2.max), (-0.01, 0.01));
    }
}
