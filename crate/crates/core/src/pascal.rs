//! Infinite log-concavity of the rows of Pascal's triangle.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{certify_orbit, Certificate, Criterion};
use crate::error::{Error, Result};
use crate::exactnum::{QField, Rat};
use crate::seqcore::{LogOperator, Seq};

/// `{C(n,0), …, C(n,n)}`.
pub fn binomial_row(n: usize) -> Seq {
    let mut values = Vec::with_capacity(n + 1);
    let mut c = BigInt::from(1);
    values.push(QField::rational(Rat::from(c.clone())));
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        values.push(QField::rational(Rat::from(c.clone())));
    }
    Seq::new(values).expect("rational entries")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    R0,
    R1,
    Both,
}

impl Mode {
    fn wants_r0(self) -> bool {
        matches!(self, Mode::R0 | Mode::Both)
    }

    fn wants_r1(self) -> bool {
        matches!(self, Mode::R1 | Mode::Both)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::R0 => "r0",
            Mode::R1 => "r1",
            Mode::Both => "both",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r0" => Ok(Mode::R0),
            "r1" => Ok(Mode::R1),
            "both" => Ok(Mode::Both),
            _ => Err(Error::Parse { input: s.into(), reason: "expected r0, r1 or both".into() }),
        }
    }
}

/// Certificates for one row.
///
/// `certificate_r0` and `certificate_r1` both follow the classical `L`
/// orbit, so their iteration counts are comparable; `certificate_r1` is the
/// comparison figure. `certificate_r1_generalized` follows the `L_{r₁}` orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate_r0: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate_r1: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate_r1_generalized: Option<Certificate>,
    /// Seconds spent on the row.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time: Option<f64>,
}

impl RowReport {
    /// Every requested certificate on the classical orbit certified.
    pub fn all_certified(&self) -> bool {
        [&self.certificate_r0, &self.certificate_r1].into_iter().flatten().all(Certificate::is_certified)
    }

    /// `r₁` certified no later than `r₀`; vacuous unless both certified.
    pub fn r1_not_later(&self) -> bool {
        let at = |c: &Option<Certificate>| c.as_ref().and_then(Certificate::certified_at);
        match (at(&self.certificate_r1), at(&self.certificate_r0)) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        }
    }
}

pub fn verify_row(n: usize, mode: Mode, max_iters: usize) -> RowReport {
    let start = Instant::now();
    let row = binomial_row(n);
    let mut checks = Vec::new();
    if mode.wants_r0() {
        checks.push((QField::r0(), Criterion::R0Classic));
    }
    if mode.wants_r1() {
        checks.push((QField::r1(), Criterion::R1Comparative));
    }
    let classic = LogOperator::new(QField::one()).expect("unit factor");
    let mut certs = certify_orbit(&row, &classic, &checks, max_iters)
        .expect("binomial rows are nonnegative and rational")
        .into_iter();
    let certificate_r0 = if mode.wants_r0() { certs.next() } else { None };
    let certificate_r1 = certs.next();
    let certificate_r1_generalized = mode.wants_r1().then(|| {
        let step = LogOperator::new(QField::r1()).expect("r₁ > 1");
        certify_orbit(&row, &step, &[(QField::r1(), Criterion::R1Generalized)], max_iters)
            .expect("binomial rows are nonnegative and rational")
            .remove(0)
    });
    RowReport {
        n,
        certificate_r0,
        certificate_r1,
        certificate_r1_generalized,
        wall_time: Some(start.elapsed().as_secs_f64()),
    }
}

/// Verifies rows `lo..=hi` in parallel; reports come back ordered by `n`.
pub fn verify_range(lo: usize, hi: usize, mode: Mode, max_iters: usize) -> Result<Vec<RowReport>> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty row range {lo}..={hi}")));
    }
    Ok(verify_list(&(lo..=hi).collect::<Vec<_>>(), mode, max_iters))
}

/// Verifies the given rows in parallel, keeping their order.
pub fn verify_list(rows: &[usize], mode: Mode, max_iters: usize) -> Vec<RowReport> {
    // largest rows first so the slowest work starts early
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(rows[i]));
    let mut done: Vec<(usize, RowReport)> =
        order.into_par_iter().map(|i| (i, verify_row(rows[i], mode, max_iters))).collect();
    done.sort_by_key(|(i, _)| *i);
    done.into_iter().map(|(_, r)| r).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub rows: usize,
    pub certified_r0: usize,
    pub certified_r1: usize,
    pub certified_r1_generalized: usize,
    pub max_iterations_r0: Option<usize>,
    pub max_iterations_r1: Option<usize>,
    /// Present only when the reports carry timings.
    pub total_time: Option<f64>,
}

pub fn summarize(reports: &[RowReport]) -> Summary {
    let certified = |f: fn(&RowReport) -> &Option<Certificate>| {
        reports.iter().filter(|r| f(r).as_ref().is_some_and(Certificate::is_certified)).count()
    };
    let max_at = |f: fn(&RowReport) -> &Option<Certificate>| {
        reports.iter().filter_map(|r| f(r).as_ref().and_then(Certificate::certified_at)).max()
    };
    Summary {
        rows: reports.len(),
        certified_r0: certified(|r| &r.certificate_r0),
        certified_r1: certified(|r| &r.certificate_r1),
        certified_r1_generalized: certified(|r| &r.certificate_r1_generalized),
        max_iterations_r0: max_at(|r| &r.certificate_r0),
        max_iterations_r1: max_at(|r| &r.certificate_r1),
        total_time: reports.iter().map(|r| r.wall_time).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::Verdict;
    use crate::seqcore::apply_lr;

    fn ints(s: &Seq) -> Vec<String> {
        s.values().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(ints(&binomial_row(0)), ["1"]);
        assert_eq!(ints(&binomial_row(4)), ["1", "4", "6", "4", "1"]);
        assert_eq!(ints(&binomial_row(6)), ["1", "6", "15", "20", "15", "6", "1"]);
    }

    #[test]
    fn rows_follow_pascal_rule() {
        let mut prev = vec![BigInt::from(1)];
        for n in 1..60 {
            let mut next = vec![BigInt::from(1)];
            next.extend(prev.windows(2).map(|w| &w[0] + &w[1]));
            next.push(BigInt::from(1));
            let expected: Vec<QField> = next.iter().map(|v| QField::rational(Rat::from(v.clone()))).collect();
            assert_eq!(binomial_row(n).values(), &expected[..]);
            prev = next;
        }
    }

    #[test]
    fn verify_examples() {
        let zero = verify_row(0, Mode::Both, 20);
        assert_eq!(zero.certificate_r0.as_ref().unwrap().certified_at(), Some(0));
        assert_eq!(zero.certificate_r1.as_ref().unwrap().certified_at(), Some(0));
        let ten = verify_row(10, Mode::Both, 20);
        assert!(ten.all_certified());
        assert!(ten.r1_not_later());
        assert!(ten.certificate_r0.as_ref().unwrap().iterations <= 4);
        let only = verify_range(5, 5, Mode::R1, 20).unwrap();
        assert_eq!(only.len(), 1);
        assert!(only[0].certificate_r0.is_none());
        assert!(only[0].certificate_r1_generalized.is_some());
        assert!(verify_range(3, 2, Mode::R0, 20).is_err());
    }

    #[test]
    fn generalized_route_mostly_refutes() {
        let report = verify_row(10, Mode::R1, 20);
        assert_eq!(report.certificate_r1_generalized.unwrap().verdict, Verdict::Refuted);
    }

    #[test]
    fn small_rows_certify_in_order() {
        let reports = verify_range(0, 60, Mode::Both, 20).unwrap();
        assert_eq!(reports.iter().map(|r| r.n).collect::<Vec<_>>(), (0..=60).collect::<Vec<_>>());
        for r in &reports {
            assert!(r.all_certified(), "row {}", r.n);
            assert!(r.r1_not_later(), "row {}", r.n);
        }
        let summary = summarize(&reports);
        assert_eq!(summary.certified_r0, 61);
        assert_eq!(summary.certified_r1, 61);
    }

    #[test]
    fn iterates_stay_symmetric() {
        let one = QField::one();
        for n in [5, 12, 31] {
            let mut s = binomial_row(n);
            for _ in 0..4 {
                s = apply_lr(&s, &one).unwrap();
                assert!(s.is_symmetric());
            }
        }
    }

    #[test]
    fn report_json_omits_absent_fields() {
        let mut report = verify_row(3, Mode::R0, 20);
        report.wall_time = None;
        let json = serde_json::to_value(&report).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["certificate_r0", "n"]);
    }
}
