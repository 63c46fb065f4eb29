//! Sufficient criteria for infinite log-concavity and the quartic necessary
//! condition.
//!
//! A [`Certificate`] records which criterion was applied, the factor it used,
//! and how many operator applications were needed before the criterion held.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QField;
use crate::seqcore::{first_lc_failure, is_r_factor_lc, lc_slack, LcCheck, LogOperator, Parity, Seq, SymSeq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Some `L`-iterate is `r`-factor log-concave with `r ≥ r₀`.
    R0Classic,
    /// Some `L_r`-iterate is `r`-factor log-concave with `r ≥ r₁`.
    R1Generalized,
    /// The symmetric-sequence conditions with constant `r₁` and a `(1+r)` center.
    SymmetricLemma,
    /// `r₁`-factor check along the classical `L` orbit. Only meaningful as a
    /// comparison against [`Criterion::R0Classic`]; it certifies nothing.
    R1Comparative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub iteration: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub criterion: Criterion,
    pub r: QField,
    pub iterations: usize,
    /// Negative entry for refuted runs; last criterion failure otherwise.
    pub failing: Option<Failure>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// Iteration count when certified.
    pub fn certified_at(&self) -> Option<usize> {
        self.is_certified().then_some(self.iterations)
    }
}

/// `r⁵·a_{k−2}a_{k−1}a_{k+1}a_{k+2} ≤ a_k⁴` at every index.
///
/// Requires `s` to be nonnegative and `r`-factor log-concave.
pub fn quartic_check(s: &Seq, r: &QField) -> Result<LcCheck> {
    if let LcCheck::FailsAt(index) = is_r_factor_lc(s, r)? {
        return Err(Error::NotRFactorLC { r: r.to_string(), index });
    }
    let r5 = r.pow(5);
    for k in 0..s.len() {
        let k = k as isize;
        let neighbours = [k - 2, k - 1, k + 1, k + 2].map(|i| s.at(i));
        let [Some(a), Some(b), Some(c), Some(d)] = neighbours else {
            continue;
        };
        let prod = [b, c, d].into_iter().try_fold(a.clone(), |acc, v| acc.try_mul(v))?;
        let lhs = r5.try_mul(&prod)?;
        let rhs = s.at(k).expect("k in range").pow(4);
        if lhs.try_cmp(&rhs)? == Ordering::Greater {
            return Ok(LcCheck::FailsAt(k as usize));
        }
    }
    Ok(LcCheck::Holds)
}

/// Follows the orbit of `s` under `step` and tests each criterion factor at
/// every iterate, starting before the first application.
pub(crate) fn certify_orbit(
    s: &Seq,
    step: &LogOperator,
    checks: &[(QField, Criterion)],
    max_iters: usize,
) -> Result<Vec<Certificate>> {
    for (r, _) in checks {
        s.check_field(r)?;
    }
    s.check_field(step.r())?;
    if let Some(k) = s.first_negative() {
        return Err(Error::NegativeEntry(k));
    }
    let mut results: Vec<Option<Certificate>> = vec![None; checks.len()];
    let mut last_fail = vec![None; checks.len()];
    let mut current = s.clone();
    for iteration in 0..=max_iters {
        if let Some(index) = current.first_negative() {
            for (slot, (r, criterion)) in results.iter_mut().zip(checks) {
                slot.get_or_insert_with(|| Certificate {
                    verdict: Verdict::Refuted,
                    criterion: *criterion,
                    r: r.clone(),
                    iterations: iteration,
                    failing: Some(Failure { iteration, index }),
                });
            }
            break;
        }
        for (i, (r, criterion)) in checks.iter().enumerate() {
            if results[i].is_some() {
                continue;
            }
            match first_lc_failure(&current, r) {
                None => {
                    results[i] = Some(Certificate {
                        verdict: Verdict::Certified,
                        criterion: *criterion,
                        r: r.clone(),
                        iterations: iteration,
                        failing: None,
                    })
                }
                Some(index) => last_fail[i] = Some(Failure { iteration, index }),
            }
        }
        if results.iter().all(Option::is_some) || iteration == max_iters {
            break;
        }
        current = step.apply(&current)?;
    }
    Ok(results
        .into_iter()
        .zip(checks)
        .zip(last_fail)
        .map(|((slot, (r, criterion)), failing)| {
            slot.unwrap_or_else(|| Certificate {
                verdict: Verdict::Inconclusive,
                criterion: *criterion,
                r: r.clone(),
                iterations: max_iters,
                failing,
            })
        })
        .collect())
}

/// Certifies infinite log-concavity of `s`.
///
/// With `step_r = 1` the orbit is the classical `L` and `r_criterion` must be
/// at least `r₀`. With `step_r = r_criterion` the orbit is `L_r` and the
/// factor must be at least `r₁`. Negative iterates refute.
pub fn certify_infinite(s: &Seq, r_criterion: &QField, step_r: &QField, max_iters: usize) -> Result<Certificate> {
    let (criterion, threshold) = if step_r.is_one() {
        (Criterion::R0Classic, QField::r0())
    } else if step_r == r_criterion {
        (Criterion::R1Generalized, QField::r1())
    } else {
        return Err(Error::UnsupportedStep);
    };
    if r_criterion.cmp_mixed(&threshold) == Ordering::Less {
        return Err(Error::ThresholdTooLow { given: r_criterion.to_string(), threshold: threshold.to_string() });
    }
    let step = LogOperator::new(step_r.clone())?;
    let mut certs = certify_orbit(s, &step, &[(r_criterion.clone(), criterion)], max_iters)?;
    Ok(certs.remove(0))
}

/// Checks the symmetric-sequence conditions on an even core `(x₀, …, xₙ)`,
/// viewed as `a₀ = 1, a_k = x_{k−1}`, `m = n+1`:
/// (i) `a_k² ≥ r₁·a_{k−1}a_{k+1}` for `k < m`, (ii) `a_m ≥ (1+r)·a_{m−1}`.
///
/// Failing either condition yields an inconclusive certificate.
pub fn symmetric_criterion(s: &SymSeq, r: &QField) -> Result<Certificate> {
    if s.parity() == Parity::Odd {
        return Err(Error::ParityUnsupported);
    }
    LogOperator::new(r.clone())?;
    let r1 = QField::r1();
    let seq = s.materialize();
    seq.check_field(&r1)?;
    seq.check_field(r)?;
    let m = s.n() + 1;
    let mut failing =
        (1..m).find(|&k| lc_slack(&seq, k, &r1) == Ordering::Less).map(|index| Failure { iteration: 0, index });
    if failing.is_none() {
        let prev = seq.at(m as isize - 1).expect("m ≥ 1");
        let bound = QField::one().try_add(r)?.try_mul(prev)?;
        if seq.at(m as isize).expect("center").try_cmp(&bound)? == Ordering::Less {
            failing = Some(Failure { iteration: 0, index: m });
        }
    }
    Ok(Certificate {
        verdict: if failing.is_none() { Verdict::Certified } else { Verdict::Inconclusive },
        criterion: Criterion::SymmetricLemma,
        r: r1,
        iterations: 0,
        failing,
    })
}

/// Iterations-to-certify along the classical orbit for `r₀` and `r₁`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub r0: Certificate,
    pub r1: Certificate,
}

impl Comparison {
    /// `r₁` certified no later than `r₀` (vacuously true unless both certify).
    pub fn r1_not_later(&self) -> bool {
        match (self.r1.certified_at(), self.r0.certified_at()) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        }
    }
}

pub fn compare_criteria(s: &Seq, max_iters: usize) -> Result<Comparison> {
    let step = LogOperator::new(QField::one())?;
    let checks = [(QField::r0(), Criterion::R0Classic), (QField::r1(), Criterion::R1Comparative)];
    let mut certs = certify_orbit(s, &step, &checks, max_iters)?;
    let r1 = certs.pop().expect("two checks");
    let r0 = certs.pop().expect("two checks");
    Ok(Comparison { r0, r1 })
}
