//! Explicit members of the region, built from an `r`-factor log-concave core
//! `q` by `x_j = C^{G(j)}·a^{j+1}·q_j` where `G` is a pentagonal or
//! triangular exponent scheme.
//!
//! Scaling `a` up never leaves the region, so these points also show the
//! region is unbounded.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{QField, Rat};
use crate::region::{correct_side, phi};
use crate::seqcore::{is_r_factor_lc, LcCheck, Parity, SymSeq};

/// `P(n) = n(3n−1)`, twice the `n`-th pentagonal number.
pub fn pentagonal(n: u64) -> i64 {
    let n = n as i64;
    n * (3 * n - 1)
}

/// `T(n) = n(n+1)/2`.
pub fn triangular(n: u64) -> i64 {
    let n = n as i64;
    n * (n + 1) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Pentagonal,
    Triangular,
}

impl Scheme {
    pub fn exponent(self, n: u64) -> i64 {
        match self {
            Scheme::Pentagonal => pentagonal(n),
            Scheme::Triangular => triangular(n),
        }
    }

    /// `G(j−1) + G(j+1) − 2G(j)`, constant for both schemes.
    pub fn second_difference(self) -> i64 {
        match self {
            Scheme::Pentagonal => 6,
            Scheme::Triangular => 1,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Pentagonal => "pentagonal",
            Scheme::Triangular => "triangular",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pentagonal" => Ok(Scheme::Pentagonal),
            "triangular" => Ok(Scheme::Triangular),
            _ => Err(Error::Parse { input: s.into(), reason: "expected pentagonal or triangular".into() }),
        }
    }
}

/// The open interval `0 < C < 2√r/(1+√(1+4r)) = √r/φ_r`.
///
/// The bound generally needs two radicals, so membership is decided by the
/// squared form `C²φ_r² < r` inside `ℚ(√(1+4r))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CBound {
    r: Rat,
    phi: QField,
}

pub fn c_bound(r: &Rat) -> Result<CBound> {
    Ok(CBound { r: r.clone(), phi: phi(r)? })
}

impl CBound {
    pub fn r(&self) -> &Rat {
        &self.r
    }

    /// `C²φ_r² < r`.
    pub fn admits(&self, c: &Rat) -> bool {
        c.is_positive()
            && self.phi.square().scale(&c.square()).cmp_mixed(&QField::rational(self.r.clone())) == Ordering::Less
    }

    /// Stricter range the given scheme needs: the interior clauses require
    /// `C^k·φ_r² ≤ r` with `k` the scheme's second difference, and the first
    /// clause `C^{G(1)}·φ_r² ≤ r`.
    pub fn admits_for(&self, scheme: Scheme, c: &Rat) -> bool {
        match scheme {
            Scheme::Pentagonal => self.admits(c),
            Scheme::Triangular => {
                let r = QField::rational(self.r.clone());
                c.is_positive() && self.phi.square().scale(c).cmp_mixed(&r) == Ordering::Less
            }
        }
    }

    /// The bound as a single quadratic irrational, when `r` or `1+4r` is a
    /// perfect square.
    pub fn value(&self) -> Option<QField> {
        let sqrt_r = QField::sqrt_of(&self.r).ok()?;
        if sqrt_r.is_rational() || self.phi.is_rational() {
            sqrt_r.try_div(&self.phi).ok()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.r.to_f64().sqrt() / self.phi.to_f64()
    }
}

/// Lower bound for `a`. `exact` bounds are the true infimum; inexact ones are
/// a rational strictly above it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ABound {
    pub value: Rat,
    pub exact: bool,
}

const A_BOUND_DENOM: i64 = 1_000_000;

fn center_factor(scheme: Scheme, c: &Rat, n: usize) -> Result<Rat> {
    let n = n as u64;
    c.pow(scheme.exponent(n - 1) - scheme.exponent(n))
}

/// `a·√r > φ_r·K`, decided as `a²r > φ_r²K²`.
fn odd_center_holds(a: &Rat, r: &Rat, phi: &QField, k: &Rat) -> bool {
    let lhs = QField::rational(a.square() * r);
    a.is_positive() && lhs.cmp_mixed(&phi.square().scale(&k.square())) == Ordering::Greater
}

/// Lower bound for `a` with `K = C^{G(n−1)−G(n)}`: `(1+r)·K` (even) or
/// `φ_r/√r·K` (odd).
pub fn a_bound(r: &Rat, c: &Rat, n: usize, scheme: Scheme, parity: Parity) -> Result<ABound> {
    if n == 0 {
        return Err(Error::WitnessTooShort);
    }
    let bound = c_bound(r)?;
    if !bound.admits(c) {
        return Err(Error::InvalidC(c.to_string(), format!("{:.6}", bound.to_f64())));
    }
    let k = center_factor(scheme, c, n)?;
    match parity {
        Parity::Even => Ok(ABound { value: (Rat::one() + r) * k, exact: true }),
        Parity::Odd => {
            let phi = phi(r)?;
            let approx = phi.to_f64() / r.to_f64().sqrt() * k.to_f64();
            let mut num = BigInt::from((approx * A_BOUND_DENOM as f64).ceil() as i128);
            loop {
                let cand = Rat::new(num.clone(), A_BOUND_DENOM)?;
                if odd_center_holds(&cand, r, &phi, &k) {
                    return Ok(ABound { value: cand, exact: false });
                }
                num += 1;
            }
        }
    }
}

/// Inputs of the construction. `n` is `q_core.len() − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub q_core: Vec<QField>,
    pub r: Rat,
    #[serde(rename = "C")]
    pub c: Rat,
    pub a: Rat,
    pub scheme: Scheme,
    pub parity: Parity,
}

impl WitnessSpec {
    pub fn n(&self) -> usize {
        self.q_core.len().saturating_sub(1)
    }
}

/// Smallest geometric core whose symmetric sequence is `r`-factor
/// log-concave: ratios `q_j/q_{j−1} = r^{n−j+1}` with `q₋₁ = 1`.
/// All ones at `r = 1`.
pub fn default_core(r: &Rat, n: usize) -> Result<Vec<QField>> {
    let mut x = Rat::one();
    (0..=n)
        .map(|j| {
            x = &x * &r.pow((n - j + 1) as i64)?;
            Ok(QField::rational(x.clone()))
        })
        .collect()
}

pub fn build_witness(spec: &WitnessSpec) -> Result<SymSeq> {
    let n = spec.n();
    if n == 0 {
        return Err(Error::WitnessTooShort);
    }
    let bound = c_bound(&spec.r)?;
    if !bound.admits_for(spec.scheme, &spec.c) {
        return Err(Error::InvalidC(spec.c.to_string(), format!("{:.6}", bound.to_f64())));
    }
    let q = SymSeq::new(spec.q_core.clone(), spec.parity)?;
    if let LcCheck::FailsAt(k) = is_r_factor_lc(&q.materialize(), &QField::rational(spec.r.clone()))? {
        return Err(Error::QNotRFactorLC(k));
    }
    let k = center_factor(spec.scheme, &spec.c, n)?;
    let a_ok = match spec.parity {
        Parity::Even => spec.a > (Rat::one() + &spec.r) * &k,
        Parity::Odd => odd_center_holds(&spec.a, &spec.r, &phi(&spec.r)?, &k),
    };
    if !a_ok {
        let shown = a_bound(&spec.r, &spec.c, n, spec.scheme, spec.parity)?;
        return Err(Error::InvalidA { given: spec.a.to_string(), bound: shown.value.to_string() });
    }
    let coords = spec
        .q_core
        .iter()
        .enumerate()
        .map(|(j, qj)| {
            let factor = spec.c.pow(spec.scheme.exponent(j as u64))? * spec.a.pow(j as i64 + 1)?;
            Ok(qj.scale(&factor))
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = SymSeq::new(coords, spec.parity)?;
    if let Some(j) = correct_side(&witness, &spec.r)?.first_violation() {
        return Err(Error::NotInRegion(j));
    }
    Ok(witness)
}
