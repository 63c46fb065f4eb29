//! The region bounded by the r-factor hypersurfaces `H₀ … Hₙ`.
//!
//! A point is a symmetric core `(x₀, …, xₙ)` with a parity. With `x₋₁ = 1`
//! and `c = φ_r² = φ_r + r` the membership clauses are
//!
//! * `j < n`: `x_j² ≥ c·x_{j−1}·x_{j+1}`,
//! * `j = n`, even: `x_n ≥ (1+r)·x_{n−1}`,
//! * `j = n`, odd: `x_n² ≥ c·x_{n−1}²`.
//!
//! Equality counts as inside. The region is closed under `L_r`, which
//! [`closure_test`] checks along an orbit.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{QField, Rat};
use crate::seqcore::{LogOperator, Parity, SymSeq, LOG_MARGIN};

/// Core points are symmetric sequences; the alias names the geometric role.
pub type RegionPoint = SymSeq;

/// `φ_r = (1 + √(1+4r))/2` for rational `r ≥ 1`.
pub fn phi(r: &Rat) -> Result<QField> {
    if r < &Rat::one() {
        return Err(Error::RNotSupported(r.to_string()));
    }
    QField::phi(r)
}

fn rational_r(r: &QField) -> Result<&Rat> {
    r.as_rational().ok_or_else(|| Error::RNotRational(r.to_string()))
}

/// Positive fixed point of `L_r` on `{1,x,x,1}` (even, `1+r`) or `{1,x,1}`
/// (odd, `φ_r`).
pub fn fixed_point(parity: Parity, r: &QField) -> Result<QField> {
    if r.cmp_mixed(&QField::one()) == Ordering::Less {
        return Err(Error::RNotSupported(r.to_string()));
    }
    match parity {
        Parity::Even => QField::one().try_add(r),
        Parity::Odd => phi(rational_r(r)?),
    }
}

/// `x = base^(1/root)`, so that rational powers of `x` can stay exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactPowerBase {
    pub base: Rat,
    pub root: u32,
}

impl ExactPowerBase {
    pub fn new(base: Rat, root: u32) -> Result<Self> {
        if !base.is_positive() || root == 0 {
            return Err(Error::InvalidArgument(format!("need base > 0 and root ≥ 1, got {base}^(1/{root})")));
        }
        Ok(ExactPowerBase { base, root })
    }

    pub fn rational(x: Rat) -> Result<Self> {
        Self::new(x, 1)
    }

    /// `x^e`, or [`Error::InexactPower`] when the result is irrational.
    pub fn pow(&self, e: &Rat) -> Result<Rat> {
        let num = e.numer().to_i64().ok_or_else(|| Error::InexactPower(format!("exponent {e}")))?;
        let den = e.denom() * BigInt::from(self.root);
        let den = den.to_u32().ok_or_else(|| Error::InexactPower(format!("exponent {e}")))?;
        let raised = self.base.pow(num)?;
        let inexact = || Error::InexactPower(format!("({})^({}/{})", self.base, num, den));
        let n = exact_root(raised.numer(), den).ok_or_else(inexact)?;
        let d = exact_root(raised.denom(), den).ok_or_else(inexact)?;
        Rat::new(n, d)
    }

    pub fn value(&self) -> Result<Rat> {
        self.pow(&Rat::one())
    }
}

fn exact_root(v: &BigInt, k: u32) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let root = v.nth_root(k);
    (num_traits::pow(root.clone(), k as usize) == *v).then_some(root)
}

/// Parameters of one point on hypersurface `H_surface`.
///
/// `gaps` holds the `n − 1` free exponent gaps in order, strictly decreasing
/// inside `(0, 1)`: `d₂…dₙ` for `H₀` (where `d₁ = 1`), `d₁…d_j, d_{j+2}…dₙ`
/// for `H_j` (where `d_{j+1} = d_j`), and `d₁…d_{n−1}` for `Hₙ` (where
/// `dₙ = 0`). For `n = 0` both surfaces are the fixed points and `x` is unused.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HParams {
    pub r: Rat,
    pub n: usize,
    pub parity: Parity,
    pub surface: usize,
    pub x: ExactPowerBase,
    pub gaps: Vec<Rat>,
}

impl HParams {
    fn validate(&self) -> Result<()> {
        if self.r < Rat::one() {
            return Err(Error::RNotSupported(self.r.to_string()));
        }
        if self.surface > self.n {
            return Err(Error::InvalidArgument(format!("surface {} exceeds n = {}", self.surface, self.n)));
        }
        let expected = self.n.saturating_sub(1);
        if self.gaps.len() != expected {
            return Err(Error::InvalidGaps(format!("expected {expected} gaps, got {}", self.gaps.len())));
        }
        let mut upper = Rat::one();
        for d in &self.gaps {
            if d >= &upper || !d.is_positive() {
                return Err(Error::InvalidGaps(format!("gaps must satisfy 1 > d₁ > … > 0, found {d} after {upper}")));
            }
            upper = d.clone();
        }
        if self.x.value()? < Rat::one() {
            return Err(Error::InvalidArgument("x must be at least 1".into()));
        }
        Ok(())
    }

    /// All `n` gaps `d₁…dₙ` with the surface's implied entry filled in.
    fn full_gaps(&self) -> Vec<Rat> {
        let mut d = self.gaps.clone();
        match self.surface {
            0 => d.insert(0, Rat::one()),
            j if j == self.n => d.push(Rat::zero()),
            j => d.insert(j, self.gaps[j - 1].clone()),
        }
        d
    }
}

/// The point of `H_surface` with the given parameters, computed exactly.
pub fn hypersurface_point(p: &HParams) -> Result<RegionPoint> {
    p.validate()?;
    let phi = phi(&p.r)?;
    let one_plus_r = QField::rational(Rat::one() + &p.r);
    let center_coeff = match p.parity {
        Parity::Even => one_plus_r,
        Parity::Odd => phi.clone(),
    };
    if p.n == 0 {
        return SymSeq::new(vec![center_coeff], p.parity);
    }
    let gaps = p.full_gaps();
    let mut exponent = Rat::one();
    let mut coords = Vec::with_capacity(p.n + 1);
    for i in 0..=p.n {
        if i > 0 {
            exponent = exponent + &gaps[i - 1];
        }
        let power = QField::rational(p.x.pow(&exponent)?);
        let coeff = match i {
            i if i != p.surface => QField::one(),
            i if i == p.n => center_coeff.clone(),
            _ => phi.clone(),
        };
        coords.push(coeff.try_mul(&power)?);
    }
    SymSeq::new(coords, p.parity)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseVerdict {
    pub surface: usize,
    pub holds: bool,
    pub on_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideReport {
    pub clauses: Vec<ClauseVerdict>,
}

impl SideReport {
    pub fn is_member(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn first_violation(&self) -> Option<usize> {
        self.clauses.iter().find(|c| !c.holds).map(|c| c.surface)
    }
}

/// Evaluates every membership clause exactly.
pub fn correct_side(p: &RegionPoint, r: &Rat) -> Result<SideReport> {
    let phi = phi(r)?;
    let c = phi.try_add(&QField::rational(r.clone()))?;
    let x = p.core();
    let n = p.n();
    let one = QField::one();
    let at = |j: isize| if j < 0 { &one } else { &x[j as usize] };
    if let Some(v) = x.iter().find(|v| !v.compatible(&c)) {
        return Err(Error::MixedField(v.field(), c.field()));
    }
    let ln_c = c.ln_approx();
    let ln_one_plus_r = (Rat::one() + r).ln_approx();
    let mut clauses = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let ji = j as isize;
        let prev = at(ji - 1);
        let next = if j < n { &x[j + 1] } else { prev };
        // lhs and rhs as products, with the constant factor's log
        let (lhs, rhs, factor): (&[&QField], &[&QField], f64) = match (j < n, p.parity()) {
            (true, _) => (&[&x[j], &x[j]], &[prev, next], ln_c),
            (false, Parity::Even) => (&[&x[j]], &[prev], ln_one_plus_r),
            (false, Parity::Odd) => (&[&x[j], &x[j]], &[prev, prev], ln_c),
        };
        let ord = match log_order(lhs, rhs, factor) {
            Some(ord) => ord,
            None => {
                let lhs = lhs.iter().try_fold(QField::one(), |acc, v| acc.try_mul(v))?;
                let rhs = rhs.iter().try_fold(QField::one(), |acc, v| acc.try_mul(v))?;
                let rhs =
                    if j == n && p.parity() == Parity::Even { rhs.scale(&(Rat::one() + r)) } else { c.try_mul(&rhs)? };
                lhs.try_cmp(&rhs)?
            }
        };
        clauses.push(ClauseVerdict { surface: j, holds: ord != Ordering::Less, on_boundary: ord == Ordering::Equal });
    }
    Ok(SideReport { clauses })
}

/// Order of `Π lhs` against `e^factor · Π rhs` from logarithms, when every
/// entry is a positive rational and the two sides are clearly apart.
fn log_order(lhs: &[&QField], rhs: &[&QField], factor: f64) -> Option<Ordering> {
    let ln = |vs: &[&QField]| -> Option<f64> {
        vs.iter().map(|v| v.as_rational().filter(|q| q.is_positive()).map(Rat::ln_approx)).sum()
    };
    let gap = ln(lhs)? - ln(rhs)? - factor;
    if gap > LOG_MARGIN {
        Some(Ordering::Greater)
    } else if gap < -LOG_MARGIN {
        Some(Ordering::Less)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub iteration: usize,
    /// Violated surface, or the core index that stopped being positive.
    pub surface: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub iterations: usize,
    pub violation: Option<Violation>,
    pub last_point: RegionPoint,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Applies `L_r` to the materialized point `iters` times, re-checking
/// membership after every application.
pub fn closure_test(p: &RegionPoint, r: &Rat, iters: usize) -> Result<ClosureReport> {
    if let Some(j) = correct_side(p, r)?.first_violation() {
        return Err(Error::NotInRegion(j));
    }
    let op = LogOperator::new(QField::rational(r.clone()))?;
    let mut current = p.clone();
    for iteration in 1..=iters {
        let image = op.apply(&current.materialize())?;
        let next = match SymSeq::from_materialized(&image, p.parity()) {
            Ok(next) => next,
            Err(e) => {
                let surface = match e {
                    Error::NonPositiveCoordinate(k) => k,
                    _ => 0,
                };
                let violation = Some(Violation { iteration, surface });
                return Ok(ClosureReport { iterations: iteration - 1, violation, last_point: current });
            }
        };
        if let Some(surface) = correct_side(&next, r)?.first_violation() {
            let violation = Some(Violation { iteration, surface });
            return Ok(ClosureReport { iterations: iteration - 1, violation, last_point: next });
        }
        current = next;
    }
    Ok(ClosureReport { iterations: iters, violation: None, last_point: current })
}

/// One gap `d_j`, exact when `x_j` is a recognized rational power of `x₀`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub exact: Option<Rat>,
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub x: QField,
    pub gaps: Vec<Gap>,
    /// Why the point is not of the form `(x, x^{1+d₁}, …)` with
    /// `1 ≥ d₁ ≥ … ≥ dₙ ≥ 0`; `None` when it is.
    pub not_geometric: Option<String>,
}

impl Decomposition {
    pub fn is_geometric(&self) -> bool {
        self.not_geometric.is_none()
    }
}

/// Default largest denominator tried when recognizing exact exponents.
pub const DEFAULT_PRECISION: u32 = 64;

/// Reads `x = x₀` and the gaps `d_j` from `x_j = x^{1+d₁+…+d_j}`.
///
/// Range and monotonicity are decided exactly through ratio comparisons
/// (`d_j ≥ 0 ⇔ x_j ≥ x_{j−1}`, `d_j ≤ 1 ⇔ x_j ≤ x₀·x_{j−1}`,
/// `d_j ≥ d_{j+1} ⇔ x_j² ≥ x_{j−1}·x_{j+1}`); the gap values themselves are
/// diagnostics. `precision` bounds the exponent denominators tried for the
/// exact values.
pub fn decompose(p: &RegionPoint, precision: u32) -> Result<Decomposition> {
    let x = p.core();
    let x0 = x[0].clone();
    if x0.try_cmp(&QField::one())? != Ordering::Greater {
        return Err(Error::InvalidArgument(format!("x₀ = {x0} must exceed 1")));
    }
    let ln_x0 = x0.ln_approx();
    let mut exponents = vec![Some(Rat::one())];
    for xj in &x[1..] {
        exponents.push(exact_exponent(&x0, xj, precision));
    }
    let gaps = (1..x.len())
        .map(|j| {
            let exact = match (&exponents[j], &exponents[j - 1]) {
                (Some(a), Some(b)) => Some(a - b),
                _ => None,
            };
            let approx = (x[j].ln_approx() - x[j - 1].ln_approx()) / ln_x0;
            Gap { exact, approx }
        })
        .collect();
    let mut reason = None;
    for j in 1..x.len() {
        if x[j].try_cmp(&x[j - 1])? == Ordering::Less {
            reason = Some(format!("d{j} < 0"));
        } else if x[j].try_cmp(&x0.try_mul(&x[j - 1])?)? == Ordering::Greater {
            reason = Some(format!("d{j} > 1"));
        } else if j + 1 < x.len() && x[j].square().try_cmp(&x[j - 1].try_mul(&x[j + 1])?)? == Ordering::Less {
            reason = Some(format!("d{j} < d{}", j + 1));
        }
        if reason.is_some() {
            break;
        }
    }
    Ok(Decomposition { x: x0, gaps, not_geometric: reason })
}

/// `e = u/v` with `v ≤ precision` and `base^u = value^v`, if one exists.
fn exact_exponent(base: &QField, value: &QField, precision: u32) -> Option<Rat> {
    let (b, v) = (base.as_rational()?, value.as_rational()?);
    let ratio = value.ln_approx() / base.ln_approx();
    if !ratio.is_finite() || ratio.abs() > 4096.0 {
        return None;
    }
    for den in 1..=precision as i64 {
        let num = (ratio * den as f64).round() as i64;
        if b.pow(num).ok()? == v.pow(den).ok()? {
            return Rat::new(num, den).ok();
        }
    }
    None
}
