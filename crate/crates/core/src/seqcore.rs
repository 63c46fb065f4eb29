//! Finite sequences with implicit zero padding, the symmetric sequences
//! `{…,0,1,x₀,…,xₙ[,xₙ],…,x₀,1,0,…}`, and the operator
//! `L_r(a)_k = a_k² − r·a_{k−1}·a_{k+1}` with its iterates.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QField;

// Below this length the rayon split costs more than it saves.
const PAR_THRESHOLD: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::Parse { input: other.to_string(), reason: "parity must be `even` or `odd`".into() }),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A finite window `a_0, …, a_{len−1}` of a sequence that is zero elsewhere.
///
/// All stored values share one quadratic field (rationals fit anywhere).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Seq {
    values: Vec<QField>,
    #[serde(skip)]
    field: u64,
}

impl Seq {
    pub fn new(values: Vec<QField>) -> Result<Self> {
        let mut field = 0;
        for v in &values {
            match (field, v.field()) {
                (_, 0) => {}
                (0, d) => field = d,
                (f, d) if f == d => {}
                (f, d) => return Err(Error::MixedField(f, d)),
            }
        }
        Ok(Seq { values, field })
    }

    /// Like [`Seq::new`] but rejects negative entries.
    pub fn nonnegative(values: Vec<QField>) -> Result<Self> {
        let s = Self::new(values)?;
        match s.first_negative() {
            Some(k) => Err(Error::NegativeEntry(k)),
            None => Ok(s),
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Seq { values: values.iter().map(|&v| QField::from_int(v)).collect(), field: 0 }
    }

    pub fn values(&self) -> &[QField] {
        &self.values
    }

    pub fn into_values(self) -> Vec<QField> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Square-free radicand shared by the entries (`0` when all are rational).
    pub fn field(&self) -> u64 {
        self.field
    }

    /// Entry `a_k`; `None` stands for the zero padding.
    pub fn at(&self, k: isize) -> Option<&QField> {
        usize::try_from(k).ok().and_then(|i| self.values.get(i))
    }

    pub fn first_negative(&self) -> Option<usize> {
        self.values.iter().position(QField::is_negative)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.values.iter().eq(self.values.iter().rev())
    }

    /// The same sequence with `margin` explicit zeros stored on each side.
    pub fn padded(&self, margin: usize) -> Seq {
        let zeros = std::iter::repeat_n(QField::zero(), margin);
        let values = zeros.clone().chain(self.values.iter().cloned()).chain(zeros).collect();
        Seq { values, field: self.field }
    }

    pub(crate) fn check_field(&self, r: &QField) -> Result<()> {
        match (self.field, r.field()) {
            (0, _) | (_, 0) => Ok(()),
            (a, b) if a == b => Ok(()),
            (a, b) => Err(Error::MixedField(a, b)),
        }
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Seq {
    type Err = Error;

    /// Comma-separated exact values, optionally wrapped in braces.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')).unwrap_or(body);
        if body.trim().is_empty() {
            return Seq::new(Vec::new());
        }
        let values = body.split(',').map(str::parse).collect::<Result<Vec<QField>>>()?;
        Seq::new(values)
    }
}

impl<'de> Deserialize<'de> for Seq {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<QField>::deserialize(deserializer)?;
        Seq::new(values).map_err(serde::de::Error::custom)
    }
}

/// Core `(x₀, …, xₙ)` of a symmetric sequence together with its parity.
///
/// Even parity materializes to `{1, x₀, …, xₙ, xₙ, …, x₀, 1}` (length `2n+4`),
/// odd parity to `{1, x₀, …, xₙ, …, x₀, 1}` (length `2n+3`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymSeq {
    core: Vec<QField>,
    parity: Parity,
}

impl SymSeq {
    pub fn new(core: Vec<QField>, parity: Parity) -> Result<Self> {
        if core.is_empty() {
            return Err(Error::InvalidArgument("symmetric sequence needs a non-empty core".into()));
        }
        Seq::new(core.clone())?;
        if let Some(k) = core.iter().position(|v| !v.is_positive()) {
            return Err(Error::NonPositiveCoordinate(k));
        }
        Ok(SymSeq { core, parity })
    }

    pub fn core(&self) -> &[QField] {
        &self.core
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Index `n` of the last core entry.
    pub fn n(&self) -> usize {
        self.core.len() - 1
    }

    pub fn materialize(&self) -> Seq {
        let mut values = Vec::with_capacity(2 * self.core.len() + 2);
        values.push(QField::one());
        values.extend(self.core.iter().cloned());
        let mirror = match self.parity {
            Parity::Even => &self.core[..],
            Parity::Odd => &self.core[..self.core.len() - 1],
        };
        values.extend(mirror.iter().rev().cloned());
        values.push(QField::one());
        Seq::new(values).expect("core validated on construction")
    }

    /// Recovers the core from a materialized sequence (zero padding allowed).
    pub fn from_materialized(seq: &Seq, parity: Parity) -> Result<Self> {
        let vals = seq.values();
        let start = vals.iter().position(|v| !v.is_zero());
        let end = vals.iter().rposition(|v| !v.is_zero());
        let (Some(start), Some(end)) = (start, end) else {
            return Err(Error::NotSymmetric("sequence is identically zero".into()));
        };
        let body = &vals[start..=end];
        let len = body.len();
        let expected_parity = if len.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
        if len < 3 || expected_parity != parity {
            return Err(Error::NotSymmetric(format!("length {len} does not fit {parity} parity")));
        }
        if !body[0].is_one() || !body[len - 1].is_one() {
            return Err(Error::NotSymmetric("outer entries must be 1".into()));
        }
        if !body.iter().eq(body.iter().rev()) {
            return Err(Error::NotSymmetric("entries are not mirrored".into()));
        }
        let core_len = (len - 1) / 2;
        SymSeq::new(body[1..=core_len].to_vec(), parity)
    }
}

#[derive(Deserialize)]
struct SymSeqRepr {
    core: Vec<QField>,
    parity: Parity,
}

impl<'de> Deserialize<'de> for SymSeq {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SymSeqRepr::deserialize(deserializer)?;
        SymSeq::new(repr.core, repr.parity).map_err(serde::de::Error::custom)
    }
}

pub fn materialize(sym: &SymSeq) -> Seq {
    sym.materialize()
}

/// `L_r` for a fixed factor `r`.
///
/// [`LogOperator::new`] accepts `r ≥ 1`. [`LogOperator::relaxed`] also admits
/// `0 < r < 1` and raises [`LogOperator::below_unit`] so callers can warn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogOperator {
    r: QField,
    below_unit: bool,
}

impl LogOperator {
    pub fn new(r: QField) -> Result<Self> {
        let op = Self::relaxed(r)?;
        if op.below_unit {
            return Err(Error::RNotSupported(op.r.to_string()));
        }
        Ok(op)
    }

    pub fn relaxed(r: QField) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::RNotSupported(r.to_string()));
        }
        let below_unit = r.try_cmp(&QField::one())? == Ordering::Less;
        Ok(LogOperator { r, below_unit })
    }

    pub fn r(&self) -> &QField {
        &self.r
    }

    pub fn below_unit(&self) -> bool {
        self.below_unit
    }

    /// One application. Entries outside the window stay zero
    /// (`0² − r·a_{k−1}·a_{k+1}` vanishes there because a neighbour is padding),
    /// so the output has the same window as the input.
    pub fn apply(&self, s: &Seq) -> Result<Seq> {
        s.check_field(&self.r)?;
        let term = |k: usize| -> QField {
            let k = k as isize;
            let a = s.at(k).expect("k in range");
            let sq = a.square();
            match (s.at(k - 1), s.at(k + 1)) {
                (Some(p), Some(n)) => {
                    let prod = p.try_mul(n).expect("same field");
                    let weighted = if self.r.is_one() { prod } else { self.r.try_mul(&prod).expect("field checked") };
                    sq.try_sub(&weighted).expect("field checked")
                }
                _ => sq,
            }
        };
        let values: Vec<QField> = if s.len() >= PAR_THRESHOLD {
            (0..s.len()).into_par_iter().map(term).collect()
        } else {
            (0..s.len()).map(term).collect()
        };
        Seq::new(values)
    }

    pub fn iterate(&self, s: &Seq, times: usize) -> Result<Seq> {
        let mut cur = s.clone();
        for _ in 0..times {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }
}

pub fn apply_lr(s: &Seq, r: &QField) -> Result<Seq> {
    LogOperator::new(r.clone())?.apply(s)
}

/// `i`-fold composition of `L_r`; `i = 0` is the identity.
pub fn iterate_lr(s: &Seq, r: &QField, i: usize) -> Result<Seq> {
    LogOperator::new(r.clone())?.iterate(s, i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LcCheck {
    Holds,
    FailsAt(usize),
}

impl LcCheck {
    pub fn holds(&self) -> bool {
        matches!(self, LcCheck::Holds)
    }
}

/// Sign of `a_k² − r·a_{k−1}·a_{k+1}`. Fields must already be compatible.
pub(crate) fn lc_slack(s: &Seq, k: usize, r: &QField) -> Ordering {
    let k = k as isize;
    let a = s.at(k).expect("k in range");
    match (s.at(k - 1), s.at(k + 1)) {
        (Some(p), Some(n)) => {
            if let Some(ord) = log_slack(a, p, n, r) {
                return ord;
            }
            let rhs = r.try_mul(&p.try_mul(n).expect("same field")).expect("field checked");
            a.square().try_sub(&rhs).expect("field checked").sign()
        }
        // a zero neighbour leaves a_k² ≥ 0
        _ => Ordering::Greater,
    }
}

/// Margin in log space beyond which the float estimate decides the sign.
/// `ln_approx` is accurate to about 1e-9 even for million-bit integers.
pub(crate) const LOG_MARGIN: f64 = 1e-6;

/// Sign of `2·ln a − ln p − ln n − ln r` when all three entries are positive
/// rationals and the value is clearly away from zero.
fn log_slack(a: &QField, p: &QField, n: &QField, r: &QField) -> Option<Ordering> {
    let (a, p, n) = (a.as_rational()?, p.as_rational()?, n.as_rational()?);
    if !(a.is_positive() && p.is_positive() && n.is_positive() && r.is_positive()) {
        return None;
    }
    let gap = 2.0 * a.ln_approx() - p.ln_approx() - n.ln_approx() - r.ln_approx();
    if gap > LOG_MARGIN {
        Some(Ordering::Greater)
    } else if gap < -LOG_MARGIN {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Smallest `k` with `a_k² < r·a_{k−1}·a_{k+1}`, if any.
pub(crate) fn first_lc_failure(s: &Seq, r: &QField) -> Option<usize> {
    let fails = |k: usize| lc_slack(s, k, r) == Ordering::Less;
    if s.len() >= PAR_THRESHOLD {
        (0..s.len()).into_par_iter().position_first(fails)
    } else {
        (0..s.len()).position(fails)
    }
}

/// r-factor log-concavity `a_k² ≥ r·a_{k−1}·a_{k+1}` over the padded range.
pub fn is_r_factor_lc(s: &Seq, r: &QField) -> Result<LcCheck> {
    s.check_field(r)?;
    if let Some(k) = s.first_negative() {
        return Err(Error::NegativeEntry(k));
    }
    Ok(match first_lc_failure(s, r) {
        Some(k) => LcCheck::FailsAt(k),
        None => LcCheck::Holds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FoldCheck {
    Ok,
    FailsAt { iteration: usize, index: usize },
}

impl FoldCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, FoldCheck::Ok)
    }
}

/// Checks that `L_rʲ(s)` is nonnegative for every `j ≤ i`, stopping at the
/// first negative entry (`iteration = 0` means `s` itself is negative there).
pub fn is_ifold_lc(s: &Seq, r: &QField, i: usize) -> Result<FoldCheck> {
    let op = LogOperator::new(r.clone())?;
    s.check_field(r)?;
    let mut cur = s.clone();
    for iteration in 0..=i {
        if iteration > 0 {
            cur = op.apply(&cur)?;
        }
        if let Some(index) = cur.first_negative() {
            return Ok(FoldCheck::FailsAt { iteration, index });
        }
    }
    Ok(FoldCheck::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rat;
    use proptest::prelude::*;

    fn seq(s: &str) -> Seq {
        s.parse().unwrap()
    }

    fn q(s: &str) -> QField {
        s.parse().unwrap()
    }

    #[test]
    fn apply_examples() {
        let out = apply_lr(&seq("0,1,3,3,1,0"), &QField::one()).unwrap();
        assert_eq!(out, seq("0,1,6,6,1,0"));
        assert_eq!(out.to_string(), "{0,1,6,6,1,0}");
        // {1, 1+r, 1+r, 1} is fixed for any r
        let r = q("5/3");
        let x = QField::one().try_add(&r).unwrap();
        let s = Seq::new(vec![QField::one(), x.clone(), x, QField::one()]).unwrap();
        assert_eq!(apply_lr(&s, &r).unwrap(), s);
        // {1, φ, 1} at r = 1
        let s = Seq::new(vec![QField::one(), q("phi(1)"), QField::one()]).unwrap();
        assert_eq!(apply_lr(&s, &QField::one()).unwrap(), s);
    }

    #[test]
    fn iterate_examples() {
        let one = QField::one();
        let s = seq("1,3,3,1");
        assert_eq!(iterate_lr(&s, &one, 0).unwrap(), s);
        assert_eq!(iterate_lr(&seq("1,2,2,1"), &one, 5).unwrap(), seq("1,2,2,1"));
        assert_eq!(iterate_lr(&s, &one, 2).unwrap(), seq("1,30,30,1"));
    }

    #[test]
    fn operator_factor_contract() {
        let s = seq("1,2,1");
        assert!(matches!(apply_lr(&s, &QField::zero()), Err(Error::RNotSupported(_))));
        assert!(matches!(apply_lr(&s, &q("1/2")), Err(Error::RNotSupported(_))));
        let op = LogOperator::relaxed(q("1/2")).unwrap();
        assert!(op.below_unit());
        assert_eq!(op.apply(&s).unwrap(), seq("1,7/2,1"));
        assert!(LogOperator::relaxed(q("-1")).is_err());
        let mixed = Seq::new(vec![QField::one(), q("sqrt(5)")]).unwrap();
        assert_eq!(apply_lr(&mixed, &QField::r1()), Err(Error::MixedField(5, 2)));
    }

    #[test]
    fn r_factor_examples() {
        let s = seq("1,3,3,1");
        assert_eq!(is_r_factor_lc(&s, &q("3")).unwrap(), LcCheck::Holds);
        assert_eq!(is_r_factor_lc(&s, &QField::r1()).unwrap(), LcCheck::Holds);
        assert_eq!(is_r_factor_lc(&s, &q("4")).unwrap(), LcCheck::FailsAt(1));
        assert_eq!(is_r_factor_lc(&seq("1,1,2"), &QField::one()).unwrap(), LcCheck::FailsAt(1));
        assert_eq!(is_r_factor_lc(&seq("1,-1"), &QField::one()), Err(Error::NegativeEntry(1)));
        // exact ties on huge entries bypass the float shortcut
        let big = QField::rational(Rat::from(7).pow(5000).unwrap());
        let tie = Seq::new(vec![big.clone(), big.clone(), big.clone()]).unwrap();
        assert_eq!(lc_slack(&tie, 1, &QField::one()), Ordering::Equal);
        let geo = Seq::new(vec![big.clone(), big.scale(&Rat::from(3)), big.scale(&Rat::from(9))]).unwrap();
        assert_eq!(lc_slack(&geo, 1, &QField::one()), Ordering::Equal);
        assert_eq!(lc_slack(&geo, 1, &q("1+1/1000000000000*sqrt(2)")), Ordering::Less);
    }

    /// Exact-fraction orbit of `{1,x,x,1}` under `x ↦ x² − x`, kept apart from
    /// the operator code.
    fn orbit_first_negative(x: Rat) -> usize {
        let mut x = x;
        for it in 1.. {
            x = x.square() - &x;
            if x.is_negative() {
                return it;
            }
        }
        unreachable!()
    }

    #[test]
    fn ifold_examples() {
        let one = QField::one();
        assert_eq!(is_ifold_lc(&seq("1,2,2,1"), &one, 50).unwrap(), FoldCheck::Ok);
        let expected = orbit_first_negative(Rat::new(19, 10).unwrap());
        assert_eq!(expected, 4);
        assert_eq!(
            is_ifold_lc(&seq("1,1.9,1.9,1"), &one, 10).unwrap(),
            FoldCheck::FailsAt { iteration: expected, index: 1 }
        );
        assert_eq!(is_ifold_lc(&seq("1,4,6,4,1"), &one, 5).unwrap(), FoldCheck::Ok);
        assert_eq!(is_ifold_lc(&seq("1,-2"), &one, 3).unwrap(), FoldCheck::FailsAt { iteration: 0, index: 1 });
    }

    #[test]
    fn materialize_examples() {
        let x0 = q("5");
        let even = SymSeq::new(vec![x0.clone()], Parity::Even).unwrap();
        assert_eq!(even.materialize(), seq("1,5,5,1"));
        let odd = SymSeq::new(vec![x0], Parity::Odd).unwrap();
        assert_eq!(odd.materialize(), seq("1,5,1"));
        let two = SymSeq::new(vec![q("2"), q("3")], Parity::Even).unwrap();
        assert_eq!(two.materialize(), seq("1,2,3,3,2,1"));
        assert_eq!(SymSeq::from_materialized(&seq("0,1,2,3,3,2,1,0"), Parity::Even).unwrap(), two);
        assert!(SymSeq::from_materialized(&seq("1,2,3,2,1"), Parity::Even).is_err());
        assert!(SymSeq::from_materialized(&seq("1,2,3,3,1,1"), Parity::Even).is_err());
        assert!(SymSeq::new(vec![q("0")], Parity::Odd).is_err());
    }

    #[test]
    fn symseq_json() {
        let s: SymSeq = serde_json::from_str(r#"{"core": ["2", 3], "parity": "odd"}"#).unwrap();
        assert_eq!(s.materialize(), seq("1,2,3,2,1"));
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"core":["2","3"],"parity":"odd"}"#);
        assert!(serde_json::from_str::<SymSeq>(r#"{"core": [-1], "parity": "odd"}"#).is_err());
    }

    // Independent textbook L on plain fractions.
    fn classic_l(a: &[Rat]) -> Vec<Rat> {
        (0..a.len())
            .map(|k| {
                let prev = if k == 0 { Rat::zero() } else { a[k - 1].clone() };
                let next = a.get(k + 1).cloned().unwrap_or_default();
                a[k].square() - prev * next
            })
            .collect()
    }

    trait ExactSlack {
        fn try_sub_exact(&self, r: &QField, prod: &Rat) -> Ordering;
    }

    impl ExactSlack for Rat {
        /// Sign of `self − r·prod` without any float shortcut.
        fn try_sub_exact(&self, r: &QField, prod: &Rat) -> Ordering {
            QField::rational(self.clone()).try_sub(&r.scale(prod)).unwrap().sign()
        }
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (1i64..200, 1i64..20).prop_map(|(n, d)| Rat::new(n, d).unwrap())
    }

    fn rat_from_ratio(n: u32, d: u32) -> QField {
        QField::rational(Rat::new(n as i64 + 1, d as i64 + 1).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn symmetry_and_shape_preserved(
            core in proptest::collection::vec((0u32..100, 0u32..12), 1..7),
            odd in any::<bool>(),
            r in 1i64..5,
        ) {
            let parity = if odd { Parity::Odd } else { Parity::Even };
            let sym = SymSeq::new(core.iter().map(|&(n, d)| rat_from_ratio(n, d)).collect(), parity).unwrap();
            let out = apply_lr(&sym.materialize(), &QField::from_int(r)).unwrap();
            prop_assert!(out.is_symmetric());
            prop_assert_eq!(out.len(), sym.materialize().len());
            prop_assert!(out.values()[0].is_one());
            prop_assert!(out.values()[out.len() - 1].is_one());
        }

        #[test]
        fn log_shortcut_agrees_with_exact_sign(
            a in small_rat(), p in small_rat(), n in small_rat(),
            scale in 0i64..400,
            which in 0usize..4,
        ) {
            // large common powers keep the float estimate near ties
            let big = Rat::from(3).pow(scale).unwrap();
            let (a, p, n) = (a * &big, p * &big, n * &big);
            let r = [QField::one(), QField::r0(), QField::r1(), QField::from_int(2)][which].clone();
            let s = Seq::new(vec![QField::rational(p.clone()), QField::rational(a.clone()), QField::rational(n.clone())]).unwrap();
            let exact = a.square().try_sub_exact(&r, &(p * n));
            prop_assert_eq!(lc_slack(&s, 1, &r), exact);
        }

        #[test]
        fn unit_factor_matches_classic_operator(vals in proptest::collection::vec(small_rat(), 0..10)) {
            let s = Seq::new(vals.iter().cloned().map(QField::rational).collect()).unwrap();
            let expected: Vec<QField> = classic_l(&vals).into_iter().map(QField::rational).collect();
            prop_assert_eq!(apply_lr(&s, &QField::one()).unwrap().into_values(), expected);
        }

        #[test]
        fn padding_does_not_change_predicates(
            vals in proptest::collection::vec(small_rat(), 1..8),
            margin in 1usize..4,
            r in 1i64..4,
        ) {
            let s = Seq::new(vals.into_iter().map(QField::rational).collect()).unwrap();
            let wide = s.padded(margin);
            let r = QField::from_int(r);
            let shift = |c: LcCheck| match c { LcCheck::FailsAt(k) => LcCheck::FailsAt(k + margin), h => h };
            prop_assert_eq!(shift(is_r_factor_lc(&s, &r).unwrap()), is_r_factor_lc(&wide, &r).unwrap());
            let fold = |c: FoldCheck| match c {
                FoldCheck::FailsAt { iteration, index } => FoldCheck::FailsAt { iteration, index: index + margin },
                ok => ok,
            };
            prop_assert_eq!(fold(is_ifold_lc(&s, &r, 3).unwrap()), is_ifold_lc(&wide, &r, 3).unwrap());
            prop_assert_eq!(apply_lr(&wide, &r).unwrap(), apply_lr(&s, &r).unwrap().padded(margin));
        }

        #[test]
        fn factor_folds_imply_classic_folds(
            vals in proptest::collection::vec(small_rat(), 1..7),
            r in 1i64..4,
            i in 0usize..5,
        ) {
            let s = Seq::new(vals.into_iter().map(QField::rational).collect()).unwrap();
            if is_ifold_lc(&s, &QField::from_int(r), i).unwrap().is_ok() {
                prop_assert!(is_ifold_lc(&s, &QField::one(), i).unwrap().is_ok());
            }
        }
    }
}
