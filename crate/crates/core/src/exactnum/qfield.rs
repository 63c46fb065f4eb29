use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::radical::split_square;
use super::rat::Rat;
use crate::error::{Error, Result};

/// An element `a + b·√d` of a real quadratic field ℚ(√d).
///
/// `d` is square-free. Pure rationals carry `d = 0` and `b = 0`, so a value has
/// exactly one representation and equality is componentwise. A rational value
/// is compatible with every field; two irrational values must share `d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QField {
    a: Rat,
    b: Rat,
    d: u64,
}

fn join(d1: u64, d2: u64) -> Result<u64> {
    match (d1, d2) {
        (0, d) | (d, 0) => Ok(d),
        (x, y) if x == y => Ok(x),
        (x, y) => Err(Error::MixedField(x, y)),
    }
}

impl QField {
    /// `a + b·√d`, normalizing `d` to its square-free part.
    pub fn new(a: Rat, b: Rat, d: impl Into<BigInt>) -> Result<Self> {
        let (s, core) = split_square(&d.into())?;
        let b = b * Rat::from_integer(s);
        Ok(Self::canonical(a, b, core))
    }

    fn canonical(a: Rat, b: Rat, d: u64) -> Self {
        match d {
            0 => QField { a, b: Rat::zero(), d: 0 },
            1 => QField { a: a + b, b: Rat::zero(), d: 0 },
            _ if b.is_zero() => QField { a, b, d: 0 },
            _ => QField { a, b, d },
        }
    }

    pub fn rational(a: Rat) -> Self {
        QField { a, b: Rat::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rat::from(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Exact `√x` for rational `x ≥ 0`: `√(p/q) = √(pq)/q`.
    pub fn sqrt_of(x: &Rat) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        let pq = x.numer() * x.denom();
        let coeff = Rat::new(1, x.denom().clone())?;
        Self::new(Rat::zero(), coeff, pq)
    }

    /// `r₀ = (3 + √5)/2`, the classical-step certification constant.
    pub fn r0() -> Self {
        QField { a: Rat::new(3, 2).unwrap(), b: Rat::new(1, 2).unwrap(), d: 5 }
    }

    /// `r₁ = 1 + √2`, the generalized-step certification constant.
    pub fn r1() -> Self {
        QField { a: Rat::one(), b: Rat::one(), d: 2 }
    }

    /// `(1 + √(1+4r))/2`, the positive root of `t² − t − r`. Needs `1 + 4r ≥ 0`.
    pub fn phi(r: &Rat) -> Result<Self> {
        let disc = Rat::one() + Rat::from(4) * r;
        let root = Self::sqrt_of(&disc)?;
        let half = Rat::new(1, 2)?;
        Ok(Self::one().add_unchecked(&root).scale(&half))
    }

    /// Rational part `a`.
    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    /// Coefficient `b` of `√d`.
    pub fn radical_coeff(&self) -> &Rat {
        &self.b
    }

    /// Square-free radicand; `0` for rational values.
    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.d == 0 && self.a.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.d == 0 && self.a.is_one()
    }

    /// Whether `self` and `other` can be combined arithmetically.
    pub fn compatible(&self, other: &QField) -> bool {
        join(self.d, other.d).is_ok()
    }

    // Callers guarantee compatible fields.
    fn add_unchecked(&self, other: &QField) -> QField {
        let d = self.d.max(other.d);
        Self::canonical(&self.a + &other.a, &self.b + &other.b, d)
    }

    pub fn try_add(&self, other: &QField) -> Result<QField> {
        join(self.d, other.d)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &QField) -> Result<QField> {
        self.try_add(&other.neg())
    }

    /// `(a₁+b₁√d)(a₂+b₂√d) = (a₁a₂ + b₁b₂d) + (a₁b₂ + a₂b₁)√d`.
    pub fn try_mul(&self, other: &QField) -> Result<QField> {
        let d = join(self.d, other.d)?;
        if self.d == 0 {
            return Ok(other.scale(&self.a));
        }
        if other.d == 0 {
            return Ok(self.scale(&other.a));
        }
        let dr = Rat::from(d as i64);
        let a = &self.a * &other.a + &self.b * &other.b * &dr;
        let b = &self.a * &other.b + &other.a * &self.b;
        Ok(Self::canonical(a, b, d))
    }

    pub fn try_div(&self, other: &QField) -> Result<QField> {
        join(self.d, other.d)?;
        self.try_mul(&other.recip()?)
    }

    /// Multiplicative inverse via the conjugate: `(a − b√d)/(a² − b²d)`.
    pub fn recip(&self) -> Result<QField> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv_norm = self.norm().recip()?;
        Ok(self.conj().scale(&inv_norm))
    }

    /// Multiplies by a rational.
    pub fn scale(&self, k: &Rat) -> QField {
        Self::canonical(&self.a * k, &self.b * k, self.d)
    }

    pub fn neg(&self) -> QField {
        QField { a: -&self.a, b: -&self.b, d: self.d }
    }

    pub fn conj(&self) -> QField {
        QField { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Field norm `a² − b²d`.
    pub fn norm(&self) -> Rat {
        if self.d == 0 {
            return self.a.square();
        }
        self.a.square() - self.b.square() * Rat::from(self.d as i64)
    }

    pub fn square(&self) -> QField {
        self.try_mul(self).expect("a value is compatible with itself")
    }

    pub fn pow(&self, exp: u32) -> QField {
        let mut acc = QField::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Exact sign of `a + b√d` by rational case analysis.
    ///
    /// With mixed signs the dominant term decides: compare `a²` against `b²d`.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let lhs = self.a.square();
        let rhs = self.b.square() * Rat::from(self.d as i64);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Ordering of the real values; both operands must share a field.
    pub fn try_cmp(&self, other: &QField) -> Result<Ordering> {
        Ok(self.try_sub(other)?.sign())
    }

    /// Ordering of the real values across different quadratic fields.
    ///
    /// Writes `x − y = u + v` with `u ∈ ℚ(√d₁)` and `v = −b₂√d₂`. Equal signs
    /// decide at once; otherwise `u²` (still in ℚ(√d₁)) is compared with the
    /// rational `v²`. No arithmetic ever mixes the two radicals.
    pub fn cmp_mixed(&self, other: &QField) -> Ordering {
        if let Ok(ord) = self.try_cmp(other) {
            return ord;
        }
        let u = QField { a: &self.a - &other.a, b: self.b.clone(), d: self.d };
        let su = u.sign();
        let sv = other.b.sign().reverse();
        if su == sv || sv == Ordering::Equal {
            return su;
        }
        if su == Ordering::Equal {
            return sv;
        }
        let v2 = QField::rational(other.b.square() * Rat::from(other.d as i64));
        match u.square().try_sub(&v2).expect("v² is rational").sign() {
            Ordering::Greater => su,
            Ordering::Less => sv,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Nearest `f64` (diagnostics only).
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.d as f64).sqrt()
    }

    /// Approximate natural log of a positive value, robust to huge magnitudes.
    pub fn ln_approx(&self) -> f64 {
        if self.b.is_zero() {
            return self.a.ln_approx();
        }
        let term = |x: &Rat, extra: f64| -> Option<(f64, f64)> {
            (!x.is_zero()).then(|| (x.abs().ln_approx() + extra, if x.is_negative() { -1.0 } else { 1.0 }))
        };
        let ta = term(&self.a, 0.0);
        let tb = term(&self.b, 0.5 * (self.d as f64).ln());
        match (ta, tb) {
            (Some((la, sa)), Some((lb, sb))) => {
                let m = la.max(lb);
                m + (sa * (la - m).exp() + sb * (lb - m).exp()).ln()
            }
            (None, Some((lb, _))) => lb,
            (Some((la, _)), None) => la,
            (None, None) => f64::NEG_INFINITY,
        }
    }
}

impl From<Rat> for QField {
    fn from(a: Rat) -> Self {
        Self::rational(a)
    }
}

impl From<i64> for QField {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for QField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let mag = self.b.abs();
        let coeff = if mag.is_one() { String::new() } else { format!("{mag}*") };
        let sign = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{coeff}sqrt({})", self.d)
        } else {
            write!(f, "{}{sign}{coeff}sqrt({})", self.a, self.d)
        }
    }
}

impl fmt::Debug for QField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QField {
    type Err = Error;

    /// Parses `p/q`, `p/q+s/t*sqrt(d)`, `-sqrt(d)/2` and the named constants
    /// `r0`, `r1`, `phi(p/q)`.
    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        let bad = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        match s.as_str() {
            "r0" => return Ok(Self::r0()),
            "r1" => return Ok(Self::r1()),
            _ => {}
        }
        if let Some(arg) = s.strip_prefix("phi(").and_then(|t| t.strip_suffix(')')) {
            let r: Rat = arg.parse()?;
            return Self::phi(&r);
        }
        let Some(start) = s.find("sqrt(") else {
            return Ok(Self::rational(s.parse()?));
        };
        let after = &s[start + 5..];
        let close = after.find(')').ok_or_else(|| bad("unclosed sqrt("))?;
        let radicand: BigInt = after[..close].parse().map_err(|_| bad("radicand must be an integer"))?;
        let suffix = &after[close + 1..];
        let divisor = match suffix {
            "" => Rat::one(),
            _ => suffix.strip_prefix('/').ok_or_else(|| bad("unexpected text after sqrt(..)"))?.parse::<Rat>()?,
        };
        let mut prefix = &s[..start];
        let explicit_coeff = prefix.ends_with('*');
        if explicit_coeff {
            prefix = &prefix[..prefix.len() - 1];
        }
        let split = prefix.rfind(['+', '-']).filter(|&i| i > 0);
        let (rational, sign, coeff) = match split {
            Some(i) => (&prefix[..i], &prefix[i..i + 1], &prefix[i + 1..]),
            None => ("", "", prefix),
        };
        let a = if rational.is_empty() { Rat::zero() } else { rational.parse()? };
        let mut b = match coeff {
            "" | "+" => {
                if explicit_coeff {
                    return Err(bad("missing coefficient before '*'"));
                }
                Rat::one()
            }
            "-" => {
                if explicit_coeff {
                    return Err(bad("missing coefficient before '*'"));
                }
                -Rat::one()
            }
            c => c.parse()?,
        };
        if sign == "-" {
            b = -b;
        }
        let b = b.checked_div(&divisor).map_err(|_| bad("zero divisor"))?;
        if radicand < BigInt::from(0) {
            return Err(Error::NegativeRadicand);
        }
        Self::new(a, b, radicand)
    }
}

impl Serialize for QField {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QField {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct QVisitor;

        impl Visitor<'_> for QVisitor {
            type Value = QField;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an exact number such as \"3/2+1/2*sqrt(5)\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<QField, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<QField, E> {
                Ok(QField::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<QField, E> {
                Ok(QField::rational(Rat::from_integer(v)))
            }

            // JSON decimals are read as the exact decimal they print as.
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<QField, E> {
                v.to_string().parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(QVisitor)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let q = QField::deserialize(deserializer)?;
        q.as_rational().cloned().ok_or_else(|| de::Error::custom(format!("{q} is not rational")))
    }
}
