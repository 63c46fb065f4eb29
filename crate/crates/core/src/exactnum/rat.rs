use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number in lowest terms.
///
/// The denominator is always positive and `gcd(|num|, den) = 1`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat {
    num: BigInt,
    den: BigInt,
}

/// Greatest common divisor of `|a|` and `|b|`.
///
/// Euclid by remainder, dropping to machine words as soon as the operands fit.
/// Integer-valued rationals with tiny denominators are the common case here
/// (Pascal rows, `3/2 + sqrt(5)/2`), and they never run more than one big
/// remainder.
pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.abs();
    let mut y = b.abs();
    if x.is_one() || y.is_one() {
        return BigInt::one();
    }
    loop {
        if y.is_zero() {
            return x;
        }
        if let (Some(xs), Some(ys)) = (x.to_u64(), y.to_u64()) {
            return BigInt::from(xs.gcd(&ys));
        }
        if let Some(ys) = y.to_u64() {
            let rem = (&x % ys).to_u64().unwrap_or(0);
            return BigInt::from(ys.gcd(&rem));
        }
        let r = &x % &y;
        x = y;
        y = r;
    }
}

impl Rat {
    /// Builds `num/den`, reducing to lowest terms.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rat { num: n.into(), den: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    fn normalized(mut num: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Self::zero();
        }
        if !den.is_one() {
            let g = gcd(&num, &den);
            if !g.is_one() {
                num /= &g;
                den /= &g;
            }
        }
        Rat { num, den }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    /// Sign of the value relative to zero.
    pub fn sign(&self) -> Ordering {
        self.num.cmp(&BigInt::zero())
    }

    pub fn abs(&self) -> Self {
        Rat { num: self.num.abs(), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    /// Integer power; negative exponents invert (zero base errors).
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let e = exp.unsigned_abs();
        let e32 = u32::try_from(e).map_err(|_| Error::InvalidArgument("exponent too large".into()))?;
        let p = Rat {
            num: num_traits::pow(self.num.clone(), e32 as usize),
            den: num_traits::pow(self.den.clone(), e32 as usize),
        };
        if exp < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    pub fn square(&self) -> Self {
        Rat { num: &self.num * &self.num, den: &self.den * &self.den }
    }

    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&self.den)
    }

    pub fn ceil(&self) -> BigInt {
        -((-&self.num).div_floor(&self.den))
    }

    /// Nearest `f64`; saturates to infinity for values outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        let (m, e) = scaled_ratio(&self.num, &self.den);
        m * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Natural logarithm of a positive value, to roughly `f64` accuracy even
    /// when the value itself is far outside the `f64` range.
    pub fn ln_approx(&self) -> f64 {
        debug_assert!(self.is_positive());
        let (m, e) = scaled_ratio(&self.num, &self.den);
        m.ln() + (e as f64) * std::f64::consts::LN_2
    }
}

/// Splits `num/den` into `(m, e)` with `num/den ≈ m * 2^e` and `m` of moderate size.
fn scaled_ratio(num: &BigInt, den: &BigInt) -> (f64, i64) {
    fn top(x: &BigInt) -> (f64, i64) {
        let bits = x.bits() as i64;
        let shift = (bits - 64).max(0);
        let head = (x >> shift as usize).to_f64().unwrap_or(0.0);
        (head, shift)
    }
    let (n, ne) = top(num);
    let (d, de) = top(den);
    (n / d, ne - de)
}

impl Default for Rat {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

fn add_parts(a: &Rat, b: &Rat, negate_b: bool) -> Rat {
    let bn = if negate_b { -&b.num } else { b.num.clone() };
    if a.den.is_one() && b.den.is_one() {
        return Rat::from_integer(&a.num + bn);
    }
    if a.den == b.den {
        return Rat::normalized(&a.num + bn, a.den.clone());
    }
    Rat::normalized(&a.num * &b.den + bn * &a.den, &a.den * &b.den)
}

fn mul_parts(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() || b.is_zero() {
        return Rat::zero();
    }
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    if a.den.is_one() && b.den.is_one() {
        return Rat::from_integer(&a.num * &b.num);
    }
    // cross-cancel so the product is already in lowest terms
    let g1 = gcd(&a.num, &b.den);
    let g2 = gcd(&b.num, &a.den);
    let num = (&a.num / &g1) * (&b.num / &g2);
    let den = (&a.den / &g2) * (&b.den / &g1);
    Rat { num, den }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                let f: fn(&Rat, &Rat) -> Rat = $body;
                f(self, rhs)
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_parts(a, b, false));
forward_binop!(Sub, sub, |a, b| add_parts(a, b, true));
forward_binop!(Mul, mul, mul_parts);
// Panics on a zero divisor, like integer division; use `checked_div` otherwise.
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat { num: -self.num, den: self.den }
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |t: &str| t.bytes().all(|c| c.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = Rat::normalized(num, den);
    Some(if neg { -r } else { r })
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `p`, `p/q`, and finite decimals such as `1.9` or `-0.25/3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num = parse_decimal(n).ok_or_else(|| bad("expected a number"))?;
        match d {
            None => Ok(num),
            Some(d) => {
                let den = parse_decimal(d).ok_or_else(|| bad("expected a denominator"))?;
                num.checked_div(&den).map_err(|_| bad("zero denominator"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(r(6, -4), r(-3, 2));
        assert_eq!(r(-3, 2).denom(), &BigInt::from(2));
        assert_eq!(r(0, -7), Rat::zero());
        assert_eq!(r(0, 5).denom(), &BigInt::one());
        assert!(Rat::new(1, 0).is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(r(1, 2) + r(1, 3), r(5, 6));
        assert_eq!(r(1, 2) - r(1, 2), Rat::zero());
        assert_eq!(r(2, 3) * r(9, 4), r(3, 2));
        assert_eq!(r(2, 3) / r(4, 9), r(3, 2));
        assert_eq!(r(2, 3).pow(-2).unwrap(), r(9, 4));
        assert!(Rat::zero().pow(-1).is_err());
    }

    #[test]
    fn ordering_and_rounding() {
        assert!(r(1, 3) < r(1, 2));
        assert!(r(-1, 2) < r(-1, 3));
        assert_eq!(r(7, 2).floor(), BigInt::from(3));
        assert_eq!(r(7, 2).ceil(), BigInt::from(4));
        assert_eq!(r(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(r(-7, 2).ceil(), BigInt::from(-3));
        assert_eq!(r(6, 3).ceil(), BigInt::from(2));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/6".parse::<Rat>().unwrap(), r(1, 2));
        assert_eq!("1.9".parse::<Rat>().unwrap(), r(19, 10));
        assert_eq!("-0.25".parse::<Rat>().unwrap(), r(-1, 4));
        assert_eq!(" 7 ".parse::<Rat>().unwrap(), r(7, 1));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("abc".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
        assert_eq!(r(-5, 3).to_string(), "-5/3");
        assert_eq!(r(4, 1).to_string(), "4");
    }

    #[test]
    fn float_views_of_huge_values() {
        let big = Rat::from_integer(num_traits::pow(BigInt::from(10), 400));
        assert!(big.to_f64().is_infinite());
        assert!((big.ln_approx() - 400.0 * std::f64::consts::LN_10).abs() < 1e-9);
        assert!((r(1, 3).to_f64() - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn gcd_small_and_large() {
        let big = num_traits::pow(BigInt::from(2), 300) * 3;
        assert_eq!(gcd(&big, &BigInt::from(9)), BigInt::from(3));
        assert_eq!(gcd(&big, &BigInt::from(-1)), BigInt::one());
        assert_eq!(gcd(&BigInt::zero(), &BigInt::from(5)), BigInt::from(5));
        let other = num_traits::pow(BigInt::from(2), 200) * 5;
        assert_eq!(gcd(&big, &other), num_traits::pow(BigInt::from(2), 200));
    }
}
