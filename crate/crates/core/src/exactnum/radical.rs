use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 20;

/// Writes `n = s² · d` with `d` square-free; returns `(s, d)`.
///
/// Trial division runs up to `min(cbrt(n), 2^20)`. Whatever survives a full
/// sweep to `cbrt(n)` has at most two prime factors, so it is either a perfect
/// square or square-free. Inputs too large to finish that sweep are rejected
/// unless the leftover cofactor is itself a perfect square.
pub(crate) fn split_square(n: &BigInt) -> Result<(BigInt, u64)> {
    if n.is_negative() {
        return Err(Error::NegativeRadicand);
    }
    if n.is_zero() {
        return Ok((BigInt::zero(), 0));
    }
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    let cbrt = n.cbrt();
    let limit = cbrt.to_u64().map_or(TRIAL_LIMIT, |c| c.min(TRIAL_LIMIT));
    let mut p: u64 = 2;
    while p <= limit {
        let pb = BigInt::from(p);
        if (&rest % p).is_zero() {
            let mut e = 0u32;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            s *= num_traits::pow(pb.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                d *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        s *= root;
    } else {
        let swept = cbrt.to_u64().is_some_and(|c| c <= TRIAL_LIMIT);
        if !swept {
            return Err(Error::RadicandTooLarge);
        }
        d *= rest;
    }
    let d = d.to_u64().ok_or(Error::RadicandTooLarge)?;
    Ok((s, d))
}
