//! Exact arithmetic in ℚ and in real quadratic extensions ℚ(√d).
//!
//! Every inequality in this crate is decided by [`QField::sign`], which never
//! rounds. Only one radical may appear in an arithmetic expression; the
//! comparison [`QField::cmp_mixed`] is the single place that relates two
//! different fields, and it does so by squaring rather than mixing.
//!
//! The constant `r₀ = (3+√5)/2` is sometimes printed as `3+√5` in the
//! literature; every computation that uses it relies on the halved value,
//! which is what [`QField::r0`] returns.

mod qfield;
mod radical;
mod rat;

pub use qfield::QField;
pub use rat::Rat;
