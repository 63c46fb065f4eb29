//! Exact arithmetic in Q(√d) and comparisons across fields.
//!
//! cargo run --example quadratic_field

use std::cmp::Ordering;

use logcave::QField;

fn main() -> logcave::Result<()> {
    let r0 = QField::r0();
    let r1 = QField::r1();
    let phi: QField = "phi(1)".parse()?;

    println!("r0 = {r0} ≈ {:.6}", r0.to_f64());
    println!("r1 = {r1} ≈ {:.6}", r1.to_f64());
    println!("phi(1)² − phi(1) = {}", phi.square().try_sub(&phi)?);
    println!("(1+√2)(1−√2) = {}", r1.try_mul(&r1.conj())?);
    println!("1/r1 = {}", r1.recip()?);

    let ord = r1.cmp_mixed(&r0);
    println!("r1 {} r0", if ord == Ordering::Less { "<" } else { ">=" });

    // mixing fields is an error for arithmetic, never for comparison
    if let Err(e) = r0.try_add(&r1) {
        println!("r0 + r1: {e}");
    }
    Ok(())
}
