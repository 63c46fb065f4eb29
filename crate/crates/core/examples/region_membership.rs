//! Membership, hypersurfaces and the exponent decomposition.
//!
//! cargo run --example region_membership

use logcave::region::{
    closure_test, correct_side, decompose, hypersurface_point, ExactPowerBase, HParams, DEFAULT_PRECISION,
};
use logcave::seqcore::{Parity, SymSeq};
use logcave::{QField, Rat};

fn main() -> logcave::Result<()> {
    let r = Rat::one();
    let p = SymSeq::new(vec![QField::from_int(9), QField::from_int(20)], Parity::Even)?;
    let side = correct_side(&p, &r)?;
    println!("{} member: {}", p.materialize(), side.is_member());
    let closure = closure_test(&p, &r, 4)?;
    println!("  after {} steps still inside: {}", closure.iterations, closure.passed());

    let d = decompose(&p, DEFAULT_PRECISION)?;
    let gaps: Vec<f64> = d.gaps.iter().map(|g| g.approx).collect();
    println!("  x = {}, gaps ≈ {gaps:?}", d.x);

    for surface in 0..=2 {
        let params = HParams {
            r: r.clone(),
            n: 2,
            parity: Parity::Odd,
            surface,
            x: ExactPowerBase::rational(Rat::from(16))?,
            gaps: vec!["1/2".parse()?],
        };
        let h = hypersurface_point(&params)?;
        let on: Vec<bool> = correct_side(&h, &r)?.clauses.iter().map(|c| c.on_boundary).collect();
        println!("H{surface}: {:?} on boundary {on:?}", h.core().iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    Ok(())
}
