//! Pentagonal and triangular witnesses, and scaling them up.
//!
//! cargo run --example witness_construction

use logcave::region::correct_side;
use logcave::seqcore::Parity;
use logcave::witness::{a_bound, build_witness, c_bound, default_core, Scheme, WitnessSpec};
use logcave::Rat;

fn main() -> logcave::Result<()> {
    let r = Rat::from(2);
    let bound = c_bound(&r)?;
    println!("C must stay below {:.6}", bound.to_f64());

    for (scheme, c) in [(Scheme::Pentagonal, "1/2"), (Scheme::Triangular, "1/3")] {
        let c: Rat = c.parse()?;
        let a = a_bound(&r, &c, 3, scheme, Parity::Odd)?;
        for factor in [1, 10, 1000] {
            let spec = WitnessSpec {
                q_core: default_core(&r, 3)?,
                r: r.clone(),
                c: c.clone(),
                a: &a.value * &Rat::from(factor) + Rat::one(),
                scheme,
                parity: Parity::Odd,
            };
            let w = build_witness(&spec)?;
            let member = correct_side(&w, &r)?.is_member();
            println!("{scheme} a = {}: x0 = {}, member = {member}", spec.a, w.core()[0]);
        }
    }
    Ok(())
}
