//! Certificates of infinite log-concavity, and where they stop.
//!
//! cargo run --example certify_sequences

use logcave::criteria::{certify_infinite, compare_criteria, symmetric_criterion};
use logcave::seqcore::{Parity, Seq, SymSeq};
use logcave::QField;

fn main() -> logcave::Result<()> {
    for text in ["1,4,6,4,1", "1,2,2,1", "1,19/10,19/10,1", "1,1,1"] {
        let s: Seq = text.parse()?;
        let cert = certify_infinite(&s, &QField::r0(), &QField::one(), 20)?;
        println!("{s}: {}", serde_json::to_string(&cert).unwrap());
    }

    let row: Seq = "1,10,45,120,210,252,210,120,45,10,1".parse()?;
    let cmp = compare_criteria(&row, 20)?;
    println!("row 10: r0 after {} steps, r1 after {}", cmp.r0.iterations, cmp.r1.iterations);

    let sym = SymSeq::new(vec![QField::from_int(9), QField::from_int(31)], Parity::Even)?;
    let cert = symmetric_criterion(&sym, &QField::r1())?;
    println!("{}: {:?}", sym.materialize(), cert.verdict);
    Ok(())
}
