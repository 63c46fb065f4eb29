//! Orbits of a few sequences under L and L_r.
//!
//! cargo run --example operator_orbits

use logcave::seqcore::{is_ifold_lc, iterate_lr, FoldCheck, LogOperator, Seq};
use logcave::QField;

fn main() -> logcave::Result<()> {
    let op = LogOperator::new(QField::one())?;
    let mut s: Seq = "1,3,3,1".parse()?;
    for i in 0..4 {
        println!("L^{i} = {s}");
        s = op.apply(&s)?;
    }

    // {1,x,x,1} escapes once x < 2: x ↦ x² − x
    let s: Seq = "1,1.9,1.9,1".parse()?;
    match is_ifold_lc(&s, &QField::one(), 10)? {
        FoldCheck::Ok => println!("{s}: nonnegative for 10 folds"),
        FoldCheck::FailsAt { iteration, index } => {
            println!("{s}: negative at iteration {iteration}, index {index}");
            println!("  iterate: {}", iterate_lr(&s, &QField::one(), iteration)?);
        }
    }

    // {1, 1+r, 1+r, 1} is fixed by L_r
    let r: QField = "r1".parse()?;
    let x = QField::one().try_add(&r)?;
    let fixed = Seq::new(vec![QField::one(), x.clone(), x, QField::one()])?;
    println!("L_r1 {fixed} = {}", iterate_lr(&fixed, &r, 1)?);
    Ok(())
}
