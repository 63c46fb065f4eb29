//! Certify rows of Pascal's triangle.
//!
//! cargo run --release --example pascal_rows -- 0 100

use logcave::pascal::{summarize, verify_range, Mode};

fn main() -> logcave::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let lo = args.next().transpose().ok().flatten().unwrap_or(0);
    let hi = args.next().transpose().ok().flatten().unwrap_or(60);
    let reports = verify_range(lo, hi, Mode::Both, 20)?;
    for r in reports.iter().filter(|r| r.n % 10 == 0) {
        let at = |c: &Option<logcave::criteria::Certificate>| c.as_ref().and_then(|c| c.certified_at());
        println!("row {:>4}: r0 {:?}, r1 {:?}", r.n, at(&r.certificate_r0), at(&r.certificate_r1));
    }
    println!("{}", serde_json::to_string_pretty(&summarize(&reports)).unwrap());
    Ok(())
}
