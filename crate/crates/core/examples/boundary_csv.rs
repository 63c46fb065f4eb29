//! CSV of the planar boundary curves, ready for a plotting tool.
//!
//! cargo run --example boundary_csv > boundary.csv

use logcave::sample::Sampler;
use logcave::seqcore::Parity;
use logcave::Rat;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut sampler = Sampler::new(0);
    let mut out = csv::Writer::from_writer(std::io::stdout());
    for parity in [Parity::Even, Parity::Odd] {
        for row in sampler.planar_boundary(&Rat::one(), parity, 25)? {
            out.serialize(row)?;
        }
    }
    out.flush()?;
    Ok(())
}
