pub mod cli;
pub mod criteria;
pub mod error;
pub mod exactnum;
pub mod pascal;
pub mod region;
pub mod sample;
pub mod seqcore;
pub mod witness;

pub use error::{Error, Result};
pub use exactnum::{QField, Rat};
