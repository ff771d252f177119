//! Asymmetric riffle shuffles and the card-guessing game they induce.
//!
//! A deck of n cards is cut at a Binomial(n, p) position and the two packets
//! are interleaved proportionally to their sizes. A guesser then predicts
//! each card before it is revealed, with complete feedback. This crate
//! provides the shuffle measure and its marginals ([`shuffle`]), the optimal
//! guessing strategy ([`strategy`]), exact distributions of the number of
//! correct guesses ([`exact`]), the limiting laws and convergence
//! experiments ([`limits`]), and reproducible parallel Monte Carlo
//! estimation ([`mc`]).

pub mod error;
pub mod exact;
pub mod limits;
pub mod mc;
mod numeric;
pub mod pmf;
pub mod shuffle;
pub mod strategy;

pub use error::{Error, Result};
pub use pmf::Pmf;
