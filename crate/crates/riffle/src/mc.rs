//! Seeded, reproducible, parallel Monte Carlo estimation of score laws.
//!
//! Trials are split into fixed-size chunks; chunk i draws from its own
//! generator derived deterministically from (seed, i), and chunk histograms
//! are merged in index order. The empirical law therefore depends only on
//! the parameters, the trial count, and the seed, never on the number of
//! worker threads or their schedule.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::truncated_binomial_pmf;
use crate::numeric::uniform_f64;
use crate::pmf::Pmf;
use crate::shuffle::{
    letter_threshold, sample_letters_into, word_to_deck_into, Letter, ShuffleParams,
};
use crate::strategy::{play_count, two_color_guess, PlayScratch, StrategyTable};

const DEFAULT_CHUNK_SIZE: u64 = 65536;

/// Trial count, seed, and substream chunking for one estimation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    trials: u64,
    seed: u64,
    chunk_size: u64,
}

impl McConfig {
    /// Configuration with the default chunk size.
    ///
    /// # Errors
    /// Rejects a zero trial count.
    pub fn new(trials: u64, seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::invalid("trial count must be at least 1"));
        }
        Ok(McConfig {
            trials,
            seed,
            chunk_size: DEFAULT_CHUNK_SIZE,
        })
    }

    /// Replaces the trials-per-substream granularity.
    ///
    /// # Errors
    /// Rejects a zero chunk size.
    pub fn with_chunk_size(mut self, chunk_size: u64) -> Result<Self> {
        if chunk_size == 0 {
            return Err(Error::invalid("chunk size must be at least 1"));
        }
        self.chunk_size = chunk_size;
        Ok(self)
    }

    /// Number of trials.
    #[must_use]
    pub fn trials(&self) -> u64 {
        self.trials
    }

    /// Base seed.
    #[must_use]
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Trials per substream.
    #[must_use]
    pub fn chunk_size(&self) -> u64 {
        self.chunk_size
    }
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

fn merge_histograms(cfg: &McConfig, hist_len: usize, per_chunk: Vec<Vec<u64>>) -> Result<Pmf> {
    let mut total = vec![0u64; hist_len];
    for hist in per_chunk {
        for (slot, count) in total.iter_mut().zip(hist) {
            *slot += count;
        }
    }
    let trials = cfg.trials as f64;
    let masses: Vec<f64> = total.iter().map(|&c| c as f64 / trials).collect();
    Pmf::new(0, masses)
}

/// Empirical law of the guessing score from `cfg.trials` sampled decks, each
/// drawn letter by letter, converted to a deck, and played under the
/// strategy table.
///
/// # Errors
/// Rejects a strategy table built for a different bias.
pub fn simulate_x(params: &ShuffleParams, strategy: &StrategyTable, cfg: &McConfig) -> Result<Pmf> {
    if strategy.p() != params.p() {
        return Err(Error::invalid(format!(
            "strategy table bias {} does not match shuffle bias {}",
            strategy.p(),
            params.p()
        )));
    }
    let n = params.n();
    let threshold = letter_threshold(params.p());
    let n_chunks = cfg.trials.div_ceil(cfg.chunk_size);
    let per_chunk: Vec<Vec<u64>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = chunk_rng(cfg.seed, chunk);
            let start = chunk * cfg.chunk_size;
            let count = cfg.chunk_size.min(cfg.trials - start);
            let mut hist = vec![0u64; n as usize + 1];
            let mut letters = Vec::with_capacity(n as usize);
            let mut cards = Vec::with_capacity(n as usize);
            let mut scratch = PlayScratch::new();
            for _ in 0..count {
                sample_letters_into(n, threshold, &mut rng, &mut letters);
                word_to_deck_into(&letters, &mut cards);
                let correct = play_count(&cards, strategy, &mut scratch);
                hist[correct as usize] += 1;
            }
            hist
        })
        .collect();
    merge_histograms(cfg, n as usize + 1, per_chunk)
}

/// Empirical law of the two-color score played after the first card reveals
/// the cut: the cut size is drawn from the zero-truncated binomial, then the
/// remaining n−1 cards are drawn proportionally and guessed by majority.
///
/// # Errors
/// Rejects n < 2.
pub fn simulate_cjn(params: &ShuffleParams, cfg: &McConfig) -> Result<Pmf> {
    let n = params.n();
    if n < 2 {
        return Err(Error::invalid(
            "the revealed-cut game requires a deck of at least 2 cards",
        ));
    }
    let j_law = truncated_binomial_pmf(n, params.p())?;
    let cum: Vec<f64> = j_law
        .masses()
        .iter()
        .scan(0.0, |acc, &m| {
            *acc += m;
            Some(*acc)
        })
        .collect();
    let n_chunks = cfg.trials.div_ceil(cfg.chunk_size);
    let per_chunk: Vec<Vec<u64>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = chunk_rng(cfg.seed, chunk);
            let start = chunk * cfg.chunk_size;
            let count = cfg.chunk_size.min(cfg.trials - start);
            let mut hist = vec![0u64; n as usize];
            for _ in 0..count {
                let u = uniform_f64(&mut rng);
                let idx = cum.partition_point(|&c| c < u).min(cum.len() - 1);
                let j = idx as u32 + 1;
                let mut a_rem = n - 1 - j;
                let mut b_rem = j;
                let mut correct = 0u32;
                while a_rem + b_rem > 0 {
                    let side = two_color_guess(a_rem, b_rem);
                    let tot = f64::from(a_rem + b_rem);
                    let is_a = uniform_f64(&mut rng) * tot < f64::from(a_rem);
                    if (side == Letter::A) == is_a {
                        correct += 1;
                    }
                    if is_a {
                        a_rem -= 1;
                    } else {
                        b_rem -= 1;
                    }
                }
                hist[correct as usize] += 1;
            }
            hist
        })
        .collect();
    merge_histograms(cfg, n as usize, per_chunk)
}
