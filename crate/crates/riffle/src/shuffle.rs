//! The asymmetric riffle-shuffle model.
//!
//! A deck of `n` cards is cut at a Binomial(n, p) position and the two packets
//! are interleaved uniformly. Three equivalent constructions are provided:
//! sampling a random two-letter word, sampling a cut followed by
//! proportional interleaving, and the explicit probability measure on
//! permutations. The distribution of the first card of the shuffled deck is
//! available in closed form.

use crate::error::{Error, Result};
use crate::numeric::{binom_pmf, uniform_f64};
use crate::pmf::Pmf;
use rand::RngCore;
use std::str::FromStr;

/// Deck size and cut bias for one shuffle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShuffleParams {
    n: u32,
    p: f64,
}

impl ShuffleParams {
    /// # Errors
    /// Rejects `n = 0` and any `p` outside the open interval (0, 1).
    pub fn new(n: u32, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("deck size n must be at least 1"));
        }
        validate_p(p)?;
        Ok(ShuffleParams { n, p })
    }

    /// Deck size.
    #[must_use]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Cut-bias parameter.
    #[must_use]
    pub fn p(&self) -> f64 {
        self.p
    }
}

pub(crate) fn validate_p(p: f64) -> Result<()> {
    if !p.is_finite() || p <= 0.0 || p >= 1.0 {
        return Err(Error::invalid(format!(
            "p must lie strictly between 0 and 1, got {p}"
        )));
    }
    Ok(())
}

/// One letter of a shuffle word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    A,
    B,
}

/// A word over {a, b} encoding one shuffle: the a-positions carry the top
/// packet in order, the b-positions the bottom packet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// # Errors
    /// Rejects the empty word.
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::invalid("a shuffle word must have length >= 1"));
        }
        Ok(Word { letters })
    }

    /// The letter sequence.
    #[must_use]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of `a` letters (the cut position it encodes).
    #[must_use]
    pub fn count_a(&self) -> u32 {
        self.letters.iter().filter(|&&l| l == Letter::A).count() as u32
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                other => Err(Error::invalid(format!(
                    "word letters must be 'a' or 'b', got {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

/// A permutation of 1..n given as the card sequence after one shuffle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deck {
    cards: Vec<u32>,
}

impl Deck {
    /// # Errors
    /// Rejects sequences that are not a permutation of 1..len.
    pub fn new(cards: Vec<u32>) -> Result<Self> {
        let n = cards.len();
        if n == 0 {
            return Err(Error::invalid("a deck must have at least one card"));
        }
        let mut seen = vec![false; n];
        for &c in &cards {
            if c == 0 || c as usize > n || seen[(c - 1) as usize] {
                return Err(Error::invalid(format!(
                    "deck is not a permutation of 1..={n}: bad card {c}"
                )));
            }
            seen[(c - 1) as usize] = true;
        }
        Ok(Deck { cards })
    }

    /// The card sequence.
    #[must_use]
    pub fn cards(&self) -> &[u32] {
        &self.cards
    }

    /// Deck size.
    #[must_use]
    pub fn len(&self) -> u32 {
        self.cards.len() as u32
    }

    /// Always false: empty decks are rejected at construction.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }
}

/// Distribution of the cut position: Binomial(n, p) on {0, …, n}.
#[must_use]
pub fn cut_pmf(params: &ShuffleParams) -> Pmf {
    let n = params.n as u64;
    let masses: Vec<f64> = (0..=n).map(|k| binom_pmf(n, k, params.p)).collect();
    Pmf::new(0, masses).expect("binomial masses sum to 1")
}

pub(crate) fn letter_threshold(p: f64) -> u64 {
    (p * 4_294_967_296.0).round() as u64
}

pub(crate) fn sample_letters_into(
    n: u32,
    threshold: u64,
    rng: &mut impl RngCore,
    out: &mut Vec<Letter>,
) {
    out.clear();
    out.reserve(n as usize);
    for _ in 0..n {
        let draw = rng.next_u32() as u64;
        out.push(if draw < threshold {
            Letter::A
        } else {
            Letter::B
        });
    }
}

/// Samples a shuffle word: n independent letters, each `a` with
/// probability p.
pub fn sample_word(params: &ShuffleParams, rng: &mut impl RngCore) -> Word {
    let mut letters = Vec::new();
    sample_letters_into(params.n, letter_threshold(params.p), rng, &mut letters);
    Word { letters }
}

pub(crate) fn word_to_deck_into(letters: &[Letter], out: &mut Vec<u32>) {
    let k = letters.iter().filter(|&&l| l == Letter::A).count() as u32;
    out.clear();
    out.reserve(letters.len());
    let mut next_a = 1u32;
    let mut next_b = k + 1;
    for &l in letters {
        match l {
            Letter::A => {
                out.push(next_a);
                next_a += 1;
            }
            Letter::B => {
                out.push(next_b);
                next_b += 1;
            }
        }
    }
}

/// Converts a word with k letters `a` into the deck whose a-positions carry
/// 1..k in order and whose b-positions carry k+1..n in order.
#[must_use]
pub fn word_to_deck(word: &Word) -> Deck {
    let mut cards = Vec::new();
    word_to_deck_into(&word.letters, &mut cards);
    Deck { cards }
}

/// Samples a deck by drawing a Binomial(n, p) cut and interleaving the two
/// packets with probabilities proportional to their remaining sizes.
///
/// Retained as a cross-check sampler; [`sample_word`] followed by
/// [`word_to_deck`] induces the same deck distribution.
pub fn sample_deck_cut_interleave(params: &ShuffleParams, rng: &mut impl RngCore) -> Deck {
    let n = params.n;
    let threshold = letter_threshold(params.p);
    let mut k = 0u32;
    for _ in 0..n {
        if (rng.next_u32() as u64) < threshold {
            k += 1;
        }
    }
    let mut a_rem = k;
    let mut b_rem = n - k;
    let mut next_a = 1u32;
    let mut next_b = k + 1;
    let mut cards = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let take_a = if a_rem == 0 {
            false
        } else if b_rem == 0 {
            true
        } else {
            uniform_f64(rng) * ((a_rem + b_rem) as f64) < a_rem as f64
        };
        if take_a {
            cards.push(next_a);
            next_a += 1;
            a_rem -= 1;
        } else {
            cards.push(next_b);
            next_b += 1;
            b_rem -= 1;
        }
    }
    Deck { cards }
}

/// Probability of the sorted deck under one shuffle with bias p.
///
/// Evaluates ((1−p)^{n+1} − p^{n+1})/(1−2p), switching to the explicit sum
/// Σ_{k=0}^{n} p^k (1−p)^{n−k} when |p − ½| < 1e−6 to avoid the removable
/// singularity.
#[must_use]
pub fn identity_probability(params: &ShuffleParams) -> f64 {
    let n = params.n as i32;
    let p = params.p;
    let q = 1.0 - p;
    if (p - 0.5).abs() < 1e-6 {
        (0..=n).map(|k| p.powi(k) * q.powi(n - k)).sum()
    } else {
        (q.powi(n + 1) - p.powi(n + 1)) / (1.0 - 2.0 * p)
    }
}

/// Probability that one shuffle with bias p produces exactly this deck.
///
/// The sorted deck has probability [`identity_probability`]. Any other deck
/// is a shuffle outcome only if its labels split at a unique cut k into two
/// increasing subsequences 1..k and k+1..n, in which case the probability is
/// p^k (1−p)^{n−k}; decks admitting no such split have probability 0.
///
/// # Errors
/// Rejects `p` outside (0, 1).
pub fn riffle_measure(deck: &Deck, p: f64) -> Result<f64> {
    validate_p(p)?;
    let n = deck.cards.len();
    let mut pos = vec![0u32; n];
    for (i, &c) in deck.cards.iter().enumerate() {
        pos[(c - 1) as usize] = i as u32;
    }

    let mut first_descent = n;
    for i in 1..n {
        if pos[i] < pos[i - 1] {
            first_descent = i;
            break;
        }
    }
    if first_descent == n {
        let params = ShuffleParams::new(n as u32, p)?;
        return Ok(identity_probability(&params));
    }
    let mut last_descent = 0;
    for i in (1..n).rev() {
        if pos[i] < pos[i - 1] {
            last_descent = i;
            break;
        }
    }

    // Labels 1..k are position-increasing iff k <= first_descent; labels
    // k+1..n are position-increasing iff k >= last_descent. A valid cut
    // needs both.
    if last_descent > first_descent {
        return Ok(0.0);
    }
    assert_eq!(
        last_descent, first_descent,
        "non-identity deck with more than one valid cut"
    );
    let k = first_descent as i32;
    Ok(p.powi(k) * (1.0 - p).powi(n as i32 - k))
}

/// Distribution of the first card of the shuffled deck, on {1, …, n}.
///
/// P{FC = 1} = p + (1−p)^n and P{FC = m} = C(n−1, m−1) p^{m−1} (1−p)^{n−m+1}
/// for 2 ≤ m ≤ n.
#[must_use]
pub fn first_card_pmf(params: &ShuffleParams) -> Pmf {
    let n = params.n as u64;
    let p = params.p;
    let q = 1.0 - p;
    let mut masses = Vec::with_capacity(n as usize);
    masses.push(p + q.powi(n as i32));
    for m in 2..=n {
        masses.push(q * binom_pmf(n - 1, m - 1, p));
    }
    Pmf::new(1, masses).expect("first-card masses sum to 1")
}
