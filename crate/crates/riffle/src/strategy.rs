//! The optimal complete-feedback guessing strategy.
//!
//! While no card larger than the current minimum has appeared, the deck prefix
//! is consistent with every cut, and the best first guess at remaining size ν
//! is either the minimum itself or the shifted binomial mode κ_ν, decided by
//! comparing the two first-card probabilities. The first larger card reveals
//! the cut; from then on the two remaining increasing runs are known and the
//! guess is the head of the longer run (ties to the low run).

use crate::error::{Error, Result};
use crate::numeric::{binom_max_bound, max_binom_pmf_in};
use crate::shuffle::{validate_p, Deck, Letter};

/// Largest number of deck sizes examined when locating the last size at
/// which the mode guess beats guessing the minimum.
const SCAN_CAP: u64 = 20_000_000;

/// Largest n with p + (1−p)^n ≥ ½, the range where guessing the minimum is
/// at least as good as any other guess regardless of deck size details.
///
/// # Errors
/// Rejects p outside (0, ½); for p ≥ ½ the comparison never leaves 1.
pub fn threshold_n0(p: f64) -> Result<u32> {
    validate_p(p)?;
    if p >= 0.5 {
        return Err(Error::invalid(format!(
            "threshold n0 is defined only for p < 1/2, got {p}"
        )));
    }
    let q = 1.0 - p;
    let mut c = ((0.5 - p).ln() / q.ln()).floor() as i64;
    c = c.max(1);
    while p + q.powi(c as i32 + 1) >= 0.5 {
        c += 1;
    }
    while c > 1 && p + q.powi(c as i32) < 0.5 {
        c -= 1;
    }
    Ok(c as u32)
}

/// The alternative first guess: 1 + ⌊np⌋, the shifted mode of the
/// binomial number of low-packet cards among the other n−1 positions.
#[must_use]
pub fn kappa(n: u32, p: f64) -> u32 {
    debug_assert!(n >= 1 && p > 0.0 && p < 1.0);
    1 + (n as f64 * p).floor() as u32
}

fn event_a_unchecked(n: u32, p: f64) -> bool {
    if n == 1 {
        return true;
    }
    let q = 1.0 - p;
    let fc1 = p + q.powi(n as i32);
    let best_other = q * max_binom_pmf_in((n - 1) as u64, p, 1, (n - 1) as u64);
    fc1 >= best_other
}

/// Whether guessing 1 first is at least as good as guessing the mode κₙ:
/// true iff P{FCₙ=1} ≥ max_{2≤m≤n} P{FCₙ=m}. Identically true for p ≥ ½.
///
/// # Errors
/// Rejects n = 0 and p outside (0, 1).
pub fn event_a(n: u32, p: f64) -> Result<bool> {
    validate_p(p)?;
    if n == 0 {
        return Err(Error::invalid("deck size n must be at least 1"));
    }
    Ok(event_a_unchecked(n, p))
}

/// Scans upward from n0, recording where the mode guess wins, until a
/// certified bound shows guessing 1 wins at every larger size: the binomial
/// maximum is at most [`binom_max_bound`], which decreases in n, so once
/// (1−p)·bound < p < P{FCₙ=1} no larger size can flip back.
fn scan_window(p: f64) -> Result<(u32, u32, Vec<bool>)> {
    let n0 = threshold_n0(p)?;
    let q = 1.0 - p;
    let mut window = Vec::new();
    let mut last_false = None;
    let mut n = n0 + 1;
    let mut steps: u64 = 0;
    loop {
        if let Some(bound) = binom_max_bound((n - 1) as u64, p) {
            if q * bound < p {
                break;
            }
        }
        let a = event_a_unchecked(n, p);
        window.push(a);
        if !a {
            last_false = Some(n);
        }
        steps += 1;
        if steps > SCAN_CAP {
            return Err(Error::guard(format!(
                "first-guess scan exceeded {SCAN_CAP} deck sizes at p = {p}"
            )));
        }
        n += 1;
    }
    let n1 = last_false.unwrap_or(n0);
    window.truncate((n1 - n0) as usize);
    Ok((n0, n1, window))
}

/// The last deck size at which the mode guess beats guessing the minimum
/// (or n0 if it never does): for every n > n1 the first guess is 1.
///
/// # Errors
/// Rejects p outside (0, ½); [`Error::IterationGuard`] if the scan cap is hit
/// (p small enough that the window end exceeds 2·10⁷).
pub fn threshold_n1(p: f64) -> Result<u32> {
    scan_window(p).map(|(_, n1, _)| n1)
}

/// Precomputed first-guess decision data for a fixed bias p.
///
/// The table answers [`first_guess`](Self::first_guess) and
/// [`a_indicator`](Self::a_indicator) for every deck size, not only those up
/// to `n_max`; `n_max` bounds the rows a caller intends to display.
#[derive(Debug, Clone)]
pub struct StrategyTable {
    p: f64,
    n_max: u32,
    n0: Option<u32>,
    n1: Option<u32>,
    window_a: Vec<bool>,
}

/// Tabulates the first-guess rule for sizes 1..=n_max at bias p.
///
/// # Errors
/// Rejects p outside (0, 1) and n_max = 0; propagates the scan guard.
pub fn build_strategy_table(p: f64, n_max: u32) -> Result<StrategyTable> {
    validate_p(p)?;
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    if p < 0.5 {
        let (n0, n1, window_a) = scan_window(p)?;
        Ok(StrategyTable {
            p,
            n_max,
            n0: Some(n0),
            n1: Some(n1),
            window_a,
        })
    } else {
        Ok(StrategyTable {
            p,
            n_max,
            n0: None,
            n1: None,
            window_a: Vec::new(),
        })
    }
}

impl StrategyTable {
    /// The bias this table was built for.
    #[must_use]
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Largest tabulated deck size.
    #[must_use]
    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// Largest n with P{FCₙ=1} ≥ ½; absent for p ≥ ½.
    #[must_use]
    pub fn n0(&self) -> Option<u32> {
        self.n0
    }

    /// Last size where the mode guess wins; absent for p ≥ ½.
    #[must_use]
    pub fn n1(&self) -> Option<u32> {
        self.n1
    }

    /// Truth of the comparison event at size n (see [`event_a`]).
    #[must_use]
    pub fn a_indicator(&self, n: u32) -> bool {
        debug_assert!(n >= 1);
        let (Some(n0), Some(n1)) = (self.n0, self.n1) else {
            return true;
        };
        if n <= n0 || n > n1 {
            true
        } else {
            self.window_a[(n - n0 - 1) as usize]
        }
    }

    /// The optimal first guess at deck size n: 1 when the comparison event
    /// holds, κₙ otherwise.
    #[must_use]
    pub fn first_guess(&self, n: u32) -> u32 {
        if self.a_indicator(n) {
            1
        } else {
            kappa(n, self.p)
        }
    }
}

/// Majority guess in the two-color game: `a` iff at least as many a-cards as
/// b-cards remain.
#[must_use]
pub fn two_color_guess(remaining_a: u32, remaining_b: u32) -> Letter {
    if remaining_a >= remaining_b {
        Letter::A
    } else {
        Letter::B
    }
}

/// Full record of one played deck.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessTranscript {
    guesses: Vec<u32>,
    outcomes: Vec<bool>,
    correct_count: u32,
}

impl GuessTranscript {
    /// The guess made before each reveal.
    #[must_use]
    pub fn guesses(&self) -> &[u32] {
        &self.guesses
    }

    /// Whether each guess matched the revealed card.
    #[must_use]
    pub fn outcomes(&self) -> &[bool] {
        &self.outcomes
    }

    /// Number of correct guesses.
    #[must_use]
    pub fn correct_count(&self) -> u32 {
        self.correct_count
    }
}

/// Reusable seen-mark storage for repeated plays.
pub(crate) struct PlayScratch {
    seen: Vec<u32>,
    tag: u32,
}

impl PlayScratch {
    pub(crate) fn new() -> Self {
        PlayScratch {
            seen: Vec::new(),
            tag: 0,
        }
    }

    fn begin(&mut self, n: u32) {
        let need = n as usize + 2;
        if self.seen.len() < need {
            self.seen = vec![0; need];
            self.tag = 0;
        }
        self.tag = self.tag.wrapping_add(1);
        if self.tag == 0 {
            self.seen.fill(0);
            self.tag = 1;
        }
    }

    #[inline]
    fn mark(&mut self, label: u32) {
        self.seen[label as usize] = self.tag;
    }

    #[inline]
    fn is_seen(&self, label: u32) -> bool {
        self.seen[label as usize] == self.tag
    }
}

/// One pass of the strategy over a card sequence. `record` receives every
/// (guess, outcome) pair in play order; the return value is the number of
/// correct guesses.
fn play_core(
    cards: &[u32],
    table: &StrategyTable,
    scratch: &mut PlayScratch,
    mut record: impl FnMut(u32, bool),
) -> u32 {
    let n = cards.len() as u32;
    scratch.begin(n);
    let mut correct = 0u32;
    let mut lo = 1u32;
    let mut nu = n;
    let mut idx = 0usize;
    let mut cut_card = 0u32;

    while idx < cards.len() {
        let guess = lo + (table.first_guess(nu) - 1);
        let card = cards[idx];
        idx += 1;
        let ok = card == guess;
        correct += ok as u32;
        record(guess, ok);
        scratch.mark(card);
        nu -= 1;
        if card == lo {
            lo += 1;
        } else {
            cut_card = card;
            break;
        }
    }
    if cut_card == 0 {
        return correct;
    }

    let c = cut_card;
    let mut a_rem = c - lo;
    let mut b_rem = n - c;
    let mut a_head = lo;
    let mut b_head = c + 1;
    while idx < cards.len() {
        let guess = match two_color_guess(a_rem, b_rem) {
            Letter::A => {
                while scratch.is_seen(a_head) {
                    a_head += 1;
                }
                a_head
            }
            Letter::B => {
                while scratch.is_seen(b_head) {
                    b_head += 1;
                }
                b_head
            }
        };
        let card = cards[idx];
        idx += 1;
        let ok = card == guess;
        correct += ok as u32;
        record(guess, ok);
        scratch.mark(card);
        if card < c {
            a_rem -= 1;
        } else {
            b_rem -= 1;
        }
    }
    correct
}

pub(crate) fn play_count(cards: &[u32], table: &StrategyTable, scratch: &mut PlayScratch) -> u32 {
    play_core(cards, table, scratch, |_, _| {})
}

/// Plays a deck with a prebuilt table, recording every guess and outcome.
#[must_use]
pub fn play_deck_with_table(deck: &Deck, table: &StrategyTable) -> GuessTranscript {
    let n = deck.len() as usize;
    let mut guesses = Vec::with_capacity(n);
    let mut outcomes = Vec::with_capacity(n);
    let mut scratch = PlayScratch::new();
    let correct_count = play_core(deck.cards(), table, &mut scratch, |g, ok| {
        guesses.push(g);
        outcomes.push(ok);
    });
    GuessTranscript {
        guesses,
        outcomes,
        correct_count,
    }
}

/// Plays a deck under the optimal strategy for bias p and returns the full
/// transcript. The number of correct guesses is the realized guessing score
/// for this deck.
///
/// # Errors
/// Rejects p outside (0, 1); propagates the threshold-scan guard.
pub fn play_deck(deck: &Deck, p: f64) -> Result<GuessTranscript> {
    let table = build_strategy_table(p, deck.len())?;
    Ok(play_deck_with_table(deck, &table))
}
