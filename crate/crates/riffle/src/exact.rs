//! Exact score distributions under the optimal strategy.
//!
//! The score splits by the first card. If it is card 1 the remaining deck is
//! a fresh shuffle of size n−1; if the whole deck is the identity the score
//! is the number of sizes at which the strategy guesses the minimum; and if
//! the first card reveals the cut at j the rest of the game is a two-color
//! race between j low cards and n−1−j high ones. Iterating this split yields
//! the full distribution of the number of correct guesses.

use crate::error::{Error, Result};
use crate::numeric::binom_pmf;
use crate::pmf::Pmf;
use crate::shuffle::{validate_p, Letter, ShuffleParams};
use crate::strategy::{kappa, play_count, PlayScratch, StrategyTable};

/// Largest m1 + m2 accepted by [`c_pmf`].
const C_PMF_MAX_TOTAL: u32 = 4000;

/// Largest deck size accepted by [`x_pmf`].
const X_PMF_MAX_N: u32 = 5000;

/// Largest deck size accepted by [`x_pmf_bruteforce`].
const BRUTEFORCE_MAX_N: u32 = 24;

/// Distribution cell for the two-color game with a low and b high cards
/// left: masses for scores max(a,b) .. a+b, stored from offset max(a,b).
/// `above` is the cell for (a−1, b), `left` the cell for (a, b−1).
fn combine_cells(a: u32, b: u32, above: &[f64], left: &[f64]) -> Vec<f64> {
    let len = (a.min(b) + 1) as usize;
    let mut out = vec![0.0; len];
    let tot = f64::from(a + b);
    let wa = f64::from(a) / tot;
    let wb = f64::from(b) / tot;
    let base = usize::from(a == b);
    for (i, &m) in above.iter().enumerate() {
        out[base + i] += wa * m;
    }
    for (i, &m) in left.iter().enumerate() {
        out[i] += wb * m;
    }
    out
}

/// Exact distribution of the number of correct guesses in the two-color game
/// with m1 cards of one color and m2 of the other, drawn proportionally and
/// guessed by majority. The score always lies in [max(m1,m2), m1+m2].
///
/// # Errors
/// [`Error::IterationGuard`] when m1 + m2 exceeds 4000.
pub fn c_pmf(m1: u32, m2: u32) -> Result<Pmf> {
    if m1.saturating_add(m2) > C_PMF_MAX_TOTAL {
        return Err(Error::guard(format!(
            "two-color distribution limited to m1 + m2 <= {C_PMF_MAX_TOTAL}, got {m1} + {m2}"
        )));
    }
    let mut prev: Vec<Vec<f64>> = (0..=m2).map(|_| vec![1.0]).collect();
    for a in 1..=m1 {
        let mut cur = Vec::with_capacity(m2 as usize + 1);
        cur.push(vec![1.0]);
        for b in 1..=m2 {
            let above = std::mem::take(&mut prev[b as usize]);
            let cell = combine_cells(a, b, &above, &cur[(b - 1) as usize]);
            cur.push(cell);
        }
        prev = cur;
    }
    let cell = prev.pop().expect("row is never empty");
    Pmf::new(i64::from(m1.max(m2)), cell)
}

/// Zero-truncated binomial law of the cut position given that the first card
/// is not card 1 and the deck is not sorted: mass at j proportional to
/// C(n−1,j) p^j (1−p)^{n−1−j} for j = 1..n−1.
///
/// # Errors
/// Rejects n < 2 and p outside (0, 1).
pub fn truncated_binomial_pmf(n: u32, p: f64) -> Result<Pmf> {
    validate_p(p)?;
    if n < 2 {
        return Err(Error::invalid("truncated cut law requires n >= 2"));
    }
    let mut masses: Vec<f64> = (1..n)
        .map(|j| binom_pmf(u64::from(n - 1), u64::from(j), p))
        .collect();
    let total: f64 = masses.iter().sum();
    for m in &mut masses {
        *m /= total;
    }
    Pmf::new(1, masses)
}

fn check_table(params: &ShuffleParams, table: &StrategyTable) -> Result<()> {
    if table.p() != params.p() {
        return Err(Error::invalid(format!(
            "strategy table bias {} does not match shuffle bias {}",
            table.p(),
            params.p()
        )));
    }
    Ok(())
}

/// Exact distribution of the total number of correct guesses for a deck of
/// size n at bias p, computed by recursing on the first card and streaming
/// the two-color distributions along anti-diagonals of constant m1 + m2.
///
/// # Errors
/// Rejects a table built for a different bias; [`Error::IterationGuard`]
/// when n exceeds 5000.
pub fn x_pmf(params: &ShuffleParams, table: &StrategyTable) -> Result<Pmf> {
    check_table(params, table)?;
    let n = params.n();
    if n > X_PMF_MAX_N {
        return Err(Error::guard(format!(
            "exact score distribution limited to n <= {X_PMF_MAX_N}, got {n}"
        )));
    }
    let p = params.p();
    let q = 1.0 - p;
    let mut x = vec![0.0f64, 1.0];
    if n == 1 {
        return Pmf::new(1, vec![1.0]);
    }

    let mut t_count: u32 = 1;
    let mut diag: Vec<Vec<f64>> = vec![vec![1.0], vec![1.0]];
    let mut s = 1u32;
    for nu in 2..=n {
        while s < nu - 1 {
            let mut next = Vec::with_capacity(s as usize + 2);
            for a in 0..=s + 1 {
                let b = s + 1 - a;
                if a == 0 || b == 0 {
                    next.push(vec![1.0]);
                } else {
                    next.push(combine_cells(
                        a,
                        b,
                        &diag[(a - 1) as usize],
                        &diag[a as usize],
                    ));
                }
            }
            diag = next;
            s += 1;
        }

        let a_nu = table.a_indicator(nu);
        let kap = kappa(nu, p);
        let mut next = vec![0.0f64; nu as usize + 1];

        let d = usize::from(a_nu);
        for (i, &m) in x.iter().enumerate() {
            next[i + d] += p * m;
        }

        t_count += u32::from(a_nu);
        next[t_count as usize] += q.powi(nu as i32);

        for j in 1..nu {
            let w = q * binom_pmf(u64::from(nu - 1), u64::from(j), p);
            let off = j.max(nu - 1 - j) as usize;
            let shift = usize::from(!a_nu && j == kap - 1);
            for (i, &m) in diag[j as usize].iter().enumerate() {
                next[off + i + shift] += w * m;
            }
        }
        x = next;
    }
    debug_assert_eq!(x[0], 0.0);
    Pmf::new(1, x[1..].to_vec())
}

/// Same distribution as [`x_pmf`], computed by enumerating all 2ⁿ letter
/// words, playing each resulting deck, and accumulating word weights.
///
/// # Errors
/// Rejects a table built for a different bias; [`Error::IterationGuard`]
/// when n exceeds 24.
pub fn x_pmf_bruteforce(params: &ShuffleParams, table: &StrategyTable) -> Result<Pmf> {
    check_table(params, table)?;
    let n = params.n();
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::guard(format!(
            "word enumeration limited to n <= {BRUTEFORCE_MAX_N}, got {n}"
        )));
    }
    let p = params.p();
    let q = 1.0 - p;
    let weights: Vec<f64> = (0..=n)
        .map(|k| p.powi(k as i32) * q.powi((n - k) as i32))
        .collect();

    let mut hist = vec![0.0f64; n as usize + 1];
    let mut letters = vec![Letter::B; n as usize];
    let mut cards = Vec::with_capacity(n as usize);
    let mut scratch = PlayScratch::new();
    for mask in 0u32..1u32 << n {
        for (i, slot) in letters.iter_mut().enumerate() {
            *slot = if mask >> i & 1 == 1 {
                Letter::A
            } else {
                Letter::B
            };
        }
        crate::shuffle::word_to_deck_into(&letters, &mut cards);
        let correct = play_count(&cards, table, &mut scratch);
        hist[correct as usize] += weights[mask.count_ones() as usize];
    }
    debug_assert_eq!(hist[0], 0.0);
    Pmf::new(1, hist[1..].to_vec())
}

/// Raw moment of the given order: Σ kʳ · P{k}.
#[must_use]
pub fn moments(pmf: &Pmf, order: u32) -> f64 {
    pmf.iter()
        .map(|(k, m)| (k as f64).powi(order as i32) * m)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::build_strategy_table;
    use approx::assert_relative_eq;

    #[test]
    fn two_color_base_cases() {
        let d = c_pmf(0, 0).unwrap();
        assert_eq!(d.support_min(), 0);
        assert_relative_eq!(d.prob(0), 1.0);

        let one_each = c_pmf(1, 1).unwrap();
        assert_relative_eq!(one_each.prob(1), 0.5);
        assert_relative_eq!(one_each.prob(2), 0.5);

        let two_one = c_pmf(2, 1).unwrap();
        assert_relative_eq!(two_one.prob(2), 2.0 / 3.0);
        assert_relative_eq!(two_one.prob(3), 1.0 / 3.0);
    }

    #[test]
    fn two_color_symmetry_and_support() {
        for m1 in 0..=12u32 {
            for m2 in 0..=12u32 {
                let d = c_pmf(m1, m2).unwrap();
                let sym = c_pmf(m2, m1).unwrap();
                assert_eq!(d.support_min(), i64::from(m1.max(m2)));
                assert_eq!(d.support_max(), i64::from(m1 + m2));
                for (k, m) in d.iter() {
                    assert_relative_eq!(m, sym.prob(k), max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn two_color_head_mass_identity() {
        for (m1, m2) in [(5u32, 3u32), (4, 4), (9, 2), (7, 7)] {
            let d = c_pmf(m1, m2).unwrap();
            let expected = 1.0 - f64::from(m2) / f64::from(m1 + 1);
            assert_relative_eq!(d.prob(i64::from(m1)), expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn two_color_guard() {
        assert!(matches!(c_pmf(3000, 1500), Err(Error::IterationGuard(_))));
    }

    #[test]
    fn truncated_binomial_reference_values() {
        let d = truncated_binomial_pmf(3, 0.5).unwrap();
        assert_relative_eq!(d.prob(1), 2.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(d.prob(2), 1.0 / 3.0, max_relative = 1e-12);

        let degenerate = truncated_binomial_pmf(2, 0.37).unwrap();
        assert_relative_eq!(degenerate.prob(1), 1.0);

        assert!(truncated_binomial_pmf(1, 0.5).is_err());
    }

    #[test]
    fn truncated_binomial_mean_identity() {
        for (n, p) in [(12u32, 0.3), (40, 0.15), (7, 0.8)] {
            let d = truncated_binomial_pmf(n, p).unwrap();
            let q = 1.0 - p;
            let expected = f64::from(n - 1) * p / (1.0 - q.powi(n as i32 - 1));
            assert_relative_eq!(moments(&d, 1), expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn score_distribution_small_sizes() {
        for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let params = ShuffleParams::new(1, p).unwrap();
            let table = build_strategy_table(p, 1).unwrap();
            let d = x_pmf(&params, &table).unwrap();
            assert_relative_eq!(d.prob(1), 1.0);

            let params = ShuffleParams::new(2, p).unwrap();
            let table = build_strategy_table(p, 2).unwrap();
            let d = x_pmf(&params, &table).unwrap();
            let pq = p * (1.0 - p);
            assert_relative_eq!(d.prob(1), pq, max_relative = 1e-12);
            assert_relative_eq!(d.prob(2), 1.0 - pq, max_relative = 1e-12);
        }
    }

    #[test]
    fn score_distribution_matches_enumeration() {
        for p in [0.15, 0.5, 0.8] {
            for n in [3u32, 5, 8] {
                let params = ShuffleParams::new(n, p).unwrap();
                let table = build_strategy_table(p, n).unwrap();
                let fast = x_pmf(&params, &table).unwrap();
                let slow = x_pmf_bruteforce(&params, &table).unwrap();
                for k in 0..=i64::from(n) {
                    assert_relative_eq!(
                        fast.prob(k),
                        slow.prob(k),
                        max_relative = 1e-11,
                        epsilon = 1e-14
                    );
                }
            }
        }
    }

    #[test]
    fn score_distribution_total_mass() {
        for (n, p) in [(50u32, 0.15), (120, 0.5), (200, 0.9)] {
            let params = ShuffleParams::new(n, p).unwrap();
            let table = build_strategy_table(p, n).unwrap();
            let d = x_pmf(&params, &table).unwrap();
            let total: f64 = d.masses().iter().sum();
            assert_relative_eq!(total, 1.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn score_guards_and_bias_check() {
        let params = ShuffleParams::new(10, 0.3).unwrap();
        let other = build_strategy_table(0.4, 10).unwrap();
        assert!(matches!(
            x_pmf(&params, &other),
            Err(Error::InvalidParameter(_))
        ));

        let params = ShuffleParams::new(6000, 0.3).unwrap();
        let table = build_strategy_table(0.3, 10).unwrap();
        assert!(matches!(
            x_pmf(&params, &table),
            Err(Error::IterationGuard(_))
        ));

        let params = ShuffleParams::new(30, 0.3).unwrap();
        let table = build_strategy_table(0.3, 30).unwrap();
        assert!(matches!(
            x_pmf_bruteforce(&params, &table),
            Err(Error::IterationGuard(_))
        ));
    }

    #[test]
    fn moment_reference_values() {
        let d = Pmf::delta(5);
        assert_relative_eq!(moments(&d, 0), 1.0);
        assert_relative_eq!(moments(&d, 1), 5.0);
        assert_relative_eq!(moments(&d, 2), 25.0);

        let c = c_pmf(1, 1).unwrap();
        assert_relative_eq!(moments(&c, 1), 1.5);
    }
}
