//! Checks the shuffle law against exhaustive enumeration of letter words and
//! against its own sampling routes.

mod common;

use std::collections::{HashMap, HashSet};

use approx::assert_relative_eq;
use common::{binom, deck_weights, for_each_permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riffle::shuffle::{
    cut_pmf, first_card_pmf, identity_probability, riffle_measure, sample_deck_cut_interleave,
    sample_word, word_to_deck, Deck, Letter, ShuffleParams, Word,
};

const P_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.85];

#[test]
fn measure_matches_word_enumeration() {
    for n in 1..=8 {
        for &p in &P_GRID {
            let weights = deck_weights(n, p);
            let total: f64 = weights.values().sum();
            assert!((total - 1.0).abs() < 1e-12, "n={n} p={p}: total {total}");
            for (cards, &w) in &weights {
                let deck = Deck::new(cards.clone()).unwrap();
                let got = riffle_measure(&deck, p).unwrap();
                assert!(
                    (got - w).abs() < 1e-13,
                    "n={n} p={p} deck {cards:?}: measure {got}, enumerated {w}"
                );
            }
        }
    }
}

#[test]
fn measure_sums_to_one_over_the_symmetric_group() {
    for n in 1..=7 {
        for &p in &[0.15, 0.5, 0.61] {
            let mut total = 0.0;
            let mut reachable = 0u32;
            for_each_permutation(n, |perm| {
                let m = riffle_measure(&Deck::new(perm.to_vec()).unwrap(), p).unwrap();
                total += m;
                if m > 0.0 {
                    reachable += 1;
                }
            });
            assert!((total - 1.0).abs() < 1e-10, "n={n} p={p}: total {total}");
            assert_eq!(reachable, (1u32 << n) - n, "n={n} p={p}");
        }
    }
}

#[test]
fn non_identity_decks_come_from_a_single_cut() {
    let n = 10u32;
    let mut cuts: HashMap<Vec<u32>, HashSet<u32>> = HashMap::new();
    for mask in 0u32..1 << n {
        let letters: Vec<Letter> = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Letter::A
                } else {
                    Letter::B
                }
            })
            .collect();
        let deck = word_to_deck(&Word::new(letters).unwrap());
        cuts.entry(deck.cards().to_vec())
            .or_default()
            .insert(mask.count_ones());
    }
    for (cards, ks) in &cuts {
        let sorted = cards.windows(2).all(|w| w[0] < w[1]);
        if sorted {
            assert_eq!(ks.len(), n as usize + 1);
        } else {
            assert_eq!(ks.len(), 1, "deck {cards:?} produced by cuts {ks:?}");
        }
    }
}

#[test]
fn first_card_law_matches_enumeration() {
    for n in 1..=9 {
        for &p in &P_GRID {
            let weights = deck_weights(n, p);
            let fc = first_card_pmf(&ShuffleParams::new(n, p).unwrap());
            let mut marginal = vec![0.0; n as usize + 1];
            for (cards, &w) in &weights {
                marginal[cards[0] as usize] += w;
            }
            for (m, &mass) in marginal.iter().enumerate().skip(1) {
                assert!(
                    (fc.prob(m as i64) - mass).abs() < 1e-13,
                    "n={n} p={p} m={m}: {} vs {}",
                    fc.prob(m as i64),
                    mass
                );
            }
        }
    }
}

#[test]
fn first_card_law_matches_closed_form() {
    for n in [1u32, 2, 3, 7, 12, 20, 33, 40] {
        for &p in &P_GRID {
            let q = 1.0 - p;
            let fc = first_card_pmf(&ShuffleParams::new(n, p).unwrap());
            assert!((fc.prob(1) - (p + q.powi(n as i32))).abs() < 1e-14);
            for m in 2..=n {
                let direct = q
                    * binom(u64::from(n - 1), u64::from(m - 1))
                    * p.powi(m as i32 - 1)
                    * q.powi((n - m) as i32);
                assert_relative_eq!(fc.prob(i64::from(m)), direct, max_relative = 1e-11);
            }
        }
    }
}

#[test]
fn cut_distribution_is_binomial() {
    for n in [1u32, 5, 12, 30] {
        for &p in &P_GRID {
            let q = 1.0 - p;
            let pmf = cut_pmf(&ShuffleParams::new(n, p).unwrap());
            assert_eq!(pmf.support_min(), 0);
            assert_eq!(pmf.support_max(), i64::from(n));
            for k in 0..=n {
                let direct =
                    binom(u64::from(n), u64::from(k)) * p.powi(k as i32) * q.powi((n - k) as i32);
                assert_relative_eq!(pmf.prob(i64::from(k)), direct, max_relative = 1e-11);
            }
        }
    }
}

#[test]
fn the_two_sampling_routes_agree_in_distribution() {
    let params = ShuffleParams::new(4, 0.35).unwrap();
    let trials = 500_000u32;
    let weight = 1.0 / f64::from(trials);

    let mut via_word: HashMap<Vec<u32>, f64> = HashMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..trials {
        let deck = word_to_deck(&sample_word(&params, &mut rng));
        *via_word.entry(deck.cards().to_vec()).or_insert(0.0) += weight;
    }

    let mut via_cut: HashMap<Vec<u32>, f64> = HashMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..trials {
        let deck = sample_deck_cut_interleave(&params, &mut rng);
        *via_cut.entry(deck.cards().to_vec()).or_insert(0.0) += weight;
    }

    let mut union: HashSet<&Vec<u32>> = via_word.keys().collect();
    union.extend(via_cut.keys());
    let mut tv_routes = 0.0;
    let mut tv_exact = 0.0;
    for cards in union {
        let a = via_word.get(cards).copied().unwrap_or(0.0);
        let b = via_cut.get(cards).copied().unwrap_or(0.0);
        let exact = riffle_measure(&Deck::new(cards.clone()).unwrap(), 0.35).unwrap();
        tv_routes += (a - b).abs();
        tv_exact += (a - exact).abs();
    }
    assert!(tv_routes / 2.0 < 0.01, "route tv {}", tv_routes / 2.0);
    assert!(tv_exact / 2.0 < 0.008, "exact tv {}", tv_exact / 2.0);
}

#[test]
fn identity_frequency_matches_closed_form() {
    let params = ShuffleParams::new(7, 0.3).unwrap();
    let exact = identity_probability(&params);
    let trials = 400_000u32;
    let mut hits = 0u32;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..trials {
        let deck = sample_deck_cut_interleave(&params, &mut rng);
        if deck.cards().windows(2).all(|w| w[0] < w[1]) {
            hits += 1;
        }
    }
    let freq = f64::from(hits) / f64::from(trials);
    assert!((freq - exact).abs() < 0.005, "freq {freq}, exact {exact}");
}

#[test]
fn identity_probability_closed_forms() {
    for n in 1..=60u32 {
        let params = ShuffleParams::new(n, 0.5).unwrap();
        let direct = f64::from(n + 1) / (1u64 << n) as f64;
        assert_relative_eq!(identity_probability(&params), direct, max_relative = 1e-12);
    }
    for n in [1u32, 5, 20] {
        for &p in &[0.2, 0.7] {
            let q: f64 = 1.0 - p;
            let direct: f64 = (0..=n as i32)
                .map(|k| p.powi(k) * q.powi(n as i32 - k))
                .sum();
            let params = ShuffleParams::new(n, p).unwrap();
            assert_relative_eq!(identity_probability(&params), direct, max_relative = 1e-12);
        }
    }
}

#[test]
fn constructors_reject_bad_input() {
    assert!(Deck::new(vec![]).is_err());
    assert!(Deck::new(vec![1, 1, 2]).is_err());
    assert!(Deck::new(vec![1, 3]).is_err());
    assert!(Deck::new(vec![2, 1, 3]).is_ok());
    assert!(Word::new(vec![]).is_err());
    assert!(riffle_measure(&Deck::new(vec![1]).unwrap(), 0.0).is_err());
    assert!(riffle_measure(&Deck::new(vec![1]).unwrap(), 1.0).is_err());
}
