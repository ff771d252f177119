//! Shared oracles for the integration tests: exhaustive enumeration of letter
//! words, exact binomial coefficients, permutation iteration, and a
//! fixed-grid Simpson rule.

#![allow(dead_code)]

use std::collections::HashMap;

use riffle::shuffle::{word_to_deck, Letter, Word};

/// Exact C(n, k), computed in integer arithmetic.
pub fn binom(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as f64
}

/// The deck produced by each letter word of length n, with the word's
/// probability p^{#A} (1−p)^{#B}, merged over words that give the same deck.
pub fn deck_weights(n: u32, p: f64) -> HashMap<Vec<u32>, f64> {
    assert!((1..=20).contains(&n));
    let q = 1.0 - p;
    let mut map: HashMap<Vec<u32>, f64> = HashMap::new();
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
        let word = Word::new(letters).expect("word is nonempty");
        let deck = word_to_deck(&word);
        let a = mask.count_ones() as i32;
        let w = p.powi(a) * q.powi(n as i32 - a);
        *map.entry(deck.cards().to_vec()).or_insert(0.0) += w;
    }
    map
}

/// Joint weight of each (prefix, next card) pair under the given deck law.
pub fn prefix_next_weights(decks: &HashMap<Vec<u32>, f64>) -> HashMap<Vec<u32>, HashMap<u32, f64>> {
    let mut cond: HashMap<Vec<u32>, HashMap<u32, f64>> = HashMap::new();
    for (cards, &w) in decks {
        for t in 0..cards.len() {
            *cond
                .entry(cards[..t].to_vec())
                .or_default()
                .entry(cards[t])
                .or_insert(0.0) += w;
        }
    }
    cond
}

/// Applies f to every permutation of 1..=n (Heap's algorithm).
pub fn for_each_permutation(n: u32, mut f: impl FnMut(&[u32])) {
    let mut a: Vec<u32> = (1..=n).collect();
    let len = n as usize;
    let mut c = vec![0usize; len];
    f(&a);
    let mut i = 0;
    while i < len {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Composite Simpson rule over `panels` equal panels (panels must be even).
pub fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: u32) -> f64 {
    assert!(panels >= 2 && panels.is_multiple_of(2));
    let h = (hi - lo) / f64::from(panels);
    let mut acc = f(lo) + f(hi);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + h * f64::from(i));
    }
    acc * h / 3.0
}
