//! Finite probability mass functions on the integers.
//!
//! A [`Pmf`] is a dense vector of nonnegative masses together with the integer
//! value of its first entry. Interior zeros are allowed, so every law in this
//! crate (correct-guess counts, cut positions, first-card values) fits the same
//! carrier.

use crate::error::{Error, Result};

/// Masses must sum to one within this tolerance.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// A probability mass function on a contiguous integer range.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    offset: i64,
    masses: Vec<f64>,
}

impl Pmf {
    /// Builds a pmf whose support starts at `offset`.
    ///
    /// # Errors
    /// Rejects empty mass vectors, negative or non-finite entries, and vectors
    /// whose sum deviates from one by more than [`NORMALIZATION_TOL`].
    pub fn new(offset: i64, masses: Vec<f64>) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::invalid("pmf must have at least one mass"));
        }
        for (i, &m) in masses.iter().enumerate() {
            if !m.is_finite() || m < 0.0 {
                return Err(Error::invalid(format!(
                    "pmf mass at {} is {m}, expected a finite nonnegative value",
                    offset + i as i64
                )));
            }
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::invalid(format!(
                "pmf masses sum to {total}, expected 1 within {NORMALIZATION_TOL}"
            )));
        }
        Ok(Pmf { offset, masses })
    }

    /// The unit mass at `k`.
    #[must_use]
    pub fn delta(k: i64) -> Self {
        Pmf {
            offset: k,
            masses: vec![1.0],
        }
    }

    /// Value of the first (smallest) support point.
    #[must_use]
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Dense mass vector, starting at [`offset`](Self::offset).
    #[must_use]
    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Smallest support point (equal to the offset).
    #[must_use]
    pub fn support_min(&self) -> i64 {
        self.offset
    }

    /// Largest support point.
    #[must_use]
    pub fn support_max(&self) -> i64 {
        self.offset + self.masses.len() as i64 - 1
    }

    /// Mass at `k`, zero outside the stored range.
    #[must_use]
    pub fn prob(&self, k: i64) -> f64 {
        if k < self.offset {
            return 0.0;
        }
        let i = (k - self.offset) as usize;
        self.masses.get(i).copied().unwrap_or(0.0)
    }

    /// The same law translated by `d`.
    #[must_use]
    pub fn shifted(&self, d: i64) -> Self {
        Pmf {
            offset: self.offset + d,
            masses: self.masses.clone(),
        }
    }

    /// Iterates over `(value, mass)` pairs in increasing value order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .map(move |(i, &m)| (self.offset + i as i64, m))
    }
}
