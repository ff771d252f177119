//! Internal numeric helpers: binomial pmf evaluation, a proven bound on the
//! binomial maximum, quadrature, and the standard normal CDF.

use statrs::function::erf::erf;
use statrs::function::gamma::ln_gamma;

/// Largest `n` for which binomial coefficients are computed exactly in
/// integer arithmetic before conversion to `f64`.
const EXACT_BINOM_LIMIT: u64 = 50;

/// Exact binomial coefficient for `n <= 50`, computed in u128.
///
/// # Panics
/// Panics if `n > 50`; callers gate on [`EXACT_BINOM_LIMIT`].
fn binom_coeff_u128(n: u64, k: u64) -> u128 {
    assert!(n <= EXACT_BINOM_LIMIT);
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// P{Bin(n, p) = k}.
///
/// Uses exact integer binomial coefficients for `n <= 50` and the
/// log-gamma form above, so small cases are bit-stable and large cases
/// cannot overflow.
pub fn binom_pmf(n: u64, k: u64, p: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p));
    if k > n {
        return 0.0;
    }
    let q = 1.0 - p;
    if n <= EXACT_BINOM_LIMIT {
        return binom_coeff_u128(n, k) as f64 * p.powi(k as i32) * q.powi((n - k) as i32);
    }
    if p == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    let nf = n as f64;
    let kf = k as f64;
    let ln = ln_gamma(nf + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(nf - kf + 1.0)
        + kf * p.ln()
        + (nf - kf) * q.ln();
    ln.exp()
}

/// Maximum of the Bin(n, p) pmf over `k` restricted to `[lo, hi]`.
///
/// The pmf is unimodal, so the restricted maximum sits at the mode clamped
/// into the interval; neighbors are evaluated as well to be safe against
/// floating-point ties at the mode boundary.
pub fn max_binom_pmf_in(n: u64, p: f64, lo: u64, hi: u64) -> f64 {
    debug_assert!(lo <= hi && hi <= n);
    let mode = ((n + 1) as f64 * p).floor() as i64;
    let center = mode.clamp(lo as i64, hi as i64) as u64;
    let mut best = 0.0f64;
    for k in center.saturating_sub(1)..=(center + 1).min(hi) {
        if k >= lo {
            best = best.max(binom_pmf(n, k, p));
        }
    }
    best
}

/// A proven upper bound on `max_k P{Bin(n, p) = k}`, valid when `n·p > 1`
/// and `n·(1−p) > 1`, and strictly decreasing in `n` on that domain.
///
/// Derivation: Stirling gives `pmf(k) <= sqrt(n / (2π k (n−k))) · e^{1/(12n)}
/// · e^{−n·KL(k/n ‖ p)}` with `KL >= 0`; the mode lies in `(np−1, np+1]` and
/// `k(n−k)` is concave, so `k(n−k) >= (np−1)(nq−1)` at the mode.
///
/// Returns `None` outside the valid domain.
pub fn binom_max_bound(n: u64, p: f64) -> Option<f64> {
    let nf = n as f64;
    let q = 1.0 - p;
    let a = nf * p - 1.0;
    let b = nf * q - 1.0;
    if a <= 0.0 || b <= 0.0 {
        return None;
    }
    Some((nf / (2.0 * std::f64::consts::PI * a * b)).sqrt() * (1.0 / (12.0 * nf)).exp())
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2))
}

fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, fa, m, fm, flm);
    let right = simpson(m, fm, b, fb, frm);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1)
        + adaptive_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with absolute
/// tolerance `tol`.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, fa, b, fb, fm);
    adaptive_step(&f, a, fa, b, fb, fm, whole, tol, 40)
}

/// Uniform draw in [0, 1) with 53 random bits.
pub fn uniform_f64(rng: &mut impl rand::RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_binomials_are_exact() {
        assert_eq!(binom_coeff_u128(7, 2), 21);
        assert_eq!(binom_coeff_u128(50, 25), 126_410_606_437_752);
        assert_eq!(binom_pmf(1, 0, 0.3), 0.7);
        assert_relative_eq!(
            binom_pmf(7, 2, 0.3),
            21.0 * 0.09 * 0.7f64.powi(5),
            epsilon = 0.0
        );
    }

    #[test]
    fn log_gamma_path_matches_exact_path_near_the_threshold() {
        for n in [48u64, 50, 52, 60, 120] {
            for k in [0u64, 1, n / 3, n / 2, n - 1, n] {
                for p in [0.1, 0.3, 0.5, 0.9] {
                    let exact_style = if n <= 50 {
                        binom_pmf(n, k, p)
                    } else {
                        continue;
                    };
                    let nf = n as f64;
                    let kf = k as f64;
                    let ln = ln_gamma(nf + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(nf - kf + 1.0)
                        + kf * p.ln()
                        + (nf - kf) * (1.0 - p).ln();
                    assert_relative_eq!(exact_style, ln.exp(), max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn binomial_rows_sum_to_one() {
        for &(n, p) in &[(10u64, 0.3), (51, 0.5), (200, 0.1), (1000, 0.75)] {
            let total: f64 = (0..=n).map(|k| binom_pmf(n, k, p)).sum();
            assert_relative_eq!(total, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn max_bound_dominates_the_true_maximum() {
        for &n in &[5u64, 10, 40, 100, 400, 2000] {
            for &p in &[0.1, 0.25, 0.5, 0.85] {
                if let Some(bound) = binom_max_bound(n, p) {
                    let true_max = max_binom_pmf_in(n, p, 0, n);
                    assert!(
                        true_max <= bound,
                        "bound {bound} below true max {true_max} at n={n} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn max_bound_is_decreasing_in_n() {
        for &p in &[0.1, 0.3, 0.5] {
            let mut prev = f64::INFINITY;
            for n in 1..3000u64 {
                if let Some(b) = binom_max_bound(n, p) {
                    assert!(b < prev, "bound not decreasing at n={n} p={p}");
                    prev = b;
                }
            }
        }
    }

    #[test]
    fn restricted_max_respects_the_interval() {
        let full = max_binom_pmf_in(19, 0.1, 0, 19);
        assert_relative_eq!(full, binom_pmf(19, 1, 0.1), epsilon = 0.0);
        let tail = max_binom_pmf_in(19, 0.1, 5, 19);
        assert_relative_eq!(tail, binom_pmf(19, 5, 0.1), epsilon = 0.0);
    }

    #[test]
    fn quadrature_integrates_known_functions() {
        let one = adaptive_simpson(|x| (-x).exp(), 0.0, 40.0, 1e-10);
        assert_relative_eq!(one, 1.0, epsilon = 1e-9);
        let half = adaptive_simpson(|x| x, 0.0, 1.0, 1e-12);
        assert_relative_eq!(half, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn normal_cdf_reference_points() {
        assert_relative_eq!(normal_cdf(0.0), 0.5, epsilon = 1e-15);
        assert_relative_eq!(normal_cdf(1.959963984540054), 0.975, epsilon = 1e-9);
        assert!(normal_cdf(-8.0) < 1e-14);
    }
}
