//! Limiting distributions of the guessing score and numerical convergence
//! checks.
//!
//! For fixed bias the centered score is asymptotically geometric; at the
//! balanced point it is Maxwell-Boltzmann after √n scaling; biases drifting
//! toward ½ or 1 at rate n^{−c} interpolate through half-noncentral-chi,
//! shifted-exponential, Poisson, and normal regimes. The two-color game has
//! its own five-region classification. This module evaluates every such law,
//! measures distances between exact or sampled laws and their limits, and
//! assembles convergence tables.

use std::f64::consts::PI;

use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exact::x_pmf;
use crate::mc::{simulate_x, McConfig};
use crate::numeric::{adaptive_simpson, normal_cdf};
use crate::pmf::Pmf;
use crate::shuffle::{identity_probability, validate_p, ShuffleParams};
use crate::strategy::build_strategy_table;

/// Density of the Maxwell-Boltzmann limit of (Xₙ − n/2)/√n at p = ½:
/// √(2/π)·8x²e^{−2x²} for x ≥ 0, zero below.
#[must_use]
pub fn maxwell_boltzmann_density(x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    (2.0 / PI).sqrt() * 8.0 * x * x * (-2.0 * x * x).exp()
}

/// Density 2xe^{−x²} of the balanced two-color limit, x ≥ 0.
#[must_use]
pub fn rayleigh_density(x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    2.0 * x * (-x * x).exp()
}

/// Density (ρ+2x)e^{−x(ρ+x)} of the critical-window two-color limit, x ≥ 0.
/// Reduces to the Rayleigh density at ρ = 0.
///
/// # Panics
/// Panics if rho is negative or not finite.
#[must_use]
pub fn linexp_density(x: f64, rho: f64) -> f64 {
    assert!(
        rho >= 0.0 && rho.is_finite(),
        "linexp parameter must be a nonnegative real, got {rho}"
    );
    if x < 0.0 {
        return 0.0;
    }
    (rho + 2.0 * x) * (-x * (rho + x)).exp()
}

/// Density e^{−x} of the wide-gap two-color limit, x ≥ 0.
#[must_use]
pub fn exp_region_density(x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    (-x).exp()
}

/// Density (4x/√(2π))·e^{−2(x²+b²)}·sinh(4bx)/b of the scaled score at the
/// critical drift p = ½ + b/√n, x ≥ 0. Even in b; evaluated through |b|, with
/// the difference of Gaussians rewritten to stay finite for large b·x and a
/// series for small b·x.
///
/// # Errors
/// Rejects b = 0 (the limit there is [`maxwell_boltzmann_density`]) and
/// non-finite b.
pub fn chi_half_density(x: f64, b: f64) -> Result<f64> {
    if b == 0.0 || !b.is_finite() {
        return Err(Error::invalid(format!(
            "chi-half parameter must be a nonzero finite real, got {b}"
        )));
    }
    if x < 0.0 {
        return Ok(0.0);
    }
    let beta = b.abs();
    let z = 4.0 * beta * x;
    let value = if z < 0.5 {
        let z2 = z * z;
        let sinh_over_z = 1.0 + z2 / 6.0 + z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0;
        (4.0 * x / (2.0 * PI).sqrt()) * (-2.0 * (x * x + beta * beta)).exp() * 4.0 * x * sinh_over_z
    } else {
        let lo = x - beta;
        let hi = x + beta;
        (2.0 * x / ((2.0 * PI).sqrt() * beta)) * ((-2.0 * lo * lo).exp() - (-2.0 * hi * hi).exp())
    };
    Ok(value)
}

/// CDF of |b| plus an exponential with rate 1/(2|b|): 0 below |b|, then
/// 1 − e^{−(x−|b|)/(2|b|)}. The limit of (Xₙ − n/2)/n^{1−c} for slow drift
/// c < ½.
///
/// # Errors
/// Rejects b = 0 and non-finite b.
pub fn shifted_exp_cdf(x: f64, b: f64) -> Result<f64> {
    if b == 0.0 || !b.is_finite() {
        return Err(Error::invalid(format!(
            "shifted-exponential parameter must be a nonzero finite real, got {b}"
        )));
    }
    let beta = b.abs();
    Ok(if x < beta {
        0.0
    } else {
        1.0 - (-(x - beta) / (2.0 * beta)).exp()
    })
}

/// Geometric mass ρᵏ(1−ρ), k ≥ 0.
///
/// # Errors
/// Rejects rho outside (0, 1).
pub fn geometric_pmf(rho: f64, k: u64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::invalid(format!(
            "geometric parameter must lie in (0, 1), got {rho}"
        )));
    }
    Ok(rho.powf(k as f64) * (1.0 - rho))
}

/// Poisson mass λᵏe^{−λ}/k!.
///
/// # Panics
/// Panics if lambda is not a positive finite real.
#[must_use]
pub fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    assert!(
        lambda > 0.0 && lambda.is_finite(),
        "poisson parameter must be a positive real, got {lambda}"
    );
    (k as f64 * lambda.ln() - lambda - ln_gamma(k as f64 + 1.0)).exp()
}

/// A limiting distribution, either a lattice law compared by total variation
/// or a continuous law compared through its CDF.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitLaw {
    Geometric { rho: f64 },
    MaxwellBoltzmann,
    HalfNoncentralChi3 { b: f64 },
    ShiftedExponential { b: f64 },
    Rayleigh,
    LinExp { rho: f64 },
    UnitExponential,
    Poisson { lambda: f64 },
    DegenerateAtZero,
}

/// Integrates a nonnegative density over [lo, hi] in unit-length panels so
/// that localized bumps are never bracketed by two far-apart zero samples.
fn integrate_density(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let mut total = 0.0;
    let mut left = lo;
    while left < hi {
        let right = (left + 1.0).min(hi);
        total += adaptive_simpson(&f, left, right, 1e-10);
        left = right;
    }
    total
}

impl LimitLaw {
    /// Geometric(ρ) on {0, 1, 2, …}.
    ///
    /// # Errors
    /// Rejects rho outside (0, 1).
    pub fn geometric(rho: f64) -> Result<Self> {
        geometric_pmf(rho, 0)?;
        Ok(LimitLaw::Geometric { rho })
    }

    /// The Maxwell-Boltzmann law with density [`maxwell_boltzmann_density`].
    ///
    /// # Errors
    /// Fails only if the density does not normalize, which indicates a
    /// numerical defect.
    pub fn maxwell_boltzmann() -> Result<Self> {
        let law = LimitLaw::MaxwellBoltzmann;
        law.check_normalized()?;
        Ok(law)
    }

    /// The law with density [`chi_half_density`] at parameter b.
    ///
    /// # Errors
    /// Rejects b = 0 or non-finite b, or a density that fails to normalize.
    pub fn half_noncentral_chi3(b: f64) -> Result<Self> {
        chi_half_density(0.0, b)?;
        let law = LimitLaw::HalfNoncentralChi3 { b };
        law.check_normalized()?;
        Ok(law)
    }

    /// |b| plus an exponential with rate 1/(2|b|).
    ///
    /// # Errors
    /// Rejects b = 0 or non-finite b, or a density that fails to normalize.
    pub fn shifted_exponential(b: f64) -> Result<Self> {
        shifted_exp_cdf(0.0, b)?;
        let law = LimitLaw::ShiftedExponential { b };
        law.check_normalized()?;
        Ok(law)
    }

    /// The Rayleigh law with density [`rayleigh_density`].
    ///
    /// # Errors
    /// Fails only if the density does not normalize.
    pub fn rayleigh() -> Result<Self> {
        let law = LimitLaw::Rayleigh;
        law.check_normalized()?;
        Ok(law)
    }

    /// The law with density [`linexp_density`] at parameter ρ ≥ 0.
    ///
    /// # Errors
    /// Rejects negative or non-finite rho, or a density that fails to
    /// normalize.
    pub fn lin_exp(rho: f64) -> Result<Self> {
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(Error::invalid(format!(
                "linexp parameter must be a nonnegative real, got {rho}"
            )));
        }
        let law = LimitLaw::LinExp { rho };
        law.check_normalized()?;
        Ok(law)
    }

    /// The unit exponential with density [`exp_region_density`].
    ///
    /// # Errors
    /// Fails only if the density does not normalize.
    pub fn unit_exponential() -> Result<Self> {
        let law = LimitLaw::UnitExponential;
        law.check_normalized()?;
        Ok(law)
    }

    /// Poisson(λ) on {0, 1, 2, …}.
    ///
    /// # Errors
    /// Rejects non-positive or non-finite lambda.
    pub fn poisson(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::invalid(format!(
                "poisson parameter must be a positive real, got {lambda}"
            )));
        }
        Ok(LimitLaw::Poisson { lambda })
    }

    /// The unit mass at zero.
    #[must_use]
    pub fn degenerate_at_zero() -> Self {
        LimitLaw::DegenerateAtZero
    }

    /// Short lowercase name for table output.
    #[must_use]
    pub fn label(&self) -> &'static str {
        match self {
            LimitLaw::Geometric { .. } => "geometric",
            LimitLaw::MaxwellBoltzmann => "maxwell-boltzmann",
            LimitLaw::HalfNoncentralChi3 { .. } => "half-noncentral-chi3",
            LimitLaw::ShiftedExponential { .. } => "shifted-exponential",
            LimitLaw::Rayleigh => "rayleigh",
            LimitLaw::LinExp { .. } => "linexp",
            LimitLaw::UnitExponential => "exponential",
            LimitLaw::Poisson { .. } => "poisson",
            LimitLaw::DegenerateAtZero => "degenerate",
        }
    }

    /// The law's scalar parameter, when it has one.
    #[must_use]
    pub fn parameter(&self) -> Option<f64> {
        match *self {
            LimitLaw::Geometric { rho } | LimitLaw::LinExp { rho } => Some(rho),
            LimitLaw::HalfNoncentralChi3 { b } | LimitLaw::ShiftedExponential { b } => Some(b),
            LimitLaw::Poisson { lambda } => Some(lambda),
            LimitLaw::MaxwellBoltzmann
            | LimitLaw::Rayleigh
            | LimitLaw::UnitExponential
            | LimitLaw::DegenerateAtZero => None,
        }
    }

    fn density_at(&self, x: f64) -> f64 {
        match *self {
            LimitLaw::MaxwellBoltzmann => maxwell_boltzmann_density(x),
            LimitLaw::HalfNoncentralChi3 { b } => {
                chi_half_density(x, b).expect("parameter validated at construction")
            }
            LimitLaw::ShiftedExponential { b } => {
                let beta = b.abs();
                if x < beta {
                    0.0
                } else {
                    (-(x - beta) / (2.0 * beta)).exp() / (2.0 * beta)
                }
            }
            LimitLaw::Rayleigh => rayleigh_density(x),
            LimitLaw::LinExp { rho } => linexp_density(x, rho),
            LimitLaw::UnitExponential => exp_region_density(x),
            LimitLaw::Geometric { .. } | LimitLaw::Poisson { .. } | LimitLaw::DegenerateAtZero => {
                unreachable!("lattice laws have no density")
            }
        }
    }

    /// Integration window [lo, hi] outside which the density is negligible.
    fn density_support(&self) -> (f64, f64) {
        match *self {
            LimitLaw::MaxwellBoltzmann | LimitLaw::Rayleigh | LimitLaw::LinExp { .. } => {
                (0.0, 20.0)
            }
            LimitLaw::HalfNoncentralChi3 { b } => (0.0, 20.0f64.max(b.abs() + 8.0)),
            LimitLaw::ShiftedExponential { b } => (b.abs(), 20.0f64.max(81.0 * b.abs())),
            LimitLaw::UnitExponential => (0.0, 40.0),
            LimitLaw::Geometric { .. } | LimitLaw::Poisson { .. } | LimitLaw::DegenerateAtZero => {
                unreachable!("lattice laws have no density")
            }
        }
    }

    fn check_normalized(&self) -> Result<()> {
        let (lo, hi) = self.density_support();
        let total = integrate_density(|x| self.density_at(x), lo, hi);
        if (total - 1.0).abs() > 1e-6 {
            return Err(Error::invalid(format!(
                "{} density integrates to {total}, not 1",
                self.label()
            )));
        }
        Ok(())
    }

    fn lattice_pmf(&self, k: i64) -> f64 {
        if k < 0 {
            return 0.0;
        }
        match *self {
            LimitLaw::Geometric { rho } => {
                geometric_pmf(rho, k as u64).expect("parameter validated at construction")
            }
            LimitLaw::Poisson { lambda } => poisson_pmf(lambda, k as u64),
            LimitLaw::DegenerateAtZero => f64::from(u8::from(k == 0)),
            _ => unreachable!("continuous laws have no lattice pmf"),
        }
    }

    fn is_lattice(&self) -> bool {
        matches!(
            self,
            LimitLaw::Geometric { .. } | LimitLaw::Poisson { .. } | LimitLaw::DegenerateAtZero
        )
    }

    /// Cumulative distribution function. Lattice laws use closed forms; the
    /// density-defined laws are integrated by adaptive quadrature.
    #[must_use]
    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            LimitLaw::Geometric { rho } => {
                if x < 0.0 {
                    0.0
                } else {
                    1.0 - rho.powf(x.floor() + 1.0)
                }
            }
            LimitLaw::Poisson { lambda } => {
                if x < 0.0 {
                    return 0.0;
                }
                let kmax = x.floor() as u64;
                let mut term = (-lambda).exp();
                let mut cum = term;
                let mut k = 0u64;
                while k < kmax && cum < 1.0 - 1e-17 {
                    k += 1;
                    term *= lambda / k as f64;
                    cum += term;
                }
                cum.min(1.0)
            }
            LimitLaw::DegenerateAtZero => {
                if x < 0.0 {
                    0.0
                } else {
                    1.0
                }
            }
            LimitLaw::ShiftedExponential { b } => {
                shifted_exp_cdf(x, b).expect("parameter validated at construction")
            }
            LimitLaw::UnitExponential => {
                if x < 0.0 {
                    0.0
                } else {
                    1.0 - (-x).exp()
                }
            }
            LimitLaw::MaxwellBoltzmann
            | LimitLaw::HalfNoncentralChi3 { .. }
            | LimitLaw::Rayleigh
            | LimitLaw::LinExp { .. } => {
                let (lo, hi) = self.density_support();
                if x <= lo {
                    return 0.0;
                }
                integrate_density(|t| self.density_at(t), lo, x.min(hi)).clamp(0.0, 1.0)
            }
        }
    }
}

/// Asymptotic regions of the two-color game, ordered by how the color-count
/// gap compares to the majority count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoColorRegion {
    DegenerateHead,
    Rayleigh,
    LinExp,
    Geometric,
    Exponential,
}

impl std::fmt::Display for TwoColorRegion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            TwoColorRegion::DegenerateHead => "degenerate-head",
            TwoColorRegion::Rayleigh => "rayleigh",
            TwoColorRegion::LinExp => "linexp",
            TwoColorRegion::Geometric => "geometric",
            TwoColorRegion::Exponential => "exponential",
        };
        f.write_str(name)
    }
}

/// Classifies a two-color pair (m1 ≥ m2) into its asymptotic region and
/// returns the matching limit law. The regions are asymptotic statements, so
/// finite pairs are classified by fixed ratios: degenerate head when
/// m2 < 0.05·m1; then by the gap Δ = m1 − m2 against m1^0.4 (Rayleigh) and
/// m1^0.6 (LinExp with ρ = Δ/√m1); beyond that, geometric with ρ = m2/m1
/// when Δ ≥ 0.05·m1, else the unit exponential.
///
/// # Errors
/// Rejects m1 = 0 and m1 < m2 (swap the arguments first; the score law
/// depends only on the unordered pair).
pub fn two_color_regime(m1: u64, m2: u64) -> Result<(TwoColorRegion, LimitLaw)> {
    if m1 == 0 {
        return Err(Error::invalid("m1 must be a positive integer"));
    }
    if m1 < m2 {
        return Err(Error::invalid(format!(
            "regime classification requires m1 >= m2, got {m1} < {m2}; swap the arguments"
        )));
    }
    let m1f = m1 as f64;
    let m2f = m2 as f64;
    let delta = m1f - m2f;
    if m2f < 0.05 * m1f {
        return Ok((
            TwoColorRegion::DegenerateHead,
            LimitLaw::degenerate_at_zero(),
        ));
    }
    if delta <= m1f.powf(0.4) {
        return Ok((TwoColorRegion::Rayleigh, LimitLaw::rayleigh()?));
    }
    if delta < m1f.powf(0.6) {
        return Ok((
            TwoColorRegion::LinExp,
            LimitLaw::lin_exp(delta / m1f.sqrt())?,
        ));
    }
    if delta >= 0.05 * m1f {
        return Ok((TwoColorRegion::Geometric, LimitLaw::geometric(m2f / m1f)?));
    }
    Ok((TwoColorRegion::Exponential, LimitLaw::unit_exponential()?))
}

/// Total variation distance ½·Σ|a_k − b_k| over the union of supports.
#[must_use]
pub fn tv_distance(a: &Pmf, b: &Pmf) -> f64 {
    let lo = a.support_min().min(b.support_min());
    let hi = a.support_max().max(b.support_max());
    let mut acc = 0.0;
    for k in lo..=hi {
        acc += (a.prob(k) - b.prob(k)).abs();
    }
    0.5 * acc
}

/// Total variation between a pmf and a lattice limit law, charging the law's
/// mass outside the pmf's support range to the distance.
fn tv_to_law(pmf: &Pmf, law: &LimitLaw) -> f64 {
    debug_assert!(law.is_lattice());
    let mut acc = 0.0;
    let mut law_mass = 0.0;
    for (k, m) in pmf.iter() {
        let lm = law.lattice_pmf(k);
        acc += (m - lm).abs();
        law_mass += lm;
    }
    0.5 * (acc + (1.0 - law_mass).max(0.0))
}

/// Kolmogorov-Smirnov distance between the law of (K − center)/scale, K
/// distributed by `pmf`, and the limit law: the largest gap between the two
/// CDFs evaluated at the standardized support points.
///
/// # Errors
/// Rejects a scale that is not a positive finite real.
pub fn ks_distance(pmf: &Pmf, law: &LimitLaw, center: f64, scale: f64) -> Result<f64> {
    ks_to_cdf(pmf, center, scale, |z| law.cdf(z))
}

fn ks_to_cdf(pmf: &Pmf, center: f64, scale: f64, cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::invalid(format!(
            "scale must be a positive finite real, got {scale}"
        )));
    }
    let mut cum = 0.0;
    let mut sup = 0.0f64;
    for (k, m) in pmf.iter() {
        cum += m;
        let z = (k as f64 - center) / scale;
        sup = sup.max((cum - cdf(z)).abs());
    }
    Ok(sup)
}

/// A family of biases p(n) whose score laws converge to a known limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegimeSpec {
    /// Constant bias p.
    FixedP { p: f64 },
    /// p(n) = ½ + b·n^{−c}.
    HalfPlus { b: f64, c: f64 },
    /// p(n) = 1 − λ·n^{−c}.
    OneMinus { lambda: f64, c: f64 },
}

impl RegimeSpec {
    fn validate(&self) -> Result<()> {
        match *self {
            RegimeSpec::FixedP { p } => validate_p(p),
            RegimeSpec::HalfPlus { b, c } => {
                if b == 0.0 || !b.is_finite() {
                    return Err(Error::invalid(format!(
                        "drift coefficient b must be a nonzero finite real, got {b}"
                    )));
                }
                if !(c > 0.0 && c.is_finite()) {
                    return Err(Error::invalid(format!(
                        "drift exponent c must be a positive real, got {c}"
                    )));
                }
                Ok(())
            }
            RegimeSpec::OneMinus { lambda, c } => {
                if !(lambda > 0.0 && lambda.is_finite()) {
                    return Err(Error::invalid(format!(
                        "drift coefficient lambda must be a positive real, got {lambda}"
                    )));
                }
                if !(c > 0.0 && c.is_finite()) {
                    return Err(Error::invalid(format!(
                        "drift exponent c must be a positive real, got {c}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// The bias this regime prescribes at deck size n.
    ///
    /// # Errors
    /// Rejects regime parameters or a resulting bias outside (0, 1).
    pub fn p_at(&self, n: u32) -> Result<f64> {
        self.validate()?;
        if n == 0 {
            return Err(Error::invalid("deck size n must be at least 1"));
        }
        let p = match *self {
            RegimeSpec::FixedP { p } => p,
            RegimeSpec::HalfPlus { b, c } => 0.5 + b * f64::from(n).powf(-c),
            RegimeSpec::OneMinus { lambda, c } => 1.0 - lambda * f64::from(n).powf(-c),
        };
        validate_p(p).map_err(|_| {
            Error::invalid(format!("regime bias at n = {n} is {p}, outside (0, 1)"))
        })?;
        Ok(p)
    }
}

/// How a convergence report obtains each score law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMode {
    /// Exact distribution by dynamic programming.
    Exact,
    /// Seeded Monte Carlo estimate.
    MonteCarlo { trials: u64, seed: u64 },
}

/// One line of a convergence table: the distances between the (centered,
/// scaled) score law at size n and the regime's limit law.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: u32,
    pub p: f64,
    pub law: &'static str,
    pub parameter: Option<f64>,
    pub tv: Option<f64>,
    pub ks: Option<f64>,
}

fn validate_n_list(n_list: &[u32]) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::invalid("n list must not be empty"));
    }
    if n_list[0] == 0 {
        return Err(Error::invalid("deck sizes must be positive"));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("n list must be strictly ascending"));
    }
    Ok(())
}

fn x_law_for(n: u32, p: f64, mode: ReportMode) -> Result<Pmf> {
    let params = ShuffleParams::new(n, p)?;
    let table = build_strategy_table(p, n)?;
    match mode {
        ReportMode::Exact => x_pmf(&params, &table),
        ReportMode::MonteCarlo { trials, seed } => {
            let cfg = McConfig::new(trials, seed)?;
            simulate_x(&params, &table, &cfg)
        }
    }
}

/// Mirrors a pmf through k ↦ n − k.
fn reflect_about(pmf: &Pmf, n: u32) -> Pmf {
    let lo = i64::from(n) - pmf.support_max();
    let masses: Vec<f64> = pmf.masses().iter().rev().copied().collect();
    Pmf::new(lo, masses).expect("reflection preserves a valid pmf")
}

fn report_row(regime: &RegimeSpec, mode: ReportMode, n: u32) -> Result<ConvergenceRow> {
    let p = regime.p_at(n)?;
    let x = x_law_for(n, p, mode)?;
    let nf = f64::from(n);
    match *regime {
        RegimeSpec::FixedP { p: bias } => {
            if bias == 0.5 {
                let law = LimitLaw::maxwell_boltzmann()?;
                let ks = ks_distance(&x, &law, nf / 2.0, nf.sqrt())?;
                return Ok(ConvergenceRow {
                    n,
                    p,
                    law: law.label(),
                    parameter: None,
                    tv: None,
                    ks: Some(ks),
                });
            }
            let p_star = bias.max(1.0 - bias);
            let rho = (1.0 - p_star) / p_star;
            let law = LimitLaw::geometric(rho)?;
            let centered = x.shifted(-((nf * p_star).floor() as i64));
            let tv = tv_to_law(&centered, &law);
            let ks = ks_distance(&x, &law, nf * p_star, 1.0)?;
            Ok(ConvergenceRow {
                n,
                p,
                law: law.label(),
                parameter: Some(rho),
                tv: Some(tv),
                ks: Some(ks),
            })
        }
        RegimeSpec::HalfPlus { b, c } => {
            let (law, scale) = if c < 0.5 {
                (LimitLaw::shifted_exponential(b)?, nf.powf(1.0 - c))
            } else if c == 0.5 {
                (LimitLaw::half_noncentral_chi3(b)?, nf.sqrt())
            } else {
                (LimitLaw::maxwell_boltzmann()?, nf.sqrt())
            };
            let ks = ks_distance(&x, &law, nf / 2.0, scale)?;
            Ok(ConvergenceRow {
                n,
                p,
                law: law.label(),
                parameter: law.parameter(),
                tv: None,
                ks: Some(ks),
            })
        }
        RegimeSpec::OneMinus { lambda, c } => {
            let deficit = reflect_about(&x, n);
            if c == 1.0 {
                let law = LimitLaw::poisson(lambda)?;
                let tv = tv_to_law(&deficit, &law);
                let ks = ks_distance(&deficit, &law, 0.0, 1.0)?;
                Ok(ConvergenceRow {
                    n,
                    p,
                    law: law.label(),
                    parameter: Some(lambda),
                    tv: Some(tv),
                    ks: Some(ks),
                })
            } else if c > 1.0 {
                let law = LimitLaw::degenerate_at_zero();
                let tv = tv_to_law(&deficit, &law);
                Ok(ConvergenceRow {
                    n,
                    p,
                    law: law.label(),
                    parameter: None,
                    tv: Some(tv),
                    ks: None,
                })
            } else {
                let mu = lambda * nf.powf(1.0 - c);
                let ks = ks_to_cdf(&deficit, mu, mu.sqrt(), normal_cdf)?;
                Ok(ConvergenceRow {
                    n,
                    p,
                    law: "normal",
                    parameter: None,
                    tv: None,
                    ks: Some(ks),
                })
            }
        }
    }
}

/// Distances between the score law and the regime's limit at each requested
/// size. Fixed bias compares against the geometric law (both the integer-
/// shifted tv and the unrounded ks) or, at exactly p = ½, against the
/// Maxwell-Boltzmann CDF; drifting regimes follow their phase diagram.
///
/// # Errors
/// Rejects invalid regime parameters, a bias falling outside (0, 1) at some
/// requested n, or a non-ascending n list; propagates exact-DP guards.
pub fn convergence_report(
    regime: &RegimeSpec,
    n_list: &[u32],
    mode: ReportMode,
) -> Result<Vec<ConvergenceRow>> {
    regime.validate()?;
    validate_n_list(n_list)?;
    n_list
        .par_iter()
        .map(|&n| report_row(regime, mode, n))
        .collect()
}

/// Probability that the shuffle leaves the deck sorted, along the bias
/// schedule p(n) = 1 − λ·n^{−c}. Rows are (n, p(n), probability).
///
/// # Errors
/// Rejects regimes other than [`RegimeSpec::OneMinus`], invalid parameters,
/// or a non-ascending n list.
pub fn rif_id_limit(regime: &RegimeSpec, n_list: &[u32]) -> Result<Vec<(u32, f64, f64)>> {
    let RegimeSpec::OneMinus { .. } = regime else {
        return Err(Error::invalid(
            "sorted-deck limits are defined for the one-minus regime",
        ));
    };
    regime.validate()?;
    validate_n_list(n_list)?;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let p = regime.p_at(n)?;
        let params = ShuffleParams::new(n, p)?;
        rows.push((n, p, identity_probability(&params)));
    }
    Ok(rows)
}
