//! Difference operators `Δ^m_τ = (e^{iτD} − I)^m` and the moduli of continuity
//! `Ω_m(f, s) = sup_{|τ|≤s} ‖Δ^m_τ f‖`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::SpectralCoefficients;

/// Slack granted to inequalities whose sides involve a numerically located supremum.
pub const GRID_TOLERANCE: f64 = 1e-6;

const GOLDEN_ITERATIONS: usize = 80;

/// Sampling schedule for the supremum in `Ω_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulusParams {
    /// Difference order. Order 0 is the identity, so `Ω_0(f, s) = ‖f‖`.
    pub m: u32,
    /// Number of uniform cells on `[0, s]`.
    pub grid: usize,
    /// How many of the best grid local maxima get a golden-section refinement.
    pub refine: usize,
}

impl ModulusParams {
    pub fn new(m: u32) -> Self {
        Self {
            m,
            grid: 512,
            refine: 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid < 16 {
            return Err(Error::InvalidParams(format!(
                "modulus grid must have at least 16 cells, got {}",
                self.grid
            )));
        }
        Ok(())
    }
}

/// `Δ^m_τ f`, computed as `(e^{iτλ} − 1)^m c_j` on each coefficient.
pub fn difference<'a>(
    c: &SpectralCoefficients<'a>,
    tau: f64,
    m: u32,
) -> Result<SpectralCoefficients<'a>> {
    let i = Complex64::new(0.0, 1.0);
    c.map_complex(|l| ((i * tau * l).exp() - 1.0).powu(m))
}

/// Squared weights `|c_j|²` paired with eigenvalues, the only data `‖Δ^m_τ f‖` needs.
pub(crate) fn spectral_weights(c: &SpectralCoefficients<'_>) -> Vec<(f64, f64)> {
    c.pairs()
        .filter(|(l, z)| *l > 0.0 && z.norm_sqr() > 0.0)
        .map(|(l, z)| (l, z.norm_sqr()))
        .collect()
}

/// `‖Δ^m_τ f‖ = (Σ_j (2|sin(τλ_j/2)|)^{2m} |c_j|²)^{1/2}`.
pub(crate) fn difference_norm(weights: &[(f64, f64)], m: u32, tau: f64) -> f64 {
    weights
        .iter()
        .map(|&(l, w)| {
            let amp = 2.0 * (0.5 * tau * l).sin().abs();
            amp.powi(2 * m as i32) * w
        })
        .sum::<f64>()
        .sqrt()
}

/// `Ω_m(f, s)` with the default sampling schedule.
pub fn modulus(c: &SpectralCoefficients<'_>, s: f64, m: u32) -> Result<f64> {
    modulus_with(c, s, &ModulusParams::new(m))
}

pub fn modulus_with(c: &SpectralCoefficients<'_>, s: f64, params: &ModulusParams) -> Result<f64> {
    params.validate()?;
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::InvalidParams(format!("modulus radius must be finite and >= 0, got {s}")));
    }
    if params.m == 0 {
        return Ok(c.norm());
    }
    let weights = spectral_weights(c);
    Ok(modulus_from_weights(&weights, s, params))
}

pub(crate) fn modulus_from_weights(weights: &[(f64, f64)], s: f64, params: &ModulusParams) -> f64 {
    if params.m == 0 {
        return weights.iter().map(|w| w.1).sum::<f64>().sqrt();
    }
    if s == 0.0 || weights.is_empty() {
        return 0.0;
    }
    // the profile is even in τ, so [0, s] suffices
    sup_on_interval(|t| difference_norm(weights, params.m, t), s, params.grid, params.refine)
}

/// Maximum of `g` on `[0, s]`: uniform grid, then golden-section refinement of
/// the `refine` best local maxima of the grid.
pub(crate) fn sup_on_interval<G: Fn(f64) -> f64>(g: G, s: f64, grid: usize, refine: usize) -> f64 {
    let h = s / grid as f64;
    let values: Vec<f64> = (0..=grid).map(|i| g(i as f64 * h)).collect();
    let mut best = values.iter().copied().fold(0.0, f64::max);

    let mut peaks: Vec<usize> = (0..=grid)
        .filter(|&i| {
            let left = i == 0 || values[i] >= values[i - 1];
            let right = i == grid || values[i] >= values[i + 1];
            left && right
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));

    for &i in peaks.iter().take(refine) {
        let lo = i.saturating_sub(1) as f64 * h;
        let hi = ((i + 1).min(grid) as f64 * h).min(s);
        best = best.max(golden_max(&g, lo, hi));
    }
    best
}

fn golden_max<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    let mut best = g(lo).max(g(hi)).max(f1).max(f2);
    for _ in 0..GOLDEN_ITERATIONS {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g(x2);
            best = best.max(f2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g(x1);
            best = best.max(f1);
        }
    }
    best
}

fn safe_ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModulusInequalityReport {
    pub s: f64,
    pub a_scale: f64,
    pub m: u32,
    pub k: u32,
    /// `Ω_m(f, s) / (s^k Ω_{m−k}(D^k f, s))`.
    pub power_ratio: f64,
    /// `Ω_m(f, a s) / ((1 + a)^m Ω_m(f, s))`.
    pub scale_ratio: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks `Ω_m(f, s) ≤ s^k Ω_{m−k}(D^k f, s)` and `Ω_m(f, a s) ≤ (1 + a)^m Ω_m(f, s)`.
pub fn modulus_inequality_checks(
    c: &SpectralCoefficients<'_>,
    s: f64,
    a_scale: f64,
    m: u32,
    k: u32,
) -> Result<ModulusInequalityReport> {
    if k > m {
        return Err(Error::IndexOutOfRange { k, m });
    }
    if !(a_scale > 0.0) {
        return Err(Error::InvalidParams(format!("scale factor must be positive, got {a_scale}")));
    }
    let lhs = modulus(c, s, m)?;
    let dk = c.power(k as f64)?;
    let rhs = s.powi(k as i32) * modulus(&dk, s, m - k)?;
    let power_ratio = safe_ratio(lhs, rhs);

    let scaled = modulus(c, a_scale * s, m)?;
    let scale_ratio = safe_ratio(scaled, (1.0 + a_scale).powi(m as i32) * lhs);

    let limit = 1.0 + GRID_TOLERANCE;
    Ok(ModulusInequalityReport {
        s,
        a_scale,
        m,
        k,
        power_ratio,
        scale_ratio,
        tolerance: GRID_TOLERANCE,
        pass: power_ratio <= limit && scale_ratio <= limit,
    })
}
