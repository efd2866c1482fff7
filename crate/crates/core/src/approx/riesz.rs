//! The Riesz interpolation operator
//! `R^ω f = (ω/π²) Σ_k (−1)^{k−1} (k − 1/2)^{−2} e^{i(π/ω)(k−1/2)D} f`,
//! which reproduces `iD` on `PW_ω`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::paley_wiener::tail_norm;
use crate::spectral::SpectralCoefficients;

pub const DEFAULT_TRUNCATION: u64 = 10_000;

/// Band `ω` and symmetric truncation `|k| ≤ K` of the series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RieszConfig {
    pub omega: f64,
    pub k_trunc: u64,
}

impl RieszConfig {
    pub fn new(omega: f64) -> Result<Self> {
        Self::with_truncation(omega, DEFAULT_TRUNCATION)
    }

    pub fn with_truncation(omega: f64, k_trunc: u64) -> Result<Self> {
        let cfg = Self { omega, k_trunc };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::InvalidConfig(format!("omega must be positive, got {}", self.omega)));
        }
        if self.k_trunc == 0 {
            return Err(Error::InvalidConfig("truncation K must be at least 1".into()));
        }
        Ok(())
    }

    /// `(ω/π²) Σ_{k ∉ [−K, K]} (k − 1/2)^{−2}`.
    pub fn tail_bound(&self) -> f64 {
        let k = self.k_trunc as f64;
        self.omega / (PI * PI) * (trigamma(k + 0.5) + trigamma(k + 1.5))
    }
}

/// `ψ'(x)` for `x > 0`: upward recurrence, then the asymptotic series.
pub fn trigamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 20.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + inv
        + inv2 / 2.0
        + inv * inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0)))
}

/// Truncated symbol `ρ_K(λ)`, summed from the smallest terms up.
pub fn riesz_symbol(cfg: &RieszConfig, lambda: f64) -> Complex64 {
    let theta = PI * lambda / cfg.omega;
    let term = |k: i64| {
        let h = k as f64 - 0.5;
        let sign = if (k - 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        Complex64::from_polar(sign / (h * h), theta * h)
    };
    let big_k = cfg.k_trunc as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for m in (0..=big_k).rev() {
        sum += term(-m);
        if m >= 1 {
            sum += term(m);
        }
    }
    sum * (cfg.omega / (PI * PI))
}

/// `|ρ_K(λ) − iλ|`.
pub fn symbol_residual(cfg: &RieszConfig, lambda: f64) -> f64 {
    (riesz_symbol(cfg, lambda) - Complex64::new(0.0, lambda)).norm()
}

/// `R^ω_K f` as a diagonal multiplier.
pub fn riesz_apply<'a>(
    c: &SpectralCoefficients<'a>,
    cfg: &RieszConfig,
) -> Result<SpectralCoefficients<'a>> {
    cfg.validate()?;
    c.map_complex(|l| riesz_symbol(cfg, l))
}

#[derive(Debug, Clone, Serialize)]
pub struct RieszIdentityReport {
    pub omega: f64,
    pub n: u32,
    pub k_trunc: u64,
    /// `‖(iD)^n f − (R^ω)^n f‖ / ‖f‖`.
    pub residual: f64,
    pub tail_bound: f64,
}

/// Compares `(iD)^n f` with `n` applications of the truncated operator.
pub fn riesz_identity_check(
    c: &SpectralCoefficients<'_>,
    omega: f64,
    n: u32,
    k_trunc: u64,
) -> Result<RieszIdentityReport> {
    let cfg = RieszConfig::with_truncation(omega, k_trunc)?;
    let norm = c.norm();
    let tail = tail_norm(c, omega);
    if tail > 1e-12 * norm {
        return Err(Error::NotBandlimited { omega, tail });
    }
    let i = Complex64::new(0.0, 1.0);
    let exact = c.map_complex(|l| (i * l).powu(n))?;
    let mut approx = c.clone();
    for _ in 0..n {
        approx = riesz_apply(&approx, &cfg)?;
    }
    let diff = exact.sub(&approx)?.norm();
    Ok(RieszIdentityReport {
        omega,
        n,
        k_trunc,
        residual: if norm > 0.0 { diff / norm } else { 0.0 },
        tail_bound: cfg.tail_bound(),
    })
}
