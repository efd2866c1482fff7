//! Dyadic band decomposition `f = Σ_k f_k` with `f_k` supported on
//! `(a^{k−1}, a^k]` (and `[0, 1]` for `k = 0`), the associated frame norm and
//! the synthesis estimate for arbitrary band-limited pieces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::paley_wiener::tail_norm;
use crate::smoothness::besov::{besov_norm, lq_norm, BesovParams, Flavor};
use crate::spectral::SpectralCoefficients;

fn check_base(a: f64) -> Result<()> {
    if !(a > 1.0) || !a.is_finite() {
        return Err(Error::InvalidBase(a));
    }
    Ok(())
}

/// Smallest `K ≥ 0` with `a^K ≥ λ`.
pub fn top_band(a: f64, lambda: f64) -> usize {
    let mut k = 0;
    while a.powi(k as i32) < lambda {
        k += 1;
    }
    k
}

/// Index of the band containing `λ`.
pub fn band_index(a: f64, lambda: f64) -> usize {
    top_band(a, lambda)
}

#[derive(Debug, Clone)]
pub struct BandDecomposition<'a> {
    base: f64,
    bands: Vec<SpectralCoefficients<'a>>,
}

/// Splits `f` into the dyadic bands `f_k = P_{a^k} f − P_{a^{k−1}} f`.
pub fn band_decompose<'a>(c: &SpectralCoefficients<'a>, a: f64) -> Result<BandDecomposition<'a>> {
    check_base(a)?;
    let top = top_band(a, c.decomposition().max_eigenvalue());
    let bands = (0..=top)
        .map(|k| c.map(|l| if band_index(a, l) == k { 1.0 } else { 0.0 }))
        .collect::<Result<Vec<_>>>()?;
    Ok(BandDecomposition { base: a, bands })
}

impl<'a> BandDecomposition<'a> {
    pub fn base(&self) -> f64 {
        self.base
    }

    /// `K`; every band past it is zero.
    pub fn top_index(&self) -> usize {
        self.bands.len() - 1
    }

    pub fn bands(&self) -> &[SpectralCoefficients<'a>] {
        &self.bands
    }

    pub fn band_norms(&self) -> Vec<f64> {
        self.bands.iter().map(|b| b.norm()).collect()
    }

    /// `Σ_k f_k`.
    pub fn reconstruct(&self) -> SpectralCoefficients<'a> {
        let mut sum = self.bands[0].clone();
        for b in &self.bands[1..] {
            sum = sum.add(b).expect("bands share one decomposition");
        }
        sum
    }

    /// `(Σ_{k>N} ‖f_k‖²)^{1/2}`.
    pub fn tail_energy(&self, n: usize) -> f64 {
        self.bands
            .iter()
            .skip(n + 1)
            .map(|b| b.norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// `max_{j≠k} |⟨f_j, f_k⟩|` computed in the original space.
    pub fn orthogonality_defect(&self) -> f64 {
        let vs: Vec<_> = self.bands.iter().map(|b| b.synthesize()).collect();
        let mut worst: f64 = 0.0;
        for j in 0..vs.len() {
            for k in j + 1..vs.len() {
                worst = worst.max(vs[j].inner(&vs[k]).norm());
            }
        }
        worst
    }
}

/// `(Σ_k (a^{kα} ‖f_k‖)^q)^{1/q}`, or the supremum for `q = ∞`.
pub fn frame_norm(dec: &BandDecomposition<'_>, alpha: f64, q: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() || !(q >= 1.0) {
        return Err(Error::InvalidParams(format!(
            "need alpha > 0 and q in [1, inf], got alpha = {alpha}, q = {q}"
        )));
    }
    let terms: Vec<f64> = dec
        .band_norms()
        .iter()
        .enumerate()
        .map(|(k, n)| dec.base.powf(k as f64 * alpha) * n)
        .collect();
    Ok(lq_norm(&terms, q))
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub alpha: f64,
    pub q: f64,
    pub a: f64,
    /// `‖f‖ + frame_norm`.
    pub frame: f64,
    /// Discrete best-approximation Besov norm.
    pub besov: f64,
    /// `frame / besov`.
    pub ratio: f64,
}

/// Ratio of the frame-based norm to the discrete best-approximation Besov norm.
pub fn equivalence_report(
    c: &SpectralCoefficients<'_>,
    alpha: f64,
    q: f64,
    a: f64,
) -> Result<EquivalenceReport> {
    check_base(a)?;
    if c.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let dec = band_decompose(c, a)?;
    let frame = c.norm() + frame_norm(&dec, alpha, q)?;
    let params = BesovParams::new(alpha, q, BesovParams::minimal_order(alpha, q), Flavor::DiscreteE)?
        .with_base(a)?;
    let besov = besov_norm(c, &params)?;
    Ok(EquivalenceReport {
        alpha,
        q,
        a,
        frame,
        besov,
        ratio: frame / besov,
    })
}

/// Running `[min, max]` of a family of ratios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Default for Bracket {
    fn default() -> Self {
        Self {
            lo: f64::INFINITY,
            hi: f64::NEG_INFINITY,
        }
    }
}

impl Bracket {
    pub fn include(&mut self, x: f64) {
        self.lo = self.lo.min(x);
        self.hi = self.hi.max(x);
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite() && self.lo > 0.0
    }

    /// `hi / lo`.
    pub fn width(&self) -> f64 {
        self.hi / self.lo
    }
}

impl FromIterator<f64> for Bracket {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut b = Bracket::default();
        for x in iter {
            b.include(x);
        }
        b
    }
}

/// `1 / (1 − a^{−α})`.
pub fn synthesis_constant(a: f64, alpha: f64) -> f64 {
    1.0 / (1.0 - a.powf(-alpha))
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthesisReport {
    pub alpha: f64,
    pub a: f64,
    /// `sup_N a^{Nα} E(f, a^N)` for `f = Σ_k f_k`.
    pub approximation_sup: f64,
    /// `sup_k a^{kα} ‖f_k‖`.
    pub band_sup: f64,
    pub constant: f64,
    /// `approximation_sup / (constant · band_sup)`.
    pub ratio: f64,
    pub pass: bool,
}

/// Sums band-limited pieces `f_k ∈ PW_{a^k}` (not necessarily orthogonal) and
/// checks `sup_N a^{Nα} E(f, a^N) ≤ C sup_k a^{kα} ‖f_k‖` with `C = 1/(1 − a^{−α})`.
pub fn synthesis_check(
    bands: &[SpectralCoefficients<'_>],
    a: f64,
    alpha: f64,
) -> Result<SynthesisReport> {
    check_base(a)?;
    if !(alpha > 0.0) {
        return Err(Error::InvalidParams(format!("alpha must be positive, got {alpha}")));
    }
    let first = bands
        .first()
        .ok_or_else(|| Error::InvalidParams("at least one band is required".into()))?;
    let scale = bands.iter().map(|b| b.norm()).fold(0.0, f64::max);
    let mut sum = first.decomposition().zero_coefficients();
    let mut band_sup: f64 = 0.0;
    for (k, b) in bands.iter().enumerate() {
        let bound = a.powi(k as i32);
        let tail = tail_norm(b, bound);
        if tail > 1e-12 * scale {
            return Err(Error::MembershipViolation { band: k, bound, tail });
        }
        sum = sum.add(b)?;
        band_sup = band_sup.max(a.powf(k as f64 * alpha) * b.norm());
    }
    let top = top_band(a, sum.decomposition().max_eigenvalue());
    let approximation_sup = (0..=top)
        .map(|n| a.powf(n as f64 * alpha) * tail_norm(&sum, a.powi(n as i32)))
        .fold(0.0, f64::max);
    let constant = synthesis_constant(a, alpha);
    let rhs = constant * band_sup;
    let ratio = if rhs > 0.0 { approximation_sup / rhs } else { 0.0 };
    Ok(SynthesisReport {
        alpha,
        a,
        approximation_sup,
        band_sup,
        constant,
        ratio,
        pass: approximation_sup <= rhs * (1.0 + 1e-12),
    })
}
