//! Paley-Wiener subspaces `PW_ω(D)`: vectors whose spectral coefficients vanish
//! above `ω`. Includes the best approximation `E(f, ω)`, the spectral tail
//! `R(f, ω)`, bandwidth estimation and the Bernstein inequality.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::SpectralCoefficients;

/// Default number of powers used when estimating `lim ‖D^k f‖^{1/k}`.
pub const DEFAULT_POWER_COUNT: usize = 40;

/// Default relative threshold below which a coefficient counts as zero.
pub const DEFAULT_TOL_SUPPORT: f64 = 1e-12;

/// Closed band `[0, ω]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandLimit(f64);

impl BandLimit {
    pub fn new(omega: f64) -> Result<Self> {
        if omega.is_nan() || omega < 0.0 {
            return Err(Error::NegativeOmega(omega));
        }
        Ok(Self(omega))
    }

    pub fn omega(self) -> f64 {
        self.0
    }

    pub fn contains(self, lambda: f64) -> bool {
        lambda <= self.0
    }
}

/// Orthogonal projection onto `PW_ω`: coefficients with `λ_j > ω` are zeroed.
pub fn pw_project<'a>(c: &SpectralCoefficients<'a>, omega: f64) -> Result<SpectralCoefficients<'a>> {
    let band = BandLimit::new(omega)?;
    c.map(|l| if band.contains(l) { 1.0 } else { 0.0 })
}

/// `E(f, ω) = ‖f − P_ω f‖`, evaluated in the original space.
pub fn best_approx(c: &SpectralCoefficients<'_>, omega: f64) -> Result<f64> {
    let projected = pw_project(c, omega)?.synthesize();
    let f = c.synthesize();
    Ok(f.sub(&projected)?.norm())
}

/// `R(f, ω) = (Σ_{λ_j > ω} |c_j|²)^{1/2}`.
pub fn spectral_tail(c: &SpectralCoefficients<'_>, omega: f64) -> Result<f64> {
    let band = BandLimit::new(omega)?;
    Ok(tail_norm(c, band.omega()))
}

pub(crate) fn tail_norm(c: &SpectralCoefficients<'_>, omega: f64) -> f64 {
    let tail: Vec<Complex64> = c
        .pairs()
        .filter(|(l, _)| *l > omega)
        .map(|(_, z)| z)
        .collect();
    crate::spectral::l2_norm(&tail)
}

/// `ln ‖D^k f‖` via log-sum-exp; `-∞` when `D^k f = 0`.
pub fn log_power_norm(c: &SpectralCoefficients<'_>, k: f64) -> f64 {
    let terms: Vec<f64> = c
        .pairs()
        .filter(|(l, z)| (*l > 0.0 || k == 0.0) && z.norm() > 0.0)
        .map(|(l, z)| {
            let ll = if k == 0.0 { 0.0 } else { l.ln() };
            2.0 * k * ll + 2.0 * z.norm().ln()
        })
        .collect();
    0.5 * log_sum_exp(&terms)
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

#[derive(Debug, Clone, Serialize)]
pub struct BandwidthReport {
    pub omega_f: f64,
    pub tol_support: f64,
    /// `‖D^k f‖^{1/k}` for `k = 1..=K`.
    pub k_sequence: Vec<f64>,
    /// `ω_f − ‖D^K f‖^{1/K}`.
    pub residual: f64,
    /// Probe band `ω` used for `sup_ratio`, if one was requested.
    pub probe: Option<f64>,
    /// `sup_{1≤k≤K} ω^{-k} ‖D^k f‖` for the probe.
    pub sup_ratio: Option<f64>,
    /// Whether the full supremum over all `k` is finite, i.e. `ω ≥ ω_f`.
    pub sup_bounded: Option<bool>,
}

/// Bandwidth `ω_f` and the power sequence `‖D^k f‖^{1/k}`, `k = 1..=40`.
///
/// In finite dimensions the limit and the lower limit of this sequence coincide
/// with `ω_f`, so a single sequence serves both characterizations.
pub fn bandwidth(c: &SpectralCoefficients<'_>, tol_support: f64) -> Result<BandwidthReport> {
    bandwidth_with(c, tol_support, DEFAULT_POWER_COUNT, None)
}

pub fn bandwidth_with(
    c: &SpectralCoefficients<'_>,
    tol_support: f64,
    k_max: usize,
    probe: Option<f64>,
) -> Result<BandwidthReport> {
    let norm = c.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    if let Some(p) = probe {
        BandLimit::new(p)?;
    }
    let omega_f = support_bound(c, tol_support);
    let k_sequence: Vec<f64> = (1..=k_max)
        .map(|k| (log_power_norm(c, k as f64) / k as f64).exp())
        .collect();
    let residual = omega_f - k_sequence.last().copied().unwrap_or(0.0);
    let sup_ratio = probe.map(|w| sup_power_ratio(c, w, k_max));
    let sup_bounded = probe.map(|w| w >= omega_f);
    Ok(BandwidthReport {
        omega_f,
        tol_support,
        k_sequence,
        residual,
        probe,
        sup_ratio,
        sup_bounded,
    })
}

/// Largest eigenvalue carrying a coefficient above `tol_support · ‖f‖`.
pub fn support_bound(c: &SpectralCoefficients<'_>, tol_support: f64) -> f64 {
    let cutoff = tol_support * c.norm();
    c.pairs()
        .filter(|(_, z)| z.norm() > cutoff)
        .map(|(l, _)| l)
        .fold(0.0, f64::max)
}

/// `sup_{1≤k≤K} ω^{-k} ‖D^k f‖`, evaluated in log space.
pub fn sup_power_ratio(c: &SpectralCoefficients<'_>, omega: f64, k_max: usize) -> f64 {
    let log_sup = (1..=k_max)
        .map(|k| log_power_norm(c, k as f64) - k as f64 * omega.ln())
        .fold(f64::NEG_INFINITY, f64::max);
    log_sup.exp()
}

#[derive(Debug, Clone, Serialize)]
pub struct BernsteinReport {
    pub omega: f64,
    /// `(s, ‖D^s f‖ / (ω^s ‖f‖))` pairs.
    pub ratios: Vec<(f64, f64)>,
    pub max_ratio: f64,
}

/// Ratios `‖D^s f‖ / (ω^s ‖f‖)` for a band-limited `f`.
pub fn bernstein_check(
    c: &SpectralCoefficients<'_>,
    omega: f64,
    s_list: &[f64],
) -> Result<BernsteinReport> {
    let tail = spectral_tail(c, omega)?;
    let norm = c.norm();
    if tail > 1e-12 * norm {
        return Err(Error::NotBandlimited { omega, tail });
    }
    let mut ratios = Vec::with_capacity(s_list.len());
    for &s in s_list {
        if !(s >= 0.0) {
            return Err(Error::InvalidParams(format!("Bernstein exponent must be >= 0, got {s}")));
        }
        let ratio = if norm == 0.0 {
            0.0
        } else {
            // log space keeps large s from overflowing
            (log_power_norm(c, s) - s * omega.ln() - norm.ln()).exp()
        };
        ratios.push((s, ratio));
    }
    let max_ratio = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(BernsteinReport {
        omega,
        ratios,
        max_ratio,
    })
}

/// Smallest threshold `ω ∈ {0} ∪ spec(D)` with `E(f, ω) ≤ ε`.
pub fn dense_union_check(c: &SpectralCoefficients<'_>, eps: f64) -> Result<f64> {
    if !(eps >= 0.0) {
        return Err(Error::InvalidParams(format!("tolerance must be >= 0, got {eps}")));
    }
    let candidates = std::iter::once(0.0).chain(c.eigenvalues().iter().copied());
    for omega in candidates {
        if tail_norm(c, omega) <= eps {
            return Ok(omega);
        }
    }
    Ok(c.decomposition().max_eigenvalue())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{eigh, OperatorKind, SpectralDecomposition, SymmetricOperator};

    fn diag(values: &[f64]) -> SpectralDecomposition {
        eigh(&SymmetricOperator::diagonal(values, OperatorKind::RawD).unwrap()).unwrap()
    }

    fn ones(dec: &SpectralDecomposition) -> SpectralCoefficients<'_> {
        dec.coefficients(vec![Complex64::new(1.0, 0.0); dec.dim()]).unwrap()
    }

    #[test]
    fn projection_cases() {
        let dec = diag(&[1.0, 2.0, 3.0]);
        let c = ones(&dec);
        let p = pw_project(&c, 2.0).unwrap();
        assert_eq!(
            p.as_slice(),
            &[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
        );
        assert_eq!(pw_project(&c, 3.0).unwrap().as_slice(), c.as_slice());
        assert_eq!(pw_project(&c, 0.5).unwrap().norm(), 0.0);
        assert!(matches!(pw_project(&c, -1.0), Err(Error::NegativeOmega(_))));
    }

    #[test]
    fn best_approx_cases() {
        let dec = diag(&[1.0, 2.0, 3.0]);
        let c = ones(&dec);
        assert!((best_approx(&c, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((best_approx(&c, 0.5).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(best_approx(&c, 3.0).unwrap(), 0.0);
        assert!((spectral_tail(&c, 2.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_eigenvector_bandwidth() {
        let dec = diag(&[0.5, 1.5, 2.5]);
        let c = dec.basis_coefficients(1);
        let rep = bandwidth(&c, DEFAULT_TOL_SUPPORT).unwrap();
        assert_eq!(rep.omega_f, 1.5);
        for v in &rep.k_sequence {
            assert!((v - 1.5).abs() < 1e-13);
        }
    }

    #[test]
    fn two_point_bandwidth_sequence() {
        let dec = diag(&[1.0, 2.0]);
        let c = dec
            .coefficients(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)])
            .unwrap();
        let rep = bandwidth(&c, DEFAULT_TOL_SUPPORT).unwrap();
        assert_eq!(rep.omega_f, 2.0);
        for (idx, v) in rep.k_sequence.iter().enumerate() {
            let k = (idx + 1) as f64;
            let closed = (1.0 + 4f64.powf(k)).powf(1.0 / (2.0 * k));
            assert!((v - closed).abs() < 1e-12 * closed);
        }
        assert!(rep.residual.abs() < 0.05);
    }

    #[test]
    fn sup_ratio_boundedness() {
        let dec = diag(&[1.0, 2.0]);
        let c = dec
            .coefficients(vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)])
            .unwrap();
        let above = bandwidth_with(&c, DEFAULT_TOL_SUPPORT, 40, Some(2.0)).unwrap();
        assert_eq!(above.sup_bounded, Some(true));
        assert!(above.sup_ratio.unwrap() <= 1.0);
        let below = bandwidth_with(&c, DEFAULT_TOL_SUPPORT, 40, Some(1.0)).unwrap();
        assert_eq!(below.sup_bounded, Some(false));
        assert!(below.sup_ratio.unwrap() > 1e11);
    }

    #[test]
    fn zero_vector_has_no_bandwidth() {
        let dec = diag(&[1.0, 2.0]);
        assert!(matches!(
            bandwidth(&dec.zero_coefficients(), 1e-12),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn bernstein_equality_and_rejection() {
        let dec = diag(&[0.5, 1.0, 4.0]);
        let c = dec.basis_coefficients(1);
        let rep = bernstein_check(&c, 1.0, &[0.0, 0.5, 1.0, 7.0]).unwrap();
        for (_, r) in &rep.ratios {
            assert!((r - 1.0).abs() < 1e-15);
        }
        let all = ones(&dec);
        assert!(matches!(
            bernstein_check(&all, 1.0, &[1.0]),
            Err(Error::NotBandlimited { .. })
        ));
    }

    #[test]
    fn dense_union_thresholds() {
        let dec = diag(&[0.5, 1.0, 4.0]);
        let c = ones(&dec);
        assert_eq!(dense_union_check(&c, c.norm()).unwrap(), 0.0);
        assert_eq!(dense_union_check(&c, 1e-300).unwrap(), 4.0);
        assert_eq!(dense_union_check(&c, 1.0).unwrap(), 1.0);
    }
}
