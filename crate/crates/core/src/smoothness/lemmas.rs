//! The seminorm `b^α_{∞,n,r}(f) = sup_{s>0} s^{n−α} Ω_r(D^n f, s)` and its
//! two-sided comparison with `T(f, α) = sup_s s^α E(f, s)`.

use serde::Serialize;

use crate::approx::kernel::{build_kernel, jackson_constant};
use crate::decomposition::band_decompose;
use crate::error::{Error, Result};
use crate::smoothness::besov::approximation_sup;
use crate::smoothness::modulus::{modulus_from_weights, spectral_weights, ModulusParams, GRID_TOLERANCE};
use crate::spectral::SpectralCoefficients;

/// Number of log-spaced `s` nodes in the seminorm supremum.
pub const SEMINORM_GRID: usize = 512;

/// The `s` nodes: a log grid on `[0.01/λ_N, 100/λ_1^+]` merged with `1/λ_j`.
pub fn seminorm_grid(c: &SpectralCoefficients<'_>) -> Vec<f64> {
    let dec = c.decomposition();
    let Some(lmin) = dec.smallest_positive_eigenvalue() else {
        return Vec::new();
    };
    let lo = (0.01 / dec.max_eigenvalue()).ln();
    let hi = (100.0 / lmin).ln();
    let step = (hi - lo) / (SEMINORM_GRID - 1) as f64;
    let mut grid: Vec<f64> = (0..SEMINORM_GRID)
        .map(|i| (lo + i as f64 * step).exp())
        .collect();
    grid.extend(dec.eigenvalues().iter().filter(|l| **l > 0.0).map(|l| 1.0 / l));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

fn check_orders(alpha: f64, n: u32, r: u32) -> Result<()> {
    if !(alpha > n as f64) || !alpha.is_finite() {
        return Err(Error::InvalidOrder { alpha, n });
    }
    if r == 0 {
        return Err(Error::InvalidParams("difference order r must be >= 1".into()));
    }
    Ok(())
}

/// `(s, s^{n−α} Ω_r(D^n f, s))` on [`seminorm_grid`].
pub fn seminorm_profile(
    c: &SpectralCoefficients<'_>,
    alpha: f64,
    n: u32,
    r: u32,
) -> Result<Vec<(f64, f64)>> {
    check_orders(alpha, n, r)?;
    let weights = spectral_weights(&c.power(n as f64)?);
    let params = ModulusParams::new(r);
    Ok(seminorm_grid(c)
        .into_iter()
        .map(|s| (s, s.powf(n as f64 - alpha) * modulus_from_weights(&weights, s, &params)))
        .collect())
}

/// `b^α_{∞,n,r}(f)`; requires `α > n`.
pub fn besov_seminorm_sup(c: &SpectralCoefficients<'_>, alpha: f64, n: u32, r: u32) -> Result<f64> {
    Ok(seminorm_profile(c, alpha, n, r)?
        .into_iter()
        .map(|p| p.1)
        .fold(0.0, f64::max))
}

fn check_lemma_range(alpha: f64, n: u32, r: u32) -> Result<()> {
    check_orders(alpha, n, r)?;
    if !((r as f64) > alpha - n as f64) {
        return Err(Error::InvalidParams(format!(
            "need r > alpha - n, got alpha = {alpha}, n = {n}, r = {r}"
        )));
    }
    Ok(())
}

/// Kernel order used for the direct estimate with `m = n + r` and `k = n`.
pub fn lemma_kernel_order(n: u32, r: u32) -> u32 {
    let need = (n + r + 3).max(2 * n + r + 2);
    need + need % 2
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub alpha: f64,
    pub n: u32,
    pub r: u32,
    /// `T(f, α)`.
    pub approximation_sup: f64,
    /// `b^α_{∞,n,r}(f)`.
    pub seminorm: f64,
    /// Measured constant of the inequality.
    pub ratio: f64,
    /// Constant supplied by the kernel estimate, if one is known.
    pub theoretical: Option<f64>,
    pub pass: bool,
}

/// `T(f, α) ≤ A b^α_{∞,n,r}(f)` with `A = C^h_{n+r,n}`; reports `T / b` as the
/// measured constant.
pub fn lemma1_check(c: &SpectralCoefficients<'_>, alpha: f64, n: u32, r: u32) -> Result<LemmaReport> {
    check_lemma_range(alpha, n, r)?;
    let t = approximation_sup(c, alpha);
    let b = besov_seminorm_sup(c, alpha, n, r)?;
    let kernel = build_kernel(lemma_kernel_order(n, r), n + r)?;
    let a = jackson_constant(&kernel, n + r, n)?;
    let ratio = if b > 0.0 { t / b } else { 0.0 };
    let pass = if b > 0.0 {
        t <= a * b * (1.0 + GRID_TOLERANCE)
    } else {
        t <= 1e-12 * (1.0 + c.norm())
    };
    Ok(LemmaReport {
        alpha,
        n,
        r,
        approximation_sup: t,
        seminorm: b,
        ratio,
        theoretical: Some(a),
        pass,
    })
}

/// `b^α_{∞,n,r}(f) ≤ C (‖f‖ + T(f, α))`, reporting `b / (‖f‖ + T)`.
///
/// The pass criterion is constructive: with the dyadic bands `f_j` of `f`,
/// `Ω_r(D^n f, s) ≤ Σ_j min((a^j s)^r, 2^r) ‖D^n f_j‖` at every grid node.
pub fn lemma2_check(
    c: &SpectralCoefficients<'_>,
    alpha: f64,
    n: u32,
    r: u32,
    a: f64,
) -> Result<LemmaReport> {
    check_lemma_range(alpha, n, r)?;
    let t = approximation_sup(c, alpha);
    let profile = seminorm_profile(c, alpha, n, r)?;
    let b = profile.iter().map(|p| p.1).fold(0.0, f64::max);
    let bands = band_decompose(c, a)?;
    let band_norms: Vec<f64> = bands
        .bands()
        .iter()
        .map(|f| f.power_norm(n as f64))
        .collect();
    let two_r = 2f64.powi(r as i32);
    let mut pass = true;
    for &(s, value) in &profile {
        let bound: f64 = band_norms
            .iter()
            .enumerate()
            .map(|(j, nj)| (a.powi(j as i32) * s).powi(r as i32).min(two_r) * nj)
            .sum();
        let omega = value * s.powf(alpha - n as f64);
        if omega > bound * (1.0 + 1e-10) + 1e-14 {
            pass = false;
        }
    }
    let denom = c.norm() + t;
    Ok(LemmaReport {
        alpha,
        n,
        r,
        approximation_sup: t,
        seminorm: b,
        ratio: if denom > 0.0 { b / denom } else { 0.0 },
        theoretical: None,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{eigh, OperatorKind, SpectralDecomposition, SymmetricOperator};
    use num_complex::Complex64;

    fn decomposition() -> SpectralDecomposition {
        eigh(
            &SymmetricOperator::diagonal(&[0.0, 0.3, 0.9, 1.4, 2.2, 3.7], OperatorKind::RawD)
                .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn eigenvector_reduction() {
        let dec = decomposition();
        let j = 4;
        let l = dec.eigenvalues()[j];
        let c = dec.basis_coefficients(j);
        let (alpha, n, r) = (1.5, 1, 2);
        let got = besov_seminorm_sup(&c, alpha, n, r).unwrap();
        let want = seminorm_grid(&c)
            .iter()
            .map(|&s| {
                let sweep = (0..=4096)
                    .map(|i| {
                        let tau = s * i as f64 / 4096.0;
                        (2.0 * (tau * l / 2.0).sin().abs()).powi(r as i32)
                    })
                    .fold(0.0, f64::max);
                s.powf(n as f64 - alpha) * sweep * l.powi(n as i32)
            })
            .fold(0.0, f64::max);
        assert!((got - want).abs() <= 1e-6 * want, "{got} vs {want}");
    }

    #[test]
    fn order_errors() {
        let dec = decomposition();
        let c = dec.basis_coefficients(2);
        assert!(matches!(
            besov_seminorm_sup(&c, 1.0, 1, 2),
            Err(Error::InvalidOrder { .. })
        ));
        assert!(lemma1_check(&c, 3.5, 1, 2).is_err());
    }

    #[test]
    fn lemma_checks_pass() {
        let dec = decomposition();
        let c = dec
            .coefficients((0..6).map(|j| Complex64::new(1.0, 0.3 * j as f64)).collect())
            .unwrap();
        let l1 = lemma1_check(&c, 0.8, 0, 1).unwrap();
        assert!(l1.pass, "{l1:?}");
        assert!(l1.ratio.is_finite());
        let l1 = lemma1_check(&c, 1.6, 1, 1).unwrap();
        assert!(l1.pass, "{l1:?}");
        let l2 = lemma2_check(&c, 1.6, 1, 1, 2.0).unwrap();
        assert!(l2.pass, "{l2:?}");
        let zero = lemma1_check(&dec.zero_coefficients(), 0.8, 0, 1).unwrap();
        assert!(zero.pass);
        assert_eq!(zero.ratio, 0.0);
    }

    #[test]
    fn homogeneous() {
        let dec = decomposition();
        let c = dec
            .coefficients((0..6).map(|j| Complex64::new(0.2 * j as f64, 1.0)).collect())
            .unwrap();
        let b = besov_seminorm_sup(&c, 0.6, 0, 1).unwrap();
        let b3 = besov_seminorm_sup(&c.scale(Complex64::new(3.0, 0.0)), 0.6, 0, 1).unwrap();
        assert!((b3 - 3.0 * b).abs() < 1e-12 * b3);
    }
}
