//! Quasi-interpolation `Q_h^{ω,m} f = ∫ h(t) {(−1)^{m−1} Δ^m_{t/ω} f + f} dt`.
//!
//! Expanding the difference gives `Q f = Σ_{j=1}^m b_j ∫ h(t) e^{i(jt/ω)D} f dt`
//! with `b_j = (−1)^{j+1} C(m, j)`, i.e. the multiplier `q(λ) = Σ_j b_j ĥ(jλ/ω)`.

use serde::Serialize;

use crate::approx::kernel::{binomial, jackson_constant, jackson_constant_proof, kernel_symbol, ApproxKernel};
use crate::error::{Error, Result};
use crate::paley_wiener::{best_approx, tail_norm};
use crate::smoothness::modulus::{modulus, GRID_TOLERANCE};
use crate::spectral::SpectralCoefficients;

/// `b_1, …, b_m`.
pub fn q_coefficients(m: u32) -> Vec<f64> {
    (1..=m)
        .map(|j| {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            sign * binomial(m, j)
        })
        .collect()
}

/// `q(λ) = Σ_j b_j ĥ(jλ/ω)`.
pub fn q_symbol(kernel: &ApproxKernel, omega: f64, m: u32, lambda: f64) -> f64 {
    q_coefficients(m)
        .iter()
        .enumerate()
        .map(|(i, b)| b * kernel_symbol(kernel, (i + 1) as f64 * lambda / omega))
        .sum()
}

fn check_kernel(kernel: &ApproxKernel, m: u32) -> Result<()> {
    if m == 0 || kernel.n < m + 3 {
        return Err(Error::KernelOrderMismatch { n: kernel.n, m });
    }
    Ok(())
}

/// `Q_h^{ω,m} f`.
pub fn q_apply<'a>(
    c: &SpectralCoefficients<'a>,
    omega: f64,
    m: u32,
    kernel: &ApproxKernel,
) -> Result<SpectralCoefficients<'a>> {
    check_kernel(kernel, m)?;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParams(format!("omega must be positive, got {omega}")));
    }
    c.map(|l| q_symbol(kernel, omega, m, l))
}

#[derive(Debug, Clone, Serialize)]
pub struct JacksonReport {
    pub omega: f64,
    pub m: u32,
    pub k: u32,
    pub kernel_order: u32,
    /// `E(f, ω)`.
    pub best_approx: f64,
    /// `‖Q f − f‖`.
    pub q_error: f64,
    /// Tail of `Q f` beyond `ω`, relative to `‖f‖`.
    pub q_tail: f64,
    /// `C^h_{m,k} ω^{−k} Ω_{m−k}(D^k f, 1/ω)`.
    pub bound: f64,
    pub constant: f64,
    pub constant_proof: f64,
    /// `E(f, ω) / bound`.
    pub ratio: f64,
    /// `‖Q f − f‖ / bound`.
    pub q_ratio: f64,
    /// `E ≤ ‖Q f − f‖ + 1e-10`.
    pub q_dominates: bool,
    pub pass: bool,
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num <= 1e-14 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Checks `E(f, ω) ≤ ‖Q f − f‖ ≤ C^h_{m,k} ω^{−k} Ω_{m−k}(D^k f, 1/ω)`.
pub fn jackson_check(
    c: &SpectralCoefficients<'_>,
    omega: f64,
    m: u32,
    k: u32,
    kernel: &ApproxKernel,
) -> Result<JacksonReport> {
    if k > m {
        return Err(Error::IndexOutOfRange { k, m });
    }
    let qf = q_apply(c, omega, m, kernel)?;
    let constant = jackson_constant(kernel, m, k)?;
    let constant_proof = jackson_constant_proof(kernel, m, k)?;
    let norm = c.norm();
    let e = best_approx(c, omega)?;
    let q_error = qf.sub(c)?.norm();
    let q_tail = if norm > 0.0 { tail_norm(&qf, omega) / norm } else { 0.0 };
    let dk = c.power(k as f64)?;
    let bound = constant * omega.powi(-(k as i32)) * modulus(&dk, 1.0 / omega, m - k)?;
    let ratio_e = ratio(e, bound);
    let q_ratio = ratio(q_error, bound);
    let q_dominates = e <= q_error + 1e-10 * (1.0 + norm);
    let limit = 1.0 + GRID_TOLERANCE;
    Ok(JacksonReport {
        omega,
        m,
        k,
        kernel_order: kernel.n,
        best_approx: e,
        q_error,
        q_tail,
        bound,
        constant,
        constant_proof,
        ratio: ratio_e,
        q_ratio,
        q_dominates,
        pass: q_dominates && ratio_e <= limit && q_ratio <= limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::kernel::build_kernel;
    use crate::spectral::{eigh, OperatorKind, SymmetricOperator};
    use num_complex::Complex64;

    #[test]
    fn coefficients_sum_to_one() {
        for m in 1..8 {
            let s: f64 = q_coefficients(m).iter().sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
        assert_eq!(q_coefficients(3), vec![3.0, -3.0, 1.0]);
    }

    #[test]
    fn symbol_matches_difference_expansion() {
        // ∫ h(t) [f − (I − e^{itD/ω})^m f] dt has symbol 1 − Σ_{j=0}^m C(m,j) (−1)^j ĥ(jλ/ω)
        let kernel = build_kernel(8, 3).unwrap();
        for lambda in [0.0, 0.2, 0.5, 0.9] {
            let expansion: f64 = (0..=3)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    binomial(3, j) * sign * kernel_symbol(&kernel, j as f64 * lambda)
                })
                .sum();
            assert!((q_symbol(&kernel, 1.0, 3, lambda) - (1.0 - expansion)).abs() < 1e-14);
        }
    }

    #[test]
    fn output_is_bandlimited_and_fixes_kernel() {
        let dec = eigh(
            &SymmetricOperator::diagonal(&[0.0, 0.3, 0.8, 1.1, 2.5, 3.0], OperatorKind::RawD)
                .unwrap(),
        )
        .unwrap();
        let c = dec
            .coefficients((0..6).map(|j| Complex64::new(1.0, -(j as f64))).collect())
            .unwrap();
        let kernel = build_kernel(6, 2).unwrap();
        let q = q_apply(&c, 1.0, 2, &kernel).unwrap();
        assert!(tail_norm(&q, 1.0) <= 1e-10 * c.norm());
        assert!((q.as_slice()[0] - c.as_slice()[0]).norm() < 1e-12);
        assert!(matches!(
            q_apply(&c, 1.0, 4, &kernel),
            Err(Error::KernelOrderMismatch { .. })
        ));
        assert_eq!(q_apply(&dec.zero_coefficients(), 1.0, 2, &kernel).unwrap().norm(), 0.0);
    }

    #[test]
    fn jackson_chain() {
        let dec = eigh(
            &SymmetricOperator::diagonal(&[0.0, 0.4, 1.0, 1.7, 2.6, 3.9], OperatorKind::RawD)
                .unwrap(),
        )
        .unwrap();
        let c = dec
            .coefficients((0..6).map(|j| Complex64::new(0.5 + j as f64, 1.0)).collect())
            .unwrap();
        for (m, k) in [(2, 0), (2, 1), (3, 1)] {
            let kernel = build_kernel(2 * ((m + 5) / 2), m).unwrap();
            for omega in [0.3, 1.0, 2.0, 5.0] {
                let rep = jackson_check(&c, omega, m, k, &kernel).unwrap();
                assert!(rep.pass, "{rep:?}");
            }
        }
    }
}
