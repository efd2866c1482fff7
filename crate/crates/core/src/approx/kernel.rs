//! The kernel `h(t) = a (sin(t/n) / t)^n` of exponential type one and its
//! Fourier symbol `ĥ(ξ) = ∫ h(t) e^{iξt} dt`.
//!
//! All integrals are taken in the variable `u = t/n`, where
//! `h(t) dt = sinc^n(u) du / I_n` with `I_n = ∫ sinc^n`. The integrand is
//! integrated with a composite Gauss-Legendre rule on `[0, U]`, and the part
//! beyond `U` is added from the expansion `sin^n u = μ_n + Σ_j β_j cos(2ju)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::approx::quadrature::GaussLegendre;
use crate::error::{Error, Result};

const RULE_POINTS: usize = 16;

/// Series switchover radius for `sin u / u`.
const SERIES_RADIUS: f64 = 1e-3;

/// Truncation point and panel width of the composite rule in `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSettings {
    /// Upper limit `U`; a multiple of `π` so the tail expansion is exact at the cut.
    pub cutoff: f64,
    /// Largest panel width.
    pub panel: f64,
    pub points: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            cutoff: 2000.0 * PI,
            panel: PI / 4.0,
            points: RULE_POINTS,
        }
    }
}

impl QuadratureSettings {
    /// Doubled cutoff and node count, used as an independent refinement.
    pub fn refined() -> Self {
        let base = Self::default();
        Self {
            cutoff: 2.0 * base.cutoff,
            panel: base.panel / 2.0,
            points: 2 * base.points,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproxKernel {
    /// Even kernel order.
    pub n: u32,
    /// Difference order the kernel was built for; `n ≥ m + 3`.
    pub m: u32,
    /// `a` in `h(t) = a (sin(t/n)/t)^n`, so that `∫ h = 1`.
    pub norm_const: f64,
    /// `I_n = ∫ (sin u / u)^n du` by quadrature.
    pub sinc_integral: f64,
}

/// Kernel of order `n` for differences of order `m`.
pub fn build_kernel(n: u32, m: u32) -> Result<ApproxKernel> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddOrder(n));
    }
    if n < m + 3 || n < 4 {
        return Err(Error::OrderTooSmall { n, m });
    }
    let sinc_integral = 2.0 * half_line_integral(n, &[(0, 1.0)], 0.0, &QuadratureSettings::default())?;
    let norm_const = (n as f64).powi(n as i32 - 1) / sinc_integral;
    Ok(ApproxKernel {
        n,
        m,
        norm_const,
        sinc_integral,
    })
}

/// `sin u / u` with a Taylor series near the removable singularity.
fn sinc(u: f64) -> f64 {
    if u.abs() < SERIES_RADIUS {
        let u2 = u * u;
        1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0 * (1.0 - u2 / 72.0)))
    } else {
        u.sin() / u
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `∫_0^∞ sinc^n(u) Σ_d coef_d u^d cos(ν u) du` for a polynomial given as
/// `(degree, coefficient)` pairs. The tail past the cutoff is corrected only
/// for `ν = 0`; for `ν > 0` the omitted tail is below `U^{1−n}`.
fn half_line_integral(
    n: u32,
    poly: &[(u32, f64)],
    nu: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let max_degree = poly.iter().map(|p| p.0).max().unwrap_or(0);
    if max_degree + 1 >= n {
        return Err(Error::DivergentMoment { n, degree: max_degree });
    }
    let rule = GaussLegendre::new(settings.points);
    let width = settings.panel.min(8.0 / (n as f64 * (1.0 + nu.abs())));
    let panels = (settings.cutoff / width).ceil() as usize;
    let h = settings.cutoff / panels as f64;
    let g = |u: f64| {
        let p: f64 = poly.iter().map(|&(d, c)| c * u.powi(d as i32)).sum();
        sinc(u).powi(n as i32) * p * (nu * u).cos()
    };
    let mut body = 0.0;
    for i in 0..panels {
        body += rule.integrate(g, i as f64 * h, (i + 1) as f64 * h);
    }
    if nu != 0.0 {
        return Ok(body);
    }
    let tail: f64 = poly
        .iter()
        .map(|&(d, c)| c * power_sine_tail(n, d as i32 - n as i32, settings.cutoff))
        .sum();
    Ok(body + tail)
}

/// Asymptotic value of `∫_U^∞ u^q sin^n u du` for even `n`, `q < −1` and `U ∈ πZ`.
fn power_sine_tail(n: u32, q: i32, cutoff: f64) -> f64 {
    let half = n / 2;
    let qf = q as f64;
    let mean = binomial(n, half) / 2f64.powi(n as i32);
    let mut total = mean * cutoff.powf(qf + 1.0) / (-qf - 1.0);
    for j in 1..=half {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let beta = 2f64.powi(1 - n as i32) * sign * binomial(n, half - j);
        let jf = j as f64;
        total += beta * (-qf) * cutoff.powf(qf - 1.0) / (4.0 * jf * jf);
    }
    total
}

impl ApproxKernel {
    /// `h(t)`.
    pub fn value(&self, t: f64) -> f64 {
        let n = self.n as f64;
        self.norm_const * (sinc(t / n) / n).powi(self.n as i32)
    }

    /// `∫ h(t) |t|^k (1 + |t|)^p dt`.
    pub fn moment(&self, k: u32, p: u32) -> Result<f64> {
        self.moment_with(k, p, &QuadratureSettings::default())
    }

    pub fn moment_with(&self, k: u32, p: u32, settings: &QuadratureSettings) -> Result<f64> {
        let nf = self.n as f64;
        let poly: Vec<(u32, f64)> = (0..=p)
            .map(|i| (k + i, binomial(p, i) * nf.powi((k + i) as i32)))
            .collect();
        Ok(2.0 * half_line_integral(self.n, &poly, 0.0, settings)? / self.sinc_integral)
    }

    /// `∫ h = 1` recomputed with the refined rule.
    pub fn mass(&self) -> Result<f64> {
        self.moment_with(0, 0, &QuadratureSettings::refined())
    }
}

/// Irwin-Hall profile `Σ_k (−1)^k C(n,k) (x − k)_+^{n−1}` on `[0, n]`, symmetric about `n/2`.
fn irwin_hall_profile(n: u32, x: f64) -> f64 {
    let nf = n as f64;
    if x <= 0.0 || x >= nf {
        return 0.0;
    }
    let x = x.min(nf - x);
    let mut sum = 0.0;
    let mut k = 0;
    while (k as f64) < x {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(n, k) * (x - k as f64).powi(n as i32 - 1);
        k += 1;
    }
    sum
}

/// `ĥ(ξ)` in closed form: the symbol is the `n`-fold convolution of the indicator
/// of `[−1/n, 1/n]`, a B-spline supported on `[−1, 1]`, normalized by `ĥ(0) = 1`.
pub fn kernel_symbol(kernel: &ApproxKernel, xi: f64) -> f64 {
    let xi = xi.abs();
    if xi >= 1.0 {
        return 0.0;
    }
    let n = kernel.n;
    let nf = n as f64;
    irwin_hall_profile(n, nf * (xi + 1.0) / 2.0) / irwin_hall_profile(n, nf / 2.0)
}

/// `ĥ(ξ) = ∫ h(t) cos(ξt) dt` by quadrature.
pub fn kernel_symbol_quadrature(kernel: &ApproxKernel, xi: f64) -> f64 {
    let nu = kernel.n as f64 * xi.abs();
    let settings = QuadratureSettings::default();
    let value = half_line_integral(kernel.n, &[(0, 1.0)], nu, &settings)
        .expect("degree-zero integrand converges for n >= 4");
    2.0 * value / kernel.sinc_integral
}

fn check_moment_indices(kernel: &ApproxKernel, m: u32, k: u32) -> Result<()> {
    if k > m {
        return Err(Error::IndexOutOfRange { k, m });
    }
    if kernel.n <= k + m + 1 {
        return Err(Error::DivergentMoment { n: kernel.n, degree: k + m });
    }
    Ok(())
}

/// `C^h_{m,k} = ∫ h(t) |t|^k (1 + |t|)^m dt`.
pub fn jackson_constant(kernel: &ApproxKernel, m: u32, k: u32) -> Result<f64> {
    check_moment_indices(kernel, m, k)?;
    kernel.moment(k, m)
}

/// `∫ h(t) |t|^k (1 + |t|)^{m−k} dt`, the sharper constant in the direct estimate.
pub fn jackson_constant_proof(kernel: &ApproxKernel, m: u32, k: u32) -> Result<f64> {
    check_moment_indices(kernel, m, k)?;
    kernel.moment(k, m - k)
}

/// `∫ h(t) |t|^m dt`.
pub fn kernel_moment(kernel: &ApproxKernel, m: u32) -> Result<f64> {
    kernel.moment(m, 0)
}

/// `I_n = π / (2^{n−1} (n−1)!) Σ_{k<n/2} (−1)^k C(n,k) (n − 2k)^{n−1}`.
pub fn sinc_power_integral_exact(n: u32) -> f64 {
    let mut sum = 0.0;
    for k in 0..n.div_ceil(2) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(n, k) * ((n - 2 * k) as f64).powi(n as i32 - 1);
    }
    let fact: f64 = (1..n).map(|i| i as f64).product();
    PI * sum / (2f64.powi(n as i32 - 1) * fact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_validation() {
        assert!(matches!(build_kernel(5, 1), Err(Error::OddOrder(5))));
        assert!(matches!(build_kernel(4, 2), Err(Error::OrderTooSmall { .. })));
        assert!(build_kernel(6, 3).is_ok());
    }

    #[test]
    fn sinc_integral_closed_forms() {
        assert!((sinc_power_integral_exact(2) - PI).abs() < 1e-14);
        assert!((sinc_power_integral_exact(4) - 2.0 * PI / 3.0).abs() < 1e-14);
        for n in [4, 6, 8, 10, 12] {
            let k = build_kernel(n, 1).unwrap();
            let exact = sinc_power_integral_exact(n);
            assert!((k.sinc_integral - exact).abs() < 1e-12 * exact, "n = {n}");
        }
    }

    #[test]
    fn value_at_origin_and_mass() {
        let k = build_kernel(6, 2).unwrap();
        let h0 = k.norm_const * 6f64.powi(-6);
        assert!((k.value(0.0) - h0).abs() < 1e-15 * h0);
        assert!((k.mass().unwrap() - 1.0).abs() < 1e-10);
        assert!(k.value(3.0) == k.value(-3.0));
    }

    #[test]
    fn symbol_evaluators_agree() {
        for n in [4, 6, 8] {
            let k = build_kernel(n, 1).unwrap();
            for xi in [0.0, 0.1, 0.5, 0.77, 0.99, 1.2] {
                let a = kernel_symbol(&k, xi);
                let b = kernel_symbol_quadrature(&k, xi);
                assert!((a - b).abs() < 1e-9, "n = {n}, xi = {xi}: {a} vs {b}");
            }
            assert_eq!(kernel_symbol(&k, 0.0), 1.0);
            assert_eq!(kernel_symbol(&k, 1.5), 0.0);
        }
    }

    #[test]
    fn moments_stable_under_refinement() {
        let k = build_kernel(6, 2).unwrap();
        let c = jackson_constant(&k, 2, 1).unwrap();
        let r = k.moment_with(1, 2, &QuadratureSettings::refined()).unwrap();
        assert!((c - r).abs() < 1e-6 * r);
        assert!(jackson_constant(&k, 2, 0).unwrap() >= 1.0);
        assert!(jackson_constant_proof(&k, 2, 1).unwrap() <= c);
        assert!(matches!(jackson_constant(&k, 2, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(jackson_constant(&k, 3, 2), Err(Error::DivergentMoment { .. })));
    }

    #[test]
    fn second_moment_closed_form() {
        let k = build_kernel(4, 1).unwrap();
        assert!(matches!(kernel_moment(&k, 3), Err(Error::DivergentMoment { .. })));
        let k = build_kernel(6, 1).unwrap();
        // ∫ sinc^6(u) u^2 du = π/4 and I_6 = 11π/20
        let want = 36.0 * 0.25 / 0.55;
        let got = kernel_moment(&k, 2).unwrap();
        assert!((got - want).abs() < 1e-9 * want, "{got} vs {want}");
    }
}
