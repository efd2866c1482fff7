//! Independent reference computations used to cross-check closed forms.

use crate::error::{Error, Result};
use crate::paley_wiener::tail_norm;
use crate::spectral::SpectralCoefficients;

/// Number of log-spaced nodes in [`integral_besov_quadrature`].
pub const QUADRATURE_NODES: usize = 10_000;

/// `(∫_0^∞ (s^α E(f,s))^q ds/s)^{1/q}` by pointwise quadrature: a log grid on
/// `[10^{-6} λ_1^+, λ_N]` merged with the eigenvalues, a two-point Gauss rule in
/// `ln s` on every cell, and the exact contribution of `[0, 10^{-6} λ_1^+]` where
/// `E` is constant. For `q = ∞` the supremum over the nodes and the left limits
/// at the eigenvalues. `E(f, s)` is evaluated pointwise as the coefficient tail.
pub fn integral_besov_quadrature(c: &SpectralCoefficients<'_>, alpha: f64, q: f64) -> Result<f64> {
    let dec = c.decomposition();
    let Some(lmin) = dec.smallest_positive_eigenvalue() else {
        return Ok(0.0);
    };
    let lmax = dec.max_eigenvalue();
    let s0 = 1e-6 * lmin;
    let (x0, x1) = (s0.ln(), lmax.ln());
    let mut nodes: Vec<f64> = (0..QUADRATURE_NODES)
        .map(|i| x0 + (x1 - x0) * i as f64 / (QUADRATURE_NODES - 1) as f64)
        .collect();
    nodes.extend(dec.eigenvalues().iter().filter(|l| **l > 0.0).map(|l| l.ln()));
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();

    if q.is_infinite() {
        let mut best: f64 = 0.0;
        for &x in &nodes {
            let s = x.exp();
            best = best.max(s.powf(alpha) * tail_norm(c, s));
            let below = s * (1.0 - 1e-12);
            best = best.max(below.powf(alpha) * tail_norm(c, below));
        }
        return Ok(best);
    }
    if !(q >= 1.0) {
        return Err(Error::InvalidParams(format!("q must lie in [1, inf], got {q}")));
    }

    let p = alpha * q;
    let e0 = tail_norm(c, 0.0);
    let mut total = e0.powf(q) * s0.powf(p) / p;
    let g = 0.5 / 3f64.sqrt();
    for w in nodes.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (mid, h) = (0.5 * (a + b), b - a);
        for x in [mid - g * h, mid + g * h] {
            let s = x.exp();
            total += 0.5 * h * s.powf(p) * tail_norm(c, s).powf(q);
        }
    }
    Ok(total.powf(1.0 / q))
}

/// `K(t, f)` for a two-dimensional space by direct search over
/// `g = (θ_1 c_1, θ_2 c_2)`, `θ ∈ [0, 1]²`: a uniform grid followed by repeated
/// zooming around the best node.
pub fn k_functional_grid(c: &SpectralCoefficients<'_>, t: f64, r: u32) -> Result<f64> {
    if c.dim() != 2 {
        return Err(Error::BadDimension(format!(
            "grid oracle is two-dimensional, got N = {}",
            c.dim()
        )));
    }
    let lam = c.eigenvalues();
    let a: Vec<f64> = c.as_slice().iter().map(|z| z.norm()).collect();
    let w: Vec<f64> = lam.iter().map(|l| l.powi(r as i32)).collect();
    let objective = |t1: f64, t2: f64| {
        let resid = ((1.0 - t1) * a[0]).hypot((1.0 - t2) * a[1]);
        let energy = (t1 * w[0] * a[0]).hypot(t2 * w[1] * a[1]);
        resid + t * energy
    };
    const CELLS: usize = 200;
    let (mut lo1, mut hi1, mut lo2, mut hi2) = (0.0, 1.0, 0.0, 1.0);
    let mut best = f64::INFINITY;
    for _ in 0..12 {
        let (h1, h2) = ((hi1 - lo1) / CELLS as f64, (hi2 - lo2) / CELLS as f64);
        let mut arg = (lo1, lo2);
        for i in 0..=CELLS {
            for j in 0..=CELLS {
                let (t1, t2) = (lo1 + i as f64 * h1, lo2 + j as f64 * h2);
                let v = objective(t1, t2);
                if v < best {
                    best = v;
                    arg = (t1, t2);
                }
            }
        }
        lo1 = (arg.0 - 2.0 * h1).max(0.0);
        hi1 = (arg.0 + 2.0 * h1).min(1.0);
        lo2 = (arg.1 - 2.0 * h2).max(0.0);
        hi2 = (arg.1 + 2.0 * h2).min(1.0);
    }
    Ok(best)
}
