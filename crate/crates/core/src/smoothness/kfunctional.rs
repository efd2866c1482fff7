//! Peetre K-functional `K(t, f) = inf_g (‖f − g‖ + t‖g‖_{D_r})` between `H` and
//! the domain of `D^r`.
//!
//! The minimizers of the two-term problem lie on the Tikhonov path
//! `g_s = (I + s W)^{-1} f`, where `W = D^{2r}` (seminorm) or `I + D^{2r}` (graph
//! norm). Along that path the objective is unimodal in `log s`, so a golden-section
//! search recovers the infimum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::SpectralCoefficients;

const SEARCH_DECADES: f64 = 12.0;
const GOLDEN_ITERATIONS: usize = 200;

/// Number of log-spaced `t` nodes in [`k_besov_seminorm`].
pub const K_GRID_POINTS: usize = 200;

/// Which norm the domain of `D^r` carries inside the K-functional.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainNorm {
    /// `‖D^r g‖`
    #[default]
    Seminorm,
    /// `(‖g‖² + ‖D^r g‖²)^{1/2}`
    Graph,
}

impl DomainNorm {
    fn weight(self, lambda: f64, r: u32) -> f64 {
        let p = lambda.powi(2 * r as i32);
        match self {
            DomainNorm::Seminorm => p,
            DomainNorm::Graph => 1.0 + p,
        }
    }
}

/// Weighted coefficient data `(|c_j|², w_j)`.
struct PathData {
    terms: Vec<(f64, f64)>,
}

impl PathData {
    fn new(c: &SpectralCoefficients<'_>, r: u32, norm: DomainNorm) -> Self {
        Self {
            terms: c
                .pairs()
                .map(|(l, z)| (z.norm_sqr(), norm.weight(l, r)))
                .collect(),
        }
    }

    /// `‖f − g_s‖ + t ‖g_s‖_{D_r}`.
    fn objective(&self, s: f64, t: f64) -> f64 {
        let mut resid = 0.0;
        let mut energy = 0.0;
        for &(c2, w) in &self.terms {
            let denom = 1.0 + s * w;
            let frac = s * w / denom;
            resid += c2 * frac * frac;
            energy += c2 * w / (denom * denom);
        }
        resid.sqrt() + t * energy.sqrt()
    }

    /// Objective at `s = 0` (`g = f`).
    fn at_zero(&self, t: f64) -> f64 {
        t * self.terms.iter().map(|&(c2, w)| c2 * w).sum::<f64>().sqrt()
    }

    /// Objective as `s → ∞` (`g` = component on which `w` vanishes).
    fn at_infinity(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.1 > 0.0)
            .map(|t| t.0)
            .sum::<f64>()
            .sqrt()
    }

    fn max_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.1).fold(0.0, f64::max)
    }
}

/// `K(t, f)` with the seminorm on the domain of `D^r`.
pub fn k_functional(c: &SpectralCoefficients<'_>, t: f64, r: u32) -> Result<f64> {
    k_functional_with(c, t, r, DomainNorm::Seminorm)
}

pub fn k_functional_with(
    c: &SpectralCoefficients<'_>,
    t: f64,
    r: u32,
    norm: DomainNorm,
) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveT(t));
    }
    if r == 0 {
        return Err(Error::InvalidParams("K-functional order r must be >= 1".into()));
    }
    let data = PathData::new(c, r, norm);
    Ok(minimize_on_path(&data, t))
}

fn minimize_on_path(data: &PathData, t: f64) -> f64 {
    let endpoints = data.at_zero(t).min(data.at_infinity());
    let wmax = data.max_weight();
    if wmax == 0.0 {
        return endpoints;
    }
    let center = -wmax.ln();
    let mut lo = center - SEARCH_DECADES * std::f64::consts::LN_10;
    let mut hi = center + SEARCH_DECADES * std::f64::consts::LN_10;
    let phi = |x: f64| data.objective(x.exp(), t);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = phi(x1);
    let mut f2 = phi(x2);
    let mut best = f1.min(f2);
    for _ in 0..GOLDEN_ITERATIONS {
        if hi - lo < 1e-13 {
            break;
        }
        if f1 > f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = phi(x2);
            best = best.min(f2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = phi(x1);
            best = best.min(f1);
        }
    }
    best.min(endpoints)
}

/// `(∫_0^∞ (t^{−α/r} K(t, f))^q dt/t)^{1/q}` on a log grid of [`K_GRID_POINTS`]
/// nodes over `[10^{-6} λ_N^{-r}, 10^6]`, with the tails outside the grid
/// replaced by their bounds `K ≤ t‖D^r f‖` and `K ≤ ‖f‖`.
pub fn k_besov_seminorm(
    c: &SpectralCoefficients<'_>,
    alpha: f64,
    q: f64,
    r: u32,
    norm: DomainNorm,
) -> Result<f64> {
    if r == 0 || !(alpha > 0.0) {
        return Err(Error::InvalidParams(format!(
            "need alpha > 0 and r >= 1, got alpha = {alpha}, r = {r}"
        )));
    }
    let data = PathData::new(c, r, norm);
    let lambda_max = c.decomposition().max_eigenvalue();
    if data.at_infinity() == 0.0 && norm == DomainNorm::Seminorm {
        return Ok(0.0);
    }
    let theta = alpha / r as f64;
    let t_min = 1e-6 / lambda_max.max(1e-300).powi(r as i32);
    let t_max = 1e6_f64.max(t_min * 10.0);
    let (ln_lo, ln_hi) = (t_min.ln(), t_max.ln());
    let step = (ln_hi - ln_lo) / (K_GRID_POINTS - 1) as f64;
    let values: Vec<f64> = (0..K_GRID_POINTS)
        .map(|i| {
            let t = (ln_lo + i as f64 * step).exp();
            t.powf(-theta) * minimize_on_path(&data, t)
        })
        .collect();

    if q.is_infinite() {
        return Ok(values.iter().copied().fold(0.0, f64::max));
    }
    let mut integral = 0.0;
    for pair in values.windows(2) {
        integral += 0.5 * step * (pair[0].powf(q) + pair[1].powf(q));
    }
    let d_r = data.at_zero(1.0);
    if theta < 1.0 {
        integral += (d_r * t_min.powf(1.0 - theta)).powf(q) / (q * (1.0 - theta));
    }
    let k_inf = match norm {
        DomainNorm::Seminorm => data.at_infinity(),
        DomainNorm::Graph => c.norm(),
    };
    integral += (k_inf * t_max.powf(-theta)).powf(q) / (q * theta);
    Ok(integral.powf(1.0 / q))
}
