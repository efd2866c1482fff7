//! Besov norms `B^α_{2,q}(D)` in their equivalent forms.
//!
//! On a finite spectrum `s ↦ E(f, s)` is a right-continuous step function that
//! only jumps at eigenvalues, so the integral forms are evaluated exactly as sums
//! over the eigenvalue partition and the `q = ∞` forms as maxima over right
//! endpoints of the steps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paley_wiener::{best_approx, tail_norm};
use crate::smoothness::kfunctional::{k_besov_seminorm, DomainNorm};
use crate::smoothness::lemmas::besov_seminorm_sup;
use crate::spectral::SpectralCoefficients;

/// Which equivalent Besov norm to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// `‖f‖ + (∫ (s^α E(f,s))^q ds/s)^{1/q}`
    IntegralE,
    /// `‖f‖ + (Σ_k (a^{kα} E(f,a^k))^q)^{1/q}`
    DiscreteE,
    IntegralR,
    DiscreteR,
    /// Interpolation norm built from the K-functional.
    KFunctional,
    /// `‖f‖ + sup_s s^{−α} Ω_r(f, s)`; `q = ∞` only.
    Modulus,
}

impl Flavor {
    pub const ALL: [Flavor; 6] = [
        Flavor::IntegralE,
        Flavor::DiscreteE,
        Flavor::IntegralR,
        Flavor::DiscreteR,
        Flavor::KFunctional,
        Flavor::Modulus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::IntegralE => "integral_E",
            Flavor::DiscreteE => "discrete_E",
            Flavor::IntegralR => "integral_R",
            Flavor::DiscreteR => "discrete_R",
            Flavor::KFunctional => "k_functional",
            Flavor::Modulus => "modulus",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown Besov flavor '{s}'")))
    }
}

/// Smoothness `α`, integrability `q ∈ [1, ∞]` (`f64::INFINITY` for `∞`), order `r`
/// and dyadic base `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BesovParams {
    pub alpha: f64,
    pub q: f64,
    pub r: u32,
    pub a: f64,
    pub flavor: Flavor,
    pub domain_norm: DomainNorm,
}

impl BesovParams {
    pub fn new(alpha: f64, q: f64, r: u32, flavor: Flavor) -> Result<Self> {
        let p = Self {
            alpha,
            q,
            r,
            a: 2.0,
            flavor,
            domain_norm: DomainNorm::Seminorm,
        };
        p.validate()?;
        Ok(p)
    }

    /// Smallest admissible `r` for the given `α` and `q`.
    pub fn minimal_order(alpha: f64, q: f64) -> u32 {
        let r = alpha.ceil().max(1.0) as u32;
        if q.is_infinite() || (r as f64) > alpha {
            r
        } else {
            r + 1
        }
    }

    pub fn with_base(mut self, a: f64) -> Result<Self> {
        self.a = a;
        self.validate()?;
        Ok(self)
    }

    pub fn with_domain_norm(mut self, norm: DomainNorm) -> Self {
        self.domain_norm = norm;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return bad(format!("alpha must be positive, got {}", self.alpha));
        }
        if !(self.q >= 1.0) {
            return bad(format!("q must lie in [1, inf], got {}", self.q));
        }
        if self.r == 0 {
            return bad("r must be a positive integer".into());
        }
        let r = self.r as f64;
        if self.q.is_finite() && !(self.alpha < r) {
            return bad(format!("need alpha < r for finite q, got alpha = {}, r = {}", self.alpha, self.r));
        }
        if self.q.is_infinite() && !(self.alpha <= r) {
            return bad(format!("need alpha <= r, got alpha = {}, r = {}", self.alpha, self.r));
        }
        if !(self.a > 1.0) || !self.a.is_finite() {
            return bad(format!("dyadic base must exceed 1, got {}", self.a));
        }
        if self.flavor == Flavor::Modulus && self.q.is_finite() {
            return bad("the modulus flavor is defined for q = inf only".into());
        }
        Ok(())
    }
}

/// Functional used to evaluate the steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Route {
    /// `E(f, s)` as a distance in `H`.
    BestApprox,
    /// `R(f, s)` as a coefficient tail.
    Tail,
}

fn evaluate(c: &SpectralCoefficients<'_>, s: f64, route: Route) -> Result<f64> {
    match route {
        Route::BestApprox => best_approx(c, s),
        Route::Tail => Ok(tail_norm(c, s)),
    }
}

/// One step `[lo, hi)` of `s ↦ E(f, s)` with its constant value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

fn step_profile(c: &SpectralCoefficients<'_>, route: Route) -> Result<Vec<Step>> {
    let mut nodes = vec![0.0];
    for &l in c.eigenvalues() {
        if l > *nodes.last().unwrap() {
            nodes.push(l);
        }
    }
    let mut steps = Vec::with_capacity(nodes.len());
    for w in nodes.windows(2) {
        steps.push(Step {
            lo: w[0],
            hi: w[1],
            value: evaluate(c, w[0], route)?,
        });
    }
    Ok(steps)
}

/// Steps of `s ↦ R(f, s)` over the eigenvalue partition; zero beyond `λ_N`.
pub fn tail_steps(c: &SpectralCoefficients<'_>) -> Vec<Step> {
    step_profile(c, Route::Tail).expect("tail evaluation is infallible")
}

fn integral_seminorm(steps: &[Step], alpha: f64, q: f64) -> f64 {
    if q.is_infinite() {
        return steps
            .iter()
            .map(|st| st.hi.powf(alpha) * st.value)
            .fold(0.0, f64::max);
    }
    let p = alpha * q;
    let sum: f64 = steps
        .iter()
        .map(|st| st.value.powf(q) * (st.hi.powf(p) - st.lo.powf(p)) / p)
        .sum();
    sum.powf(1.0 / q)
}

fn discrete_seminorm(
    c: &SpectralCoefficients<'_>,
    alpha: f64,
    q: f64,
    a: f64,
    route: Route,
) -> Result<f64> {
    let lambda_max = c.decomposition().max_eigenvalue();
    let mut terms = Vec::new();
    let mut k = 0;
    loop {
        let node = a.powi(k);
        terms.push(node.powf(alpha) * evaluate(c, node, route)?);
        if node >= lambda_max {
            break;
        }
        k += 1;
    }
    Ok(lq_norm(&terms, q))
}

pub(crate) fn lq_norm(terms: &[f64], q: f64) -> f64 {
    if q.is_infinite() {
        terms.iter().copied().fold(0.0, f64::max)
    } else {
        terms.iter().map(|t| t.powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

/// `T(f, α) = sup_{s>0} s^α E(f, s)`, attained in the limit at a right endpoint.
pub fn approximation_sup(c: &SpectralCoefficients<'_>, alpha: f64) -> f64 {
    integral_seminorm(&tail_steps(c), alpha, f64::INFINITY)
}

/// The seminorm part of [`besov_norm`] (everything after `‖f‖ +`).
pub fn besov_seminorm(c: &SpectralCoefficients<'_>, p: &BesovParams) -> Result<f64> {
    p.validate()?;
    match p.flavor {
        Flavor::IntegralE => Ok(integral_seminorm(
            &step_profile(c, Route::BestApprox)?,
            p.alpha,
            p.q,
        )),
        Flavor::IntegralR => Ok(integral_seminorm(&step_profile(c, Route::Tail)?, p.alpha, p.q)),
        Flavor::DiscreteE => discrete_seminorm(c, p.alpha, p.q, p.a, Route::BestApprox),
        Flavor::DiscreteR => discrete_seminorm(c, p.alpha, p.q, p.a, Route::Tail),
        Flavor::KFunctional => k_besov_seminorm(c, p.alpha, p.q, p.r, p.domain_norm),
        Flavor::Modulus => besov_seminorm_sup(c, p.alpha, 0, p.r),
    }
}

/// `‖f‖ + seminorm` for the selected flavor.
pub fn besov_norm(c: &SpectralCoefficients<'_>, p: &BesovParams) -> Result<f64> {
    Ok(c.norm() + besov_seminorm(c, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{eigh, OperatorKind, SpectralDecomposition, SymmetricOperator};
    use num_complex::Complex64;

    fn decomposition() -> SpectralDecomposition {
        eigh(
            &SymmetricOperator::diagonal(&[0.0, 0.4, 1.3, 1.3, 2.7, 5.0], OperatorKind::RawD)
                .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn eigenvector_closed_forms() {
        let dec = decomposition();
        let c = dec.basis_coefficients(4);
        let l: f64 = 2.7;
        for (alpha, q) in [(0.7, 1.0), (1.5, 2.0), (0.3, 3.0)] {
            let p = BesovParams::new(alpha, q, 2, Flavor::IntegralE).unwrap();
            let want = 1.0 + (l.powf(alpha * q) / (alpha * q)).powf(1.0 / q);
            assert!((besov_norm(&c, &p).unwrap() - want).abs() < 1e-12);
        }
        let p = BesovParams::new(0.9, f64::INFINITY, 1, Flavor::IntegralR).unwrap();
        assert!((besov_norm(&c, &p).unwrap() - (1.0 + l.powf(0.9))).abs() < 1e-12);
        assert!((approximation_sup(&c, 0.9) - l.powf(0.9)).abs() < 1e-12);
    }

    #[test]
    fn discrete_eigenvector() {
        let dec = decomposition();
        let c = dec.basis_coefficients(4);
        // E(f, 2^k) = 1 for 2^k < 2.7, i.e. k = 0, 1
        let p = BesovParams::new(0.5, 1.0, 1, Flavor::DiscreteE).unwrap();
        let want = 1.0 + 1.0 + 2f64.powf(0.5);
        assert!((besov_norm(&c, &p).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn homogeneity() {
        let dec = decomposition();
        let c = dec
            .coefficients(
                (0..6)
                    .map(|j| Complex64::new(1.0 / (j as f64 + 1.0), 0.3 * j as f64))
                    .collect(),
            )
            .unwrap();
        let scale = Complex64::new(-3.0, 4.0);
        let cs = c.scale(scale);
        for flavor in [Flavor::IntegralE, Flavor::DiscreteE, Flavor::IntegralR, Flavor::DiscreteR, Flavor::KFunctional] {
            let p = BesovParams::new(0.8, 2.0, 1, flavor).unwrap();
            let a = besov_norm(&c, &p).unwrap();
            let b = besov_norm(&cs, &p).unwrap();
            assert!((b - 5.0 * a).abs() < 1e-10 * b, "{flavor}: {a} {b}");
        }
    }

    #[test]
    fn invalid_params() {
        assert!(BesovParams::new(2.0, 1.0, 2, Flavor::IntegralE).is_err());
        assert!(BesovParams::new(2.0, f64::INFINITY, 2, Flavor::IntegralE).is_ok());
        assert!(BesovParams::new(0.5, 0.5, 1, Flavor::IntegralE).is_err());
        assert!(BesovParams::new(0.5, 2.0, 1, Flavor::Modulus).is_err());
        assert!(BesovParams::new(0.5, 2.0, 1, Flavor::IntegralE)
            .unwrap()
            .with_base(1.0)
            .is_err());
        assert_eq!(BesovParams::minimal_order(1.0, 2.0), 2);
        assert_eq!(BesovParams::minimal_order(1.0, f64::INFINITY), 1);
        assert_eq!(BesovParams::minimal_order(0.7, 1.0), 1);
    }

    #[test]
    fn zero_vector_norms() {
        let dec = decomposition();
        let c = dec.zero_coefficients();
        for flavor in Flavor::ALL {
            let q = if flavor == Flavor::Modulus { f64::INFINITY } else { 1.0 };
            let p = BesovParams::new(0.5, q, 1, flavor).unwrap();
            assert_eq!(besov_norm(&c, &p).unwrap(), 0.0);
        }
    }
}
