//! Finite-dimensional spectral theorem: eigendecomposition of a symmetric
//! positive semidefinite operator and the functional calculus built on it.
//!
//! Every operator `φ(D)` is applied as a diagonal multiplier on the spectral
//! coefficients `c_j = ⟨f, u_j⟩`, so the cost of one application is one forward
//! and one inverse transform.

use std::fmt;
use std::ops::Range;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::jacobi_eigen;

/// Relative off-diagonal tolerance handed to the Jacobi solver.
pub const JACOBI_REL_TOL: f64 = 1e-12;

/// Whether a matrix holds `L` (so that `D = L^{1/2}`) or `D` itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    RawL,
    RawD,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::RawL => write!(f, "raw_L"),
            OperatorKind::RawD => write!(f, "raw_D"),
        }
    }
}

/// A dense real symmetric matrix together with its [`OperatorKind`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricOperator {
    dim: usize,
    entries: Vec<f64>,
    kind: OperatorKind,
}

impl SymmetricOperator {
    /// Builds an operator from a row-major buffer. Symmetry is checked exactly.
    pub fn new(dim: usize, entries: Vec<f64>, kind: OperatorKind) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadDimension("operator dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("operator entries"));
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { dim, entries, kind })
    }

    pub fn from_rows(rows: &[Vec<f64>], kind: OperatorKind) -> Result<Self> {
        let dim = rows.len();
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
        }
        Self::new(dim, rows.concat(), kind)
    }

    pub fn diagonal(values: &[f64], kind: OperatorKind) -> Result<Self> {
        let n = values.len();
        let mut entries = vec![0.0; n * n];
        for (i, v) in values.iter().enumerate() {
            entries[i * n + i] = *v;
        }
        Self::new(n, entries, kind)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Semidefiniteness slack: eigenvalues within `tol_psd` of zero are set to zero.
    pub fn tol_psd(&self) -> f64 {
        1e-10 * self.max_abs_entry()
    }
}

/// An element of the complex Hilbert space `C^N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HilbertVector(Vec<Complex64>);

impl HilbertVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("vector entries"));
        }
        Ok(Self(entries))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Complex64::new(0.0, 0.0); dim])
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.0)
    }

    /// `⟨self, other⟩`, linear in the first argument.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(self.0.iter().map(|z| z * factor).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Euclidean norm with scaling against overflow.
pub(crate) fn l2_norm(values: &[Complex64]) -> f64 {
    let scale = values.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 = values.iter().map(|z| (z / scale).norm_sqr()).sum();
    scale * sum.sqrt()
}

/// Eigenvalues of `D` in ascending order with an orthonormal real eigenbasis.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    dim: usize,
    eigenvalues: Vec<f64>,
    operator_eigenvalues: Vec<f64>,
    // column j is the eigenvector u_j, row-major storage
    eigenvectors: Vec<f64>,
    groups: Vec<Range<usize>>,
    eps_group: f64,
}

/// Diagonalizes `op` and returns the eigen-system of `D`.
///
/// For [`OperatorKind::RawL`] the returned eigenvalues are square roots of those of
/// the input. Eigenvalues in `[-tol_psd, tol_psd]` are set to zero; anything
/// below `-tol_psd` is rejected.
pub fn eigh(op: &SymmetricOperator) -> Result<SpectralDecomposition> {
    let n = op.dim();
    let out = jacobi_eigen(op.entries(), n, JACOBI_REL_TOL)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        out.eigenvalues[a]
            .total_cmp(&out.eigenvalues[b])
            .then(a.cmp(&b))
    });

    let tol = op.tol_psd();
    let mut operator_eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = vec![0.0; n * n];
    for (new_j, &old_j) in order.iter().enumerate() {
        let mu = out.eigenvalues[old_j];
        if mu < -tol {
            return Err(Error::NotPsd {
                eigenvalue: mu,
                tol,
            });
        }
        operator_eigenvalues.push(if mu <= tol { 0.0 } else { mu });

        // Sign convention: the largest-magnitude component is positive.
        let mut pivot = 0;
        for i in 0..n {
            if out.eigenvectors[i * n + old_j].abs() > out.eigenvectors[pivot * n + old_j].abs() {
                pivot = i;
            }
        }
        let sign = if out.eigenvectors[pivot * n + old_j] < 0.0 {
            -1.0
        } else {
            1.0
        };
        for i in 0..n {
            eigenvectors[i * n + new_j] = sign * out.eigenvectors[i * n + old_j];
        }
    }

    let eigenvalues: Vec<f64> = match op.kind() {
        OperatorKind::RawL => operator_eigenvalues.iter().map(|m| m.sqrt()).collect(),
        OperatorKind::RawD => operator_eigenvalues.clone(),
    };

    let eps_group = 1e-9 * eigenvalues.last().copied().unwrap_or(0.0).max(1.0);
    let mut groups = Vec::new();
    let mut start = 0;
    for j in 1..=n {
        if j == n || eigenvalues[j] - eigenvalues[start] > eps_group {
            groups.push(start..j);
            start = j;
        }
    }

    Ok(SpectralDecomposition {
        dim: n,
        eigenvalues,
        operator_eigenvalues,
        eigenvectors,
        groups,
        eps_group,
    })
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Eigenvalues `λ_1 ≤ … ≤ λ_N` of `D`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvalues of the input matrix (equal to `λ_j²` for `raw_L` input).
    pub fn operator_eigenvalues(&self) -> &[f64] {
        &self.operator_eigenvalues
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn smallest_positive_eigenvalue(&self) -> Option<f64> {
        self.eigenvalues.iter().copied().find(|&l| l > 0.0)
    }

    /// Index clusters of numerically equal eigenvalues (the multiplicities).
    pub fn groups(&self) -> &[Range<usize>] {
        &self.groups
    }

    pub fn eps_group(&self) -> f64 {
        self.eps_group
    }

    /// Component `i` of eigenvector `u_j`.
    pub fn eigenvector_entry(&self, i: usize, j: usize) -> f64 {
        self.eigenvectors[i * self.dim + j]
    }

    pub fn eigenvector(&self, j: usize) -> HilbertVector {
        HilbertVector(
            (0..self.dim)
                .map(|i| Complex64::new(self.eigenvector_entry(i, j), 0.0))
                .collect(),
        )
    }

    /// `F_D f`: coefficients `c_j = ⟨f, u_j⟩`.
    pub fn transform(&self, f: &HilbertVector) -> Result<SpectralCoefficients<'_>> {
        check_dim(self.dim, f.dim())?;
        let n = self.dim;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for (i, fi) in f.as_slice().iter().enumerate() {
            let row = &self.eigenvectors[i * n..(i + 1) * n];
            for (c, u) in coeffs.iter_mut().zip(row) {
                *c += fi * u;
            }
        }
        Ok(SpectralCoefficients { dec: self, coeffs })
    }

    /// Wraps a raw coefficient vector aligned with `eigenvalues()`.
    pub fn coefficients(&self, coeffs: Vec<Complex64>) -> Result<SpectralCoefficients<'_>> {
        check_dim(self.dim, coeffs.len())?;
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("spectral coefficients"));
        }
        Ok(SpectralCoefficients { dec: self, coeffs })
    }

    pub fn zero_coefficients(&self) -> SpectralCoefficients<'_> {
        SpectralCoefficients {
            dec: self,
            coeffs: vec![Complex64::new(0.0, 0.0); self.dim],
        }
    }

    /// Coefficients of the eigenvector `u_j`, i.e. the unit vector `e_j`.
    pub fn basis_coefficients(&self, j: usize) -> SpectralCoefficients<'_> {
        let mut c = self.zero_coefficients();
        c.coeffs[j] = Complex64::new(1.0, 0.0);
        c
    }

    /// `φ(D) f` for a real multiplier `φ`.
    pub fn apply_multiplier<F: Fn(f64) -> f64>(
        &self,
        phi: F,
        f: &HilbertVector,
    ) -> Result<HilbertVector> {
        Ok(self.transform(f)?.map(phi)?.synthesize())
    }

    /// `φ(D) f` for a complex multiplier `φ`.
    pub fn apply_complex_multiplier<F: Fn(f64) -> Complex64>(
        &self,
        phi: F,
        f: &HilbertVector,
    ) -> Result<HilbertVector> {
        Ok(self.transform(f)?.map_complex(phi)?.synthesize())
    }

    /// `D^s f`, `s ≥ 0`.
    pub fn power(&self, s: f64, f: &HilbertVector) -> Result<HilbertVector> {
        Ok(self.transform(f)?.power(s)?.synthesize())
    }

    /// `e^{izD} f` for complex `z`; unitary when `z` is real.
    pub fn schrodinger_group(&self, z: Complex64, f: &HilbertVector) -> Result<HilbertVector> {
        Ok(self.transform(f)?.schrodinger(z).synthesize())
    }
}

/// Free-function form of [`SpectralDecomposition::transform`].
pub fn spectral_transform<'a>(
    f: &HilbertVector,
    dec: &'a SpectralDecomposition,
) -> Result<SpectralCoefficients<'a>> {
    dec.transform(f)
}

/// Free-function form of [`SpectralCoefficients::synthesize`].
pub fn inverse_transform(c: &SpectralCoefficients<'_>) -> HilbertVector {
    c.synthesize()
}

/// The image `F_D f` of a vector, tied to the decomposition it was computed in.
#[derive(Debug, Clone)]
pub struct SpectralCoefficients<'a> {
    dec: &'a SpectralDecomposition,
    coeffs: Vec<Complex64>,
}

impl<'a> SpectralCoefficients<'a> {
    pub fn decomposition(&self) -> &'a SpectralDecomposition {
        self.dec
    }

    pub fn eigenvalues(&self) -> &'a [f64] {
        &self.dec.eigenvalues
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.coeffs)
    }

    /// Iterator of `(λ_j, c_j)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.dec.eigenvalues.iter().copied().zip(self.coeffs.iter().copied())
    }

    /// `F_D^{-1}`: `Σ_j c_j u_j`.
    pub fn synthesize(&self) -> HilbertVector {
        let n = self.dec.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.dec.eigenvectors[i * n..(i + 1) * n];
            *o = row.iter().zip(&self.coeffs).map(|(u, c)| c * u).sum();
        }
        HilbertVector(out)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dec: self.dec,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self {
            dec: self.dec,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self {
            dec: self.dec,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Multiplies each coefficient by `φ(λ_j)`.
    pub fn map<F: Fn(f64) -> f64>(&self, phi: F) -> Result<Self> {
        self.map_complex(|l| Complex64::new(phi(l), 0.0))
    }

    pub fn map_complex<F: Fn(f64) -> Complex64>(&self, phi: F) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.dim());
        for (lambda, c) in self.pairs() {
            let m = phi(lambda);
            if !m.re.is_finite() || !m.im.is_finite() {
                return Err(Error::NonFiniteMultiplier { lambda });
            }
            coeffs.push(c * m);
        }
        Ok(Self {
            dec: self.dec,
            coeffs,
        })
    }

    /// Coefficients of `D^s f`.
    pub fn power(&self, s: f64) -> Result<Self> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::InvalidParams(format!(
                "power exponent must be finite and nonnegative, got {s}"
            )));
        }
        self.map(|l| l.powf(s))
    }

    /// Coefficients of `e^{izD} f`.
    pub fn schrodinger(&self, z: Complex64) -> Self {
        let i = Complex64::new(0.0, 1.0);
        Self {
            dec: self.dec,
            coeffs: self
                .pairs()
                .map(|(l, c)| c * (i * z * l).exp())
                .collect(),
        }
    }

    /// `‖D^s f‖` evaluated directly on the coefficients.
    pub fn power_norm(&self, s: f64) -> f64 {
        let scaled: Vec<Complex64> = self.pairs().map(|(l, c)| c * l.powf(s)).collect();
        l2_norm(&scaled)
    }
}
