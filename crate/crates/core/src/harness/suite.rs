//! Seeded verification suite over a random corpus of vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::approx::kernel::{build_kernel, jackson_constant, ApproxKernel};
use crate::approx::quasi::{jackson_check, q_apply};
use crate::approx::riesz::{riesz_apply, riesz_identity_check, RieszConfig, DEFAULT_TRUNCATION};
use crate::decomposition::{band_decompose, equivalence_report, synthesis_check, top_band, Bracket};
use crate::error::{Error, Result};
use crate::harness::operators::{build_operator, OperatorSpec};
use crate::harness::oracles::integral_besov_quadrature;
use crate::harness::report::{CheckRecord, ConstantEntry, ReportMetadata, VerificationReport};
use crate::paley_wiener::{bernstein_check, best_approx, pw_project, spectral_tail, tail_norm};
use crate::smoothness::besov::{besov_norm, besov_seminorm, BesovParams, Flavor};
use crate::smoothness::kfunctional::k_functional;
use crate::smoothness::lemmas::{lemma1_check, lemma2_check};
use crate::smoothness::modulus::modulus_inequality_checks;
use crate::spectral::{eigh, HilbertVector, SpectralCoefficients, SpectralDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Plancherel,
    BestApproxTail,
    Bernstein,
    RieszIdentity,
    RieszNorm,
    ModulusInequalities,
    QOperator,
    Jackson,
    Lemma1,
    Lemma2,
    FlavorEquivalence,
    FrameEquivalence,
    Synthesis,
    GrowthBound,
    KFunctional,
}

impl CheckKind {
    pub const ALL: [CheckKind; 15] = [
        CheckKind::Plancherel,
        CheckKind::BestApproxTail,
        CheckKind::Bernstein,
        CheckKind::RieszIdentity,
        CheckKind::RieszNorm,
        CheckKind::ModulusInequalities,
        CheckKind::QOperator,
        CheckKind::Jackson,
        CheckKind::Lemma1,
        CheckKind::Lemma2,
        CheckKind::FlavorEquivalence,
        CheckKind::FrameEquivalence,
        CheckKind::Synthesis,
        CheckKind::GrowthBound,
        CheckKind::KFunctional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Plancherel => "plancherel",
            CheckKind::BestApproxTail => "best_approx_tail",
            CheckKind::Bernstein => "bernstein",
            CheckKind::RieszIdentity => "riesz_identity",
            CheckKind::RieszNorm => "riesz_norm",
            CheckKind::ModulusInequalities => "modulus_inequalities",
            CheckKind::QOperator => "q_operator",
            CheckKind::Jackson => "jackson",
            CheckKind::Lemma1 => "lemma1",
            CheckKind::Lemma2 => "lemma2",
            CheckKind::FlavorEquivalence => "flavor_equivalence",
            CheckKind::FrameEquivalence => "frame_equivalence",
            CheckKind::Synthesis => "synthesis",
            CheckKind::GrowthBound => "growth_bound",
            CheckKind::KFunctional => "k_functional",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s.replace('-', "_"))
            .ok_or_else(|| Error::InvalidParams(format!("unknown check '{s}'")))
    }
}

/// Corpus size, seed and operator dimensions. Fixed-size operators ignore `sizes`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusParams {
    pub count: usize,
    pub seed: u64,
    pub sizes: Vec<usize>,
}

impl Default for CorpusParams {
    fn default() -> Self {
        Self {
            count: 10,
            seed: 0,
            sizes: vec![16],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub plancherel: f64,
    pub best_approx: f64,
    pub bernstein: f64,
    pub riesz_norm: f64,
    pub riesz_truncation: u64,
    pub grid: f64,
    pub q_tail: f64,
    pub reconstruction: f64,
    pub synthesis: f64,
    pub growth: f64,
    pub scale_invariance: f64,
    pub quadrature: f64,
    pub k_shape: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            plancherel: 1e-10,
            best_approx: 1e-12,
            bernstein: 1e-10,
            riesz_norm: 1e-6,
            riesz_truncation: DEFAULT_TRUNCATION,
            grid: 1e-6,
            q_tail: 1e-10,
            reconstruction: 1e-10,
            synthesis: 1e-12,
            growth: 1e-10,
            scale_invariance: 1e-10,
            quadrature: 1e-6,
            k_shape: 1e-10,
        }
    }
}

/// `(α, q)` pairs used by the norm-equivalence checks; `a = 2` throughout.
pub const EQUIVALENCE_CASES: [(f64, f64); 3] = [(0.7, 1.0), (1.5, 2.0), (0.9, f64::INFINITY)];

/// `(m, k)` pairs used by the Jackson check.
pub const JACKSON_CASES: [(u32, u32); 3] = [(2, 0), (2, 1), (3, 1)];

/// `(α, n, r)` triples used by the lemma checks.
pub const LEMMA_CASES: [(f64, u32, u32); 3] = [(0.5, 0, 1), (1.5, 1, 1), (1.3, 0, 2)];

/// Smallest even kernel order `≥ m + 4`.
pub fn jackson_kernel_order(m: u32) -> u32 {
    let n = m + 4;
    n + n % 2
}

/// A vector with independent standard-normal real and imaginary parts.
pub fn random_vector<R: Rng>(n: usize, rng: &mut R) -> HilbertVector {
    let entries = (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    HilbertVector::new(entries).expect("normal samples are finite")
}

/// Spectral coefficients of [`random_vector`].
pub fn random_coefficients<'a, R: Rng>(dec: &'a SpectralDecomposition, rng: &mut R) -> SpectralCoefficients<'a> {
    dec.transform(&random_vector(dec.dim(), rng))
        .expect("dimension matches by construction")
}

/// Log-uniform sample in `[lo, hi]`.
fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..=hi.ln()).exp()
}

fn random_eigenvalue<R: Rng>(dec: &SpectralDecomposition, rng: &mut R) -> f64 {
    dec.eigenvalues()[rng.random_range(0..dec.dim())]
}

/// Random vector projected to a random band, so corpora mix bandwidths.
fn varying_bandwidth<'a, R: Rng>(dec: &'a SpectralDecomposition, rng: &mut R) -> SpectralCoefficients<'a> {
    let c = random_coefficients(dec, rng);
    let positive: Vec<f64> = dec.eigenvalues().iter().copied().filter(|l| *l > 0.0).collect();
    if positive.is_empty() {
        return c;
    }
    let omega = positive[rng.random_range(0..positive.len())];
    let p = pw_project(&c, omega).expect("eigenvalues are nonnegative");
    if p.norm() > 0.0 {
        p
    } else {
        c
    }
}

fn rel_dev(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn fmt_q(q: f64) -> String {
    if q.is_infinite() {
        "inf".into()
    } else {
        format!("{q}")
    }
}

/// Accumulates records and constant brackets for one run.
#[derive(Default)]
struct Collector {
    records: Vec<CheckRecord>,
    constants: BTreeMap<String, Bracket>,
}

impl Collector {
    fn at_most(&mut self, check: CheckKind, params: String, measured: f64, limit: f64, tolerance: f64) {
        self.records
            .push(CheckRecord::at_most(check.name(), params, measured, limit, tolerance));
    }

    fn constant(&mut self, name: String, value: f64) {
        self.constants.entry(name).or_default().include(value);
    }
}

struct Context<'d> {
    dec: &'d SpectralDecomposition,
    n: usize,
    count: usize,
    tol: Tolerances,
    kernels: &'d BTreeMap<u32, ApproxKernel>,
}

impl Context<'_> {
    fn tag(&self, i: usize) -> String {
        format!("N={:03} i={:03}", self.n, i)
    }

    fn lmax(&self) -> f64 {
        self.dec.max_eigenvalue()
    }

    fn lmin_pos(&self) -> Option<f64> {
        self.dec.smallest_positive_eigenvalue()
    }
}

fn sub_seed(seed: u64, check: CheckKind, n: usize) -> u64 {
    let idx = CheckKind::ALL.iter().position(|c| *c == check).unwrap_or(0) as u64;
    seed ^ (idx + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (n as u64).wrapping_mul(0xD1B5_4A32_D192_ED03)
}

/// Runs the selected checks on `count` random vectors for every size.
pub fn run_suite(
    spec: &OperatorSpec,
    corpus: &CorpusParams,
    checks: &[CheckKind],
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let mut selected: Vec<CheckKind> = checks.to_vec();
    selected.sort();
    selected.dedup();

    let specs: Vec<OperatorSpec> = if spec.is_scalable() && !corpus.sizes.is_empty() {
        let mut sizes = corpus.sizes.clone();
        sizes.sort_unstable();
        sizes.dedup();
        sizes.into_iter().map(|n| spec.resized(n)).collect()
    } else {
        vec![spec.clone()]
    };

    let mut kernels = BTreeMap::new();
    if selected.contains(&CheckKind::Jackson) || selected.contains(&CheckKind::QOperator) {
        for &(m, _) in &JACKSON_CASES {
            kernels
                .entry(m)
                .or_insert(build_kernel(jackson_kernel_order(m), m)?);
        }
    }

    let mut out = Collector::default();
    let mut sizes = Vec::new();
    for s in &specs {
        let dec = eigh(&build_operator(s)?)?;
        sizes.push(dec.dim());
        let ctx = Context {
            dec: &dec,
            n: dec.dim(),
            count: corpus.count,
            tol: *tol,
            kernels: &kernels,
        };
        for &check in &selected {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(corpus.seed, check, ctx.n));
            run_check(check, &ctx, &mut rng, &mut out)?;
        }
    }
    for (&m, kernel) in &kernels {
        for &(mm, k) in JACKSON_CASES.iter().filter(|c| c.0 == m) {
            let v = jackson_constant(kernel, mm, k)?;
            out.constant(format!("C^h_(m={mm},k={k}) n={}", kernel.n), v);
        }
    }

    let metadata = ReportMetadata {
        seed: corpus.seed,
        count: corpus.count,
        sizes,
        operator: spec.to_string(),
        checks: selected.iter().map(|c| c.name().to_string()).collect(),
    };
    let constants = out
        .constants
        .into_iter()
        .map(|(name, b)| ConstantEntry { name, lo: b.lo, hi: b.hi })
        .collect();
    Ok(VerificationReport::new(metadata, out.records, constants))
}

fn run_check(check: CheckKind, ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    match check {
        CheckKind::Plancherel => plancherel(ctx, rng, out),
        CheckKind::BestApproxTail => best_approx_tail(ctx, rng, out),
        CheckKind::Bernstein => bernstein(ctx, rng, out),
        CheckKind::RieszIdentity => riesz_identity(ctx, rng, out),
        CheckKind::RieszNorm => riesz_norm(ctx, rng, out),
        CheckKind::ModulusInequalities => modulus_inequalities(ctx, rng, out),
        CheckKind::QOperator => q_operator(ctx, rng, out),
        CheckKind::Jackson => jackson(ctx, rng, out),
        CheckKind::Lemma1 => lemma(ctx, rng, out, true),
        CheckKind::Lemma2 => lemma(ctx, rng, out, false),
        CheckKind::FlavorEquivalence => flavor_equivalence(ctx, rng, out),
        CheckKind::FrameEquivalence => frame_equivalence(ctx, rng, out),
        CheckKind::Synthesis => synthesis(ctx, rng, out),
        CheckKind::GrowthBound => growth_bound(ctx, rng, out),
        CheckKind::KFunctional => k_shape(ctx, rng, out),
    }
}

fn plancherel(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    for i in 0..ctx.count {
        let f = random_vector(ctx.n, rng);
        let c = ctx.dec.transform(&f)?;
        let norm_gap = (c.norm() - f.norm()).abs();
        let round_trip = c.synthesize().sub(&f)?.norm();
        let measured = norm_gap.max(round_trip) / (1.0 + f.norm());
        out.at_most(CheckKind::Plancherel, ctx.tag(i), measured, ctx.tol.plancherel, ctx.tol.plancherel);
    }
    Ok(())
}

fn best_approx_tail(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    for i in 0..ctx.count {
        let c = random_coefficients(ctx.dec, rng);
        let omega = rng.random_range(0.0..=1.1 * ctx.lmax());
        let e = best_approx(&c, omega)?;
        let r = spectral_tail(&c, omega)?;
        let measured = (e - r).abs() / (1.0 + c.norm());
        let params = format!("{} omega={omega:.6}", ctx.tag(i));
        out.at_most(CheckKind::BestApproxTail, params, measured, ctx.tol.best_approx, ctx.tol.best_approx);
    }
    Ok(())
}

const BERNSTEIN_EXPONENTS: [f64; 4] = [0.5, 1.0, 2.0, 7.0];

fn bernstein(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    let tol = ctx.tol.bernstein;
    for i in 0..ctx.count {
        let omega = random_eigenvalue(ctx.dec, rng);
        let c = pw_project(&random_coefficients(ctx.dec, rng), omega)?;
        let rep = bernstein_check(&c, omega, &BERNSTEIN_EXPONENTS)?;
        let params = format!("{} omega={omega:.6}", ctx.tag(i));
        out.at_most(CheckKind::Bernstein, params, rep.max_ratio, 1.0 + tol, tol);
    }
    let top = ctx.n - 1;
    let omega = ctx.lmax();
    if omega > 0.0 {
        let rep = bernstein_check(&ctx.dec.basis_coefficients(top), omega, &BERNSTEIN_EXPONENTS)?;
        let gap = rep.ratios.iter().map(|r| (r.1 - 1.0).abs()).fold(0.0, f64::max);
        out.at_most(CheckKind::Bernstein, format!("N={:03} equality", ctx.n), gap, 1e-12, 1e-12);
    }
    Ok(())
}

fn riesz_identity(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    let omega = ctx.lmax();
    if omega <= 0.0 {
        return Ok(());
    }
    let k = ctx.tol.riesz_truncation;
    for i in 0..ctx.count {
        let c = random_coefficients(ctx.dec, rng);
        let rep = riesz_identity_check(&c, omega, 1, k)?;
        let limit = rep.tail_bound * (1.0 + 1e-9) + 1e-12;
        let params = format!("{} K={k}", ctx.tag(i));
        out.at_most(CheckKind::RieszIdentity, params, rep.residual, limit, rep.tail_bound);
    }
    Ok(())
}

fn riesz_norm(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    let lmax = ctx.lmax();
    if lmax <= 0.0 {
        return Ok(());
    }
    let tol = ctx.tol.riesz_norm;
    for i in 0..ctx.count {
        let c = random_coefficients(ctx.dec, rng);
        let omega = rng.random_range(0.2 * lmax..=lmax);
        let cfg = RieszConfig::with_truncation(omega, ctx.tol.riesz_truncation)?;
        let ratio = riesz_apply(&c, &cfg)?.norm() / (omega * c.norm());
        let params = format!("{} omega={omega:.6}", ctx.tag(i));
        out.at_most(CheckKind::RieszNorm, params, ratio, 1.0 + tol, tol);
    }
    Ok(())
}

fn modulus_inequalities(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    let Some(lmin) = ctx.lmin_pos() else {
        return Ok(());
    };
    let tol = ctx.tol.grid;
    for i in 0..ctx.count {
        let c = random_coefficients(ctx.dec, rng);
        let s = log_uniform(rng, 0.01 / ctx.lmax(), 10.0 / lmin);
        let a_scale = rng.random_range(0.1..=4.0);
        let m = rng.random_range(1..=4u32);
        let k = rng.random_range(0..=m);
        let rep = modulus_inequality_checks(&c, s, a_scale, m, k)?;
        let params = format!("{} s={s:.6} a={a_scale:.6} m={m} k={k}", ctx.tag(i));
        out.at_most(
            CheckKind::ModulusInequalities,
            params,
            rep.power_ratio.max(rep.scale_ratio),
            1.0 + tol,
            tol,
        );
    }
    Ok(())
}

fn band_omega(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> f64 {
    let lo = ctx.lmin_pos().unwrap_or(1.0);
    let hi = (2.0 * ctx.lmax()).max(lo);
    rng.random_range(lo..=hi)
}

fn q_operator(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    let tol = ctx.tol.q_tail;
    for i in 0..ctx.count {
        let (m, _) = JACKSON_CASES[i % JACKSON_CASES.len()];
        let kernel = &ctx.kernels[&m];
        let c = random_coefficients(ctx.dec, rng);
        let omega = band_omega(ctx, rng);
        let q = q_apply(&c, omega, m, kernel)?;
        let tail = tail_norm(&q, omega);
        let kernel_gap = c
            .pairs()
            .zip(q.as_slice())
            .filter(|((l, _), _)| *l == 0.0)
            .map(|((_, a), b)| (a - b).norm())
            .fold(0.0, f64::max);
        let measured = tail.max(kernel_gap) / c.norm();
        let params = format!("{} omega={omega:.6} m={m}", ctx.tag(i));
        out.at_most(CheckKind::QOperator, params, measured, tol, tol);
    }
    Ok(())
}

fn jackson(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    let tol = ctx.tol.grid;
    for i in 0..ctx.count {
        let c = random_coefficients(ctx.dec, rng);
        let omega = band_omega(ctx, rng);
        for &(m, k) in &JACKSON_CASES {
            let rep = jackson_check(&c, omega, m, k, &ctx.kernels[&m])?;
            let params = format!("{} omega={omega:.6} m={m} k={k}", ctx.tag(i));
            let measured = if rep.q_dominates { rep.ratio.max(rep.q_ratio) } else { f64::INFINITY };
            out.at_most(CheckKind::Jackson, params, measured, 1.0 + tol, tol);
        }
    }
    Ok(())
}

fn lemma(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector, first: bool) -> Result<()> {
    if ctx.lmin_pos().is_none() {
        return Ok(());
    }
    for i in 0..ctx.count {
        let (alpha, n, r) = LEMMA_CASES[i % LEMMA_CASES.len()];
        let c = varying_bandwidth(ctx.dec, rng);
        let params = format!("{} alpha={alpha} n={n} r={r}", ctx.tag(i));
        if first {
            let rep = lemma1_check(&c, alpha, n, r)?;
            let a = rep.theoretical.unwrap_or(f64::INFINITY);
            let measured = if rep.seminorm > 0.0 {
                rep.approximation_sup / (a * rep.seminorm)
            } else {
                0.0
            };
            out.at_most(CheckKind::Lemma1, params, measured, 1.0 + ctx.tol.grid, ctx.tol.grid);
            out.constant(format!("A(alpha={alpha},n={n},r={r})"), rep.ratio);
        } else {
            let rep = lemma2_check(&c, alpha, n, r, 2.0)?;
            let measured = if rep.pass { rep.ratio } else { f64::INFINITY };
            out.at_most(CheckKind::Lemma2, params, measured, f64::MAX, 0.0);
            out.constant(format!("C(alpha={alpha},n={n},r={r})"), rep.ratio);
        }
    }
    Ok(())
}

fn flavors_for(q: f64) -> Vec<Flavor> {
    Flavor::ALL
        .iter()
        .copied()
        .filter(|f| *f != Flavor::Modulus || q.is_infinite())
        .collect()
}

fn flavor_equivalence(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    let tol = ctx.tol.scale_invariance;
    for i in 0..ctx.count {
        let c = varying_bandwidth(ctx.dec, rng);
        let big = c.scale(Complex64::new(1e3, 0.0));
        for &(alpha, q) in &EQUIVALENCE_CASES {
            let r = BesovParams::minimal_order(alpha, q);
            let base = BesovParams::new(alpha, q, r, Flavor::DiscreteE)?;
            let reference = besov_norm(&c, &base)?;
            let reference_big = besov_norm(&big, &base)?;
            let mut worst: f64 = 0.0;
            for flavor in flavors_for(q) {
                let p = BesovParams::new(alpha, q, r, flavor)?;
                let ratio = besov_norm(&c, &p)? / reference;
                let ratio_big = besov_norm(&big, &p)? / reference_big;
                worst = worst.max(rel_dev(ratio, ratio_big));
                out.constant(format!("{flavor}/discrete_E(alpha={alpha},q={})", fmt_q(q)), ratio);
            }
            let params = format!("{} alpha={alpha} q={}", ctx.tag(i), fmt_q(q));
            out.at_most(CheckKind::FlavorEquivalence, params.clone() + " scale", worst, tol, tol);

            let integral = BesovParams::new(alpha, q, r, Flavor::IntegralE)?;
            let exact = besov_seminorm(&c, &integral)?;
            let quad = integral_besov_quadrature(&c, alpha, q)?;
            let qt = ctx.tol.quadrature;
            out.at_most(CheckKind::FlavorEquivalence, params + " quadrature", rel_dev(exact, quad), qt, qt);
        }
    }
    Ok(())
}

fn frame_equivalence(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    let tol = ctx.tol.reconstruction;
    let a = 2.0;
    for i in 0..ctx.count {
        let c = varying_bandwidth(ctx.dec, rng);
        let norm = c.norm();
        let bands = band_decompose(&c, a)?;
        let recon = bands.reconstruct().synthesize().sub(&c.synthesize())?.norm() / norm;
        let ortho = bands.orthogonality_defect() / (norm * norm);
        let mut split: f64 = 0.0;
        for n in 0..=bands.top_index() {
            let e = best_approx(&c, a.powi(n as i32))?;
            split = split.max((e * e - bands.tail_energy(n).powi(2)).abs() / (norm * norm));
        }
        let mut scale: f64 = 0.0;
        for &(alpha, q) in &EQUIVALENCE_CASES {
            let rep = equivalence_report(&c, alpha, q, a)?;
            let big = equivalence_report(&c.scale(Complex64::new(0.0, 1e3)), alpha, q, a)?;
            scale = scale.max(rel_dev(rep.ratio, big.ratio));
            out.constant(format!("frame/besov(alpha={alpha},q={},a={a})", fmt_q(q)), rep.ratio);
        }
        let measured = recon.max(ortho).max(split).max(scale);
        out.at_most(CheckKind::FrameEquivalence, ctx.tag(i), measured, tol, tol);
    }
    Ok(())
}

fn synthesis(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    let tol = ctx.tol.synthesis;
    let a = 2.0;
    let top = top_band(a, ctx.lmax());
    for i in 0..ctx.count {
        let alpha = rng.random_range(0.3..=2.0);
        let g = random_coefficients(ctx.dec, rng);
        let canonical = band_decompose(&g, a)?;
        let rep = synthesis_check(canonical.bands(), a, alpha)?;
        let params = format!("{} alpha={alpha:.6}", ctx.tag(i));
        out.at_most(CheckKind::Synthesis, params.clone() + " canonical", rep.ratio, 1.0 + tol, tol);

        let mut overlapping = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let gk = random_coefficients(ctx.dec, rng);
            let weight = rng.random_range(0.1..=1.0) * a.powf(-(k as f64) * alpha);
            overlapping.push(pw_project(&gk, a.powi(k as i32))?.scale(Complex64::new(weight, 0.0)));
        }
        let rep = synthesis_check(&overlapping, a, alpha)?;
        out.at_most(CheckKind::Synthesis, params + " overlapping", rep.ratio, 1.0 + tol, tol);
    }
    Ok(())
}

/// Number of complex times sampled per vector in the growth check.
pub const GROWTH_SAMPLES: usize = 20;

fn growth_bound(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    let tol = ctx.tol.growth;
    for i in 0..ctx.count {
        let omega = random_eigenvalue(ctx.dec, rng);
        let c = pw_project(&random_coefficients(ctx.dec, rng), omega)?;
        if c.norm() == 0.0 {
            continue;
        }
        let mut worst: f64 = 0.0;
        for _ in 0..GROWTH_SAMPLES {
            let z = Complex64::new(rng.random_range(-5.0..=5.0), rng.random_range(-2.0..=2.0));
            let ratio = c.schrodinger(z).norm() / ((omega * z.im.abs()).exp() * c.norm());
            worst = worst.max(ratio);
        }
        let params = format!("{} omega={omega:.6}", ctx.tag(i));
        out.at_most(CheckKind::GrowthBound, params, worst, 1.0 + tol, tol);
    }
    Ok(())
}

fn k_shape(ctx: &Context<'_>, rng: &mut ChaCha8Rng, out: &mut Collector) -> Result<()> {
    let tol = ctx.tol.k_shape;
    let lmax = ctx.lmax().max(1e-300);
    for i in 0..ctx.count {
        let c = random_coefficients(ctx.dec, rng);
        let r = rng.random_range(1..=2u32);
        let scale = lmax.powi(-(r as i32));
        let mut ts = [
            log_uniform(rng, 1e-3 * scale, 1e3 * scale),
            log_uniform(rng, 1e-3 * scale, 1e3 * scale),
            log_uniform(rng, 1e-3 * scale, 1e3 * scale),
        ];
        ts.sort_by(f64::total_cmp);
        let k: Vec<f64> = ts.iter().map(|&t| k_functional(&c, t, r)).collect::<Result<_>>()?;
        let monotone = (k[0] - k[1]).max(k[1] - k[2]).max(0.0);
        let chord = if ts[2] > ts[0] {
            ((ts[2] - ts[1]) * k[0] + (ts[1] - ts[0]) * k[2]) / (ts[2] - ts[0])
        } else {
            k[1]
        };
        let concave = (chord - k[1]).max(0.0);
        let measured = monotone.max(concave) / c.norm();
        let params = format!("{} r={r}", ctx.tag(i));
        out.at_most(CheckKind::KFunctional, params, measured, tol, tol);
    }
    Ok(())
}
