use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pwspace::approx::{
    build_kernel, jackson_check, riesz_apply, riesz_identity_check, RieszConfig, DEFAULT_TRUNCATION,
};
use pwspace::decomposition::{band_decompose, equivalence_report, frame_norm, synthesis_check};
use pwspace::harness::report::load_report;
use pwspace::harness::suite::{jackson_kernel_order, random_vector};
use pwspace::harness::{
    build_operator, emit_report, load_vector, render_report, run_suite, save_vector, Builtin,
    CheckKind, CorpusParams, OperatorSource, OperatorSpec, ReportFormat, Tolerances, VectorFormat,
};
use pwspace::paley_wiener::{bandwidth, best_approx, pw_project, spectral_tail};
use pwspace::smoothness::{besov_norm, BesovParams, Flavor};
use pwspace::{eigh, HilbertVector, OperatorKind, SpectralDecomposition};

/// Paley-Wiener approximation and Besov smoothness on the spectrum of a finite operator.
#[derive(Parser)]
#[command(name = "pwspace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Eigenvalues of D and of the stored operator.
    Spectrum {
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Project a vector onto PW_omega and report E(f, omega), R(f, omega) and the bandwidth.
    Project {
        #[command(flatten)]
        op: OperatorArgs,
        #[command(flatten)]
        vector: VectorArgs,
        /// Band limit.
        #[arg(long)]
        omega: f64,
        /// Write the projection to this file (format from extension).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Besov norms of a vector, one per flavor.
    Besov {
        #[command(flatten)]
        op: OperatorArgs,
        #[command(flatten)]
        vector: VectorArgs,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Outer exponent; accepts `inf`.
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        /// Modulus order; defaults to the smallest admissible one.
        #[arg(long)]
        r: Option<u32>,
        /// Dyadic base for the discrete flavors.
        #[arg(long, default_value_t = 2.0)]
        base: f64,
        /// Restrict to these flavors (comma separated).
        #[arg(long, value_delimiter = ',')]
        flavor: Vec<Flavor>,
    },
    /// Split a vector into spectral bands (a^{k-1}, a^k].
    Decompose {
        #[command(flatten)]
        op: OperatorArgs,
        #[command(flatten)]
        vector: VectorArgs,
        #[arg(long, default_value_t = 2.0)]
        base: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Outer exponent; accepts `inf`.
        #[arg(long, default_value_t = 2.0)]
        q: f64,
    },
    /// Apply the Riesz operator and check the identity on the PW_omega part.
    Riesz {
        #[command(flatten)]
        op: OperatorArgs,
        #[command(flatten)]
        vector: VectorArgs,
        /// Band limit; defaults to the largest eigenvalue of D.
        #[arg(long)]
        omega: Option<f64>,
        /// Truncation K of the series over k in [-K, K].
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncation: u64,
        /// Power n in D^n f.
        #[arg(long, default_value_t = 1)]
        order: u32,
    },
    /// Jackson inequality through the quasi-interpolation operator Q.
    Jackson {
        #[command(flatten)]
        op: OperatorArgs,
        #[command(flatten)]
        vector: VectorArgs,
        #[arg(long)]
        omega: f64,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Even kernel order; defaults to the smallest even value >= m + 4.
        #[arg(long)]
        kernel_order: Option<u32>,
    },
    /// Run the verification suite over a seeded random corpus.
    Verify {
        #[command(flatten)]
        op: OperatorArgs,
        /// Corpus size per operator dimension.
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Operator dimensions for resizable builtins; the operator's own size by default.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Checks to run (comma separated); all by default.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckKind>,
        #[arg(long, default_value = "json")]
        format: ReportFormat,
        /// Report destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Re-render a saved JSON report.
    Report {
        /// Report written by `verify --format json`.
        input: PathBuf,
        #[arg(long, default_value = "csv")]
        format: ReportFormat,
        /// Print only failing records.
        #[arg(long)]
        failures: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// Matrix is L; D = L^{1/2}.
    #[value(name = "raw_L", alias = "raw-l")]
    RawL,
    /// Matrix is D.
    #[value(name = "raw_D", alias = "raw-d")]
    RawD,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "operator")]
struct SourceArgs {
    /// Cycle graph Laplacian on N vertices.
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
    /// Path graph Laplacian on N vertices.
    #[arg(long, value_name = "N")]
    path: Option<usize>,
    /// Complete graph Laplacian on N vertices.
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    /// Diagonal operator with the given entries.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    diagonal: Option<Vec<f64>>,
    /// Random positive semidefinite N x N matrix (seeded by --psd-seed).
    #[arg(long, value_name = "N")]
    random_psd: Option<usize>,
    /// Edge-list file: "u v [weight]" per line.
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
    /// Dense symmetric matrix as CSV rows.
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
}

#[derive(Args)]
struct OperatorArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value_t = 0)]
    psd_seed: u64,
    /// What the matrix holds.
    #[arg(long, value_enum, default_value = "raw_L")]
    kind: KindArg,
}

impl OperatorArgs {
    fn spec(&self) -> OperatorSpec {
        let s = &self.source;
        let source = if let Some(n) = s.cycle {
            OperatorSource::Builtin(Builtin::Cycle(n))
        } else if let Some(n) = s.path {
            OperatorSource::Builtin(Builtin::Path(n))
        } else if let Some(n) = s.complete {
            OperatorSource::Builtin(Builtin::Complete(n))
        } else if let Some(d) = &s.diagonal {
            OperatorSource::Builtin(Builtin::Diagonal(d.clone()))
        } else if let Some(n) = s.random_psd {
            OperatorSource::Builtin(Builtin::RandomPsd { n, seed: self.psd_seed })
        } else if let Some(p) = &s.edges {
            OperatorSource::EdgeList(p.clone())
        } else {
            OperatorSource::Matrix(s.matrix.clone().expect("clap enforces one operator source"))
        };
        let kind = match self.kind {
            KindArg::RawL => OperatorKind::RawL,
            KindArg::RawD => OperatorKind::RawD,
        };
        OperatorSpec { source, kind }
    }

    fn decompose(&self) -> Result<SpectralDecomposition> {
        let spec = self.spec();
        let op = build_operator(&spec).with_context(|| format!("building {spec}"))?;
        Ok(eigh(&op)?)
    }
}

#[derive(Args)]
struct VectorArgs {
    /// Vector file (CSV columns re,im or JSON [[re, im], ...]).
    #[arg(long, value_name = "FILE")]
    vector: Option<PathBuf>,
    /// Vector file format; inferred from the extension when absent.
    #[arg(long, value_name = "FORMAT")]
    vector_format: Option<VectorFormat>,
    /// Seed for a standard normal random vector when no file is given.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl VectorArgs {
    fn load(&self, dim: usize) -> Result<HilbertVector> {
        match &self.vector {
            Some(path) => {
                let format = match self.vector_format {
                    Some(f) => f,
                    None => VectorFormat::from_path(path)?,
                };
                load_vector(path, format, Some(dim)).with_context(|| format!("reading {}", path.display()))
            }
            None => Ok(random_vector(dim, &mut ChaCha8Rng::seed_from_u64(self.seed))),
        }
    }
}

#[derive(Args)]
struct ToleranceArgs {
    #[arg(long)]
    tol_plancherel: Option<f64>,
    #[arg(long)]
    tol_best_approx: Option<f64>,
    #[arg(long)]
    tol_bernstein: Option<f64>,
    #[arg(long)]
    tol_riesz_norm: Option<f64>,
    /// Riesz series truncation K used by the suite.
    #[arg(long)]
    riesz_truncation: Option<u64>,
    /// Slack for grid-evaluated suprema.
    #[arg(long)]
    tol_grid: Option<f64>,
    #[arg(long)]
    tol_q_tail: Option<f64>,
    #[arg(long)]
    tol_reconstruction: Option<f64>,
    #[arg(long)]
    tol_synthesis: Option<f64>,
    #[arg(long)]
    tol_growth: Option<f64>,
    #[arg(long)]
    tol_scale_invariance: Option<f64>,
    #[arg(long)]
    tol_quadrature: Option<f64>,
    #[arg(long)]
    tol_k_shape: Option<f64>,
}

impl ToleranceArgs {
    fn resolve(&self) -> Tolerances {
        let mut t = Tolerances::default();
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut t.plancherel, self.tol_plancherel);
        set(&mut t.best_approx, self.tol_best_approx);
        set(&mut t.bernstein, self.tol_bernstein);
        set(&mut t.riesz_norm, self.tol_riesz_norm);
        set(&mut t.grid, self.tol_grid);
        set(&mut t.q_tail, self.tol_q_tail);
        set(&mut t.reconstruction, self.tol_reconstruction);
        set(&mut t.synthesis, self.tol_synthesis);
        set(&mut t.growth, self.tol_growth);
        set(&mut t.scale_invariance, self.tol_scale_invariance);
        set(&mut t.quadrature, self.tol_quadrature);
        set(&mut t.k_shape, self.tol_k_shape);
        if let Some(k) = self.riesz_truncation {
            t.riesz_truncation = k;
        }
        t
    }
}

fn print_json(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Spectrum { op } => {
            let dec = op.decompose()?;
            print_json(&json!({
                "operator": op.spec().to_string(),
                "dim": dec.dim(),
                "eigenvalues": dec.eigenvalues(),
                "operator_eigenvalues": dec.operator_eigenvalues(),
            }))?;
            Ok(true)
        }
        Command::Project { op, vector, omega, out } => {
            let dec = op.decompose()?;
            let c = dec.transform(&vector.load(dec.dim())?)?;
            let p = pw_project(&c, omega)?;
            let bw = bandwidth(&c, 1e-12)?;
            if let Some(path) = &out {
                save_vector(path, &p.synthesize(), VectorFormat::from_path(path)?)?;
            }
            print_json(&json!({
                "omega": omega,
                "norm": c.norm(),
                "projected_norm": p.norm(),
                "best_approx": best_approx(&c, omega)?,
                "spectral_tail": spectral_tail(&c, omega)?,
                "bandwidth": bw.omega_f,
                "k_sequence_last": bw.k_sequence.last(),
            }))?;
            Ok(true)
        }
        Command::Besov { op, vector, alpha, q, r, base, flavor } => {
            let dec = op.decompose()?;
            let c = dec.transform(&vector.load(dec.dim())?)?;
            let r = r.unwrap_or_else(|| BesovParams::minimal_order(alpha, q));
            let flavors: Vec<Flavor> = if flavor.is_empty() {
                Flavor::ALL
                    .iter()
                    .copied()
                    .filter(|f| *f != Flavor::Modulus || q.is_infinite())
                    .collect()
            } else {
                flavor
            };
            let mut norms = serde_json::Map::new();
            for f in flavors {
                let p = BesovParams::new(alpha, q, r, f)?.with_base(base)?;
                norms.insert(f.name().to_string(), json!(besov_norm(&c, &p)?));
            }
            print_json(&json!({
                "alpha": alpha,
                "q": if q.is_finite() { json!(q) } else { json!("inf") },
                "r": r,
                "base": base,
                "norms": norms,
            }))?;
            Ok(true)
        }
        Command::Decompose { op, vector, base, alpha, q } => {
            let dec = op.decompose()?;
            let c = dec.transform(&vector.load(dec.dim())?)?;
            let bands = band_decompose(&c, base)?;
            let recon = bands.reconstruct().sub(&c)?.norm();
            let tails: Vec<f64> = (0..=bands.top_index()).map(|n| bands.tail_energy(n)).collect();
            let synth = synthesis_check(bands.bands(), base, alpha)?;
            let equiv = equivalence_report(&c, alpha, q, base)?;
            print_json(&json!({
                "base": base,
                "band_norms": bands.band_norms(),
                "tail_energies": tails,
                "reconstruction_error": recon,
                "orthogonality_defect": bands.orthogonality_defect(),
                "frame_norm": frame_norm(&bands, alpha, q)?,
                "equivalence": equiv,
                "synthesis": synth,
            }))?;
            Ok(synth.pass)
        }
        Command::Riesz { op, vector, omega, truncation, order } => {
            let dec = op.decompose()?;
            let c = dec.transform(&vector.load(dec.dim())?)?;
            let omega = omega.unwrap_or_else(|| dec.max_eigenvalue());
            let cfg = RieszConfig::with_truncation(omega, truncation)?;
            let rf = riesz_apply(&c, &cfg)?;
            let band = pw_project(&c, omega)?;
            let identity = if band.norm() > 0.0 {
                Some(riesz_identity_check(&band, omega, order, truncation)?)
            } else {
                None
            };
            let bound = (omega + cfg.tail_bound()) * c.norm();
            print_json(&json!({
                "omega": omega,
                "truncation": truncation,
                "riesz_norm": rf.norm(),
                "norm_bound": bound,
                "tail_bound": cfg.tail_bound(),
                "identity": identity,
            }))?;
            Ok(rf.norm() <= bound)
        }
        Command::Jackson { op, vector, omega, m, k, kernel_order } => {
            let dec = op.decompose()?;
            let c = dec.transform(&vector.load(dec.dim())?)?;
            let n = kernel_order.unwrap_or_else(|| jackson_kernel_order(m));
            let kernel = build_kernel(n, m)?;
            let rep = jackson_check(&c, omega, m, k, &kernel)?;
            print_json(&serde_json::to_value(&rep)?)?;
            Ok(rep.pass)
        }
        Command::Verify { op, count, seed, sizes, checks, format, out, tol } => {
            let sizes = if sizes.is_empty() { vec![op.decompose()?.dim()] } else { sizes };
            if sizes.contains(&0) {
                bail!("--sizes entries must be positive");
            }
            let checks = if checks.is_empty() { CheckKind::ALL.to_vec() } else { checks };
            let corpus = CorpusParams { count, seed, sizes };
            let report = run_suite(&op.spec(), &corpus, &checks, &tol.resolve())?;
            match &out {
                Some(path) => {
                    emit_report(&report, format, path)?;
                    let failed = report.failures().count();
                    eprintln!(
                        "{} records, {} failed, report written to {}",
                        report.records.len(),
                        failed,
                        path.display()
                    );
                }
                None => print!("{}", render_report(&report, format)?),
            }
            for f in report.failures() {
                eprintln!("FAIL {} {}: measured {} (tolerance {})", f.check, f.params, f.measured, f.tolerance);
            }
            Ok(report.pass)
        }
        Command::Report { input, format, failures } => {
            let mut report = load_report(&input).with_context(|| format!("reading {}", input.display()))?;
            if failures {
                report.records.retain(|r| !r.pass);
            }
            print!("{}", render_report(&report, format)?);
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
