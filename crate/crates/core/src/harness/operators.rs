//! Example operators and file ingestion.

use std::fmt;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{OperatorKind, SymmetricOperator};

/// Built-in operator families.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    /// Laplacian of the cycle graph on `N` nodes.
    Cycle(usize),
    /// Laplacian of the path graph.
    Path(usize),
    /// Laplacian of the complete graph.
    Complete(usize),
    /// Diagonal matrix with the given entries.
    Diagonal(Vec<f64>),
    /// `B Bᵀ / (2N)` for an `N × 2N` standard normal `B`.
    RandomPsd { n: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorSource {
    EdgeList(PathBuf),
    Matrix(PathBuf),
    Builtin(Builtin),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorSpec {
    pub source: OperatorSource,
    pub kind: OperatorKind,
}

impl OperatorSpec {
    pub fn builtin(b: Builtin) -> Self {
        Self {
            source: OperatorSource::Builtin(b),
            kind: OperatorKind::RawL,
        }
    }

    pub fn with_kind(mut self, kind: OperatorKind) -> Self {
        self.kind = kind;
        self
    }

    /// The same family at size `n`; fixed-size sources are returned unchanged.
    pub fn resized(&self, n: usize) -> Self {
        let source = match &self.source {
            OperatorSource::Builtin(Builtin::Cycle(_)) => OperatorSource::Builtin(Builtin::Cycle(n)),
            OperatorSource::Builtin(Builtin::Path(_)) => OperatorSource::Builtin(Builtin::Path(n)),
            OperatorSource::Builtin(Builtin::Complete(_)) => {
                OperatorSource::Builtin(Builtin::Complete(n))
            }
            OperatorSource::Builtin(Builtin::RandomPsd { seed, .. }) => {
                OperatorSource::Builtin(Builtin::RandomPsd { n, seed: *seed })
            }
            other => other.clone(),
        };
        Self {
            source,
            kind: self.kind,
        }
    }

    /// Whether [`OperatorSpec::resized`] changes the dimension.
    pub fn is_scalable(&self) -> bool {
        matches!(
            self.source,
            OperatorSource::Builtin(
                Builtin::Cycle(_) | Builtin::Path(_) | Builtin::Complete(_) | Builtin::RandomPsd { .. }
            )
        )
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            OperatorSource::EdgeList(p) => write!(f, "edges:{}", p.display())?,
            OperatorSource::Matrix(p) => write!(f, "matrix:{}", p.display())?,
            OperatorSource::Builtin(Builtin::Cycle(n)) => write!(f, "cycle({n})")?,
            OperatorSource::Builtin(Builtin::Path(n)) => write!(f, "path({n})")?,
            OperatorSource::Builtin(Builtin::Complete(n)) => write!(f, "complete({n})")?,
            OperatorSource::Builtin(Builtin::Diagonal(v)) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "diagonal({})", parts.join(","))?
            }
            OperatorSource::Builtin(Builtin::RandomPsd { n, seed }) => {
                write!(f, "random_psd({n},{seed})")?
            }
        }
        write!(f, " [{}]", self.kind)
    }
}

pub fn build_operator(spec: &OperatorSpec) -> Result<SymmetricOperator> {
    match &spec.source {
        OperatorSource::EdgeList(p) => {
            let text = read(p)?;
            let (n, edges) = parse_edge_list(&text)?;
            laplacian(n, &edges, spec.kind)
        }
        OperatorSource::Matrix(p) => parse_matrix_csv(&read(p)?, spec.kind),
        OperatorSource::Builtin(b) => build_builtin(b, spec.kind),
    }
}

fn read(p: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(p)?)
}

fn require_nodes(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::BadDimension("operator needs at least one node".into()));
    }
    Ok(())
}

fn build_builtin(b: &Builtin, kind: OperatorKind) -> Result<SymmetricOperator> {
    match b {
        Builtin::Cycle(n) => {
            require_nodes(*n)?;
            let edges: Vec<(usize, usize, f64)> = match n {
                1 => Vec::new(),
                2 => vec![(0, 1, 1.0)],
                _ => (0..*n).map(|i| (i, (i + 1) % n, 1.0)).collect(),
            };
            laplacian(*n, &edges, kind)
        }
        Builtin::Path(n) => {
            require_nodes(*n)?;
            let edges: Vec<_> = (1..*n).map(|i| (i - 1, i, 1.0)).collect();
            laplacian(*n, &edges, kind)
        }
        Builtin::Complete(n) => {
            require_nodes(*n)?;
            let edges: Vec<_> = (0..*n)
                .flat_map(|i| (i + 1..*n).map(move |j| (i, j, 1.0)))
                .collect();
            laplacian(*n, &edges, kind)
        }
        Builtin::Diagonal(values) => {
            require_nodes(values.len())?;
            SymmetricOperator::diagonal(values, kind)
        }
        Builtin::RandomPsd { n, seed } => {
            require_nodes(*n)?;
            SymmetricOperator::new(*n, random_psd(*n, *seed), kind)
        }
    }
}

/// Row-major `B Bᵀ / (2N)`.
pub fn random_psd(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols = 2 * n;
    let b: Vec<f64> = (0..n * cols).map(|_| StandardNormal.sample(&mut rng)).collect();
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let v = (0..cols).map(|k| b[i * cols + k] * b[j * cols + k]).sum::<f64>() / cols as f64;
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    a
}

/// Combinatorial Laplacian `Deg − Adj` of a weighted graph.
pub fn laplacian(n: usize, edges: &[Edge], kind: OperatorKind) -> Result<SymmetricOperator> {
    require_nodes(n)?;
    let mut a = vec![0.0; n * n];
    for &(u, v, w) in edges {
        if u >= n || v >= n {
            return Err(Error::BadDimension(format!("edge ({u}, {v}) outside {n} nodes")));
        }
        a[u * n + v] -= w;
        a[v * n + u] -= w;
        a[u * n + u] += w;
        a[v * n + v] += w;
    }
    SymmetricOperator::new(n, a, kind)
}

/// A weighted undirected edge `(u, v, w)`.
pub type Edge = (usize, usize, f64);

/// Parses `u v [weight]` lines (0-based ids, `#` comments). Returns the node
/// count `1 + max id` and the edges.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<Edge>)> {
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}: '{}'", lineno + 1, raw.trim()));
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(bad("expected 'u v [weight]'"));
        }
        let u: usize = fields[0].parse().map_err(|_| bad("bad node id"))?;
        let v: usize = fields[1].parse().map_err(|_| bad("bad node id"))?;
        let w: f64 = match fields.get(2) {
            Some(s) => s.parse().map_err(|_| bad("bad weight"))?,
            None => 1.0,
        };
        if !(w > 0.0) || !w.is_finite() {
            return Err(bad("weight must be positive"));
        }
        if u == v {
            return Err(bad("self-loop"));
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v, w));
    }
    let n = max_id
        .map(|m| m + 1)
        .ok_or_else(|| Error::BadDimension("edge list has no edges".into()))?;
    Ok((n, edges))
}

/// Dense matrix, one comma-separated row per line.
pub fn parse_matrix_csv(text: &str, kind: OperatorKind) -> Result<SymmetricOperator> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: bad number '{s}'", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    require_nodes(n)?;
    if let Some(row) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::BadDimension(format!(
            "matrix has {n} rows but a row of length {}",
            row.len()
        )));
    }
    SymmetricOperator::from_rows(&rows, kind)
}
