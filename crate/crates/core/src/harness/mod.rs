//! Operator ingestion, vector files, the verification suite and its reports.

pub mod io;
pub mod operators;
pub mod oracles;
pub mod report;
pub mod suite;

pub use io::{load_vector, save_vector, VectorFormat};
pub use operators::{build_operator, Builtin, OperatorSource, OperatorSpec};
pub use report::{emit_report, render_report, CheckRecord, ReportFormat, VerificationReport};
pub use suite::{run_suite, CheckKind, CorpusParams, Tolerances};
