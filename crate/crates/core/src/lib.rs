//! Connected subtraction games on graphs.
//!
//! In CSG(L) a move removes a connected set of vertices whose size lies in
//! `L`, and the remaining graph must stay connected (the empty graph counts).
//! This crate computes exact Grundy values, evaluates closed forms for paths
//! and subdivided stars, and detects and certifies periodicity of Grundy
//! sequences along appended paths.

pub mod certify;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod graph;
pub mod harness;
pub mod notation;
pub mod periodicity;
pub mod solver;
pub mod star;
pub mod subtraction;

pub use certify::{certify_period, PeriodCertificate};
pub use closed_forms::{ClosedForms, Family124, PartialValue};
pub use error::{CsgError, Result};
pub use graph::{append_path, make_path, make_subdivided_star, AppendSpec, Graph, VertexSet};
pub use notation::{FamilySpec, GraphSpec};
pub use periodicity::{
    appended_sequence, detect_period, format_sequence, parse_sequence, GrundySequence,
};
pub use solver::{
    grundy, grundy_star, grundy_sum, mex, nim_sum, outcome, GraphSolver, GrundyValue, Outcome,
    Position, StarSolver, TranspositionTable,
};
pub use star::{star_removals, MoveKind, StarMove, SubdividedStar};
pub use subtraction::SubtractionSet;
