//! Exact verification of the strong spectral property for graph-patterned
//! symmetric matrices.

pub mod arith;
pub mod families;
pub mod graph;
pub mod linalg;
pub mod matrix;
pub mod registry;
pub mod rules;
pub mod verifier;

pub use arith::{ArithError, FieldScalar, QuadExt, Rational};
pub use graph::{pair, Distances, Graph, GraphError, Pair, Structure};
pub use matrix::{DenseMatrix, MatrixError, SymMatrix};
pub use verifier::{check_ssp, build_verification_matrix, Mode, SspReport, VerificationMatrix, VerifierError};
pub use rules::{certify, CertifyOutcome, CertifyStatus, ForcingState, RuleError, TraceStep};
pub use families::{FamilyError, FamilySpec};
pub use registry::{list_scenarios, run_scenario, Evidence, ScenarioReport};
