//! Exact folded-state oracle.
//!
//! Every face of a crease pattern is placed by an integer isometry, found by
//! walking across creases from the paper's bottom-left corner. Coverage is
//! tallied on quarter-triangle atoms so that partial squares are visible.

pub mod evaluate;
pub mod isometry;
pub mod subdivide;
pub mod verify;

pub use evaluate::{
    check_loop_closure, evaluate, evaluate_with, layer_accounting, total_atoms, Coverage, EvalOptions, FoldError,
    FoldedState, Traversal,
};
pub use isometry::Isometry;
pub use subdivide::{subdivide, subdivide_with, SubdivisionFace};
pub use verify::{verify, FaceCensus, SeamStatus, VerificationReport};
