//! Compile polycubes into box-pleated tetrakis crease patterns and check
//! the folded result exactly.
//!
//! The pipeline is [`polycube`] (input and build plans), [`construct`]
//! (inductive cube insertion on a growing sheet, using [`gadgets`] and
//! [`pattern`] surgery), then [`foldsim`], which evaluates the emitted
//! pattern with exact integer isometries and checks it against the target.

pub mod cli;
pub mod construct;
pub mod foldsim;
pub mod gadgets;
pub mod io;
pub mod pattern;
pub mod polycube;

pub use construct::{compile, fold_rect_seam, fold_rect_seamless, fold_square, paper_size, CompileResult, FaceMap, Mode};
pub use pattern::{Crease, CreasePattern, FoldAngle, GridPoint};
pub use polycube::{parse_polycube, Cell, Dir, Face, Polycube};
