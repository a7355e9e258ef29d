//! Greedy arborally-satisfied-set execution in the geometric BST model, the
//! weighted dynamic finger bound, and the baselines used to compare them.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: keys, access sequences, weight assignments, points and point sets.
//! - [`geometry`]: the arboral satisfaction predicate and its diagnostics.
//! - [`greedy`]: the online greedy row completion and full sweeps.
//! - [`opt`]: exact minimum satisfied supersets for tiny instances.
//! - [`bounds`]: the weighted dynamic finger bound, static finger trees and the
//!   weights/tree constructions.
//! - [`splay`]: an instrumented bottom-up splay tree.
//! - [`workloads`]: seeded sequence generators and trace files.
//! - [`harness`]: experiments, constant fitting and verification suites.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod bounds;
pub mod error;
pub mod geometry;
pub mod greedy;
pub mod harness;
pub mod model;
pub mod opt;
pub mod splay;
pub mod workloads;

pub use error::{Error, Result};
pub use model::{AccessSequence, CostReport, Key, Point, PointSet, WeightAssignment};
