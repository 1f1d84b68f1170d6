//! Exact minimum 0-1 loss linear classification.
//!
//! For `N` points in general position in `D` dimensions, some optimal
//! boundary passes through `D` of the points. [`engine::solve`] enumerates
//! those boundaries incrementally, keeping a running 0-1 loss per candidate
//! and discarding candidates whose loss exceeds a certified upper bound
//! (see [`bounds`]). [`oracle`] provides an independent brute-force solver
//! and arrangement-counting checks.

pub mod bounds;
pub mod data;
pub mod dataset;
pub mod engine;
pub mod error;
pub mod eval;
pub mod geometry;
pub mod loss;
pub mod oracle;

pub use dataset::{encode_labels, Dataset, Item, Label};
pub use engine::{solve, solve_with, SearchStats, SolveOptions, SolveReport};
pub use error::{Error, Result};
pub use geometry::{fit_hyperplane, Hyperplane, Sense};
pub use loss::{assign, loss_pair, loss_total, Assignment};
