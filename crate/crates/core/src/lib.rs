//! Exact evaluation of the top-weight gl(N) weight system on open Jacobi
//! diagrams, together with the partition counting and generating-function
//! machinery used to bound the dimension of primitive Vassiliev invariants.
//!
//! - [`diagram`]: dart-based combinatorial maps, B-states and traced surfaces
//! - [`casimir`]: sparse big-integer polynomials in the Casimir variables `c_j`
//! - [`weights`]: the signed state sum and its top homogeneous part
//! - [`families`]: wheels, Pont Neuf diagrams and their closed forms
//! - [`linalg`]: fraction-free rank and the triangularity certificate
//! - [`partitions`]: `p`, `p2`, `adm2`, the lower/upper bound counts
//! - [`genfunc`]: power series of the low-`k` dimension generating functions

pub mod casimir;
pub mod diagram;
pub mod error;
pub mod families;
pub mod genfunc;
pub mod linalg;
pub mod partitions;
pub mod weights;

pub use casimir::{CasimirMonomial, CasimirPoly};
pub use diagram::{BState, Diagram, RibbonGraph, Sign, SurfaceTrace, Violation};
pub use error::{Error, Result};
pub use families::PontNeufParams;
pub use partitions::Partition;
pub use weights::StateSumOptions;
