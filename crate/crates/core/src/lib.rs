//! Bures geometry of undisplaced squeezed thermal states.
//!
//! States `rho = Z S(r, theta) exp(-beta K0) S^dag(r, theta)` form a
//! three-parameter family. This crate provides
//!
//! - the closed-form fidelity trace and Bures distance between two such states
//!   ([`closedform`]), reduced through the SU(1,1) matrix representation
//!   ([`su11`]);
//! - the induced statistical-distance metric, its scalar curvature and
//!   `beta`-segment lengths ([`geometry`]);
//! - measurement-count bounds and curvature extrema ([`estimation`]);
//! - a truncated Fock-space oracle that recomputes fidelities and metrics from
//!   dense matrices ([`fockoracle`]), plus the verification report and scan
//!   tables driven by the `buresgeo` command line tool.

pub mod cli;
pub mod closedform;
mod error;
pub mod estimation;
pub mod fockoracle;
pub mod format;
pub mod geometry;
pub mod numeric;
pub mod scan;
pub mod states;
pub mod su11;
pub mod verify;

pub use error::{Error, Result};
pub use states::StateParams;
