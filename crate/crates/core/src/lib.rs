//! Approximation algorithms for the unit disk cover problem: cover a planar
//! point set with as few radius-1 disks as possible.
//!
//! The nine algorithms are reachable through [`Algorithm`]; [`oracle`]
//! verifies covers and solves small instances exactly, [`gen`] draws seeded
//! synthetic instances and [`bench`] runs timed, verified trials.

pub mod algorithm;
pub mod bench;
pub mod classic;
pub mod fastcover;
pub mod gen;
pub mod geom;
pub mod grid_index;
pub mod io;
pub mod oracle;
pub mod sweep;

pub use algorithm::Algorithm;
pub use geom::{BBox, Cover, GridKey, Point};
pub use oracle::{optimal_cover, verify_cover, VerifyReport};
