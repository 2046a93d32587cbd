//! Homology of finite cyclic covers, Milnor fibers of hyperplane multiarrangements,
//! multinets, parallel connections and polarizations, and certificates of integer torsion.

pub mod algebra;
pub mod arrangement;
pub mod error;
pub mod fpgroups;
pub mod io;
pub mod jumploci;
pub mod milnor;
pub mod multinet;
pub mod parallel;

pub use error::{Error, Result};
