//! Resistance Laplacian `R^L = Diag(RTr) − R` and resistance signless
//! Laplacian `R^Q = Diag(RTr) + R` of connected graphs, where `R` holds the
//! effective resistances between vertices with every edge a unit resistor.
//!
//! The crate builds these matrices, computes their spectra and the resistance
//! Laplacian energy, and checks the numeric pipeline against analytic forms
//! for complete graphs, complete bipartite graphs and cycles.
//!
//! ```
//! use resq::graph::{generate, FamilySpec};
//! use resq::energy::resistance_laplacian_energy;
//!
//! let k4 = generate(FamilySpec::Complete { n: 4 }).unwrap();
//! let report = resistance_laplacian_energy(&k4).unwrap();
//! assert!((report.le_r - 3.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod closed_forms;
pub mod energy;
pub mod error;
pub mod format;
pub mod graph;
pub mod resistance;
pub mod spectral;
pub mod verify;

/// Dense real matrix used for every graph matrix in the crate.
pub type DenseMatrix = nalgebra::DMatrix<f64>;

pub use error::{Error, Result};
pub use graph::{FamilySpec, Graph};
