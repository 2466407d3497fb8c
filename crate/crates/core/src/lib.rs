//! Random-walk cover time on scale-free small-world graphs.
//!
//! The crate builds Apollonian, pseudofractal and Barabási–Albert networks,
//! computes effective resistances and resistance diameters, and estimates or
//! computes cover, hitting and commute times so that resistance-based cover
//! time bounds can be checked numerically.
//!
//! ```
//! use covertime_core::generators::apollonian;
//! use covertime_core::resistance::{resistance_table, Method};
//!
//! let a2 = apollonian(2).unwrap();
//! let table = resistance_table(&a2.graph, Method::Dense).unwrap();
//! assert!(table.diameter() <= 5.0 / 3.0);
//! ```

pub mod bounds;
pub mod error;
pub mod generators;
pub mod graph;
pub mod ingest;
pub mod resistance;
pub mod verify;
pub mod walks;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId, Relabel};
pub use ingest::DatasetReport;
pub use resistance::{Method, ResistanceTable, SpectralData};
pub use walks::{WalkConfig, WalkStats};
