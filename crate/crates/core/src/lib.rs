//! Resistance function, tau constant and Arakelov-Green functions on metrized
//! graphs, in exact rational or floating point arithmetic.
//!
//! ```
//! use metrized_green::{parse_graph, tau_constant, Network, Rational, Scalar};
//!
//! let graph = parse_graph::<Rational>(r#"{"vertices": ["a", "b", "c"], "edges": [
//!     {"id": "e1", "from": "a", "to": "b", "length": 1},
//!     {"id": "e2", "from": "b", "to": "c", "length": 1},
//!     {"id": "e3", "from": "c", "to": "a", "length": 1}]}"#).unwrap();
//! let net = Network::from_graph(&graph).unwrap();
//! assert_eq!(tau_constant(&net).to_text(), "1/4");
//! ```

pub mod error;
pub mod graph;
pub mod green;
pub mod laplacian;
pub mod matrix;
pub mod network;
pub mod oracle;
pub mod pointwise;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{parse_graph, Edge, EdgeId, MetrizedGraph, Point, Side, VertexId};
pub use green::{
    green_can, green_divisor, tau_constant, tau_constant_from, value_matrix, Divisor, DivisorGreen,
    GreenForm, ValueMatrix,
};
pub use laplacian::{build_laplacian, pseudo_inverse, LaplacianMatrix, PseudoInverse};
pub use matrix::DenseMatrix;
pub use network::{EdgeDeletedData, Network, ResistanceMatrix};
pub use oracle::{oracle_resistance, oracle_tau};
pub use pointwise::{resistance_points, voltage_points};
pub use scalar::{Rational, Scalar};
