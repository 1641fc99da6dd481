//! Graphs attached to concrete models F_p[x]/(f) of finite fields.
//!
//! Every model gets a directed multigraph on its elements: an additive edge
//! y -> y + s and a multiplicative edge y -> s*y (y != 0) for each s in the
//! Frobenius orbit of x. The crate builds these graphs and their subgraphs and
//! covers, analyses connectivity, girth, diameter and Eulerian structure,
//! computes Laplacian spectra, and classifies models up to graph isomorphism
//! with exact automorphism-group orders.

pub mod algo;
pub mod canon;
pub mod census;
pub mod error;
pub mod field;
pub mod graph;
pub mod spectral;

pub use error::{Error, Result};
pub use field::{FieldModel, Poly};
