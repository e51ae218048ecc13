//! Exact lattice arithmetic for the classification of extremal elliptic K3
//! surfaces: root lattices, discriminant forms, even binary forms, the
//! overlattice pipeline, and induced embeddings into fibration graphs.

// index loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod binary_form;
pub mod discriminant;
pub mod dynkin;
pub mod error;
pub mod fibration;
pub mod golden;
pub mod lattice;
pub mod matrix;
pub mod pipeline;
pub mod root_type;
pub mod short_vectors;

pub use error::{Error, Result};
