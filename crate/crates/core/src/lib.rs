// `!(x > 0.0)` guards are deliberate: they reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cache;
pub mod divisor;
pub mod error;
pub mod error_terms;
pub mod exppair;
pub mod gamma;
pub mod precise;
pub mod quadrature;
pub mod scan;
pub mod verify;
pub mod voronoi;
pub mod zeta;

pub use error::{Error, Result};
