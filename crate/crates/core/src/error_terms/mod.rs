//! The mean-square error term `E(T)`, its explicit formulas, `E*(t)` and
//! statistics of both.

pub mod atkinson;
pub mod balasubramanian;
pub mod e_star;
pub mod exponent;
pub mod mean_square;
pub mod moments;
pub mod short_interval;

pub use atkinson::{e_atkinson, AtkinsonEval};
pub use balasubramanian::{e_balasubramanian, BalasubramanianEval};
pub use e_star::{e_star, e_star_scan, ErrorTermSample};
pub use exponent::{empirical_exponent, DyadicMaxima};
pub use mean_square::{e_direct, MeanSquare};
pub use moments::{moment_scan, MomentResult, MomentScan};
pub use short_interval::{short_interval_ms, BumpProfile};
