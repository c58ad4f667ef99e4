//! Certified real and complex interval arithmetic, binomial tail bounds,
//! root separation and denominator bounds.

pub mod complex;
pub mod denominator;
pub mod dyadic;
pub mod interval;
pub mod root_gap;
pub mod tails;

pub use complex::ComplexInterval;
pub use denominator::{theorem3_bound, theorem3_exponent_scan, ExponentScan, SpecialCase, Theorem3Bound};
pub use dyadic::{Dyadic, Rounding};
pub use interval::{Interval, DEFAULT_PRECISION, MAX_PRECISION};
pub use root_gap::{analytic_upper_bound, theorem1_epsilon, theorem1_epsilon_auto, RootGap};
pub use tails::{tail_bounds, tail_bounds_auto, TailBounds};
