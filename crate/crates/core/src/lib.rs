//! Exact arithmetic, ideal theory and certified numerics for the Catalan
//! equation `x^p - y^q = 1` over the imaginary quadratic fields of class
//! number one.

pub mod analytic;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod field;
pub mod ideal;
pub mod primes;
pub mod quadint;
pub mod report;
pub mod search;

pub use criteria::{cassels_check, is_perfect_qth_power, lemma2_verify, lemma4_gcd, CasselsReport, GcdSign};
pub use error::{Error, Result};
pub use field::{field_spec, units, FieldSpec, OmegaKind, UnitGroup};
pub use ideal::{principal_ideal, split_type, Ideal, SplitType};
pub use quadint::QuadInt;
pub use report::{Record, Verdict};
pub use search::{enumerate_by_norm, search_catalan, search_equal_exponent, SearchReport};
