//! Carrier for the `acceptance` test target; see `tests/acceptance.rs` in catalan-core.
