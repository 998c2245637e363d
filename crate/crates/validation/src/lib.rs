//! Acceptance suite for `linksim`; see `tests/acceptance.rs`.
//!
//! Run `cargo test -p linksim-validation -- --nocapture --test-threads 1` for
//! the per-criterion report.
