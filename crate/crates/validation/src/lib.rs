//! Host crate for the acceptance target; see tests/acceptance.rs.
