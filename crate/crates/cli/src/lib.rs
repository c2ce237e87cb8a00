//! Library half of the experiment driver: configuration handling and the
//! experiment implementations, shared between the binary and the test suites.

pub mod config;
pub mod experiments;
