//! Evaluation harness: mock systems, suite I/O, report emission, and the
//! multi-stage scenario runner.

pub mod mocks;
pub mod report;
pub mod scenario;
pub mod suite;
