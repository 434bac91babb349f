//! Collective-decision mechanisms for ML pipelines, plus a black-box audit
//! harness that scores decision systems against social-choice axioms.
//!
//! The crate is organized by capability:
//!
//! - [`prefs`]: outcomes, ballots (cardinal, approval, ranking, veto),
//!   weighted preference profiles, and pairwise comparison semantics.
//! - [`audit`]: quantitative axiom auditing (participation, anonymity,
//!   unanimity, majority, Pareto) of any [`audit::ScfAdapter`].
//! - [`voting`]: single-winner rules, approval committees (AV, PAV,
//!   sequential PAV) with EJR checking, weighted medians, the proportional
//!   veto core, and rank aggregation.
//! - [`portioning`]: budget/probability division across type systems, with
//!   veto-based exclusion.
//! - [`epistemic`]: label aggregation and EM reliability estimation for
//!   annotator pools.
//! - [`temporal`]: credit-carrying sequential decisions and fairness audits
//!   over decision logs.
//! - [`harness`]: mock systems, canonical suite/report I/O, and a
//!   multi-stage scenario runner.

pub mod audit;
pub mod epistemic;
pub mod error;
pub mod harness;
pub mod portioning;
pub mod prefs;
pub mod temporal;
pub mod voting;

pub use error::{Error, Result};
