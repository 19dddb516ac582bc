//! Test corpus generation and independent oracles.
//!
//! This crate is test support shared across the workspace: a seeded generator
//! of goal-graph scripts with known-good witness proofs and planted
//! corruptions, hand-built fixture scenarios, a brute-force enumeration
//! oracle for substitution candidates, and an in-process TCP server double
//! speaking the remote prover protocol.
//!
//! The oracles here deliberately do not share code with the production
//! algorithms they check.

pub mod fixtures;
pub mod gen;
pub mod oracle;
pub mod server;

pub use gen::{gen_erp_instance, gen_instance, ErpInstance, GenConfig, Instance};
pub use oracle::{enumerate_candidates, maximal_verifying, Candidate};
pub use server::MiniServer;
