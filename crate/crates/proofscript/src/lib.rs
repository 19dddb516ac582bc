//! Lexical analysis of block-structured proof scripts.
//!
//! Splits Isar-like proof text into a flat sequence of proof steps, recovers
//! the hierarchical `proof`...`qed` block structure, and renders step
//! sequences back to text. Everything here is purely syntactic: no prover is
//! consulted and malformed input is handled best-effort, since the expected
//! input is noisy machine-generated proof text.

mod lex;
mod render;
mod step;
mod tree;

pub use lex::{normalize_text, scan_words, Word, WordKind};
pub use render::{render, render_steps};
pub use step::{parse, split_steps, ParseIssue, ProofStep, StepKind, StepSequence};
pub use tree::{block_tree, innermost_block, BlockSpan, BlockTree, TreeError};
