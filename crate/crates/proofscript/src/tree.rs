//! Block structure recovery.

use crate::step::{StepKind, StepSequence};

/// A `proof`...`qed` span over step indices (1-based, inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSpan {
    /// Index of the opening `proof` step.
    pub start: usize,
    /// Index of the matching `qed` step.
    pub end: usize,
    /// Nesting level, outermost = 1.
    pub depth: usize,
}

impl BlockSpan {
    pub fn contains(&self, i: usize) -> bool {
        self.start <= i && i <= self.end
    }
}

/// All block spans of a sequence plus the zero-width `by`-clause slots, which
/// substitution treats uniformly with blocks (`by m` abbreviates
/// `proof m qed`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockTree {
    /// Proper `proof`...`qed` spans, ordered by start index.
    pub blocks: Vec<BlockSpan>,
    /// Indices of terminal-method steps (zero-width pseudo-spans).
    pub by_slots: Vec<usize>,
}

impl BlockTree {
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn max_depth(&self) -> usize {
        self.blocks.iter().map(|b| b.depth).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("sequence has unbalanced blocks")]
    Unbalanced,
}

/// Compute the block forest of a balanced sequence.
pub fn block_tree(seq: &StepSequence) -> Result<BlockTree, TreeError> {
    if !seq.balanced() {
        return Err(TreeError::Unbalanced);
    }
    let mut blocks = Vec::new();
    let mut by_slots = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for s in &seq.steps {
        match s.kind {
            StepKind::BlockOpen => stack.push(s.index),
            StepKind::BlockClose => {
                let start = stack.pop().ok_or(TreeError::Unbalanced)?;
                blocks.push(BlockSpan { start, end: s.index, depth: stack.len() + 1 });
            }
            StepKind::TerminalMethod => by_slots.push(s.index),
            _ => {}
        }
    }
    if !stack.is_empty() {
        return Err(TreeError::Unbalanced);
    }
    blocks.sort_by_key(|b| b.start);
    Ok(BlockTree { blocks, by_slots })
}

/// Deepest proper block containing step `i`, if any.
pub fn innermost_block(i: usize, tree: &BlockTree) -> Option<BlockSpan> {
    tree.blocks.iter().filter(|b| b.contains(i)).max_by_key(|b| b.depth).copied()
}
