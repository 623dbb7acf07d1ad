use std::fmt;

use num_traits::Signed;

use crate::dual::Slot;
use crate::error::{Error, Result};
use crate::linear::ShadowVector;
use crate::rational::{digit_count, Rational};
use crate::tree::{Move, MovePath, SixTuple};

use super::geometry::ChartPoint;

/// Replays stop once a value grows past this many decimal digits.
pub const DEFAULT_DIGIT_BUDGET: usize = 1_000_000;

/// A node and slot whose shadow is negative.
///
/// `step_index` indexes the `path` listing of `word`: 0 is the root, 1 the
/// node after the mandatory right move, and `2 + k` the node after `k` free
/// moves. Negative root shadows are therefore reported with an empty word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativityWitness {
    pub word: MovePath,
    pub step_index: usize,
    pub slot: Slot,
    pub value: Rational,
}

pub fn slot_name(slot: Slot) -> &'static str {
    match slot {
        Slot::First => "alpha",
        Slot::Second => "beta",
        Slot::Third => "gamma",
    }
}

impl fmt::Display for NegativityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "word={:?} row={} field={} value={}",
            self.word.to_string(),
            self.step_index,
            slot_name(self.slot),
            self.value
        )
    }
}

fn first_negative(node: &SixTuple) -> Option<(Slot, &Rational)> {
    Slot::ALL
        .into_iter()
        .zip(node.shadows())
        .find(|(_, v)| v.is_negative())
}

/// Breadth-first search (shorter words first, `l` before `r`, slots in
/// order α, β, γ) for the first negative shadow among nodes whose word has
/// at most `max_depth` moves. Prefix nodes are scanned first.
pub fn find_witness_for_root(root: &ShadowVector, max_depth: usize) -> Option<NegativityWitness> {
    let mut node = SixTuple::root(root.alpha.clone(), root.beta.clone(), root.gamma.clone());
    for step_index in 0..2 {
        if let Some((slot, value)) = first_negative(&node) {
            return Some(NegativityWitness {
                word: MovePath::empty(),
                step_index,
                slot,
                value: value.clone(),
            });
        }
        let mv = if step_index == 0 { Move::Right } else { Move::Left };
        node = node.step(mv).expect("positive bodies");
    }

    let mut level = vec![(MovePath::empty(), node)];
    for depth in 0..=max_depth {
        for (word, node) in &level {
            if let Some((slot, value)) = first_negative(node) {
                return Some(NegativityWitness {
                    word: word.clone(),
                    step_index: depth + 2,
                    slot,
                    value: value.clone(),
                });
            }
        }
        if depth == max_depth {
            break;
        }
        level = level
            .iter()
            .flat_map(|(word, node)| {
                [Move::Left, Move::Right].map(|mv| {
                    (word.child(mv), node.step(mv).expect("positive bodies"))
                })
            })
            .collect();
    }
    None
}

pub fn find_witness(p: &ChartPoint, max_depth: usize) -> Result<Option<NegativityWitness>> {
    if max_depth == 0 {
        return Err(Error::Precondition("witness search depth must be at least 1".into()));
    }
    Ok(find_witness_for_root(&p.to_root(), max_depth))
}

/// Every shadow of every node with word length ≤ `depth`, prefix nodes
/// included, is nonnegative for the root `(α, β, 1)`.
pub fn is_positive_to_depth(p: &ChartPoint, depth: usize) -> bool {
    find_witness_for_root(&p.to_root(), depth).is_none()
}

/// Walks `word` from `root` and returns every row, failing once any value
/// exceeds `digit_budget` digits.
pub fn replay_path(root: &ShadowVector, word: &MovePath, digit_budget: usize) -> Result<Vec<SixTuple>> {
    let mut node = SixTuple::root(root.alpha.clone(), root.beta.clone(), root.gamma.clone());
    let mut rows = vec![node.clone()];
    for &mv in [Move::Right, Move::Left].iter().chain(word.moves()) {
        node = node.step(mv)?;
        if node.fields().iter().any(|v| digit_count(v) > digit_budget) {
            return Err(Error::DigitBudget {
                budget: digit_budget,
            });
        }
        rows.push(node.clone());
    }
    Ok(rows)
}

/// The shadow value a witness points at, recomputed along its word.
pub fn replay_witness(root: &ShadowVector, witness: &NegativityWitness, digit_budget: usize) -> Result<Rational> {
    let rows = replay_path(root, &witness.word, digit_budget)?;
    let row = rows.get(witness.step_index).ok_or_else(|| {
        Error::Precondition(format!(
            "row {} is past the end of a {}-row path",
            witness.step_index,
            rows.len()
        ))
    })?;
    Ok(row.shadows()[witness.slot.index()].clone())
}
