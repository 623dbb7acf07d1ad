//! Shadow Markoff trees over exact dual rationals.
//!
//! The crate computes the tree of solutions to `A² + B² + C² = (3 − σε)ABC`
//! grown from a root `(1 + αε, 1 + βε, 1 + γε)`, the linear transfer
//! matrices of its shadow part, and evidence about which roots keep every
//! shadow nonnegative.

pub mod cli;
pub mod dual;
pub mod error;
pub mod linear;
pub mod positivity;
pub mod rational;
pub mod sequences;
pub mod tree;

pub use dual::{
    check_shadow_equation, classical_mutate, dual_add, dual_mul, mutate_at, sigma_of_root, DualRational,
    ShadowTriple, Sigma, Slot,
};
pub use error::{Error, Result};
pub use linear::{barycenter_check, shadow_at, transfer_matrix, ShadowVector, TransferMatrix};
pub use rational::Rational;
pub use tree::{
    branch_sequence, build_tree, path, sage_move_left, sage_move_right, Move, MovePath, ShadowTree, SixTuple,
};
