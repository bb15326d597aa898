//! Minimal deterministic numerical kernel.
//!
//! Everything downstream (agents, harness) is built on the pieces here:
//! dense f64 vectors/matrices, a one-hidden-layer ReLU MLP with manual
//! backpropagation, Adam, stable categorical sampling, a central-difference
//! gradient checker, and the Sherman–Morrison rank-one inverse update.
//!
//! All operations are pure functions of their inputs plus an explicit RNG
//! state; identical seeds give bitwise-identical outputs.

pub mod adam;
pub mod gradcheck;
pub mod linalg;
pub mod mlp;
pub mod rng;
pub mod sherman;
pub mod softmax;

pub use adam::{adam_step_slice, AdamHyper, AdamState};
pub use gradcheck::finite_diff_check;
pub use linalg::{dot, norm, Matrix};
pub use mlp::{Mlp, MlpGrads};
pub use sherman::InverseCovariance;
pub use softmax::{argmax, entropy_from_logits, log_softmax, softmax, softmax_sample};
