//! Fair multi-class classification as a contextual multi-armed bandit.
//!
//! Each round presents a context vector; the agent picks a class and observes
//! a signed reward `±W(a, g)` whose magnitude is scaled per sensitive state
//! (class, protected group) to counter subgroup imbalance. The crate ships:
//!
//! - [`numkit`] — deterministic numerical kernel (MLP + manual backprop, Adam,
//!   Sherman–Morrison inverse updates, seeded RNG streams);
//! - [`data`] — datasets, a controllable synthetic generator, bit-exact
//!   embedding IO, and the debiasing/rebalancing transforms;
//! - [`reward`] — the four reward-scale schemes (ρ+, ρ−, EO, IPW) plus the
//!   uniform control;
//! - [`agents`] — disjoint LinUCB, bandit DQN, bandit PPO, and a
//!   loss-reweighted supervised baseline behind one contract;
//! - [`metrics`] — accuracy, per-class TPR gaps, RMS GAP, macro-F1, and
//!   DTO-based model selection;
//! - [`harness`] — the training loop, multi-seed sweeps, and report writing.
//!
//! Start with the runnable programs under `examples/`; each one demonstrates
//! a single capability end to end. The `fairbandit` binary exposes the same
//! machinery as `gen-data`, `scales`, `train`, `sweep`, and `evaluate`
//! subcommands.

pub mod agents;
pub mod data;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod numkit;
pub mod reward;

pub use error::{Error, Result};
