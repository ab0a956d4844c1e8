//! Composable sigma-protocol zero-knowledge proofs.
//!
//! Statements are trees of discrete-logarithm representations joined by
//! AND and OR, plus extended primitives (inequality of discrete logs, range
//! membership) that run a precommitment round before the sigma protocol.
//! [`nizk`] turns them into non-interactive proofs; [`engine`] exposes the
//! interactive three-move protocol.

pub mod codec;
pub mod dsl;
pub mod engine;
pub mod error;
pub mod group;
pub mod nizk;
pub mod primitives;

pub use dsl::{Expression, Secret, Statement, Witness};
pub use error::{Error, Result};
pub use group::{Group, GroupElement, Scalar};
pub use nizk::{prove, verify, NIProof};
