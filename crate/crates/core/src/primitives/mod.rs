//! Extended primitives: statements that need a precommitment phase before
//! the sigma protocol runs, and the ones shipped with the library.

mod dlne;
mod extended;
mod pedersen;
mod range;

pub use dlne::{dl_not_equal, dlne_validate, DLNotEqual};
pub use extended::{
    expand_for_prover, expand_for_verifier, precommitment_groups, ExtendedStatement, Precommitment, ProverExpansion,
};
pub use pedersen::pedersen_commit;
pub use range::{range_bits, range_stmt, PowerTwoRange, RangeStmt, MAX_RANGE_BITS};
