//! Statement construction: secrets, expressions, DLRep leaves and AND/OR
//! composition, plus the checks and identifiers computed over statements.

mod id;
mod secret;
mod statement;

pub use id::{StatementId, STATEMENT_ID_VERSION};
pub use secret::{Expression, Secret, SecretId, Witness};
pub use statement::{Conjunction, DLRep, Disjunction, ExtendedNode, Statement};
