//! Machine-independent statement identifiers.
//!
//! Secrets get ordinals in order of first occurrence, so two statements over
//! the same bases that share secrets differently get different identifiers,
//! while rebuilding a statement from fresh secrets gives the same one.
//!
//! Layout (version 1), depth first:
//!
//! ```text
//! id       = 0x01 node
//! node     = 0x01 prefixed(lhs) varint(n) n * (prefixed(base) varint(ordinal))   DLRep
//!          | 0x02 varint(n) n * node                                             And
//!          | 0x03 varint(n) n * node                                             Or
//!          | 0x04 prefixed(name) prefixed(params) varint(k) k * varint(ordinal)  Extended
//! ```

use std::collections::HashMap;
use std::fmt;

use crate::codec::Writer;

use super::secret::SecretId;
use super::statement::Statement;

pub const STATEMENT_ID_VERSION: u8 = 0x01;

const TAG_DLREP: u8 = 0x01;
const TAG_AND: u8 = 0x02;
const TAG_OR: u8 = 0x03;
const TAG_EXTENDED: u8 = 0x04;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StatementId(Vec<u8>);

impl StatementId {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StatementId(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

impl Statement {
    pub fn statement_id(&self) -> StatementId {
        let ordinals: HashMap<SecretId, u64> = self
            .collect_secrets()
            .iter()
            .enumerate()
            .map(|(i, s)| (s.id(), i as u64))
            .collect();
        let mut w = Writer::new();
        w.u8(STATEMENT_ID_VERSION);
        emit(self, &ordinals, &mut w);
        StatementId(w.into_bytes())
    }
}

fn emit(stmt: &Statement, ordinals: &HashMap<SecretId, u64>, w: &mut Writer) {
    match stmt {
        Statement::DLRep(leaf) => {
            w.u8(TAG_DLREP).element(leaf.lhs());
            w.varint(leaf.expr().terms().len() as u64);
            for (secret, base) in leaf.expr().terms() {
                w.element(base).varint(ordinals[&secret.id()]);
            }
        }
        Statement::And(node) => {
            w.u8(TAG_AND).varint(node.children().len() as u64);
            node.children().iter().for_each(|c| emit(c, ordinals, w));
        }
        Statement::Or(node) => {
            w.u8(TAG_OR).varint(node.children().len() as u64);
            node.children().iter().for_each(|c| emit(c, ordinals, w));
        }
        Statement::Extended(node) => {
            let hooks = node.hooks();
            w.u8(TAG_EXTENDED)
                .prefixed(hooks.name().as_bytes())
                .prefixed(&hooks.public_params());
            let secrets = hooks.secrets();
            w.varint(secrets.len() as u64);
            for s in &secrets {
                w.varint(ordinals[&s.id()]);
            }
        }
    }
}
