//! Non-interactive proofs via strong Fiat-Shamir.
//!
//! The challenge hashes the statement identifier together with the
//! precommitments and the commitment, so a proof is bound to the exact
//! statement it was made for. Proofs carry no commitments; the verifier
//! rebuilds them from the challenge and responses and re-hashes.
//!
//! Wire format (version 1):
//!
//! ```text
//! proof    = 0x01 varint(n) n * prefixed(element) scalar(challenge) response
//! response = varint(k) k * scalar                     leaf
//!          | varint(n) n * response                   AND
//!          | varint(n) n * (scalar(sub-challenge) response)  OR
//! ```
//!
//! Which alternative applies is decided by the statement, which is why
//! [`deserialize`] takes it as input.

use rand_core::CryptoRngCore;
use sha2::{Digest, Sha256};

use crate::codec::{DecodeError, Reader, Writer};
use crate::dsl::{Statement, StatementId, Witness};
use crate::engine::{prover_commit_with, prover_respond, CommitmentTree, ResponseTree};
use crate::error::{Error, Result};
use crate::group::{GroupElement, OrderTag, Scalar};
use crate::primitives::{expand_for_prover, expand_for_verifier, precommitment_groups};

pub use crate::engine::recompute_commitment;

pub const PROOF_VERSION: u8 = 0x01;
const HASH_VERSION: u8 = 0x01;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NIProof {
    pub precommitments: Vec<GroupElement>,
    pub challenge: Scalar,
    pub response: ResponseTree,
}

impl NIProof {
    pub fn to_bytes(&self) -> Vec<u8> {
        serialize(self)
    }

    pub fn from_bytes(bytes: &[u8], stmt: &Statement) -> Result<Self> {
        deserialize(bytes, stmt)
    }
}

/// Proves `stmt` with the values carried by its secrets.
pub fn prove(stmt: &Statement, rng: &mut dyn CryptoRngCore) -> Result<NIProof> {
    prove_with(stmt, stmt.witness()?, rng)
}

/// Proves `stmt` with an explicit witness. Values on the secret handles are
/// used for secrets the witness leaves out.
pub fn prove_with(stmt: &Statement, witness: Witness, rng: &mut dyn CryptoRngCore) -> Result<NIProof> {
    stmt.validate_composition()?;
    let expansion = expand_for_prover(stmt, witness, rng)?;
    let (state, commitment) = prover_commit_with(&expansion.statement, &expansion.witness, rng)?;
    let challenge = challenge_hash(
        stmt.order(),
        &stmt.statement_id(),
        &expansion.precommitments,
        &commitment,
    );
    let response = prover_respond(state, &challenge)?;
    Ok(NIProof {
        precommitments: expansion.precommitments,
        challenge,
        response,
    })
}

/// Checks a proof against a statement template; secret values are ignored.
///
/// Returns `Ok(false)` for proofs that do not verify and an error for proofs
/// that do not fit the statement. Precommitments rejected by a primitive's
/// check surface as [`Error::Validation`].
pub fn verify(stmt: &Statement, proof: &NIProof) -> Result<bool> {
    stmt.validate_composition()?;
    let expanded = expand_for_verifier(stmt, &proof.precommitments, true)?;
    let commitment = match recompute_commitment(&expanded, &proof.challenge, &proof.response) {
        Ok(c) => c,
        Err(Error::ChallengeSum | Error::InconsistentResponses) => return Ok(false),
        Err(e) => return Err(e),
    };
    let expected = challenge_hash(stmt.order(), &stmt.statement_id(), &proof.precommitments, &commitment);
    Ok(expected == proof.challenge)
}

/// `SHA-256(0x01 || prefixed(id) || varint(n) n*prefixed(pre) || varint(m) m*prefixed(leaf))`
/// read big-endian and reduced mod q.
pub fn challenge_hash(
    order: OrderTag,
    id: &StatementId,
    precommitments: &[GroupElement],
    commitment: &CommitmentTree,
) -> Scalar {
    let leaves = commitment.leaves();
    let mut w = Writer::new();
    w.u8(HASH_VERSION).prefixed(id.as_bytes());
    w.varint(precommitments.len() as u64);
    precommitments.iter().for_each(|e| {
        w.element(e);
    });
    w.varint(leaves.len() as u64);
    leaves.iter().for_each(|e| {
        w.element(e);
    });
    let digest: [u8; 32] = Sha256::digest(w.into_bytes()).into();
    Scalar::from_digest(order, &digest)
}

pub fn serialize(proof: &NIProof) -> Vec<u8> {
    let mut w = Writer::new();
    w.u8(PROOF_VERSION).varint(proof.precommitments.len() as u64);
    for e in &proof.precommitments {
        w.element(e);
    }
    w.scalar(&proof.challenge);
    write_response(&proof.response, &mut w);
    w.into_bytes()
}

fn write_response(t: &ResponseTree, w: &mut Writer) {
    match t {
        ResponseTree::Leaf(s) => {
            w.varint(s.len() as u64);
            s.iter().for_each(|s| {
                w.scalar(s);
            });
        }
        ResponseTree::And(children) => {
            w.varint(children.len() as u64);
            children.iter().for_each(|c| write_response(c, w));
        }
        ResponseTree::Or(children) => {
            w.varint(children.len() as u64);
            for (c, child) in children {
                w.scalar(c);
                write_response(child, w);
            }
        }
    }
}

/// Decodes a proof for `stmt`. Never panics on malformed input.
pub fn deserialize(bytes: &[u8], stmt: &Statement) -> Result<NIProof> {
    let mut r = Reader::new(bytes);
    let version = r.u8()?;
    if version != PROOF_VERSION {
        return Err(DecodeError::Version(version).into());
    }
    let groups = precommitment_groups(stmt);
    let n = r.length()?;
    if n != groups.len() {
        return Err(DecodeError::ShapeMismatch(format!(
            "statement takes {} precommitment elements, proof has {n}",
            groups.len()
        ))
        .into());
    }
    let precommitments = groups.iter().map(|g| r.element(*g)).collect::<Result<Vec<_>, _>>()?;
    let challenge = r.scalar(stmt.order())?;
    let expanded = expand_for_verifier(stmt, &precommitments, false)?;
    let response = read_response(&expanded, &mut r)?;
    r.finish()?;
    Ok(NIProof {
        precommitments,
        challenge,
        response,
    })
}

fn read_response(stmt: &Statement, r: &mut Reader<'_>) -> Result<ResponseTree, DecodeError> {
    let order = stmt.order();
    let n = r.length()?;
    let expect = |want: usize, what: &str| {
        if n == want {
            Ok(())
        } else {
            Err(DecodeError::ShapeMismatch(format!(
                "{what} expects {want} entries, found {n}"
            )))
        }
    };
    match stmt {
        Statement::DLRep(leaf) => {
            expect(leaf.expr().terms().len(), "leaf")?;
            let s = (0..n).map(|_| r.scalar(order)).collect::<Result<_, _>>()?;
            Ok(ResponseTree::Leaf(s))
        }
        Statement::And(node) => {
            expect(node.children().len(), "AND")?;
            let c = node
                .children()
                .iter()
                .map(|c| read_response(c, r))
                .collect::<Result<_, _>>()?;
            Ok(ResponseTree::And(c))
        }
        Statement::Or(node) => {
            expect(node.children().len(), "OR")?;
            let c = node
                .children()
                .iter()
                .map(|c| Ok((r.scalar(order)?, read_response(c, r)?)))
                .collect::<Result<_, DecodeError>>()?;
            Ok(ResponseTree::Or(c))
        }
        Statement::Extended(_) => Err(DecodeError::ShapeMismatch("unexpanded extended node".into())),
    }
}
