//! Interactive sigma-protocol execution over composed statements.
//!
//! Responses follow `s = r - c x (mod q)` and leaves verify as
//! `R = lhs^c prod base_i^{s_i}`. Secrets shared between conjuncts share one
//! randomizer, so their responses coincide and the verifier checks that.
//! A disjunction simulates the children flagged as simulated under random
//! sub-challenges; the first honest child takes whatever is left of the
//! challenge. Every child of a disjunction opens a fresh randomizer scope.
//!
//! The engine runs on concrete statements; extended nodes have to be
//! expanded first (see [`crate::primitives::expand_for_prover`]).

mod tree;

use std::collections::HashMap;

use rand_core::CryptoRngCore;

use crate::dsl::{SecretId, Statement, Witness};
use crate::error::{Error, Result};
use crate::group::{multi_exp, OrderTag, Scalar};

pub use tree::{CommitmentTree, ResponseTree, Transcript};

type Scope = HashMap<SecretId, Scalar>;

#[derive(Debug)]
enum Plan {
    Leaf {
        randomizers: Vec<Scalar>,
        values: Vec<Scalar>,
    },
    And(Vec<Plan>),
    Or(Vec<Branch>),
}

#[derive(Debug)]
enum Branch {
    /// `None` marks the child that absorbs the remaining challenge.
    Honest {
        plan: Plan,
        challenge: Option<Scalar>,
    },
    Simulated {
        challenge: Scalar,
        response: ResponseTree,
    },
}

/// Prover state between commitment and response. Consumed by
/// [`prover_respond`], so it cannot answer two challenges.
#[derive(Debug)]
pub struct ProverState {
    statement: Statement,
    commitment: CommitmentTree,
    plan: Plan,
}

impl ProverState {
    pub fn statement(&self) -> &Statement {
        &self.statement
    }

    pub fn commitment(&self) -> &CommitmentTree {
        &self.commitment
    }
}

/// First move, with secret values taken from the statement's secrets.
pub fn prover_commit(stmt: &Statement, rng: &mut dyn CryptoRngCore) -> Result<(ProverState, CommitmentTree)> {
    prover_commit_with(stmt, &stmt.witness()?, rng)
}

/// First move with an explicit witness.
pub fn prover_commit_with(
    stmt: &Statement,
    witness: &Witness,
    rng: &mut dyn CryptoRngCore,
) -> Result<(ProverState, CommitmentTree)> {
    stmt.validate_composition()?;
    let (plan, commitment) = commit(stmt, witness, &mut Scope::new(), rng)?;
    let state = ProverState {
        statement: stmt.clone(),
        commitment: commitment.clone(),
        plan,
    };
    Ok((state, commitment))
}

fn commit(
    stmt: &Statement,
    witness: &Witness,
    scope: &mut Scope,
    rng: &mut dyn CryptoRngCore,
) -> Result<(Plan, CommitmentTree)> {
    match stmt {
        Statement::DLRep(leaf) => {
            let order = leaf.lhs().order();
            let mut randomizers = Vec::with_capacity(leaf.expr().terms().len());
            let mut values = Vec::with_capacity(randomizers.capacity());
            for secret in leaf.expr().secrets() {
                randomizers.push(*scope.entry(secret.id()).or_insert_with(|| Scalar::random(order, rng)));
                values.push(witness.resolve(secret)?);
            }
            let r = multi_exp(&leaf.bases(), &randomizers)?;
            Ok((Plan::Leaf { randomizers, values }, CommitmentTree::Leaf(r)))
        }
        Statement::And(node) => {
            let (plans, trees) = node
                .children()
                .iter()
                .map(|c| commit(c, witness, scope, rng))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip();
            Ok((Plan::And(plans), CommitmentTree::And(trees)))
        }
        Statement::Or(node) => {
            if node.simulated().iter().all(|&s| s) {
                return Err(Error::AllSimulated);
            }
            let order = stmt.order();
            let mut absorber_taken = false;
            let mut branches = Vec::with_capacity(node.children().len());
            let mut trees = Vec::with_capacity(node.children().len());
            for (child, &simulated) in node.children().iter().zip(node.simulated()) {
                if simulated {
                    let challenge = Scalar::random(order, rng);
                    let (tree, response) = simulate_node(child, &challenge, &mut Scope::new(), rng)?;
                    branches.push(Branch::Simulated { challenge, response });
                    trees.push(tree);
                } else {
                    let challenge = if absorber_taken {
                        Some(Scalar::random(order, rng))
                    } else {
                        absorber_taken = true;
                        None
                    };
                    let (plan, tree) = commit(child, witness, &mut Scope::new(), rng)?;
                    branches.push(Branch::Honest { plan, challenge });
                    trees.push(tree);
                }
            }
            Ok((Plan::Or(branches), CommitmentTree::Or(trees)))
        }
        Statement::Extended(_) => Err(Error::Unexpanded),
    }
}

/// Verifier's random challenge.
pub fn verifier_challenge(order: OrderTag, rng: &mut dyn CryptoRngCore) -> Scalar {
    Scalar::random(order, rng)
}

/// Final move. Fails if the response does not verify against the prover's
/// own commitment, which happens when a relation declared honest is false.
pub fn prover_respond(state: ProverState, challenge: &Scalar) -> Result<ResponseTree> {
    if challenge.order() != state.statement.order() {
        return Err(Error::OrderMismatch);
    }
    let response = respond(&state.plan, challenge);
    match recompute_commitment(&state.statement, challenge, &response) {
        Ok(recomputed) if recomputed == state.commitment => Ok(response),
        Ok(_) => Err(Error::SelfCheck("a relation declared honest does not hold".into())),
        Err(e) => Err(Error::SelfCheck(e.to_string())),
    }
}

fn respond(plan: &Plan, challenge: &Scalar) -> ResponseTree {
    match plan {
        Plan::Leaf { randomizers, values } => ResponseTree::Leaf(
            randomizers
                .iter()
                .zip(values)
                .map(|(r, x)| *r - *challenge * *x)
                .collect(),
        ),
        Plan::And(children) => ResponseTree::And(children.iter().map(|p| respond(p, challenge)).collect()),
        Plan::Or(branches) => {
            let fixed = branches
                .iter()
                .filter_map(|b| match b {
                    Branch::Simulated { challenge, .. } => Some(*challenge),
                    Branch::Honest { challenge, .. } => *challenge,
                })
                .fold(Scalar::zero(challenge.order()), |acc, c| acc + c);
            let remainder = *challenge - fixed;
            ResponseTree::Or(
                branches
                    .iter()
                    .map(|b| match b {
                        Branch::Simulated { challenge, response } => (*challenge, response.clone()),
                        Branch::Honest { plan, challenge } => {
                            let c = challenge.unwrap_or(remainder);
                            (c, respond(plan, &c))
                        }
                    })
                    .collect(),
            )
        }
    }
}

/// An accepting transcript for `challenge`, produced without any secret
/// values.
pub fn simulate(stmt: &Statement, challenge: &Scalar, rng: &mut dyn CryptoRngCore) -> Result<Transcript> {
    let (commitment, response) = simulate_node(stmt, challenge, &mut Scope::new(), rng)?;
    Ok(Transcript {
        commitment,
        challenge: *challenge,
        response,
    })
}

fn simulate_node(
    stmt: &Statement,
    challenge: &Scalar,
    scope: &mut Scope,
    rng: &mut dyn CryptoRngCore,
) -> Result<(CommitmentTree, ResponseTree)> {
    match stmt {
        Statement::DLRep(leaf) => {
            let order = leaf.lhs().order();
            let responses: Vec<Scalar> = leaf
                .expr()
                .secrets()
                .map(|s| *scope.entry(s.id()).or_insert_with(|| Scalar::random(order, rng)))
                .collect();
            let r = leaf_commitment(leaf, challenge, &responses)?;
            Ok((CommitmentTree::Leaf(r), ResponseTree::Leaf(responses)))
        }
        Statement::And(node) => {
            let (trees, responses) = node
                .children()
                .iter()
                .map(|c| simulate_node(c, challenge, scope, rng))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip();
            Ok((CommitmentTree::And(trees), ResponseTree::And(responses)))
        }
        Statement::Or(node) => {
            let n = node.children().len();
            let mut challenges: Vec<Scalar> = (1..n).map(|_| Scalar::random(challenge.order(), rng)).collect();
            let used = challenges
                .iter()
                .fold(Scalar::zero(challenge.order()), |acc, c| acc + *c);
            challenges.push(*challenge - used);
            let mut trees = Vec::with_capacity(n);
            let mut responses = Vec::with_capacity(n);
            for (child, c) in node.children().iter().zip(challenges) {
                let (tree, response) = simulate_node(child, &c, &mut Scope::new(), rng)?;
                trees.push(tree);
                responses.push((c, response));
            }
            Ok((CommitmentTree::Or(trees), ResponseTree::Or(responses)))
        }
        Statement::Extended(_) => Err(Error::Unexpanded),
    }
}

fn leaf_commitment(
    leaf: &crate::dsl::DLRep,
    challenge: &Scalar,
    responses: &[Scalar],
) -> Result<crate::group::GroupElement> {
    let mut bases = Vec::with_capacity(responses.len() + 1);
    bases.push(*leaf.lhs());
    bases.extend(leaf.expr().bases().copied());
    let mut exps = Vec::with_capacity(responses.len() + 1);
    exps.push(*challenge);
    exps.extend_from_slice(responses);
    Ok(multi_exp(&bases, &exps)?)
}

/// Reconstructs the commitment that `(challenge, response)` answers.
///
/// Fails with [`Error::ShapeMismatch`] if the response does not fit the
/// statement, [`Error::ChallengeSum`] if an OR node's sub-challenges do not
/// add up, and [`Error::InconsistentResponses`] if a secret gets two
/// different responses within one scope.
pub fn recompute_commitment(stmt: &Statement, challenge: &Scalar, response: &ResponseTree) -> Result<CommitmentTree> {
    if challenge.order() != stmt.order() {
        return Err(Error::ShapeMismatch("challenge from a different scalar field".into()));
    }
    recompute(stmt, challenge, response, &mut Scope::new())
}

fn recompute(
    stmt: &Statement,
    challenge: &Scalar,
    response: &ResponseTree,
    scope: &mut Scope,
) -> Result<CommitmentTree> {
    match (stmt, response) {
        (Statement::DLRep(leaf), ResponseTree::Leaf(responses)) => {
            let terms = leaf.expr().terms();
            if responses.len() != terms.len() {
                return Err(Error::ShapeMismatch(format!(
                    "leaf has {} terms but {} responses",
                    terms.len(),
                    responses.len()
                )));
            }
            if responses.iter().any(|s| s.order() != challenge.order()) {
                return Err(Error::ShapeMismatch("response from a different scalar field".into()));
            }
            for ((secret, _), s) in terms.iter().zip(responses) {
                if *scope.entry(secret.id()).or_insert(*s) != *s {
                    return Err(Error::InconsistentResponses);
                }
            }
            Ok(CommitmentTree::Leaf(leaf_commitment(leaf, challenge, responses)?))
        }
        (Statement::And(node), ResponseTree::And(children)) => {
            if children.len() != node.children().len() {
                return Err(Error::ShapeMismatch("AND arity".into()));
            }
            let trees = node
                .children()
                .iter()
                .zip(children)
                .map(|(s, r)| recompute(s, challenge, r, scope))
                .collect::<Result<Vec<_>>>()?;
            Ok(CommitmentTree::And(trees))
        }
        (Statement::Or(node), ResponseTree::Or(children)) => {
            if children.len() != node.children().len() {
                return Err(Error::ShapeMismatch("OR arity".into()));
            }
            if children.iter().any(|(c, _)| c.order() != challenge.order()) {
                return Err(Error::ShapeMismatch(
                    "sub-challenge from a different scalar field".into(),
                ));
            }
            let sum = children
                .iter()
                .fold(Scalar::zero(challenge.order()), |acc, (c, _)| acc + *c);
            if sum != *challenge {
                return Err(Error::ChallengeSum);
            }
            let trees = node
                .children()
                .iter()
                .zip(children)
                .map(|(s, (c, r))| recompute(s, c, r, &mut Scope::new()))
                .collect::<Result<Vec<_>>>()?;
            Ok(CommitmentTree::Or(trees))
        }
        (Statement::Extended(_), _) => Err(Error::Unexpanded),
        _ => Err(Error::ShapeMismatch(
            "response tree does not follow the statement".into(),
        )),
    }
}

/// Checks a transcript. Malformed transcripts are errors, forgeries are
/// `Ok(false)`.
pub fn verify_transcript(stmt: &Statement, transcript: &Transcript) -> Result<bool> {
    match recompute_commitment(stmt, &transcript.challenge, &transcript.response) {
        Ok(recomputed) => {
            if !recomputed.same_shape(&transcript.commitment) {
                return Err(Error::ShapeMismatch(
                    "commitment tree does not follow the statement".into(),
                ));
            }
            Ok(recomputed == transcript.commitment)
        }
        Err(Error::ChallengeSum | Error::InconsistentResponses) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Recovers the witness of a one-term leaf from two accepting transcripts
/// with the same commitment and different challenges:
/// `x = (s1 - s2) / (c2 - c1)`.
pub fn extract_secret(t1: &Transcript, t2: &Transcript, leaf: &Statement) -> Result<Scalar> {
    let Statement::DLRep(rep) = leaf else {
        return Err(Error::Extraction("statement is not a representation leaf"));
    };
    if rep.expr().terms().len() != 1 {
        return Err(Error::Extraction("leaf must have exactly one term"));
    }
    if t1.commitment != t2.commitment {
        return Err(Error::Extraction("transcripts have different commitments"));
    }
    if t1.challenge == t2.challenge {
        return Err(Error::Extraction("transcripts have equal challenges"));
    }
    let (ResponseTree::Leaf(s1), ResponseTree::Leaf(s2)) = (&t1.response, &t2.response) else {
        return Err(Error::ShapeMismatch("expected leaf responses".into()));
    };
    let ([s1], [s2]) = (s1.as_slice(), s2.as_slice()) else {
        return Err(Error::ShapeMismatch("expected one response per transcript".into()));
    };
    let denominator = (t2.challenge - t1.challenge).invert().expect("challenges differ");
    Ok((*s1 - *s2) * denominator)
}
