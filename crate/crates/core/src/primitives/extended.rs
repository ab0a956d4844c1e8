use std::fmt;

use rand_core::CryptoRngCore;

use crate::dsl::{Secret, Statement, Witness};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupTag, OrderTag, Scalar};

/// Output of [`ExtendedStatement::precommit`].
pub struct Precommitment {
    /// Published alongside the proof.
    pub elements: Vec<GroupElement>,
    /// Values for the primitive's internal secrets.
    pub witness: Vec<(Secret, Scalar)>,
}

impl fmt::Debug for Precommitment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Precommitment")
            .field("elements", &self.elements)
            .field("internal_secrets", &self.witness.len())
            .finish()
    }
}

/// A primitive that is not a plain composition of representations.
///
/// Before the sigma protocol runs, the prover publishes precommitment
/// elements; both sides then build a concrete statement from them, and the
/// verifier additionally checks them with [`validate`](Self::validate).
/// The constructed statement may contain DLRep, AND and OR nodes but no
/// further extended nodes.
pub trait ExtendedStatement: fmt::Debug + Send + Sync {
    /// Stable name, part of the statement identifier.
    fn name(&self) -> &'static str;

    /// Canonical encoding of the public parameters, part of the statement
    /// identifier.
    fn public_params(&self) -> Vec<u8>;

    /// Secrets supplied by the caller, in declaration order.
    fn secrets(&self) -> Vec<Secret>;

    fn order(&self) -> OrderTag;

    /// Group of each precommitment element; its length is the number of
    /// precommitment elements.
    fn precommitment_groups(&self) -> Vec<GroupTag>;

    /// Prover side: computes the precommitment and internal secret values.
    fn precommit(&self, witness: &Witness, rng: &mut dyn CryptoRngCore) -> Result<Precommitment>;

    /// Precommitment elements for a simulated disjunct. They must be
    /// distributed like honest ones and pass [`validate`](Self::validate).
    fn simulate_precommit(&self, rng: &mut dyn CryptoRngCore) -> Vec<GroupElement>;

    /// Builds the concrete statement. The prover passes its witness so the
    /// primitive can set simulation flags on internal disjunctions.
    fn construct_stmt(&self, precommitments: &[GroupElement], witness: Option<&Witness>) -> Result<Statement>;

    /// Verifier side check of the precommitment.
    fn validate(&self, precommitments: &[GroupElement]) -> Result<()>;
}

/// A statement with every extended node replaced by its constructed
/// statement, as seen by the prover.
#[derive(Debug, Clone)]
pub struct ProverExpansion {
    pub statement: Statement,
    pub precommitments: Vec<GroupElement>,
    pub witness: Witness,
}

/// Runs the precommit phase on every extended node, depth first.
///
/// Extended nodes below a simulated disjunct get simulated precommitments.
pub fn expand_for_prover(
    stmt: &Statement,
    mut witness: Witness,
    rng: &mut dyn CryptoRngCore,
) -> Result<ProverExpansion> {
    let mut precommitments = Vec::new();
    let statement = expand_prover(stmt, false, &mut witness, &mut precommitments, rng)?;
    Ok(ProverExpansion {
        statement,
        precommitments,
        witness,
    })
}

fn expand_prover(
    stmt: &Statement,
    simulated: bool,
    witness: &mut Witness,
    out: &mut Vec<GroupElement>,
    rng: &mut dyn CryptoRngCore,
) -> Result<Statement> {
    match stmt {
        Statement::DLRep(_) => Ok(stmt.clone()),
        Statement::And(node) => {
            if !stmt.contains_extended() {
                return Ok(stmt.clone());
            }
            let children = node
                .children()
                .iter()
                .map(|c| expand_prover(c, simulated, witness, out, rng))
                .collect::<Result<Vec<_>>>()?;
            Statement::and(children)
        }
        Statement::Or(node) => {
            if !stmt.contains_extended() {
                return Ok(stmt.clone());
            }
            let children = node
                .children()
                .iter()
                .zip(node.simulated())
                .map(|(c, &sim)| expand_prover(c, simulated || sim, witness, out, rng))
                .collect::<Result<Vec<_>>>()?;
            Statement::or(children, node.simulated().to_vec())
        }
        Statement::Extended(node) => {
            let hooks = node.hooks();
            let (elements, constructed) = if simulated {
                let elements = hooks.simulate_precommit(rng);
                check_precommitments(hooks, &elements)?;
                let constructed = hooks.construct_stmt(&elements, None)?;
                (elements, constructed)
            } else {
                let pre = hooks.precommit(witness, rng)?;
                check_precommitments(hooks, &pre.elements)?;
                for (secret, value) in &pre.witness {
                    witness.insert(secret, *value)?;
                }
                let constructed = hooks.construct_stmt(&pre.elements, Some(witness))?;
                (pre.elements, constructed)
            };
            if constructed.contains_extended() {
                return Err(Error::NestedExtended);
            }
            out.extend(elements);
            Ok(constructed)
        }
    }
}

/// Rebuilds the concrete statement from published precommitments.
///
/// With `validate` set, each extended node's [`ExtendedStatement::validate`]
/// runs before its statement is constructed.
pub fn expand_for_verifier(stmt: &Statement, precommitments: &[GroupElement], validate: bool) -> Result<Statement> {
    let mut rest = precommitments;
    let statement = expand_verifier(stmt, &mut rest, validate)?;
    if !rest.is_empty() {
        return Err(Error::ShapeMismatch(format!(
            "{} unused precommitment elements",
            rest.len()
        )));
    }
    Ok(statement)
}

fn expand_verifier(stmt: &Statement, rest: &mut &[GroupElement], validate: bool) -> Result<Statement> {
    match stmt {
        Statement::DLRep(_) => Ok(stmt.clone()),
        Statement::And(node) => {
            if !stmt.contains_extended() {
                return Ok(stmt.clone());
            }
            let children = node
                .children()
                .iter()
                .map(|c| expand_verifier(c, rest, validate))
                .collect::<Result<Vec<_>>>()?;
            Statement::and(children)
        }
        Statement::Or(node) => {
            if !stmt.contains_extended() {
                return Ok(stmt.clone());
            }
            let children = node
                .children()
                .iter()
                .map(|c| expand_verifier(c, rest, validate))
                .collect::<Result<Vec<_>>>()?;
            Statement::or(children, node.simulated().to_vec())
        }
        Statement::Extended(node) => {
            let hooks = node.hooks();
            let n = hooks.precommitment_groups().len();
            if rest.len() < n {
                return Err(Error::ShapeMismatch(format!(
                    "{} expects {n} precommitment elements, {} left",
                    hooks.name(),
                    rest.len()
                )));
            }
            let (mine, tail) = rest.split_at(n);
            *rest = tail;
            check_precommitments(hooks, mine)?;
            if validate {
                hooks.validate(mine)?;
            }
            let constructed = hooks.construct_stmt(mine, None)?;
            if constructed.contains_extended() {
                return Err(Error::NestedExtended);
            }
            Ok(constructed)
        }
    }
}

fn check_precommitments(hooks: &dyn ExtendedStatement, elements: &[GroupElement]) -> Result<()> {
    let groups = hooks.precommitment_groups();
    if groups.len() != elements.len() || groups.iter().zip(elements).any(|(g, e)| *g != e.tag()) {
        return Err(Error::ShapeMismatch(format!(
            "{} precommitment does not match its declared groups",
            hooks.name()
        )));
    }
    Ok(())
}

/// Group of every precommitment element of `stmt`, depth first.
pub fn precommitment_groups(stmt: &Statement) -> Vec<GroupTag> {
    stmt.extended_nodes()
        .into_iter()
        .flat_map(|n| n.hooks().precommitment_groups())
        .collect()
}
