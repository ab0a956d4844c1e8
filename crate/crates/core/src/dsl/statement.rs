use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{multi_exp, GroupElement, OrderTag};
use crate::primitives::ExtendedStatement;

use super::secret::{Expression, Secret, SecretId, Witness};

/// Leaf asserting `lhs = prod base_i^{secret_i}`.
#[derive(Clone, Debug)]
pub struct DLRep {
    lhs: GroupElement,
    expr: Expression,
}

impl DLRep {
    pub fn lhs(&self) -> &GroupElement {
        &self.lhs
    }

    pub fn expr(&self) -> &Expression {
        &self.expr
    }

    pub fn bases(&self) -> Vec<GroupElement> {
        self.expr.bases().copied().collect()
    }

    /// Whether the relation holds for the given secret values.
    pub fn holds(&self, witness: &Witness) -> Result<bool> {
        let values = self
            .expr
            .secrets()
            .map(|s| witness.resolve(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(multi_exp(&self.bases(), &values)? == self.lhs)
    }
}

#[derive(Clone, Debug)]
pub struct Conjunction {
    children: Vec<Statement>,
}

impl Conjunction {
    pub fn children(&self) -> &[Statement] {
        &self.children
    }
}

/// Disjunction with the prover's choice of which children to simulate.
/// Verifiers ignore the flags.
#[derive(Clone, Debug)]
pub struct Disjunction {
    children: Vec<Statement>,
    simulated: Vec<bool>,
}

impl Disjunction {
    pub fn children(&self) -> &[Statement] {
        &self.children
    }

    pub fn simulated(&self) -> &[bool] {
        &self.simulated
    }
}

/// A user-defined primitive; see [`ExtendedStatement`].
#[derive(Clone)]
pub struct ExtendedNode(Arc<dyn ExtendedStatement>);

impl ExtendedNode {
    pub fn hooks(&self) -> &dyn ExtendedStatement {
        self.0.as_ref()
    }
}

impl fmt::Debug for ExtendedNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A proof statement: a tree of representation leaves, conjunctions,
/// disjunctions and extended primitives.
#[derive(Clone, Debug)]
pub enum Statement {
    DLRep(DLRep),
    And(Conjunction),
    Or(Disjunction),
    Extended(ExtendedNode),
}

impl Statement {
    /// `lhs = expr`. All elements must come from one group.
    pub fn dlrep(lhs: GroupElement, expr: Expression) -> Result<Self> {
        if expr.terms().is_empty() {
            return Err(Error::EmptyExpression);
        }
        let tag = lhs.tag();
        if expr.bases().any(|b| b.tag() != tag) {
            return Err(Error::Group(crate::group::GroupError::TagMismatch));
        }
        for s in expr.secrets() {
            if s.value().is_some_and(|v| v.order() != tag.order()) {
                return Err(Error::OrderMismatch);
            }
        }
        Ok(Statement::DLRep(DLRep { lhs, expr }))
    }

    pub fn and(children: Vec<Statement>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::Arity("AND"));
        }
        same_order(&children)?;
        Ok(Statement::And(Conjunction { children }))
    }

    /// Disjunction; `simulated[i]` marks children the prover will simulate.
    pub fn or(children: Vec<Statement>, simulated: Vec<bool>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::Arity("OR"));
        }
        if simulated.len() != children.len() {
            return Err(Error::FlagCount {
                children: children.len(),
                flags: simulated.len(),
            });
        }
        same_order(&children)?;
        Ok(Statement::Or(Disjunction { children, simulated }))
    }

    /// Disjunction without simulation flags, as built by a verifier.
    pub fn or_unflagged(children: Vec<Statement>) -> Result<Self> {
        let n = children.len();
        Self::or(children, vec![false; n])
    }

    pub fn extended<E: ExtendedStatement + 'static>(hooks: E) -> Self {
        Statement::Extended(ExtendedNode(Arc::new(hooks)))
    }

    /// Conjunction of `self` and `other`.
    pub fn and_with(self, other: Statement) -> Result<Self> {
        Self::and(vec![self, other])
    }

    /// The scalar field shared by every group in the statement.
    pub fn order(&self) -> OrderTag {
        match self {
            Statement::DLRep(leaf) => leaf.lhs.order(),
            Statement::And(node) => node.children[0].order(),
            Statement::Or(node) => node.children[0].order(),
            Statement::Extended(node) => node.0.order(),
        }
    }

    /// Unique secrets in order of first occurrence, depth first, left to
    /// right. Extended nodes contribute the secrets they were given.
    pub fn collect_secrets(&self) -> Vec<Secret> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        self.for_each_occurrence(&mut |s| {
            if seen.insert(s.id()) {
                out.push(s.clone());
            }
        });
        out
    }

    /// Visits every occurrence of every secret, depth first.
    pub(crate) fn for_each_occurrence(&self, f: &mut dyn FnMut(&Secret)) {
        match self {
            Statement::DLRep(leaf) => leaf.expr.secrets().for_each(f),
            Statement::And(node) => node.children.iter().for_each(|c| c.for_each_occurrence(f)),
            Statement::Or(node) => node.children.iter().for_each(|c| c.for_each_occurrence(f)),
            Statement::Extended(node) => node.0.secrets().iter().for_each(f),
        }
    }

    /// Values carried by the secret handles in this statement.
    pub fn witness(&self) -> Result<Witness> {
        let mut w = Witness::new();
        let mut result = Ok(());
        self.for_each_occurrence(&mut |s| {
            if let (Some(v), Ok(())) = (s.value(), &result) {
                result = w.insert(s, *v);
            }
        });
        result.map(|_| w)
    }

    /// Rejects statements where a secret used inside an OR also occurs
    /// outside of it. Proving such a statement with one randomizer per
    /// secret answers two different challenges for the same randomizer,
    /// which reveals the secret.
    pub fn validate_composition(&self) -> Result<()> {
        let mut total: HashMap<SecretId, usize> = HashMap::new();
        self.for_each_occurrence(&mut |s| *total.entry(s.id()).or_default() += 1);
        self.check_or_scopes(&total)
    }

    fn check_or_scopes(&self, total: &HashMap<SecretId, usize>) -> Result<()> {
        match self {
            Statement::DLRep(_) | Statement::Extended(_) => Ok(()),
            Statement::And(node) => node.children.iter().try_for_each(|c| c.check_or_scopes(total)),
            Statement::Or(node) => {
                let mut inside: HashMap<SecretId, (usize, Secret)> = HashMap::new();
                self.for_each_occurrence(&mut |s| {
                    inside.entry(s.id()).or_insert_with(|| (0, s.clone())).0 += 1;
                });
                // Report the first offender in traversal order.
                let mut offender = None;
                self.for_each_occurrence(&mut |s| {
                    if offender.is_none() && inside[&s.id()].0 < total[&s.id()] {
                        offender = Some(s.clone());
                    }
                });
                if let Some(s) = offender {
                    return Err(Error::DangerousOr {
                        secret: s.display_name(),
                    });
                }
                node.children.iter().try_for_each(|c| c.check_or_scopes(total))
            }
        }
    }

    /// Extended nodes in depth-first order.
    pub(crate) fn extended_nodes(&self) -> Vec<&ExtendedNode> {
        let mut out = Vec::new();
        fn walk<'a>(s: &'a Statement, out: &mut Vec<&'a ExtendedNode>) {
            match s {
                Statement::DLRep(_) => {}
                Statement::And(n) => n.children.iter().for_each(|c| walk(c, out)),
                Statement::Or(n) => n.children.iter().for_each(|c| walk(c, out)),
                Statement::Extended(e) => out.push(e),
            }
        }
        walk(self, &mut out);
        out
    }

    pub(crate) fn contains_extended(&self) -> bool {
        !self.extended_nodes().is_empty()
    }

    /// Checks every leaf relation against the witness.
    pub fn holds(&self, witness: &Witness) -> Result<bool> {
        match self {
            Statement::DLRep(leaf) => leaf.holds(witness),
            Statement::And(n) => {
                for c in &n.children {
                    if !c.holds(witness)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Statement::Or(n) => {
                for c in &n.children {
                    if c.holds(witness).unwrap_or(false) {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Statement::Extended(_) => Err(Error::Unexpanded),
        }
    }

    /// Number of leaves; used by tests and benchmarks.
    pub fn leaf_count(&self) -> usize {
        match self {
            Statement::DLRep(_) | Statement::Extended(_) => 1,
            Statement::And(n) => n.children.iter().map(Statement::leaf_count).sum(),
            Statement::Or(n) => n.children.iter().map(Statement::leaf_count).sum(),
        }
    }
}

fn same_order(children: &[Statement]) -> Result<()> {
    let order = children[0].order();
    if children.iter().any(|c| c.order() != order) {
        return Err(Error::OrderMismatch);
    }
    Ok(())
}
