use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{GroupElement, Scalar};

static NEXT_SECRET: AtomicU64 = AtomicU64::new(1);

/// Process-local handle identifying a proof variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SecretId(u64);

/// A proof variable.
///
/// Clones refer to the same variable. Two secrets are the same variable iff
/// they share an identity; labels only show up in error messages. The prover
/// creates secrets with values, the verifier without.
#[derive(Clone)]
pub struct Secret {
    id: SecretId,
    label: Option<Arc<str>>,
    value: Option<Scalar>,
}

impl Secret {
    pub fn new() -> Self {
        Secret {
            id: SecretId(NEXT_SECRET.fetch_add(1, Ordering::Relaxed)),
            label: None,
            value: None,
        }
    }

    pub fn with_value(value: Scalar) -> Self {
        Secret {
            value: Some(value),
            ..Self::new()
        }
    }

    pub fn labeled(label: &str) -> Self {
        Secret {
            label: Some(label.into()),
            ..Self::new()
        }
    }

    pub fn labeled_with_value(label: &str, value: Scalar) -> Self {
        Secret {
            value: Some(value),
            ..Self::labeled(label)
        }
    }

    pub fn id(&self) -> SecretId {
        self.id
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn value(&self) -> Option<&Scalar> {
        self.value.as_ref()
    }

    /// Name used in diagnostics.
    pub fn display_name(&self) -> String {
        match &self.label {
            Some(l) => l.to_string(),
            None => format!("#{}", self.id.0),
        }
    }
}

impl Default for Secret {
    fn default() -> Self {
        Self::new()
    }
}

impl PartialEq for Secret {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Secret {}

impl Hash for Secret {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state)
    }
}

impl fmt::Debug for Secret {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Never print the value.
        write!(f, "Secret({})", self.display_name())
    }
}

/// Values for secrets, keyed by identity.
#[derive(Clone, Default)]
pub struct Witness {
    values: HashMap<SecretId, Scalar>,
}

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, secret: &Secret) -> Option<&Scalar> {
        self.values.get(&secret.id)
    }

    /// Records a value. A different value for an already recorded secret is
    /// an error.
    pub fn insert(&mut self, secret: &Secret, value: Scalar) -> Result<()> {
        match self.values.get(&secret.id) {
            Some(existing) if *existing != value => Err(Error::ConflictingValues(secret.display_name())),
            Some(_) => Ok(()),
            None => {
                self.values.insert(secret.id, value);
                Ok(())
            }
        }
    }

    /// Value of `secret`, falling back to the value carried by the handle.
    pub fn resolve(&self, secret: &Secret) -> Result<Scalar> {
        self.get(secret)
            .or(secret.value())
            .copied()
            .ok_or_else(|| Error::MissingValue(secret.display_name()))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Debug for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Witness({} values)", self.values.len())
    }
}

/// A product `base_1^{secret_1} ... base_n^{secret_n}`, the right-hand side
/// of a discrete-logarithm representation.
#[derive(Clone, Debug, PartialEq)]
pub struct Expression {
    terms: Vec<(Secret, GroupElement)>,
}

impl Expression {
    pub fn term(secret: &Secret, base: GroupElement) -> Self {
        Expression {
            terms: vec![(secret.clone(), base)],
        }
    }

    /// Builds an expression from `(secret, base)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Secret, GroupElement)>>(terms: I) -> Self {
        Expression {
            terms: terms.into_iter().collect(),
        }
    }

    pub fn plus(mut self, secret: &Secret, base: GroupElement) -> Self {
        self.terms.push((secret.clone(), base));
        self
    }

    pub fn terms(&self) -> &[(Secret, GroupElement)] {
        &self.terms
    }

    pub fn secrets(&self) -> impl Iterator<Item = &Secret> {
        self.terms.iter().map(|(s, _)| s)
    }

    pub fn bases(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.iter().map(|(_, b)| b)
    }
}

impl Mul<GroupElement> for &Secret {
    type Output = Expression;
    fn mul(self, base: GroupElement) -> Expression {
        Expression::term(self, base)
    }
}

impl Mul<GroupElement> for Secret {
    type Output = Expression;
    fn mul(self, base: GroupElement) -> Expression {
        Expression::term(&self, base)
    }
}

impl Add for Expression {
    type Output = Expression;
    fn add(mut self, rhs: Expression) -> Expression {
        self.terms.extend(rhs.terms);
        self
    }
}
