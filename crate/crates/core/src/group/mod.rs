//! Prime-order groups and their scalar fields.
//!
//! Two backends sit behind the same [`Scalar`] / [`GroupElement`] types:
//!
//! * `ristretto255`, the production backend. Elements encode as 32-byte
//!   compressed Ristretto points; scalars as 32-byte big-endian integers.
//! * a toy subgroup of `Z_p^*` of prime order `q`, with explicit `(p, q, g)`.
//!   Elements encode as big-endian integers of `byte_len(p)` bytes, scalars as
//!   big-endian integers of `byte_len(q)` bytes. Small parameters make
//!   brute-force discrete logarithms available as test oracles.
//!
//! The backend is chosen at runtime so that a single statement tree can be
//! instantiated over either. Mixing values from groups of different order is
//! a programming error: fallible entry points return [`GroupError`], the
//! arithmetic operators panic.

mod element;
mod scalar;
pub(crate) mod toy;

use std::fmt;
use std::sync::Arc;

use curve25519_dalek::constants::RISTRETTO_BASEPOINT_POINT;
use curve25519_dalek::ristretto::RistrettoPoint;
use rand_core::CryptoRngCore;
use sha2::{Digest, Sha256, Sha512};
use thiserror::Error;

pub use element::GroupElement;
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid group parameters: {0}")]
    InvalidParameters(String),
    #[error("multi-exponentiation needs equally long, nonempty inputs (got {bases} bases, {exponents} exponents)")]
    LengthMismatch { bases: usize, exponents: usize },
    #[error("values from different groups cannot be combined")]
    TagMismatch,
    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),
    #[error("element is not a member of the prime-order subgroup")]
    NotInSubgroup,
}

/// Identifies the scalar field `Z_q` a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderTag {
    Ristretto255,
    Toy { q: u64 },
}

impl OrderTag {
    /// Width of the canonical scalar encoding.
    pub fn scalar_len(&self) -> usize {
        match self {
            OrderTag::Ristretto255 => 32,
            OrderTag::Toy { q } => toy::byte_len(*q),
        }
    }

    /// Number of bits of `q`.
    pub fn bits(&self) -> u32 {
        match self {
            OrderTag::Ristretto255 => 253,
            OrderTag::Toy { q } => 64 - q.leading_zeros(),
        }
    }

    /// `q` itself when it fits in 64 bits.
    pub fn small_order(&self) -> Option<u64> {
        match self {
            OrderTag::Ristretto255 => None,
            OrderTag::Toy { q } => Some(*q),
        }
    }
}

/// Identifies the group an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupTag {
    Ristretto255,
    Toy { p: u64, q: u64 },
}

impl GroupTag {
    pub fn order(&self) -> OrderTag {
        match self {
            GroupTag::Ristretto255 => OrderTag::Ristretto255,
            GroupTag::Toy { q, .. } => OrderTag::Toy { q: *q },
        }
    }

    /// Width of the canonical element encoding.
    pub fn element_len(&self) -> usize {
        match self {
            GroupTag::Ristretto255 => 32,
            GroupTag::Toy { p, .. } => toy::byte_len(*p),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(*self)
    }

    pub fn decode_element(&self, bytes: &[u8]) -> Result<GroupElement, GroupError> {
        GroupElement::from_bytes(*self, bytes)
    }
}

#[derive(Debug)]
struct Description {
    tag: GroupTag,
    generator: GroupElement,
    name: String,
}

/// A cyclic group `(G, g, q)`: group, generator and prime order.
///
/// Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Group {
    inner: Arc<Description>,
}

impl Group {
    /// The ristretto255 group with its standard base point.
    pub fn ristretto255() -> Self {
        Group {
            inner: Arc::new(Description {
                tag: GroupTag::Ristretto255,
                generator: GroupElement::from_ristretto(RISTRETTO_BASEPOINT_POINT),
                name: "ristretto255".to_owned(),
            }),
        }
    }

    /// The order-`q` subgroup of `Z_p^*` generated by `g`.
    pub fn toy(p: u64, q: u64, g: u64) -> Result<Self, GroupError> {
        toy::check_params(p, q, g)?;
        let tag = GroupTag::Toy { p, q };
        Ok(Group {
            inner: Arc::new(Description {
                tag,
                generator: GroupElement::toy_unchecked(tag, g),
                name: format!("toy(p={p},q={q},g={g})"),
            }),
        })
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn tag(&self) -> GroupTag {
        self.inner.tag
    }

    pub fn order(&self) -> OrderTag {
        self.inner.tag.order()
    }

    pub fn generator(&self) -> GroupElement {
        self.inner.generator
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.inner.tag)
    }

    pub fn random_scalar(&self, rng: &mut dyn CryptoRngCore) -> Scalar {
        Scalar::random(self.order(), rng)
    }

    /// Uniformly random element other than the identity.
    pub fn random_nonidentity_element(&self, rng: &mut dyn CryptoRngCore) -> GroupElement {
        loop {
            let s = self.random_scalar(rng);
            if !s.is_zero() {
                return self.generator().exp(&s);
            }
        }
    }

    /// Deterministically derives an independent generator from `label`.
    ///
    /// For ristretto255 this hashes to the curve, so nobody knows its discrete
    /// logarithm with respect to the base point. Toy groups hash to `Z_p^*`
    /// and project onto the subgroup.
    pub fn derive_generator(&self, label: &[u8]) -> GroupElement {
        match self.inner.tag {
            GroupTag::Ristretto255 => {
                let mut input = b"sigmakit/ristretto255/generator/".to_vec();
                input.extend_from_slice(label);
                GroupElement::from_ristretto(RistrettoPoint::hash_from_bytes::<Sha512>(&input))
            }
            tag @ GroupTag::Toy { p, q } => {
                let cofactor = (p - 1) / q;
                for counter in 0u64.. {
                    let digest = Sha256::new()
                        .chain_update(b"sigmakit/toy/generator/")
                        .chain_update(label)
                        .chain_update(counter.to_be_bytes())
                        .finalize();
                    let raw = digest
                        .iter()
                        .fold(0u64, |acc, &b| toy::add_mod(toy::mul_mod(acc, 256, p), b as u64, p));
                    if raw == 0 {
                        continue;
                    }
                    let candidate = toy::pow_mod(raw, cofactor, p);
                    if candidate != 1 {
                        return GroupElement::toy_unchecked(tag, candidate);
                    }
                }
                unreachable!("counter space exhausted")
            }
        }
    }

    pub fn decode_element(&self, bytes: &[u8]) -> Result<GroupElement, GroupError> {
        GroupElement::from_bytes(self.inner.tag, bytes)
    }

    pub fn decode_scalar(&self, bytes: &[u8]) -> Result<Scalar, GroupError> {
        Scalar::from_bytes(self.order(), bytes)
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Group").field(&self.inner.name).finish()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.inner.tag == other.inner.tag && self.inner.generator == other.inner.generator
    }
}

impl Eq for Group {}

/// Computes `prod bases[i]^exponents[i]`.
pub fn multi_exp(bases: &[GroupElement], exponents: &[Scalar]) -> Result<GroupElement, GroupError> {
    if bases.is_empty() || bases.len() != exponents.len() {
        return Err(GroupError::LengthMismatch {
            bases: bases.len(),
            exponents: exponents.len(),
        });
    }
    let tag = bases[0].tag();
    if bases.iter().any(|b| b.tag() != tag) || exponents.iter().any(|e| e.order() != tag.order()) {
        return Err(GroupError::TagMismatch);
    }
    Ok(element::multi_exp_unchecked(tag, bases, exponents))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Group {
        Group::toy(23, 11, 2).unwrap()
    }

    #[test]
    fn toy_parameter_checks() {
        assert!(Group::toy(23, 11, 2).is_ok());
        assert!(matches!(Group::toy(23, 11, 7), Err(GroupError::InvalidParameters(_))));
        assert!(matches!(Group::toy(23, 12, 2), Err(GroupError::InvalidParameters(_))));
        assert!(Group::toy(22, 11, 2).is_err());
        assert!(Group::toy(23, 11, 1).is_err());
        assert!(Group::toy(23, 11, 23).is_err());
    }

    #[test]
    fn multi_exp_worked_example() {
        let g = toy();
        let gen = g.generator();
        let h = GroupElement::toy(g.tag(), 16).unwrap();
        let o = g.order();
        let out = multi_exp(&[gen, h], &[Scalar::from_u64(o, 3), Scalar::from_u64(o, 5)]).unwrap();
        assert_eq!(out.toy_value(), Some(2));
    }

    #[test]
    fn multi_exp_zero_exponent_is_identity() {
        let g = toy();
        let out = multi_exp(&[g.generator()], &[Scalar::zero(g.order())]).unwrap();
        assert!(out.is_identity());
        let r = Group::ristretto255();
        let out = multi_exp(&[r.generator()], &[Scalar::zero(r.order())]).unwrap();
        assert!(out.is_identity());
    }

    #[test]
    fn multi_exp_rejects_bad_inputs() {
        let g = toy();
        let o = g.order();
        assert!(matches!(
            multi_exp(&[g.generator()], &[]),
            Err(GroupError::LengthMismatch { .. })
        ));
        assert!(matches!(multi_exp(&[], &[]), Err(GroupError::LengthMismatch { .. })));
        let r = Group::ristretto255();
        assert_eq!(
            multi_exp(&[g.generator(), r.generator()], &[Scalar::one(o), Scalar::one(o)]),
            Err(GroupError::TagMismatch)
        );
        assert_eq!(
            multi_exp(&[g.generator()], &[Scalar::one(r.order())]),
            Err(GroupError::TagMismatch)
        );
    }

    #[test]
    fn derived_generators_are_members_and_distinct() {
        for group in [toy(), Group::ristretto255()] {
            let a = group.derive_generator(b"h");
            let b = group.derive_generator(b"other");
            assert!(!a.is_identity());
            assert_ne!(a, b);
            assert_eq!(group.decode_element(&a.to_bytes()).unwrap(), a);
            assert_eq!(a, group.derive_generator(b"h"));
        }
    }

    #[test]
    fn group_names() {
        assert_eq!(toy().name(), "toy(p=23,q=11,g=2)");
        assert_eq!(Group::ristretto255().name(), "ristretto255");
    }
}
