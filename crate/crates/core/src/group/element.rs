use std::fmt;
use std::ops::Mul;

use curve25519_dalek::ristretto::{CompressedRistretto, RistrettoPoint};
use curve25519_dalek::traits::{Identity, MultiscalarMul};

use super::{toy, GroupError, GroupTag, OrderTag, Scalar};

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum ElementRepr {
    Ristretto(RistrettoPoint),
    Toy { value: u64, p: u64, q: u64 },
}

/// An element of a prime-order group, written multiplicatively.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct GroupElement(pub(crate) ElementRepr);

impl GroupElement {
    pub fn identity(tag: GroupTag) -> Self {
        match tag {
            GroupTag::Ristretto255 => GroupElement(ElementRepr::Ristretto(RistrettoPoint::identity())),
            GroupTag::Toy { p, q } => GroupElement(ElementRepr::Toy { value: 1, p, q }),
        }
    }

    pub(crate) fn from_ristretto(point: RistrettoPoint) -> Self {
        GroupElement(ElementRepr::Ristretto(point))
    }

    pub(crate) fn toy_unchecked(tag: GroupTag, value: u64) -> Self {
        match tag {
            GroupTag::Toy { p, q } => GroupElement(ElementRepr::Toy { value, p, q }),
            GroupTag::Ristretto255 => unreachable!("toy element requested for ristretto255"),
        }
    }

    /// The toy-group element with integer value `value`, checked for
    /// subgroup membership.
    pub fn toy(tag: GroupTag, value: u64) -> Result<Self, GroupError> {
        let GroupTag::Toy { p, q } = tag else {
            return Err(GroupError::TagMismatch);
        };
        if value == 0 || value >= p {
            return Err(GroupError::MalformedEncoding(format!(
                "{value} is not a unit modulo {p}"
            )));
        }
        if toy::pow_mod(value, q, p) != 1 {
            return Err(GroupError::NotInSubgroup);
        }
        Ok(GroupElement(ElementRepr::Toy { value, p, q }))
    }

    pub fn tag(&self) -> GroupTag {
        match self.0 {
            ElementRepr::Ristretto(_) => GroupTag::Ristretto255,
            ElementRepr::Toy { p, q, .. } => GroupTag::Toy { p, q },
        }
    }

    pub fn order(&self) -> OrderTag {
        self.tag().order()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.tag())
    }

    /// Integer representative of a toy-group element.
    pub fn toy_value(&self) -> Option<u64> {
        match self.0 {
            ElementRepr::Toy { value, .. } => Some(value),
            ElementRepr::Ristretto(_) => None,
        }
    }

    /// `self^e`. Panics if `e` belongs to a different scalar field.
    pub fn exp(&self, e: &Scalar) -> Self {
        assert_eq!(self.order(), e.order(), "exponent from a group of different order");
        match self.0 {
            ElementRepr::Ristretto(point) => {
                GroupElement(ElementRepr::Ristretto(point * e.as_dalek().expect("order checked")))
            }
            ElementRepr::Toy { value, p, q } => {
                let (exp, _) = e.toy_parts().expect("order checked");
                GroupElement(ElementRepr::Toy {
                    value: toy::pow_mod(value, exp, p),
                    p,
                    q,
                })
            }
        }
    }

    pub fn inverse(&self) -> Self {
        match self.0 {
            ElementRepr::Ristretto(point) => GroupElement(ElementRepr::Ristretto(-point)),
            ElementRepr::Toy { value, p, q } => GroupElement(ElementRepr::Toy {
                value: toy::pow_mod(value, p - 2, p),
                p,
                q,
            }),
        }
    }

    /// `self * other^-1`.
    pub fn div(&self, other: &GroupElement) -> Self {
        *self * other.inverse()
    }

    /// Canonical fixed-width encoding, `tag().element_len()` bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        match self.0 {
            ElementRepr::Ristretto(point) => point.compress().to_bytes().to_vec(),
            ElementRepr::Toy { value, p, .. } => toy::encode_be(value, toy::byte_len(p)),
        }
    }

    /// Decodes a canonical encoding, rejecting anything outside the
    /// prime-order subgroup.
    pub fn from_bytes(tag: GroupTag, bytes: &[u8]) -> Result<Self, GroupError> {
        let width = tag.element_len();
        if bytes.len() != width {
            return Err(GroupError::MalformedEncoding(format!(
                "element must be {width} bytes, got {}",
                bytes.len()
            )));
        }
        match tag {
            GroupTag::Ristretto255 => {
                let compressed =
                    CompressedRistretto::from_slice(bytes).map_err(|e| GroupError::MalformedEncoding(e.to_string()))?;
                compressed
                    .decompress()
                    .map(GroupElement::from_ristretto)
                    .ok_or_else(|| GroupError::MalformedEncoding("invalid ristretto255 point".into()))
            }
            GroupTag::Toy { .. } => Self::toy(tag, toy::decode_be(bytes).expect("width checked")),
        }
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    /// The group operation. Panics on elements of different groups.
    fn mul(self, rhs: GroupElement) -> GroupElement {
        match (self.0, rhs.0) {
            (ElementRepr::Ristretto(a), ElementRepr::Ristretto(b)) => GroupElement(ElementRepr::Ristretto(a + b)),
            (ElementRepr::Toy { value: a, p, q }, ElementRepr::Toy { value: b, p: p2, q: q2 })
                if p == p2 && q == q2 =>
            {
                GroupElement(ElementRepr::Toy {
                    value: toy::mul_mod(a, b, p),
                    p,
                    q,
                })
            }
            _ => panic!("elements from different groups: {:?} vs {:?}", self.tag(), rhs.tag()),
        }
    }
}

impl Mul<&GroupElement> for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        *self * *rhs
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            ElementRepr::Toy { value, p, .. } => write!(f, "GroupElement({value} mod {p})"),
            ElementRepr::Ristretto(point) => {
                write!(f, "GroupElement(")?;
                for b in point.compress().as_bytes() {
                    write!(f, "{b:02x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Tags must already be verified by the caller.
pub(crate) fn multi_exp_unchecked(tag: GroupTag, bases: &[GroupElement], exponents: &[Scalar]) -> GroupElement {
    match tag {
        GroupTag::Ristretto255 => {
            let points = bases.iter().map(|b| match b.0 {
                ElementRepr::Ristretto(point) => point,
                ElementRepr::Toy { .. } => unreachable!("tags checked"),
            });
            let scalars = exponents.iter().map(|e| *e.as_dalek().expect("tags checked"));
            GroupElement::from_ristretto(RistrettoPoint::multiscalar_mul(scalars, points))
        }
        GroupTag::Toy { .. } => bases
            .iter()
            .zip(exponents)
            .map(|(b, e)| b.exp(e))
            .fold(GroupElement::identity(tag), |acc, x| acc * x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: GroupTag = GroupTag::Toy { p: 23, q: 11 };

    #[test]
    fn toy_encoding_is_fixed_width_big_endian() {
        let e = GroupElement::toy(TOY, 8).unwrap();
        assert_eq!(e.to_bytes(), vec![8]);
        assert_eq!(GroupElement::from_bytes(TOY, &[8]).unwrap(), e);
        let wide = GroupTag::Toy { p: 263, q: 131 };
        assert_eq!(GroupElement::toy(wide, 4).unwrap().to_bytes(), vec![0, 4]);
    }

    #[test]
    fn toy_decode_rejects_non_members() {
        // 7^11 = 22 mod 23: a quadratic non-residue.
        assert_eq!(GroupElement::from_bytes(TOY, &[7]), Err(GroupError::NotInSubgroup));
        assert!(GroupElement::from_bytes(TOY, &[0]).is_err());
        assert!(GroupElement::from_bytes(TOY, &[23]).is_err());
        assert!(GroupElement::from_bytes(TOY, &[]).is_err());
    }

    #[test]
    fn ristretto_decode_rejects_garbage() {
        assert!(GroupElement::from_bytes(GroupTag::Ristretto255, &[0xff; 32]).is_err());
        assert!(GroupElement::from_bytes(GroupTag::Ristretto255, &[0; 31]).is_err());
        let id = GroupElement::identity(GroupTag::Ristretto255);
        assert_eq!(
            GroupElement::from_bytes(GroupTag::Ristretto255, &id.to_bytes()).unwrap(),
            id
        );
    }

    #[test]
    fn inverse_and_div() {
        let e = GroupElement::toy(TOY, 8).unwrap();
        assert!((e * e.inverse()).is_identity());
        assert!(e.div(&e).is_identity());
    }
}
