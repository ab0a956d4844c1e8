//! Inequality of two discrete logarithms, `PK{(x): H0 = h0^x and H1 != h1^x}`.
//!
//! The prover picks a nonzero blinder `r`, publishes `C = (h1^x / H1)^r` and
//! proves `PK{(alpha, beta): 1 = h0^alpha H0^beta and C = h1^alpha H1^beta}`
//! with `alpha = x r` and `beta = -r`. The verifier rejects `C = 1`.

use rand_core::CryptoRngCore;

use crate::codec::Writer;
use crate::dsl::{Secret, Statement, Witness};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupTag, OrderTag, Scalar};

use super::extended::{ExtendedStatement, Precommitment};

#[derive(Debug, Clone)]
pub struct DLNotEqual {
    lhs: [GroupElement; 2],
    bases: [GroupElement; 2],
    x: Secret,
    alpha: Secret,
    beta: Secret,
}

impl DLNotEqual {
    /// `valid = (H0, h0)` with `H0 = h0^x`; `invalid = (H1, h1)` with
    /// `H1 != h1^x`.
    pub fn new(valid: (GroupElement, GroupElement), invalid: (GroupElement, GroupElement), x: &Secret) -> Result<Self> {
        if valid.0.tag() != valid.1.tag() || invalid.0.tag() != invalid.1.tag() {
            return Err(Error::Group(crate::group::GroupError::TagMismatch));
        }
        if valid.0.order() != invalid.0.order() {
            return Err(Error::OrderMismatch);
        }
        Ok(DLNotEqual {
            lhs: [valid.0, invalid.0],
            bases: [valid.1, invalid.1],
            x: x.clone(),
            alpha: Secret::labeled("alpha"),
            beta: Secret::labeled("beta"),
        })
    }

    /// `(h1^x / H1)^blinder`.
    pub fn precommitment_for(&self, x: &Scalar, blinder: &Scalar) -> GroupElement {
        self.bases[1].exp(x).div(&self.lhs[1]).exp(blinder)
    }

    pub fn alpha(&self) -> &Secret {
        &self.alpha
    }

    pub fn beta(&self) -> &Secret {
        &self.beta
    }

    /// Precommitment and internal witness for a given blinder.
    pub fn precommit_with_blinder(&self, x: &Scalar, blinder: &Scalar) -> Precommitment {
        Precommitment {
            elements: vec![self.precommitment_for(x, blinder)],
            witness: vec![(self.alpha.clone(), *x * *blinder), (self.beta.clone(), -*blinder)],
        }
    }
}

/// Builds the extended statement.
pub fn dl_not_equal(
    valid: (GroupElement, GroupElement),
    invalid: (GroupElement, GroupElement),
    x: &Secret,
) -> Result<Statement> {
    Ok(Statement::extended(DLNotEqual::new(valid, invalid, x)?))
}

/// Verifier check: exactly one precommitment element, not the identity.
pub fn dlne_validate(precommitments: &[GroupElement]) -> Result<()> {
    match precommitments {
        [c] if !c.is_identity() => Ok(()),
        [_] => Err(Error::Validation("invalid precommitment: C is the identity".into())),
        other => Err(Error::Validation(format!(
            "expected one precommitment element, got {}",
            other.len()
        ))),
    }
}

impl ExtendedStatement for DLNotEqual {
    fn name(&self) -> &'static str {
        "DLNotEqual"
    }

    fn public_params(&self) -> Vec<u8> {
        let mut w = Writer::new();
        w.element(&self.lhs[0])
            .element(&self.bases[0])
            .element(&self.lhs[1])
            .element(&self.bases[1]);
        w.into_bytes()
    }

    fn secrets(&self) -> Vec<Secret> {
        vec![self.x.clone()]
    }

    fn order(&self) -> OrderTag {
        self.lhs[0].order()
    }

    fn precommitment_groups(&self) -> Vec<GroupTag> {
        vec![self.lhs[1].tag()]
    }

    fn precommit(&self, witness: &Witness, rng: &mut dyn CryptoRngCore) -> Result<Precommitment> {
        let x = witness.resolve(&self.x)?;
        // A zero blinder would publish the identity and fail validation.
        let blinder = loop {
            let b = Scalar::random(self.order(), rng);
            if !b.is_zero() {
                break b;
            }
        };
        let pre = self.precommit_with_blinder(&x, &blinder);
        if pre.elements[0].is_identity() {
            return Err(Error::Precommit("the two discrete logarithms are equal".into()));
        }
        Ok(pre)
    }

    fn simulate_precommit(&self, rng: &mut dyn CryptoRngCore) -> Vec<GroupElement> {
        let gen = self.bases[1];
        loop {
            let s = Scalar::random(self.order(), rng);
            if !s.is_zero() {
                return vec![gen.exp(&s)];
            }
        }
    }

    fn construct_stmt(&self, precommitments: &[GroupElement], _witness: Option<&Witness>) -> Result<Statement> {
        let [c] = precommitments else {
            return Err(Error::ShapeMismatch("DLNotEqual takes one precommitment".into()));
        };
        let first = Statement::dlrep(
            GroupElement::identity(self.bases[0].tag()),
            &self.alpha * self.bases[0] + &self.beta * self.lhs[0],
        )?;
        let second = Statement::dlrep(*c, &self.alpha * self.bases[1] + &self.beta * self.lhs[1])?;
        Statement::and(vec![first, second])
    }

    fn validate(&self, precommitments: &[GroupElement]) -> Result<()> {
        dlne_validate(precommitments)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    const TOY: GroupTag = GroupTag::Toy { p: 23, q: 11 };

    fn el(v: u64) -> GroupElement {
        GroupElement::toy(TOY, v).unwrap()
    }

    fn sc(v: u64) -> Scalar {
        Scalar::from_u64(OrderTag::Toy { q: 11 }, v)
    }

    #[test]
    fn worked_precommitment() {
        let x = Secret::with_value(sc(3));
        let prim = DLNotEqual::new((el(8), el(2)), (el(9), el(16)), &x).unwrap();
        let pre = prim.precommit_with_blinder(&sc(3), &sc(2));
        assert_eq!(pre.elements, vec![el(8)]);
        assert_eq!(pre.witness[0].1, sc(6));
        assert_eq!(pre.witness[1].1, sc(9));

        let mut w = Witness::new();
        for (s, v) in &pre.witness {
            w.insert(s, *v).unwrap();
        }
        let stmt = prim.construct_stmt(&pre.elements, Some(&w)).unwrap();
        assert!(stmt.holds(&w).unwrap());
    }

    #[test]
    fn equal_logs_give_identity_for_every_blinder() {
        // 16^3 = 2 mod 23: both pairs share the log 3.
        let x = Secret::with_value(sc(3));
        let prim = DLNotEqual::new((el(8), el(2)), (el(2), el(16)), &x).unwrap();
        for b in 0..11 {
            assert!(prim.precommitment_for(&sc(3), &sc(b)).is_identity());
        }
    }

    #[test]
    fn validate_rules() {
        assert!(dlne_validate(&[el(8)]).is_ok());
        let id = Group::toy(23, 11, 2).unwrap().identity();
        assert!(matches!(dlne_validate(&[id]), Err(Error::Validation(_))));
        assert!(matches!(dlne_validate(&[]), Err(Error::Validation(_))));
        assert!(matches!(dlne_validate(&[el(8), el(8)]), Err(Error::Validation(_))));
    }

    #[test]
    fn rejects_mismatched_orders() {
        let r = Group::ristretto255();
        let x = Secret::new();
        assert!(DLNotEqual::new((el(8), el(2)), (r.generator(), r.generator()), &x).is_err());
        assert!(DLNotEqual::new((el(8), r.generator()), (el(9), el(16)), &x).is_err());
    }
}
