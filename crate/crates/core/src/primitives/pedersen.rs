use crate::group::{multi_exp, GroupElement, GroupError, Scalar};

/// `g^x h^r`.
pub fn pedersen_commit(g: &GroupElement, h: &GroupElement, x: &Scalar, r: &Scalar) -> Result<GroupElement, GroupError> {
    multi_exp(&[*g, *h], &[*x, *r])
}
