use crate::group::{GroupElement, Scalar};

/// Prover's first message, shaped like the statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommitmentTree {
    Leaf(GroupElement),
    And(Vec<CommitmentTree>),
    Or(Vec<CommitmentTree>),
}

impl CommitmentTree {
    /// Leaf commitments in depth-first order.
    pub fn leaves(&self) -> Vec<GroupElement> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<GroupElement>) {
        match self {
            CommitmentTree::Leaf(r) => out.push(*r),
            CommitmentTree::And(c) | CommitmentTree::Or(c) => c.iter().for_each(|t| t.collect_leaves(out)),
        }
    }

    pub fn same_shape(&self, other: &CommitmentTree) -> bool {
        match (self, other) {
            (CommitmentTree::Leaf(_), CommitmentTree::Leaf(_)) => true,
            (CommitmentTree::And(a), CommitmentTree::And(b)) | (CommitmentTree::Or(a), CommitmentTree::Or(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(y))
            }
            _ => false,
        }
    }
}

/// Prover's final message.
///
/// Leaves hold one response per term. OR nodes carry each child's
/// sub-challenge; these sum to the node's incoming challenge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResponseTree {
    Leaf(Vec<Scalar>),
    And(Vec<ResponseTree>),
    Or(Vec<(Scalar, ResponseTree)>),
}

impl ResponseTree {
    /// Every response and sub-challenge, depth first.
    pub fn scalars_mut(&mut self) -> Vec<&mut Scalar> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a mut ResponseTree, out: &mut Vec<&'a mut Scalar>) {
            match t {
                ResponseTree::Leaf(s) => out.extend(s.iter_mut()),
                ResponseTree::And(c) => c.iter_mut().for_each(|t| walk(t, out)),
                ResponseTree::Or(c) => c.iter_mut().for_each(|(ch, t)| {
                    out.push(ch);
                    walk(t, out)
                }),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Checks that every OR node's sub-challenges sum to `challenge`.
    pub fn challenges_consistent(&self, challenge: &Scalar) -> bool {
        match self {
            ResponseTree::Leaf(_) => true,
            ResponseTree::And(c) => c.iter().all(|t| t.challenges_consistent(challenge)),
            ResponseTree::Or(c) => {
                c.iter().map(|(ch, _)| *ch).sum::<Scalar>() == *challenge
                    && c.iter().all(|(ch, t)| t.challenges_consistent(ch))
            }
        }
    }
}

/// A full interactive transcript `(commitment, challenge, response)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub commitment: CommitmentTree,
    pub challenge: Scalar,
    pub response: ResponseTree,
}
