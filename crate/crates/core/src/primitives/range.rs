//! Range proofs `a <= x < b` for a Pedersen commitment `com = g^x h^r`.
//!
//! With `l = ceil(log2(b - a))`, `x` lies in `[a, b)` iff both `x - a` and
//! `x - b + 2^l` lie in `[0, 2^l)`. Each of the two shifted values is
//! decomposed into bits; bit `i` gets a commitment `C_i = g^{b_i} h^{r_i}`
//! proven to open to 0 or 1 with the disjunction
//! `C_i = h^{r_i} or C_i g^-1 = h^{r_i}`. The bit randomness satisfies
//! `sum r_i 2^i = r`, so the verifier checks `prod C_i^{2^i}` against the
//! shifted commitment directly.
//!
//! `b - a = 1` degenerates to an opening proof `com g^-a = h^r`.

use rand_core::CryptoRngCore;

use crate::codec::Writer;
use crate::dsl::{Secret, Statement, Witness};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupTag, OrderTag, Scalar};

use super::extended::{ExtendedStatement, Precommitment};

/// Largest supported bit length.
pub const MAX_RANGE_BITS: u32 = 62;

/// `ceil(log2(width))` for `width >= 1`.
pub fn range_bits(width: u64) -> u32 {
    if width <= 1 {
        0
    } else {
        64 - (width - 1).leading_zeros()
    }
}

/// Proof that a committed value lies in `[0, 2^bits)`; one half of a
/// [`RangeStmt`].
#[derive(Debug, Clone)]
pub struct PowerTwoRange {
    bits: u32,
    randomness: Vec<Secret>,
}

impl PowerTwoRange {
    pub fn new(bits: u32) -> Self {
        PowerTwoRange {
            bits,
            randomness: (0..bits)
                .map(|i| Secret::labeled(&format!("bit_randomness_{i}")))
                .collect(),
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Bit commitments for `value` with total randomness `randomness`.
    ///
    /// `free` supplies `r_0 .. r_{l-2}`; `r_{l-1}` is solved for.
    pub fn precommit_with(
        &self,
        g: &GroupElement,
        h: &GroupElement,
        value: u64,
        randomness: &Scalar,
        free: &[Scalar],
    ) -> Result<Precommitment> {
        let order = g.order();
        let l = self.bits as usize;
        if l == 0 || free.len() != l - 1 {
            return Err(Error::InvalidRange(format!(
                "{l}-bit decomposition needs {} free scalars",
                l.saturating_sub(1)
            )));
        }
        if value >> self.bits != 0 {
            return Err(Error::Precommit("secret value outside declared range".into()));
        }
        let weight = |i: usize| Scalar::from_u64(order, 1u64 << i);
        let partial = free
            .iter()
            .enumerate()
            .fold(Scalar::zero(order), |acc, (i, r)| acc + weight(i) * *r);
        let last = (*randomness - partial) * weight(l - 1).invert().expect("2^i < q is nonzero");
        let rs: Vec<Scalar> = free.iter().copied().chain(std::iter::once(last)).collect();

        let one = Scalar::one(order);
        let elements = rs
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let c = h.exp(r);
                if (value >> i) & 1 == 1 {
                    c * g.exp(&one)
                } else {
                    c
                }
            })
            .collect();
        let witness = self.randomness.iter().cloned().zip(rs).collect();
        Ok(Precommitment { elements, witness })
    }

    pub fn precommit(
        &self,
        g: &GroupElement,
        h: &GroupElement,
        value: u64,
        randomness: &Scalar,
        rng: &mut dyn CryptoRngCore,
    ) -> Result<Precommitment> {
        let free: Vec<Scalar> = (1..self.bits).map(|_| Scalar::random(g.order(), rng)).collect();
        self.precommit_with(g, h, value, randomness, &free)
    }

    /// `prod C_i^{2^i}`.
    pub fn aggregate(precommitments: &[GroupElement]) -> GroupElement {
        let tag = precommitments[0].tag();
        precommitments
            .iter()
            .enumerate()
            .fold(GroupElement::identity(tag), |acc, (i, c)| {
                acc * c.exp(&Scalar::from_u64(tag.order(), 1u64 << i))
            })
    }

    /// Random bit commitments aggregating to `target`.
    pub fn simulate(&self, g: &GroupElement, target: &GroupElement, rng: &mut dyn CryptoRngCore) -> Vec<GroupElement> {
        let order = g.order();
        let l = self.bits as usize;
        let mut out: Vec<GroupElement> = (1..l).map(|_| g.exp(&Scalar::random(order, rng))).collect();
        let partial = if out.is_empty() {
            GroupElement::identity(g.tag())
        } else {
            Self::aggregate(&out)
        };
        let root = Scalar::from_u64(order, 1u64 << (l - 1))
            .invert()
            .expect("2^i < q is nonzero");
        out.push(target.div(&partial).exp(&root));
        out
    }

    /// `AND_i (C_i = h^{r_i} OR C_i g^-1 = h^{r_i})`.
    pub fn construct(
        &self,
        g: &GroupElement,
        h: &GroupElement,
        precommitments: &[GroupElement],
        witness: Option<&Witness>,
    ) -> Result<Statement> {
        if precommitments.len() != self.bits as usize {
            return Err(Error::ShapeMismatch(format!(
                "{}-bit range takes {} bit commitments, got {}",
                self.bits,
                self.bits,
                precommitments.len()
            )));
        }
        let mut bit_stmts = Vec::with_capacity(precommitments.len());
        for (c, r) in precommitments.iter().zip(&self.randomness) {
            let flags = match witness.and_then(|w| w.get(r)) {
                Some(value) if h.exp(value) == *c => vec![false, true],
                Some(_) => vec![true, false],
                None => vec![false, false],
            };
            bit_stmts.push(Statement::or(
                vec![Statement::dlrep(*c, r * *h)?, Statement::dlrep(c.div(g), r * *h)?],
                flags,
            )?);
        }
        if bit_stmts.len() == 1 {
            Ok(bit_stmts.pop().expect("one element"))
        } else {
            Statement::and(bit_stmts)
        }
    }
}

/// Extended statement for `a <= x < b` where `com = g^x h^r`.
#[derive(Debug, Clone)]
pub struct RangeStmt {
    com: GroupElement,
    g: GroupElement,
    h: GroupElement,
    a: u64,
    b: u64,
    x: Secret,
    r: Secret,
    lower: PowerTwoRange,
    upper: PowerTwoRange,
}

impl RangeStmt {
    pub fn new(
        com: GroupElement,
        g: GroupElement,
        h: GroupElement,
        a: u64,
        b: u64,
        x: &Secret,
        r: &Secret,
    ) -> Result<Self> {
        if g.tag() != com.tag() || h.tag() != com.tag() {
            return Err(Error::Group(crate::group::GroupError::TagMismatch));
        }
        if a >= b {
            return Err(Error::InvalidRange(format!("empty range [{a}, {b})")));
        }
        let bits = range_bits(b - a);
        if bits > MAX_RANGE_BITS {
            return Err(Error::InvalidRange(format!(
                "range of {bits} bits exceeds {MAX_RANGE_BITS}"
            )));
        }
        if let Some(q) = com.order().small_order() {
            if (1u64 << bits) >= q || b > q {
                return Err(Error::InvalidRange(format!(
                    "range [{a}, {b}) too large for group order {q}"
                )));
            }
        }
        Ok(RangeStmt {
            com,
            g,
            h,
            a,
            b,
            x: x.clone(),
            r: r.clone(),
            lower: PowerTwoRange::new(bits),
            upper: PowerTwoRange::new(bits),
        })
    }

    pub fn bits(&self) -> u32 {
        self.lower.bits
    }

    fn order(&self) -> OrderTag {
        self.com.order()
    }

    /// `com g^-a`, committing to `x - a`.
    fn lower_target(&self) -> GroupElement {
        self.com.div(&self.g.exp(&Scalar::from_u64(self.order(), self.a)))
    }

    /// `com g^{2^l - b}`, committing to `x - b + 2^l`.
    fn upper_target(&self) -> GroupElement {
        let o = self.order();
        let shift = Scalar::from_u64(o, 1u64 << self.bits()) - Scalar::from_u64(o, self.b);
        self.com * self.g.exp(&shift)
    }

    fn split<'a>(&self, precommitments: &'a [GroupElement]) -> Result<(&'a [GroupElement], &'a [GroupElement])> {
        let l = self.bits() as usize;
        if precommitments.len() != 2 * l {
            return Err(Error::ShapeMismatch(format!(
                "range proof takes {} precommitment elements, got {}",
                2 * l,
                precommitments.len()
            )));
        }
        Ok(precommitments.split_at(l))
    }
}

/// Builds the extended range statement.
pub fn range_stmt(
    com: GroupElement,
    g: GroupElement,
    h: GroupElement,
    a: u64,
    b: u64,
    x: &Secret,
    r: &Secret,
) -> Result<Statement> {
    Ok(Statement::extended(RangeStmt::new(com, g, h, a, b, x, r)?))
}

impl ExtendedStatement for RangeStmt {
    fn name(&self) -> &'static str {
        "RangeStmt"
    }

    fn public_params(&self) -> Vec<u8> {
        let mut w = Writer::new();
        w.element(&self.com)
            .element(&self.g)
            .element(&self.h)
            .varint(self.a)
            .varint(self.b);
        w.into_bytes()
    }

    fn secrets(&self) -> Vec<Secret> {
        vec![self.x.clone(), self.r.clone()]
    }

    fn order(&self) -> OrderTag {
        self.order()
    }

    fn precommitment_groups(&self) -> Vec<GroupTag> {
        vec![self.com.tag(); 2 * self.bits() as usize]
    }

    fn precommit(&self, witness: &Witness, rng: &mut dyn CryptoRngCore) -> Result<Precommitment> {
        let x = witness.resolve(&self.x)?;
        let r = witness.resolve(&self.r)?;
        let value = x
            .to_u64()
            .filter(|v| (self.a..self.b).contains(v))
            .ok_or_else(|| Error::Precommit("secret value outside declared range".into()))?;
        if self.g.exp(&x) * self.h.exp(&r) != self.com {
            return Err(Error::Precommit("commitment does not open to the given secrets".into()));
        }
        if self.bits() == 0 {
            return Ok(Precommitment {
                elements: vec![],
                witness: vec![],
            });
        }
        let shifted_upper = value + (1u64 << self.bits()) - self.b;
        let mut lower = self.lower.precommit(&self.g, &self.h, value - self.a, &r, rng)?;
        let upper = self.upper.precommit(&self.g, &self.h, shifted_upper, &r, rng)?;
        lower.elements.extend(upper.elements);
        lower.witness.extend(upper.witness);
        Ok(lower)
    }

    fn simulate_precommit(&self, rng: &mut dyn CryptoRngCore) -> Vec<GroupElement> {
        if self.bits() == 0 {
            return vec![];
        }
        let mut out = self.lower.simulate(&self.g, &self.lower_target(), rng);
        out.extend(self.upper.simulate(&self.g, &self.upper_target(), rng));
        out
    }

    fn construct_stmt(&self, precommitments: &[GroupElement], witness: Option<&Witness>) -> Result<Statement> {
        if self.bits() == 0 {
            if !precommitments.is_empty() {
                return Err(Error::ShapeMismatch("single-value range takes no precommitment".into()));
            }
            return Statement::dlrep(self.lower_target(), &self.r * self.h);
        }
        let (lo, hi) = self.split(precommitments)?;
        Statement::and(vec![
            self.lower.construct(&self.g, &self.h, lo, witness)?,
            self.upper.construct(&self.g, &self.h, hi, witness)?,
        ])
    }

    fn validate(&self, precommitments: &[GroupElement]) -> Result<()> {
        if self.bits() == 0 {
            return if precommitments.is_empty() {
                Ok(())
            } else {
                Err(Error::Validation("single-value range takes no precommitment".into()))
            };
        }
        let (lo, hi) = self
            .split(precommitments)
            .map_err(|e| Error::Validation(e.to_string()))?;
        if PowerTwoRange::aggregate(lo) != self.lower_target() || PowerTwoRange::aggregate(hi) != self.upper_target() {
            return Err(Error::Validation(
                "bit commitments do not aggregate to the range commitment".into(),
            ));
        }
        Ok(())
    }
}
