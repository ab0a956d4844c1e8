#![allow(dead_code)]

use rand::Rng;
use rand_core::CryptoRngCore;
use sigmakit::dsl::Expression;
use sigmakit::group::{Group, GroupElement, OrderTag, Scalar};
use sigmakit::{Secret, Statement};

pub fn toy() -> Group {
    Group::toy(23, 11, 2).unwrap()
}

pub fn curve() -> Group {
    Group::ristretto255()
}

pub fn sc(group: &Group, v: u64) -> Scalar {
    Scalar::from_u64(group.order(), v)
}

pub fn toy_el(v: u64) -> GroupElement {
    GroupElement::toy(toy().tag(), v).unwrap()
}

pub fn secret(group: &Group, v: Option<u64>) -> Secret {
    match v {
        Some(v) => Secret::with_value(sc(group, v)),
        None => Secret::new(),
    }
}

pub fn second_generator(group: &Group) -> GroupElement {
    group.derive_generator(b"h")
}

/// `C = g^x h^r` and `PK{(x, r): C = g^x h^r}`; values unset when `None`.
pub fn pedersen_opening(group: &Group, x: Option<u64>, r: Option<u64>) -> Statement {
    let (g, h) = (group.generator(), second_generator(group));
    let c = g.exp(&sc(group, 20)) * h.exp(&sc(group, 1337));
    Statement::dlrep(c, &secret(group, x) * g + &secret(group, r) * h).unwrap()
}

/// ElGamal encryption of the bit `m` under `h` with randomness `r`.
pub fn elgamal_bit(group: &Group, m: u64, r: &Scalar) -> (GroupElement, GroupElement) {
    let (g, h) = (group.generator(), second_generator(group));
    (g.exp(r), g.exp(&sc(group, m)) * h.exp(r))
}

/// `PK{(r): c1 = g^r and (c2 = h^r or c2/g = h^r)}`, rejected by the
/// composition check.
pub fn encrypted_bit_nested(group: &Group, c: (GroupElement, GroupElement), r: &Secret) -> Statement {
    let (g, h) = (group.generator(), second_generator(group));
    Statement::and(vec![
        Statement::dlrep(c.0, r * g).unwrap(),
        Statement::or_unflagged(vec![
            Statement::dlrep(c.1, r * h).unwrap(),
            Statement::dlrep(c.1.div(&g), r * h).unwrap(),
        ])
        .unwrap(),
    ])
    .unwrap()
}

/// The same relation in disjunctive normal form. `m` picks the honest
/// disjunct; `None` leaves both unflagged for the verifier.
pub fn encrypted_bit_dnf(group: &Group, c: (GroupElement, GroupElement), r: &Secret, m: Option<u64>) -> Statement {
    let (g, h) = (group.generator(), second_generator(group));
    let enc0 = Statement::and(vec![
        Statement::dlrep(c.0, r * g).unwrap(),
        Statement::dlrep(c.1, r * h).unwrap(),
    ])
    .unwrap();
    let enc1 = Statement::and(vec![
        Statement::dlrep(c.0, r * g).unwrap(),
        Statement::dlrep(c.1.div(&g), r * h).unwrap(),
    ])
    .unwrap();
    match m {
        Some(m) => Statement::or(vec![enc0, enc1], vec![m != 0, m == 0]).unwrap(),
        None => Statement::or_unflagged(vec![enc0, enc1]).unwrap(),
    }
}

/// The pair `p1 = A=G^x and B=H^x and C=Z^y`, `p2 = A=G^x and B=H^y and C=Z^y`
/// over the curve, with `x = y` so both hold.
pub fn p1_p2(rng: &mut dyn CryptoRngCore) -> (Statement, Statement) {
    let group = curve();
    let (g, h, z) = (
        group.generator(),
        group.derive_generator(b"H"),
        group.derive_generator(b"Z"),
    );
    let v = group.random_scalar(rng);
    let (a, b, c) = (g.exp(&v), h.exp(&v), z.exp(&v));
    let build = |second_is_x: bool| {
        let x = Secret::with_value(v);
        let y = Secret::with_value(v);
        let mid = if second_is_x { &x } else { &y };
        Statement::and(vec![
            Statement::dlrep(a, &x * g).unwrap(),
            Statement::dlrep(b, mid * h).unwrap(),
            Statement::dlrep(c, &y * z).unwrap(),
        ])
        .unwrap()
    };
    (build(true), build(false))
}

/// Random statement tree over a group with a consistent witness.
///
/// Leaves draw bases as `g^k` so their left-hand sides can be computed from
/// the secret values. Every OR has one honest child whose leaves hold; the
/// other children get fresh secrets and false leaves. Secrets never cross an
/// OR boundary, so the tree passes the composition check.
pub struct TreeGen<'a> {
    pub group: &'a Group,
    pub max_depth: u32,
    pub max_fanout: usize,
}

impl TreeGen<'_> {
    pub fn generate(&self, rng: &mut (impl CryptoRngCore + Rng)) -> Statement {
        let pool = self.pool(rng);
        self.node(rng, 0, &pool, true)
    }

    fn pool(&self, rng: &mut (impl CryptoRngCore + Rng)) -> Vec<Secret> {
        (0..3)
            .map(|_| Secret::with_value(self.group.random_scalar(rng)))
            .collect()
    }

    fn node(&self, rng: &mut (impl CryptoRngCore + Rng), depth: u32, pool: &[Secret], truthful: bool) -> Statement {
        let kind = if depth >= self.max_depth {
            0
        } else {
            rng.gen_range(0..3)
        };
        match kind {
            0 => self.leaf(rng, pool, truthful),
            1 => {
                let n = rng.gen_range(2..=self.max_fanout);
                Statement::and((0..n).map(|_| self.node(rng, depth + 1, pool, truthful)).collect()).unwrap()
            }
            _ => {
                let n = rng.gen_range(2..=self.max_fanout);
                let honest = rng.gen_range(0..n);
                let mut children = Vec::with_capacity(n);
                for i in 0..n {
                    let fresh = self.pool(rng);
                    children.push(self.node(rng, depth + 1, &fresh, truthful && i == honest));
                }
                Statement::or(children, (0..n).map(|i| i != honest).collect()).unwrap()
            }
        }
    }

    fn leaf(&self, rng: &mut (impl CryptoRngCore + Rng), pool: &[Secret], truthful: bool) -> Statement {
        let g = self.group.generator();
        let order = self.group.order();
        let terms = rng.gen_range(1..=3);
        let mut expr: Option<Expression> = None;
        let mut exponent = Scalar::zero(order);
        for _ in 0..terms {
            let s = &pool[rng.gen_range(0..pool.len())];
            let k = loop {
                let k = self.group.random_scalar(rng);
                if !k.is_zero() {
                    break k;
                }
            };
            exponent = exponent + k * *s.value().unwrap();
            let base = g.exp(&k);
            expr = Some(match expr {
                None => s * base,
                Some(e) => e.plus(s, base),
            });
        }
        let mut lhs = g.exp(&exponent);
        if !truthful {
            lhs = lhs * g;
        }
        Statement::dlrep(lhs, expr.unwrap()).unwrap()
    }
}

pub fn toy_order() -> OrderTag {
    toy().order()
}
