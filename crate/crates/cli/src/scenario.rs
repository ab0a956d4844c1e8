//! Demo statements. Each scenario samples a witness and public values, and
//! can rebuild its verifier-side template from the public values alone.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use rand_core::CryptoRngCore;
use sigmakit::group::{Group, GroupElement, Scalar};
use sigmakit::primitives::{dl_not_equal, range_stmt};
use sigmakit::{Error, Secret, Statement};

use crate::public::PublicInputs;
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    /// Knowledge of x with X = g^x.
    Schnorr,
    /// The same x behind X = g^x and Y = h^x.
    EqualDl,
    /// An ElGamal ciphertext encrypts 0 or 1.
    EncBitOr,
    /// X = g^x and Y != h^x.
    Dlne,
    /// A Pedersen commitment opens to a value in [0, 8).
    Range,
    /// An ElGamal ciphertext encrypts m with 0 <= m < 5.
    Vote5,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::Schnorr,
        Scenario::EqualDl,
        Scenario::EncBitOr,
        Scenario::Dlne,
        Scenario::Range,
        Scenario::Vote5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Schnorr => "schnorr",
            Scenario::EqualDl => "equal-dl",
            Scenario::EncBitOr => "enc-bit-or",
            Scenario::Dlne => "dlne",
            Scenario::Range => "range",
            Scenario::Vote5 => "vote5",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Scenario::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `curve` or `toy:p,q,g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Curve,
    Toy { p: u64, q: u64, g: u64 },
}

impl Backend {
    pub fn group(&self) -> Result<Group, Failure> {
        match *self {
            Backend::Curve => Ok(Group::ristretto255()),
            Backend::Toy { p, q, g } => {
                Group::toy(p, q, g).map_err(|e| Failure::Config(format!("toy group ({p}, {q}, {g}): {e}")))
            }
        }
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "curve" {
            return Ok(Backend::Curve);
        }
        let params = s
            .strip_prefix("toy:")
            .ok_or_else(|| format!("expected `curve` or `toy:p,q,g`, got `{s}`"))?;
        let nums = params
            .split(',')
            .map(|v| v.trim().parse::<u64>().map_err(|e| format!("`{v}`: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        match nums[..] {
            [p, q, g] => Ok(Backend::Toy { p, q, g }),
            _ => Err(format!("toy backend takes three parameters p,q,g, got {}", nums.len())),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Curve => f.write_str("curve"),
            Backend::Toy { p, q, g } => write!(f, "toy:{p},{q},{g}"),
        }
    }
}

/// Bases shared by every scenario.
pub fn generators(group: &Group) -> (GroupElement, GroupElement) {
    (group.generator(), group.derive_generator(b"h"))
}

const RANGE_BOUNDS: (u64, u64) = (0, 8);
const VOTE_BOUNDS: (u64, u64) = (0, 5);

/// Prover side: a statement with secret values plus its public inputs.
pub fn instantiate(
    scenario: Scenario,
    backend: &Backend,
    dangerous_or: bool,
    rng: &mut dyn CryptoRngCore,
) -> Result<(Statement, PublicInputs), Failure> {
    let group = backend.group()?;
    let (g, h) = generators(&group);
    let public = |elements: Vec<GroupElement>, integers: Vec<u64>| PublicInputs {
        scenario,
        backend: backend.clone(),
        elements,
        integers,
    };
    let small = |rng: &mut dyn CryptoRngCore, bound: u64| Scalar::from_u64(group.order(), rng.next_u64() % bound);

    match scenario {
        Scenario::Schnorr => {
            let x = group.random_scalar(rng);
            let p = public(vec![g.exp(&x)], vec![]);
            Ok((template_with(&p, &group, &[x])?, p))
        }
        Scenario::EqualDl => {
            let x = group.random_scalar(rng);
            let p = public(vec![g.exp(&x), h.exp(&x)], vec![]);
            Ok((template_with(&p, &group, &[x])?, p))
        }
        Scenario::EncBitOr => {
            let (m, r) = (small(rng, 2), group.random_scalar(rng));
            let p = public(vec![g.exp(&r), g.exp(&m) * h.exp(&r)], vec![]);
            let c = (p.elements[0], p.elements[1]);
            let r = Secret::labeled_with_value("r", r);
            let stmt = if dangerous_or {
                encrypted_bit_nested(&group, c, &r)
            } else {
                encrypted_bit_dnf(&group, c, &r, Some(m.is_zero()))
            };
            let stmt = stmt.map_err(|e| Failure::Prove {
                stage: "statement construction",
                message: e.to_string(),
            })?;
            Ok((stmt, p))
        }
        Scenario::Dlne => {
            let x = group.random_scalar(rng);
            let y = loop {
                let y = group.random_scalar(rng);
                if y != x {
                    break y;
                }
            };
            let p = public(vec![g.exp(&x), h.exp(&y)], vec![]);
            Ok((template_with(&p, &group, &[x])?, p))
        }
        Scenario::Range => {
            let (a, b) = RANGE_BOUNDS;
            let (x, r) = (
                small(rng, b - a) + Scalar::from_u64(group.order(), a),
                group.random_scalar(rng),
            );
            let p = public(vec![g.exp(&x) * h.exp(&r)], vec![a, b]);
            Ok((template_with(&p, &group, &[x, r])?, p))
        }
        Scenario::Vote5 => {
            let (a, b) = VOTE_BOUNDS;
            let (m, r) = (
                small(rng, b - a) + Scalar::from_u64(group.order(), a),
                group.random_scalar(rng),
            );
            let p = public(vec![g.exp(&r), g.exp(&m) * h.exp(&r)], vec![a, b]);
            Ok((template_with(&p, &group, &[m, r])?, p))
        }
    }
}

/// Verifier side: the statement described by `public`, secrets unset.
pub fn template(public: &PublicInputs) -> Result<Statement, Failure> {
    let group = public.backend.group()?;
    template_with(public, &group, &[])
}

/// Builds the scenario statement; `values` fills the secrets in order when
/// given.
fn template_with(public: &PublicInputs, group: &Group, values: &[Scalar]) -> Result<Statement, Failure> {
    let (g, h) = generators(group);
    let secret = |i: usize, label: &str| match values.get(i) {
        Some(v) => Secret::labeled_with_value(label, *v),
        None => Secret::labeled(label),
    };
    let scenario = public.scenario;
    let build = || match (scenario, &public.elements[..], &public.integers[..]) {
        (Scenario::Schnorr, [x], []) => Statement::dlrep(*x, &secret(0, "x") * g),
        (Scenario::EqualDl, [x, y], []) => {
            let s = secret(0, "x");
            Statement::and(vec![Statement::dlrep(*x, &s * g)?, Statement::dlrep(*y, &s * h)?])
        }
        (Scenario::EncBitOr, [c1, c2], []) => encrypted_bit_dnf(group, (*c1, *c2), &secret(0, "r"), None),
        (Scenario::Dlne, [x, y], []) => dl_not_equal((*x, g), (*y, h), &secret(0, "x")),
        (Scenario::Range, [com], [a, b]) => range_stmt(*com, g, h, *a, *b, &secret(0, "x"), &secret(1, "r")),
        (Scenario::Vote5, [c1, c2], [a, b]) => {
            let (m, r) = (secret(0, "m"), secret(1, "r"));
            Statement::and(vec![
                Statement::dlrep(*c1, &r * g)?,
                Statement::dlrep(*c2, &m * g + &r * h)?,
                range_stmt(*c2, g, h, *a, *b, &m, &r)?,
            ])
        }
        _ => Err(Error::ShapeMismatch("wrong number of public values".into())),
    };
    build().map_err(|e| match e {
        Error::InvalidRange(msg) => Failure::Config(msg),
        other => Failure::Malformed(format!("public inputs for {scenario}: {other}")),
    })
}

/// DNF form `(c1 = g^r and c2 = h^r) or (c1 = g^r and c2/g = h^r)`.
/// `bit_is_zero` sets the simulation flags; `None` leaves them unset.
fn encrypted_bit_dnf(
    group: &Group,
    (c1, c2): (GroupElement, GroupElement),
    r: &Secret,
    bit_is_zero: Option<bool>,
) -> sigmakit::Result<Statement> {
    let (g, h) = generators(group);
    let enc = |rhs: GroupElement| Statement::and(vec![Statement::dlrep(c1, r * g)?, Statement::dlrep(rhs, r * h)?]);
    let children = vec![enc(c2)?, enc(c2.div(&g))?];
    match bit_is_zero {
        Some(zero) => Statement::or(children, vec![!zero, zero]),
        None => Statement::or_unflagged(children),
    }
}

/// `c1 = g^r and (c2 = h^r or c2/g = h^r)`: `r` occurs outside the OR,
/// which the prover refuses.
fn encrypted_bit_nested(
    group: &Group,
    (c1, c2): (GroupElement, GroupElement),
    r: &Secret,
) -> sigmakit::Result<Statement> {
    let (g, h) = generators(group);
    Statement::and(vec![
        Statement::dlrep(c1, r * g)?,
        Statement::or_unflagged(vec![Statement::dlrep(c2, r * h)?, Statement::dlrep(c2.div(&g), r * h)?])?,
    ])
}
