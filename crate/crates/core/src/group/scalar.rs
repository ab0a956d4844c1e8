use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use curve25519_dalek::scalar::Scalar as DalekScalar;
use rand_core::CryptoRngCore;

use super::{toy, GroupError, OrderTag};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Repr {
    Ristretto(DalekScalar),
    Toy { value: u64, q: u64 },
}

/// An element of `Z_q`, always fully reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero(order: OrderTag) -> Self {
        Self::from_u64(order, 0)
    }

    pub fn one(order: OrderTag) -> Self {
        Self::from_u64(order, 1)
    }

    /// `v mod q`.
    pub fn from_u64(order: OrderTag, v: u64) -> Self {
        match order {
            OrderTag::Ristretto255 => Scalar(Repr::Ristretto(DalekScalar::from(v))),
            OrderTag::Toy { q } => Scalar(Repr::Toy { value: v % q, q }),
        }
    }

    /// `-v mod q`.
    pub fn from_i64(order: OrderTag, v: i64) -> Self {
        let magnitude = Self::from_u64(order, v.unsigned_abs());
        if v < 0 {
            -magnitude
        } else {
            magnitude
        }
    }

    /// Draws a uniform scalar.
    ///
    /// Toy scalars reduce a single 64-bit draw modulo `q`; the bias is below
    /// `q / 2^64`. Ristretto scalars reduce 64 random bytes.
    pub fn random(order: OrderTag, rng: &mut dyn CryptoRngCore) -> Self {
        match order {
            OrderTag::Ristretto255 => {
                let mut wide = [0u8; 64];
                rng.fill_bytes(&mut wide);
                Scalar(Repr::Ristretto(DalekScalar::from_bytes_mod_order_wide(&wide)))
            }
            OrderTag::Toy { q } => Scalar(Repr::Toy {
                value: rng.next_u64() % q,
                q,
            }),
        }
    }

    /// Interprets `digest` as a big-endian integer and reduces it modulo `q`.
    pub fn from_digest(order: OrderTag, digest: &[u8; 32]) -> Self {
        match order {
            OrderTag::Ristretto255 => {
                let mut le = *digest;
                le.reverse();
                Scalar(Repr::Ristretto(DalekScalar::from_bytes_mod_order(le)))
            }
            OrderTag::Toy { q } => {
                let value = digest
                    .iter()
                    .fold(0u64, |acc, &b| toy::add_mod(toy::mul_mod(acc, 256, q), b as u64, q));
                Scalar(Repr::Toy { value, q })
            }
        }
    }

    pub fn order(&self) -> OrderTag {
        match self.0 {
            Repr::Ristretto(_) => OrderTag::Ristretto255,
            Repr::Toy { q, .. } => OrderTag::Toy { q },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self.0 {
            Repr::Ristretto(s) => s == DalekScalar::ZERO,
            Repr::Toy { value, .. } => value == 0,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn invert(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self.0 {
            Repr::Ristretto(s) => Scalar(Repr::Ristretto(s.invert())),
            Repr::Toy { value, q } => Scalar(Repr::Toy {
                value: toy::pow_mod(value, q - 2, q),
                q,
            }),
        })
    }

    /// The integer value, if it is below `2^64`.
    pub fn to_u64(&self) -> Option<u64> {
        match self.0 {
            Repr::Toy { value, .. } => Some(value),
            Repr::Ristretto(s) => {
                let bytes = s.to_bytes();
                if bytes[8..].iter().any(|&b| b != 0) {
                    return None;
                }
                Some(u64::from_le_bytes(bytes[..8].try_into().expect("8 bytes")))
            }
        }
    }

    /// Fixed-width big-endian encoding, `order().scalar_len()` bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        match self.0 {
            Repr::Ristretto(s) => {
                let mut be = s.to_bytes();
                be.reverse();
                be.to_vec()
            }
            Repr::Toy { value, q } => toy::encode_be(value, toy::byte_len(q)),
        }
    }

    /// Decodes a canonical encoding; values `>= q` are rejected.
    pub fn from_bytes(order: OrderTag, bytes: &[u8]) -> Result<Self, GroupError> {
        let width = order.scalar_len();
        if bytes.len() != width {
            return Err(GroupError::MalformedEncoding(format!(
                "scalar must be {width} bytes, got {}",
                bytes.len()
            )));
        }
        match order {
            OrderTag::Ristretto255 => {
                let mut le: [u8; 32] = bytes.try_into().expect("width checked");
                le.reverse();
                Option::<DalekScalar>::from(DalekScalar::from_canonical_bytes(le))
                    .map(|s| Scalar(Repr::Ristretto(s)))
                    .ok_or_else(|| GroupError::MalformedEncoding("non-canonical scalar".into()))
            }
            OrderTag::Toy { q } => {
                let value = toy::decode_be(bytes).expect("width checked");
                if value >= q {
                    return Err(GroupError::MalformedEncoding("non-canonical scalar".into()));
                }
                Ok(Scalar(Repr::Toy { value, q }))
            }
        }
    }

    pub(crate) fn as_dalek(&self) -> Option<&DalekScalar> {
        match &self.0 {
            Repr::Ristretto(s) => Some(s),
            Repr::Toy { .. } => None,
        }
    }

    pub(crate) fn toy_parts(&self) -> Option<(u64, u64)> {
        match self.0 {
            Repr::Toy { value, q } => Some((value, q)),
            Repr::Ristretto(_) => None,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!(
        "scalars from groups of different order: {:?} vs {:?}",
        a.order(),
        b.order()
    )
}

macro_rules! binop {
    ($trait:ident, $method:ident, $dalek:tt, $toy:path) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                match (self.0, rhs.0) {
                    (Repr::Ristretto(a), Repr::Ristretto(b)) => Scalar(Repr::Ristretto(a $dalek b)),
                    (Repr::Toy { value: a, q }, Repr::Toy { value: b, q: q2 }) if q == q2 => {
                        Scalar(Repr::Toy { value: $toy(a, b, q), q })
                    }
                    _ => mismatch(&self, &rhs),
                }
            }
        }

        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (*self).$method(*rhs)
            }
        }
    };
}

binop!(Add, add, +, toy::add_mod);
binop!(Sub, sub, -, toy::sub_mod);
binop!(Mul, mul, *, toy::mul_mod);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self.0 {
            Repr::Ristretto(s) => Scalar(Repr::Ristretto(-s)),
            Repr::Toy { value, q } => Scalar(Repr::Toy {
                value: toy::sub_mod(0, value, q),
                q,
            }),
        }
    }
}

impl std::iter::Sum for Scalar {
    /// Panics on an empty iterator, which has no order to take a zero from.
    fn sum<I: Iterator<Item = Scalar>>(mut iter: I) -> Scalar {
        let first = iter.next().expect("sum of an empty scalar sequence");
        iter.fold(first, |acc, s| acc + s)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Toy { value, q } => write!(f, "Scalar({value} mod {q})"),
            Repr::Ristretto(_) => {
                write!(f, "Scalar(0x")?;
                for b in self.to_bytes() {
                    write!(f, "{b:02x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_core::{CryptoRng, RngCore};

    const Q11: OrderTag = OrderTag::Toy { q: 11 };

    struct Fixed(u64);
    impl RngCore for Fixed {
        fn next_u32(&mut self) -> u32 {
            self.0 as u32
        }
        fn next_u64(&mut self) -> u64 {
            self.0
        }
        fn fill_bytes(&mut self, dest: &mut [u8]) {
            dest.fill(self.0 as u8)
        }
        fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand_core::Error> {
            self.fill_bytes(dest);
            Ok(())
        }
    }
    impl CryptoRng for Fixed {}

    #[test]
    fn random_reduces_raw_draw() {
        assert_eq!(Scalar::random(Q11, &mut Fixed(25)).to_u64(), Some(3));
    }

    #[test]
    fn toy_arithmetic() {
        let s = |v| Scalar::from_u64(Q11, v);
        assert_eq!(s(7) - s(5) * s(3), s(3));
        assert_eq!(-s(3), s(8));
        assert_eq!(Scalar::from_i64(Q11, -1), s(10));
        assert_eq!(s(3).invert().unwrap() * s(3), s(1));
        assert_eq!(s(0).invert(), None);
        assert_eq!(vec![s(4), s(9), s(5)].into_iter().sum::<Scalar>(), s(7));
    }

    #[test]
    fn encodings() {
        assert_eq!(Scalar::from_u64(Q11, 10).to_bytes(), vec![10]);
        assert!(Scalar::from_bytes(Q11, &[11]).is_err());
        assert!(Scalar::from_bytes(Q11, &[1, 2]).is_err());
        let r = Scalar::from_u64(OrderTag::Ristretto255, 0x0102);
        let bytes = r.to_bytes();
        assert_eq!(bytes.len(), 32);
        assert_eq!(&bytes[30..], &[1, 2]);
        assert_eq!(Scalar::from_bytes(OrderTag::Ristretto255, &bytes).unwrap(), r);
        assert!(Scalar::from_bytes(OrderTag::Ristretto255, &[0xff; 32]).is_err());
    }

    #[test]
    fn digest_reduction_is_big_endian() {
        let mut d = [0u8; 32];
        d[31] = 25;
        assert_eq!(Scalar::from_digest(Q11, &d).to_u64(), Some(3));
        d[30] = 1; // 256 + 25 = 281 = 25 * 11 + 6
        assert_eq!(Scalar::from_digest(Q11, &d).to_u64(), Some(6));
        assert_eq!(Scalar::from_digest(OrderTag::Ristretto255, &d).to_u64(), Some(281));
    }

    #[test]
    #[should_panic(expected = "different order")]
    fn mixing_orders_panics() {
        let _ = Scalar::one(Q11) + Scalar::one(OrderTag::Toy { q: 13 });
    }
}
