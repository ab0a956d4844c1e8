//! Byte-level building blocks shared by statement identifiers and the proof
//! wire format: LEB128 varints, length-prefixed byte strings, fixed-width
//! scalars and length-prefixed group elements.

use thiserror::Error;

use crate::group::{GroupElement, GroupError, GroupTag, OrderTag, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("input truncated")]
    Truncated,
    #[error("unsupported format version {0:#04x}")]
    Version(u8),
    #[error("{0} trailing bytes after the encoded value")]
    TrailingBytes(usize),
    #[error("varint overflows 64 bits")]
    VarintOverflow,
    #[error("invalid encoding: {0}")]
    Invalid(String),
    #[error("encoding does not match the statement: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Default, Clone)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn u8(&mut self, v: u8) -> &mut Self {
        self.buf.push(v);
        self
    }

    pub fn varint(&mut self, mut v: u64) -> &mut Self {
        loop {
            let byte = (v & 0x7f) as u8;
            v >>= 7;
            if v == 0 {
                self.buf.push(byte);
                return self;
            }
            self.buf.push(byte | 0x80);
        }
    }

    pub fn raw(&mut self, bytes: &[u8]) -> &mut Self {
        self.buf.extend_from_slice(bytes);
        self
    }

    pub fn prefixed(&mut self, bytes: &[u8]) -> &mut Self {
        self.varint(bytes.len() as u64).raw(bytes)
    }

    pub fn element(&mut self, e: &GroupElement) -> &mut Self {
        self.prefixed(&e.to_bytes())
    }

    pub fn scalar(&mut self, s: &Scalar) -> &mut Self {
        self.raw(&s.to_bytes())
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }
}

#[derive(Debug, Clone)]
pub struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf }
    }

    pub fn remaining(&self) -> usize {
        self.buf.len()
    }

    pub fn u8(&mut self) -> Result<u8, DecodeError> {
        Ok(self.raw(1)?[0])
    }

    pub fn varint(&mut self) -> Result<u64, DecodeError> {
        let mut value = 0u64;
        for shift in (0..64).step_by(7) {
            let byte = self.u8()?;
            let bits = (byte & 0x7f) as u64;
            if shift == 63 && bits > 1 {
                return Err(DecodeError::VarintOverflow);
            }
            value |= bits << shift;
            if byte & 0x80 == 0 {
                return Ok(value);
            }
        }
        Err(DecodeError::VarintOverflow)
    }

    /// A varint used as a count or length; never larger than the input left.
    pub fn length(&mut self) -> Result<usize, DecodeError> {
        let v = self.varint()?;
        if v > self.buf.len() as u64 {
            return Err(DecodeError::Truncated);
        }
        Ok(v as usize)
    }

    pub fn raw(&mut self, n: usize) -> Result<&'a [u8], DecodeError> {
        if self.buf.len() < n {
            return Err(DecodeError::Truncated);
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Ok(head)
    }

    pub fn prefixed(&mut self) -> Result<&'a [u8], DecodeError> {
        let n = self.length()?;
        self.raw(n)
    }

    pub fn element(&mut self, tag: GroupTag) -> Result<GroupElement, DecodeError> {
        Ok(GroupElement::from_bytes(tag, self.prefixed()?)?)
    }

    pub fn scalar(&mut self, order: OrderTag) -> Result<Scalar, DecodeError> {
        Ok(Scalar::from_bytes(order, self.raw(order.scalar_len())?)?)
    }

    pub fn finish(self) -> Result<(), DecodeError> {
        match self.buf.len() {
            0 => Ok(()),
            n => Err(DecodeError::TrailingBytes(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn varint_known_encodings() {
        let enc = |v| {
            let mut w = Writer::new();
            w.varint(v);
            w.into_bytes()
        };
        assert_eq!(enc(0), vec![0]);
        assert_eq!(enc(127), vec![0x7f]);
        assert_eq!(enc(128), vec![0x80, 0x01]);
        assert_eq!(enc(300), vec![0xac, 0x02]);
        assert_eq!(enc(u64::MAX).len(), 10);
    }

    #[test]
    fn varint_rejects_overflow_and_truncation() {
        let mut r = Reader::new(&[0xff; 11]);
        assert_eq!(r.varint(), Err(DecodeError::VarintOverflow));
        let mut r = Reader::new(&[0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0x02]);
        assert_eq!(r.varint(), Err(DecodeError::VarintOverflow));
        let mut r = Reader::new(&[0x80]);
        assert_eq!(r.varint(), Err(DecodeError::Truncated));
        let mut r = Reader::new(&[0x05, 1, 2]);
        assert_eq!(r.prefixed(), Err(DecodeError::Truncated));
    }

    proptest! {
        #[test]
        fn varint_roundtrip(v: u64) {
            let mut w = Writer::new();
            w.varint(v);
            let bytes = w.into_bytes();
            let mut r = Reader::new(&bytes);
            prop_assert_eq!(r.varint().unwrap(), v);
            prop_assert!(r.finish().is_ok());
        }
    }
}
