//! Public-inputs file: everything the verifier needs to rebuild the
//! statement template.
//!
//! ```text
//! file    = 0x01 prefixed(scenario) backend varint(n) n * prefixed(element) varint(k) k * varint
//! backend = 0x00                                 curve
//!         | 0x01 varint(p) varint(q) varint(g)   toy
//! ```

use sigmakit::codec::{DecodeError, Reader, Writer};
use sigmakit::group::GroupElement;

use crate::scenario::{Backend, Scenario};

pub const PUBLIC_INPUTS_VERSION: u8 = 0x01;

const BACKEND_CURVE: u8 = 0x00;
const BACKEND_TOY: u8 = 0x01;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicInputs {
    pub scenario: Scenario,
    pub backend: Backend,
    pub elements: Vec<GroupElement>,
    pub integers: Vec<u64>,
}

impl PublicInputs {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        w.u8(PUBLIC_INPUTS_VERSION).prefixed(self.scenario.name().as_bytes());
        match self.backend {
            Backend::Curve => {
                w.u8(BACKEND_CURVE);
            }
            Backend::Toy { p, q, g } => {
                w.u8(BACKEND_TOY).varint(p).varint(q).varint(g);
            }
        }
        w.varint(self.elements.len() as u64);
        for e in &self.elements {
            w.element(e);
        }
        w.varint(self.integers.len() as u64);
        for v in &self.integers {
            w.varint(*v);
        }
        w.into_bytes()
    }

    /// Decodes and checks the file. Group parameters are validated before
    /// any element is parsed.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, String> {
        let mut r = Reader::new(bytes);
        let err = |e: DecodeError| e.to_string();
        let version = r.u8().map_err(err)?;
        if version != PUBLIC_INPUTS_VERSION {
            return Err(DecodeError::Version(version).to_string());
        }
        let name = r.prefixed().map_err(err)?;
        let scenario = std::str::from_utf8(name)
            .ok()
            .and_then(Scenario::from_name)
            .ok_or_else(|| format!("unknown scenario {:?}", String::from_utf8_lossy(name)))?;
        let backend = match r.u8().map_err(err)? {
            BACKEND_CURVE => Backend::Curve,
            BACKEND_TOY => Backend::Toy {
                p: r.varint().map_err(err)?,
                q: r.varint().map_err(err)?,
                g: r.varint().map_err(err)?,
            },
            other => return Err(format!("unknown backend tag {other:#04x}")),
        };
        let group = backend.group().map_err(|e| e.to_string())?;
        let n = r.length().map_err(err)?;
        let elements = (0..n)
            .map(|_| r.element(group.tag()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let k = r.length().map_err(err)?;
        let integers = (0..k).map(|_| r.varint()).collect::<Result<Vec<_>, _>>().map_err(err)?;
        r.finish().map_err(err)?;
        Ok(PublicInputs {
            scenario,
            backend,
            elements,
            integers,
        })
    }
}
