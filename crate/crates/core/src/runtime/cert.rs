use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use super::Scheme;
use crate::ceil_log2;

/// Inclusive integer range a field is declared to live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: u64,
    pub hi: u64,
}

impl Domain {
    pub const fn new(lo: u64, hi: u64) -> Self {
        Domain { lo, hi }
    }

    pub fn bits(&self) -> u32 {
        ceil_log2(self.hi.saturating_sub(self.lo).saturating_add(1))
    }

    pub fn contains(&self, x: u64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn size(&self) -> u64 {
        self.hi.saturating_sub(self.lo).saturating_add(1)
    }
}

/// Node identifiers are tagged so that samplers can draw them from the identifiers in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ValueKind {
    #[default]
    Int,
    Id,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntField {
    pub name: Cow<'static, str>,
    pub value: u64,
    pub domain: Domain,
    #[serde(default, skip_serializing_if = "is_int")]
    pub kind: ValueKind,
}

fn is_int(k: &ValueKind) -> bool {
    *k == ValueKind::Int
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Field {
    Int(IntField),
    Sub { name: Cow<'static, str>, fields: Vec<Field> },
}

impl Field {
    pub fn name(&self) -> &str {
        match self {
            Field::Int(f) => &f.name,
            Field::Sub { name, .. } => name,
        }
    }

    fn bits(&self) -> u32 {
        match self {
            Field::Int(f) => f.domain.bits(),
            Field::Sub { fields, .. } => fields.iter().map(Field::bits).sum(),
        }
    }
}

/// A node's label: an ordered list of named integer fields and nested sub-certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub scheme: Scheme,
    pub fields: Vec<Field>,
}

impl Certificate {
    /// Size in bits under the declared domains.
    pub fn bits(&self) -> u32 {
        self.fields.iter().map(Field::bits).sum()
    }

    /// All integer fields in depth-first order.
    pub fn leaves(&self) -> Vec<&IntField> {
        fn walk<'a>(fields: &'a [Field], out: &mut Vec<&'a IntField>) {
            for f in fields {
                match f {
                    Field::Int(x) => out.push(x),
                    Field::Sub { fields, .. } => walk(fields, out),
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.fields, &mut out);
        out
    }

    pub fn leaves_mut(&mut self) -> Vec<&mut IntField> {
        fn walk<'a>(fields: &'a mut [Field], out: &mut Vec<&'a mut IntField>) {
            for f in fields {
                match f {
                    Field::Int(x) => out.push(x),
                    Field::Sub { fields, .. } => walk(fields, out),
                }
            }
        }
        let mut out = Vec::new();
        walk(&mut self.fields, &mut out);
        out
    }

    /// Looks up an integer field by a dotted path such as `size.tree.root`.
    pub fn get(&self, path: &str) -> Option<u64> {
        let mut fields = &self.fields[..];
        let mut parts = path.split('.').peekable();
        while let Some(part) = parts.next() {
            let f = fields.iter().find(|f| f.name() == part)?;
            match (f, parts.peek()) {
                (Field::Int(x), None) => return Some(x.value),
                (Field::Sub { fields: inner, .. }, Some(_)) => fields = inner,
                _ => return None,
            }
        }
        None
    }

    /// Whether every integer field lies in its declared domain.
    pub fn in_domain(&self) -> bool {
        self.leaves().iter().all(|f| f.domain.contains(f.value))
    }
}

/// Quantities field domains are derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims {
    pub n: u64,
    pub id_bound: u64,
}

impl Dims {
    pub fn new(n: usize, id_bound: u64) -> Self {
        Dims { n: n.max(1) as u64, id_bound: id_bound.max(1) }
    }

    pub fn of(g: &crate::Graph) -> Self {
        Dims::new(g.n(), g.id_bound())
    }

    pub fn id(&self) -> Domain {
        Domain::new(1, self.id_bound)
    }

    /// Identifier or 0 for "none".
    pub fn id_or_none(&self) -> Domain {
        Domain::new(0, self.id_bound)
    }
}

pub struct CertWriter<'d> {
    dims: &'d Dims,
    fields: Vec<Field>,
}

impl<'d> CertWriter<'d> {
    pub fn new(dims: &'d Dims) -> Self {
        CertWriter { dims, fields: Vec::new() }
    }

    pub fn dims(&self) -> &Dims {
        self.dims
    }

    pub fn int(&mut self, name: &'static str, value: u64, domain: Domain) -> &mut Self {
        self.fields.push(Field::Int(IntField { name: Cow::Borrowed(name), value, domain, kind: ValueKind::Int }));
        self
    }

    pub fn id(&mut self, name: &'static str, value: u64, domain: Domain) -> &mut Self {
        self.fields.push(Field::Int(IntField { name: Cow::Borrowed(name), value, domain, kind: ValueKind::Id }));
        self
    }

    pub fn sub<C: CertCodec>(&mut self, name: &'static str, cert: &C) -> &mut Self {
        let mut w = CertWriter::new(self.dims);
        cert.encode(&mut w);
        self.fields.push(Field::Sub { name: Cow::Borrowed(name), fields: w.fields });
        self
    }

    pub fn finish(self) -> Vec<Field> {
        self.fields
    }
}

/// Sequential decoder; every accessor checks the expected field name.
pub struct CertReader<'a> {
    fields: &'a [Field],
    pos: usize,
}

impl<'a> CertReader<'a> {
    pub fn new(fields: &'a [Field]) -> Self {
        CertReader { fields, pos: 0 }
    }

    pub fn int(&mut self, name: &str) -> Option<u64> {
        match self.fields.get(self.pos)? {
            Field::Int(f) if f.name == name => {
                self.pos += 1;
                Some(f.value)
            }
            _ => None,
        }
    }

    pub fn sub<C: CertCodec>(&mut self, name: &str) -> Option<C> {
        match self.fields.get(self.pos)? {
            Field::Sub { name: n, fields } if n == name => {
                self.pos += 1;
                let mut r = CertReader::new(fields);
                let c = C::decode(&mut r)?;
                r.done().then_some(c)
            }
            _ => None,
        }
    }

    pub fn done(&self) -> bool {
        self.pos == self.fields.len()
    }
}

/// Typed certificate contents with a structural encoding into [`Field`] lists.
pub trait CertCodec: Sized + Default {
    fn encode(&self, w: &mut CertWriter<'_>);
    fn decode(r: &mut CertReader<'_>) -> Option<Self>;

    fn to_certificate(&self, scheme: Scheme, dims: &Dims) -> Certificate {
        let mut w = CertWriter::new(dims);
        self.encode(&mut w);
        Certificate { scheme, fields: w.finish() }
    }

    fn from_certificate(cert: &Certificate) -> Option<Self> {
        let mut r = CertReader::new(&cert.fields);
        let c = Self::decode(&mut r)?;
        r.done().then_some(c)
    }

    /// Field layout and domains at the given dimensions.
    fn template(scheme: Scheme, dims: &Dims) -> Certificate {
        Self::default().to_certificate(scheme, dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Default, Debug, PartialEq)]
    struct Pair {
        a: u64,
        b: u64,
    }

    impl CertCodec for Pair {
        fn encode(&self, w: &mut CertWriter<'_>) {
            let d = *w.dims();
            w.int("a", self.a, Domain::new(0, d.n - 1)).id("b", self.b, d.id());
        }
        fn decode(r: &mut CertReader<'_>) -> Option<Self> {
            Some(Pair { a: r.int("a")?, b: r.int("b")? })
        }
    }

    #[derive(Default, Debug, PartialEq)]
    struct Outer {
        x: u64,
        inner: Pair,
    }

    impl CertCodec for Outer {
        fn encode(&self, w: &mut CertWriter<'_>) {
            w.int("x", self.x, Domain::new(1, 4)).sub("inner", &self.inner);
        }
        fn decode(r: &mut CertReader<'_>) -> Option<Self> {
            Some(Outer { x: r.int("x")?, inner: r.sub("inner")? })
        }
    }

    #[test]
    fn bits_follow_domains() {
        let dims = Dims::new(16, 4096);
        let c = Outer { x: 2, inner: Pair { a: 3, b: 7 } }.to_certificate(Scheme::Size, &dims);
        assert_eq!(c.bits(), 2 + 4 + 12);
        assert_eq!(c.get("inner.b"), Some(7));
        assert_eq!(c.leaves().len(), 3);
        assert_eq!(Domain::new(0, 0).bits(), 0);
    }

    #[test]
    fn decode_round_trip_and_truncation() {
        let dims = Dims::new(16, 4096);
        let o = Outer { x: 2, inner: Pair { a: 3, b: 7 } };
        let mut c = o.to_certificate(Scheme::Size, &dims);
        assert_eq!(Outer::from_certificate(&c), Some(o));
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Certificate>(&json).unwrap(), c);
        c.fields.pop();
        assert_eq!(Outer::from_certificate(&c), None);
    }
}
