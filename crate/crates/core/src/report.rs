//! Serialization helpers: exact values are written as re-parseable strings.

use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::exactnum::ExactNumber;

pub fn exact<S: Serializer>(x: &ExactNumber, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn exact_vec<S: Serializer>(v: &[ExactNumber], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn exact_opt<S: Serializer>(x: &Option<ExactNumber>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Integers as JSON numbers when they fit in `i64`, else as decimal strings.
pub fn integers<S: Serializer>(v: &[num_bigint::BigInt], s: S) -> Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}
