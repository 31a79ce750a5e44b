//! Serde helpers: big integers and rationals serialize as decimal / `"p/q"` strings.

use num_bigint::BigInt;
use serde::Serializer;

use crate::combinat::{rat_string, BigRat};

type Res<S> = std::result::Result<<S as Serializer>::Ok, <S as Serializer>::Error>;

pub fn int<S: Serializer>(v: &BigInt, s: S) -> Res<S> {
    s.serialize_str(&v.to_string())
}

pub fn ints<S: Serializer>(v: &[BigInt], s: S) -> Res<S> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn int_matrix<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Res<S> {
    s.collect_seq(m.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

pub fn rat<S: Serializer>(v: &BigRat, s: S) -> Res<S> {
    s.serialize_str(&rat_string(v))
}

pub fn opt_rat<S: Serializer>(v: &Option<BigRat>, s: S) -> Res<S> {
    match v {
        Some(r) => s.serialize_str(&rat_string(r)),
        None => s.serialize_none(),
    }
}

pub fn rats<S: Serializer>(v: &[BigRat], s: S) -> Res<S> {
    s.collect_seq(v.iter().map(rat_string))
}

pub fn rat_matrix<S: Serializer>(m: &[Vec<BigRat>], s: S) -> Res<S> {
    s.collect_seq(m.iter().map(|row| row.iter().map(rat_string).collect::<Vec<_>>()))
}
