//! Exact arithmetic: finite fields, polynomials, rationals, Laurent series,
//! character formulas and Bernoulli numbers.

pub mod bernoulli;
pub mod field;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod sl2;
pub mod sp4;
pub mod weil;

pub use field::{Elem, FieldCtx};
pub use weil::WeilData;

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn rat_int(n: impl Into<Int>) -> Rat {
    Rat::from_integer(n.into())
}

/// Returns the integer value of `r`, or `None` if it is not integral.
pub fn to_int(r: &Rat) -> Option<Int> {
    r.is_integer().then(|| r.to_integer())
}

/// Formats a rational as `a/b`, or `a` when integral.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: Int = d.trim().parse().ok()?;
            if d == Int::from(0) {
                return None;
            }
            Some(Rat::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rat::from_integer(s.trim().parse().ok()?)),
    }
}

/// Serde adapters writing rationals as `"n/d"` strings and big integers as
/// decimal strings.
pub mod serde_frac {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::{parse_rat, Int, Rat};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| D::Error::custom(format!("bad fraction `{s}`")))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => super::serialize(r, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| parse_rat(&s).ok_or_else(|| D::Error::custom(format!("bad fraction `{s}`"))))
                .transpose()
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format!("{}/{}", r.numer(), r.denom()))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            Vec::<String>::deserialize(d)?
                .into_iter()
                .map(|s| parse_rat(&s).ok_or_else(|| D::Error::custom(format!("bad fraction `{s}`"))))
                .collect()
        }
    }

    pub mod int {
        use super::*;

        pub fn serialize<S: Serializer>(n: &Int, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&n.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
            let s = String::deserialize(d)?;
            s.parse().map_err(|_| D::Error::custom(format!("bad integer `{s}`")))
        }
    }
}
