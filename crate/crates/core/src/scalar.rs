//! Exact rational scalars and their textual form.
//!
//! Rationals are written as `"p/q"` in lowest terms with `q > 0`, or `"p"`
//! when the denominator is one. They are never rendered as floating point.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;

use crate::error::{Error, Result};

/// The coefficient field of every computation in the crate.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_bigint(n: BigInt) -> Scalar {
    Scalar::from_integer(n)
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::ParseScalar(text.to_string());
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
        None => BigInt::from_str(text).map(Scalar::from_integer).map_err(|_| bad()),
    }
}

pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_positive(x: &Scalar) -> bool {
    x.is_positive()
}

/// Serde adapter: serializes as the canonical string, deserializes from a
/// string `"p/q"` or a bare JSON integer.
pub mod serde_scalar {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        d.deserialize_any(ScalarVisitor)
    }

    pub(crate) struct ScalarVisitor;

    impl<'de> Visitor<'de> for ScalarVisitor {
        type Value = Scalar;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a rational string \"p/q\" or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
            parse_scalar(v).map_err(E::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
            Ok(int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
            Ok(Scalar::from_integer(BigInt::from(v)))
        }

        fn visit_f64<E: de::Error>(self, _: f64) -> std::result::Result<Scalar, E> {
            Err(E::custom("floating-point numbers are not accepted; use \"p/q\""))
        }
    }
}

/// Serde adapter for lists of scalars.
pub mod serde_scalar_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_scalar(x))?;
        }
        seq.end()
    }
}

/// Serde wrapper for a single scalar inside containers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarRepr(pub Scalar);

impl serde::Serialize for ScalarRepr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_scalar::serialize(&self.0, s)
    }
}

impl<'de> serde::Deserialize<'de> for ScalarRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        serde_scalar::deserialize(d).map(ScalarRepr)
    }
}
