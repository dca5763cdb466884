use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A natural number or infinity.
///
/// The derived order puts every `Fin` below `Inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(k) => Some(k),
            ExtNat::Inf => None,
        }
    }

    /// Text used in machine-readable output: the integer, or `"inf"`.
    pub fn to_plain(self) -> String {
        match self {
            ExtNat::Fin(k) => k.to_string(),
            ExtNat::Inf => "inf".to_string(),
        }
    }
}

impl From<u64> for ExtNat {
    fn from(k: u64) -> Self {
        ExtNat::Fin(k)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a + b),
            _ => ExtNat::Inf,
        }
    }
}

impl Add<u64> for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: u64) -> ExtNat {
        self + ExtNat::Fin(rhs)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(k) => write!(f, "{k}"),
            ExtNat::Inf => f.write_str("∞"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(k) => serializer.serialize_u64(*k),
            ExtNat::Inf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(k) => Ok(ExtNat::Fin(k)),
            Raw::Text(s) if s == "inf" => Ok(ExtNat::Inf),
            Raw::Text(s) => Err(serde::de::Error::custom(format!("expected integer or \"inf\", got {s:?}"))),
        }
    }
}
