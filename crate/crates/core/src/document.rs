//! Family input documents.
//!
//! JSON is canonical:
//!
//! ```json
//! { "dimension": 2, "vectors": [ { "id": "phi1", "coords": ["1", "3/2"] } ] }
//! ```
//!
//! Coordinates are decimal integers or `p/q` fractions, as strings or JSON
//! integers. A CSV convenience form is also read: the header row holds the
//! ids and each following row holds one coordinate of every vector.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::family::{FamilyEntry, VectorFamily};
use crate::linalg::{format_rational, Rational, RationalVector};

/// Parses `"-3"`, `"+4"` or `"p/q"` exactly. Decimal points are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let integer = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("invalid rational literal {text:?}")));
        }
        s.strip_prefix('+')
            .unwrap_or(s)
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("invalid rational literal {text:?}: {e}")))
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(integer(text)?)),
        Some((p, q)) => {
            let q = integer(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(integer(p)?, q))
        }
    }
}

/// An exact rational that serializes as a fraction string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLiteral(pub Rational);

impl Serialize for RationalLiteral {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalLiteral {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct LiteralVisitor;

        impl Visitor<'_> for LiteralVisitor {
            type Value = RationalLiteral;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                parse_rational(v).map(RationalLiteral).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                Ok(RationalLiteral(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                Ok(RationalLiteral(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Self::Value, E> {
                Err(E::custom(format!(
                    "floating-point coordinate {v} is not an exact rational literal"
                )))
            }
        }

        deserializer.deserialize_any(LiteralVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorRecord {
    pub id: String,
    pub coords: Vec<RationalLiteral>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub dimension: usize,
    pub vectors: Vec<VectorRecord>,
}

impl FamilyDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    /// Header row of ids; each later row is one coordinate across all
    /// vectors.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let ids: Vec<String> = reader
            .headers()
            .map_err(|e| Error::Parse(e.to_string()))?
            .iter()
            .map(str::to_owned)
            .collect();
        let mut columns: Vec<Vec<RationalLiteral>> = vec![Vec::new(); ids.len()];
        let mut dimension = 0;
        for record in reader.records() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            for (column, field) in columns.iter_mut().zip(record.iter()) {
                column.push(RationalLiteral(parse_rational(field)?));
            }
            dimension += 1;
        }
        let doc = Self {
            dimension,
            vectors: ids
                .into_iter()
                .zip(columns)
                .map(|(id, coords)| VectorRecord { id, coords })
                .collect(),
        };
        doc.validate()?;
        Ok(doc)
    }

    /// Reads a `.csv` file as CSV and anything else as JSON.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        let is_csv = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if is_csv {
            Self::from_csv(&text)
        } else {
            Self::from_json(&text)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::Schema("dimension must be positive".into()));
        }
        let mut ids = HashSet::new();
        for v in &self.vectors {
            if v.id.is_empty() {
                return Err(Error::Schema("vector ids must be nonempty".into()));
            }
            if !ids.insert(v.id.as_str()) {
                return Err(Error::Schema(format!("duplicate vector id {:?}", v.id)));
            }
            if v.coords.len() != self.dimension {
                return Err(Error::Schema(format!(
                    "vector {:?} has {} coordinates, expected {}",
                    v.id,
                    v.coords.len(),
                    self.dimension
                )));
            }
        }
        Ok(())
    }

    pub fn to_family(&self) -> Result<VectorFamily> {
        self.validate()?;
        let entries = self
            .vectors
            .iter()
            .map(|v| FamilyEntry {
                label: v.id.clone(),
                vector: RationalVector::new(v.coords.iter().map(|c| c.0.clone()).collect()),
            })
            .collect();
        VectorFamily::new(self.dimension, entries)
    }

    pub fn from_family(family: &VectorFamily) -> Self {
        Self {
            dimension: family.dimension(),
            vectors: family
                .entries()
                .iter()
                .map(|e| VectorRecord {
                    id: e.label.clone(),
                    coords: e
                        .vector
                        .coords()
                        .iter()
                        .cloned()
                        .map(RationalLiteral)
                        .collect(),
                })
                .collect(),
        }
    }
}
