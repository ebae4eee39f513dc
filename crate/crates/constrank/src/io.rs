//! JSON (de)serialization. Rationals travel as exact strings ("3/4", "-2")
//! so round-trips never lose precision; matrices are row-major string
//! grids with explicit dimensions; subspaces re-validate on load.

use std::fs;
use std::path::Path;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::matrix::MatrixQ;
use crate::rational::{format_rat, parse_rat, Rat};
use crate::subspace::{AffineMatrixSubspace, Ambient};

/// Serde adapter for a single rational as an exact string.
pub mod rat_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rat(&raw).map_err(D::Error::custom)
    }
}

/// Serde adapter for a vector of rationals.
pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = xs.iter().map(format_rat).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rat>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|r| parse_rat(r).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter for an interval (pair of rationals).
pub mod rat_pair {
    use super::*;

    pub fn serialize<S: Serializer>(
        x: &(Rat, Rat),
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        (format_rat(&x.0), format_rat(&x.1)).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<(Rat, Rat), D::Error> {
        let (a, b) = <(String, String)>::deserialize(d)?;
        Ok((
            parse_rat(&a).map_err(D::Error::custom)?,
            parse_rat(&b).map_err(D::Error::custom)?,
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for MatrixQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| format_rat(self.get(i, j))).collect())
            .collect();
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.rows {
            return Err(D::Error::custom(format!(
                "matrix declares {} rows but carries {}",
                repr.rows,
                repr.entries.len()
            )));
        }
        let mut flat = Vec::with_capacity(repr.rows * repr.cols);
        for row in &repr.entries {
            if row.len() != repr.cols {
                return Err(D::Error::custom(format!(
                    "matrix declares {} cols but a row carries {}",
                    repr.cols,
                    row.len()
                )));
            }
            for e in row {
                flat.push(parse_rat(e).map_err(D::Error::custom)?);
            }
        }
        Ok(MatrixQ::new(repr.rows, repr.cols, flat))
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient: Ambient,
    base: MatrixQ,
    basis: Vec<MatrixQ>,
}

impl Serialize for AffineMatrixSubspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceRepr {
            ambient: self.ambient(),
            base: self.base().clone(),
            basis: self.basis().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineMatrixSubspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SubspaceRepr::deserialize(d)?;
        AffineMatrixSubspace::new(repr.ambient, repr.base, repr.basis).map_err(D::Error::custom)
    }
}

/// Pretty JSON with a trailing newline, the on-disk and stdout format.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json_string(value)?)?;
    Ok(())
}

pub fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let raw = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&raw)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::jtilde_matrix;
    use crate::rational::{int, rat};

    #[test]
    fn matrix_json_roundtrip() {
        let m = MatrixQ::new(2, 3, vec![int(0), rat(1, 2), int(-3), int(4), rat(-5, 7), int(0)]);
        let json = to_json_string(&m).unwrap();
        assert!(json.contains("\"1/2\""));
        assert!(json.contains("\"-5/7\""));
        let back: MatrixQ = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matrix_json_rejects_bad_shapes() {
        let bad_rows = r#"{"rows": 2, "cols": 1, "entries": [["1"]]}"#;
        assert!(serde_json::from_str::<MatrixQ>(bad_rows).is_err());
        let bad_cols = r#"{"rows": 1, "cols": 2, "entries": [["1"]]}"#;
        assert!(serde_json::from_str::<MatrixQ>(bad_cols).is_err());
        let bad_entry = r#"{"rows": 1, "cols": 1, "entries": [["1/0"]]}"#;
        assert!(serde_json::from_str::<MatrixQ>(bad_entry).is_err());
    }

    #[test]
    fn subspace_json_roundtrip_and_validation() {
        let mut dir = MatrixQ::zeros(4, 4);
        dir.set(0, 2, int(1));
        dir.set(2, 0, int(-1));
        let s = AffineMatrixSubspace::new(
            crate::subspace::Ambient::Antisymmetric,
            jtilde_matrix(4, 1),
            vec![dir],
        )
        .unwrap();
        let json = to_json_string(&s).unwrap();
        assert!(json.contains("\"antisymmetric\""));
        let back: AffineMatrixSubspace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        // A dependent basis must fail on load, not silently pass through.
        let tampered = json.replace(
            "\"basis\": [",
            &format!(
                "\"basis\": [{},",
                serde_json::to_string(s.basis().first().unwrap()).unwrap()
            ),
        );
        assert!(serde_json::from_str::<AffineMatrixSubspace>(&tampered).is_err());
    }

    #[test]
    fn file_roundtrip() {
        let tmp = tempfile::tempdir().unwrap();
        let path = tmp.path().join("m.json");
        let m = MatrixQ::identity(3);
        save_json(&path, &m).unwrap();
        let back: MatrixQ = load_json(&path).unwrap();
        assert_eq!(back, m);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.ends_with('\n'));
    }
}
