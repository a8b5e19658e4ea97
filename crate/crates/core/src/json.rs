//! JSON wire forms.
//!
//! Field elements are their canonical encodings, subspaces are RREF
//! bases, and rationals are strings ("3", "-1/2"). Decoding rebuilds the
//! field and rejects a modulus that disagrees with the canonical one and
//! any basis that is not already in canonical form.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::covers::{Cover, ProjectiveIndex, Provenance};
use crate::gf::{Field, FieldElem};
use crate::linalg::Subspace;
use crate::partitions::{Partition, PartitionKind};
use crate::scalar::{format_rational, parse_rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub m: usize,
    pub modulus: Vec<u32>,
}

impl From<&Field> for FieldJson {
    fn from(f: &Field) -> FieldJson {
        FieldJson {
            p: f.p() as u64,
            m: f.m(),
            modulus: f.modulus().to_vec(),
        }
    }
}

impl TryFrom<&FieldJson> for Field {
    type Error = Error;

    fn try_from(j: &FieldJson) -> Result<Field> {
        let f = Field::new(j.p, j.m)?;
        if f.modulus() != j.modulus.as_slice() {
            return Err(Error::Malformed(format!(
                "modulus {:?} is not the canonical modulus {:?} of GF({}^{})",
                j.modulus,
                f.modulus(),
                j.p,
                j.m
            )));
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientJson {
    pub field: FieldJson,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub field: FieldJson,
    pub n: usize,
    pub basis: Vec<Vec<u32>>,
}

impl From<&Subspace> for SubspaceJson {
    fn from(s: &Subspace) -> SubspaceJson {
        SubspaceJson {
            field: s.field().into(),
            n: s.ambient_dim(),
            basis: s.basis().to_rows(),
        }
    }
}

impl TryFrom<&SubspaceJson> for Subspace {
    type Error = Error;

    fn try_from(j: &SubspaceJson) -> Result<Subspace> {
        let f = Field::try_from(&j.field)?;
        Subspace::from_rref_rows(&f, j.n, &j.basis)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub kind: PartitionKind,
    pub ambient: AmbientJson,
    pub parts: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical_range: Option<bool>,
}

impl From<&Partition> for PartitionJson {
    fn from(p: &Partition) -> PartitionJson {
        PartitionJson {
            kind: p.kind(),
            ambient: AmbientJson {
                field: p.field().into(),
                n: p.ambient_dim(),
            },
            parts: p.parts().iter().map(|s| s.basis().to_rows()).collect(),
            classical_range: p.classical_range(),
        }
    }
}

impl TryFrom<&PartitionJson> for Partition {
    type Error = Error;

    fn try_from(j: &PartitionJson) -> Result<Partition> {
        let f = Field::try_from(&j.ambient.field)?;
        let n = j.ambient.n;
        let parts = j
            .parts
            .iter()
            .map(|rows| Subspace::from_rref_rows(&f, n, rows))
            .collect::<Result<Vec<_>>>()?;
        let mut p = Partition::new(&f, n, j.kind, parts)?;
        p.classical_range = j.classical_range;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub ambient: AmbientJson,
    pub codim: usize,
    pub count: usize,
    pub subspaces: Vec<Vec<Vec<u32>>>,
    pub provenance: Provenance,
}

impl From<&Cover> for CoverJson {
    fn from(c: &Cover) -> CoverJson {
        CoverJson {
            ambient: AmbientJson {
                field: c.field().into(),
                n: c.ambient_dim(),
            },
            codim: c.codim(),
            count: c.count(),
            subspaces: c.subspaces().iter().map(|s| s.basis().to_rows()).collect(),
            provenance: c.provenance().clone(),
        }
    }
}

impl TryFrom<&CoverJson> for Cover {
    type Error = Error;

    fn try_from(j: &CoverJson) -> Result<Cover> {
        if j.count != j.subspaces.len() {
            return Err(Error::Malformed(format!(
                "count is {} but {} subspaces are listed",
                j.count,
                j.subspaces.len()
            )));
        }
        let f = Field::try_from(&j.ambient.field)?;
        let n = j.ambient.n;
        let subs = j
            .subspaces
            .iter()
            .map(|rows| Subspace::from_rref_rows(&f, n, rows))
            .collect::<Result<Vec<_>>>()?;
        Cover::new(&f, n, j.codim, subs, j.provenance.clone())
    }
}

pub fn cover_to_value(c: &Cover) -> Value {
    serde_json::to_value(CoverJson::from(c)).expect("plain data")
}

pub fn cover_from_str(s: &str) -> Result<Cover> {
    let j: CoverJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    Cover::try_from(&j)
}

pub fn partition_to_value(p: &Partition) -> Value {
    serde_json::to_value(PartitionJson::from(p)).expect("plain data")
}

pub fn partition_from_str(s: &str) -> Result<Partition> {
    let j: PartitionJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    Partition::try_from(&j)
}

/// `{"i": .., "tail": ["3/2", ..]}`
pub fn rational_index_to_value(x: &ProjectiveIndex<BigRational>) -> Value {
    json!({
        "i": x.i,
        "tail": x.tail.iter().map(format_rational).collect::<Vec<_>>(),
    })
}

pub fn rational_index_from_value(v: &Value) -> Result<ProjectiveIndex<BigRational>> {
    #[derive(Deserialize)]
    struct Raw {
        i: usize,
        tail: Vec<String>,
    }
    let raw: Raw =
        serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
    Ok(ProjectiveIndex {
        i: raw.i,
        tail: raw
            .tail
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_>>()?,
    })
}

/// `{"i": .., "tail": [encodings]}`
pub fn field_index_to_value(x: &ProjectiveIndex<FieldElem>) -> Value {
    json!({
        "i": x.i,
        "tail": x.tail.iter().map(FieldElem::enc).collect::<Vec<_>>(),
    })
}

pub fn field_index_from_value(field: &Field, v: &Value) -> Result<ProjectiveIndex<FieldElem>> {
    #[derive(Deserialize)]
    struct Raw {
        i: usize,
        tail: Vec<u32>,
    }
    let raw: Raw =
        serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
    Ok(ProjectiveIndex {
        i: raw.i,
        tail: raw
            .tail
            .iter()
            .map(|&e| field.elem(e))
            .collect::<Result<_>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{cover_finite, projective_indices};
    use crate::partitions::{mixed_partition, spread_partition};
    use crate::Limits;

    #[test]
    fn cover_round_trip() {
        let f = Field::new(2, 1).unwrap();
        let c = cover_finite(&f, 7, 5, &Limits::default()).unwrap();
        let text = cover_to_value(&c).to_string();
        assert_eq!(cover_from_str(&text).unwrap(), c);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["count"], 43);
        assert_eq!(v["provenance"]["kind"], "peeling");
        assert_eq!(v["provenance"]["steps"][0]["op"], "peel");
    }

    #[test]
    fn partition_round_trip() {
        let f = Field::new(3, 1).unwrap();
        let p = mixed_partition(&f, 5, 2, &Limits::default()).unwrap();
        let v = partition_to_value(&p);
        assert_eq!(v["classical_range"], true);
        assert_eq!(partition_from_str(&v.to_string()).unwrap(), p);

        let s = spread_partition(&Field::new(2, 2).unwrap(), 4, 2, &Limits::default()).unwrap();
        let v = partition_to_value(&s);
        assert!(v.get("classical_range").is_none());
        assert_eq!(partition_from_str(&v.to_string()).unwrap(), s);
    }

    #[test]
    fn subspace_round_trip_and_rejections() {
        let f = Field::new(5, 1).unwrap();
        let s = Subspace::from_rows(&f, 3, &[vec![2, 4, 1], vec![0, 3, 3]]).unwrap();
        let j = SubspaceJson::from(&s);
        assert_eq!(Subspace::try_from(&j).unwrap(), s);

        let mut bad = j.clone();
        bad.basis[0][0] = 2;
        assert!(Subspace::try_from(&bad).is_err());

        let mut bad = j.clone();
        bad.field.modulus = vec![1, 1];
        assert!(matches!(Subspace::try_from(&bad), Err(Error::Malformed(_))));
    }

    #[test]
    fn cover_count_mismatch() {
        let f = Field::new(2, 1).unwrap();
        let c = cover_finite(&f, 2, 1, &Limits::default()).unwrap();
        let mut j = CoverJson::from(&c);
        j.count = 4;
        assert!(matches!(Cover::try_from(&j), Err(Error::Malformed(_))));
        assert!(cover_from_str("{not json").is_err());
    }

    #[test]
    fn index_round_trips() {
        let x = ProjectiveIndex {
            i: 1,
            tail: vec![
                parse_rational("3/2").unwrap(),
                parse_rational("-4").unwrap(),
            ],
        };
        let v = rational_index_to_value(&x);
        assert_eq!(v, json!({"i": 1, "tail": ["3/2", "-4"]}));
        assert_eq!(rational_index_from_value(&v).unwrap(), x);

        let f = Field::new(2, 2).unwrap();
        for x in projective_indices(&f, 2) {
            let v = field_index_to_value(&x);
            assert_eq!(field_index_from_value(&f, &v).unwrap(), x);
        }
    }
}
