use std::fmt;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::gf::is_prime;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    /// GF(p^m); only the order matters here, so no descriptor is built.
    Finite { p: u64, m: u32 },
    /// Any infinite field, e.g. "Q".
    Infinite { label: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimKind {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceSpec {
    pub field: FieldKind,
    pub dim: DimKind,
}

impl SpaceSpec {
    pub fn finite(p: u64, m: u32, n: usize) -> SpaceSpec {
        SpaceSpec {
            field: FieldKind::Finite { p, m },
            dim: DimKind::Finite(n),
        }
    }

    fn order(&self) -> Result<Option<BigUint>> {
        match &self.field {
            FieldKind::Finite { p, m } => {
                if !is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                if *m < 1 {
                    return Err(Error::InvalidParameter(
                        "extension degree must be at least 1".into(),
                    ));
                }
                Ok(Some(BigUint::from(*p).pow(*m)))
            }
            FieldKind::Infinite { .. } => Ok(None),
        }
    }
}

/// The minimal index set of a cover by codimension-k subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverCardinality {
    Finite(BigUint),
    CountablyInfinite,
    /// The index set `F^k ⊔ {∞}` (that is, F P^k).
    FieldPowerPlusPoint(usize),
}

impl CoverCardinality {
    /// The number of subspaces when the index set is finite for a field
    /// of order `q`.
    pub fn count_for(&self, q: Option<&BigUint>) -> Option<BigUint> {
        match (self, q) {
            (CoverCardinality::Finite(c), _) => Some(c.clone()),
            (CoverCardinality::FieldPowerPlusPoint(k), Some(q)) => Some(q.pow(*k as u32) + 1u32),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CoverCardinality::Finite(c) => json!({"kind": "finite", "count": c.to_string()}),
            CoverCardinality::CountablyInfinite => json!({"kind": "countably_infinite"}),
            CoverCardinality::FieldPowerPlusPoint(k) => {
                json!({"kind": "field_power_plus_point", "k": k})
            }
        }
    }
}

impl fmt::Display for CoverCardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverCardinality::Finite(c) => write!(f, "{c}"),
            CoverCardinality::CountablyInfinite => write!(f, "countably infinite"),
            CoverCardinality::FieldPowerPlusPoint(k) => write!(f, "F^{k} ⊔ {{∞}}"),
        }
    }
}

/// `⌈(q^n - 1)/(q^{n-k} - 1)⌉` in exact arithmetic.
pub fn finite_cover_number(q: &BigUint, n: usize, k: usize) -> Result<BigUint> {
    if k < 1 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "codimension must satisfy 1 <= k < n, got k = {k}, n = {n}"
        )));
    }
    if *q < BigUint::from(2u32) {
        return Err(Error::InvalidParameter(
            "field order must be at least 2".into(),
        ));
    }
    let num = q.pow(n as u32) - 1u32;
    let den = q.pow((n - k) as u32) - 1u32;
    Ok((num + &den - 1u32) / den)
}

pub fn nu(spec: &SpaceSpec, k: usize) -> Result<CoverCardinality> {
    if k < 1 {
        return Err(Error::InvalidParameter(
            "codimension must be at least 1".into(),
        ));
    }
    if let DimKind::Finite(n) = spec.dim {
        if k >= n {
            return Err(Error::InvalidParameter(format!(
                "codimension {k} must be below the dimension {n}"
            )));
        }
    }
    let order = spec.order()?;
    Ok(match (order, spec.dim) {
        (Some(q), DimKind::Finite(n)) => CoverCardinality::Finite(finite_cover_number(&q, n, k)?),
        (None, DimKind::Infinite) => CoverCardinality::CountablyInfinite,
        _ => CoverCardinality::FieldPowerPlusPoint(k),
    })
}
