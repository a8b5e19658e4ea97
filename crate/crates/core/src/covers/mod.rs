//! Covers of a vector space by subspaces of one codimension.
//!
//! * [`nu`] classifies the minimal index set for every field/dimension
//!   regime.
//! * [`cover_finite`] builds a minimal cover of F_q^n, and [`plan_cover`]
//!   predicts its shape and size without building anything.
//! * [`lift_cover`] pulls a cover of a quotient back to the whole space.
//! * [`projective_assign`] and [`countable_cover_index`] are the membership
//!   rules of the covers used over infinite fields.

mod cardinality;
mod countable;
mod finite;
mod limit;
mod projective;

pub use cardinality::{finite_cover_number, nu, CoverCardinality, DimKind, FieldKind, SpaceSpec};
pub use countable::{countable_cover_index, filtration_contains, FiniteSupportVector};
pub use finite::{cover_finite, lift_cover, lift_spread_cover, plan_cover, CoverPlan};
pub use limit::{f1_ceiling_of_ratio, f1_cover_number, f1_ratio_at_one};
pub use projective::{
    index_subspace, projective_assign, projective_indices, MembershipWitness, ProjectiveAssignment,
    ProjectiveIndex,
};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::gf::Field;
use crate::linalg::Subspace;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProvenanceKind {
    Spread,
    Peeling,
    Lifted,
}

/// One stage of a cover construction and the parts it contributes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ProvenanceStep {
    /// Spread of F^n into d-dimensional parts: `(q^n - 1)/(q^d - 1)` parts.
    Spread { n: usize, d: usize },
    /// Mixed partition of the current F^N: keeps `q^(N-d)` parts of
    /// dimension d and continues inside the (N-d)-dimensional part.
    Peel { ambient_dim: usize, d: usize },
    /// Quotient of F^r by its last `2d - r` coordinates, spread into
    /// `q^(r-d) + 1` parts and lifted back.
    Tail {
        r: usize,
        d: usize,
        kernel_dim: usize,
        quotient_dim: usize,
    },
    /// Preimage of every part under a quotient map; adds no parts.
    Lift { kernel_dim: usize },
}

impl ProvenanceStep {
    pub fn part_count(&self, q: &BigUint) -> BigUint {
        match *self {
            ProvenanceStep::Spread { n, d } => (q.pow(n as u32) - 1u32) / (q.pow(d as u32) - 1u32),
            ProvenanceStep::Peel { ambient_dim, d } => q.pow((ambient_dim - d) as u32),
            ProvenanceStep::Tail { r, d, .. } => q.pow((r - d) as u32) + 1u32,
            ProvenanceStep::Lift { .. } => BigUint::from(0u32),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: ProvenanceKind,
    pub steps: Vec<ProvenanceStep>,
}

impl Provenance {
    pub fn predicted_count(&self, q: &BigUint) -> BigUint {
        self.steps.iter().map(|s| s.part_count(q)).sum()
    }
}

/// A finite family of subspaces of F_q^n, all of codimension `codim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    field: Field,
    n: usize,
    codim: usize,
    subspaces: Vec<Subspace>,
    provenance: Provenance,
}

impl Cover {
    /// Checks shapes only; whether the family covers is the oracle's job.
    pub fn new(
        field: &Field,
        n: usize,
        codim: usize,
        subspaces: Vec<Subspace>,
        provenance: Provenance,
    ) -> Result<Cover> {
        if codim > n {
            return Err(Error::InvalidParameter(format!(
                "codimension {codim} exceeds ambient dimension {n}"
            )));
        }
        for s in &subspaces {
            field.ensure_same(s.field())?;
            if s.ambient_dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.ambient_dim(),
                });
            }
            if s.codim() != codim {
                return Err(Error::InvalidParameter(format!(
                    "cover member has codimension {}, expected {codim}",
                    s.codim()
                )));
            }
        }
        Ok(Cover {
            field: field.clone(),
            n,
            codim,
            subspaces,
            provenance,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn count(&self) -> usize {
        self.subspaces.len()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Same cover with one member dropped (for exercising the verifier).
    pub fn without(&self, index: usize) -> Cover {
        let mut c = self.clone();
        c.subspaces.remove(index);
        c
    }
}
