//! Covers and partitions of finite vector spaces by subspaces of a fixed
//! codimension, with exhaustive verification and a brute-force
//! minimality oracle.
//!
//! The minimal number of codimension-k subspaces covering F_q^n is
//! `⌈(q^n - 1)/(q^{n-k} - 1)⌉`; [`covers::cover_finite`] builds a cover
//! of exactly that size and [`oracle::min_cover_size`] confirms no
//! smaller one exists on small instances.

pub mod covers;
pub mod error;
pub mod extension;
pub mod gf;
pub mod json;
pub mod limits;
pub mod linalg;
pub mod oracle;
pub mod partitions;
pub mod scalar;

pub use covers::{
    countable_cover_index, cover_finite, f1_cover_number, f1_ratio_at_one, lift_cover, nu,
    plan_cover, projective_assign, Cover, CoverCardinality, CoverPlan, DimKind, FieldKind,
    FiniteSupportVector, ProjectiveAssignment, ProjectiveIndex, Provenance, ProvenanceKind,
    ProvenanceStep, SpaceSpec,
};
pub use error::{Error, Result};
pub use gf::{arith, enumerate_field, ArithOp, Field, FieldElem};
pub use limits::Limits;
pub use linalg::{quotient, rref, FqVec, LinearQuotient, Matrix, Subspace};
pub use oracle::{
    enumerate_subspaces, gaussian_binomial, min_cover_size, verify_cover, verify_partition,
    CoverReport, MinCover, PartitionReport, ProjectivePointSet,
};
pub use partitions::{mixed_partition, spread_partition, Partition, PartitionKind};
pub use scalar::ExactScalar;
