//! The cover of a space over an infinite field indexed by F P^k.
//!
//! Fix k+1 designated basis vectors `v_0..v_k` and let B' be the rest of
//! the basis. For a point x of F P^k in normal form
//! `(0, ..., 0, 1, α_{i+1}, ..., α_k)` the member `V_x` is spanned by B'
//! and `g_x = Σ x_j v_j`; it has codimension k. A vector whose first
//! nonzero designated coordinate is `β_i` lands in `V_x` for
//! `x = (0, ..., 0, 1, β_{i+1}/β_i, ..., β_k/β_i)`.

use std::collections::HashSet;

use crate::gf::{Field, FieldElem};
use crate::linalg::Subspace;
use crate::scalar::ExactScalar;
use crate::{Error, Result};

/// A point of F P^k in normal form: a leading 1 at position `i`, followed
/// by `tail = (α_{i+1}, ..., α_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectiveIndex<S> {
    pub i: usize,
    pub tail: Vec<S>,
}

impl<S: ExactScalar> ProjectiveIndex<S> {
    pub fn k(&self) -> usize {
        self.i + self.tail.len()
    }

    /// The k+1 homogeneous coordinates; `unit` supplies the field.
    pub fn normal_form(&self, unit: &S) -> Vec<S> {
        let zero = unit.zero_like();
        let mut out = vec![zero; self.i];
        out.push(unit.one_like());
        out.extend(self.tail.iter().cloned());
        out
    }

    /// `g_x` as a vector of length `dim`.
    pub fn generator(&self, unit: &S, positions: &[usize], dim: usize) -> Vec<S> {
        let mut g = vec![unit.zero_like(); dim];
        for (&pos, x) in positions.iter().zip(self.normal_form(unit)) {
            g[pos] = x;
        }
        g
    }
}

/// Certificate that `v = residual + scale·generator` with the residual
/// supported on B'.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipWitness<S> {
    pub scale: S,
    pub generator: Vec<S>,
    pub residual: Vec<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveAssignment<S> {
    pub index: ProjectiveIndex<S>,
    pub witness: MembershipWitness<S>,
}

impl<S: ExactScalar> ProjectiveAssignment<S> {
    /// Re-checks the witness against `v` with exact arithmetic.
    pub fn validate(&self, v: &[S], positions: &[usize]) -> bool {
        let Some(unit) = v.first() else {
            return false;
        };
        if self.index.k() + 1 != positions.len() {
            return false;
        }
        let w = &self.witness;
        if w.generator != self.index.generator(unit, positions, v.len()) {
            return false;
        }
        if w.residual.len() != v.len() || positions.iter().any(|&p| !w.residual[p].is_zero()) {
            return false;
        }
        v.iter()
            .zip(&w.residual)
            .zip(&w.generator)
            .all(|((vi, ri), gi)| *vi == ri.plus(&w.scale.times(gi)))
    }
}

fn check_positions(dim: usize, positions: &[usize]) -> Result<()> {
    if positions.len() < 2 {
        return Err(Error::InvalidParameter(
            "need at least two designated positions (k >= 1)".into(),
        ));
    }
    let mut seen = HashSet::new();
    for &p in positions {
        if p >= dim {
            return Err(Error::InvalidParameter(format!(
                "designated position {p} outside dimension {dim}"
            )));
        }
        if !seen.insert(p) {
            return Err(Error::InvalidParameter(format!(
                "designated position {p} repeated"
            )));
        }
    }
    Ok(())
}

/// Assigns `v` to a member `V_x` of the F P^k-indexed cover.
///
/// Vectors with no designated support go to the conventional index
/// `(0, ..., 0, 1)`; every member contains span B'.
pub fn projective_assign<S: ExactScalar>(
    v: &[S],
    positions: &[usize],
) -> Result<ProjectiveAssignment<S>> {
    check_positions(v.len(), positions)?;
    let unit = &v[0];
    let k = positions.len() - 1;
    let betas: Vec<&S> = positions.iter().map(|&p| &v[p]).collect();

    let (index, scale) = match betas.iter().position(|b| !b.is_zero()) {
        None => (
            ProjectiveIndex {
                i: k,
                tail: Vec::new(),
            },
            unit.zero_like(),
        ),
        Some(i) => {
            let lead = betas[i].clone();
            let inv = lead.inverse().expect("leading coordinate is nonzero");
            let tail = betas[i + 1..].iter().map(|b| b.times(&inv)).collect();
            (ProjectiveIndex { i, tail }, lead)
        }
    };
    let generator = index.generator(unit, positions, v.len());
    let residual = v
        .iter()
        .zip(&generator)
        .map(|(vi, gi)| vi.minus(&scale.times(gi)))
        .collect();
    Ok(ProjectiveAssignment {
        index,
        witness: MembershipWitness {
            scale,
            generator,
            residual,
        },
    })
}

/// All `(q^{k+1} - 1)/(q - 1)` points of F_q P^k in normal form, by
/// leading position and then tail encoding.
pub fn projective_indices(field: &Field, k: usize) -> Vec<ProjectiveIndex<FieldElem>> {
    let q = field.q() as u64;
    let mut out = Vec::new();
    for i in 0..=k {
        let len = k - i;
        for enc in 0..q.pow(len as u32) {
            let tail = crate::linalg::FqVec::decode(field, len, enc);
            out.push(ProjectiveIndex {
                i,
                tail: (0..len).map(|j| tail.elem(j)).collect(),
            });
        }
    }
    out
}

/// `V_x` over a finite field, as a canonical subspace of F_q^dim.
pub fn index_subspace(
    field: &Field,
    dim: usize,
    positions: &[usize],
    index: &ProjectiveIndex<FieldElem>,
) -> Result<Subspace> {
    check_positions(dim, positions)?;
    if index.k() + 1 != positions.len() {
        return Err(Error::DimensionMismatch {
            expected: positions.len(),
            found: index.k() + 1,
        });
    }
    let one = field.one();
    let g: Vec<u32> = index
        .generator(&one, positions, dim)
        .iter()
        .map(FieldElem::enc)
        .collect();
    let mut rows = vec![g];
    for c in (0..dim).filter(|c| !positions.contains(c)) {
        let mut r = vec![0; dim];
        r[c] = 1;
        rows.push(r);
    }
    Subspace::from_rows(field, dim, &rows)
}
