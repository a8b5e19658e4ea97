//! Partitions of F_q^n into subspaces meeting pairwise in zero.
//!
//! Two constructions, both carried out inside an extension field:
//!
//! * **spread** (`d | n`): F_q^n is F_{q^n} in its power basis, and the
//!   parts are the multiplicative cosets `α·F_{q^d}` of the subfield.
//! * **mixed** (`d <= n/2`): F_q^n = K × B with K = F_{q^{n-d}} and B the
//!   span of the first d power-basis elements of K. The parts are
//!   `K × {0}` and the graphs `G_a = {(a·b, b) : b ∈ B}` for every a ∈ K.

use crate::extension::ExtensionModel;
use crate::gf::Field;
use crate::limits::checked_pow;
use crate::linalg::{encode_entries, Subspace};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionKind {
    Spread,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub(crate) field: Field,
    pub(crate) n: usize,
    pub(crate) kind: PartitionKind,
    pub(crate) parts: Vec<Subspace>,
    /// For mixed partitions: whether `1 < d < n/2` held.
    pub(crate) classical_range: Option<bool>,
}

impl Partition {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Subspace> {
        self.parts
    }

    pub fn classical_range(&self) -> Option<bool> {
        self.classical_range
    }

    /// `sum over parts of (q^dim - 1)`; equals `q^n - 1` for a partition.
    pub fn nonzero_vector_count(&self) -> u128 {
        let q = self.field.q() as u128;
        self.parts.iter().map(|s| q.pow(s.dim() as u32) - 1).sum()
    }

    pub fn new(
        field: &Field,
        n: usize,
        kind: PartitionKind,
        parts: Vec<Subspace>,
    ) -> Result<Partition> {
        for s in &parts {
            field.ensure_same(s.field())?;
            if s.ambient_dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.ambient_dim(),
                });
            }
        }
        Ok(Partition {
            field: field.clone(),
            n,
            kind,
            parts,
            classical_range: None,
        })
    }
}

/// The subfield F_{q^d} of F_{q^n}, as big-field elements forming an
/// F_q-basis: the kernel of the F_q-linear map `a -> a^{q^d} - a`.
fn subfield_basis(model: &ExtensionModel, d: usize) -> Vec<u32> {
    let big = model.big();
    let base = model.base();
    let n = model.degree();
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let xj = model.basis_elem(j);
            model.to_coords(big.sub(big.frobenius(xj, base.m() * d), xj))
        })
        .collect();
    let map = crate::linalg::Matrix::from_rows(base, n, &rows).unwrap();
    let kernel = Subspace::from_matrix(map.transpose().nullspace());
    debug_assert_eq!(kernel.dim(), d);
    kernel
        .basis()
        .rows()
        .map(|r| model.from_coords(r))
        .collect()
}

pub fn spread_partition(field: &Field, n: usize, d: usize, limits: &Limits) -> Result<Partition> {
    if d < 1 || d > n {
        return Err(Error::InvalidParameter(format!(
            "spread needs 1 <= d <= n, got d = {d}, n = {n}"
        )));
    }
    if !n.is_multiple_of(d) {
        return Err(Error::InvalidParameter(format!(
            "a spread of F^{n} into {d}-dimensional parts needs d | n"
        )));
    }
    let total = limits.check_q_pow(field.q() as u64, n)?;
    if d == n {
        return Partition::new(
            field,
            n,
            PartitionKind::Spread,
            vec![Subspace::full(field, n)],
        );
    }
    let model = ExtensionModel::new(field, n, limits.max_q_pow)?;
    let big = model.big();
    let sub = subfield_basis(&model, d);

    let q = field.q();
    let mut covered = vec![false; total as usize];
    covered[0] = true;
    let mut parts = Vec::new();
    // Sweep α by coordinate encoding; α lies in its own coset α·F_{q^d},
    // so skipping covered α visits each coset once.
    for enc in 1..total {
        if covered[enc as usize] {
            continue;
        }
        let alpha = model.from_coords(crate::linalg::FqVec::decode(field, n, enc).entries());
        let rows: Vec<Vec<u32>> = sub
            .iter()
            .map(|&s| model.to_coords(big.mul(alpha, s)))
            .collect();
        let part = Subspace::from_rows(field, n, &rows)?;
        part.for_each_vector(|v| covered[encode_entries(q, v) as usize] = true);
        parts.push(part);
    }
    debug_assert_eq!(
        parts.len() as u64,
        (total - 1) / (checked_pow(q as u64, d).unwrap() - 1)
    );
    Partition::new(field, n, PartitionKind::Spread, parts)
}

pub fn mixed_partition(field: &Field, n: usize, d: usize, limits: &Limits) -> Result<Partition> {
    if d < 1 || 2 * d > n {
        return Err(Error::InvalidParameter(format!(
            "mixed partition needs 1 <= d <= n/2, got d = {d}, n = {n}"
        )));
    }
    limits.check_q_pow(field.q() as u64, n)?;
    let kdim = n - d;
    let model = ExtensionModel::new(field, kdim, limits.max_q_pow)?;
    let big = model.big();

    let mut parts = Vec::with_capacity(1 + big.q() as usize);
    parts.push(Subspace::coordinate(field, n, 0..kdim));
    let count = checked_pow(field.q() as u64, kdim).unwrap();
    for enc in 0..count {
        let a = model.from_coords(crate::linalg::FqVec::decode(field, kdim, enc).entries());
        let rows: Vec<Vec<u32>> = (0..d)
            .map(|j| {
                let mut row = model.to_coords(big.mul(a, model.basis_elem(j)));
                row.resize(n, 0);
                row[kdim + j] = 1;
                row
            })
            .collect();
        parts.push(Subspace::from_rows(field, n, &rows)?);
    }
    let mut p = Partition::new(field, n, PartitionKind::Mixed, parts)?;
    p.classical_range = Some(1 < d && 2 * d < n);
    Ok(p)
}
