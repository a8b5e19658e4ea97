use num_bigint::BigUint;

use super::{Cover, Provenance, ProvenanceKind, ProvenanceStep};
use crate::gf::Field;
use crate::linalg::{LinearQuotient, Subspace};
use crate::partitions::{mixed_partition, spread_partition};
use crate::{Error, Limits, Result};

/// The shape of the minimal cover of F_q^n by codimension-k subspaces.
///
/// Independent of q: every step's part count is a polynomial in q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverPlan {
    pub n: usize,
    pub k: usize,
    pub provenance: Provenance,
}

impl CoverPlan {
    pub fn part_dim(&self) -> usize {
        self.n - self.k
    }

    pub fn predicted_count(&self, q: &BigUint) -> BigUint {
        self.provenance.predicted_count(q)
    }
}

pub fn plan_cover(n: usize, k: usize) -> Result<CoverPlan> {
    if k < 1 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "codimension must satisfy 1 <= k < n, got k = {k}, n = {n}"
        )));
    }
    let d = n - k;
    if n.is_multiple_of(d) {
        return Ok(CoverPlan {
            n,
            k,
            provenance: Provenance {
                kind: ProvenanceKind::Spread,
                steps: vec![ProvenanceStep::Spread { n, d }],
            },
        });
    }
    // dims stay ≡ n (mod d), so the loop never stops at exactly 2d
    let mut steps = Vec::new();
    let mut dim = n;
    while dim > 2 * d {
        steps.push(ProvenanceStep::Peel {
            ambient_dim: dim,
            d,
        });
        dim -= d;
    }
    steps.push(ProvenanceStep::Tail {
        r: dim,
        d,
        kernel_dim: 2 * d - dim,
        quotient_dim: 2 * (dim - d),
    });
    Ok(CoverPlan {
        n,
        k,
        provenance: Provenance {
            kind: ProvenanceKind::Peeling,
            steps,
        },
    })
}

/// A cover of F_q^n by exactly `⌈(q^n - 1)/(q^{n-k} - 1)⌉` subspaces of
/// codimension k.
///
/// With d = n - k: a spread when d | n; otherwise repeated mixed
/// partitions peel off `q^(N-d)` d-dimensional parts until the remaining
/// dimension r lies strictly between d and 2d, and the last `q^(r-d) + 1`
/// parts are lifted from a spread of a 2(r-d)-dimensional quotient.
///
/// The current ambient at every stage is spanned by the first N standard
/// coordinates, so stage results embed by zero padding.
pub fn cover_finite(field: &Field, n: usize, k: usize, limits: &Limits) -> Result<Cover> {
    let plan = plan_cover(n, k)?;
    limits.check_q_pow(field.q() as u64, n)?;
    let mut parts: Vec<Subspace> = Vec::new();
    for step in &plan.provenance.steps {
        match *step {
            ProvenanceStep::Spread { n, d } => {
                parts.extend(spread_partition(field, n, d, limits)?.into_parts());
            }
            ProvenanceStep::Peel { ambient_dim, d } => {
                let mixed = mixed_partition(field, ambient_dim, d, limits)?;
                parts.extend(mixed.parts()[1..].iter().map(|s| s.pad_to(n)));
            }
            ProvenanceStep::Tail {
                r,
                d,
                kernel_dim,
                quotient_dim,
            } => {
                let kernel = Subspace::coordinate(field, r, r - kernel_dim..r);
                let quotient = LinearQuotient::new(&kernel)?;
                debug_assert_eq!(quotient.quotient_dim(), quotient_dim);
                let spread = spread_partition(field, quotient_dim, r - d, limits)?;
                for part in spread.parts() {
                    parts.push(quotient.lift(part)?.pad_to(n));
                }
            }
            ProvenanceStep::Lift { .. } => unreachable!("plans never start from a lift"),
        }
    }
    let cover = Cover::new(field, n, k, parts, plan.provenance)?;
    debug_assert_eq!(
        BigUint::from(cover.count()),
        cover
            .provenance()
            .predicted_count(&BigUint::from(field.q()))
    );
    Ok(cover)
}

/// Pulls every member of a cover of `F^n / V0` back to `F^n`.
pub fn lift_cover(quotient: &LinearQuotient, cover: &Cover) -> Result<Cover> {
    quotient.kernel().field().ensure_same(cover.field())?;
    if cover.ambient_dim() != quotient.quotient_dim() {
        return Err(Error::DimensionMismatch {
            expected: quotient.quotient_dim(),
            found: cover.ambient_dim(),
        });
    }
    let lifted = cover
        .subspaces()
        .iter()
        .map(|s| quotient.lift(s))
        .collect::<Result<Vec<_>>>()?;
    let mut steps = cover.provenance().steps.clone();
    steps.push(ProvenanceStep::Lift {
        kernel_dim: quotient.kernel().dim(),
    });
    Cover::new(
        cover.field(),
        quotient.ambient_dim(),
        cover.codim(),
        lifted,
        Provenance {
            kind: ProvenanceKind::Lifted,
            steps,
        },
    )
}

/// `q^k + 1` codimension-k subspaces covering F_q^n (n >= 2k): the spread
/// cover of the quotient by the last `n - 2k` coordinates, lifted.
///
/// This is the finite truncation of the cover used when the field is
/// finite but the dimension is not.
pub fn lift_spread_cover(field: &Field, n: usize, k: usize, limits: &Limits) -> Result<Cover> {
    if k < 1 || n < 2 * k {
        return Err(Error::InvalidParameter(format!(
            "need k >= 1 and n >= 2k, got k = {k}, n = {n}"
        )));
    }
    let kernel = Subspace::coordinate(field, n, 2 * k..n);
    let quotient = LinearQuotient::new(&kernel)?;
    let base = cover_finite(field, 2 * k, k, limits)?;
    lift_cover(&quotient, &base)
}
