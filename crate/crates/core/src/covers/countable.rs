//! The countable cover of a space with a countably infinite basis
//! `b_0, b_1, ...`: `V_n = span(b_0, ..., b_{n-1})`.

use std::collections::BTreeMap;

use crate::scalar::ExactScalar;
use crate::{Error, Result};

/// A vector with finitely many nonzero coordinates over an infinite basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSupportVector<S> {
    coeffs: BTreeMap<usize, S>,
}

impl<S: ExactScalar> FiniteSupportVector<S> {
    /// Rejects explicit zero coefficients and repeated indices.
    pub fn new(entries: impl IntoIterator<Item = (usize, S)>) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (i, c) in entries {
            if c.is_zero() {
                return Err(Error::Malformed(format!(
                    "support entry {i} has a zero coefficient"
                )));
            }
            if coeffs.insert(i, c).is_some() {
                return Err(Error::Malformed(format!("basis index {i} repeated")));
            }
        }
        Ok(FiniteSupportVector { coeffs })
    }

    pub fn zero() -> Self {
        FiniteSupportVector {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn coeff(&self, i: usize) -> Option<&S> {
        self.coeffs.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Least n with `v ∈ V_n`: one past the largest support index, 0 for v = 0.
pub fn countable_cover_index<S: ExactScalar>(v: &FiniteSupportVector<S>) -> usize {
    v.coeffs.keys().next_back().map_or(0, |&i| i + 1)
}

/// Whether `v ∈ V_level`.
pub fn filtration_contains<S: ExactScalar>(level: usize, v: &FiniteSupportVector<S>) -> bool {
    v.support().all(|i| i < level)
}
