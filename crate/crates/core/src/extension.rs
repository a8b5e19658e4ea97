//! F_{q^n} as an n-dimensional F_q-vector space.
//!
//! The big field is built directly as GF(p^{mn}). Its F_q-coordinates are
//! taken in the power basis `1, x, ..., x^{n-1}` of the generator `x`,
//! after embedding the small field through a root `γ` of its modulus.

use crate::gf::Field;
use crate::linalg::{Matrix, Subspace};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct ExtensionModel {
    base: Field,
    big: Field,
    n: usize,
    /// base encoding -> big encoding
    embed: Vec<u32>,
    /// coordinates over F_p of a big element -> F_p-coordinates in the
    /// basis `γ^i x^j` (index `j*m + i`); `None` when m = 1
    to_basis: Option<Matrix>,
}

impl ExtensionModel {
    pub fn new(base: &Field, n: usize, max_order: u64) -> Result<ExtensionModel> {
        if n < 1 {
            return Err(Error::InvalidParameter(
                "extension degree must be >= 1".into(),
            ));
        }
        let (p, m) = (base.p(), base.m());
        let big = Field::with_max_order(p as u64, m * n, max_order)?;
        let prime = Field::new(p as u64, 1)?;
        if m == 1 {
            return Ok(ExtensionModel {
                base: base.clone(),
                big,
                n,
                embed: (0..p).collect(),
                to_basis: None,
            });
        }
        let big_deg = m * n;

        // F_q inside the big field: kernel of a -> a^{p^m} - a over F_p.
        let mut rows = Vec::with_capacity(big_deg);
        for t in 0..big_deg {
            let xt = (p as u64).pow(t as u32) as u32;
            let img = big.sub(big.frobenius(xt, m), xt);
            rows.push(big.digits(img)[..big_deg].to_vec());
        }
        let frob = Matrix::from_rows(&prime, big_deg, &rows)?;
        // kernel of the row-vector map c -> c * frob
        let sub = Subspace::from_matrix(frob.transpose().nullspace());
        debug_assert_eq!(sub.dim(), m);

        let modulus = base.modulus();
        let mut gamma = None;
        sub.for_each_vector(|coords| {
            let cand = big.from_digits(coords);
            if gamma.is_none_or(|g| cand < g) && eval(&big, modulus, cand) == 0 {
                gamma = Some(cand);
            }
        });
        let gamma = gamma.expect("the subfield of order q contains a root of the base modulus");

        let gamma_pows: Vec<u32> = (0..m).map(|i| big.pow(gamma, i as u64)).collect();
        let embed: Vec<u32> = (0..base.q())
            .map(|c| {
                let d = base.digits(c);
                (0..m).fold(0, |acc, i| big.add(acc, big.mul(d[i], gamma_pows[i])))
            })
            .collect();

        let mut basis_rows = Vec::with_capacity(big_deg);
        for j in 0..n {
            let xj = (p as u64).pow(j as u32) as u32;
            for &g in &gamma_pows {
                basis_rows.push(big.digits(big.mul(g, xj))[..big_deg].to_vec());
            }
        }
        let basis = Matrix::from_rows(&prime, big_deg, &basis_rows)?;
        let to_basis = basis
            .inverse()
            .expect("γ^i x^j is an F_p-basis of the big field");
        Ok(ExtensionModel {
            base: base.clone(),
            big,
            n,
            embed,
            to_basis: Some(to_basis),
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// F_q-coordinates of a big-field element.
    pub fn to_coords(&self, a: u32) -> Vec<u32> {
        let big_deg = self.big.m();
        let digits = self.big.digits(a);
        match &self.to_basis {
            None => digits[..big_deg].to_vec(),
            Some(inv) => {
                let t = inv.left_mul(&digits[..big_deg]);
                let m = self.base.m();
                (0..self.n)
                    .map(|j| self.base.from_digits(&t[j * m..(j + 1) * m]))
                    .collect()
            }
        }
    }

    pub fn from_coords(&self, coords: &[u32]) -> u32 {
        debug_assert_eq!(coords.len(), self.n);
        if self.to_basis.is_none() {
            return self.big.from_digits(coords);
        }
        let p = self.big.p() as u64;
        coords.iter().enumerate().fold(0u32, |acc, (j, &c)| {
            let xj = p.pow(j as u32) as u32;
            self.big.add(acc, self.big.mul(self.embed[c as usize], xj))
        })
    }

    /// The power-basis element x^j.
    pub fn basis_elem(&self, j: usize) -> u32 {
        (self.big.p() as u64).pow(j as u32) as u32
    }

    pub fn embed(&self, c: u32) -> u32 {
        self.embed[c as usize]
    }
}

fn eval(field: &Field, poly: &[u32], x: u32) -> u32 {
    poly.iter()
        .rev()
        .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_are_f_q_linear_bijection() {
        for (p, m, n) in [(2, 1, 3), (2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 2)] {
            let base = Field::new(p, m).unwrap();
            let model = ExtensionModel::new(&base, n, 1 << 20).unwrap();
            let big = model.big().clone();
            let mut seen = vec![false; big.q() as usize];
            for a in 0..big.q() {
                let c = model.to_coords(a);
                assert_eq!(c.len(), n);
                assert_eq!(model.from_coords(&c), a);
                let enc = crate::linalg::encode_entries(base.q(), &c) as usize;
                assert!(!seen[enc]);
                seen[enc] = true;
            }
            // scalar multiplication by an embedded base element acts coordinatewise
            for s in 0..base.q() {
                for a in (0..big.q()).step_by(3) {
                    let lhs = model.to_coords(big.mul(model.embed(s), a));
                    let rhs: Vec<u32> =
                        model.to_coords(a).iter().map(|&c| base.mul(s, c)).collect();
                    assert_eq!(lhs, rhs);
                }
            }
            // the embedding is a field homomorphism
            for a in 0..base.q() {
                for b in 0..base.q() {
                    assert_eq!(
                        model.embed(base.mul(a, b)),
                        big.mul(model.embed(a), model.embed(b))
                    );
                    assert_eq!(
                        model.embed(base.add(a, b)),
                        big.add(model.embed(a), model.embed(b))
                    );
                }
            }
        }
    }
}
