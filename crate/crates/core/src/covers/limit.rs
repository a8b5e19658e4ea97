//! The q -> 1 degeneration of the finite cover number.
//!
//! `(q^n - 1)/(q^d - 1)` with d = n - k is evaluated at q = 1 exactly:
//! long division gives `A = Q·B + R` with `R = q^{n mod d} - 1`, then the
//! common factor `q - 1` is cancelled from R and B before evaluating.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Integer polynomial, constant coefficient first.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly(Vec<BigInt>);

impl Poly {
    /// `q^n - 1`
    fn power_minus_one(n: usize) -> Poly {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        Poly(c)
    }

    fn trim(mut self) -> Poly {
        while self.0.len() > 1 && self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn eval(&self, x: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Division by a monic polynomial: (quotient, remainder).
    fn div_rem_monic(&self, div: &Poly) -> (Poly, Poly) {
        let dd = div.degree();
        let mut rem = self.0.clone();
        if self.degree() < dd {
            return (Poly(vec![BigInt::zero()]), self.clone());
        }
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for t in (dd..rem.len()).rev() {
            let c = rem[t].clone();
            if c.is_zero() {
                continue;
            }
            quot[t - dd] = c.clone();
            for (j, dc) in div.0.iter().enumerate() {
                rem[t - dd + j] -= &c * dc;
            }
        }
        rem.truncate(dd.max(1));
        (Poly(quot).trim(), Poly(rem).trim())
    }

    /// Exact division by `q - 1`; `None` if 1 is not a root.
    fn cancel_root_one(&self) -> Option<Poly> {
        let (q, r) = self.div_rem_monic(&Poly(vec![BigInt::from(-1), BigInt::one()]));
        r.is_zero().then_some(q)
    }
}

fn check(n: usize, k: usize) -> Result<()> {
    if k < 1 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "need 0 < k < n, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

/// `⌈n/(n-k)⌉`: the number of subsets missing at least k points needed
/// to cover an n-element set.
pub fn f1_cover_number(n: usize, k: usize) -> Result<u64> {
    check(n, k)?;
    Ok((n as u64).div_ceil((n - k) as u64))
}

/// The rational function `(q^n - 1)/(q^{n-k} - 1)` evaluated at q = 1.
pub fn f1_ratio_at_one(n: usize, k: usize) -> Result<BigRational> {
    check(n, k)?;
    let d = n - k;
    let num = Poly::power_minus_one(n);
    let den = Poly::power_minus_one(d);
    let (quot, rem) = num.div_rem_monic(&den);
    let one = BigInt::one();
    let den_reduced = den.cancel_root_one().expect("q^d - 1 vanishes at 1");
    let frac = if rem.is_zero() {
        BigRational::zero()
    } else {
        let rem_reduced = rem
            .cancel_root_one()
            .ok_or_else(|| Error::Malformed("remainder does not vanish at 1".into()))?;
        BigRational::new(rem_reduced.eval(&one), den_reduced.eval(&one))
    };
    Ok(BigRational::from_integer(quot.eval(&one)) + frac)
}

/// Convenience: ceiling of [`f1_ratio_at_one`].
pub fn f1_ceiling_of_ratio(n: usize, k: usize) -> Result<BigInt> {
    let r = f1_ratio_at_one(n, k)?;
    let (q, rem) = r.numer().div_rem(r.denom());
    Ok(if rem.is_zero() { q } else { q + 1 })
}
