//! Sparse truncated Fourier expansions.
//!
//! A [`JacobiSeries`] stores `c(n, r)` for the term `q^n ζ^r`. Every
//! coefficient with `0 <= n <= trunc` is known: keys that are not stored are
//! zero, and zero values are never stored. Iteration is in lexicographic
//! `(n, r)` order.

mod checks;
mod ops;

pub use checks::{DiscClassWitness, SupportKind};
pub use ops::{add, d_z, heat, heat_pow, mul, neg, scale, sub, theta_q};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JacobiSeries {
    weight: i64,
    index: u32,
    trunc: u32,
    coeffs: BTreeMap<(i64, i64), Rational>,
}

impl JacobiSeries {
    pub fn zero(weight: i64, index: u32, trunc: u32) -> Self {
        Self {
            weight,
            index,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant `1`: weight 0, index 0.
    pub fn one(trunc: u32) -> Self {
        let mut s = Self::zero(0, 0, trunc);
        s.coeffs.insert((0, 0), crate::rational::int(1));
        s
    }

    /// Builds a series from `((n, r), c)` pairs; repeated keys are summed.
    pub fn from_coeffs<I>(weight: i64, index: u32, trunc: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((i64, i64), Rational)>,
    {
        let mut s = Self::zero(weight, index, trunc);
        for ((n, r), c) in entries {
            s.check_key(n, r)?;
            s.add_at(n, r, c);
        }
        Ok(s)
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn with_weight(mut self, weight: i64) -> Self {
        self.weight = weight;
        self
    }

    pub fn coeff(&self, n: i64, r: i64) -> Rational {
        self.coeffs.get(&(n, r)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn get(&self, n: i64, r: i64) -> Option<&Rational> {
        self.coeffs.get(&(n, r))
    }

    /// Nonzero coefficients in `(n, r)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &Rational)> {
        self.coeffs.iter()
    }

    pub fn nonzero_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Overwrites one coefficient.
    pub fn set(&mut self, n: i64, r: i64, c: Rational) -> Result<()> {
        self.check_key(n, r)?;
        if c.is_zero() {
            self.coeffs.remove(&(n, r));
        } else {
            self.coeffs.insert((n, r), c);
        }
        Ok(())
    }

    /// Smallest and largest `r` stored at `q^n`.
    pub fn r_window(&self, n: i64) -> Option<(i64, i64)> {
        let mut it = self.coeffs.range((n, i64::MIN)..=(n, i64::MAX));
        let lo = it.next()?.0 .1;
        let hi = it.next_back().map_or(lo, |(k, _)| k.1);
        Some((lo, hi))
    }

    pub fn max_abs_r(&self) -> i64 {
        self.coeffs.keys().map(|&(_, r)| r.abs()).max().unwrap_or(0)
    }

    /// Restriction to `n <= trunc`.
    pub fn truncate(&self, trunc: u32) -> Self {
        let trunc = trunc.min(self.trunc);
        let mut out = Self::zero(self.weight, self.index, trunc);
        out.coeffs = self
            .coeffs
            .range(..(i64::from(trunc) + 1, i64::MIN))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        out
    }

    fn check_key(&self, n: i64, r: i64) -> Result<()> {
        if n < 0 || n > i64::from(self.trunc) {
            return Err(Error::OutOfRange {
                n,
                r,
                trunc: self.trunc,
            });
        }
        Ok(())
    }

    pub(crate) fn add_at(&mut self, n: i64, r: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry((n, r)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`, ignoring weight and index; `other` is cut to
    /// `self.trunc`.
    pub(crate) fn add_scaled_assign(&mut self, c: &Rational, other: &JacobiSeries) {
        if c.is_zero() {
            return;
        }
        let limit = i64::from(self.trunc);
        for (&(n, r), v) in &other.coeffs {
            if n > limit {
                break;
            }
            self.add_at(n, r, c * v);
        }
    }

    pub(crate) fn map_coeffs<F>(&self, weight: i64, mut f: F) -> Self
    where
        F: FnMut(i64, i64, &Rational) -> Rational,
    {
        let mut out = Self::zero(weight, self.index, self.trunc);
        for (&(n, r), v) in &self.coeffs {
            let c = f(n, r, v);
            if !c.is_zero() {
                out.coeffs.insert((n, r), c);
            }
        }
        out
    }
}

/// A `q`-expansion `Σ a(n) q^n`, `0 <= n <= trunc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EllipticSeries {
    weight: i64,
    trunc: u32,
    coeffs: BTreeMap<i64, Rational>,
}

impl EllipticSeries {
    pub fn from_coeffs<I>(weight: i64, trunc: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut coeffs = BTreeMap::new();
        for (n, c) in entries {
            if n < 0 || n > i64::from(trunc) {
                return Err(Error::OutOfRange { n, r: 0, trunc });
            }
            let slot: &mut Rational = coeffs.entry(n).or_insert_with(Rational::zero);
            *slot += c;
        }
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(Self {
            weight,
            trunc,
            coeffs,
        })
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn coeff(&self, n: i64) -> Rational {
        self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    /// Embeds as an index-0 Jacobi series with all mass at `r = 0`.
    pub fn to_jacobi(&self) -> JacobiSeries {
        let mut out = JacobiSeries::zero(self.weight, 0, self.trunc);
        out.coeffs = self.coeffs.iter().map(|(&n, c)| ((n, 0), c.clone())).collect();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn zero_values_are_not_stored() {
        let s = JacobiSeries::from_coeffs(4, 1, 2, [((1, 0), int(3)), ((1, 0), int(-3))]).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn keys_outside_truncation_are_rejected() {
        assert!(JacobiSeries::from_coeffs(4, 1, 2, [((3, 0), int(1))]).is_err());
        assert!(JacobiSeries::from_coeffs(4, 1, 2, [((-1, 0), int(1))]).is_err());
    }

    #[test]
    fn window_and_truncate() {
        let s = JacobiSeries::from_coeffs(
            4,
            1,
            3,
            [((1, -2), int(1)), ((1, 1), int(5)), ((3, 0), int(7))],
        )
        .unwrap();
        assert_eq!(s.r_window(1), Some((-2, 1)));
        assert_eq!(s.r_window(2), None);
        assert_eq!(s.r_window(3), Some((0, 0)));
        let t = s.truncate(2);
        assert_eq!(t.trunc(), 2);
        assert_eq!(t.nonzero_len(), 2);
    }

    #[test]
    fn elliptic_embedding() {
        let e = EllipticSeries::from_coeffs(4, 2, [(0, int(1)), (1, int(240))]).unwrap();
        let j = e.to_jacobi();
        assert_eq!(j.index(), 0);
        assert_eq!(j.coeff(1, 0), int(240));
        assert_eq!(j.weight(), 4);
    }
}
