//! Coordinate models of even unimodular lattices.
//!
//! Vectors are stored with every coordinate doubled, so the half-integer
//! points of E8 stay integral: `x = X / 2`, `x·y = (X·Y) / 4`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    /// From doubled coordinates.
    pub fn from_doubled(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    /// From exact coordinates; `None` unless every entry lies in `Z/2`.
    pub fn from_rationals(coords: &[Rational]) -> Option<Self> {
        coords
            .iter()
            .map(|c| {
                let d = c * Rational::from_integer(BigInt::from(2));
                if d.is_integer() {
                    d.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn doubled(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `4 (x·y)`.
    fn dot4(&self, other: &Self) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// `x·y`; exact for vectors of an integral lattice.
    pub fn inner(&self, other: &Self) -> i64 {
        let d = self.dot4(other);
        debug_assert_eq!(d % 4, 0, "non-integral inner product");
        d / 4
    }

    /// `x·x / 2`; exact for vectors of an even lattice.
    pub fn half_norm(&self) -> i64 {
        let d = self.dot4(self);
        debug_assert_eq!(d % 8, 0, "odd norm");
        d / 8
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&c| if c % 2 == 0 { (c / 2).to_string() } else { format!("{c}/2") })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// `{x ∈ Z^8 ∪ (Z + 1/2)^8 : Σ x_i ∈ 2Z}`
    E8,
    /// `E8 ⊕ E8` in `R^16`.
    E8E8,
}

impl FromStr for Lattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e8" => Ok(Lattice::E8),
            "e8e8" | "e8+e8" | "e8xe8" => Ok(Lattice::E8E8),
            _ => Err(Error::UnknownLattice(s.to_string())),
        }
    }
}

fn e8_contains(doubled: &[i64]) -> bool {
    if doubled.len() != 8 {
        return false;
    }
    let parity = doubled[0].rem_euclid(2);
    if doubled.iter().any(|c| c.rem_euclid(2) != parity) {
        return false;
    }
    // Σ x_i even  <=>  Σ X_i ≡ 0 (mod 4)
    doubled.iter().sum::<i64>().rem_euclid(4) == 0
}

/// All E8 vectors with `X·X <= 8 h` (doubled coordinates), by a pruned box
/// scan over each parity class.
fn e8_enumerate(max_half_norm: i64) -> Vec<LatticeVector> {
    let budget = 8 * max_half_norm;
    let mut out = Vec::new();
    let mut current = [0i64; 8];

    fn walk(
        pos: usize,
        parity: i64,
        remaining: i64,
        current: &mut [i64; 8],
        out: &mut Vec<LatticeVector>,
    ) {
        if pos == 8 {
            if current.iter().sum::<i64>().rem_euclid(4) == 0 {
                out.push(LatticeVector(current.to_vec()));
            }
            return;
        }
        let bound = num_integer::Roots::sqrt(&remaining);
        let mut c = -bound;
        if c.rem_euclid(2) != parity {
            c += 1;
        }
        while c <= bound {
            current[pos] = c;
            walk(pos + 1, parity, remaining - c * c, current, out);
            c += 2;
        }
    }

    if budget >= 0 {
        for parity in 0..2 {
            walk(0, parity, budget, &mut current, &mut out);
        }
    }
    out
}

impl Lattice {
    pub fn name(&self) -> &'static str {
        match self {
            Lattice::E8 => "e8",
            Lattice::E8E8 => "e8e8",
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Lattice::E8 => 8,
            Lattice::E8E8 => 16,
        }
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        match self {
            Lattice::E8 => e8_contains(&v.0),
            Lattice::E8E8 => v.0.len() == 16 && e8_contains(&v.0[..8]) && e8_contains(&v.0[8..]),
        }
    }

    /// All vectors with `x·x / 2 <= max_half_norm`, each once, sorted by
    /// half-norm and then coordinates.
    pub fn enumerate_vectors(&self, max_half_norm: i64) -> Vec<LatticeVector> {
        let mut out = match self {
            Lattice::E8 => e8_enumerate(max_half_norm),
            Lattice::E8E8 => {
                let base = e8_enumerate(max_half_norm);
                let mut out = Vec::new();
                for a in &base {
                    let ha = a.half_norm();
                    for b in &base {
                        if ha + b.half_norm() <= max_half_norm {
                            let mut c = a.0.clone();
                            c.extend_from_slice(&b.0);
                            out.push(LatticeVector(c));
                        }
                    }
                }
                out
            }
        };
        out.sort_by_cached_key(|v| (v.half_norm(), v.0.clone()));
        out
    }

    /// A fixed vector of the given half-norm: `(1, -1, 0, ..., 0)` for
    /// half-norm 1, otherwise the first one in enumeration order.
    pub fn default_vector(&self, half_norm: i64) -> Option<LatticeVector> {
        if half_norm == 1 {
            let mut c = vec![0; self.rank()];
            c[0] = 2;
            c[1] = -2;
            return Some(LatticeVector(c));
        }
        self.enumerate_vectors(half_norm)
            .into_iter()
            .find(|v| v.half_norm() == half_norm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn count_by_half_norm(l: Lattice, h: i64) -> Vec<usize> {
        let mut counts = vec![0; h as usize + 1];
        for v in l.enumerate_vectors(h) {
            counts[v.half_norm() as usize] += 1;
        }
        counts
    }

    /// Unpruned scan of the boxes `{-2..2}^8` and `{±1/2, ±3/2}^8`, which
    /// contain every E8 vector with `x·x <= 4`.
    fn e8_box_count() -> Vec<usize> {
        let mut counts = vec![0; 3];
        for (choices, len) in [(&[-4i64, -2, 0, 2, 4][..], 5usize), (&[-3i64, -1, 1, 3][..], 4)] {
            for code in 0..len.pow(8) {
                let v: Vec<i64> = (0..8).map(|i| choices[code / len.pow(i) % len]).collect();
                let n = v.iter().map(|c| c * c).sum::<i64>();
                if e8_contains(&v) && n <= 16 {
                    counts[(n / 8) as usize] += 1;
                }
            }
        }
        counts
    }

    #[test]
    fn e8_shell_counts() {
        assert_eq!(count_by_half_norm(Lattice::E8, 0), vec![1]);
        assert_eq!(count_by_half_norm(Lattice::E8, 3), vec![1, 240, 2160, 6720]);
        assert_eq!(e8_box_count(), vec![1, 240, 2160]);
    }

    #[test]
    fn e8e8_shell_counts() {
        // θ_{E8}² = E_8 = 1 + 480 q + 61920 q² + ...
        assert_eq!(count_by_half_norm(Lattice::E8E8, 2), vec![1, 480, 61920]);
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let vs = Lattice::E8.enumerate_vectors(2);
        assert!(vs.windows(2).all(|w| (w[0].half_norm(), &w[0].0) < (w[1].half_norm(), &w[1].0)));
        assert!(vs.iter().all(|v| Lattice::E8.contains(v)));
    }

    #[test]
    fn membership() {
        let half = LatticeVector::from_rationals(&vec![ratio(1, 2); 8]).unwrap();
        assert!(Lattice::E8.contains(&half));
        let mut odd_sum = vec![int(0); 8];
        odd_sum[0] = int(1);
        assert!(!Lattice::E8.contains(&LatticeVector::from_rationals(&odd_sum).unwrap()));
        let mut mixed = vec![int(0); 8];
        mixed[0] = ratio(1, 2);
        mixed[1] = ratio(3, 2);
        assert!(!Lattice::E8.contains(&LatticeVector::from_rationals(&mixed).unwrap()));
        assert!(LatticeVector::from_rationals(&[ratio(1, 3)]).is_none());
    }

    #[test]
    fn inner_products() {
        let v = Lattice::E8.default_vector(1).unwrap();
        assert_eq!(v.half_norm(), 1);
        assert_eq!(v.to_string(), "(1, -1, 0, 0, 0, 0, 0, 0)");
        let h = LatticeVector::from_rationals(&vec![ratio(1, 2); 8]).unwrap();
        assert_eq!(h.half_norm(), 1);
        assert_eq!(h.inner(&v), 0);
        let w = Lattice::E8.default_vector(2).unwrap();
        assert_eq!(w.half_norm(), 2);
    }

    #[test]
    fn parse_names() {
        assert_eq!("E8".parse::<Lattice>().unwrap(), Lattice::E8);
        assert_eq!("e8e8".parse::<Lattice>().unwrap(), Lattice::E8E8);
        assert!("leech".parse::<Lattice>().is_err());
    }
}
