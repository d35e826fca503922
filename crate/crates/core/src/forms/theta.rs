use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Roots;
use rayon::prelude::*;

use super::lattice::{Lattice, LatticeVector};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::JacobiSeries;
use crate::siegel::SiegelSeries;

/// `c(n, r) = #{x ∈ L : x·x/2 = n, x·v = r}` for `n <= trunc`; weight
/// `rank/2`, index `v·v/2`.
pub fn jacobi_theta(lattice: Lattice, v: &LatticeVector, trunc: u32) -> Result<JacobiSeries> {
    if !lattice.contains(v) {
        return Err(Error::NotInLattice {
            lattice: lattice.name().into(),
            vector: v.to_string(),
        });
    }
    let mut counts: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for x in lattice.enumerate_vectors(i64::from(trunc)) {
        *counts.entry((x.half_norm(), x.inner(v))).or_default() += 1;
    }
    let index = u32::try_from(v.half_norm()).expect("positive definite");
    JacobiSeries::from_coeffs(
        lattice.rank() as i64 / 2,
        index,
        trunc,
        counts
            .into_iter()
            .map(|(k, c)| (k, Rational::from_integer(BigInt::from(c)))),
    )
}

/// `a(n, r, m) = #{(x, y) ∈ L² : x·x/2 = n, y·y/2 = m, x·y = r}` for
/// `n, m <= trunc`; weight `rank/2`.
pub fn siegel_theta(lattice: Lattice, trunc: u32) -> SiegelSeries {
    let t = i64::from(trunc);
    let vectors = lattice.enumerate_vectors(t);
    let norms: Vec<i64> = vectors.iter().map(LatticeVector::half_norm).collect();

    // |x·y| <= 2 sqrt(nm) <= 2t, so (n, r, m) fits a dense box.
    let rmax = 2 * t;
    let side = (t + 1) as usize;
    let width = (2 * rmax + 1) as usize;
    let slot = |n: i64, r: i64, m: i64| ((n as usize * width) + (r + rmax) as usize) * side + m as usize;
    let cells = side * width * side;

    let counts = vectors
        .par_iter()
        .zip(norms.par_iter())
        .fold(
            || vec![0u64; cells],
            |mut acc, (x, &n)| {
                for (y, &m) in vectors.iter().zip(&norms) {
                    acc[slot(n, x.inner(y), m)] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; cells],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let mut entries = Vec::new();
    for n in 0..=t {
        for m in 0..=t {
            let bound = (4 * n * m).sqrt();
            for r in -bound..=bound {
                let c = counts[slot(n, r, m)];
                if c > 0 {
                    entries.push(((n, r, m), Rational::from_integer(BigInt::from(c))));
                }
            }
        }
    }
    debug_assert_eq!(
        entries
            .iter()
            .map(|(_, c)| c.to_integer())
            .sum::<BigInt>(),
        BigInt::from(vectors.len() * vectors.len())
    );
    SiegelSeries::from_coeffs(lattice.rank() as i64 / 2, trunc, entries)
        .expect("theta coefficients are symmetric")
}
