//! The Rankin-Cohen bracket family `[f, f']_{X,v}` on Jacobi forms.
//!
//! For `f` of weight `k`, index `m` and `f'` of weight `k'`, index `m'` the
//! bracket is
//!
//! ```text
//! Σ_{r+s+p = ⌊v/2⌋, i+j = v - 2⌊v/2⌋}  C_{r,s,p}(k,k') D_{r,s,i,j}(m,m',X)
//!     · heat^p( heat^r(d_z^i f) · heat^s(d_z^j f') )
//! ```
//!
//! with the inner heat operators at indices `m`, `m'` and the outer one at
//! `m + m'`. `C` is built from falling factorials in `α = k - 3/2`,
//! `β = k' - 3/2` and `γ = k + k' - 3/2 + (v mod 2)`, and
//! `D = m^j (-m')^i (1 + mX)^s (1 - m'X)^r`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};
use crate::series::{d_z, heat_pow, mul, JacobiSeries};

/// `(x)_n = x (x - 1) ... (x - n + 1)`; `1` for `n = 0`.
pub fn falling_factorial(x: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (x - int(i64::from(i))))
}

fn factorial(n: u32) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// `v mod 2`, the addend that separates `γ` for odd brackets.
fn parity(v: u32) -> u32 {
    v - 2 * (v / 2)
}

/// `C_{r,s,p}(k, k')` for a bracket of degree `v`. Weights are rational so
/// the coefficient can be probed away from integers.
pub fn coeff_c(r: u32, s: u32, p: u32, k: &Rational, k_prime: &Rational, v: u32) -> Rational {
    let three_halves = ratio(3, 2);
    let alpha = k - &three_halves;
    let beta = k_prime - &three_halves;
    let gamma = k + k_prime - &three_halves + int(i64::from(parity(v)));
    let total = int(i64::from(r + s + p));

    falling_factorial(&(alpha + &total), s + p) / factorial(r)
        * falling_factorial(&(beta + &total), r + p)
        / factorial(s)
        * falling_factorial(&-(gamma + &total), r + s)
        / factorial(p)
}

/// `D_{r,s,i,j}(m, m', X) = m^j (-m')^i (1 + mX)^s (1 - m'X)^r`.
pub fn coeff_d(r: u32, s: u32, i: u32, j: u32, m: u32, m_prime: u32, x: &Rational) -> Rational {
    let m_r = int(i64::from(m));
    let mp_r = int(i64::from(m_prime));
    let one = Rational::one();
    num_traits::pow(m_r.clone(), j as usize)
        * num_traits::pow(-mp_r.clone(), i as usize)
        * num_traits::pow(&one + &m_r * x, s as usize)
        * num_traits::pow(&one - &mp_r * x, r as usize)
}

/// Coefficients of `D_{r,s,i,j}` as a polynomial in `X`, lowest degree first.
fn coeff_d_poly(r: u32, s: u32, i: u32, j: u32, m: u32, m_prime: u32) -> Vec<Rational> {
    let mul_poly = |a: &[Rational], b: &[Rational]| {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (da, ca) in a.iter().enumerate() {
            for (db, cb) in b.iter().enumerate() {
                out[da + db] += ca * cb;
            }
        }
        out
    };
    let lead = num_traits::pow(int(i64::from(m)), j as usize)
        * num_traits::pow(int(-i64::from(m_prime)), i as usize);
    let mut poly = vec![lead];
    for _ in 0..s {
        poly = mul_poly(&poly, &[Rational::one(), int(i64::from(m))]);
    }
    for _ in 0..r {
        poly = mul_poly(&poly, &[Rational::one(), int(-i64::from(m_prime))]);
    }
    poly
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketParams {
    pub k: i64,
    pub k_prime: i64,
    pub m: u32,
    pub m_prime: u32,
    pub v: u32,
    pub x: Rational,
}

impl BracketParams {
    pub fn for_pair(f: &JacobiSeries, g: &JacobiSeries, x: Rational, v: u32) -> Self {
        Self {
            k: f.weight(),
            k_prime: g.weight(),
            m: f.index(),
            m_prime: g.index(),
            v,
            x,
        }
    }
}

/// One summand of the bracket with its evaluated coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTerm {
    pub r: u32,
    pub s: u32,
    pub p: u32,
    pub i: u32,
    pub j: u32,
    pub c: Rational,
    pub d: Rational,
}

type IndexTuple = (u32, u32, u32, u32, u32);

/// Index tuples `(r, s, p, i, j)` in a fixed order.
fn index_tuples(v: u32) -> Vec<IndexTuple> {
    let half = v / 2;
    let odd = parity(v);
    let mut out = Vec::new();
    for r in 0..=half {
        for s in 0..=half - r {
            let p = half - r - s;
            for i in 0..=odd {
                out.push((r, s, p, i, odd - i));
            }
        }
    }
    out
}

pub fn bracket_terms(params: &BracketParams) -> Vec<BracketTerm> {
    let k = int(params.k);
    let kp = int(params.k_prime);
    index_tuples(params.v)
        .into_iter()
        .map(|(r, s, p, i, j)| BracketTerm {
            r,
            s,
            p,
            i,
            j,
            c: coeff_c(r, s, p, &k, &kp, params.v),
            d: coeff_d(r, s, i, j, params.m, params.m_prime, &params.x),
        })
        .collect()
}

/// `heat^r(d_z^i f)` for all `r <= half`, `i <= odd`.
struct OperatorCache {
    table: Vec<Vec<JacobiSeries>>,
}

impl OperatorCache {
    fn new(f: &JacobiSeries, half: u32, odd: u32) -> Self {
        let table = (0..=odd)
            .map(|i| {
                let base = if i == 0 { f.clone() } else { d_z(f) };
                (0..=half).map(|r| heat_pow(&base, r)).collect()
            })
            .collect();
        Self { table }
    }

    fn get(&self, i: u32, r: u32) -> &JacobiSeries {
        &self.table[i as usize][r as usize]
    }
}

/// `heat^p(heat^r(d_z^i f) · heat^s(d_z^j g))` for every index tuple.
fn inner_terms(f: &JacobiSeries, g: &JacobiSeries, v: u32) -> Vec<(IndexTuple, JacobiSeries)> {
    let half = v / 2;
    let odd = parity(v);
    let fc = OperatorCache::new(f, half, odd);
    let gc = OperatorCache::new(g, half, odd);
    index_tuples(v)
        .into_par_iter()
        .map(|t @ (r, s, p, i, j)| {
            let prod = mul(fc.get(i, r), gc.get(j, s));
            (t, heat_pow(&prod, p))
        })
        .collect()
}

fn output_shell(f: &JacobiSeries, g: &JacobiSeries, v: u32) -> JacobiSeries {
    JacobiSeries::zero(
        f.weight() + g.weight() + i64::from(v),
        f.index() + g.index(),
        f.trunc().min(g.trunc()),
    )
}

/// `[f, g]_{X,v}` in the scaled normalization (the analytic bracket divided
/// by `(2πi)^v`). Weight `k + k' + v`, index `m + m'`, truncation
/// `min(N, N')`.
pub fn bracket_jacobi(f: &JacobiSeries, g: &JacobiSeries, x: &Rational, v: u32) -> JacobiSeries {
    let k = int(f.weight());
    let kp = int(g.weight());
    let mut out = output_shell(f, g, v);
    for ((r, s, p, i, j), term) in inner_terms(f, g, v) {
        let c = coeff_c(r, s, p, &k, &kp, v);
        let d = coeff_d(r, s, i, j, f.index(), g.index(), x);
        out.add_scaled_assign(&(c * d), &term);
    }
    out
}

/// The bracket as a polynomial in `X`: entry `d` is the coefficient series of
/// `X^d`, for `d = 0..=⌊v/2⌋`.
pub fn bracket_jacobi_poly(f: &JacobiSeries, g: &JacobiSeries, v: u32) -> Vec<JacobiSeries> {
    let k = int(f.weight());
    let kp = int(g.weight());
    let mut out = vec![output_shell(f, g, v); v as usize / 2 + 1];
    for ((r, s, p, i, j), term) in inner_terms(f, g, v) {
        let c = coeff_c(r, s, p, &k, &kp, v);
        for (deg, dc) in coeff_d_poly(r, s, i, j, f.index(), g.index()).iter().enumerate() {
            out[deg].add_scaled_assign(&(&c * dc), &term);
        }
    }
    out
}

/// Sample points `0, 1, ..., ⌊v/2⌋ + 1`.
pub fn default_samples(v: u32) -> Vec<Rational> {
    (0..=i64::from(v / 2) + 1).map(int).collect()
}

/// Rank over `Q` of the coefficient vectors `{[f, g]_{X_i, v}}`.
pub fn bracket_rank_over_x(f: &JacobiSeries, g: &JacobiSeries, v: u32, samples: &[Rational]) -> Result<usize> {
    let needed = v as usize / 2 + 2;
    if samples.len() < needed {
        return Err(Error::TooFewSamples {
            needed,
            got: samples.len(),
        });
    }
    for (idx, x) in samples.iter().enumerate() {
        if samples[..idx].contains(x) {
            return Err(Error::DuplicateSample(x.clone()));
        }
    }
    let values: Vec<JacobiSeries> = samples.iter().map(|x| bracket_jacobi(f, g, x, v)).collect();
    Ok(series_rank(&values))
}

/// Rank over `Q` of a family of series viewed as coefficient vectors.
pub fn series_rank(family: &[JacobiSeries]) -> usize {
    let mut columns: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for s in family {
        for (key, _) in s.iter() {
            let next = columns.len();
            columns.entry(*key).or_insert(next);
        }
    }
    let mut rows: Vec<Vec<Rational>> = family
        .iter()
        .map(|s| {
            let mut row = vec![Rational::zero(); columns.len()];
            for (key, c) in s.iter() {
                row[columns[key]] = c.clone();
            }
            row
        })
        .collect();
    rank(&mut rows)
}

/// Gaussian elimination over `Q`.
pub fn rank(rows: &mut [Vec<Rational>]) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (dst, src) in row.iter_mut().zip(pivot_row).skip(col) {
                *dst -= &factor * src;
            }
        }
        rank += 1;
    }
    rank
}

/// `C_{r,s,p}` for all `r + s + p = l`, taken at `v = 2l`.
pub type CoefficientTable = BTreeMap<(u32, u32, u32), Rational>;

pub fn coefficient_table(k: &Rational, k_prime: &Rational, l: u32) -> CoefficientTable {
    index_tuples(2 * l)
        .into_iter()
        .map(|(r, s, p, _, _)| ((r, s, p), coeff_c(r, s, p, k, k_prime, 2 * l)))
        .collect()
}

/// A recursion that fails at `(r, s, p)` (indices summing to `l - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionViolation {
    /// `true` for the `r`-step relation, `false` for the `s`-step one.
    pub r_step: bool,
    pub at: (u32, u32, u32),
    pub residue: Rational,
}

/// Checks, for every `r + s + p = l - 1`,
///
/// ```text
/// (r+1)(α+r+1) C_{r+1,s,p} + (p+1)(γ+l+r+s) C_{r,s,p+1} = 0
/// (s+1)(β+s+1) C_{r,s+1,p} + (p+1)(γ+l+r+s) C_{r,s,p+1} = 0
/// ```
///
/// with `γ = k + k' - 3/2` and the table indexed by `r + s + p = l`.
pub fn check_recursion_table(
    k: &Rational,
    k_prime: &Rational,
    l: u32,
    table: &CoefficientTable,
) -> std::result::Result<(), RecursionViolation> {
    let three_halves = ratio(3, 2);
    let alpha = k - &three_halves;
    let beta = k_prime - &three_halves;
    let gamma = k + k_prime - &three_halves;
    let zero = Rational::zero();
    let c = |r, s, p| table.get(&(r, s, p)).unwrap_or(&zero);
    let q = |n: u32| int(i64::from(n));

    for r in 0..l {
        for s in 0..l - r {
            let p = l - 1 - r - s;
            let p_term = q(p + 1) * (&gamma + q(l + r + s)) * c(r, s, p + 1);
            let r_rel = q(r + 1) * (&alpha + q(r + 1)) * c(r + 1, s, p) + &p_term;
            if !r_rel.is_zero() {
                return Err(RecursionViolation {
                    r_step: true,
                    at: (r, s, p),
                    residue: r_rel,
                });
            }
            let s_rel = q(s + 1) * (&beta + q(s + 1)) * c(r, s + 1, p) + &p_term;
            if !s_rel.is_zero() {
                return Err(RecursionViolation {
                    r_step: false,
                    at: (r, s, p),
                    residue: s_rel,
                });
            }
        }
    }
    Ok(())
}

pub fn check_recursions(k: &Rational, k_prime: &Rational, l: u32) -> bool {
    check_recursion_table(k, k_prime, l, &coefficient_table(k, k_prime, l)).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(&ratio(7, 3), 0), int(1));
        assert_eq!(falling_factorial(&ratio(7, 2), 1), ratio(7, 2));
        assert_eq!(falling_factorial(&ratio(5, 2), 2), ratio(15, 4));
        assert_eq!(falling_factorial(&int(3), 4), int(0));
    }

    /// Direct transcription of the product formula, one factor at a time.
    fn c_oracle(r: u32, s: u32, p: u32, k: i64, kp: i64, v: u32) -> Rational {
        let alpha = int(k) - ratio(3, 2);
        let beta = int(kp) - ratio(3, 2);
        let gamma = int(k + kp) - ratio(3, 2) + int(i64::from(v % 2));
        let t = int(i64::from(r + s + p));
        let mut num = Rational::one();
        for i in 0..(s + p) {
            num *= &alpha + &t - int(i.into());
        }
        for i in 0..(r + p) {
            num *= &beta + &t - int(i.into());
        }
        for i in 0..(r + s) {
            num *= -(&gamma + &t) - int(i.into());
        }
        let fact = |n: u32| (1..=n).map(|i| int(i.into())).fold(Rational::one(), |a, b| a * b);
        num / (fact(r) * fact(s) * fact(p))
    }

    #[test]
    fn c_examples() {
        for (k, kp, v) in [(4, 4, 0), (4, 6, 3), (10, 35, 5)] {
            assert_eq!(coeff_c(0, 0, 0, &int(k), &int(kp), v), int(1));
        }
        assert_eq!(coeff_c(1, 0, 0, &int(4), &int(4), 2), ratio(-105, 4));
        assert_eq!(coeff_c(0, 0, 1, &int(4), &int(4), 2), ratio(49, 4));
    }

    #[test]
    fn c_matches_oracle() {
        for v in 0..8 {
            for (r, s, p, _, _) in index_tuples(v) {
                for (k, kp) in [(4, 4), (8, 10), (5, 12)] {
                    assert_eq!(coeff_c(r, s, p, &int(k), &int(kp), v), c_oracle(r, s, p, k, kp, v));
                }
            }
        }
    }

    #[test]
    fn d_examples() {
        let x = ratio(2, 7);
        assert_eq!(coeff_d(0, 0, 0, 0, 3, 5, &x), int(1));
        assert_eq!(coeff_d(0, 0, 1, 0, 3, 5, &x), int(-5));
        assert_eq!(coeff_d(1, 0, 0, 0, 2, 3, &x), int(1) - int(3) * &x);
        assert_eq!(coeff_d(0, 2, 0, 1, 2, 3, &int(1)), int(18));
    }

    #[test]
    fn d_poly_agrees_with_d() {
        for (r, s, i, j) in [(0, 0, 0, 0), (1, 0, 0, 1), (2, 1, 1, 0), (0, 3, 0, 0)] {
            let poly = coeff_d_poly(r, s, i, j, 2, 3);
            assert_eq!(poly.len() as u32, r + s + 1);
            for x in [int(0), int(1), ratio(-1, 2), ratio(5, 3)] {
                let eval = poly
                    .iter()
                    .rev()
                    .fold(Rational::zero(), |acc, c| acc * &x + c);
                assert_eq!(eval, coeff_d(r, s, i, j, 2, 3, &x));
            }
        }
    }

    #[test]
    fn term_indices() {
        for v in 0..7u32 {
            let params = BracketParams {
                k: 4,
                k_prime: 6,
                m: 1,
                m_prime: 2,
                v,
                x: int(1),
            };
            let terms = bracket_terms(&params);
            let h = v / 2;
            assert_eq!(terms.len() as u32, (h + 1) * (h + 2) / 2 * (v % 2 + 1));
            for t in terms {
                assert_eq!(t.r + t.s + t.p, h);
                assert_eq!(t.i + t.j, v % 2);
            }
        }
    }

    #[test]
    fn recursions_hold() {
        for l in 1..=6 {
            for k in [4, 6, 10, 35] {
                for kp in [4, 6, 10, 35] {
                    assert!(check_recursions(&int(k), &int(kp), l), "k={k} k'={kp} l={l}");
                }
            }
            assert!(check_recursions(&ratio(9, 2), &int(6), l));
            assert!(check_recursions(&ratio(7, 3), &ratio(-11, 5), l));
        }
    }

    #[test]
    fn recursion_detects_perturbation() {
        let (k, kp) = (int(10), int(35));
        for l in 1..=4 {
            let base = coefficient_table(&k, &kp, l);
            for key in base.keys() {
                let mut t = base.clone();
                *t.get_mut(key).unwrap() += ratio(1, 3);
                assert!(check_recursion_table(&k, &kp, l, &t).is_err(), "{key:?}");
            }
        }
    }

    #[test]
    fn printed_gamma_factor_does_not_hold() {
        // With (γ + l + p + 1) in place of (γ + l + r + s) the l = 1
        // relation leaves the residue (α + 1)(β + 1).
        let (k, kp) = (int(4), int(4));
        let t = coefficient_table(&k, &kp, 1);
        let alpha = &k - ratio(3, 2);
        let gamma = &k + &kp - ratio(3, 2);
        let residue = (&alpha + int(1)) * &t[&(1, 0, 0)] + (&gamma + int(2)) * &t[&(0, 0, 1)];
        assert_eq!(residue, ratio(49, 4));
    }

    #[test]
    fn rank_of_small_matrices() {
        let mut m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), int(1)],
        ];
        assert_eq!(rank(&mut m), 2);
        let mut z = vec![vec![int(0); 3]; 2];
        assert_eq!(rank(&mut z), 0);
    }
}
