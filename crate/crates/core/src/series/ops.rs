use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::JacobiSeries;
use crate::error::{Error, Result};
use crate::rational::Rational;

fn check_compatible(f: &JacobiSeries, g: &JacobiSeries) -> Result<()> {
    if f.weight != g.weight {
        return Err(Error::WeightMismatch {
            left: f.weight,
            right: g.weight,
        });
    }
    if f.index != g.index {
        return Err(Error::IndexMismatch {
            left: f.index,
            right: g.index,
        });
    }
    Ok(())
}

/// Coefficient-wise sum; the result is cut to the smaller truncation.
pub fn add(f: &JacobiSeries, g: &JacobiSeries) -> Result<JacobiSeries> {
    check_compatible(f, g)?;
    let mut out = f.truncate(g.trunc);
    out.add_scaled_assign(&crate::rational::int(1), g);
    Ok(out)
}

pub fn sub(f: &JacobiSeries, g: &JacobiSeries) -> Result<JacobiSeries> {
    check_compatible(f, g)?;
    let mut out = f.truncate(g.trunc);
    out.add_scaled_assign(&crate::rational::int(-1), g);
    Ok(out)
}

pub fn neg(f: &JacobiSeries) -> JacobiSeries {
    f.map_coeffs(f.weight, |_, _, c| -c)
}

pub fn scale(c: &Rational, f: &JacobiSeries) -> JacobiSeries {
    f.map_coeffs(f.weight, |_, _, v| c * v)
}

fn rows(f: &JacobiSeries, trunc: i64) -> Vec<Vec<(i64, &Rational)>> {
    let mut rows = vec![Vec::new(); trunc as usize + 1];
    for (&(n, r), c) in &f.coeffs {
        if n > trunc {
            break;
        }
        rows[n as usize].push((r, c));
    }
    rows
}

/// Cauchy product in both `q` and `ζ`. Weight and index add; truncation is
/// the smaller of the two.
pub fn mul(f: &JacobiSeries, g: &JacobiSeries) -> JacobiSeries {
    let trunc = f.trunc.min(g.trunc);
    let limit = i64::from(trunc);
    let fr = rows(f, limit);
    let gr = rows(g, limit);

    // Integer-valued inputs (every theta series) take the fast path.
    let integral = f.coeffs.values().chain(g.coeffs.values()).all(|c| c.is_integer());

    let mut out = JacobiSeries::zero(f.weight + g.weight, f.index + g.index, trunc);
    if integral {
        let mut acc: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for (n1, a_row) in fr.iter().enumerate() {
            for (n2, b_row) in gr.iter().enumerate().take(limit as usize - n1 + 1) {
                let n = (n1 + n2) as i64;
                for (r1, a) in a_row {
                    for (r2, b) in b_row {
                        *acc.entry((n, r1 + r2)).or_default() += a.numer() * b.numer();
                    }
                }
            }
        }
        out.coeffs = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Rational::from_integer(c)))
            .collect();
    } else {
        for (n1, a_row) in fr.iter().enumerate() {
            for (n2, b_row) in gr.iter().enumerate().take(limit as usize - n1 + 1) {
                let n = (n1 + n2) as i64;
                for (r1, a) in a_row {
                    for (r2, b) in b_row {
                        out.add_at(n, r1 + r2, *a * *b);
                    }
                }
            }
        }
    }
    out
}

/// `∂τ/(2πi)`: `c(n, r) -> n c(n, r)`, weight + 2.
pub fn theta_q(f: &JacobiSeries) -> JacobiSeries {
    f.map_coeffs(f.weight + 2, |n, _, c| c * Rational::from_integer(n.into()))
}

/// `∂z/(2πi)`: `c(n, r) -> r c(n, r)`, weight + 1.
pub fn d_z(f: &JacobiSeries) -> JacobiSeries {
    f.map_coeffs(f.weight + 1, |_, r, c| c * Rational::from_integer(r.into()))
}

/// `L_m/(2πi)²` at the series' own index: `c(n, r) -> (4nm - r²) c(n, r)`,
/// weight + 2.
pub fn heat(f: &JacobiSeries) -> JacobiSeries {
    heat_pow(f, 1)
}

pub fn heat_pow(f: &JacobiSeries, p: u32) -> JacobiSeries {
    if p == 0 {
        return f.clone();
    }
    let m = i64::from(f.index);
    f.map_coeffs(f.weight + 2 * i64::from(p), |n, r, c| {
        let mult = BigInt::from(4 * n * m - r * r).pow(p);
        c * Rational::from_integer(mult)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn series(weight: i64, index: u32, trunc: u32, e: &[((i64, i64), i64)]) -> JacobiSeries {
        JacobiSeries::from_coeffs(weight, index, trunc, e.iter().map(|&(k, c)| (k, int(c)))).unwrap()
    }

    #[test]
    fn add_identity_and_inverse() {
        let f = series(4, 1, 3, &[((0, 0), 1), ((1, 0), 2), ((1, 1), -3)]);
        let z = JacobiSeries::zero(4, 1, 3);
        assert_eq!(add(&f, &z).unwrap(), f);
        assert!(add(&f, &neg(&f)).unwrap().is_zero());
        assert!(sub(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn add_pointwise_and_truncation() {
        let f = series(4, 1, 3, &[((1, 0), 2), ((3, 0), 1)]);
        let g = series(4, 1, 2, &[((1, 0), 3)]);
        let s = add(&f, &g).unwrap();
        assert_eq!(s.coeff(1, 0), int(5));
        assert_eq!(s.trunc(), 2);
        assert_eq!(s.coeff(3, 0), int(0));
    }

    #[test]
    fn add_rejects_mismatch() {
        let f = JacobiSeries::zero(4, 1, 3);
        assert!(matches!(
            add(&f, &JacobiSeries::zero(6, 1, 3)),
            Err(Error::WeightMismatch { .. })
        ));
        assert!(matches!(
            add(&f, &JacobiSeries::zero(4, 2, 3)),
            Err(Error::IndexMismatch { .. })
        ));
    }

    #[test]
    fn mul_unit_and_bookkeeping() {
        let f = series(4, 1, 3, &[((0, 0), 1), ((1, 2), 1), ((1, -1), 56)]);
        assert_eq!(mul(&f, &JacobiSeries::one(3)), f);
        let g = series(6, 2, 2, &[((0, 0), 1)]);
        let p = mul(&f, &g);
        assert_eq!((p.weight(), p.index(), p.trunc()), (10, 3, 2));
    }

    #[test]
    fn mul_zeta_cancellation() {
        let f = series(0, 0, 1, &[((0, 1), 1)]);
        let g = series(0, 0, 1, &[((0, -1), 1)]);
        assert_eq!(mul(&f, &g).coeff(0, 0), int(1));
    }

    #[test]
    fn mul_rational_path() {
        let f = JacobiSeries::from_coeffs(0, 0, 2, [((0, 0), crate::rational::ratio(1, 2)), ((1, 1), int(1))]).unwrap();
        let p = mul(&f, &f);
        assert_eq!(p.coeff(0, 0), crate::rational::ratio(1, 4));
        assert_eq!(p.coeff(1, 1), int(1));
        assert_eq!(p.coeff(2, 2), int(1));
    }

    #[test]
    fn derivative_multipliers() {
        let f = series(4, 1, 3, &[((0, 1), 9), ((3, 1), 2), ((1, -2), 5)]);
        let t = theta_q(&f);
        assert_eq!(t.coeff(0, 1), int(0));
        assert_eq!(t.coeff(3, 1), int(6));
        let d = d_z(&f);
        assert_eq!(d.coeff(1, -2), int(-10));
        assert_eq!(d_z(&d).coeff(1, -2), int(20));
        assert_eq!(d.weight(), 5);
    }

    #[test]
    fn heat_multipliers() {
        let f = series(4, 1, 2, &[((1, 2), 7), ((1, 0), 3)]);
        let h = heat(&f);
        assert_eq!(h.coeff(1, 2), int(0));
        assert_eq!(h.coeff(1, 0), int(12));
        assert_eq!(h.weight(), 6);
        assert_eq!(heat_pow(&f, 2).coeff(1, 0), int(48));

        let e = series(0, 0, 2, &[((1, 3), 1), ((2, -1), 2)]);
        assert_eq!(heat(&e), neg(&d_z(&d_z(&e))).with_weight(2));
    }
}
