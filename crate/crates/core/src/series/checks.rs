//! Coefficient-level predicates standing in for the transformation laws.

use std::collections::HashMap;
use std::fmt;

use num_integer::Roots;

use super::JacobiSeries;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportKind {
    /// `r² <= 4nm`
    Holomorphic,
    /// `r² < 4nm`
    Cusp,
}

/// Two coefficients in the same `(4nm - r², r mod 2m)` class that differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscClassWitness {
    pub first: (i64, i64),
    pub first_value: Rational,
    pub second: (i64, i64),
    pub second_value: Rational,
}

impl fmt::Display for DiscClassWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "c{:?} = {} but c{:?} = {}",
            self.first, self.first_value, self.second, self.second_value
        )
    }
}

impl JacobiSeries {
    /// First nonzero key outside the given support cone.
    pub fn support_violation(&self, kind: SupportKind) -> Option<(i64, i64)> {
        let m = i64::from(self.index);
        self.coeffs
            .keys()
            .find(|&&(n, r)| {
                let d = 4 * n * m - r * r;
                match kind {
                    SupportKind::Holomorphic => d < 0,
                    SupportKind::Cusp => d <= 0,
                }
            })
            .copied()
    }

    pub fn has_holomorphic_support(&self) -> bool {
        self.support_violation(SupportKind::Holomorphic).is_none()
    }

    pub fn has_cusp_support(&self) -> bool {
        self.support_violation(SupportKind::Cusp).is_none()
    }

    /// Checks that `c(n, r)` depends only on `(4nm - r², r mod 2m)` among
    /// all `n <= trunc`. Returns `Ok(None)` when it does and a witness
    /// otherwise; index 0 has no classes and is rejected.
    pub fn check_disc_class_invariance(&self) -> Result<Option<DiscClassWitness>> {
        if self.index == 0 {
            return Err(Error::ZeroIndex);
        }
        let m = i64::from(self.index);
        let trunc = i64::from(self.trunc);
        // Any class member with n <= trunc has r² <= 4·trunc·m - D.
        let min_disc = self
            .coeffs
            .keys()
            .map(|&(n, r)| 4 * n * m - r * r)
            .min()
            .unwrap_or(0)
            .min(0);
        let bound = (4 * trunc * m - min_disc).sqrt();

        let mut seen: HashMap<(i64, i64), ((i64, i64), Rational)> = HashMap::new();
        for n in 0..=trunc {
            for r in -bound..=bound {
                let class = (4 * n * m - r * r, r.rem_euclid(2 * m));
                let value = self.coeff(n, r);
                match seen.get(&class) {
                    None => {
                        seen.insert(class, ((n, r), value));
                    }
                    Some((key, first)) if *first != value => {
                        return Ok(Some(DiscClassWitness {
                            first: *key,
                            first_value: first.clone(),
                            second: (n, r),
                            second_value: value,
                        }));
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(None)
    }

    /// First stored key with `c(n, -r) != (-1)^k c(n, r)`.
    pub fn parity_violation(&self) -> Option<(i64, i64)> {
        let odd = self.weight.rem_euclid(2) == 1;
        self.coeffs
            .iter()
            .find(|(&(n, r), c)| {
                let mirror = self.coeff(n, -r);
                if odd {
                    mirror != -(*c).clone()
                } else {
                    mirror != **c
                }
            })
            .map(|(k, _)| *k)
    }

    pub fn check_parity(&self) -> bool {
        self.parity_violation().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::series::{d_z, heat, mul};

    fn series(weight: i64, index: u32, trunc: u32, e: &[((i64, i64), i64)]) -> JacobiSeries {
        JacobiSeries::from_coeffs(weight, index, trunc, e.iter().map(|&(k, c)| (k, int(c)))).unwrap()
    }

    #[test]
    fn support_predicates() {
        let f = series(4, 1, 2, &[((0, 0), 1), ((1, 2), 1), ((1, 0), 4)]);
        assert!(f.has_holomorphic_support());
        assert_eq!(f.support_violation(SupportKind::Cusp), Some((0, 0)));
        let weak = series(4, 1, 2, &[((1, 3), 1)]);
        assert_eq!(weak.support_violation(SupportKind::Holomorphic), Some((1, 3)));
        assert!(heat(&f).has_cusp_support());
    }

    #[test]
    fn holomorphic_support_closed_under_mul() {
        let f = series(4, 1, 3, &[((0, 0), 1), ((1, 2), 1), ((1, -2), 1), ((2, 1), 3)]);
        let g = series(4, 2, 3, &[((0, 0), 1), ((1, 2), 2), ((2, -4), 1)]);
        let p = mul(&f, &g);
        assert_eq!(p.index(), 3);
        assert!(p.has_holomorphic_support());
    }

    #[test]
    fn disc_class_single_coefficient() {
        // c(1, 0) sits alone in its class within trunc 1.
        let f = series(4, 1, 1, &[((1, 0), 1)]);
        assert_eq!(f.check_disc_class_invariance().unwrap(), None);
    }

    #[test]
    fn disc_class_detects_violation() {
        // (0,0) and (1,2) share discriminant 0 and r mod 2.
        let f = series(4, 1, 1, &[((0, 0), 1)]);
        let w = f.check_disc_class_invariance().unwrap().unwrap();
        assert_eq!(w.first, (0, 0));
        assert_eq!(w.second, (1, -2));
    }

    #[test]
    fn disc_class_rejects_index_zero() {
        let f = series(4, 0, 1, &[((0, 0), 1)]);
        assert!(matches!(f.check_disc_class_invariance(), Err(Error::ZeroIndex)));
    }

    #[test]
    fn parity() {
        let even = series(4, 1, 1, &[((1, 1), 56), ((1, -1), 56), ((1, 0), 126)]);
        assert!(even.check_parity());
        assert!(d_z(&even).check_parity());
        let skew = series(4, 1, 1, &[((1, 1), 2), ((1, -1), 1)]);
        assert_eq!(skew.parity_violation(), Some((1, -1)));
    }
}
