//! Degree-2 Siegel expansions and the Siegel bracket `[F, F']_l`.
//!
//! A [`SiegelSeries`] stores `a(n, r, m)` for the term
//! `q1^n ζ^r q2^m` with `0 <= n, m <= trunc`. Its `m`-th slice
//! `f_m(n, r) = a(n, r, m)` is a Jacobi series of index `m`, so the store
//! doubles as a Jacobi-Fourier expansion `F = Σ f_m q2^m`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::bracket::{bracket_jacobi, coeff_c};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::{add, JacobiSeries, SupportKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SiegelSeries {
    weight: i64,
    trunc: u32,
    coeffs: BTreeMap<(i64, i64, i64), Rational>,
}

impl SiegelSeries {
    pub fn zero(weight: i64, trunc: u32) -> Self {
        Self {
            weight,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from `((n, r, m), a)` pairs (repeats are summed) and rejects
    /// keys out of range or an asymmetric result.
    pub fn from_coeffs<I>(weight: i64, trunc: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((i64, i64, i64), Rational)>,
    {
        let mut s = Self::zero(weight, trunc);
        let t = i64::from(trunc);
        for ((n, r, m), c) in entries {
            if !(0..=t).contains(&n) || !(0..=t).contains(&m) {
                return Err(Error::OutOfRange { n: n.max(m), r, trunc });
            }
            s.add_at((n, r, m), c);
        }
        s.validate_symmetry()?;
        Ok(s)
    }

    /// Assembles `F = Σ_m f_m q2^m` from `components[m] = f_m`. The common
    /// truncation is `T = len - 1`; every component must reach at least `T`.
    pub fn from_components(components: &[JacobiSeries]) -> Result<Self> {
        let first = components.first().ok_or(Error::NoComponents)?;
        let trunc = (components.len() - 1) as u32;
        let mut s = Self::zero(first.weight(), trunc);
        for (position, f) in components.iter().enumerate() {
            if f.weight() != first.weight() {
                return Err(Error::WeightMismatch {
                    left: first.weight(),
                    right: f.weight(),
                });
            }
            if f.index() as usize != position {
                return Err(Error::ComponentIndex {
                    position,
                    index: f.index(),
                });
            }
            if f.trunc() < trunc {
                return Err(Error::ComponentTrunc {
                    position,
                    trunc: f.trunc(),
                    needed: trunc,
                });
            }
            for (&(n, r), c) in f.truncate(trunc).iter() {
                s.coeffs.insert((n, r, position as i64), c.clone());
            }
        }
        s.validate_symmetry()?;
        Ok(s)
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn coeff(&self, n: i64, r: i64, m: i64) -> Rational {
        self.coeffs.get(&(n, r, m)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients in `(n, r, m)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64, i64), &Rational)> {
        self.coeffs.iter()
    }

    pub fn nonzero_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The Jacobi series `f_m` of index `m` (weight `k`, truncation `T`).
    pub fn slice(&self, m: u32) -> JacobiSeries {
        let mi = i64::from(m);
        let entries = self
            .coeffs
            .iter()
            .filter(|(&(_, _, mm), _)| mm == mi)
            .map(|(&(n, r, _), c)| ((n, r), c.clone()));
        JacobiSeries::from_coeffs(self.weight, m, self.trunc, entries)
            .expect("slice keys lie within truncation")
    }

    pub fn slices(&self) -> Vec<JacobiSeries> {
        (0..=self.trunc).map(|m| self.slice(m)).collect()
    }

    /// First key with `a(n, r, m) != a(m, r, n)`.
    pub fn symmetry_violation(&self) -> Option<(i64, i64, i64)> {
        let zero = Rational::zero();
        // Stored keys cover every nonzero entry, and a missing mirror
        // shows up as a zero on the other side.
        self.coeffs
            .iter()
            .find(|(&(n, r, m), c)| self.coeffs.get(&(m, r, n)).unwrap_or(&zero) != *c)
            .map(|(k, _)| *k)
    }

    fn validate_symmetry(&self) -> Result<()> {
        match self.symmetry_violation() {
            None => Ok(()),
            Some((n, r, m)) => Err(Error::SymmetryViolation {
                n,
                r,
                m,
                a: Box::new(self.coeff(n, r, m)),
                b: Box::new(self.coeff(m, r, n)),
            }),
        }
    }

    fn add_at(&mut self, key: (i64, i64, i64), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    fn add_scaled_assign(&mut self, c: &Rational, other: &SiegelSeries) {
        if c.is_zero() {
            return;
        }
        let t = i64::from(self.trunc);
        for (&(n, r, m), v) in &other.coeffs {
            if n <= t && m <= t {
                self.add_at((n, r, m), c * v);
            }
        }
    }

    /// `Δ/(2πi)²`: `a(n, r, m) -> (4nm - r²) a(n, r, m)`, weight + 2.
    pub fn delta_op(&self) -> Self {
        self.delta_pow(1)
    }

    pub fn delta_pow(&self, p: u32) -> Self {
        if p == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(&(n, r, m), c)| {
                let mult = BigInt::from(4 * n * m - r * r).pow(p);
                let v = c * Rational::from_integer(mult);
                (!v.is_zero()).then_some(((n, r, m), v))
            })
            .collect();
        Self {
            weight: self.weight + 2 * i64::from(p),
            trunc: self.trunc,
            coeffs,
        }
    }

    /// Product: Cauchy in `n` and `m`, convolution in `r`.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let t = i64::from(trunc);
        let rows = |s: &SiegelSeries| {
            let mut rows: BTreeMap<(i64, i64), Vec<(i64, Rational)>> = BTreeMap::new();
            for (&(n, r, m), c) in &s.coeffs {
                if n <= t && m <= t {
                    rows.entry((n, m)).or_default().push((r, c.clone()));
                }
            }
            rows
        };
        let a = rows(self);
        let b = rows(other);
        let mut out = Self::zero(self.weight + other.weight, trunc);
        for (&(n1, m1), ra) in &a {
            for (&(n2, m2), rb) in &b {
                let (n, m) = (n1 + n2, m1 + m2);
                if n > t || m > t {
                    continue;
                }
                for (r1, x) in ra {
                    for (r2, y) in rb {
                        out.add_at((n, r1 + r2, m), x * y);
                    }
                }
            }
        }
        debug_assert!(
            self.symmetry_violation().is_some()
                || other.symmetry_violation().is_some()
                || out.symmetry_violation().is_none()
        );
        out
    }
}

/// `[F, F']_l` straight from the definition:
/// `Σ_{r+s+p=l} C_{r,s,p} Δ^p(Δ^r F · Δ^s F')`, in the scaled normalization.
/// Weight `k + k' + 2l`, truncation `min(T, T')`.
pub fn bracket_siegel_direct(f: &SiegelSeries, g: &SiegelSeries, l: u32) -> SiegelSeries {
    let k = int(f.weight);
    let kp = int(g.weight);
    let triples: Vec<(u32, u32, u32)> = (0..=l)
        .flat_map(|r| (0..=l - r).map(move |s| (r, s, l - r - s)))
        .collect();
    let terms: Vec<(Rational, SiegelSeries)> = triples
        .into_par_iter()
        .map(|(r, s, p)| {
            let c = coeff_c(r, s, p, &k, &kp, 2 * l);
            (c, f.delta_pow(r).mul(&g.delta_pow(s)).delta_pow(p))
        })
        .collect();
    let mut out = SiegelSeries::zero(f.weight + g.weight + 2 * i64::from(l), f.trunc.min(g.trunc));
    for (c, term) in &terms {
        out.add_scaled_assign(c, term);
    }
    out
}

/// `[F, F']_l` as `Σ_{m, m'} [f_m, f'_{m'}]_{X=0, 2l} q2^{m+m'}`.
pub fn bracket_siegel_via_jacobi(f: &SiegelSeries, g: &SiegelSeries, l: u32) -> SiegelSeries {
    let trunc = f.trunc.min(g.trunc);
    let weight = f.weight + g.weight + 2 * i64::from(l);
    let fs = f.slices();
    let gs = g.slices();
    let x = Rational::zero();
    let components: Vec<JacobiSeries> = (0..=trunc)
        .into_par_iter()
        .map(|mu| {
            let mut acc = JacobiSeries::zero(weight, mu, trunc);
            for m in 0..=mu {
                let term = bracket_jacobi(&fs[m as usize], &gs[(mu - m) as usize], &x, 2 * l);
                acc = add(&acc, &term.truncate(trunc)).expect("matching weight and index");
            }
            acc
        })
        .collect();
    SiegelSeries::from_components(&components).expect("bracket of symmetric series is symmetric")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl CheckOutcome {
    fn new(name: String, witness: Option<String>) -> Self {
        Self {
            name,
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SiegelReport {
    pub checks: Vec<CheckOutcome>,
}

impl SiegelReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for SiegelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "ok" } else { "FAIL" };
            match &c.witness {
                Some(w) => writeln!(f, "{status:4} {}: {w}", c.name)?,
                None => writeln!(f, "{status:4} {}", c.name)?,
            }
        }
        Ok(())
    }
}

/// Runs global symmetry plus disc-class invariance, holomorphic support and
/// parity on every slice `f_m`, `m >= 1`.
pub fn check_siegel_consistency(f: &SiegelSeries) -> SiegelReport {
    let mut checks = vec![CheckOutcome::new(
        "symmetry a(n,r,m) = a(m,r,n)".into(),
        f.symmetry_violation().map(|(n, r, m)| {
            format!(
                "a({n},{r},{m}) = {} but a({m},{r},{n}) = {}",
                f.coeff(n, r, m),
                f.coeff(m, r, n)
            )
        }),
    )];
    for m in 1..=f.trunc {
        let s = f.slice(m);
        let disc = match s.check_disc_class_invariance() {
            Ok(w) => w.map(|w| w.to_string()),
            Err(e) => Some(e.to_string()),
        };
        checks.push(CheckOutcome::new(format!("slice {m}: disc-class invariance"), disc));
        checks.push(CheckOutcome::new(
            format!("slice {m}: holomorphic support"),
            s.support_violation(SupportKind::Holomorphic)
                .map(|(n, r)| format!("c({n},{r}) = {}", s.coeff(n, r))),
        ));
        checks.push(CheckOutcome::new(
            format!("slice {m}: parity"),
            s.parity_violation()
                .map(|(n, r)| format!("c({n},{r}) = {}, c({n},{}) = {}", s.coeff(n, r), -r, s.coeff(n, -r))),
        ));
    }
    SiegelReport { checks }
}

/// Cusp criteria: the `m = 0` slice vanishes and every other slice has
/// `r² < 4nm` support.
pub fn check_siegel_cusp(f: &SiegelSeries) -> SiegelReport {
    let zero_slice = f.slice(0);
    let mut checks = vec![CheckOutcome::new(
        "slice 0 vanishes".into(),
        zero_slice
            .iter()
            .next()
            .map(|(&(n, r), c)| format!("a({n},{r},0) = {c}")),
    )];
    for m in 1..=f.trunc {
        let s = f.slice(m);
        checks.push(CheckOutcome::new(
            format!("slice {m}: cusp support"),
            s.support_violation(SupportKind::Cusp)
                .map(|(n, r)| format!("c({n},{r}) = {}", s.coeff(n, r))),
        ));
    }
    SiegelReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::heat;

    fn siegel(weight: i64, trunc: u32, e: &[((i64, i64, i64), i64)]) -> Result<SiegelSeries> {
        SiegelSeries::from_coeffs(weight, trunc, e.iter().map(|&(k, c)| (k, int(c))))
    }

    fn sample() -> SiegelSeries {
        siegel(
            4,
            2,
            &[
                ((0, 0, 0), 1),
                ((1, 0, 0), 240),
                ((0, 0, 1), 240),
                ((1, 0, 1), 30240),
                ((1, 1, 1), 13440),
                ((1, -1, 1), 13440),
                ((1, 2, 1), 240),
                ((1, -2, 1), 240),
                ((2, 1, 1), 7),
                ((1, 1, 2), 7),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_asymmetry() {
        let err = siegel(4, 2, &[((1, 0, 2), 1)]).unwrap_err();
        assert!(matches!(err, Error::SymmetryViolation { n: 1, r: 0, m: 2, .. }));
    }

    #[test]
    fn from_components_checks() {
        let f0 = JacobiSeries::from_coeffs(4, 0, 1, [((1, 0), int(3))]).unwrap();
        let f1 = JacobiSeries::from_coeffs(4, 1, 1, [((0, 0), int(3))]).unwrap();
        let s = SiegelSeries::from_components(&[f0.clone(), f1.clone()]).unwrap();
        assert_eq!(s.coeff(1, 0, 0), int(3));
        assert_eq!(s.slice(1), f1);

        let wrong_index = JacobiSeries::zero(4, 2, 1);
        assert!(matches!(
            SiegelSeries::from_components(&[f0.clone(), wrong_index]),
            Err(Error::ComponentIndex { .. })
        ));
        let short = JacobiSeries::zero(4, 1, 0);
        assert!(matches!(
            SiegelSeries::from_components(&[f0.clone(), short]),
            Err(Error::ComponentTrunc { .. })
        ));
        let heavy = JacobiSeries::zero(6, 1, 1);
        assert!(matches!(
            SiegelSeries::from_components(&[f0, heavy]),
            Err(Error::WeightMismatch { .. })
        ));
        let zeros = [JacobiSeries::zero(4, 0, 3), JacobiSeries::zero(4, 1, 3)];
        assert!(SiegelSeries::from_components(&zeros).unwrap().is_zero());
        assert!(matches!(SiegelSeries::from_components(&[]), Err(Error::NoComponents)));
    }

    #[test]
    fn delta_multipliers() {
        let s = sample();
        let d = s.delta_op();
        assert_eq!(d.coeff(1, 2, 1), int(0));
        assert_eq!(d.coeff(1, 0, 1), int(4 * 30240));
        assert_eq!(d.weight(), 6);
        for m in 0..=s.trunc() {
            assert_eq!(d.slice(m), heat(&s.slice(m)));
        }
    }

    #[test]
    fn product_is_symmetric() {
        let s = sample();
        let p = s.mul(&s);
        assert_eq!(p.symmetry_violation(), None);
        assert_eq!(p.coeff(0, 0, 0), int(1));
        assert_eq!(p.coeff(1, 0, 0), int(480));
    }

    #[test]
    fn bracket_level_zero_is_product() {
        let s = sample();
        assert_eq!(bracket_siegel_direct(&s, &s, 0), s.mul(&s));
        assert_eq!(bracket_siegel_via_jacobi(&s, &s, 0), s.mul(&s));
    }

    #[test]
    fn report_flags_perturbation() {
        let mut s = sample();
        s.coeffs.insert((1, 2, 1), int(239));
        s.coeffs.insert((1, -2, 1), int(239));
        let report = check_siegel_consistency(&s);
        assert!(!report.passed());
        assert!(report.failures().any(|c| c.name.contains("disc-class")));
    }
}
