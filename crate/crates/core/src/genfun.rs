//! A second construction of the brackets through formal power series in an
//! auxiliary variable `W`.
//!
//! A form `f` of weight `k` gives the jet `Σ c_ν heat^ν(f) W^ν` with
//! `c_ν = 1 / (ν! Π_{i=1..ν} (k - 3/2 + i))`. Products of rescaled jets are
//! turned back into forms by
//! `ζ_ν = Σ_j (-(K - 3/2 + ν))_{ν-j} / j! · heat^j(χ_{ν-j})`, and the result
//! must be a scalar multiple of the bracket computed in [`crate::bracket`].

use std::fmt;

use num_traits::{One, Zero};

use crate::bracket::{bracket_jacobi, falling_factorial};
use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};
use crate::series::{add, d_z, heat_pow, mul, scale, sub, JacobiSeries};

/// `Σ_ν χ_ν W^ν`, truncated after `W^{ν_max}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalJet {
    base_weight: i64,
    index: u32,
    chis: Vec<JacobiSeries>,
}

/// `c_ν` for a form of weight `k`.
pub fn jet_normalizer(k: i64, nu: u32) -> Rational {
    let shift = int(k) - ratio(3, 2);
    (1..=nu).fold(Rational::one(), |acc, i| {
        acc / (int(i64::from(i)) * (&shift + int(i64::from(i))))
    })
}

pub fn jet_of_form(f: &JacobiSeries, nu_max: u32) -> FormalJet {
    let chis = (0..=nu_max)
        .map(|nu| scale(&jet_normalizer(f.weight(), nu), &heat_pow(f, nu)))
        .collect();
    FormalJet {
        base_weight: f.weight(),
        index: f.index(),
        chis,
    }
}

impl FormalJet {
    pub fn base_weight(&self) -> i64 {
        self.base_weight
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn nu_max(&self) -> u32 {
        self.chis.len() as u32 - 1
    }

    pub fn chi(&self, nu: usize) -> Option<&JacobiSeries> {
        self.chis.get(nu)
    }

    pub fn trunc(&self) -> u32 {
        self.chis[0].trunc()
    }

    /// `W -> λ W`: `χ_ν -> λ^ν χ_ν`.
    pub fn scale_w(&self, lambda: &Rational) -> Self {
        let mut power = Rational::one();
        let chis = self
            .chis
            .iter()
            .map(|chi| {
                let out = scale(&power, chi);
                power *= lambda;
                out
            })
            .collect();
        Self {
            chis,
            ..self.clone()
        }
    }

    fn check_trunc(&self, other: &Self) -> Result<()> {
        if self.trunc() != other.trunc() {
            return Err(Error::TruncMismatch {
                left: self.trunc(),
                right: other.trunc(),
            });
        }
        Ok(())
    }

    /// Cauchy product in `W`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_trunc(other)?;
        let nu_max = self.nu_max().min(other.nu_max()) as usize;
        let chis = (0..=nu_max)
            .map(|nu| {
                (0..=nu)
                    .map(|i| mul(&self.chis[i], &other.chis[nu - i]))
                    .reduce(|a, b| add(&a, &b).expect("equal weight bookkeeping"))
                    .expect("nonempty")
            })
            .collect();
        Ok(Self {
            base_weight: self.base_weight + other.base_weight,
            index: self.index + other.index,
            chis,
        })
    }

    /// `m'·(d_z a)·b - m·a·(d_z b)`, coefficient-wise in `W`.
    pub fn odd_combine(&self, other: &Self, m: u32, m_prime: u32) -> Result<Self> {
        self.check_trunc(other)?;
        let (mi, mpi) = (int(i64::from(m)), int(i64::from(m_prime)));
        let nu_max = self.nu_max().min(other.nu_max()) as usize;
        let chis = (0..=nu_max)
            .map(|nu| {
                (0..=nu)
                    .map(|i| {
                        let (a, b) = (&self.chis[i], &other.chis[nu - i]);
                        sub(&scale(&mpi, &mul(&d_z(a), b)), &scale(&mi, &mul(a, &d_z(b))))
                            .expect("equal weight bookkeeping")
                    })
                    .reduce(|a, b| add(&a, &b).expect("equal weight bookkeeping"))
                    .expect("nonempty")
            })
            .collect();
        Ok(Self {
            base_weight: self.base_weight + other.base_weight + 1,
            index: self.index + other.index,
            chis,
        })
    }

    /// `ζ_ν`, weight `K + 2ν`, index `M`.
    pub fn zeta_nu(&self, nu: u32) -> Result<JacobiSeries> {
        if nu > self.nu_max() {
            return Err(Error::JetDegree(nu as usize));
        }
        let top = -(int(self.base_weight) - ratio(3, 2) + int(i64::from(nu)));
        let weight = self.base_weight + 2 * i64::from(nu);
        let mut out = JacobiSeries::zero(weight, self.index, self.trunc());
        let mut j_fact = Rational::one();
        for j in 0..=nu {
            if j > 0 {
                j_fact *= int(i64::from(j));
            }
            let c = falling_factorial(&top, nu - j) / &j_fact;
            let term = heat_pow(&self.chis[(nu - j) as usize], j);
            debug_assert_eq!(term.weight(), weight);
            out.add_scaled_assign(&c, &term);
        }
        Ok(out)
    }
}

/// Outcome of comparing two series for proportionality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proportionality {
    /// `left = λ · right` with `λ != 0`.
    Scalar(Rational),
    /// Both sides vanish identically.
    BothZero,
}

impl fmt::Display for Proportionality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proportionality::Scalar(l) => write!(f, "λ = {l}"),
            Proportionality::BothZero => write!(f, "both sides zero"),
        }
    }
}

/// Finds `λ` with `left = λ · right` from the first nonzero coefficient in
/// key order and checks it on every coefficient.
pub fn proportionality(left: &JacobiSeries, right: &JacobiSeries) -> Result<Proportionality> {
    let not_prop = |key: (i64, i64)| Error::NotProportional {
        key: format!("{key:?}"),
        left: Box::new(left.coeff(key.0, key.1)),
        right: Box::new(right.coeff(key.0, key.1)),
    };
    let first = match (left.iter().next(), right.iter().next()) {
        (None, None) => return Ok(Proportionality::BothZero),
        (Some((a, _)), None) => *a,
        (None, Some((b, _))) => *b,
        (Some((a, _)), Some((b, _))) => *a.min(b),
    };
    let (l0, r0) = (left.coeff(first.0, first.1), right.coeff(first.0, first.1));
    if l0.is_zero() || r0.is_zero() {
        return Err(not_prop(first));
    }
    let lambda = l0 / r0;
    let keys = left.iter().chain(right.iter()).map(|(k, _)| *k);
    for key in keys {
        if left.coeff(key.0, key.1) != &lambda * right.coeff(key.0, key.1) {
            return Err(not_prop(key));
        }
    }
    Ok(Proportionality::Scalar(lambda))
}

/// `ζ_{⌊v/2⌋}` of the product of the jets of `f` and `g` with `W` rescaled
/// by `scale_f` and `scale_g`; the odd combination is used for odd `v`.
pub fn genfun_bracket(
    f: &JacobiSeries,
    g: &JacobiSeries,
    scale_f: &Rational,
    scale_g: &Rational,
    v: u32,
) -> Result<JacobiSeries> {
    let nu = v / 2;
    let a = jet_of_form(f, nu).scale_w(scale_f);
    let b = jet_of_form(g, nu).scale_w(scale_g);
    let combined = if v.is_multiple_of(2) {
        a.mul(&b)?
    } else {
        a.odd_combine(&b, f.index(), g.index())?
    };
    combined.zeta_nu(nu)
}

/// Builds the generating-function bracket for `(f, g, X, v)` and returns
/// `λ` with `ζ = λ · [f, g]_{X,v}`.
///
/// The jet of `f` is rescaled by `1 - m'X` and that of `g` by `1 + mX`,
/// which is the pairing of powers of `heat` with `D_{r,s,i,j}` in the
/// bracket. The opposite signs give the bracket at `-X`.
pub fn crosscheck_bracket(f: &JacobiSeries, g: &JacobiSeries, x: &Rational, v: u32) -> Result<Proportionality> {
    let m = int(i64::from(f.index()));
    let mp = int(i64::from(g.index()));
    let scale_f = Rational::one() - &mp * x;
    let scale_g = Rational::one() + &m * x;
    let zeta = genfun_bracket(f, g, &scale_f, &scale_g, v)?;
    let bracket = bracket_jacobi(f, g, x, v);
    debug_assert_eq!(zeta.weight(), bracket.weight());
    proportionality(&zeta, &bracket)
}
