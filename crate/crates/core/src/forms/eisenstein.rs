use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::EllipticSeries;

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Bernoulli numbers with `B_1 = -1/2`, from `Σ_{j<=n} C(n+1, j) B_j = 0`.
pub fn bernoulli(n: u32) -> Rational {
    let mut b: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    b.push(Rational::one());
    for m in 1..=u64::from(n) {
        let s: Rational = (0..m)
            .map(|j| Rational::from_integer(binomial(m + 1, j)) * &b[j as usize])
            .sum();
        b.push(-s / int(m as i64 + 1));
    }
    b.pop().unwrap()
}

/// `σ_p(n) = Σ_{d | n} d^p`.
pub fn divisor_sigma(p: u32, n: u64) -> BigInt {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| BigInt::from(d).pow(p))
        .sum()
}

/// Normalized Eisenstein series `E_k = 1 - (2k/B_k) Σ σ_{k-1}(n) q^n`.
pub fn eisenstein_q(k: i64, trunc: u32) -> Result<EllipticSeries> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::EisensteinWeight(k));
    }
    let factor = -int(2 * k) / bernoulli(k as u32);
    let terms = (0..=i64::from(trunc)).map(|n| {
        let c = if n == 0 {
            Rational::one()
        } else {
            &factor * Rational::from_integer(divisor_sigma(k as u32 - 1, n as u64))
        };
        (n, c)
    });
    let out = EllipticSeries::from_coeffs(k, trunc, terms)?;
    debug_assert!(!out.coeff(0).is_zero());
    Ok(out)
}
