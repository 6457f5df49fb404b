//! Degree bounds for the image of Galois acting on torsion of `H^2`.

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// `|GL(n, F_l)| = prod_{i < n} (l^n - l^i)`.
pub fn gl_order(n: u32, l: u64) -> Result<BigUint> {
    check_positive(n)?;
    check_l(l)?;
    let l = BigUint::from(l);
    let ln = Pow::pow(&l, n);
    Ok((0..n).map(|i| &ln - Pow::pow(&l, i)).product())
}

/// The coarse bound `l^(n^2) >= |GL(n, F_l)|`.
pub fn torsion_bound(n: u32, l: u64) -> Result<BigUint> {
    check_positive(n)?;
    check_l(l)?;
    if l < 3 {
        return Err(Error::InvalidInput("torsion bound needs an odd prime".into()));
    }
    Ok(Pow::pow(&BigUint::from(l), n * n))
}

fn check_l(l: u64) -> Result<()> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    Ok(())
}

fn check_positive(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("matrix size must be positive".into()));
    }
    Ok(())
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).fold(BigUint::one(), |acc, k| acc * k)
}

/// The bound `3^(484 + 484 + 36) * 8!` for the Shioda-Inose case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeBound {
    /// Exponent of 3: two rank-22 torsion bounds and one rank-6 bound.
    pub exponent: u32,
    /// Permutations of the eight exceptional curves.
    pub permutations: BigUint,
    pub value: BigUint,
    /// Power of ten compared against.
    pub decimal_exponent: u32,
    pub within_decimal_bound: bool,
}

pub fn si_composite_bound() -> CompositeBound {
    let exponent = 22 * 22 + 22 * 22 + 6 * 6;
    let permutations = factorial(8);
    let value = Pow::pow(&BigUint::from(3u32), exponent) * &permutations;
    let decimal_exponent = 484;
    let within_decimal_bound = value <= Pow::pow(&BigUint::from(10u32), decimal_exponent);
    CompositeBound {
        exponent,
        permutations,
        value,
        decimal_exponent,
        within_decimal_bound,
    }
}
