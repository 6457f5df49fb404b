//! Exact rational helpers shared by every module: p-adic valuations of
//! rationals, square tests, primality and parsing.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `v_p(x)`, `None` for zero.
pub fn valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64)
}

/// Strip all factors of `p`: returns `(v, x / p^v)`.
pub fn split_valuation(x: &Rational, p: u64) -> Option<(i64, Rational)> {
    let v = valuation(x, p)?;
    Some((v, x / pow_p(p, v)))
}

/// `p^k` as a rational, `k` may be negative.
pub fn pow_p(p: u64, k: i64) -> Rational {
    let base = BigInt::from(p).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

pub fn is_square_int(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

pub fn is_square(x: &Rational) -> bool {
    !x.is_negative() && is_square_int(x.numer()) && is_square_int(x.denom())
}

/// Rational square root when one exists.
pub fn sqrt_exact(x: &Rational) -> Option<Rational> {
    if !is_square(x) {
        return None;
    }
    Some(Rational::new(x.numer().sqrt(), x.denom().sqrt()))
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Validates a residue characteristic: prime and at least 5.
pub fn check_prime(p: u64) -> Result<()> {
    if p == 2 || p == 3 {
        return Err(Error::UnsupportedPrime(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Reduction of a `p`-integral rational modulo `m`.
pub fn reduce_mod(x: &Rational, m: &BigInt) -> Option<BigInt> {
    let den = x.denom().mod_floor(m);
    let inv = mod_inverse(&den, m)?;
    Some((x.numer().mod_floor(m) * inv).mod_floor(m))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Legendre symbol of a unit modulo the odd prime `p`: `true` for a residue.
pub fn is_quadratic_residue(unit: &BigInt, p: u64) -> bool {
    let pb = BigInt::from(p);
    let u = unit.mod_floor(&pb);
    debug_assert!(!u.is_zero());
    u.modpow(&BigInt::from((p - 1) / 2), &pb).is_one()
}

/// Parses `"17"`, `"-3/4"` or `"0.125"` into an exact rational. Exponent
/// notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not an exact rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) || !int_digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = BigInt::from(10u32).pow(frac.len() as u32);
        let q = Rational::new(n, d);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Canonical string form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

pub fn sign(x: &Rational) -> Sign {
    x.numer().sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_of_rationals() {
        assert_eq!(valuation(&ratio(1, 5), 5), Some(-1));
        assert_eq!(valuation(&ratio(50, 3), 5), Some(2));
        assert_eq!(valuation(&rat(0), 5), None);
        assert_eq!(valuation(&rat(-496), 5), Some(0));
    }

    #[test]
    fn parses_all_number_forms() {
        assert_eq!(parse_rational("12").unwrap(), rat(12));
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational("-2.5").unwrap(), ratio(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(check_prime(3).unwrap_err().is_out_of_scope());
        assert!(matches!(check_prime(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn squares() {
        assert!(is_square(&ratio(9, 4)));
        assert!(!is_square(&ratio(-9, 4)));
        assert!(!is_square(&rat(2)));
        assert_eq!(sqrt_exact(&ratio(49, 25)), Some(ratio(7, 5)));
    }
}
