use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{int_valuation, is_quadratic_residue, mod_inverse};
use crate::error::{Error, Result};

use super::PadicNumber;

fn eval(g: &[PadicNumber], x: &PadicNumber) -> Result<PadicNumber> {
    let p = x.prime();
    g.iter()
        .rev()
        .try_fold(PadicNumber::zero(p), |acc, c| acc.mul(x)?.add(c))
}

fn derivative(g: &[PadicNumber]) -> Result<Vec<PadicNumber>> {
    g.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| {
            let prec = c.precision().unwrap_or(super::DEFAULT_PRECISION);
            c.mul(&PadicNumber::from_int(k as i64, c.prime(), prec)?)
        })
        .collect()
}

fn eval_mod(g: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Lifts an approximate root of `g` (coefficients constant term first, all
/// in `Z_p`) to a root known to `precision` significant digits.
///
/// Requires the classical criterion `v(g(a)) > 2 v(g'(a))`; the returned
/// root is the unique root in the disk `v(x - a) > v(g'(a))`.
pub fn hensel_root(g: &[PadicNumber], approx: &PadicNumber, precision: u32) -> Result<PadicNumber> {
    let p = approx.prime();
    if g.iter().any(|c| c.prime() != p) {
        return Err(Error::FieldMismatch);
    }
    if g.iter().any(|c| c.valuation_at_least().is_some_and(|v| v < 0))
        || approx.valuation_at_least().is_some_and(|v| v < 0)
    {
        return Err(Error::InvalidInput(
            "Hensel lifting needs integral coefficients and an integral approximation".into(),
        ));
    }
    let value = eval(g, approx)?;
    if value.is_exact_zero() {
        return Ok(approx.clone());
    }
    let dg = derivative(g)?;
    let slope = eval(&dg, approx)?;
    let vd = slope.valuation()?.ok_or(Error::HenselCriterion {
        value: value.valuation_at_least().unwrap_or(i64::MAX),
        derivative: i64::MAX,
    })?;
    let vg = value.valuation_at_least().expect("nonzero value");
    if vg <= 2 * vd {
        return Err(Error::HenselCriterion {
            value: vg,
            derivative: vd,
        });
    }

    let va = approx.valuation_at_least().unwrap_or(0).max(0);
    let want = precision as i64 + vd + va + 1;
    let available = g
        .iter()
        .chain(std::iter::once(approx))
        .filter_map(PadicNumber::absolute_precision)
        .min()
        .unwrap_or(want);
    let digits = want.min(available);
    if digits - vd - va < super::MIN_PRECISION as i64 {
        return Err(Error::PrecisionExhausted(format!(
            "inputs carry only {available} absolute digits"
        )));
    }
    let digits = digits as u32;
    let vd = vd as u32;
    let m = BigInt::from(p).pow(digits);
    let pvd = BigInt::from(p).pow(vd);
    let coeffs = g.iter().map(|c| c.residue(digits)).collect::<Result<Vec<_>>>()?;
    let dcoeffs: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    let lifted_mod = BigInt::from(p).pow(digits - vd);
    let mut r = approx.residue(digits)?;
    let mut converged = false;
    for _ in 0..(2 * digits + 8) {
        let gr = eval_mod(&coeffs, &r, &m);
        if gr.is_zero() {
            converged = true;
            break;
        }
        let dr = eval_mod(&dcoeffs, &r, &m);
        if dr.is_zero() || int_valuation(&dr, p) != vd as u64 {
            return Err(Error::Inconsistent(
                "derivative valuation changed inside the Hensel disk".into(),
            ));
        }
        let unit = (&dr / &pvd).mod_floor(&lifted_mod);
        let inv = mod_inverse(&unit, &lifted_mod).expect("unit");
        let step = ((&gr / &pvd) * inv).mod_floor(&lifted_mod);
        r = (&r - step).mod_floor(&lifted_mod);
    }
    if !converged {
        return Err(Error::Inconsistent("Newton iteration did not converge".into()));
    }
    let root = PadicNumber::from_parts(p, 0, r, digits - vd)?;
    Ok(match root.precision() {
        Some(n) if n > precision => root.truncate(precision),
        _ => root,
    })
}

/// A square root of `u` modulo the odd prime `p` (Tonelli-Shanks).
pub fn sqrt_mod_p(u: &BigInt, p: u64) -> Option<BigInt> {
    let pb = BigInt::from(p);
    let u = u.mod_floor(&pb);
    if u.is_zero() {
        return Some(u);
    }
    if !is_quadratic_residue(&u, p) {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .map(BigInt::from)
        .find(|z| !is_quadratic_residue(z, p))
        .expect("nonresidue exists");
    let mut m = s;
    let mut c = z.modpow(&BigInt::from(q), &pb);
    let mut t = u.modpow(&BigInt::from(q), &pb);
    let mut r = u.modpow(&BigInt::from(q.div_ceil(2)), &pb);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2).mod_floor(&pb);
            i += 1;
        }
        let b = c.modpow(&BigInt::from(1u64 << (m - i - 1)), &pb);
        m = i;
        c = (&b * &b).mod_floor(&pb);
        t = (t * &c).mod_floor(&pb);
        r = (r * b).mod_floor(&pb);
    }
    // Canonical choice: the smaller of the two square roots.
    let other = (&pb - &r).mod_floor(&pb);
    Some(r.min(other))
}

/// Square root in `Q_p` when `x` is a square, `None` otherwise.
pub fn padic_sqrt(x: &PadicNumber, precision: u32) -> Result<Option<PadicNumber>> {
    let p = x.prime();
    let Some(v) = x.valuation()? else {
        return Ok(Some(x.clone()));
    };
    if v % 2 != 0 {
        return Ok(None);
    }
    let unit = x.unit_part().expect("nonzero").clone();
    let Some(r0) = sqrt_mod_p(&unit, p) else {
        return Ok(None);
    };
    let unit_prec = x.precision().expect("nonzero");
    let u = PadicNumber::from_parts(p, 0, unit, unit_prec)?;
    let poly = [u.neg(), PadicNumber::zero(p), PadicNumber::from_int(1, p, unit_prec)?];
    let approx = PadicNumber::from_parts(p, 0, r0, unit_prec)?;
    let root = hensel_root(&poly, &approx, precision.min(unit_prec))?;
    let scale = PadicNumber::from_parts(p, v / 2, BigInt::one(), unit_prec)?;
    root.mul(&scale).map(Some)
}
