//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{format_rational, Rational};

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::arith::rat(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Order of vanishing at `t = 0`; `None` for zero.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(RatPoly::one(), |acc, _| &acc * self)
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// `t^n f(1/t)` for `n >= deg f`.
    pub fn reverse(&self, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            assert!(k <= n, "reverse: degree exceeds weight");
            coeffs[n - k] = c.clone();
        }
        Self::new(coeffs)
    }

    /// `f(g(t))`.
    pub fn compose(&self, g: &RatPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(RatPoly::zero(), |acc, c| &(&acc * g) + &RatPoly::constant(c.clone()))
    }

    /// `(gamma t + delta)^n f((alpha t + beta) / (gamma t + delta))` for `n >= deg f`.
    pub fn mobius(&self, n: usize, m: [&Rational; 4]) -> Self {
        let [alpha, beta, gamma, delta] = m;
        let num = RatPoly::new(vec![beta.clone(), alpha.clone()]);
        let den = RatPoly::new(vec![delta.clone(), gamma.clone()]);
        let mut acc = RatPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            assert!(k <= n, "mobius: degree exceeds weight");
            let term = &num.pow(k as u32) * &den.pow((n - k) as u32);
            acc = &acc + &term.scale(c);
        }
        acc
    }

    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = Rational::one() / d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (RatPoly::new(q), RatPoly::new(r))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Largest `k` with `q^k | self`; `None` when `self` is zero.
    pub fn order_at(&self, q: &RatPoly) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        assert!(q.degree().unwrap_or(0) > 0, "order_at: constant factor");
        let mut k = 0;
        let mut f = self.clone();
        while let Some(next) = f.exact_div(q) {
            f = next;
            k += 1;
        }
        Some(k)
    }

    pub fn squarefree_part(&self) -> RatPoly {
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).unwrap().monic()
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})t", format_rational(c))?,
                _ => write!(f, "({})t^{k}", format_rational(c))?,
            }
        }
        Ok(())
    }
}

/// Refines a family of nonzero polynomials into pairwise coprime, squarefree,
/// monic factors such that every input is a constant times a product of
/// powers of the factors.
pub fn coprime_base(inputs: &[&RatPoly]) -> Vec<RatPoly> {
    let mut basis: Vec<RatPoly> = Vec::new();
    for f in inputs {
        if !f.is_zero() {
            refine_into(&mut basis, (*f).clone());
        }
    }
    basis
}

fn refine_into(basis: &mut Vec<RatPoly>, f: RatPoly) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let f = f.monic();
    let sq = f.gcd(&f.derivative());
    if sq.degree().unwrap() > 0 {
        let rest = f.exact_div(&sq).unwrap();
        refine_into(basis, sq);
        refine_into(basis, rest);
        return;
    }
    for i in 0..basis.len() {
        let g = f.gcd(&basis[i]);
        if g.degree().unwrap() == 0 {
            continue;
        }
        if g == basis[i] && g == f {
            return;
        }
        let old = basis.swap_remove(i);
        let old_rest = old.exact_div(&g).unwrap();
        let f_rest = f.exact_div(&g).unwrap();
        refine_into(basis, g);
        refine_into(basis, old_rest);
        refine_into(basis, f_rest);
        return;
    }
    basis.push(f);
}
