use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{
    check_prime, format_rational, is_quadratic_residue, pow_p, split_valuation, sqrt_exact, valuation, Rational,
};
use crate::error::{Error, Result};

use super::{padic_sqrt, PadicNumber, DEFAULT_PRECISION};

/// How `K(sqrt(x))` sits over `K = Q_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SqrtClass {
    Square,
    UnramifiedQuadratic,
    RamifiedQuadratic,
}

impl SqrtClass {
    pub fn descriptor(self) -> ExtensionDescriptor {
        match self {
            SqrtClass::Square => ExtensionDescriptor::trivial(),
            SqrtClass::UnramifiedQuadratic => ExtensionDescriptor {
                e: 1,
                f: 2,
                kind: GeneratorKind::UnramifiedQuadratic,
            },
            SqrtClass::RamifiedQuadratic => ExtensionDescriptor {
                e: 2,
                f: 1,
                kind: GeneratorKind::RamifiedQuadratic,
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SqrtClass::Square => "square",
            SqrtClass::UnramifiedQuadratic => "unramified-quadratic",
            SqrtClass::RamifiedQuadratic => "ramified-quadratic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Trivial,
    UnramifiedQuadratic,
    RamifiedQuadratic,
    /// Some tame extension of which only the ramification index is tracked.
    AbstractTame(u32),
}

/// Ramification index and residue degree of a finite extension of `Q_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionDescriptor {
    pub e: u32,
    pub f: u32,
    pub kind: GeneratorKind,
}

impl ExtensionDescriptor {
    pub fn trivial() -> Self {
        ExtensionDescriptor {
            e: 1,
            f: 1,
            kind: GeneratorKind::Trivial,
        }
    }

    pub fn abstract_tame(e: u32) -> Self {
        ExtensionDescriptor {
            e,
            f: 1,
            kind: if e == 1 {
                GeneratorKind::Trivial
            } else {
                GeneratorKind::AbstractTame(e)
            },
        }
    }

    pub fn degree(&self) -> u32 {
        self.e * self.f
    }

    /// Descriptor of `L/K` for `L/M` (self) over `M/K` (base).
    pub fn over(&self, base: &ExtensionDescriptor) -> ExtensionDescriptor {
        let (e, f) = (self.e * base.e, self.f * base.f);
        let kind = match (self.kind, base.kind) {
            (GeneratorKind::Trivial, k) | (k, GeneratorKind::Trivial) => k,
            _ => GeneratorKind::AbstractTame(e),
        };
        ExtensionDescriptor { e, f, kind }
    }
}

/// Class of `sqrt(x)` over `Q_p`, `p` odd.
pub fn sqrt_class(x: &PadicNumber) -> Result<(SqrtClass, ExtensionDescriptor)> {
    let v = x
        .valuation()?
        .ok_or_else(|| Error::InvalidInput("square class of zero".into()))?;
    let class = if v % 2 != 0 {
        SqrtClass::RamifiedQuadratic
    } else if is_quadratic_residue(x.unit_part().expect("nonzero"), x.prime()) {
        SqrtClass::Square
    } else {
        SqrtClass::UnramifiedQuadratic
    };
    Ok((class, class.descriptor()))
}

pub fn sqrt_class_rational(x: &Rational, p: u64) -> Result<SqrtClass> {
    let (v, u) = split_valuation(x, p).ok_or_else(|| Error::InvalidInput("square class of zero".into()))?;
    if v % 2 != 0 {
        return Ok(SqrtClass::RamifiedQuadratic);
    }
    let m = BigInt::from(p);
    let unit = crate::arith::reduce_mod(&u, &m).expect("p-unit");
    Ok(if is_quadratic_residue(&unit, p) {
        SqrtClass::Square
    } else {
        SqrtClass::UnramifiedQuadratic
    })
}

/// `re + im * sqrt(d)` for the radicand `d` of the ambient [`LocalField`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElem {
    pub re: Rational,
    pub im: Rational,
}

impl FieldElem {
    pub fn new(re: Rational, im: Rational) -> Self {
        FieldElem { re, im }
    }

    pub fn rational(re: Rational) -> Self {
        FieldElem {
            re,
            im: Rational::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.re)
    }

    pub fn conj(&self) -> Self {
        FieldElem {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FieldElem {
            re: &self.re * c,
            im: &self.im * c,
        }
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "({})*sqrt_d", format_rational(&self.im))
        } else {
            write!(
                f,
                "{} + ({})*sqrt_d",
                format_rational(&self.re),
                format_rational(&self.im)
            )
        }
    }
}

/// `Q_p` or `Q_p(sqrt(d))` for a rational `d` that is not a rational square.
///
/// Elements are exact members of `Q(sqrt(d))`; valuations are normalized so
/// that a uniformizer of the local field has valuation 1. When `d` is a
/// square in `Q_p` the field is `Q_p` itself and valuations are read off a
/// p-adic embedding of `sqrt(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalField {
    prime: u64,
    radicand: Option<Rational>,
    class: SqrtClass,
    embedding: Option<PadicNumber>,
    precision: u32,
}

impl LocalField {
    pub fn rational(prime: u64) -> Result<Self> {
        check_prime(prime)?;
        Ok(LocalField {
            prime,
            radicand: None,
            class: SqrtClass::Square,
            embedding: None,
            precision: DEFAULT_PRECISION,
        })
    }

    /// The field generated by a square root `beta` of `d` over `Q_p`,
    /// returned together with `beta`.
    pub fn adjoin_sqrt(prime: u64, d: &Rational, precision: u32) -> Result<(Self, FieldElem)> {
        check_prime(prime)?;
        if d.is_zero() {
            return Err(Error::InvalidInput("square root of zero adjoined".into()));
        }
        if let Some(r) = sqrt_exact(d) {
            let mut field = Self::rational(prime)?;
            field.precision = precision;
            return Ok((field, FieldElem::rational(r)));
        }
        let class = sqrt_class_rational(d, prime)?;
        let embedding = if class == SqrtClass::Square {
            let x = PadicNumber::from_rational(d, prime, precision)?;
            Some(padic_sqrt(&x, precision)?.expect("square class"))
        } else {
            None
        };
        let field = LocalField {
            prime,
            radicand: Some(d.clone()),
            class,
            embedding,
            precision,
        };
        Ok((field, FieldElem::new(Rational::zero(), Rational::one())))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn radicand(&self) -> Option<&Rational> {
        self.radicand.as_ref()
    }

    pub fn class(&self) -> SqrtClass {
        self.class
    }

    /// The extension this field makes over `Q_p`.
    pub fn descriptor(&self) -> ExtensionDescriptor {
        self.class.descriptor()
    }

    /// Ramification index over `Q_p`.
    pub fn e(&self) -> u32 {
        self.descriptor().e
    }

    pub fn is_base(&self) -> bool {
        self.radicand.is_none()
    }

    fn d(&self) -> Rational {
        self.radicand.clone().unwrap_or_else(Rational::zero)
    }

    pub fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let d = self.d();
        FieldElem {
            re: &x.re * &y.re + &x.im * &y.im * d,
            im: &x.re * &y.im + &x.im * &y.re,
        }
    }

    pub fn norm(&self, x: &FieldElem) -> Rational {
        &x.re * &x.re - &x.im * &x.im * self.d()
    }

    pub fn inv(&self, x: &FieldElem) -> Result<FieldElem> {
        let n = self.norm(x);
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(x.conj().scale(&(Rational::one() / n)))
    }

    pub fn div(&self, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &FieldElem, k: u32) -> FieldElem {
        (0..k).fold(FieldElem::one(), |acc, _| self.mul(&acc, x))
    }

    /// `x^k` for any integer `k`.
    pub fn powi(&self, x: &FieldElem, k: i64) -> Result<FieldElem> {
        let y = self.pow(x, k.unsigned_abs() as u32);
        if k >= 0 {
            Ok(y)
        } else {
            self.inv(&y)
        }
    }

    /// An element of valuation one.
    pub fn uniformizer(&self) -> FieldElem {
        match (self.class, &self.radicand) {
            (SqrtClass::RamifiedQuadratic, Some(d)) => {
                let k = (valuation(d, self.prime).unwrap() - 1) / 2;
                FieldElem::new(Rational::zero(), pow_p(self.prime, -k))
            }
            _ => FieldElem::rational(pow_p(self.prime, 1)),
        }
    }

    /// Normalized valuation; `None` for zero.
    pub fn valuation(&self, x: &FieldElem) -> Result<Option<i64>> {
        if x.is_zero() {
            return Ok(None);
        }
        let p = self.prime;
        if x.im.is_zero() {
            return Ok(valuation(&x.re, p).map(|v| v * self.e() as i64));
        }
        let n = valuation(&self.norm(x), p).expect("norm of nonzero element");
        match self.class {
            SqrtClass::RamifiedQuadratic => Ok(Some(n)),
            SqrtClass::UnramifiedQuadratic => {
                debug_assert!(n % 2 == 0);
                Ok(Some(n / 2))
            }
            SqrtClass::Square => self.split_valuation(x, n).map(Some),
        }
    }

    /// `v(re + im*beta)` with `beta` in `Q_p`. The conjugates `x` and `x'`
    /// differ by `2*im*beta`, of valuation `m`; either both have valuation
    /// `v(N)/2`, or one of them has valuation exactly `m` and the other
    /// `v(N) - m`. Only the last case needs the embedding.
    fn split_valuation(&self, x: &FieldElem, norm_val: i64) -> Result<i64> {
        let p = self.prime;
        let beta = self.embedding.as_ref().expect("split field has an embedding");
        if x.re.is_zero() {
            return Ok(valuation(&x.im, p).unwrap() + beta.valuation()?.unwrap());
        }
        let m = valuation(&x.im, p).unwrap() + beta.valuation()?.unwrap();
        if norm_val <= 2 * m {
            debug_assert!(norm_val % 2 == 0);
            return Ok(norm_val / 2);
        }
        let re = PadicNumber::from_rational(&x.re, p, self.precision)?;
        let im = PadicNumber::from_rational(&x.im, p, self.precision)?;
        let z = re.add(&im.mul(beta)?)?;
        match z.valuation() {
            Ok(Some(v)) if v == m => Ok(m),
            Ok(Some(v)) if v > m => Ok(norm_val - m),
            Ok(_) => Err(Error::Inconsistent("conjugate valuations disagree".into())),
            Err(_) if z.valuation_at_least().unwrap() > m => Ok(norm_val - m),
            Err(e) => Err(e),
        }
    }

    /// Valuation measured in units of `v_p` (i.e. divided by `e`).
    pub fn valuation_over_qp(&self, x: &FieldElem) -> Result<Option<Rational>> {
        Ok(self
            .valuation(x)?
            .map(|v| Rational::new(v.into(), (self.e() as i64).into())))
    }

    pub fn same_field(&self, other: &LocalField) -> bool {
        self.prime == other.prime && self.radicand == other.radicand
    }
}
