use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{check_prime, int_valuation, mod_inverse, pow_p, split_valuation, Rational};
use crate::error::{Error, Result};

/// Arithmetic refuses to produce a nonzero element with fewer significant
/// digits than this.
pub const MIN_PRECISION: u32 = 8;

/// An element of `Q_p` known to a bounded number of significant digits.
///
/// Nonzero elements are stored as `p^valuation * unit` with `unit` a
/// representative modulo `p^precision`, coprime to `p`. Exact zero is kept
/// apart from values that merely vanish to the working precision.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicNumber {
    prime: u64,
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Zero,
    /// Congruent to zero modulo `p^above`, nothing more is known.
    Vanishing {
        above: i64,
    },
    Unit {
        valuation: i64,
        unit: BigInt,
        precision: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn padic_arith(x: &PadicNumber, y: &PadicNumber, op: ArithOp) -> Result<PadicNumber> {
    match op {
        ArithOp::Add => x.add(y),
        ArithOp::Sub => x.sub(y),
        ArithOp::Mul => x.mul(y),
        ArithOp::Div => x.div(y),
    }
}

fn modulus(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

impl PadicNumber {
    pub fn zero(prime: u64) -> Self {
        PadicNumber {
            prime,
            repr: Repr::Zero,
        }
    }

    /// Builds `p^valuation * unit + O(p^(valuation + precision))`, normalizing
    /// any factors of `p` hidden in `unit`.
    pub fn from_parts(prime: u64, valuation: i64, unit: BigInt, precision: u32) -> Result<Self> {
        check_prime(prime)?;
        Ok(Self::normalized(prime, valuation, unit, precision))
    }

    fn normalized(prime: u64, valuation: i64, unit: BigInt, precision: u32) -> Self {
        let m = modulus(prime, precision);
        let unit = unit.mod_floor(&m);
        if unit.is_zero() {
            return PadicNumber {
                prime,
                repr: Repr::Vanishing {
                    above: valuation + precision as i64,
                },
            };
        }
        let k = int_valuation(&unit, prime) as u32;
        let unit = unit / modulus(prime, k);
        PadicNumber {
            prime,
            repr: Repr::Unit {
                valuation: valuation + k as i64,
                unit,
                precision: precision - k,
            },
        }
    }

    pub fn from_rational(x: &Rational, prime: u64, precision: u32) -> Result<Self> {
        check_prime(prime)?;
        let Some((v, u)) = split_valuation(x, prime) else {
            return Ok(Self::zero(prime));
        };
        let m = modulus(prime, precision);
        let inv = mod_inverse(u.denom(), &m).expect("denominator is a p-unit");
        let unit = (u.numer() * inv).mod_floor(&m);
        Ok(PadicNumber {
            prime,
            repr: Repr::Unit {
                valuation: v,
                unit,
                precision,
            },
        })
    }

    pub fn from_int(n: i64, prime: u64, precision: u32) -> Result<Self> {
        Self::from_rational(&Rational::from_integer(n.into()), prime, precision)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    /// `Ok(None)` for exact zero; an error when the value vanishes to the
    /// available precision and its valuation is therefore unknown.
    pub fn valuation(&self) -> Result<Option<i64>> {
        match &self.repr {
            Repr::Zero => Ok(None),
            Repr::Vanishing { above } => Err(Error::PrecisionExhausted(format!(
                "value vanishes modulo {}^{above}",
                self.prime
            ))),
            Repr::Unit { valuation, .. } => Ok(Some(*valuation)),
        }
    }

    /// A lower bound for the valuation that is always available.
    pub fn valuation_at_least(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Vanishing { above } => Some(*above),
            Repr::Unit { valuation, .. } => Some(*valuation),
        }
    }

    pub fn unit_part(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Unit { unit, .. } => Some(unit),
            _ => None,
        }
    }

    /// Number of significant digits, `None` for exact zero or vanishing values.
    pub fn precision(&self) -> Option<u32> {
        match &self.repr {
            Repr::Unit { precision, .. } => Some(*precision),
            _ => None,
        }
    }

    /// The exponent `k` of the error term `O(p^k)`; `None` for exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Vanishing { above } => Some(*above),
            Repr::Unit {
                valuation, precision, ..
            } => Some(valuation + *precision as i64),
        }
    }

    /// The stored representative as an exact rational (zero when vanishing).
    pub fn to_rational(&self) -> Rational {
        match &self.repr {
            Repr::Unit { valuation, unit, .. } => Rational::from_integer(unit.clone()) * pow_p(self.prime, *valuation),
            _ => Rational::zero(),
        }
    }

    /// Residue class modulo `p^k` of an integral element.
    pub fn residue(&self, k: u32) -> Result<BigInt> {
        let m = modulus(self.prime, k);
        match &self.repr {
            Repr::Zero => Ok(BigInt::zero()),
            Repr::Vanishing { above } if *above >= k as i64 => Ok(BigInt::zero()),
            Repr::Unit {
                valuation,
                unit,
                precision,
            } if *valuation >= 0 && valuation + *precision as i64 >= k as i64 => {
                Ok((unit * modulus(self.prime, *valuation as u32)).mod_floor(&m))
            }
            Repr::Unit { valuation, .. } if *valuation < 0 => {
                Err(Error::InvalidInput("residue of a non-integral p-adic number".into()))
            }
            _ => Err(Error::PrecisionExhausted(format!("need {k} digits for a residue"))),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn floor(x: Self) -> Result<Self> {
        match &x.repr {
            Repr::Unit { precision, .. } if *precision < MIN_PRECISION => Err(Error::PrecisionExhausted(format!(
                "only {precision} significant digits left (floor {MIN_PRECISION})"
            ))),
            _ => Ok(x),
        }
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => Self::normalized(self.prime, *valuation, -unit, *precision),
            _ => self.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.prime;
        let abs = match (self.absolute_precision(), other.absolute_precision()) {
            (None, None) => return Ok(Self::zero(p)),
            (None, Some(_)) => return Ok(other.clone()),
            (Some(_), None) => return Ok(self.clone()),
            (Some(a), Some(b)) => a.min(b),
        };
        let units: Vec<(i64, &BigInt)> = [self, other]
            .iter()
            .filter_map(|x| match &x.repr {
                Repr::Unit { valuation, unit, .. } => Some((*valuation, unit)),
                _ => None,
            })
            .collect();
        let Some(low) = units.iter().map(|(v, _)| *v).min() else {
            return Ok(PadicNumber {
                prime: p,
                repr: Repr::Vanishing { above: abs },
            });
        };
        if abs <= low {
            return Ok(PadicNumber {
                prime: p,
                repr: Repr::Vanishing { above: abs },
            });
        }
        let digits = (abs - low) as u32;
        let m = modulus(p, digits);
        let mut sum = BigInt::zero();
        for (v, u) in units {
            sum += u * modulus(p, (v - low) as u32);
        }
        Self::floor(Self::normalized(p, low, sum.mod_floor(&m), digits))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.prime;
        let out = match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Self::zero(p),
            (Repr::Vanishing { above }, x) | (x, Repr::Vanishing { above }) => {
                let shift = match x {
                    Repr::Vanishing { above } => *above,
                    Repr::Unit { valuation, .. } => *valuation,
                    Repr::Zero => unreachable!(),
                };
                PadicNumber {
                    prime: p,
                    repr: Repr::Vanishing { above: above + shift },
                }
            }
            (
                Repr::Unit {
                    valuation: v1,
                    unit: u1,
                    precision: n1,
                },
                Repr::Unit {
                    valuation: v2,
                    unit: u2,
                    precision: n2,
                },
            ) => {
                let n = *n1.min(n2);
                Self::normalized(p, v1 + v2, u1 * u2, n)
            }
        };
        Self::floor(out)
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Zero => Err(Error::DivisionByZero),
            Repr::Vanishing { .. } => Err(Error::PrecisionExhausted(
                "inverting a value that vanishes to working precision".into(),
            )),
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => {
                let m = modulus(self.prime, *precision);
                let inv = mod_inverse(unit, &m).expect("unit is invertible");
                Ok(Self::normalized(self.prime, -valuation, inv, *precision))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.mul(&other.inv()?)
    }

    /// Same value with the precision capped at `n` significant digits.
    pub fn truncate(&self, n: u32) -> Self {
        match &self.repr {
            Repr::Unit {
                valuation,
                unit,
                precision,
            } if *precision > n => Self::normalized(self.prime, *valuation, unit.clone(), n),
            _ => self.clone(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.repr, Repr::Unit { valuation: 0, unit, .. } if unit.is_one())
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        match &self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::Vanishing { above } => write!(f, "O({p}^{above})"),
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => write!(f, "{p}^{valuation} * {unit} + O({p}^{})", valuation + *precision as i64),
        }
    }
}
