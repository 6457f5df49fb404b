//! p-adic numbers, Newton polygons, Hensel lifting and the local fields
//! `Q_p`, `Q_p(sqrt(d))` used by the rest of the crate.

mod cubic;
mod field;
mod hensel;
mod newton;
mod number;

pub use cubic::{cubic_ramification, rational_cubic, splitting_ramification_cubic, CubicRamification};
pub use field::{
    sqrt_class, sqrt_class_rational, ExtensionDescriptor, FieldElem, GeneratorKind, LocalField, SqrtClass,
};
pub use hensel::{hensel_root, padic_sqrt, sqrt_mod_p};
pub use newton::{newton_polygon, NewtonPolygon, Slope};
pub use number::{padic_arith, ArithOp, PadicNumber, MIN_PRECISION};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 64;
pub const DEFAULT_MAX_PRECISION: u32 = 1024;

/// Retry driver: runs a computation at increasing precision until it stops
/// reporting precision exhaustion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub initial: u32,
    pub max: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            initial: DEFAULT_PRECISION,
            max: DEFAULT_MAX_PRECISION,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(initial: u32, max: u32) -> Result<Self> {
        if initial < MIN_PRECISION || max < initial {
            return Err(Error::InvalidInput(format!(
                "precision policy needs {MIN_PRECISION} <= initial <= max, got {initial}..{max}"
            )));
        }
        Ok(PrecisionPolicy { initial, max })
    }

    /// Runs `f(precision)`, doubling the precision after each
    /// precision-exhausted error. Returns the value and the precision used.
    pub fn run<T>(&self, mut f: impl FnMut(u32) -> Result<T>) -> Result<(T, u32)> {
        let mut precision = self.initial;
        loop {
            match f(precision) {
                Err(e) if e.is_precision() && precision < self.max => {
                    precision = precision.saturating_mul(2).min(self.max);
                }
                Err(Error::PrecisionExhausted(msg)) => {
                    return Err(Error::PrecisionExhausted(format!(
                        "{msg}; gave up at {precision} digits"
                    )))
                }
                other => return other.map(|v| (v, precision)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_doubles_until_success() {
        let policy = PrecisionPolicy::default();
        let mut seen = Vec::new();
        let (v, used) = policy
            .run(|prec| {
                seen.push(prec);
                if prec < 256 {
                    Err(Error::PrecisionExhausted("short".into()))
                } else {
                    Ok(prec * 2)
                }
            })
            .unwrap();
        assert_eq!(seen, vec![64, 128, 256]);
        assert_eq!((v, used), (512, 256));
    }

    #[test]
    fn policy_gives_up_at_the_cap() {
        let policy = PrecisionPolicy::new(8, 32).unwrap();
        let mut calls = 0;
        let r: Result<((), u32)> = policy.run(|_| {
            calls += 1;
            Err(Error::PrecisionExhausted("never".into()))
        });
        assert!(r.unwrap_err().is_precision());
        assert_eq!(calls, 3);
        assert!(PrecisionPolicy::new(4, 32).is_err());
    }

    #[test]
    fn policy_passes_other_errors_through() {
        let r: Result<((), u32)> = PrecisionPolicy::default().run(|_| Err(Error::DivisionByZero));
        assert_eq!(r.unwrap_err(), Error::DivisionByZero);
    }
}
