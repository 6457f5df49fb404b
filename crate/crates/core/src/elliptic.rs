//! Short Weierstrass curves over `Q_p` and its quadratic extensions.

use std::fmt;

use num_integer::Integer;

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use crate::kodaira::{classify_from_invariants, KodairaType, LocalInvariants};
use crate::padic::{rational_cubic, splitting_ramification_cubic, ExtensionDescriptor, FieldElem, LocalField};

/// `y^2 = x^3 + a x + b` with nonzero discriminant.
#[derive(Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    field: LocalField,
    a: FieldElem,
    b: FieldElem,
}

impl WeierstrassCurve {
    pub fn new(field: &LocalField, a: FieldElem, b: FieldElem) -> Result<Self> {
        let curve = WeierstrassCurve {
            field: field.clone(),
            a,
            b,
        };
        if curve.discriminant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(curve)
    }

    /// A curve with rational coefficients over `Q_p`.
    pub fn over_qp(p: u64, a: Rational, b: Rational) -> Result<Self> {
        Self::new(
            &LocalField::rational(p)?,
            FieldElem::rational(a),
            FieldElem::rational(b),
        )
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn base(&self) -> ExtensionDescriptor {
        self.field.descriptor()
    }

    pub fn a(&self) -> &FieldElem {
        &self.a
    }

    pub fn b(&self) -> &FieldElem {
        &self.b
    }

    pub fn c4(&self) -> FieldElem {
        self.a.scale(&rat(-48))
    }

    pub fn c6(&self) -> FieldElem {
        self.b.scale(&rat(-864))
    }

    pub fn discriminant(&self) -> FieldElem {
        discriminant(&self.field, &self.a, &self.b)
    }

    pub fn j_invariant(&self) -> FieldElem {
        let k = &self.field;
        let a3 = k.pow(&self.a, 3);
        let num = a3.scale(&rat(6912));
        let den = &a3.scale(&rat(4)) + &k.mul(&self.b, &self.b).scale(&rat(27));
        k.div(&num, &den).expect("smooth curve")
    }
}

impl fmt::Debug for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 = x^3 + ({})x + ({}) over p = {}",
            self.a,
            self.b,
            self.field.prime()
        )
    }
}

/// `-16 (4 a^3 + 27 b^2)`.
pub fn discriminant(field: &LocalField, a: &FieldElem, b: &FieldElem) -> FieldElem {
    let s = &field.pow(a, 3).scale(&rat(4)) + &field.mul(b, b).scale(&rat(27));
    s.scale(&rat(-16))
}

/// The singular cubic `y^2 = x^3 + a x + b` (zero discriminant): a node
/// when `a != 0`, a cusp when `a = b = 0`. On the surfaces handled here these
/// are the smooth parts of fibers of type I2 and IV respectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularFiber {
    field: LocalField,
    a: FieldElem,
    b: FieldElem,
    kind: KodairaType,
}

impl SingularFiber {
    pub fn new(field: &LocalField, a: FieldElem, b: FieldElem) -> Result<Self> {
        if !discriminant(field, &a, &b).is_zero() {
            return Err(Error::InvalidInput("cubic is smooth".into()));
        }
        let kind = if a.is_zero() {
            KodairaType::IV
        } else {
            KodairaType::I(2)
        };
        Ok(SingularFiber {
            field: field.clone(),
            a,
            b,
            kind,
        })
    }

    pub fn kind(&self) -> KodairaType {
        self.kind
    }

    pub fn a(&self) -> &FieldElem {
        &self.a
    }

    pub fn b(&self) -> &FieldElem {
        &self.b
    }

    /// The repeated root of the cubic.
    pub fn singular_x(&self) -> FieldElem {
        if self.a.is_zero() {
            return FieldElem::zero();
        }
        // Double root -3b / (2a) of x^3 + a x + b.
        let k = &self.field;
        k.div(&self.b.scale(&rat(-3)), &self.a.scale(&rat(2))).expect("a != 0")
    }

    /// The simple root, when there is one.
    pub fn simple_x(&self) -> Option<FieldElem> {
        (!self.a.is_zero()).then(|| self.singular_x().scale(&rat(-2)))
    }
}

/// Either kind of fiber whose 2-torsion is examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubicFiber {
    Smooth(WeierstrassCurve),
    Singular(SingularFiber),
}

impl CubicFiber {
    pub fn new(field: &LocalField, a: FieldElem, b: FieldElem) -> Result<Self> {
        if discriminant(field, &a, &b).is_zero() {
            SingularFiber::new(field, a, b).map(CubicFiber::Singular)
        } else {
            WeierstrassCurve::new(field, a, b).map(CubicFiber::Smooth)
        }
    }

    pub fn field(&self) -> &LocalField {
        match self {
            CubicFiber::Smooth(c) => &c.field,
            CubicFiber::Singular(s) => &s.field,
        }
    }

    pub fn coefficients(&self) -> (&FieldElem, &FieldElem) {
        match self {
            CubicFiber::Smooth(c) => (&c.a, &c.b),
            CubicFiber::Singular(s) => (&s.a, &s.b),
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, CubicFiber::Singular(_))
    }
}

/// Which twist the semistability defect calls for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistClass {
    None,
    RamifiedQuadratic,
    Higher(u32),
}

impl fmt::Display for TwistClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistClass::None => write!(f, "none"),
            TwistClass::RamifiedQuadratic => write!(f, "ramified-quadratic"),
            TwistClass::Higher(e) => write!(f, "higher({e})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub kodaira: KodairaType,
    pub invariants: LocalInvariants,
    /// `k` with `u = pi^k` the scaling used to reach the minimal model.
    pub minimal_scaling: i64,
    pub good: bool,
    pub potentially_good: bool,
    /// `12 / gcd(12, v(D_min))` for potentially good curves.
    pub semistability_defect: Option<u32>,
    pub twist_class_needed: Option<TwistClass>,
    pub j_valuation: Option<i64>,
}

/// Minimal model `(pi^-4k a, pi^-6k b)` and the exponent `k`.
pub fn minimal_model(c: &WeierstrassCurve) -> Result<(WeierstrassCurve, i64)> {
    let k = &c.field;
    let va = k.valuation(&c.a)?;
    let vb = k.valuation(&c.b)?;
    let scale = match (va, vb) {
        (None, None) => unreachable!("smooth curve"),
        (Some(x), None) => Integer::div_floor(&x, &4),
        (None, Some(y)) => Integer::div_floor(&y, &6),
        (Some(x), Some(y)) => Integer::div_floor(&x, &4).min(Integer::div_floor(&y, &6)),
    };
    if scale == 0 {
        return Ok((c.clone(), 0));
    }
    let pi = k.uniformizer();
    let a = k.mul(&c.a, &k.powi(&pi, -4 * scale)?);
    let b = k.mul(&c.b, &k.powi(&pi, -6 * scale)?);
    Ok((WeierstrassCurve::new(k, a, b)?, scale))
}

pub fn reduction_type(c: &WeierstrassCurve) -> Result<ReductionReport> {
    let (m, scale) = minimal_model(c)?;
    let k = &m.field;
    let invariants = LocalInvariants::new(
        k.valuation(&m.c4())?,
        k.valuation(&m.c6())?,
        k.valuation(&m.discriminant())?.expect("smooth"),
    );
    let kodaira = classify_from_invariants(invariants)?;
    let j_valuation = k.valuation(&m.j_invariant())?;
    let potentially_good = j_valuation.is_none_or(|v| v >= 0);
    let defect = potentially_good.then(|| 12 / (invariants.vdelta as u32).gcd(&12));
    let twist = defect.map(|d| match d {
        1 => TwistClass::None,
        2 => TwistClass::RamifiedQuadratic,
        e => TwistClass::Higher(e),
    });
    Ok(ReductionReport {
        kodaira,
        invariants,
        minimal_scaling: scale,
        good: kodaira.is_good(),
        potentially_good,
        semistability_defect: defect,
        twist_class_needed: twist,
        j_valuation,
    })
}

/// `(a d^2, b d^3)`.
pub fn quadratic_twist(c: &WeierstrassCurve, d: &FieldElem) -> Result<WeierstrassCurve> {
    if d.is_zero() {
        return Err(Error::InvalidInput("twist by zero".into()));
    }
    let k = &c.field;
    let d2 = k.mul(d, d);
    let d3 = k.mul(&d2, d);
    WeierstrassCurve::new(k, k.mul(&c.a, &d2), k.mul(&c.b, &d3))
}

/// Ramification index of `K(E[2]) / K`, using the radical of the cubic for
/// singular fibers.
pub fn two_torsion_ramification(c: &CubicFiber) -> Result<u32> {
    let (a, b) = c.coefficients();
    let cubic = vec![b.clone(), a.clone(), FieldElem::zero(), FieldElem::one()];
    splitting_ramification_cubic(c.field(), &cubic)
}

/// A curve with j-invariant `j`: `(0, 1)`, `(1, 0)` or
/// `(3j(1728 - j), 2j(1728 - j)^2)`.
pub fn curve_with_j(field: &LocalField, j: &FieldElem) -> Result<WeierstrassCurve> {
    let k1728 = FieldElem::int(1728);
    if j.is_zero() {
        return WeierstrassCurve::new(field, FieldElem::zero(), FieldElem::one());
    }
    if *j == k1728 {
        return WeierstrassCurve::new(field, FieldElem::one(), FieldElem::zero());
    }
    let m = &k1728 - j;
    let jm = field.mul(j, &m);
    WeierstrassCurve::new(field, jm.scale(&rat(3)), field.mul(&jm, &m).scale(&rat(2)))
}

/// Cubic coefficients of `x^3 + a x + b` over the rationals.
pub fn rational_two_torsion_cubic(a: &Rational, b: &Rational) -> Vec<FieldElem> {
    rational_cubic(b, a, &rat(0))
}
