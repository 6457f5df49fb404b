//! Weierstrass pencils `y^2 = x^3 + A(t) x + B(t)` over the t-line.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{format_rational, rat, sqrt_exact, Rational};
use crate::error::{Error, Result};
use crate::kodaira::{classify_from_invariants, KodairaType, LocalInvariants};
use crate::padic::FieldElem;
use crate::poly::{coprime_base, RatPoly};

/// An elliptic surface over `P^1` in Weierstrass form of weight `k`:
/// `deg A <= 4k`, `deg B <= 6k`. Weight 1 gives rational elliptic surfaces,
/// weight 2 gives K3 surfaces.
#[derive(Clone, PartialEq, Eq)]
pub struct SurfacePencil {
    a: RatPoly,
    b: RatPoly,
    weight: u32,
}

impl SurfacePencil {
    pub fn new(a: RatPoly, b: RatPoly, weight: u32) -> Result<Self> {
        if weight == 0 {
            return Err(Error::InvalidInput("pencil weight must be positive".into()));
        }
        let (da, db) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
        if da > 4 * weight as usize || db > 6 * weight as usize {
            return Err(Error::InvalidInput(format!(
                "max(3 deg A, 2 deg B) = {} exceeds {}",
                (3 * da).max(2 * db),
                12 * weight
            )));
        }
        let p = SurfacePencil { a, b, weight };
        if p.discriminant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(p)
    }

    pub fn k3(a: RatPoly, b: RatPoly) -> Result<Self> {
        Self::new(a, b, 2)
    }

    pub fn rational_surface(a: RatPoly, b: RatPoly) -> Result<Self> {
        Self::new(a, b, 1)
    }

    pub fn a(&self) -> &RatPoly {
        &self.a
    }

    pub fn b(&self) -> &RatPoly {
        &self.b
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_k3(&self) -> bool {
        self.weight == 2
    }

    /// `-16 (4 A^3 + 27 B^2)`.
    pub fn discriminant(&self) -> RatPoly {
        let s = &self.a.pow(3).scale(&rat(4)) + &self.b.pow(2).scale(&rat(27));
        s.scale(&rat(-16))
    }

    /// `(s^{4k} A(1/s), s^{6k} B(1/s))`: the pencil in the chart at infinity.
    pub fn at_infinity(&self) -> (RatPoly, RatPoly) {
        let k = self.weight as usize;
        (self.a.reverse(4 * k), self.b.reverse(6 * k))
    }

    /// The pencil after `t -> (alpha t + beta) / (gamma t + delta)`.
    pub fn mobius(&self, m: [&Rational; 4]) -> Result<SurfacePencil> {
        let [alpha, beta, gamma, delta] = m;
        if (alpha * delta - beta * gamma).is_zero() {
            return Err(Error::InvalidInput("degenerate substitution".into()));
        }
        let k = self.weight as usize;
        SurfacePencil::new(self.a.mobius(4 * k, m), self.b.mobius(6 * k, m), self.weight)
    }
}

impl fmt::Debug for SurfacePencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + [{}] x + [{}] (weight {})", self.a, self.b, self.weight)
    }
}

/// A closed point of the t-line: the roots of a monic irreducible rational
/// polynomial of degree at most 2, or infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Finite(RatPoly),
    Infinity,
}

impl Place {
    pub fn rational(t0: &Rational) -> Place {
        Place::Finite(RatPoly::new(vec![-t0, Rational::one()]))
    }

    pub fn zero() -> Place {
        Place::rational(&Rational::zero())
    }

    /// The place of `re + im sqrt(d)` and its conjugate.
    pub fn quadratic(value: &FieldElem, d: &Rational) -> Result<Place> {
        if value.im.is_zero() {
            return Ok(Place::rational(&value.re));
        }
        // t^2 - 2 re t + (re^2 - d im^2).
        let c0 = &value.re * &value.re - d * &value.im * &value.im;
        Place::from_factor(&RatPoly::new(vec![c0, -&value.re * rat(2), Rational::one()]))
    }

    pub fn from_factor(q: &RatPoly) -> Result<Place> {
        let q = q.monic();
        match q.degree() {
            Some(1) => Ok(Place::Finite(q)),
            Some(2) => {
                let disc = q.coeff(1) * q.coeff(1) - rat(4) * q.coeff(0);
                if sqrt_exact(&disc).is_some() {
                    return Err(Error::InvalidInput(format!("{q} is reducible")));
                }
                Ok(Place::Finite(q))
            }
            _ => Err(Error::UnsupportedExtension(format!(
                "place defined by {q} needs an extension of degree > 2"
            ))),
        }
    }

    /// Number of geometric points.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(q) => q.degree().unwrap(),
            Place::Infinity => 1,
        }
    }

    pub fn rational_value(&self) -> Option<Rational> {
        match self {
            Place::Finite(q) if q.degree() == Some(1) => Some(-q.coeff(0)),
            _ => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(q) => match self.rational_value() {
                Some(t) => write!(f, "{}", format_rational(&t)),
                None => write!(f, "roots of {q}"),
            },
        }
    }
}

/// Orders of `A`, `B` and `Delta` at a place, after minimalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlaceOrders {
    pub ord_a: Option<i64>,
    pub ord_b: Option<i64>,
    pub ord_delta: i64,
    /// How many times `(A, B) -> (A / q^4, B / q^6)` was applied.
    pub reductions: i64,
}

impl PlaceOrders {
    fn minimalize(ord_a: Option<u32>, ord_b: Option<u32>, ord_delta: u32) -> Self {
        let (oa, ob) = (ord_a.map(i64::from), ord_b.map(i64::from));
        let steps = oa.map_or(i64::MAX, |v| v / 4).min(ob.map_or(i64::MAX, |v| v / 6));
        PlaceOrders {
            ord_a: oa.map(|v| v - 4 * steps),
            ord_b: ob.map(|v| v - 6 * steps),
            ord_delta: ord_delta as i64 - 12 * steps,
            reductions: steps,
        }
    }

    pub fn kodaira(&self) -> Result<KodairaType> {
        classify_from_invariants(LocalInvariants::new(self.ord_a, self.ord_b, self.ord_delta))
    }
}

fn orders_along(a: &RatPoly, b: &RatPoly, delta: &RatPoly, q: &RatPoly) -> PlaceOrders {
    PlaceOrders::minimalize(
        a.order_at(q),
        b.order_at(q),
        delta.order_at(q).expect("nonzero discriminant"),
    )
}

/// Orders of `A`, `B`, `Delta` at a place.
pub fn orders_at(p: &SurfacePencil, place: &Place) -> PlaceOrders {
    match place {
        Place::Finite(q) => orders_along(&p.a, &p.b, &p.discriminant(), q),
        Place::Infinity => {
            let (a, b) = p.at_infinity();
            let delta = p.discriminant().reverse(12 * p.weight as usize);
            orders_along(&a, &b, &delta, &RatPoly::x())
        }
    }
}

pub fn fiber_at(p: &SurfacePencil, place: &Place) -> Result<KodairaType> {
    orders_at(p, place).kodaira()
}

/// A singular fiber: its type and the places it sits over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberGroup {
    /// Squarefree polynomial whose roots all carry this fiber, or `None`
    /// for the point at infinity.
    pub factor: Option<RatPoly>,
    pub kodaira: KodairaType,
    pub count: usize,
}

/// All singular fibers, grouped by factors of a coprime base of
/// `{A, B, Delta}`; every root of a factor has the same orders.
pub fn singular_fibers(p: &SurfacePencil) -> Result<Vec<FiberGroup>> {
    let delta = p.discriminant();
    let base = coprime_base(&[&p.a, &p.b, &delta]);
    let mut out = Vec::new();
    for q in base {
        let orders = orders_along(&p.a, &p.b, &delta, &q);
        let kodaira = orders.kodaira()?;
        if kodaira != KodairaType::I0 {
            out.push(FiberGroup {
                count: q.degree().unwrap(),
                factor: Some(q),
                kodaira,
            });
        }
    }
    let at_inf = fiber_at(p, &Place::Infinity)?;
    if at_inf != KodairaType::I0 {
        out.push(FiberGroup {
            factor: None,
            kodaira: at_inf,
            count: 1,
        });
    }
    Ok(out)
}

/// Sum of the Euler numbers of all singular fibers, including infinity.
pub fn euler_sum(p: &SurfacePencil) -> Result<u32> {
    Ok(singular_fibers(p)?
        .iter()
        .map(|g| g.count as u32 * g.kodaira.euler_number())
        .sum())
}

/// Singular fiber types with multiplicity, sorted.
pub fn fiber_multiset(p: &SurfacePencil) -> Result<Vec<KodairaType>> {
    let mut v: Vec<KodairaType> = singular_fibers(p)?
        .into_iter()
        .flat_map(|g| std::iter::repeat_n(g.kodaira, g.count))
        .collect();
    v.sort();
    Ok(v)
}

/// The normalized pencil `y^2 = x^3 + a x + (b_-1 / t + b_0 + b_1 t)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SIPencil {
    pub a: Rational,
    pub b_m1: Rational,
    pub b_0: Rational,
    pub b_1: Rational,
}

impl SIPencil {
    pub fn new(a: Rational, b_m1: Rational, b_0: Rational, b_1: Rational) -> Result<Self> {
        if b_m1.is_zero() || b_1.is_zero() {
            return Err(Error::InvalidInput("b_-1 and b_1 must be nonzero".into()));
        }
        Ok(SIPencil { a, b_m1, b_0, b_1 })
    }

    pub fn from_ints(a: i64, b_m1: i64, b_0: i64, b_1: i64) -> Result<Self> {
        Self::new(rat(a), rat(b_m1), rat(b_0), rat(b_1))
    }

    /// `b' = b_-1 / b_1`.
    pub fn b_prime(&self) -> Rational {
        &self.b_m1 / &self.b_1
    }

    /// `b_-1 / t + b_0 + b_1 t` at `t`.
    pub fn laurent_b(&self, t: &Rational) -> Result<Rational> {
        if t.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.b_m1 / t + &self.b_0 + &self.b_1 * t)
    }

    /// `A = a t^4`, `B = b_-1 t^5 + b_0 t^6 + b_1 t^7` (weight 2).
    pub fn homogenize(&self) -> SurfacePencil {
        let a = RatPoly::monomial(self.a.clone(), 4);
        let b = RatPoly::new(vec![
            rat(0),
            rat(0),
            rat(0),
            rat(0),
            rat(0),
            self.b_m1.clone(),
            self.b_0.clone(),
            self.b_1.clone(),
        ]);
        SurfacePencil::k3(a, b).expect("normalized pencils are K3 pencils")
    }

    /// Invariants of the scaling `(a, b_-1, b_0, b_1) -> (l^4 a, l^6 m b_-1, l^6 b_0, l^6 b_1 / m)`:
    /// `a^3 / (b_-1 b_1)` and `b_0^2 / (b_-1 b_1)`.
    pub fn scaling_invariants(&self) -> (Rational, Rational) {
        let n = &self.b_m1 * &self.b_1;
        (self.a.pow(3) / &n, self.b_0.pow(2) / n)
    }
}

impl fmt::Debug for SIPencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SIPencil(a = {}, b_-1 = {}, b_0 = {}, b_1 = {})",
            format_rational(&self.a),
            format_rational(&self.b_m1),
            format_rational(&self.b_0),
            format_rational(&self.b_1)
        )
    }
}

/// Moves the two II* fibers of a K3 pencil to `t = 0` and `t = infinity` and
/// reads off the coefficients of the normalized pencil.
pub fn recognize_and_normalize_si(p: &SurfacePencil) -> Result<SIPencil> {
    if !p.is_k3() {
        return Err(Error::NotShiodaInose("pencil is not a K3 pencil (weight 2)".into()));
    }
    let sum = euler_sum(p)?;
    if sum != 24 {
        return Err(Error::NotShiodaInose(format!("Euler number {sum}, expected 24")));
    }
    let mut finite = Vec::new();
    let mut infinite = false;
    for g in singular_fibers(p)? {
        if g.kodaira != KodairaType::IIStar {
            continue;
        }
        match &g.factor {
            None => infinite = true,
            Some(q) if q.degree() == Some(1) => finite.push(-q.coeff(0)),
            Some(q) if q.degree() == Some(2) => {
                // Monic t^2 + c1 t + c0.
                let (c0, c1) = (q.coeff(0), q.coeff(1));
                let Some(r) = sqrt_exact(&(&c1 * &c1 - rat(4) * c0)) else {
                    return Err(Error::NotShiodaInose(format!(
                        "II* fibers at the conjugate places {q}; no rational normalization"
                    )));
                };
                finite.push((-&c1 + &r) / rat(2));
                finite.push((-&c1 - r) / rat(2));
            }
            Some(q) => return Err(Error::NotShiodaInose(format!("{} II* fibers", q.degree().unwrap()))),
        }
    }
    finite.sort();
    let (zero, one) = (rat(0), rat(1));
    let moved = match (finite.as_slice(), infinite) {
        ([t1], true) => p.mobius([&one, t1, &zero, &one])?,
        ([t1, t2], false) => p.mobius([t2, t1, &one, &one])?,
        _ => {
            return Err(Error::NotShiodaInose(format!(
                "need exactly two II* fibers, found {}",
                finite.len() + infinite as usize
            )))
        }
    };
    let (a, b) = (moved.a(), moved.b());
    let a_ok = a.coeffs().iter().enumerate().all(|(k, c)| k == 4 || c.is_zero());
    let b_ok = b
        .coeffs()
        .iter()
        .enumerate()
        .all(|(k, c)| (5..=7).contains(&k) || c.is_zero());
    if !a_ok || !b_ok {
        return Err(Error::NotShiodaInose(format!(
            "normalized pencil A = {a}, B = {b} is not of the form a t^4, b t^5 + ... + b t^7"
        )));
    }
    SIPencil::new(a.coeff(4), b.coeff(5), b.coeff(6), b.coeff(7))
}
