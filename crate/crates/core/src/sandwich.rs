//! The Shioda-Inose side: the involution `(x, y, t) -> (x, -y, b'/t)` of a
//! normalized pencil, its fixed fibers, the ramification needed to trivialize
//! the fixed points, the passage to the Kummer-side pencils, and the
//! j-invariants of the underlying product of elliptic curves.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{format_rational, lcm, rat, sqrt_exact, valuation, Rational};
use crate::elliptic::{curve_with_j, two_torsion_ramification, CubicFiber};
use crate::error::{Error, Result};
use crate::kodaira::KodairaType;
use crate::kummer::{kummer_reduction_decision, KummerVerdict};
use crate::padic::{sqrt_class_rational, ExtensionDescriptor, FieldElem, LocalField, PrecisionPolicy, SqrtClass};
use crate::pencil::{euler_sum, fiber_at, fiber_multiset, Place, SIPencil, SurfacePencil};
use crate::poly::RatPoly;
use crate::symbolic::verified_identities;

/// The admissible values of the total ramification index.
pub const F_VALUES: [u32; 5] = [1, 2, 3, 4, 6];

/// The fibers `E_+` and `E_-` over `t = +beta` and `t = -beta`, `beta^2 = b'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionData {
    pub pencil: SIPencil,
    pub b_prime: Rational,
    pub beta_class: SqrtClass,
    /// `K' = K(beta)`.
    pub field: LocalField,
    pub beta: FieldElem,
    /// `y^2 = x^3 + a x + (b_0 + 2 b_1 beta)`.
    pub e_plus: CubicFiber,
    /// `y^2 = x^3 + a x + (b_0 - 2 b_1 beta)`.
    pub e_minus: CubicFiber,
    /// Types of the surface fibers at `+beta` and `-beta`.
    pub surface_fibers: [KodairaType; 2],
    pub iota_preserves_pencil: bool,
    pub iota_is_involution: bool,
}

impl InvolutionData {
    pub fn fibers(&self) -> [&CubicFiber; 2] {
        [&self.e_plus, &self.e_minus]
    }
}

fn fiber_constant(si: &SIPencil, beta: &FieldElem, sign: i64) -> FieldElem {
    &FieldElem::rational(si.b_0.clone()) + &beta.scale(&(&si.b_1 * rat(2 * sign)))
}

fn cubic_fiber_type(f: &CubicFiber) -> KodairaType {
    match f {
        CubicFiber::Smooth(_) => KodairaType::I0,
        CubicFiber::Singular(s) => s.kind(),
    }
}

pub fn involution_fixed_fibers(si: &SIPencil, p: u64, precision: u32) -> Result<InvolutionData> {
    let b_prime = si.b_prime();
    let beta_class = sqrt_class_rational(&b_prime, p)?;
    let (field, beta) = LocalField::adjoin_sqrt(p, &b_prime, precision)?;
    let a = FieldElem::rational(si.a.clone());
    let e_plus = CubicFiber::new(&field, a.clone(), fiber_constant(si, &beta, 1))?;
    let e_minus = CubicFiber::new(&field, a, fiber_constant(si, &beta, -1))?;

    let surface = si.homogenize();
    let place = |b: &FieldElem| match b.as_rational() {
        Some(t) => Ok(Place::rational(t)),
        None => Place::quadratic(b, &b_prime),
    };
    let surface_fibers = [
        fiber_at(&surface, &place(&beta)?)?,
        fiber_at(&surface, &place(&-&beta)?)?,
    ];
    for (cubic, surf) in [&e_plus, &e_minus].into_iter().zip(surface_fibers) {
        if cubic_fiber_type(cubic) != surf {
            return Err(Error::Inconsistent(format!(
                "fiber cubic reads {} but the surface fiber is {surf}",
                cubic_fiber_type(cubic)
            )));
        }
    }
    let ids = verified_identities();
    Ok(InvolutionData {
        pencil: si.clone(),
        b_prime,
        beta_class,
        field,
        beta,
        e_plus,
        e_minus,
        surface_fibers,
        iota_preserves_pencil: ids[0].holds,
        iota_is_involution: ids[1].holds,
    })
}

/// Ramification of the field `K_H` over which the eight fixed points become
/// rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RamificationCertificate {
    pub e_kprime: u32,
    pub f_plus: u32,
    pub f_minus: u32,
    pub f_total: u32,
    /// `E_+` and `E_-` are Galois conjugate over `K`.
    pub conjugate_fibers: bool,
}

/// `f = e(K'/K) * lcm(f_+, f_-)`: ramification indices multiply in the tower
/// `K_H / K' / K`, and a compositum of tame extensions has the lcm.
pub fn ramification_index(d: &InvolutionData) -> Result<RamificationCertificate> {
    let e_kprime = d.field.e();
    let f_plus = two_torsion_ramification(&d.e_plus)?;
    let f_minus = two_torsion_ramification(&d.e_minus)?;
    let conjugate_fibers = d.beta_class != SqrtClass::Square;
    if conjugate_fibers && f_plus != f_minus {
        return Err(Error::Inconsistent(format!(
            "conjugate fibers with different ramification {f_plus} and {f_minus}"
        )));
    }
    let f_total = e_kprime * lcm(f_plus, f_minus);
    if !F_VALUES.contains(&f_total) {
        return Err(Error::Inconsistent(format!("ramification index {f_total}")));
    }
    Ok(RamificationCertificate {
        e_kprime,
        f_plus,
        f_minus,
        f_total,
        conjugate_fibers,
    })
}

/// Where a fixed point of the involution sits inside its fiber.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixedLocation {
    /// The zero section.
    Origin,
    /// The `i`-th of the three distinct roots of a smooth fiber cubic.
    CubicRoot(usize),
    /// The simple root of a nodal cubic (an I2 fiber).
    SimpleRoot,
    /// The point where the three components of a IV fiber meet.
    TriplePoint,
    /// A fixed point on the non-identity component `Theta_c` of a singular
    /// fiber, not on any other component.
    OnComponent { component: u8, index: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPoint {
    /// `+1` for the fiber at `beta`, `-1` for `-beta`.
    pub fiber: i8,
    pub location: FixedLocation,
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = if self.fiber > 0 { "+beta" } else { "-beta" };
        match &self.location {
            FixedLocation::Origin => write!(f, "O@{t}"),
            FixedLocation::CubicRoot(i) => write!(f, "root{i}@{t}"),
            FixedLocation::SimpleRoot => write!(f, "simple-root@{t}"),
            FixedLocation::TriplePoint => write!(f, "triple-point@{t}"),
            FixedLocation::OnComponent { component, index } => write!(f, "theta{component}[{index}]@{t}"),
        }
    }
}

/// The 2-torsion of one fiber over `K-bar`.
///
/// A smooth fiber contributes the origin and the three roots of its cubic.
/// On an I2 fiber the involution fixes the origin and the simple root of the
/// nodal cubic on `Theta_0`, and two points of `Theta_1`. On a IV fiber it
/// fixes the origin and the common point on `Theta_0`, and preserves both
/// other components, fixing one further point on each.
pub fn fiber_fixed_points(fiber: &CubicFiber, sign: i8) -> Result<Vec<FixedPoint>> {
    let locations = match fiber {
        CubicFiber::Smooth(c) => {
            if c.discriminant().is_zero() {
                return Err(Error::Singular);
            }
            vec![
                FixedLocation::Origin,
                FixedLocation::CubicRoot(0),
                FixedLocation::CubicRoot(1),
                FixedLocation::CubicRoot(2),
            ]
        }
        CubicFiber::Singular(s) => match s.kind() {
            KodairaType::I(2) => {
                let simple = s.simple_x().ok_or(Error::Singular)?;
                if simple == s.singular_x() {
                    return Err(Error::Inconsistent("nodal cubic with a triple root".into()));
                }
                vec![
                    FixedLocation::Origin,
                    FixedLocation::SimpleRoot,
                    FixedLocation::OnComponent { component: 1, index: 0 },
                    FixedLocation::OnComponent { component: 1, index: 1 },
                ]
            }
            KodairaType::IV => vec![
                FixedLocation::Origin,
                FixedLocation::TriplePoint,
                FixedLocation::OnComponent { component: 1, index: 0 },
                FixedLocation::OnComponent { component: 2, index: 0 },
            ],
            other => {
                return Err(Error::Inconsistent(format!("fiber of type {other} at a fixed place")));
            }
        },
    };
    Ok(locations
        .into_iter()
        .map(|location| FixedPoint { fiber: sign, location })
        .collect())
}

/// The distinct fixed points of the involution over `K-bar`.
pub fn fixed_points(d: &InvolutionData) -> Result<Vec<FixedPoint>> {
    let mut all: BTreeSet<FixedPoint> = BTreeSet::new();
    for (fiber, sign) in d.fibers().into_iter().zip([1, -1]) {
        all.extend(fiber_fixed_points(fiber, sign)?);
    }
    Ok(all.into_iter().collect())
}

/// The two pencils on the Kummer side of the sandwich.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerSide {
    /// `A = a w^4`, `B = (b_1^2/4) w^4 + b_0 w^6 + 4b' w^8`.
    pub w_pencil: SurfacePencil,
    /// `A = a (u^2 - 4b')^2`, `B = (b_0 + b_1 u)(u^2 - 4b')^3`.
    pub u_pencil: SurfacePencil,
    /// The substitution chain `u = t + b'/t`, `w = y / (t - b'/t)`,
    /// `v = u w - b_1/(2w)` and the clearing of denominators hold identically.
    pub identities_hold: bool,
}

pub fn kummer_transform(si: &SIPencil) -> Result<KummerSide> {
    let b_prime = si.b_prime();
    let w_a = RatPoly::monomial(si.a.clone(), 4);
    let w_b = &(&RatPoly::monomial(&si.b_1 * &si.b_1 / rat(4), 4) + &RatPoly::monomial(si.b_0.clone(), 6))
        + &RatPoly::monomial(&b_prime * rat(4), 8);
    let d = RatPoly::new(vec![-&b_prime * rat(4), Rational::zero(), Rational::one()]);
    let u_a = d.pow(2).scale(&si.a);
    let u_b = &RatPoly::new(vec![si.b_0.clone(), si.b_1.clone()]) * &d.pow(3);
    let identities_hold = verified_identities()[2..].iter().all(|c| c.holds);
    Ok(KummerSide {
        w_pencil: SurfacePencil::k3(w_a, w_b)?,
        u_pencil: SurfacePencil::k3(u_a, u_b)?,
        identities_hold,
    })
}

/// Fiber checks on the three presentations of a normalized pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberBookkeeping {
    pub t_zero: KodairaType,
    pub t_infinity: KodairaType,
    pub w_zero: KodairaType,
    pub w_infinity: KodairaType,
    /// The star fibers of the u-pencil, sorted.
    pub u_star_fibers: Vec<KodairaType>,
    /// Euler sums of the t-, w- and u-pencils.
    pub euler_sums: [u32; 3],
}

impl FiberBookkeeping {
    /// `{II*, I*_c, I*_c'}` or `{II*, I*_0, IV*}`.
    pub fn u_fibers_admissible(&self) -> bool {
        use KodairaType::*;
        matches!(
            self.u_star_fibers.as_slice(),
            [IStar(_), IStar(_), IIStar] | [IStar(0), IVStar, IIStar]
        )
    }

    pub fn passes(&self) -> bool {
        self.t_zero == KodairaType::IIStar
            && self.t_infinity == KodairaType::IIStar
            && self.w_zero == KodairaType::IVStar
            && self.w_infinity == KodairaType::IVStar
            && self.u_fibers_admissible()
            && self.euler_sums == [24; 3]
    }
}

pub fn fiber_bookkeeping(si: &SIPencil) -> Result<FiberBookkeeping> {
    let t = si.homogenize();
    let side = kummer_transform(si)?;
    let mut u_star_fibers: Vec<KodairaType> = fiber_multiset(&side.u_pencil)?
        .into_iter()
        .filter(|k| k.is_star())
        .collect();
    u_star_fibers.sort();
    Ok(FiberBookkeeping {
        t_zero: fiber_at(&t, &Place::zero())?,
        t_infinity: fiber_at(&t, &Place::Infinity)?,
        w_zero: fiber_at(&side.w_pencil, &Place::zero())?,
        w_infinity: fiber_at(&side.w_pencil, &Place::Infinity)?,
        u_star_fibers,
        euler_sums: [euler_sum(&t)?, euler_sum(&side.w_pencil)?, euler_sum(&side.u_pencil)?],
    })
}

/// An unordered pair of j-invariants, rational or conjugate over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum JPair {
    /// Sorted ascending.
    Rational([Rational; 2]),
    /// `re +- im sqrt(d)` with `d` a non-square integer.
    Conjugate { re: Rational, im: Rational, d: Rational },
}

impl JPair {
    pub fn rational(j1: Rational, j2: Rational) -> Self {
        if j1 <= j2 {
            JPair::Rational([j1, j2])
        } else {
            JPair::Rational([j2, j1])
        }
    }

    /// `j1 + j2`.
    pub fn trace(&self) -> Rational {
        match self {
            JPair::Rational([x, y]) => x + y,
            JPair::Conjugate { re, .. } => re * rat(2),
        }
    }

    /// `j1 j2`.
    pub fn norm(&self) -> Rational {
        match self {
            JPair::Rational([x, y]) => x * y,
            JPair::Conjugate { re, im, d } => re * re - im * im * d,
        }
    }

    /// Both j-invariants are `p`-integral; for a conjugate pair this is
    /// integrality of the trace and the norm.
    pub fn is_integral(&self, p: u64) -> bool {
        let ok = |x: &Rational| valuation(x, p).is_none_or(|v| v >= 0);
        match self {
            JPair::Rational([x, y]) => ok(x) && ok(y),
            JPair::Conjugate { .. } => ok(&self.trace()) && ok(&self.norm()),
        }
    }

    /// The field over `Q_p` containing both values, and the two values in it.
    pub fn over(&self, p: u64, precision: u32) -> Result<(LocalField, [FieldElem; 2])> {
        match self {
            JPair::Rational([x, y]) => Ok((
                LocalField::rational(p)?,
                [FieldElem::rational(x.clone()), FieldElem::rational(y.clone())],
            )),
            JPair::Conjugate { re, im, d } => {
                let (field, s) = LocalField::adjoin_sqrt(p, d, precision)?;
                let j1 = &FieldElem::rational(re.clone()) + &s.scale(im);
                let j2 = &FieldElem::rational(re.clone()) - &s.scale(im);
                Ok((field, [j1, j2]))
            }
        }
    }
}

impl fmt::Display for JPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JPair::Rational([x, y]) => write!(f, "{{{}, {}}}", format_rational(x), format_rational(y)),
            JPair::Conjugate { re, im, d } => write!(
                f,
                "{{{} +- {} sqrt({})}}",
                format_rational(re),
                format_rational(im),
                format_rational(d)
            ),
        }
    }
}

/// `(P, Q) = (J_1 J_2, (1 - J_1)(1 - J_2))` with `J_i = j_i / 1728`, read off
/// the pencil as `P = -a^3 / (27 b_-1 b_1)`, `Q = b_0^2 / (4 b_-1 b_1)`.
pub fn inose_invariants(si: &SIPencil) -> (Rational, Rational) {
    let n = &si.b_m1 * &si.b_1;
    (-si.a.pow(3) / (rat(27) * &n), si.b_0.pow(2) / (rat(4) * n))
}

/// The j-invariants of `C_1`, `C_2` with the pencil the Inose pencil of
/// `C_1 x C_2`. `J_1, J_2` are the roots of `z^2 - (1 + P - Q) z + P`, the
/// pencil being a rescaling of
/// `y^2 = x^3 - 3 alpha t^4 x + t^5 (t^2 - 2 gamma t + 1)`,
/// `alpha^3 = J_1 J_2`, `gamma^2 = (1 - J_1)(1 - J_2)`.
pub fn recover_j_pair(si: &SIPencil) -> JPair {
    let (p, q) = inose_invariants(si);
    let s = rat(1) + &p - q;
    let disc = &s * &s - rat(4) * &p;
    let k = rat(864);
    match sqrt_exact(&disc) {
        Some(r) => JPair::rational(&k * (&s + &r), &k * (&s - &r)),
        None => {
            // sqrt(n / m) = sqrt(n m) / m.
            let (n, m) = (disc.numer().clone(), disc.denom().clone());
            JPair::Conjugate {
                re: &k * &s,
                im: &k / Rational::from_integer(m.clone()),
                d: Rational::from_integer(n * m),
            }
        }
    }
}

/// A normalized pencil with `recover_j_pair = {j1, j2}` and II* fibers at
/// `t = 0, infinity`; both are checked before returning.
pub fn inose_pencil(j1: &Rational, j2: &Rational) -> Result<SIPencil> {
    let k = rat(1728);
    let (jj1, jj2) = (j1 / &k, j2 / &k);
    let p = &jj1 * &jj2;
    let q = (rat(1) - &jj1) * (rat(1) - &jj2);
    let si = match (p.is_zero(), q.is_zero()) {
        (false, false) => {
            let pq = &p * &q;
            SIPencil::new(rat(-3) * &pq, rat(1), rat(2) * &pq * &q, p.pow(2) * q.pow(3))?
        }
        (true, false) => SIPencil::new(rat(0), rat(1), rat(2) * &q, q)?,
        (false, true) => SIPencil::new(rat(-3) * &p, rat(1), rat(0), p.pow(2))?,
        (true, true) => SIPencil::from_ints(0, 1, 0, 1)?,
    };
    let expected = JPair::rational(j1.clone(), j2.clone());
    let got = recover_j_pair(&si);
    if got != expected {
        return Err(Error::Inconsistent(format!(
            "pencil {si:?} recovers {got}, not {expected}"
        )));
    }
    let t = si.homogenize();
    for place in [Place::zero(), Place::Infinity] {
        let fiber = fiber_at(&t, &place)?;
        if fiber != KodairaType::IIStar {
            return Err(Error::Inconsistent(format!("fiber {fiber} at t = {place}")));
        }
    }
    Ok(si)
}

/// The facts actually computed, as opposed to the conditional conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurrogateFacts {
    pub j_integral: bool,
    /// The Kummer decision found a common twist giving good reduction.
    pub twist_matched: bool,
    pub identities_verified: bool,
    pub fixed_points: usize,
}

/// Reduction verdict for a normalized pencil over `Q_p`.
///
/// `certified_extension` is the extension over which the surface has good
/// reduction provided its second cohomology is unramified, which is not
/// checked here: ramification `f_total` to trivialize the fixed points,
/// followed by the unramified extension allowed at the Kummer stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SIVerdict {
    pub prime: u64,
    pub pencil: SIPencil,
    pub certificate: RamificationCertificate,
    pub f_total: u32,
    pub j_pair: JPair,
    pub potentially_good: bool,
    pub kummer_verdict: KummerVerdict,
    pub certified_extension: ExtensionDescriptor,
    pub surrogate: SurrogateFacts,
    pub precision_used: u32,
}

pub fn si_verdict(si: &SIPencil, p: u64, policy: &PrecisionPolicy) -> Result<SIVerdict> {
    let ((data, certificate, points, j_pair, kummer_verdict), precision_used) = policy.run(|precision| {
        let data = involution_fixed_fibers(si, p, precision)?;
        let certificate = ramification_index(&data)?;
        let points = fixed_points(&data)?.len();
        let j_pair = recover_j_pair(si);
        let (field, [j1, j2]) = j_pair.over(p, precision)?;
        let kummer_verdict = kummer_reduction_decision(&curve_with_j(&field, &j1)?, &curve_with_j(&field, &j2)?)?;
        Ok((data, certificate, points, j_pair, kummer_verdict))
    })?;
    if points != 8 {
        return Err(Error::Inconsistent(format!("{points} fixed points")));
    }
    let potentially_good = j_pair.is_integral(p);
    let allowance = SqrtClass::UnramifiedQuadratic.descriptor();
    let identities_verified =
        data.iota_preserves_pencil && data.iota_is_involution && kummer_transform(si)?.identities_hold;
    Ok(SIVerdict {
        prime: p,
        pencil: si.clone(),
        certificate,
        f_total: certificate.f_total,
        potentially_good,
        surrogate: SurrogateFacts {
            j_integral: potentially_good,
            twist_matched: matches!(kummer_verdict.outcome, crate::kummer::KummerOutcome::GoodOverUnramified),
            identities_verified,
            fixed_points: points,
        },
        j_pair,
        kummer_verdict,
        certified_extension: ExtensionDescriptor::abstract_tame(certificate.f_total).over(&allowance),
        precision_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn si(a: i64, bm1: i64, b0: i64, b1: i64) -> SIPencil {
        SIPencil::from_ints(a, bm1, b0, b1).unwrap()
    }

    fn data(s: &SIPencil, p: u64) -> InvolutionData {
        involution_fixed_fibers(s, p, 64).unwrap()
    }

    #[test]
    fn fibers_of_the_basic_example() {
        let d = data(&si(0, 1, 0, 1), 5);
        assert_eq!(d.b_prime, rat(1));
        assert_eq!(d.beta, FieldElem::int(1));
        let (a, b) = d.e_plus.coefficients();
        assert_eq!((a.clone(), b.clone()), (FieldElem::zero(), FieldElem::int(2)));
        let (_, b) = d.e_minus.coefficients();
        assert_eq!(b.clone(), FieldElem::int(-2));
        assert!(d.iota_preserves_pencil && d.iota_is_involution);
    }

    #[test]
    fn ramified_beta() {
        let d = data(&si(0, 5, 0, 1), 5);
        assert_eq!(d.beta_class, SqrtClass::RamifiedQuadratic);
        assert_eq!(d.field.e(), 2);
    }

    #[test]
    fn every_f_value_has_a_witness() {
        let witnesses = [
            (1, (0, 1, 0, 1)),
            (2, (-5, 1, -2, 1)),
            (3, (0, 1, 3, 1)),
            (4, (3, 5, 1, 1)),
            (6, (0, 5, 0, 1)),
        ];
        for (f, (a, bm1, b0, b1)) in witnesses {
            let c = ramification_index(&data(&si(a, bm1, b0, b1), 5)).unwrap();
            assert_eq!(c.f_total, f, "{:?}", (a, bm1, b0, b1));
        }
        let c = ramification_index(&data(&si(0, 5, 0, 1), 5)).unwrap();
        assert_eq!((c.e_kprime, c.f_plus, c.f_minus), (2, 3, 3));
        assert!(c.conjugate_fibers);
    }

    #[test]
    fn fixed_points_of_smooth_and_singular_fibers() {
        // Smooth fibers.
        let d = data(&si(0, 1, 0, 1), 5);
        assert_eq!(fixed_points(&d).unwrap().len(), 8);
        // I2: a = -3, c_+ = 2 (x^3 - 3x + 2 = (x - 1)^2 (x + 2)), b' = 1, b_0 = 0, b_1 = 1.
        let d = data(&si(-3, 1, 0, 1), 7);
        assert_eq!(d.surface_fibers, [KodairaType::I(2), KodairaType::I(2)]);
        assert_eq!(fixed_points(&d).unwrap().len(), 8);
        // IV at +beta: a = 0, b_0 = -2 b_1 beta with beta = 1.
        let d = data(&si(0, 1, -2, 1), 7);
        assert_eq!(d.surface_fibers, [KodairaType::IV, KodairaType::I0]);
        let points = fixed_points(&d).unwrap();
        assert_eq!(points.len(), 8);
        assert!(points.iter().any(|x| x.location == FixedLocation::TriplePoint));
    }

    #[test]
    fn kummer_side_fibers() {
        for s in [
            si(0, 1, 0, 1),
            si(3, 5, 1, 1),
            si(-3, 1, 0, 1),
            si(0, 1, -2, 1),
            si(1, 2, 3, 4),
        ] {
            let fb = fiber_bookkeeping(&s).unwrap();
            assert!(fb.passes(), "{s:?}: {fb:?}");
        }
        let fb = fiber_bookkeeping(&si(0, 1, -2, 1)).unwrap();
        assert_eq!(
            fb.u_star_fibers,
            vec![KodairaType::IStar(0), KodairaType::IVStar, KodairaType::IIStar]
        );
        assert!(kummer_transform(&si(1, 2, 3, 4)).unwrap().identities_hold);
    }

    #[test]
    fn j_pair_round_trips() {
        let js = [0, 1728, 1, -5, 8000, 287496, -3375, 54000];
        for &x in &js {
            for &y in &js {
                let s = inose_pencil(&rat(x), &rat(y)).unwrap();
                assert_eq!(recover_j_pair(&s), JPair::rational(rat(x), rat(y)));
            }
        }
        assert_eq!(inose_pencil(&rat(0), &rat(0)).unwrap().a, rat(0));
        let s = inose_pencil(&ratio(1, 3), &ratio(-7, 2)).unwrap();
        assert_eq!(recover_j_pair(&s), JPair::rational(ratio(-7, 2), ratio(1, 3)));
    }

    #[test]
    fn equal_j_gives_rational_beta() {
        for j in [1, 5, 8000, -3375] {
            let s = inose_pencil(&rat(j), &rat(j)).unwrap();
            assert!(sqrt_exact(&s.b_prime()).is_some());
        }
    }

    #[test]
    fn conjugate_pairs() {
        let s = si(-3, 1, 2, 1);
        let (p, q) = inose_invariants(&s);
        assert_eq!((p, q), (rat(1), rat(1)));
        match recover_j_pair(&s) {
            JPair::Conjugate { re, im, d } => {
                assert_eq!(re, rat(864));
                assert_eq!(&im * &im * d, rat(864 * 864 * -3));
            }
            other => panic!("{other}"),
        }
        let pair = recover_j_pair(&s);
        assert_eq!(pair.trace(), rat(1728));
        assert_eq!(pair.norm(), rat(1728 * 1728));
    }

    #[test]
    fn verdicts() {
        let policy = PrecisionPolicy::default();
        let v = si_verdict(&inose_pencil(&rat(1728), &rat(8000)).unwrap(), 5, &policy).unwrap();
        assert!(v.potentially_good);
        assert!(F_VALUES.contains(&v.f_total));
        assert_eq!(v.certified_extension.e, v.f_total);
        let v = si_verdict(&inose_pencil(&ratio(1, 5), &rat(1)).unwrap(), 5, &policy).unwrap();
        assert!(!v.potentially_good);
        let v = si_verdict(&si(0, 5, 0, 1), 5, &policy).unwrap();
        assert_eq!(v.f_total, 6);
        assert_eq!(v.surrogate.fixed_points, 8);
        for (x, y) in [(0, 0), (0, 1728), (1728, 1728)] {
            let v = si_verdict(&inose_pencil(&rat(x), &rat(y)).unwrap(), 7, &policy).unwrap();
            assert!(v.potentially_good);
        }
    }
}
