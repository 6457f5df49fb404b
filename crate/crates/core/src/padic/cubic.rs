use num_traits::One;

use crate::arith::{lcm, rat, ratio, Rational};
use crate::error::{Error, Result};

use super::{FieldElem, LocalField, NewtonPolygon};

/// Ramification data of the splitting field of a monic cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicRamification {
    /// Ramification index of the splitting field over the base.
    pub e: u32,
    /// Contribution of the root valuations (lcm of slope denominators).
    pub root_part: u32,
    /// Normalized valuation of the discriminant; `None` when it vanishes.
    pub disc_valuation: Option<i64>,
    /// The cubic had a repeated root and only its radical was used.
    pub radical: bool,
}

/// Ramification index over `field` of the splitting field of the monic cubic
/// `c[0] + c[1] x + c[2] x^2 + x^3`.
pub fn splitting_ramification_cubic(field: &LocalField, c: &[FieldElem]) -> Result<u32> {
    cubic_ramification(field, c).map(|r| r.e)
}

/// As [`splitting_ramification_cubic`], with the intermediate data.
///
/// For `p >= 5` the splitting field is tame, so inertia is cyclic inside
/// `S_3`. After translating away the `x^2` term the roots sum to zero, which
/// rules out a 3-cycle unless all roots share a valuation with denominator 3.
/// A transposition lies in inertia exactly when `sqrt(disc)` is ramified.
pub fn cubic_ramification(field: &LocalField, c: &[FieldElem]) -> Result<CubicRamification> {
    if c.len() != 4 {
        return Err(Error::InvalidInput(format!(
            "cubic needs 4 coefficients, got {}",
            c.len()
        )));
    }
    if c[3] != FieldElem::one() {
        return Err(Error::NonMonic);
    }
    let s = c[2].scale(&ratio(1, 3));
    let s2 = field.mul(&s, &s);
    // x -> x - s gives x^3 + p x + q.
    let p = &c[1] - &s2.scale(&rat(3));
    let q = &(&c[0] - &field.mul(&c[1], &s)) + &field.mul(&s2, &s).scale(&rat(2));

    let p3 = field.pow(&p, 3);
    let q2 = field.mul(&q, &q);
    let disc = &p3.scale(&rat(-4)) - &q2.scale(&rat(27));
    if disc.is_zero() {
        // Repeated root: the distinct roots are rational functions of the
        // coefficients, so the radical splits over the base.
        return Ok(CubicRamification {
            e: 1,
            root_part: 1,
            disc_valuation: None,
            radical: true,
        });
    }

    let vals = [field.valuation(&q)?, field.valuation(&p)?, None, Some(0)];
    let root_part = NewtonPolygon::from_valuations(&vals)?.ramification_bound();
    let vdisc = field.valuation(&disc)?.expect("nonzero discriminant");
    let e = if vdisc % 2 != 0 { lcm(root_part, 2) } else { root_part };
    if !matches!(e, 1..=3) {
        return Err(Error::Inconsistent(format!(
            "cubic splitting field with ramification {e} (roots {root_part}, v(disc) = {vdisc})"
        )));
    }
    Ok(CubicRamification {
        e,
        root_part,
        disc_valuation: Some(vdisc),
        radical: false,
    })
}

/// Coefficients of the monic cubic with the given rational coefficients.
pub fn rational_cubic(c0: &Rational, c1: &Rational, c2: &Rational) -> Vec<FieldElem> {
    vec![
        FieldElem::rational(c0.clone()),
        FieldElem::rational(c1.clone()),
        FieldElem::rational(c2.clone()),
        FieldElem::rational(Rational::one()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RatPoly;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn q(p: u64) -> LocalField {
        LocalField::rational(p).unwrap()
    }

    fn cubic(c: [i64; 3]) -> Vec<FieldElem> {
        rational_cubic(&rat(c[0]), &rat(c[1]), &rat(c[2]))
    }

    #[test]
    fn basic_examples_over_q5() {
        let k = q(5);
        let r = cubic_ramification(&k, &cubic([-5, 0, 0])).unwrap();
        assert_eq!((r.e, r.root_part), (3, 3));
        // disc(x^3 - 5) = -27 * 25.
        assert_eq!(r.disc_valuation, Some(2));
        assert_eq!(splitting_ramification_cubic(&k, &cubic([0, -5, 0])).unwrap(), 2);
        assert_eq!(splitting_ramification_cubic(&k, &cubic([0, -1, 0])).unwrap(), 1);
    }

    #[test]
    fn rejects_non_monic_and_short_input() {
        let k = q(5);
        let mut c = cubic([1, 1, 1]);
        c[3] = FieldElem::int(2);
        assert_eq!(splitting_ramification_cubic(&k, &c), Err(Error::NonMonic));
        assert!(splitting_ramification_cubic(&k, &c[..3]).is_err());
    }

    #[test]
    fn repeated_roots_use_the_radical() {
        let k = q(7);
        // (x - 7)^2 (x + 14): distinct roots are rational.
        let f = &RatPoly::from_ints(&[-7, 1]).pow(2) * &RatPoly::from_ints(&[14, 1]);
        let c: Vec<_> = (0..4).map(|i| FieldElem::rational(f.coeff(i))).collect();
        let r = cubic_ramification(&k, &c).unwrap();
        assert!(r.radical);
        assert_eq!(r.e, 1);
        assert_eq!(splitting_ramification_cubic(&k, &cubic([0, 0, 0])).unwrap(), 1);
    }

    #[test]
    fn over_a_ramified_base() {
        // Over Q_5(sqrt 5), x^2 - 5 splits and x^3 - sqrt(5) still needs e = 3.
        let (k, beta) = LocalField::adjoin_sqrt(5, &rat(5), 64).unwrap();
        assert_eq!(splitting_ramification_cubic(&k, &cubic([0, -5, 0])).unwrap(), 1);
        let c = vec![-&beta, FieldElem::zero(), FieldElem::zero(), FieldElem::one()];
        assert_eq!(splitting_ramification_cubic(&k, &c).unwrap(), 3);
        // x^3 - 5 over the same base: v = 2, slope 2/3.
        assert_eq!(splitting_ramification_cubic(&k, &cubic([-5, 0, 0])).unwrap(), 3);
    }

    /// Cubics built from roots of known ramification, then disguised by a
    /// translation and a unit scaling of the variable.
    #[test]
    fn constructed_cubics_match_their_roots() {
        let mut rng = StdRng::seed_from_u64(7);
        for p in [5i64, 7, 11, 13] {
            let k = q(p as u64);
            let nonres = (2..p).find(|r| (1..p).all(|s| s * s % p != *r)).unwrap();
            for _ in 0..200 {
                let u: i64 = loop {
                    let u = rng.gen_range(1..50);
                    if u % p != 0 {
                        break u;
                    }
                };
                let r: i64 = rng.gen_range(-40..40);
                let cases: [(RatPoly, u32); 4] = [
                    (RatPoly::from_ints(&[-p * u, 0, 0, 1]), 3),
                    (&RatPoly::from_ints(&[-r, 1]) * &RatPoly::from_ints(&[-p * u, 0, 1]), 2),
                    (
                        &(&RatPoly::from_ints(&[-r, 1]) * &RatPoly::from_ints(&[r + 1, 1]))
                            * &RatPoly::from_ints(&[-r - 2 * p, 1]),
                        1,
                    ),
                    (&RatPoly::from_ints(&[-r, 1]) * &RatPoly::from_ints(&[-nonres, 0, 1]), 1),
                ];
                let shift = Rational::new(rng.gen_range(-30..30).into(), rng.gen_range(1..6).into());
                for (f, expected) in cases {
                    let g = f.compose(&RatPoly::new(vec![shift.clone(), Rational::one()]));
                    let c: Vec<_> = (0..4).map(|i| FieldElem::rational(g.coeff(i))).collect();
                    let got = splitting_ramification_cubic(&k, &c).unwrap();
                    assert_eq!(got, expected, "p={p} f={f} shift={shift}");
                }
            }
        }
    }
}
