use inose_core::arith::{pow_p, rat, ratio};
use inose_core::padic::{
    hensel_root, newton_polygon, padic_arith, rational_cubic, sqrt_class_rational, ArithOp, PadicNumber,
};
use inose_core::*;
use num_bigint::BigInt;

fn q5(n: i64) -> PadicNumber {
    PadicNumber::from_int(n, 5, 32).unwrap()
}

fn q5r(x: Rational) -> PadicNumber {
    PadicNumber::from_rational(&x, 5, 32).unwrap()
}

#[test]
fn padic_arithmetic() {
    let s = padic_arith(&q5(1), &q5(4), ArithOp::Add).unwrap();
    assert!(s.valuation().unwrap().unwrap() >= 1);
    let x = q5(7);
    let one = padic_arith(&x, &x.inv().unwrap(), ArithOp::Mul).unwrap();
    assert!(one.is_one());
    assert_eq!(q5r(ratio(1, 5)).valuation().unwrap(), Some(-1));
}

#[test]
fn newton_polygons() {
    let np = newton_polygon(&[q5(-5), q5(0), q5(0), q5(1)]).unwrap();
    assert_eq!(np.slopes.len(), 1);
    assert_eq!((np.slopes[0].slope.clone(), np.slopes[0].length), (ratio(1, 3), 3));
    let np = newton_polygon(&[q5(0), q5(-1), q5(0), q5(1)]).unwrap();
    assert_eq!(np.zero_roots, 1);
    assert_eq!((np.slopes[0].slope.clone(), np.slopes[0].length), (rat(0), 2));
    let np = newton_polygon(&[q5(2), q5(3), q5(1), q5(1)]).unwrap();
    assert_eq!(np.slopes.len(), 1);
    assert_eq!(np.slopes[0].slope, rat(0));
}

#[test]
fn hensel_lifts() {
    let r = hensel_root(&[q5(-2), q5(0), q5(0), q5(1)], &q5(3), 20).unwrap();
    assert_eq!(r.residue(1).unwrap(), BigInt::from(3));
    let cube = r.mul(&r).unwrap().mul(&r).unwrap();
    assert!(cube.sub(&q5(2)).unwrap().valuation_at_least().unwrap() >= 20);
    let r = hensel_root(&[q5(-1), q5(0), q5(1)], &q5(1), 20).unwrap();
    assert!(r.is_one());
    let r = hensel_root(&[q5(-6), q5(0), q5(1)], &q5(1), 20).unwrap();
    assert_eq!(r.residue(1).unwrap(), BigInt::from(1));
    assert!(r.mul(&r).unwrap().sub(&q5(6)).unwrap().valuation_at_least().unwrap() >= 20);
}

#[test]
fn square_classes() {
    assert_eq!(sqrt_class_rational(&rat(4), 5).unwrap(), SqrtClass::Square);
    assert_eq!(sqrt_class_rational(&rat(2), 5).unwrap(), SqrtClass::UnramifiedQuadratic);
    let c = sqrt_class_rational(&rat(5), 5).unwrap();
    assert_eq!((c, c.descriptor().e), (SqrtClass::RamifiedQuadratic, 2));
}

#[test]
fn cubic_splitting_fields() {
    let k = LocalField::rational(5).unwrap();
    let e = |c0: i64, c1: i64| splitting_ramification_cubic(&k, &rational_cubic(&rat(c0), &rat(c1), &rat(0))).unwrap();
    assert_eq!(e(-5, 0), 3);
    assert_eq!(e(0, -5), 2);
    assert_eq!(e(0, -1), 1);
}

#[test]
fn kodaira_table_and_graphs() {
    let c = |a, b, d| classify_from_invariants(LocalInvariants::new(a, b, d)).unwrap();
    assert_eq!(c(Some(3), Some(4), 8), KodairaType::IVStar);
    assert_eq!(c(None, Some(4), 8), KodairaType::IVStar);
    assert_eq!(c(Some(4), Some(5), 10), KodairaType::IIStar);
    assert_eq!(c(Some(0), Some(0), 0), KodairaType::I0);
    assert_eq!(euler_number(KodairaType::IIStar), 10);
    assert_eq!(euler_number(KodairaType::I0), 0);
    assert_eq!(euler_number(KodairaType::IStar(0)), 6);

    let cfg = kummer_config();
    let d0 = d_zero(&cfg);
    assert_eq!(
        recognize_config(&cfg.support_config(&d0).unwrap()).unwrap(),
        KodairaType::IVStar
    );
    let e8 = KodairaType::IIStar.standard_config().unwrap();
    assert_eq!(e8.len(), 9);
    assert_eq!(recognize_config(&e8).unwrap(), KodairaType::IIStar);
    let two_cycle = CurveConfig::new(vec!["a".into(), "b".into()], vec![vec![-2, 2], vec![2, -2]]).unwrap();
    assert_eq!(recognize_config(&two_cycle).unwrap(), KodairaType::I(2));
}

fn q5_curve(a: Rational, b: Rational) -> WeierstrassCurve {
    WeierstrassCurve::over_qp(5, a, b).unwrap()
}

#[test]
fn curves() {
    let (m, _) = minimal_model(&q5_curve(pow_p(5, 4), pow_p(5, 6))).unwrap();
    assert_eq!((m.a().clone(), m.b().clone()), (FieldElem::int(1), FieldElem::int(1)));
    let istar = q5_curve(rat(25), rat(125));
    assert_eq!(minimal_model(&istar).unwrap().1, 0);

    let r = reduction_type(&q5_curve(rat(1), rat(1))).unwrap();
    assert_eq!((r.kodaira, r.good), (KodairaType::I0, true));
    let r = reduction_type(&istar).unwrap();
    assert_eq!(r.kodaira, KodairaType::IStar(0));
    assert_eq!(r.semistability_defect, Some(2));
    assert_eq!(r.twist_class_needed, Some(TwistClass::RamifiedQuadratic));
    let r = reduction_type(&q5_curve(rat(-3), rat(7))).unwrap();
    assert_eq!(
        (r.kodaira, r.potentially_good, r.j_valuation),
        (KodairaType::I(1), false, Some(-1))
    );

    let t = quadratic_twist(&q5_curve(rat(1), rat(1)), &FieldElem::int(4)).unwrap();
    assert_eq!((t.a().clone(), t.b().clone()), (FieldElem::int(16), FieldElem::int(64)));
    let t = quadratic_twist(&istar, &FieldElem::rational(ratio(1, 5))).unwrap();
    assert_eq!((t.a().clone(), t.b().clone()), (FieldElem::int(1), FieldElem::int(1)));
    assert!(reduction_type(&t).unwrap().good);
    let base = q5_curve(rat(1), rat(1));
    for d in [2, 5, 10] {
        assert_eq!(
            quadratic_twist(&base, &FieldElem::int(d)).unwrap().j_invariant(),
            base.j_invariant()
        );
    }

    let k = LocalField::rational(5).unwrap();
    let f = |a: i64, b: i64| {
        let fiber = CubicFiber::new(&k, FieldElem::int(a), FieldElem::int(b)).unwrap();
        two_torsion_ramification(&fiber).unwrap()
    };
    assert_eq!((f(0, -5), f(-5, 0), f(-1, 0)), (3, 2, 1));
}

#[test]
fn pencils() {
    let si = SIPencil::from_ints(0, 1, 0, 1).unwrap();
    let y = si.homogenize();
    assert_eq!(fiber_at(&y, &Place::zero()).unwrap(), KodairaType::IIStar);
    assert_eq!(euler_sum(&y).unwrap(), 24);
    let w = kummer_transform(&si).unwrap().w_pencil;
    assert_eq!(fiber_at(&w, &Place::zero()).unwrap(), KodairaType::IVStar);

    let r = SurfacePencil::rational_surface(RatPoly::from_ints(&[1]), RatPoly::from_ints(&[0, 1])).unwrap();
    assert_eq!(fiber_at(&r, &Place::zero()).unwrap(), KodairaType::I0);
    let r = SurfacePencil::rational_surface(RatPoly::zero(), RatPoly::from_ints(&[0, -1, 1])).unwrap();
    assert_eq!(euler_sum(&r).unwrap(), 12);

    let generic = SIPencil::from_ints(0, 1, -2, 1).unwrap();
    let u = kummer_transform(&generic).unwrap().u_pencil;
    assert_eq!(euler_sum(&u).unwrap(), 24);

    let si = SIPencil::from_ints(2, 3, 5, 7).unwrap();
    assert_eq!(recognize_and_normalize_si(&si.homogenize()).unwrap(), si);
    // II* at t = 1 and infinity after t -> t - 1.
    let shifted = si.homogenize().mobius([&rat(1), &rat(-1), &rat(0), &rat(1)]).unwrap();
    assert_eq!(
        fiber_at(&shifted, &Place::rational(&rat(1))).unwrap(),
        KodairaType::IIStar
    );
    let back = recognize_and_normalize_si(&shifted).unwrap();
    assert_eq!(back.scaling_invariants(), si.scaling_invariants());
    let y = back.homogenize();
    assert_eq!(fiber_at(&y, &Place::zero()).unwrap(), KodairaType::IIStar);
    assert_eq!(fiber_at(&y, &Place::Infinity).unwrap(), KodairaType::IIStar);
}

#[test]
fn sandwich() {
    let d = involution_fixed_fibers(&SIPencil::from_ints(0, 1, 0, 1).unwrap(), 5, 64).unwrap();
    assert_eq!(d.beta, FieldElem::int(1));
    assert_eq!(ramification_index(&d).unwrap().f_total, 1);
    let d = involution_fixed_fibers(&SIPencil::from_ints(0, 5, 0, 1).unwrap(), 5, 64).unwrap();
    assert_eq!(d.beta_class, SqrtClass::RamifiedQuadratic);
    let c = ramification_index(&d).unwrap();
    assert_eq!((c.e_kprime, c.f_plus, c.f_minus, c.f_total), (2, 3, 3, 6));

    assert_eq!(inose_pencil(&rat(0), &rat(0)).unwrap().a, rat(0));
    let s = inose_pencil(&rat(1728), &rat(1728)).unwrap();
    assert_eq!(recover_j_pair(&s), JPair::rational(rat(1728), rat(1728)));

    let policy = PrecisionPolicy::default();
    let v = si_verdict(&inose_pencil(&rat(1728), &rat(1)).unwrap(), 5, &policy).unwrap();
    assert!(v.potentially_good);
    let v = si_verdict(&inose_pencil(&ratio(3, 5), &rat(2)).unwrap(), 5, &policy).unwrap();
    assert!(!v.potentially_good);
}

#[test]
fn kummer_decisions() {
    let good = q5_curve(rat(1), rat(1));
    let istar = q5_curve(rat(25), rat(125));
    assert_eq!(
        kummer_reduction_decision(&good, &good).unwrap().outcome,
        KummerOutcome::GoodOverUnramified
    );
    assert_eq!(
        kummer_reduction_decision(&istar, &istar).unwrap().outcome,
        KummerOutcome::GoodOverUnramified
    );
    let v = kummer_reduction_decision(&good, &istar).unwrap();
    assert_eq!(v.outcome, KummerOutcome::NeedsDeeperExtension { e: 2 });
    assert_eq!(v.label(), "needs-quadratic");

    let cfg = kummer_config();
    let w00 = cfg.class("w00").unwrap();
    let r = validate_fibration(&cfg, &(&d_zero(&cfg) + &cfg.class("u0").unwrap()), &w00, &[]).unwrap();
    assert!(!r.passes());
}

#[test]
fn bounds() {
    use num_bigint::BigUint;
    assert_eq!(gl_order(1, 3).unwrap(), BigUint::from(2u32));
    assert_eq!(gl_order(2, 3).unwrap(), BigUint::from(48u32));
    assert!(gl_order(22, 3).unwrap() <= torsion_bound(22, 3).unwrap());
    assert_eq!(torsion_bound(1, 3).unwrap(), BigUint::from(3u32));
    let b = si_composite_bound();
    assert_eq!((b.exponent, b.permutations.clone()), (1004, BigUint::from(40320u32)));
    assert!(b.within_decimal_bound);
}
