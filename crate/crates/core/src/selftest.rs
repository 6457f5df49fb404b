//! Property suite over seeded random corpora, shared by the acceptance tests
//! and the `selftest` command.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::arith::{pow_p, rat, ratio, valuation, Rational};
use crate::bounds::{si_composite_bound, torsion_bound};
use crate::elliptic::{quadratic_twist, reduction_type, WeierstrassCurve};
use crate::error::Result;
use crate::kodaira::{recognize_config, KodairaType};
use crate::kummer::{d_infinity, d_zero, kummer_config, kummer_reduction_decision, pair, validate_fibration};
use crate::padic::{cubic_ramification, rational_cubic, FieldElem, LocalField, PrecisionPolicy, SqrtClass};
use crate::pencil::SIPencil;
use crate::sandwich::{
    fiber_bookkeeping, fixed_points, inose_pencil, involution_fixed_fibers, ramification_index, recover_j_pair,
    si_verdict, JPair, F_VALUES,
};
use crate::symbolic::{check_plus_sign_residual, verified_identities};

pub const PRIMES: [u64; 4] = [5, 7, 11, 13];

/// j-invariants of curves with complex multiplication by orders of class
/// number one.
pub const CM_J: [i64; 13] = [
    0,
    1728,
    -3375,
    8000,
    -32768,
    54000,
    287496,
    -884736,
    -12288000,
    16581375,
    -884736000,
    -147197952000,
    -262537412640768000,
];

/// Corpus sizes and seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub primes: Vec<u64>,
    /// Normalized pencils per prime, for ramification and fixed points.
    pub pencils_per_prime: usize,
    pub cubics_per_prime: usize,
    /// Pencils per prime for the fiber checks: a prefix of the same corpus.
    pub fiber_pencils_per_prime: usize,
    pub twist_curves: usize,
    pub j_pairs: usize,
    pub policy: PrecisionPolicy,
}

impl SuiteConfig {
    /// The sizes of the acceptance run.
    pub fn full(seed: u64) -> Self {
        SuiteConfig {
            seed,
            primes: PRIMES.to_vec(),
            pencils_per_prime: 2500,
            cubics_per_prime: 10_000,
            fiber_pencils_per_prime: 2500,
            twist_curves: 1200,
            j_pairs: 1200,
            policy: PrecisionPolicy::default(),
        }
    }

    /// A fast run for interactive use.
    pub fn quick(seed: u64) -> Self {
        SuiteConfig {
            seed,
            primes: PRIMES.to_vec(),
            pencils_per_prime: 100,
            cubics_per_prime: 500,
            fiber_pencils_per_prime: 25,
            twist_curves: 100,
            j_pairs: 100,
            policy: PrecisionPolicy::default(),
        }
    }

    fn rng(&self, stream: u64) -> StdRng {
        StdRng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ stream)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
    /// First few failing cases.
    pub failures: Vec<String>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} [{}] {}: {} cases; {}",
            self.id, self.name, self.cases, self.detail
        )?;
        for x in &self.failures {
            write!(f, "\n    {x}")?;
        }
        Ok(())
    }
}

/// Collects failures, keeping only the first few messages.
#[derive(Default)]
struct Tally {
    cases: usize,
    failed: usize,
    messages: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.messages.len() < 5 {
                self.messages.push(msg());
            }
        }
    }

    fn report(self, id: u32, name: &'static str, detail: String) -> CriterionReport {
        CriterionReport {
            id,
            name,
            passed: self.failed == 0 && self.cases > 0,
            cases: self.cases,
            detail: format!("{} failed; {detail}", self.failed),
            failures: self.messages,
        }
    }
}

// Corpus generation.

/// `u p^k` with `u` a random nonzero integer and `k` mostly 0.
fn random_coeff(rng: &mut StdRng, p: u64) -> Rational {
    let mut u: i64 = rng.gen_range(1..=40);
    if rng.gen_bool(0.5) {
        u = -u;
    }
    let k = match rng.gen_range(0..10) {
        0..=4 => 0,
        5 | 6 => 1,
        7 => 2,
        8 => 3,
        _ => -1,
    };
    rat(u) * pow_p(p, k)
}

/// A random normalized pencil whose coefficients have varied valuations.
pub fn random_si_pencil(rng: &mut StdRng, p: u64) -> SIPencil {
    let a = if rng.gen_bool(0.25) {
        rat(0)
    } else {
        random_coeff(rng, p)
    };
    let b_0 = if rng.gen_bool(0.25) {
        rat(0)
    } else {
        random_coeff(rng, p)
    };
    let b_1 = random_coeff(rng, p);
    let b_m1 = if rng.gen_bool(0.25) {
        // b' a rational square.
        let r = random_coeff(rng, p);
        &r * &r * &b_1
    } else {
        random_coeff(rng, p)
    };
    SIPencil::new(a, b_m1, b_0, b_1).expect("nonzero b_-1, b_1")
}

/// Pencils whose fiber at `t = beta` is of type I2 or IV: `b' = r^2`, and
/// either `a = -3s^2`, `b_0 + 2 b_1 r = 2s^3` (a node) or `a = 0`,
/// `b_0 = -2 b_1 r` (a cusp).
pub fn singular_si_pencil(rng: &mut StdRng, p: u64) -> SIPencil {
    let r = random_coeff(rng, p);
    let b_1 = random_coeff(rng, p);
    let b_m1 = &r * &r * &b_1;
    let two_b1_r = rat(2) * &b_1 * &r;
    let (a, b_0) = if rng.gen_bool(0.5) {
        let s = random_coeff(rng, p);
        (rat(-3) * &s * &s, rat(2) * s.pow(3) - two_b1_r)
    } else {
        (rat(0), -two_b1_r)
    };
    SIPencil::new(a, b_m1, b_0, b_1).expect("nonzero b_-1, b_1")
}

/// Random pencils at `p`, one in eight forced to have a singular fixed fiber.
pub fn si_corpus(rng: &mut StdRng, p: u64, n: usize) -> Vec<SIPencil> {
    (0..n)
        .map(|i| {
            if i % 8 == 7 {
                singular_si_pencil(rng, p)
            } else {
                random_si_pencil(rng, p)
            }
        })
        .collect()
}

/// Constructed inputs at `p = 5` realizing each admissible `f`.
pub fn f_witnesses() -> Vec<(u32, SIPencil)> {
    [
        (1, (0, 1, 0, 1)),
        (2, (-5, 1, -2, 1)),
        (3, (0, 1, 3, 1)),
        (4, (3, 5, 1, 1)),
        (6, (0, 5, 0, 1)),
    ]
    .into_iter()
    .map(|(f, (a, bm1, b0, b1))| (f, SIPencil::from_ints(a, bm1, b0, b1).expect("witness")))
    .collect()
}

/// Coefficients `(c0, c1, c2)` of a random monic cubic.
pub fn random_cubic(rng: &mut StdRng, p: u64) -> [Rational; 3] {
    let mut c = || {
        if rng.gen_bool(0.15) {
            rat(0)
        } else {
            random_coeff(rng, p)
        }
    };
    let c0 = c();
    let c0 = if c0.is_zero() { rat(1) } else { c0 };
    [c0, c(), c()]
}

/// Cubics with a known splitting-field ramification index.
pub fn oracle_cubics(p: u64) -> Vec<([Rational; 3], u32)> {
    let mut out = Vec::new();
    for u in [1i64, 2, 3, 6] {
        for k in 0..=6i64 {
            // x^3 - u p^k: a cube root of a unit is unramified.
            let e = if k % 3 == 0 { 1 } else { 3 };
            out.push(([-rat(u) * pow_p(p, k), rat(0), rat(0)], e));
            // (x - 1)(x^2 - u p^k), k odd is ramified.
            let d = rat(u) * pow_p(p, k);
            let e = if k % 2 == 1 { 2 } else { 1 };
            out.push(([d.clone(), -d, rat(-1)], e));
        }
    }
    out
}

// Criteria.

pub fn criterion_f_set(cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::default();
    let mut histogram: BTreeMap<u32, usize> = BTreeMap::new();
    for (f, si) in f_witnesses() {
        let got = involution_fixed_fibers(&si, 5, cfg.policy.initial).and_then(|d| ramification_index(&d));
        t.check(matches!(&got, Ok(c) if c.f_total == f), || {
            format!("witness {f}: {si:?} gave {got:?}")
        });
    }
    for &p in &cfg.primes {
        let mut rng = cfg.rng(p);
        for si in si_corpus(&mut rng, p, cfg.pencils_per_prime) {
            let got = cfg
                .policy
                .run(|prec| ramification_index(&involution_fixed_fibers(&si, p, prec)?))
                .map(|(c, _)| c);
            let (ok, beta_class) = match &got {
                Ok(c) => {
                    *histogram.entry(c.f_total).or_default() += 1;
                    let class = involution_fixed_fibers(&si, p, cfg.policy.initial).map(|d| d.beta_class);
                    let shape = match class {
                        Ok(SqrtClass::Square) => [1, 2, 3, 6].contains(&c.f_total),
                        Ok(SqrtClass::RamifiedQuadratic) => c.f_total % 2 == 0 && c.f_plus == c.f_minus,
                        Ok(SqrtClass::UnramifiedQuadratic) => c.f_plus == c.f_minus,
                        Err(_) => false,
                    };
                    (F_VALUES.contains(&c.f_total) && shape, class.ok())
                }
                Err(_) => (false, None),
            };
            t.check(ok, || format!("p = {p}, {si:?}: {got:?}, beta {beta_class:?}"));
        }
    }
    let hist = histogram
        .iter()
        .map(|(f, n)| format!("f={f}: {n}"))
        .collect::<Vec<_>>()
        .join(", ");
    t.report(
        1,
        "f-set certification",
        format!("values seen {{{hist}}}; all five witnesses checked"),
    )
}

pub fn criterion_tame_cubic(cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::default();
    let mut histogram: BTreeMap<u32, usize> = BTreeMap::new();
    let mut oracle_cases = 0;
    for &p in &cfg.primes {
        let field = LocalField::rational(p).expect("supported prime");
        let mut rng = cfg.rng(100 + p);
        for _ in 0..cfg.cubics_per_prime {
            let [c0, c1, c2] = random_cubic(&mut rng, p);
            let got = cubic_ramification(&field, &rational_cubic(&c0, &c1, &c2));
            let ok = match &got {
                Ok(r) => {
                    *histogram.entry(r.e).or_default() += 1;
                    let cyclic = r.root_part != 3 || r.disc_valuation.is_some_and(|v| v % 2 == 0);
                    (1..=3).contains(&r.e) && cyclic
                }
                Err(_) => false,
            };
            t.check(ok, || format!("p = {p}, x^3 + ({c2})x^2 + ({c1})x + ({c0}): {got:?}"));
        }
        for ([c0, c1, c2], e) in oracle_cubics(p) {
            oracle_cases += 1;
            let got = cubic_ramification(&field, &rational_cubic(&c0, &c1, &c2)).map(|r| r.e);
            t.check(got == Ok(e), || {
                format!("oracle p = {p}, ({c0}, {c1}, {c2}): {got:?}, expected {e}")
            });
        }
    }
    let hist = histogram
        .iter()
        .map(|(e, n)| format!("e={e}: {n}"))
        .collect::<Vec<_>>()
        .join(", ");
    t.report(
        2,
        "tame-cubic certification",
        format!("values seen {{{hist}}}; {oracle_cases} constructed-root oracle cubics agree"),
    )
}

pub fn criterion_symbolic(_cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::default();
    for id in verified_identities() {
        t.check(id.holds, || format!("identity failed: {}", id.name));
    }
    let plus = check_plus_sign_residual();
    t.check(plus, || "v = u w + b_1/(2w) did not leave the residual 2 b_1 u".into());
    t.report(
        3,
        "symbolic identities",
        "chain verified with v = u w - b_1/(2w); the + sign leaves exactly 2 b_1 u".into(),
    )
}

pub fn criterion_fibers(cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::default();
    let mut shapes: BTreeMap<String, usize> = BTreeMap::new();
    for &p in &cfg.primes {
        let mut rng = cfg.rng(p);
        for si in si_corpus(&mut rng, p, cfg.fiber_pencils_per_prime) {
            let got = fiber_bookkeeping(&si);
            if let Ok(fb) = &got {
                let key = fb
                    .u_star_fibers
                    .iter()
                    .map(|k| {
                        if let KodairaType::IStar(_) = k {
                            "I*c".to_string()
                        } else {
                            k.to_string()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(",");
                *shapes.entry(key).or_default() += 1;
            }
            t.check(matches!(&got, Ok(fb) if fb.passes()), || format!("{si:?}: {got:?}"));
        }
    }
    let shapes = shapes
        .iter()
        .map(|(k, n)| format!("{{{k}}}: {n}"))
        .collect::<Vec<_>>()
        .join(", ");
    t.report(
        4,
        "fiber bookkeeping",
        format!("u-pencil star fibers {shapes}; Euler sums 24/24/24"),
    )
}

pub fn criterion_lattice(_cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::default();
    let cfg = kummer_config();
    let (d0, dinf) = (d_zero(&cfg), d_infinity(&cfg));
    let w00 = cfg.class("w00").expect("label");
    let checks: [(&str, Result<bool>); 7] = [
        ("D0^2 = 0", pair(&cfg, &d0, &d0).map(|x| x == 0)),
        ("Dinf^2 = 0", pair(&cfg, &dinf, &dinf).map(|x| x == 0)),
        ("D0 . Dinf = 0", pair(&cfg, &d0, &dinf).map(|x| x == 0)),
        ("w00 . D0 = 1", pair(&cfg, &w00, &d0).map(|x| x == 1)),
        ("w00 . Dinf = 1", pair(&cfg, &w00, &dinf).map(|x| x == 1)),
        (
            "D0 and Dinf are IV*",
            cfg.support_config(&d0)
                .and_then(|c| recognize_config(&c))
                .and_then(|k0| {
                    let ki = recognize_config(&cfg.support_config(&dinf)?)?;
                    Ok(k0 == KodairaType::IVStar && ki == KodairaType::IVStar)
                }),
        ),
        (
            "validate_fibration(D0; w00; Dinf)",
            validate_fibration(&cfg, &d0, &w00, std::slice::from_ref(&dinf)).map(|r| r.passes()),
        ),
    ];
    for (name, ok) in checks {
        t.check(matches!(ok, Ok(true)), || format!("{name}: {ok:?}"));
    }
    t.report(5, "lattice checks", "24-curve configuration".into())
}

fn random_unit_curve(rng: &mut StdRng, p: u64) -> (Rational, Rational) {
    loop {
        let a = rat(rng.gen_range(-60..=60));
        let b = rat(rng.gen_range(-60..=60));
        let disc = rat(4) * a.pow(3) + rat(27) * b.pow(2);
        if !disc.is_zero() && valuation(&disc, p) == Some(0) {
            return (a, b);
        }
    }
}

/// A pool of curves of each reduction behaviour at `p`.
fn partner_pool(rng: &mut StdRng, p: u64) -> Vec<WeierstrassCurve> {
    let pp = |k| pow_p(p, k);
    let (a, b) = random_unit_curve(rng, p);
    let n = rat(rng.gen_range(1..=20));
    let specs = [
        (a.clone(), b.clone()),
        (&a * pp(2), &b * pp(3)),
        (rat(0), &n * pp(2)),
        (&n * pp(1), rat(0)),
        (rat(0), &n * pp(1)),
        (&n * pp(3), rat(0)),
        (rat(-3), rat(2) + pp(1)),
    ];
    specs
        .into_iter()
        .filter_map(|(a, b)| WeierstrassCurve::over_qp(p, a, b).ok())
        .collect()
}

fn non_residue(p: u64) -> i64 {
    (2..p as i64)
        .find(|&n| !crate::arith::is_quadratic_residue(&n.into(), p))
        .expect("odd prime has a non-residue")
}

pub fn criterion_twists(cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::default();
    let per_prime = cfg.twist_curves.div_ceil(cfg.primes.len().max(1));
    let mut curves = 0;
    for &p in &cfg.primes {
        let mut rng = cfg.rng(300 + p);
        let twists = [
            FieldElem::rational(pow_p(p, 1)),
            FieldElem::rational(pow_p(p, -1)),
            FieldElem::int(non_residue(p)),
            FieldElem::rational(rat(non_residue(p)) * pow_p(p, 1)),
        ];
        for _ in 0..per_prime {
            let (a, b) = random_unit_curve(&mut rng, p);
            let c = WeierstrassCurve::over_qp(p, a * pow_p(p, 2), b * pow_p(p, 3)).expect("smooth");
            curves += 1;
            let defect = reduction_type(&c).map(|r| r.semistability_defect);
            t.check(defect == Ok(Some(2)), || {
                format!("generator: {c:?} has defect {defect:?}")
            });
            for d in &twists[..2] {
                let good = quadratic_twist(&c, d)
                    .and_then(|tw| reduction_type(&tw))
                    .map(|r| r.good);
                t.check(good == Ok(true), || format!("twist of {c:?} by {d} not good: {good:?}"));
            }
            let pool = partner_pool(&mut rng, p);
            let partner = &pool[rng.gen_range(0..pool.len())];
            let base = kummer_reduction_decision(&c, partner).map(|v| v.outcome);
            let swapped = kummer_reduction_decision(partner, &c).map(|v| v.outcome);
            t.check(base.is_ok() && base == swapped, || {
                format!("asymmetric on {c:?}, {partner:?}")
            });
            for d in &twists {
                let twisted = quadratic_twist(&c, d)
                    .and_then(|c1| Ok((c1, quadratic_twist(partner, d)?)))
                    .and_then(|(c1, c2)| kummer_reduction_decision(&c1, &c2))
                    .map(|v| v.outcome);
                t.check(twisted == base, || {
                    format!("twist by {d} changed {base:?} to {twisted:?}")
                });
            }
        }
    }
    t.report(
        6,
        "twist logic",
        format!("{curves} defect-2 curves; twists by p, 1/p, a non-residue unit and their product"),
    )
}

fn random_j(rng: &mut StdRng) -> Rational {
    match rng.gen_range(0..10) {
        0 => rat(0),
        1 => rat(1728),
        2 => rat(CM_J[rng.gen_range(0..CM_J.len())]),
        _ => ratio(rng.gen_range(-1_000_000..=1_000_000), rng.gen_range(1..=60)),
    }
}

pub fn criterion_round_trip(cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::default();
    let mut rng = cfg.rng(400);
    for _ in 0..cfg.j_pairs {
        let (j1, j2) = (random_j(&mut rng), random_j(&mut rng));
        let got = inose_pencil(&j1, &j2).map(|si| recover_j_pair(&si));
        let expected = JPair::rational(j1.clone(), j2.clone());
        t.check(got.as_ref() == Ok(&expected), || {
            format!("({j1}, {j2}) came back as {got:?}")
        });
    }
    for (x, y) in [(0, 0), (0, 1728), (1728, 1728)] {
        let got = inose_pencil(&rat(x), &rat(y)).map(|si| recover_j_pair(&si));
        t.check(got == Ok(JPair::rational(rat(x), rat(y))), || {
            format!("({x}, {y}): {got:?}")
        });
    }
    let mut cm = 0;
    for (i, &x) in CM_J.iter().enumerate() {
        for &y in &CM_J[i..] {
            for &p in &cfg.primes {
                cm += 1;
                let verdict = inose_pencil(&rat(x), &rat(y)).and_then(|si| si_verdict(&si, p, &cfg.policy));
                t.check(matches!(&verdict, Ok(v) if v.potentially_good), || {
                    format!(
                        "CM pair ({x}, {y}) at p = {p}: {:?}",
                        verdict.as_ref().map(|v| v.potentially_good)
                    )
                });
            }
        }
    }
    t.report(
        7,
        "j-pair round trip",
        format!("{} random pairs; {cm} CM verdicts potentially good", cfg.j_pairs),
    )
}

pub fn criterion_bounds(_cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::default();
    let tb = torsion_bound(22, 3);
    let expected = num_traits::Pow::pow(&num_bigint::BigUint::from(3u32), 484u32);
    t.check(tb.as_ref() == Ok(&expected), || "torsion_bound(22, 3) != 3^484".into());
    let c = si_composite_bound();
    t.check(c.exponent == 1004, || format!("exponent {}", c.exponent));
    t.check(c.within_decimal_bound, || "3^1004 * 8! > 10^484".into());
    t.report(
        8,
        "bound constants",
        format!(
            "3^{} * {} <= 10^{} by exact comparison",
            c.exponent, c.permutations, c.decimal_exponent
        ),
    )
}

pub fn criterion_fixed_points(cfg: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::default();
    let mut singular = 0;
    for &p in &cfg.primes {
        let mut rng = cfg.rng(p);
        for si in si_corpus(&mut rng, p, cfg.pencils_per_prime) {
            let got = cfg.policy.run(|prec| {
                let d = involution_fixed_fibers(&si, p, prec)?;
                let pts = fixed_points(&d)?;
                Ok((d.e_plus.is_singular() || d.e_minus.is_singular(), pts))
            });
            let ok = match &got {
                Ok(((sing, pts), _)) => {
                    singular += *sing as usize;
                    let per = |s: i8| pts.iter().filter(|x| x.fiber == s).count();
                    pts.len() == 8 && per(1) == 4 && per(-1) == 4
                }
                Err(_) => false,
            };
            t.check(ok, || format!("p = {p}, {si:?}: {got:?}"));
        }
    }
    t.report(
        9,
        "fixed-point count",
        format!("{singular} pencils with an I2 or IV fixed fiber"),
    )
}

pub type Criterion = fn(&SuiteConfig) -> CriterionReport;

pub const CRITERIA: [Criterion; 9] = [
    criterion_f_set,
    criterion_tame_cubic,
    criterion_symbolic,
    criterion_fibers,
    criterion_lattice,
    criterion_twists,
    criterion_round_trip,
    criterion_bounds,
    criterion_fixed_points,
];

/// Runs every criterion, each on its own thread; reports come back in order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA.iter().map(|c| s.spawn(move || c(cfg))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion panicked"))
            .collect()
    })
}
