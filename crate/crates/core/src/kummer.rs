//! The 24-curve configuration on `Km(C1 x C2)` and the good-reduction
//! decision for Kummer surfaces of products via matched quadratic twists.

use std::fmt;

use crate::arith::lcm;
use crate::elliptic::{quadratic_twist, reduction_type, ReductionReport, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::kodaira::{recognize_config, KodairaType};
use crate::padic::FieldElem;

pub use crate::lattice::{pair, CurveConfig, DivisorClass};

fn u(i: usize) -> String {
    format!("u{i}")
}

fn v(j: usize) -> String {
    format!("v{j}")
}

fn w(i: usize, j: usize) -> String {
    format!("w{i}{j}")
}

/// Index of `w_ij` in [`kummer_config`].
pub fn w_index(i: usize, j: usize) -> usize {
    8 + 4 * i + j
}

/// The curves `u_0..u_3`, `v_0..v_3` (indices 0-7) and `w_00..w_33`
/// (index `8 + 4i + j`): `u_i . w_ij = v_j . w_ij = 1`, other distinct
/// pairs disjoint.
pub fn kummer_config() -> CurveConfig {
    let mut labels: Vec<String> = (0..4).map(u).collect();
    labels.extend((0..4).map(v));
    for i in 0..4 {
        labels.extend((0..4).map(|j| w(i, j)));
    }
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            edges.push((i, w_index(i, j), 1));
            edges.push((4 + j, w_index(i, j), 1));
        }
    }
    CurveConfig::from_edges(labels, &edges).expect("Kummer configuration")
}

/// `D_0 = v_0 + v_1 + v_2 + 2w_30 + 2w_31 + 2w_32 + 3u_3`.
pub fn d_zero(cfg: &CurveConfig) -> DivisorClass {
    cfg.divisor(&[
        ("v0", 1),
        ("v1", 1),
        ("v2", 1),
        ("w30", 2),
        ("w31", 2),
        ("w32", 2),
        ("u3", 3),
    ])
    .expect("Kummer labels")
}

/// `D_inf = u_0 + u_1 + u_2 + 2w_03 + 2w_13 + 2w_23 + 3v_3`.
pub fn d_infinity(cfg: &CurveConfig) -> DivisorClass {
    cfg.divisor(&[
        ("u0", 1),
        ("u1", 1),
        ("u2", 1),
        ("w03", 2),
        ("w13", 2),
        ("w23", 2),
        ("v3", 3),
    ])
    .expect("Kummer labels")
}

/// Checks on one further fiber candidate `D'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OtherFiberCheck {
    pub disjoint_support: bool,
    pub self_intersection: i64,
    pub section_degree: i64,
    pub kodaira: Option<KodairaType>,
}

impl OtherFiberCheck {
    pub fn passes(&self) -> bool {
        self.disjoint_support && self.self_intersection == 0 && self.section_degree == 1 && self.kodaira.is_some()
    }
}

/// Outcome of checking that `D` is a fiber of an elliptic fibration with
/// section `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationReport {
    pub self_intersection: i64,
    pub connected: bool,
    pub effective: bool,
    pub section_degree: i64,
    pub kodaira: Option<KodairaType>,
    pub others: Vec<OtherFiberCheck>,
}

impl FibrationReport {
    pub fn passes(&self) -> bool {
        self.self_intersection == 0
            && self.connected
            && self.effective
            && self.section_degree == 1
            && self.kodaira.is_some()
            && self.others.iter().all(OtherFiberCheck::passes)
    }
}

pub fn validate_fibration(
    cfg: &CurveConfig,
    d: &DivisorClass,
    z: &DivisorClass,
    others: &[DivisorClass],
) -> Result<FibrationReport> {
    let support = cfg.support_config(d)?;
    let kodaira = recognize_config(&support).ok();
    let d_support = d.support();
    let others = others
        .iter()
        .map(|o| {
            let kodaira = recognize_config(&cfg.support_config(o)?).ok();
            let disjoint_support = o
                .support()
                .iter()
                .all(|&i| d_support.iter().all(|&j| i != j && cfg.entry(i, j) == 0));
            Ok(OtherFiberCheck {
                disjoint_support,
                self_intersection: cfg.pair(o, o)?,
                section_degree: cfg.pair(z, o)?,
                kodaira,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FibrationReport {
        self_intersection: cfg.pair(d, d)?,
        connected: support.is_connected(),
        effective: d.is_effective() && !d.is_empty(),
        section_degree: cfg.pair(z, d)?,
        kodaira,
        others,
    })
}

/// Twist-invariant classification of `Km(C1 x C2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KummerOutcome {
    /// Good reduction over an unramified extension, possibly after twisting
    /// both curves by the same ramified quadratic character.
    GoodOverUnramified,
    /// Both curves are potentially good but no common quadratic twist makes
    /// both good; `e` is the smallest ramification achievable that way.
    NeedsDeeperExtension {
        e: u32,
    },
    NotPotentiallyGood,
}

impl fmt::Display for KummerOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KummerOutcome::GoodOverUnramified => write!(f, "good-over-unramified"),
            KummerOutcome::NeedsDeeperExtension { e: 2 } => write!(f, "needs-quadratic"),
            KummerOutcome::NeedsDeeperExtension { e } => write!(f, "needs-deeper-extension({e})"),
            KummerOutcome::NotPotentiallyGood => write!(f, "not-potentially-good"),
        }
    }
}

/// The common twist achieving the outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatchedTwist {
    Trivial,
    /// Twist of both curves by a uniformizer.
    RamifiedQuadratic,
}

impl fmt::Display for MatchedTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchedTwist::Trivial => write!(f, "none"),
            MatchedTwist::RamifiedQuadratic => write!(f, "ramified-quadratic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerVerdict {
    pub outcome: KummerOutcome,
    /// `None` when neither twist class helps.
    pub witness: Option<MatchedTwist>,
    pub reports: [ReductionReport; 2],
}

impl KummerVerdict {
    /// The taxonomy label: distinguishes a good verdict reached only after
    /// the matched ramified twist.
    pub fn label(&self) -> String {
        match (self.outcome, self.witness) {
            (KummerOutcome::GoodOverUnramified, Some(MatchedTwist::RamifiedQuadratic)) => {
                "good-after-matched-ramified-quadratic-twist".into()
            }
            (outcome, _) => outcome.to_string(),
        }
    }
}

/// Decides good reduction of `Km(C1 x C2)` over an unramified extension.
///
/// `Km(A)` and `Km(A')` coincide for quadratic twists `A'` of `A = C1 x C2`,
/// and unit twists are absorbed by unramified extensions, so the twist classes
/// `d in {1, pi}` are the only ones to try. The outcome is the least
/// `lcm(defect(C1^d), defect(C2^d))`; 1 means good.
pub fn kummer_reduction_decision(c1: &WeierstrassCurve, c2: &WeierstrassCurve) -> Result<KummerVerdict> {
    if !c1.field().same_field(c2.field()) {
        return Err(Error::FieldMismatch);
    }
    let reports = [reduction_type(c1)?, reduction_type(c2)?];
    if reports.iter().any(|r| !r.potentially_good) {
        return Ok(KummerVerdict {
            outcome: KummerOutcome::NotPotentiallyGood,
            witness: None,
            reports,
        });
    }
    let pi = c1.field().uniformizer();
    let defect = |r: &ReductionReport| r.semistability_defect.expect("potentially good");
    let candidates = [
        (MatchedTwist::Trivial, lcm(defect(&reports[0]), defect(&reports[1]))),
        (MatchedTwist::RamifiedQuadratic, twisted_defect(c1, c2, &pi)?),
    ];
    let (witness, e) = *candidates.iter().min_by_key(|(_, e)| *e).expect("two candidates");
    let outcome = if e == 1 {
        KummerOutcome::GoodOverUnramified
    } else {
        KummerOutcome::NeedsDeeperExtension { e }
    };
    Ok(KummerVerdict {
        outcome,
        witness: (e == 1).then_some(witness),
        reports,
    })
}

fn twisted_defect(c1: &WeierstrassCurve, c2: &WeierstrassCurve, d: &FieldElem) -> Result<u32> {
    let r1 = reduction_type(&quadratic_twist(c1, d)?)?;
    let r2 = reduction_type(&quadratic_twist(c2, d)?)?;
    Ok(lcm(
        r1.semistability_defect.expect("twists keep j"),
        r2.semistability_defect.expect("twists keep j"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn configuration_entries() {
        let cfg = kummer_config();
        assert_eq!(cfg.len(), 24);
        let ix = |l: &str| cfg.index_of(l).unwrap();
        assert_eq!(cfg.entry(ix("u0"), ix("w00")), 1);
        assert_eq!(cfg.entry(ix("u0"), ix("v0")), 0);
        assert_eq!(cfg.entry(ix("w00"), ix("w00")), -2);
        assert_eq!(ix("w21"), w_index(2, 1));
        // Every w meets exactly one u and one v; every u and v meets four w.
        for i in 0..24 {
            assert_eq!(cfg.weighted_degree(i), if i < 8 { 4 } else { 2 });
        }
    }

    #[test]
    fn fiber_divisors() {
        let cfg = kummer_config();
        let (d0, dinf) = (d_zero(&cfg), d_infinity(&cfg));
        let w00 = cfg.class("w00").unwrap();
        assert_eq!(pair(&cfg, &d0, &d0).unwrap(), 0);
        assert_eq!(pair(&cfg, &dinf, &dinf).unwrap(), 0);
        assert_eq!(pair(&cfg, &d0, &dinf).unwrap(), 0);
        assert_eq!(pair(&cfg, &w00, &d0).unwrap(), 1);
        assert_eq!(pair(&cfg, &w00, &dinf).unwrap(), 1);
        let report = validate_fibration(&cfg, &d0, &w00, &[dinf]).unwrap();
        assert!(report.passes(), "{report:?}");
        assert_eq!(report.kodaira, Some(KodairaType::IVStar));
        assert_eq!(report.others[0].kodaira, Some(KodairaType::IVStar));
    }

    #[test]
    fn failing_fibrations() {
        let cfg = kummer_config();
        let w00 = cfg.class("w00").unwrap();
        let bigger = &d_zero(&cfg) + &cfg.class("u0").unwrap();
        let r = validate_fibration(&cfg, &bigger, &w00, &[]).unwrap();
        assert!(!r.passes());
        assert_ne!(r.self_intersection, 0);
        let r = validate_fibration(&cfg, &w00, &w00, &[]).unwrap();
        assert_eq!(r.self_intersection, -2);
        assert!(!r.passes());
        // D_inf shares no curve with D_0 but u_0 + ... overlaps D_0 + u_0.
        let r = validate_fibration(&cfg, &d_zero(&cfg), &w00, &[d_zero(&cfg)]).unwrap();
        assert!(!r.others[0].disjoint_support);
    }

    fn curve(a: i64, b: i64) -> WeierstrassCurve {
        WeierstrassCurve::over_qp(5, rat(a), rat(b)).unwrap()
    }

    #[test]
    fn decision_examples() {
        let good = curve(1, 1);
        let istar = curve(25, 125);
        let v = kummer_reduction_decision(&good, &good).unwrap();
        assert_eq!(
            (v.outcome, v.witness),
            (KummerOutcome::GoodOverUnramified, Some(MatchedTwist::Trivial))
        );
        let v = kummer_reduction_decision(&istar, &istar).unwrap();
        assert_eq!(v.outcome, KummerOutcome::GoodOverUnramified);
        assert_eq!(v.witness, Some(MatchedTwist::RamifiedQuadratic));
        assert_eq!(v.label(), "good-after-matched-ramified-quadratic-twist");
        let v = kummer_reduction_decision(&good, &istar).unwrap();
        assert_eq!(v.outcome, KummerOutcome::NeedsDeeperExtension { e: 2 });
        assert_eq!(v.label(), "needs-quadratic");
        let v = kummer_reduction_decision(&good, &curve(-3, 7)).unwrap();
        assert_eq!(v.outcome, KummerOutcome::NotPotentiallyGood);
    }

    #[test]
    fn decision_is_symmetric_and_twist_invariant() {
        let curves = [
            curve(1, 1),
            curve(25, 125),
            curve(0, 5),
            curve(5, 0),
            curve(0, 25),
            curve(-3, 7),
        ];
        for c1 in &curves {
            for c2 in &curves {
                let v = kummer_reduction_decision(c1, c2).unwrap();
                assert_eq!(kummer_reduction_decision(c2, c1).unwrap().outcome, v.outcome);
                for d in [2, 5, 10, 3] {
                    let d = FieldElem::int(d);
                    let t1 = quadratic_twist(c1, &d).unwrap();
                    let t2 = quadratic_twist(c2, &d).unwrap();
                    assert_eq!(kummer_reduction_decision(&t1, &t2).unwrap().outcome, v.outcome);
                }
            }
        }
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let k = crate::padic::LocalField::rational(7).unwrap();
        let c = WeierstrassCurve::new(&k, FieldElem::int(1), FieldElem::int(1)).unwrap();
        assert_eq!(kummer_reduction_decision(&curve(1, 1), &c), Err(Error::FieldMismatch));
    }
}
