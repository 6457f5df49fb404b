//! Kodaira fiber types for residue characteristic at least 5.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::CurveConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    /// `I_n`; `I_0` is a smooth fiber.
    I(u32),
    II,
    III,
    IV,
    /// `I*_n`.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub const I0: KodairaType = KodairaType::I(0);

    pub fn euler_number(self) -> u32 {
        match self {
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Number of irreducible components.
    pub fn components(self) -> u32 {
        match self {
            KodairaType::I(0) | KodairaType::I(1) | KodairaType::II => 1,
            KodairaType::I(n) => n,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IStar(n) => n + 5,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    pub fn is_good(self) -> bool {
        self == KodairaType::I0
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, KodairaType::I(n) if n > 0)
    }

    pub fn is_additive(self) -> bool {
        !matches!(self, KodairaType::I(_))
    }

    pub fn is_star(self) -> bool {
        matches!(
            self,
            KodairaType::IStar(_) | KodairaType::IVStar | KodairaType::IIIStar | KodairaType::IIStar
        )
    }

    /// Standard dual graph with fiber multiplicities. `None` for the
    /// irreducible fibers `I_0`, `I_1`, `II`.
    pub fn standard_config(self) -> Option<CurveConfig> {
        let (n, edges, mult): (usize, Vec<(usize, usize, i64)>, Vec<i64>) = match self {
            KodairaType::I(0) | KodairaType::I(1) | KodairaType::II => return None,
            KodairaType::I(2) | KodairaType::III => (2, vec![(0, 1, 2)], vec![1, 1]),
            KodairaType::I(n) => {
                let n = n as usize;
                (n, (0..n).map(|i| (i, (i + 1) % n, 1)).collect(), vec![1; n])
            }
            KodairaType::IV => (3, vec![(0, 1, 1), (1, 2, 1), (2, 0, 1)], vec![1; 3]),
            KodairaType::IStar(k) => {
                // Chain 0..=k of multiplicity 2, leaves k+1, k+2 at 0 and k+3, k+4 at k.
                let k = k as usize;
                let mut edges: Vec<_> = (0..k).map(|i| (i, i + 1, 1)).collect();
                edges.extend([(k + 1, 0, 1), (k + 2, 0, 1), (k + 3, k, 1), (k + 4, k, 1)]);
                let mut mult = vec![2; k + 1];
                mult.extend([1, 1, 1, 1]);
                (k + 5, edges, mult)
            }
            KodairaType::IVStar => (
                7,
                vec![(0, 1, 1), (1, 2, 1), (0, 3, 1), (3, 4, 1), (0, 5, 1), (5, 6, 1)],
                vec![3, 2, 1, 2, 1, 2, 1],
            ),
            KodairaType::IIIStar => (
                8,
                vec![
                    (0, 1, 1),
                    (1, 2, 1),
                    (2, 3, 1),
                    (3, 4, 1),
                    (4, 5, 1),
                    (5, 6, 1),
                    (3, 7, 1),
                ],
                vec![1, 2, 3, 4, 3, 2, 1, 2],
            ),
            KodairaType::IIStar => (
                9,
                vec![
                    (0, 1, 1),
                    (1, 2, 1),
                    (2, 3, 1),
                    (3, 4, 1),
                    (4, 5, 1),
                    (5, 6, 1),
                    (6, 7, 1),
                    (5, 8, 1),
                ],
                vec![1, 2, 3, 4, 5, 6, 4, 2, 3],
            ),
        };
        let labels = (0..n).map(|i| format!("theta{i}")).collect();
        let cfg = CurveConfig::from_edges(labels, &edges).expect("standard graph");
        Some(cfg.with_multiplicities(mult).expect("standard multiplicities"))
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I*{n}"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown Kodaira type {s:?}"));
        let index = |digits: &str| {
            let digits = digits.trim_start_matches('(').trim_end_matches(')');
            digits.parse::<u32>().map_err(|_| bad())
        };
        Ok(match s {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ if s.starts_with("I*") => KodairaType::IStar(index(&s[2..])?),
            _ if s.starts_with('I') => KodairaType::I(index(&s[1..])?),
            _ => return Err(bad()),
        })
    }
}

/// Valuations of `c4`, `c6` and the discriminant at one place; `None` means
/// the quantity vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalInvariants {
    pub vc4: Option<i64>,
    pub vc6: Option<i64>,
    pub vdelta: i64,
}

impl LocalInvariants {
    pub fn new(vc4: Option<i64>, vc6: Option<i64>, vdelta: i64) -> Self {
        LocalInvariants { vc4, vc6, vdelta }
    }

    pub fn is_minimal(&self) -> bool {
        !(self.vc4.is_none_or(|v| v >= 4) && self.vc6.is_none_or(|v| v >= 6))
    }

    fn describe(v: Option<i64>) -> String {
        v.map_or_else(|| "inf".to_string(), |v| v.to_string())
    }

    fn errors(&self) -> (String, String, String) {
        (
            Self::describe(self.vc4),
            Self::describe(self.vc6),
            self.vdelta.to_string(),
        )
    }

    /// Checks the triple against `1728 D = c4^3 - c6^2`.
    pub fn check_consistent(&self) -> Result<()> {
        let three = self.vc4.map(|v| 3 * v);
        let two = self.vc6.map(|v| 2 * v);
        let ok = self.vdelta >= 0
            && match (three, two) {
                (None, None) => false,
                (Some(x), None) | (None, Some(x)) => self.vdelta == x,
                (Some(x), Some(y)) if x != y => self.vdelta == x.min(y),
                (Some(x), Some(_)) => self.vdelta >= x,
            };
        if ok {
            Ok(())
        } else {
            let (vc4, vc6, vdelta) = self.errors();
            Err(Error::InconsistentInvariants { vc4, vc6, vdelta })
        }
    }
}

/// Kodaira type of a minimal model from `(v(c4), v(c6), v(D))`, `p >= 5`.
pub fn classify_from_invariants(inv: LocalInvariants) -> Result<KodairaType> {
    inv.check_consistent()?;
    if !inv.is_minimal() {
        let (vc4, vc6, vdelta) = inv.errors();
        return Err(Error::NonMinimal { vc4, vc6, vdelta });
    }
    let d = inv.vdelta;
    if d == 0 {
        return Ok(KodairaType::I0);
    }
    if inv.vc4 == Some(0) {
        return Ok(KodairaType::I(d as u32));
    }
    let t = match d {
        2 => KodairaType::II,
        3 => KodairaType::III,
        4 => KodairaType::IV,
        6 => KodairaType::IStar(0),
        _ if inv.vc4 == Some(2) && inv.vc6 == Some(3) => KodairaType::IStar((d - 6) as u32),
        8 => KodairaType::IVStar,
        9 => KodairaType::IIIStar,
        10 => KodairaType::IIStar,
        _ => {
            let (vc4, vc6, vdelta) = inv.errors();
            return Err(Error::InconsistentInvariants { vc4, vc6, vdelta });
        }
    };
    Ok(t)
}

pub fn euler_number(t: KodairaType) -> u32 {
    t.euler_number()
}

/// The Kodaira type whose dual graph and multiplicities match `cfg`.
///
/// The graphs of `I_2` and `III`, and of `I_3` and `IV`, coincide; the
/// multiplicative reading is returned. Without multiplicities only the graph
/// is compared.
pub fn recognize_config(cfg: &CurveConfig) -> Result<KodairaType> {
    let n = cfg.len() as u32;
    if n < 2 {
        return Err(Error::NotKodaira(
            "fewer than two (-2)-curves; irreducible fibers have no such graph".into(),
        ));
    }
    if !cfg.is_connected() {
        return Err(Error::NotKodaira("configuration is not connected".into()));
    }
    let mut candidates = vec![KodairaType::I(n)];
    if n >= 5 {
        candidates.push(KodairaType::IStar(n - 5));
    }
    match n {
        7 => candidates.push(KodairaType::IVStar),
        8 => candidates.push(KodairaType::IIIStar),
        9 => candidates.push(KodairaType::IIStar),
        _ => {}
    }
    for t in candidates {
        let std = t.standard_config().expect("reducible type");
        if let Some(mult) = match_graphs(&std, cfg) {
            if cfg.apply(&mult).iter().any(|&x| x != 0) {
                return Err(Error::NotKodaira(format!(
                    "graph of {t} but the multiplicities are not a fiber class"
                )));
            }
            return Ok(t);
        }
    }
    Err(Error::NotKodaira(format!(
        "no affine Dynkin diagram on {n} vertices matches"
    )))
}

/// An isomorphism from `std` onto `cfg` that respects multiplicities when
/// `cfg` has them; returns the multiplicities transported to `cfg`.
fn match_graphs(std: &CurveConfig, cfg: &CurveConfig) -> Option<Vec<i64>> {
    let n = std.len();
    if cfg.len() != n {
        return None;
    }
    let std_mult = std.multiplicities().expect("standard multiplicities");
    let target_mult = cfg.multiplicities();
    let signature = |c: &CurveConfig, i: usize| c.weighted_degree(i);
    let mut a: Vec<i64> = (0..n).map(|i| signature(std, i)).collect();
    let mut b: Vec<i64> = (0..n).map(|i| signature(cfg, i)).collect();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        k: usize,
        std: &CurveConfig,
        cfg: &CurveConfig,
        std_mult: &[i64],
        target_mult: Option<&[i64]>,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = std.len();
        if k == n {
            return true;
        }
        for j in 0..n {
            if used[j] || std.weighted_degree(k) != cfg.weighted_degree(j) {
                continue;
            }
            if target_mult.is_some_and(|m| m[j] != std_mult[k]) {
                continue;
            }
            if (0..k).any(|i| std.entry(i, k) != cfg.entry(map[i], j)) {
                continue;
            }
            map[k] = j;
            used[j] = true;
            if extend(k + 1, std, cfg, std_mult, target_mult, map, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    if !extend(0, std, cfg, std_mult, target_mult, &mut map, &mut used) {
        return None;
    }
    let mut mult = vec![0; n];
    for (k, &j) in map.iter().enumerate() {
        mult[j] = std_mult[k];
    }
    Some(mult)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<KodairaType> {
        let mut v = vec![
            KodairaType::II,
            KodairaType::III,
            KodairaType::IV,
            KodairaType::IVStar,
            KodairaType::IIIStar,
            KodairaType::IIStar,
        ];
        v.extend((0..12).map(KodairaType::I));
        v.extend((0..8).map(KodairaType::IStar));
        v
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(euler_number(KodairaType::IIStar), 10);
        assert_eq!(24 - 2 * euler_number(KodairaType::IIStar), 4);
        assert_eq!(euler_number(KodairaType::I0), 0);
        assert_eq!(euler_number(KodairaType::IStar(0)), 6);
        let u_fibration = [KodairaType::IIStar, KodairaType::IStar(0), KodairaType::IVStar];
        assert_eq!(u_fibration.iter().map(|t| t.euler_number()).sum::<u32>(), 24);
    }

    #[test]
    fn table_examples() {
        let c = |a, b, d| classify_from_invariants(LocalInvariants::new(a, b, d));
        assert_eq!(c(Some(3), Some(4), 8).unwrap(), KodairaType::IVStar);
        assert_eq!(c(None, Some(4), 8).unwrap(), KodairaType::IVStar);
        assert_eq!(c(Some(4), Some(5), 10).unwrap(), KodairaType::IIStar);
        assert_eq!(c(Some(0), Some(0), 0).unwrap(), KodairaType::I0);
        assert_eq!(c(Some(0), Some(0), 5).unwrap(), KodairaType::I(5));
        assert_eq!(c(Some(2), Some(3), 6).unwrap(), KodairaType::IStar(0));
        assert_eq!(c(Some(2), Some(3), 9).unwrap(), KodairaType::IStar(3));
        assert_eq!(c(Some(1), Some(2), 3).unwrap(), KodairaType::III);
        assert_eq!(c(Some(3), Some(5), 9).unwrap(), KodairaType::IIIStar);
        assert!(matches!(c(Some(4), Some(6), 12), Err(Error::NonMinimal { .. })));
        assert!(matches!(
            c(Some(1), Some(1), 5),
            Err(Error::InconsistentInvariants { .. })
        ));
        assert!(matches!(
            c(Some(0), Some(1), 1),
            Err(Error::InconsistentInvariants { .. })
        ));
    }

    /// Exhaustive over the consistent minimal triples with small entries.
    #[test]
    fn table_is_total_on_consistent_minimal_triples() {
        let vals = || std::iter::once(None).chain((0..9).map(Some));
        let mut seen = 0;
        for a in vals() {
            for b in vals() {
                for d in 0..24 {
                    let inv = LocalInvariants::new(a, b, d);
                    if inv.check_consistent().is_err() || !inv.is_minimal() {
                        continue;
                    }
                    let t = classify_from_invariants(inv).unwrap();
                    seen += 1;
                    if t.is_additive() {
                        assert!(t.euler_number() as i64 == d);
                    } else {
                        assert_eq!(t, KodairaType::I(d as u32));
                    }
                }
            }
        }
        assert!(seen > 50);
    }

    #[test]
    fn display_and_parse_round_trip() {
        for t in all_types() {
            assert_eq!(t.to_string().parse::<KodairaType>().unwrap(), t);
        }
        assert_eq!("I*2".parse::<KodairaType>().unwrap(), KodairaType::IStar(2));
        assert_eq!("I(3)".parse::<KodairaType>().unwrap(), KodairaType::I(3));
        assert!("V".parse::<KodairaType>().is_err());
    }

    #[test]
    fn standard_graphs_are_fibers() {
        for t in all_types() {
            let Some(cfg) = t.standard_config() else {
                assert!(t.components() == 1);
                continue;
            };
            assert_eq!(cfg.len() as u32, t.components());
            let m = cfg.multiplicities().unwrap();
            assert!(cfg.apply(m).iter().all(|&x| x == 0), "{t}");
            let got = recognize_config(&cfg).unwrap();
            // III and IV share the dual graphs of I2 and I3.
            match t {
                KodairaType::III => assert_eq!(got, KodairaType::I(2)),
                KodairaType::IV => assert_eq!(got, KodairaType::I(3)),
                _ => {
                    assert_eq!(got, t);
                    assert_eq!(got.euler_number(), t.euler_number());
                }
            }
        }
    }

    #[test]
    fn recognizes_e8_chain_and_two_cycle() {
        // Relabelled with the trivalent vertex first; branches 5-4-3-2-1, 4-2 and 3.
        let labels: Vec<String> = (0..9).map(|i| format!("x{i}")).collect();
        let edges = [
            (0, 1, 1),
            (1, 4, 1),
            (4, 5, 1),
            (5, 6, 1),
            (6, 7, 1),
            (0, 2, 1),
            (2, 8, 1),
            (0, 3, 1),
        ];
        let cfg = CurveConfig::from_edges(labels, &edges)
            .unwrap()
            .with_multiplicities(vec![6, 5, 4, 3, 4, 3, 2, 1, 2])
            .unwrap();
        let m = cfg.multiplicities().unwrap().to_vec();
        assert!(cfg.apply(&m).iter().all(|&x| x == 0));
        assert_eq!(recognize_config(&cfg).unwrap(), KodairaType::IIStar);

        let two = CurveConfig::from_edges(vec!["a".into(), "b".into()], &[(0, 1, 2)]).unwrap();
        assert_eq!(recognize_config(&two).unwrap(), KodairaType::I(2));
    }

    #[test]
    fn rejects_non_fibers() {
        let chain = CurveConfig::from_edges((0..3).map(|i| i.to_string()).collect(), &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(recognize_config(&chain).is_err());
        let wrong = KodairaType::IVStar
            .standard_config()
            .unwrap()
            .with_multiplicities(vec![3, 2, 1, 2, 1, 1, 2])
            .unwrap();
        assert!(recognize_config(&wrong).is_err());
    }
}
