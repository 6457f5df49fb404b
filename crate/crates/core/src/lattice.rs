//! Configurations of (-2)-curves with an integral intersection pairing.

use std::collections::HashMap;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};

/// Weighted dual graph of smooth rational curves of self-intersection -2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveConfig {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
    multiplicities: Option<Vec<i64>>,
}

impl CurveConfig {
    pub fn new(labels: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = labels.len();
        if gram.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: gram.len(),
            });
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if row[i] != -2 {
                return Err(Error::InvalidInput(format!(
                    "class {} has self-intersection {}",
                    labels[i], row[i]
                )));
            }
            for j in 0..n {
                if j != i && (row[j] < 0 || row[j] != gram[j][i]) {
                    return Err(Error::InvalidInput(format!(
                        "pairing of {} and {} must be symmetric and nonnegative",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate label {l}")));
            }
        }
        Ok(CurveConfig {
            labels,
            gram,
            multiplicities: None,
        })
    }

    /// Builds a configuration from the edges `(i, j, weight)` of its graph.
    pub fn from_edges(labels: Vec<String>, edges: &[(usize, usize, i64)]) -> Result<Self> {
        let n = labels.len();
        let mut gram = vec![vec![0; n]; n];
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = -2;
        }
        for &(i, j, w) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidInput(format!("bad edge ({i}, {j})")));
            }
            gram[i][j] += w;
            gram[j][i] += w;
        }
        Self::new(labels, gram)
    }

    pub fn with_multiplicities(mut self, m: Vec<i64>) -> Result<Self> {
        if m.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: m.len(),
            });
        }
        self.multiplicities = Some(m);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    pub fn multiplicities(&self) -> Option<&[i64]> {
        self.multiplicities.as_deref()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The class of a single curve.
    pub fn class(&self, label: &str) -> Result<DivisorClass> {
        let i = self
            .index_of(label)
            .ok_or_else(|| Error::InvalidInput(format!("unknown class {label}")))?;
        Ok(DivisorClass::basis(self.len(), i))
    }

    /// `sum coeff * class` over `(label, coeff)` pairs.
    pub fn divisor(&self, terms: &[(&str, i64)]) -> Result<DivisorClass> {
        let mut d = DivisorClass::zero(self.len());
        for &(label, c) in terms {
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::InvalidInput(format!("unknown class {label}")))?;
            d.coeffs[i] += c;
        }
        Ok(d)
    }

    pub fn pair(&self, d: &DivisorClass, e: &DivisorClass) -> Result<i64> {
        for x in [d, e] {
            if x.len() != self.len() {
                return Err(Error::DimensionMismatch {
                    expected: self.len(),
                    got: x.len(),
                });
            }
        }
        let mut total = 0;
        for (i, di) in d.coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (j, ej) in e.coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
                total += di * self.gram[i][j] * ej;
            }
        }
        Ok(total)
    }

    /// The sub-configuration on `indices`, in that order.
    pub fn restrict(&self, indices: &[usize]) -> CurveConfig {
        CurveConfig {
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
            gram: indices
                .iter()
                .map(|&i| indices.iter().map(|&j| self.gram[i][j]).collect())
                .collect(),
            multiplicities: self
                .multiplicities
                .as_ref()
                .map(|m| indices.iter().map(|&i| m[i]).collect()),
        }
    }

    /// The configuration of the support of `d`, weighted by its coefficients.
    pub fn support_config(&self, d: &DivisorClass) -> Result<CurveConfig> {
        if d.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: d.len(),
            });
        }
        let support = d.support();
        let m = support.iter().map(|&i| d.coeffs[i]).collect();
        self.restrict(&support).with_multiplicities(m)
    }

    /// Connectedness of the graph whose edges are the positive pairings.
    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for (j, &x) in self.gram[i].iter().enumerate() {
                if !seen[j] && x > 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Number of neighbours counted with intersection weight.
    pub fn weighted_degree(&self, i: usize) -> i64 {
        (0..self.len()).filter(|&j| j != i).map(|j| self.gram[i][j]).sum()
    }

    /// `M * v` for the Gram matrix `M`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.gram
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// An integral combination of the classes of a [`CurveConfig`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    coeffs: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        DivisorClass { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        DivisorClass { coeffs: vec![0; n] }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut d = Self::zero(n);
        d.coeffs[i] = 1;
        d
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.coeffs[i] != 0).collect()
    }

    pub fn scale(&self, k: i64) -> Self {
        DivisorClass::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len(), "divisor dimensions differ");
        DivisorClass::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len(), "divisor dimensions differ");
        DivisorClass::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

/// `D . E` on `cfg`.
pub fn pair(cfg: &CurveConfig, d: &DivisorClass, e: &DivisorClass) -> Result<i64> {
    cfg.pair(d, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("c{i}")).collect()
    }

    #[test]
    fn validation() {
        assert!(CurveConfig::new(labels(2), vec![vec![-2, 1], vec![0, -2]]).is_err());
        assert!(CurveConfig::new(labels(2), vec![vec![-1, 1], vec![1, -2]]).is_err());
        assert!(CurveConfig::new(labels(2), vec![vec![-2, 1]]).is_err());
        assert!(CurveConfig::new(vec!["a".into(), "a".into()], vec![vec![-2, 0], vec![0, -2]]).is_err());
    }

    #[test]
    fn pairing_and_support() {
        let cfg = CurveConfig::from_edges(labels(3), &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let d = cfg.divisor(&[("c0", 1), ("c1", 2)]).unwrap();
        // (c0 + 2c1)^2 = -2 + 4 - 8 = -6.
        assert_eq!(cfg.pair(&d, &d).unwrap(), -6);
        assert_eq!(
            cfg.pair(&d, &DivisorClass::zero(2)),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        );
        let sub = cfg.support_config(&d).unwrap();
        assert_eq!(sub.labels(), ["c0", "c1"]);
        assert_eq!(sub.multiplicities(), Some(&[1, 2][..]));
        assert!(cfg.is_connected());
        assert!(!cfg.restrict(&[0, 2]).is_connected());
    }
}
