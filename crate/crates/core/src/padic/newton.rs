use std::fmt;

use crate::arith::Rational;
use crate::error::{Error, Result};

use super::PadicNumber;

/// One edge of a Newton polygon: `length` roots of valuation `slope`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slope {
    pub slope: Rational,
    pub length: usize,
}

impl Slope {
    /// Smallest `e` such that roots of this valuation can live in an
    /// extension of ramification index `e`.
    pub fn denominator(&self) -> u32 {
        u32::try_from(self.slope.denom().clone()).expect("small denominator")
    }
}

/// Lower convex hull of the points `(i, v(c_i))`.
///
/// Slopes are reported as root valuations (the negated edge gradients), in
/// ascending order. A zero constant term is split off as `zero_roots`
/// roots at `x = 0`, which have infinite valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, i64)>,
    pub slopes: Vec<Slope>,
    pub zero_roots: usize,
}

impl NewtonPolygon {
    /// Builds the polygon from coefficient valuations (`None` = zero
    /// coefficient), constant term first.
    pub fn from_valuations(vals: &[Option<i64>]) -> Result<Self> {
        let points: Vec<(usize, i64)> = vals.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i, v))).collect();
        let Some(&(degree, _)) = points.last() else {
            return Err(Error::InvalidInput("Newton polygon of the zero polynomial".into()));
        };
        if degree + 1 != vals.len() {
            return Err(Error::InvalidInput("leading coefficient must be nonzero".into()));
        }
        let zero_roots = points[0].0;

        let mut hull: Vec<(usize, i64)> = Vec::new();
        for &pt in &points {
            while hull.len() >= 2 {
                let (x1, y1) = hull[hull.len() - 2];
                let (x2, y2) = hull[hull.len() - 1];
                // Drop the middle point unless it lies strictly below the chord.
                let cross = (x2 as i64 - x1 as i64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as i64 - x1 as i64);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }

        let mut slopes: Vec<Slope> = hull
            .windows(2)
            .map(|w| {
                let (x1, y1) = w[0];
                let (x2, y2) = w[1];
                Slope {
                    slope: Rational::new((y1 - y2).into(), ((x2 - x1) as i64).into()),
                    length: x2 - x1,
                }
            })
            .collect();
        slopes.sort_by(|a, b| a.slope.cmp(&b.slope));
        Ok(NewtonPolygon {
            vertices: hull,
            slopes,
            zero_roots,
        })
    }

    pub fn degree(&self) -> usize {
        self.zero_roots + self.slopes.iter().map(|s| s.length).sum::<usize>()
    }

    /// Least common multiple of the slope denominators.
    pub fn ramification_bound(&self) -> u32 {
        self.slopes
            .iter()
            .fold(1, |acc, s| crate::arith::lcm(acc, s.denominator()))
    }
}

/// Newton polygon of `sum coeffs[i] x^i`.
pub fn newton_polygon(coeffs: &[PadicNumber]) -> Result<NewtonPolygon> {
    let vals = coeffs.iter().map(|c| c.valuation()).collect::<Result<Vec<_>>>()?;
    if vals.iter().all(Option::is_none) {
        return Err(Error::InvalidInput("all coefficients are zero".into()));
    }
    NewtonPolygon::from_valuations(&vals)
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .slopes
            .iter()
            .map(|s| format!("{} x{}", s.slope, s.length))
            .collect();
        write!(f, "[{}]", parts.join(", "))?;
        if self.zero_roots > 0 {
            write!(f, " + {} root(s) at 0", self.zero_roots)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn poly(coeffs: &[i64], p: u64) -> Vec<PadicNumber> {
        coeffs
            .iter()
            .map(|&c| PadicNumber::from_int(c, p, 32).unwrap())
            .collect()
    }

    #[test]
    fn pure_cube_root_of_p() {
        let np = newton_polygon(&poly(&[-5, 0, 0, 1], 5)).unwrap();
        assert_eq!(
            np.slopes,
            vec![Slope {
                slope: ratio(1, 3),
                length: 3
            }]
        );
        assert_eq!(np.vertices, vec![(0, 1), (3, 0)]);
        assert_eq!(np.ramification_bound(), 3);
    }

    #[test]
    fn zero_constant_term_is_split_off() {
        let np = newton_polygon(&poly(&[0, -1, 0, 1], 5)).unwrap();
        assert_eq!(np.zero_roots, 1);
        assert_eq!(
            np.slopes,
            vec![Slope {
                slope: rat(0),
                length: 2
            }]
        );
        assert_eq!(np.degree(), 3);
    }

    #[test]
    fn unit_coefficients_give_a_flat_polygon() {
        let np = newton_polygon(&poly(&[3, 1, 2, 1], 7)).unwrap();
        assert_eq!(np.slopes.len(), 1);
        assert_eq!(np.slopes[0].slope, rat(0));
    }

    #[test]
    fn slopes_ascend_and_collinear_points_merge() {
        // 25 + 5x + x^2 has all three points on one line.
        let np = newton_polygon(&poly(&[25, 5, 1], 5)).unwrap();
        assert_eq!(np.slopes.len(), 1);
        assert_eq!(
            np.slopes[0],
            Slope {
                slope: rat(1),
                length: 2
            }
        );
        // 125 + x + x^3: roots of valuation 3 and 0 (twice).
        let np = newton_polygon(&poly(&[125, 1, 0, 1], 5)).unwrap();
        let got: Vec<_> = np.slopes.iter().map(|s| (s.slope.clone(), s.length)).collect();
        assert_eq!(got, vec![(rat(0), 2), (rat(3), 1)]);
    }

    #[test]
    fn rejects_zero_and_missing_leading_terms() {
        assert!(newton_polygon(&poly(&[0, 0], 5)).is_err());
        assert!(NewtonPolygon::from_valuations(&[Some(0), None]).is_err());
    }
}
