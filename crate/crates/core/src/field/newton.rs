//! Newton polygons of polynomials over a number field at a prime.

use num_rational::BigRational;

use super::{FieldElement, NumberField, PrimeIdeal};
use crate::error::{Error, Result};

/// Edge of the lower convex hull between two points `(i, v_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub start: (usize, i64),
    pub end: (usize, i64),
}

impl Segment {
    pub fn length(&self) -> usize {
        self.end.0 - self.start.0
    }

    pub fn slope(&self) -> BigRational {
        BigRational::new(
            (self.end.1 - self.start.1).into(),
            (self.length() as i64).into(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Valuations of the roots with multiplicity: a segment of slope `λ` and
    /// length `ℓ` contributes `ℓ` roots of valuation `-λ`.
    pub fn root_valuations(&self) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = self
            .segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(-s.slope(), s.length()))
            .collect();
        out.sort();
        out
    }

    pub fn vertices(&self) -> Vec<(usize, i64)> {
        let mut v: Vec<(usize, i64)> = self.segments.iter().map(|s| s.start).collect();
        if let Some(s) = self.segments.last() {
            v.push(s.end);
        }
        v
    }

    pub fn has_negative_slope(&self) -> bool {
        self.segments.iter().any(|s| s.end.1 < s.start.1)
    }

    pub fn has_positive_slope(&self) -> bool {
        self.segments.iter().any(|s| s.end.1 > s.start.1)
    }
}

/// Lower convex hull of points sorted by abscissa; collinear points merge.
pub fn newton_polygon_of_points(points: &[(usize, i64)]) -> NewtonPolygon {
    let mut pts = points.to_vec();
    pts.sort();
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &b in &pts {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.0 as i128 - o.0 as i128) * (b.1 as i128 - o.1 as i128)
                - (a.1 as i128 - o.1 as i128) * (b.0 as i128 - o.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(b);
    }
    NewtonPolygon {
        segments: hull
            .windows(2)
            .map(|w| Segment {
                start: w[0],
                end: w[1],
            })
            .collect(),
    }
}

/// Newton polygon of `Σ coeffs[i] y^i` at `P`; zero coefficients are skipped.
pub fn newton_polygon(
    k: &NumberField,
    coeffs: &[FieldElement],
    pr: &PrimeIdeal,
) -> Result<NewtonPolygon> {
    let mut pts = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            pts.push((i, k.valuation(pr, c)?));
        }
    }
    if pts.len() < 2 {
        return Err(Error::invalid("Newton polygon needs two nonzero coefficients"));
    }
    Ok(newton_polygon_of_points(&pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn hull_of_small_examples() {
        // 5x^2 - 4x + 1 at 5: points (0,0), (1,0), (2,1)
        let np = newton_polygon_of_points(&[(0, 0), (1, 0), (2, 1)]);
        assert_eq!(np.segments.len(), 2);
        assert_eq!(np.segments[0].slope(), rat(0, 1));
        assert_eq!(np.segments[1].slope(), rat(1, 1));
        assert_eq!(np.root_valuations(), vec![rat(-1, 1), rat(0, 1)]);
        // collinear points merge into one edge
        let np = newton_polygon_of_points(&[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(np.segments.len(), 1);
        assert_eq!(np.root_valuations(), vec![rat(-1, 1), rat(-1, 1)]);
        // points above the hull are dropped
        let np = newton_polygon_of_points(&[(0, 2), (1, 5), (3, 0)]);
        assert_eq!(np.vertices(), vec![(0, 2), (3, 0)]);
        assert_eq!(np.root_valuations(), vec![rat(2, 3); 3]);
    }
}
