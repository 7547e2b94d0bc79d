//! Newton polygons of polynomials over F.
//!
//! Convention: the polygon is the lower convex hull of the points
//! (i, val a_i). A segment of slope s and horizontal length L accounts for
//! exactly L roots of valuation -s. Roots equal to 0 are counted separately.

use local_field::Q;

use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: Q,
    pub length: usize,
}

impl Segment {
    /// Valuation shared by the roots on this segment.
    pub fn root_valuation(&self) -> Q {
        -self.slope
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Segments left to right, slopes strictly increasing.
    pub segments: Vec<Segment>,
    /// Multiplicity of x = 0 as a root.
    pub zero_roots: usize,
}

/// The polygon cannot be read off from coefficients known only mod t^prec.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Undetermined;

impl NewtonPolygon {
    pub fn of(f: &Poly) -> Self {
        Self::with_precision(f, None).expect("exact coefficients determine the polygon")
    }

    /// Polygon of a polynomial whose coefficients are known mod t^prec
    /// (`None` for exact). A coefficient that reads as zero is then only
    /// known to have valuation >= prec.
    pub fn with_precision(f: &Poly, prec: Option<i64>) -> Result<Self, Undetermined> {
        let pts: Vec<(i64, i64)> = f
            .coeffs()
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.valuation().finite().map(|v| (i as i64, v)))
            .collect();
        let Some(&(first, _)) = pts.first() else {
            return Ok(Self { segments: Vec::new(), zero_roots: 0 });
        };
        let hull = lower_hull(&pts);
        if let Some(prec) = prec {
            if first > 0 {
                return Err(Undetermined);
            }
            for (i, a) in f.coeffs().iter().enumerate() {
                if a.is_zero() && Q::from_integer(prec as i128) < hull_height(&hull, i as i64) {
                    return Err(Undetermined);
                }
            }
        }
        let segments = hull
            .windows(2)
            .map(|w| Segment {
                slope: Q::new((w[1].1 - w[0].1) as i128, (w[1].0 - w[0].0) as i128),
                length: (w[1].0 - w[0].0) as usize,
            })
            .collect();
        Ok(Self { segments, zero_roots: first as usize })
    }

    /// Root valuations with multiplicity, largest first; zero roots as Infinity.
    pub fn root_valuations(&self) -> Vec<(Option<Q>, usize)> {
        let mut out = Vec::new();
        if self.zero_roots > 0 {
            out.push((None, self.zero_roots));
        }
        out.extend(self.segments.iter().map(|s| (Some(s.root_valuation()), s.length)));
        out
    }

    /// Flat list of finite root valuations.
    pub fn finite_root_valuations(&self) -> Vec<Q> {
        self.segments.iter().flat_map(|s| std::iter::repeat(s.root_valuation()).take(s.length)).collect()
    }

    pub fn max_slope(&self) -> Option<Q> {
        self.segments.last().map(|s| s.slope)
    }

    pub fn min_root_valuation(&self) -> Option<Q> {
        self.max_slope().map(|s| -s)
    }

    pub fn max_root_valuation(&self) -> Option<Q> {
        self.segments.first().map(|s| -s.slope)
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

fn lower_hull(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut h: Vec<(i64, i64)> = Vec::new();
    for &pt in pts {
        while h.len() >= 2 && cross(h[h.len() - 2], h[h.len() - 1], pt) <= 0 {
            h.pop();
        }
        h.push(pt);
    }
    h
}

/// Height of the hull above abscissa i (only meaningful inside its range).
fn hull_height(hull: &[(i64, i64)], i: i64) -> Q {
    for w in hull.windows(2) {
        if w[0].0 <= i && i <= w[1].0 {
            let s = Q::new((w[1].1 - w[0].1) as i128, (w[1].0 - w[0].0) as i128);
            return Q::from_integer(w[0].1 as i128) + s * Q::from_integer((i - w[0].0) as i128);
        }
    }
    Q::from_integer(i64::MIN as i128)
}
