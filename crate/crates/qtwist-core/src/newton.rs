//! Newton polygons of univariate operators.
//!
//! The polygon of an operator is the convex hull of the points `(a, b)` over
//! all monomials `M^b L^a` occurring in its cleared coefficients; q-exponents
//! are projected out. The lower hull runs between the minimal- and maximal-`a`
//! vertices and consists of non-vertical segments (the two vertical rays at
//! the ends are implicit); the slope set collects the exact rational slopes
//! of those segments. Slopes of operator products add up Minkowski-style:
//! the lower hull of a product is the Minkowski sum of the lower hulls.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;


use crate::error::{Error, Result};
use crate::kernel::Rational;
use crate::ore::OreOperator;

/// Exponent point `(a, b)`: `a` the L-exponent, `b` the M-exponent.
pub type Point = (i64, i64);

/// Convex-hull data of an operator's exponent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Deduplicated exponent points, sorted.
    pub points: Vec<Point>,
    /// Hull vertices in counterclockwise order starting from the
    /// lexicographically smallest vertex; degenerate hulls (a point or a
    /// segment) list one or two vertices.
    pub hull: Vec<Point>,
    /// Lower hull from the minimal-`a` to the maximal-`a` vertex.
    pub lower: Vec<Point>,
    /// Slopes of the non-vertical lower-hull segments.
    pub slopes: BTreeSet<Rational>,
}

impl NewtonPolygon {
    /// Hull of an explicit point set.
    pub fn from_points(points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::ZeroOperator);
        }
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        let lower_raw = lower_chain_raw(&pts);
        let upper_raw = upper_chain_raw(&pts);
        // Counterclockwise hull: lower chain without its last point, then
        // the reversed upper chain without its last point. Vertical edges
        // at the ends come out of the chain overlap.
        let hull = if pts.len() == 1 {
            pts.clone()
        } else {
            let mut h: Vec<Point> = lower_raw[..lower_raw.len() - 1].to_vec();
            h.extend(upper_raw.iter().rev().take(upper_raw.len() - 1));
            h
        };
        let mut lower = lower_raw;
        trim_vertical(&mut lower, true);
        let slopes = chain_slopes(&lower);
        Ok(NewtonPolygon {
            points: pts,
            hull,
            lower,
            slopes,
        })
    }

    /// Vertex set regardless of traversal order.
    pub fn vertex_set(&self) -> BTreeSet<Point> {
        self.hull.iter().copied().collect()
    }

    /// Slopes of the upper hull segments.
    pub fn upper_slopes(&self) -> BTreeSet<Rational> {
        let mut upper = upper_chain_raw(&self.points);
        trim_vertical(&mut upper, false);
        chain_slopes(&upper)
    }
}

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Monotone chain along increasing `a`, keeping strictly convex-downward
/// turns; collinear interior points are dropped. May begin or end with a
/// vertical edge (the extreme column of the point set).
fn lower_chain_raw(sorted: &[Point]) -> Vec<Point> {
    let mut chain: Vec<Point> = Vec::new();
    for &p in sorted {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0 {
            chain.pop();
        }
        chain.push(p);
    }
    chain
}

fn upper_chain_raw(sorted: &[Point]) -> Vec<Point> {
    let mut chain: Vec<Point> = Vec::new();
    for &p in sorted {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) >= 0 {
            chain.pop();
        }
        chain.push(p);
    }
    chain
}

/// Drop a vertical first or last edge from a chain: those are the implicit
/// rays, not hull segments with a slope. The lower chain keeps the lower
/// endpoint of a vertical pair, the upper chain the higher one (the input
/// chains are sorted ascending in `b` within equal `a`).
fn trim_vertical(chain: &mut Vec<Point>, keep_low: bool) {
    while chain.len() >= 2 && chain[0].0 == chain[1].0 {
        chain.remove(if keep_low { 1 } else { 0 });
    }
    while chain.len() >= 2 && chain[chain.len() - 1].0 == chain[chain.len() - 2].0 {
        let n = chain.len();
        chain.remove(if keep_low { n - 1 } else { n - 2 });
    }
}

fn chain_slopes(chain: &[Point]) -> BTreeSet<Rational> {
    chain
        .windows(2)
        .filter(|w| w[1].0 != w[0].0)
        .map(|w| {
            Rational::new(
                crate::kernel::Integer::from(w[1].1 - w[0].1),
                crate::kernel::Integer::from(w[1].0 - w[0].0),
            )
        })
        .collect()
}

fn operator_points(op: &OreOperator) -> Result<Vec<Point>> {
    if op.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let sig = op.signature();
    if sig.r() != 1 {
        return Err(Error::BadSignature(alloc::string::String::from(
            "Newton polygons are defined for univariate operators",
        )));
    }
    let cleared = op.cleared_denominators();
    let mpos = sig.m_pos(0);
    let mut pts = Vec::new();
    for (lexp, c) in cleared.terms() {
        let a = lexp.exp(0) as i64;
        for (m, _) in c.num().terms() {
            pts.push((a, m.exp(mpos) as i64));
        }
    }
    Ok(pts)
}

/// Newton polygon of an operator (q-exponents projected out).
pub fn newton_polygon(op: &OreOperator) -> Result<NewtonPolygon> {
    NewtonPolygon::from_points(&operator_points(op)?)
}

/// Polygon of a possibly inhomogeneous relation: by convention the
/// homogeneous part only, unless `include_rhs` adds the right-hand side's
/// exponents at L-degree zero.
pub fn newton_polygon_with_rhs(
    op: &OreOperator,
    rhs: Option<&OreOperator>,
    include_rhs: bool,
) -> Result<NewtonPolygon> {
    let mut pts = operator_points(op)?;
    if include_rhs {
        if let Some(b) = rhs {
            if !b.is_zero() {
                pts.extend(operator_points(b)?);
            }
        }
    }
    NewtonPolygon::from_points(&pts)
}

/// Slope set of the lower hull.
pub fn slope_set(op: &OreOperator) -> Result<BTreeSet<Rational>> {
    Ok(newton_polygon(op)?.slopes)
}

/// Slope set of the upper hull (the same theory with `q` reversed to `1/q`).
pub fn upper_slopes(op: &OreOperator) -> Result<BTreeSet<Rational>> {
    Ok(newton_polygon(op)?.upper_slopes())
}

/// Minkowski sum of two lower hulls: edges merged by increasing slope. The
/// slope set of the sum is the union of the slope sets.
pub fn minkowski_lower(a: &NewtonPolygon, b: &NewtonPolygon) -> Vec<Point> {
    assert!(!a.lower.is_empty() && !b.lower.is_empty());
    let edges = |chain: &[Point]| -> Vec<(Rational, Point)> {
        chain
            .windows(2)
            .map(|w| {
                let d = (w[1].0 - w[0].0, w[1].1 - w[0].1);
                (
                    Rational::new(
                        crate::kernel::Integer::from(d.1),
                        crate::kernel::Integer::from(d.0),
                    ),
                    d,
                )
            })
            .collect()
    };
    let mut all = edges(&a.lower);
    all.extend(edges(&b.lower));
    all.sort_by(|(s1, _), (s2, _)| s1.cmp(s2));
    let start = (a.lower[0].0 + b.lower[0].0, a.lower[0].1 + b.lower[0].1);
    let mut out = alloc::vec![start];
    let mut cur = start;
    let mut i = 0;
    while i < all.len() {
        // Merge consecutive edges of equal slope into one segment.
        let slope = all[i].0.clone();
        let mut d = (0i64, 0i64);
        while i < all.len() && all[i].0 == slope {
            d.0 += all[i].1 .0;
            d.1 += all[i].1 .1;
            i += 1;
        }
        cur = (cur.0 + d.0, cur.1 + d.1);
        out.push(cur);
    }
    out
}

/// Slopes of a vertex chain (for Minkowski-sum results).
pub fn chain_slope_set(chain: &[Point]) -> BTreeSet<Rational> {
    chain_slopes(chain)
}

impl NewtonPolygon {
    /// True when every slope of `self` also occurs in `other`.
    pub fn slopes_subset_of(&self, other: &NewtonPolygon) -> bool {
        self.slopes.iter().all(|s| other.slopes.contains(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::{coeff_poly, OreAlgebraSignature, OreOperator};

    fn sig() -> OreAlgebraSignature {
        OreAlgebraSignature::univariate()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn single_monomial_is_a_point() {
        let s = sig();
        // M^3 L^2
        let p = &OreOperator::m_pow(&s, 0, 3) * &OreOperator::l_pow(&s, 0, 2);
        let np = newton_polygon(&p).unwrap();
        assert_eq!(np.hull, alloc::vec![(2, 3)]);
        assert!(np.slopes.is_empty());
        assert!(np.upper_slopes().is_empty());
    }

    #[test]
    fn l_plus_m_is_a_segment() {
        let s = sig();
        let p = &OreOperator::l_pow(&s, 0, 1) + &OreOperator::m_pow(&s, 0, 1);
        let np = newton_polygon(&p).unwrap();
        assert_eq!(np.vertex_set(), [(0, 1), (1, 0)].into_iter().collect());
        assert_eq!(np.slopes.iter().cloned().collect::<Vec<_>>(), [rat(-1, 1)]);
    }

    #[test]
    fn upper_hull_of_l_plus_m_plus_one() {
        let s = sig();
        let p = &(&OreOperator::l_pow(&s, 0, 1) + &OreOperator::m_pow(&s, 0, 1))
            + &OreOperator::one(&s);
        let np = newton_polygon(&p).unwrap();
        assert_eq!(
            np.upper_slopes().into_iter().collect::<Vec<_>>(),
            [rat(-1, 1)]
        );
        // lower hull: (0,0) -> (1,0), slope 0
        assert_eq!(np.slopes.iter().cloned().collect::<Vec<_>>(), [rat(0, 1)]);
    }

    #[test]
    fn hexagon_with_known_vertices() {
        // Points of a hexagon: vertex set {(0,2),(1,0),(2,2),(2,5),(1,7),(0,5)}
        let pts = [
            (0, 2),
            (1, 0),
            (2, 2),
            (2, 5),
            (1, 7),
            (0, 5),
            (1, 3), // interior
            (1, 1), // interior
        ];
        let np = NewtonPolygon::from_points(&pts).unwrap();
        assert_eq!(
            np.vertex_set(),
            [(0, 2), (1, 0), (2, 2), (2, 5), (1, 7), (0, 5)]
                .into_iter()
                .collect()
        );
        assert_eq!(np.lower, alloc::vec![(0, 2), (1, 0), (2, 2)]);
        let slopes: Vec<Rational> = np.slopes.iter().cloned().collect();
        assert_eq!(slopes, [rat(-2, 1), rat(2, 1)]);
        let upper: Vec<Rational> = np.upper_slopes().into_iter().collect();
        assert_eq!(upper, [rat(-2, 1), rat(2, 1)]);
    }

    #[test]
    fn minkowski_point_translates() {
        let point = NewtonPolygon::from_points(&[(1, 1)]).unwrap();
        let seg = NewtonPolygon::from_points(&[(0, 2), (1, 0), (2, 2)]).unwrap();
        let sum = minkowski_lower(&point, &seg);
        assert_eq!(sum, alloc::vec![(1, 3), (2, 1), (3, 3)]);
    }

    #[test]
    fn minkowski_slope_union() {
        let a = NewtonPolygon::from_points(&[(0, 2), (1, 0), (2, 2)]).unwrap();
        let b = NewtonPolygon::from_points(&[(0, 0), (3, 0)]).unwrap();
        let sum = minkowski_lower(&a, &b);
        let slopes = chain_slope_set(&sum);
        let expected: BTreeSet<Rational> =
            [rat(-2, 1), rat(0, 1), rat(2, 1)].into_iter().collect();
        assert_eq!(slopes, expected);
    }

    #[test]
    fn product_lower_hull_is_minkowski_sum() {
        let s = sig();
        // A = M L^2 + M^3, B = L + M^2 + 1: compare LN(A*B) with LN(A)+LN(B)
        let a = &(&OreOperator::m_pow(&s, 0, 1) * &OreOperator::l_pow(&s, 0, 2))
            + &OreOperator::m_pow(&s, 0, 3);
        let b = &(&OreOperator::l_pow(&s, 0, 1) + &OreOperator::m_pow(&s, 0, 2))
            + &OreOperator::one(&s);
        let prod = &a * &b;
        let na = newton_polygon(&a).unwrap();
        let nb = newton_polygon(&b).unwrap();
        let nprod = newton_polygon(&prod).unwrap();
        assert_eq!(nprod.lower, minkowski_lower(&na, &nb));
        let _ = coeff_poly(&s, &[(1, &[0, 0])]);
    }

    #[test]
    fn hull_is_order_insensitive() {
        let pts1 = [(0, 2), (1, 0), (2, 2), (1, 7)];
        let mut pts2 = pts1;
        pts2.reverse();
        assert_eq!(
            NewtonPolygon::from_points(&pts1).unwrap(),
            NewtonPolygon::from_points(&pts2).unwrap()
        );
    }

    #[test]
    fn zero_operator_rejected() {
        let s = sig();
        assert!(matches!(
            newton_polygon(&OreOperator::zero(&s)),
            Err(Error::ZeroOperator)
        ));
    }
}
