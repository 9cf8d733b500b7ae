//! Geometric graph operations: Minkowski sum, spindling, trimming, circling.
//!
//! Every operation returns a freshly built [`UDGraph`], so edges are always
//! the exact recomputation from the output point set.

use thiserror::Error;

use crate::field::{rat, FieldElem, SqrtError};
use crate::geometry::{dist2, rotate, Point, RotationSpec};
use crate::graph::UDGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpsError {
    #[error("vertex index {0} out of range")]
    NoSuchVertex(usize),
    #[error("spindling needs two distinct vertices")]
    SameVertex,
    #[error("vertices {u} and {v} are closer than 1/2; no unit chord exists")]
    DegeneratePair { u: usize, v: usize },
    /// The spindling angle has no sine in Q(√3, √11).
    #[error("spindling {u}-{v} leaves the coordinate field (sin²θ = {sin2} is not a square)")]
    FieldClosure { u: usize, v: usize, sin2: Box<FieldElem> },
    #[error("negative trimming radius")]
    NegativeRadius,
}

/// `{ p + (v − center) : p ∈ V(g), v ∈ V(h) }` with edges recomputed.
pub fn minkowski_sum(g: &UDGraph, h: &UDGraph, center: usize) -> Result<UDGraph, OpsError> {
    if center >= h.len() {
        return Err(OpsError::NoSuchVertex(center));
    }
    let c = h.vertex(center);
    let shifts: Vec<Point> = h.vertices().iter().map(|v| v.sub(c)).collect();
    let pts = g
        .vertices()
        .iter()
        .flat_map(|p| shifts.iter().map(move |s| p.add(s)));
    Ok(UDGraph::build(pts))
}

/// The rotation about `u` that moves `v` by exactly one, with positive sine.
///
/// With `d² = |u − v|²`, the chord identity `|v′ − v| = 2d·sin(θ/2) = 1`
/// gives `cos θ = 1 − 1/(2d²)`.
pub fn spindle_rotation(g: &UDGraph, u: usize, v: usize) -> Result<RotationSpec, OpsError> {
    if u >= g.len() {
        return Err(OpsError::NoSuchVertex(u));
    }
    if v >= g.len() {
        return Err(OpsError::NoSuchVertex(v));
    }
    if u == v {
        return Err(OpsError::SameVertex);
    }
    let d2 = dist2(g.vertex(u), g.vertex(v));
    // 2d ≥ 1  ⇔  4d² − 1 ≥ 0
    let four_d2 = &FieldElem::from_int(4) * &d2;
    if (&four_d2 - &FieldElem::one()).sign() < 0 {
        return Err(OpsError::DegeneratePair { u, v });
    }
    let two_d2 = &FieldElem::from_int(2) * &d2;
    let cos = &FieldElem::one() - &two_d2.inverse().expect("d² > 0");
    let sin2 = &FieldElem::one() - &(&cos * &cos);
    let sin = match sin2.sqrt() {
        Ok(s) => s,
        Err(SqrtError::NotASquare) | Err(SqrtError::Negative) => {
            return Err(OpsError::FieldClosure {
                u,
                v,
                sin2: Box::new(sin2),
            })
        }
    };
    Ok(RotationSpec::new(cos, sin).expect("cos² + sin² = 1 by construction"))
}

/// Union of `g` and its image under the spindling rotation about `u`.
pub fn spindle(g: &UDGraph, u: usize, v: usize) -> Result<UDGraph, OpsError> {
    let rot = spindle_rotation(g, u, v)?;
    let center = g.vertex(u).clone();
    let image: Vec<Point> = g
        .vertices()
        .iter()
        .map(|p| rotate(p, &center, &rot))
        .collect();
    let moved = &image[v];
    assert_eq!(
        dist2(g.vertex(v), moved),
        FieldElem::one(),
        "spindling must move v by exactly one"
    );
    Ok(UDGraph::build(
        g.vertices().iter().cloned().chain(image),
    ))
}

/// Keeps the vertices with `|v|² ≤ r2`; the boundary circle is kept.
pub fn trim(g: &UDGraph, r2: &FieldElem) -> Result<UDGraph, OpsError> {
    if r2.sign() < 0 {
        return Err(OpsError::NegativeRadius);
    }
    Ok(UDGraph::build(
        g.vertices()
            .iter()
            .filter(|p| (&p.norm2() - r2).sign() <= 0)
            .cloned(),
    ))
}

/// Union of the six rotations of `g` by kπ/3 about the origin.
pub fn circle(g: &UDGraph) -> UDGraph {
    let r = RotationSpec::pi_3();
    let o = Point::origin();
    let mut pts = Vec::with_capacity(g.len() * 6);
    let mut cur: Vec<Point> = g.vertices().to_vec();
    for _ in 0..6 {
        let next = cur.iter().map(|p| rotate(p, &o, &r)).collect();
        pts.append(&mut cur);
        cur = next;
    }
    UDGraph::build(pts)
}

/// Graph on the origin and the given unit vectors.
pub fn star(unit_vectors: &[Point]) -> UDGraph {
    UDGraph::build(std::iter::once(Point::origin()).chain(unit_vectors.iter().cloned()))
}

/// The unit rhombus made of two unit equilateral triangles sharing the edge
/// from the origin to `(1, 0)`.
pub fn unit_rhombus() -> UDGraph {
    let h = FieldElem::from_ratios([(0, 1), (1, 2), (0, 1), (0, 1)]);
    UDGraph::build([
        Point::origin(),
        Point::from_ints(1, 0),
        Point::new(FieldElem::from_rational(rat(1, 2)), h.clone()),
        Point::new(FieldElem::from_rational(rat(1, 2)), -h),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Adjacency;

    fn unit_x() -> UDGraph {
        UDGraph::build([Point::origin(), Point::from_ints(1, 0)])
    }

    fn unit_60() -> UDGraph {
        let r = RotationSpec::pi_3();
        UDGraph::build([
            Point::origin(),
            rotate(&Point::from_ints(1, 0), &Point::origin(), &r),
        ])
    }

    #[test]
    fn minkowski_identity() {
        let g = unit_rhombus();
        let single = UDGraph::build([Point::from_ints(3, 4)]);
        assert_eq!(minkowski_sum(&g, &single, 0).unwrap(), g);
        assert_eq!(minkowski_sum(&g, &single, 1), Err(OpsError::NoSuchVertex(1)));
    }

    #[test]
    fn minkowski_of_two_segments_is_five_edge_rhombus() {
        let h = unit_60();
        let c = h.index_of(&Point::origin()).unwrap();
        let s = minkowski_sum(&unit_x(), &h, c).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.edge_count(), 5);
        assert!(s.len() <= unit_x().len() * h.len());
    }

    /// Rhombus hinged at the origin: 0, (1,0), (1/2, √3/2) and the far vertex
    /// (3/2, √3/2) at distance √3.
    fn hinged_rhombus() -> (UDGraph, Point) {
        let far = Point::new(
            FieldElem::from_rational(rat(3, 2)),
            FieldElem::from_ratios([(0, 1), (1, 2), (0, 1), (0, 1)]),
        );
        let g = UDGraph::build([
            Point::origin(),
            Point::from_ints(1, 0),
            rotate(&Point::from_ints(1, 0), &Point::origin(), &RotationSpec::pi_3()),
            far.clone(),
        ]);
        (g, far)
    }

    #[test]
    fn spindle_rhombus_gives_moser_spindle() {
        let (rh, far) = hinged_rhombus();
        assert_eq!(rh.edge_count(), 5);
        let u = rh.index_of(&Point::origin()).unwrap();
        let v = rh.index_of(&far).unwrap();
        let rot = spindle_rotation(&rh, u, v).unwrap();
        assert_eq!(rot.cos(), &FieldElem::from_rational(rat(5, 6)));
        assert_eq!(
            rot.sin(),
            &FieldElem::from_ratios([(0, 1), (0, 1), (1, 6), (0, 1)])
        );
        let m = spindle(&rh, u, v).unwrap();
        assert_eq!(m.len(), 7);
        assert_eq!(m.edge_count(), 11);
        // the original graph survives as an induced subgraph
        let keep = crate::bitset::Bitset::from_indices(
            m.len(),
            rh.vertices().iter().map(|p| m.index_of(p).unwrap()),
        );
        assert_eq!(m.induced_subgraph(&keep), rh);
    }

    #[test]
    fn quarter_turn_spindle() {
        // d² = 1/2 gives cos θ = 0, sin θ = 1.
        let half = FieldElem::from_rational(rat(1, 2));
        let g = UDGraph::build([Point::origin(), Point::new(half.clone(), half)]);
        let rot = spindle_rotation(&g, 0, 1).unwrap();
        assert!(rot.cos().is_zero());
        assert_eq!(rot.sin(), &FieldElem::one());
        let s = spindle(&g, 0, 1).unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn spindle_errors() {
        let g = UDGraph::build([
            Point::origin(),
            Point::new(FieldElem::one(), FieldElem::one()),
            Point::new(FieldElem::from_rational(rat(1, 3)), FieldElem::zero()),
        ]);
        // d² = 2: cos θ = 3/4, sin² θ = 7/16
        let u = g.index_of(&Point::origin()).unwrap();
        let v = g
            .index_of(&Point::new(FieldElem::one(), FieldElem::one()))
            .unwrap();
        match spindle(&g, u, v) {
            Err(OpsError::FieldClosure { sin2, .. }) => {
                assert_eq!(*sin2, FieldElem::from_rational(rat(7, 16)))
            }
            other => panic!("unexpected {other:?}"),
        }
        let w = g
            .index_of(&Point::new(FieldElem::from_rational(rat(1, 3)), FieldElem::zero()))
            .unwrap();
        assert_eq!(
            spindle(&g, u, w),
            Err(OpsError::DegeneratePair { u, v: w })
        );
        assert_eq!(spindle(&g, u, u), Err(OpsError::SameVertex));
    }

    #[test]
    fn trim_examples() {
        let p3 = UDGraph::build([
            Point::from_ints(0, 0),
            Point::from_ints(1, 0),
            Point::from_ints(2, 0),
        ]);
        let t = trim(&p3, &FieldElem::one()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.vertices(), &[Point::from_ints(0, 0), Point::from_ints(1, 0)]);
        assert_eq!(trim(&p3, &FieldElem::zero()).unwrap().len(), 1);
        assert_eq!(trim(&p3, &FieldElem::from_int(1000)).unwrap(), p3);
        assert_eq!(
            trim(&p3, &FieldElem::from_int(-1)),
            Err(OpsError::NegativeRadius)
        );
    }

    #[test]
    fn circle_examples() {
        let o = UDGraph::build([Point::origin()]);
        assert_eq!(circle(&o), o);
        let hex = circle(&UDGraph::build([Point::from_ints(1, 0)]));
        assert_eq!(hex.len(), 6);
        assert_eq!(hex.edge_count(), 6);
        assert_eq!(circle(&hex), hex);
    }
}
