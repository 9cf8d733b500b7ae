//! The published 102-vertex sector list and the 607-vertex circled graph.

use thiserror::Error;

use crate::field::{FieldElem, FieldError};
use crate::geometry::Point;
use crate::graph::UDGraph;
use crate::ops::circle;

/// Vertex list in the printed quadruple-pair notation, one point per line.
pub const FINAL_102_TEXT: &str = include_str!("../data/final_102.txt");

pub const FINAL_102_COUNT: usize = 102;
pub const FINAL_GRAPH_ORDER: usize = 607;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: FieldError },
    #[error("expected {expected} vertices, found {found}")]
    VertexCount { expected: usize, found: usize },
    #[error("{} points outside the sector [0, π/3): {offenders:?}", offenders.len())]
    PolarAngle { offenders: Vec<usize> },
}

/// Parses a vertex list: one `((a, b, c, d), (a, b, c, d))` per line,
/// trailing `,` or `.` allowed, blank lines and `#` comments skipped.
pub fn parse_point_list(text: &str) -> Result<Vec<Point>, DatasetError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let p = t
            .parse::<Point>()
            .map_err(|source| DatasetError::Parse { line: i + 1, source })?;
        out.push(p);
    }
    Ok(out)
}

pub fn format_point_list(points: &[Point]) -> String {
    let mut s = String::new();
    for p in points {
        s.push_str(&p.to_string());
        s.push('\n');
    }
    s
}

/// The 102 sector vertices, in printed order.
pub fn final_102() -> Vec<Point> {
    parse_point_list(FINAL_102_TEXT).expect("embedded vertex list parses")
}

/// Circled graph of the sector vertices; must have 607 vertices.
pub fn final_graph() -> Result<UDGraph, DatasetError> {
    graph_from_sector(&final_102())
}

pub fn graph_from_sector(points: &[Point]) -> Result<UDGraph, DatasetError> {
    if points.len() != FINAL_102_COUNT {
        return Err(DatasetError::VertexCount {
            expected: FINAL_102_COUNT,
            found: points.len(),
        });
    }
    let g = circle(&UDGraph::build(points.iter().cloned()));
    if g.len() != FINAL_GRAPH_ORDER {
        return Err(DatasetError::VertexCount {
            expected: FINAL_GRAPH_ORDER,
            found: g.len(),
        });
    }
    Ok(g)
}

/// True when `p` is the origin or has polar angle in `[0, π/3)`.
pub fn in_sector(p: &Point) -> bool {
    if p.is_origin() {
        return true;
    }
    // y ≥ 0 and √3·x − y > 0
    let sqrt3 = FieldElem::from_ratios([(0, 1), (1, 1), (0, 1), (0, 1)]);
    p.y.sign() >= 0 && (&(&sqrt3 * &p.x) - &p.y).sign() > 0
}

/// Checks every non-origin point lies in the sector `[0, π/3)`, listing
/// the indices of offenders.
pub fn polar_angle_check(points: &[Point]) -> Result<(), DatasetError> {
    let offenders: Vec<usize> = points
        .iter()
        .enumerate()
        .filter(|(_, p)| !in_sector(p))
        .map(|(i, _)| i)
        .collect();
    if offenders.is_empty() {
        Ok(())
    } else {
        Err(DatasetError::PolarAngle { offenders })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rotate, RotationSpec};
    use num_traits::Zero;

    #[test]
    fn list_entries() {
        let pts = final_102();
        assert_eq!(pts.len(), 102);
        assert_eq!(pts[0], Point::origin());
        assert_eq!(
            pts[1],
            Point::new(
                FieldElem::from_ratios([(1, 2), (0, 1), (0, 1), (-1, 6)]),
                FieldElem::zero()
            )
        );
        // √33 terms occur only in x, √11 only in y
        for p in &pts {
            assert!(p.x.b.is_zero() && p.x.c.is_zero());
            assert!(p.y.a.is_zero() && p.y.d.is_zero());
        }
    }

    #[test]
    fn sector_check() {
        let pts = final_102();
        // four printed points lie on the ray at angle π/3 and one at angle π
        match polar_angle_check(&pts) {
            Err(DatasetError::PolarAngle { offenders }) => {
                assert_eq!(offenders, vec![1, 11, 16, 28, 36]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(in_sector(&Point::from_ints(1, 0)));
        let turned = rotate(&pts[5], &Point::origin(), &RotationSpec::pi_3());
        assert!(!in_sector(&turned));
        let sector: Vec<Point> = pts.iter().filter(|p| in_sector(p)).cloned().collect();
        assert!(polar_angle_check(&sector).is_ok());
        let mut bad = sector.clone();
        bad[7] = turned;
        match polar_angle_check(&bad) {
            Err(DatasetError::PolarAngle { offenders }) => assert_eq!(offenders, vec![7]),
            other => panic!("unexpected {other:?}"),
        }
        // a duplicated vertex shrinks the circled graph
        let mut moved = pts.clone();
        moved[16] = Point::origin();
        assert!(matches!(
            graph_from_sector(&moved),
            Err(DatasetError::VertexCount { expected: 607, .. })
        ));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "((0, 0, 0, 0), (0, 0, 0, 0))\n\n((1, 0, 0), (0, 0, 0, 0))\n";
        match parse_point_list(text) {
            Err(DatasetError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn corrupted_sector_rejected() {
        let mut pts = final_102();
        pts.pop();
        assert!(matches!(
            graph_from_sector(&pts),
            Err(DatasetError::VertexCount { expected: 102, found: 101 })
        ));
    }

    #[test]
    fn circled_graph_shape() {
        use crate::graph::Adjacency;
        let g = final_graph().unwrap();
        assert_eq!(g.len(), 607);
        assert_eq!(g.edge_count(), 3390);
        assert_eq!(
            g.vertices().iter().filter(|p| p.is_origin()).count(),
            1
        );
        let r = RotationSpec::pi_3();
        for p in g.vertices() {
            assert!(g.index_of(&rotate(p, &Point::origin(), &r)).is_some());
        }
    }
}
