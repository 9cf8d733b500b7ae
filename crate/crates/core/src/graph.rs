//! Unit-distance graphs: canonical vertex list, exact edges, bitset adjacency.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bitset::Bitset;
use crate::field::FieldElem;
use crate::geometry::{dist2, Point};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed graph file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("edge list does not match the unit distances of the vertices")]
    EdgeMismatch,
    #[error("DIMACS line {line}: {reason}")]
    Dimacs { line: usize, reason: String },
}

/// Read-only adjacency access shared by geometric and abstract graphs.
pub trait Adjacency {
    fn adjacency(&self) -> &[Bitset];

    fn order(&self) -> usize {
        self.adjacency().len()
    }

    fn neighbors(&self, v: usize) -> &Bitset {
        &self.adjacency()[v]
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency()[u].contains(v)
    }

    fn edge_count(&self) -> usize {
        self.adjacency().iter().map(Bitset::count).sum::<usize>() / 2
    }

    /// SHA-256 binding a certificate to this graph. Abstract graphs hash
    /// their order and edge list; geometric graphs hash their vertices.
    fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}\n", self.order()).as_bytes());
        for (i, j) in self.edges() {
            h.update(format!("{i} {j}\n").as_bytes());
        }
        hex::encode(h.finalize())
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    fn edges(&self) -> Vec<(usize, usize)> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        for (i, row) in adj.iter().enumerate() {
            out.extend(row.iter().filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }
}

/// A graph given only by its edges, for structures that have no planar
/// embedding in the coordinate field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Bitset>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Bitset::new(n); n];
        for &(u, v) in edges {
            assert!(u != v && u < n && v < n, "bad edge ({u}, {v})");
            adj[u].insert(v);
            adj[v].insert(u);
        }
        SimpleGraph { adj }
    }

    pub fn from_adjacency(adj: Vec<Bitset>) -> Self {
        SimpleGraph { adj }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::new(n, &edges)
    }

    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        SimpleGraph::from_adjacency(induced_adjacency(&self.adj, keep))
    }
}

impl Adjacency for SimpleGraph {
    fn adjacency(&self) -> &[Bitset] {
        &self.adj
    }
}

/// Finite unit-distance graph.
///
/// Vertices are deduplicated and sorted in the canonical point order, so two
/// graphs built from the same point set are identical regardless of input
/// order. `adj[i]` has bit `j` set iff `|v_i − v_j| = 1` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UDGraph {
    vertices: Vec<Point>,
    adj: Vec<Bitset>,
}

struct ApproxPoint {
    x: f64,
    y: f64,
    ex: f64,
    ey: f64,
}

fn approx_point(p: &Point) -> ApproxPoint {
    let (x, ex) = p.x.approx();
    let (y, ey) = p.y.approx();
    ApproxPoint { x, y, ex, ey }
}

/// Float screen for the unit test: `false` only when the distance provably
/// differs from 1.
fn may_be_unit(p: &ApproxPoint, q: &ApproxPoint) -> bool {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let edx = p.ex + q.ex + dx.abs() * f64::EPSILON;
    let edy = p.ey + q.ey + dy.abs() * f64::EPSILON;
    let d2 = dx * dx + dy * dy;
    let err = 2.0 * dx.abs() * edx + edx * edx + 2.0 * dy.abs() * edy + edy * edy
        + 4.0 * f64::EPSILON * d2;
    !d2.is_finite() || (d2 - 1.0).abs() <= 2.0 * err + 1e-12
}

impl UDGraph {
    pub fn empty() -> Self {
        UDGraph {
            vertices: Vec::new(),
            adj: Vec::new(),
        }
    }

    /// Deduplicates, sorts and computes all unit-distance edges exactly.
    pub fn build(points: impl IntoIterator<Item = Point>) -> Self {
        let mut vertices: Vec<Point> = points.into_iter().collect();
        vertices.sort();
        vertices.dedup();
        let n = vertices.len();
        let approx: Vec<ApproxPoint> = vertices.iter().map(approx_point).collect();
        let one = FieldElem::one();
        let mut adj = vec![Bitset::new(n); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if may_be_unit(&approx[i], &approx[j]) && dist2(&vertices[i], &vertices[j]) == one
                {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        UDGraph { vertices, adj }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Index of a point, by binary search in the canonical order.
    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    pub fn induced_subgraph(&self, keep: &Bitset) -> UDGraph {
        let idx: Vec<usize> = keep.iter().filter(|&i| i < self.len()).collect();
        // Sorted order is preserved by restriction, so the result is canonical.
        UDGraph {
            vertices: idx.iter().map(|&i| self.vertices[i].clone()).collect(),
            adj: induced_adjacency(&self.adj, &idx),
        }
    }

    pub fn is_independent(&self, set: &Bitset) -> bool {
        is_independent(self, set)
    }

    /// SHA-256 over the canonical vertex text, binding certificates to a graph.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        for p in &self.vertices {
            h.update(p.to_string().as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }

    pub fn to_json(&self, orbits: Option<&[usize]>) -> String {
        let file = GraphFile {
            vertices: self.vertices.clone(),
            edges: self.edges(),
            orbits: orbits.map(|o| o.to_vec()),
        };
        serde_json::to_string_pretty(&file).expect("graph serialization cannot fail")
    }

    /// Parses the JSON form and rebuilds the graph; the stored edge list must
    /// match the recomputed one.
    pub fn from_json(text: &str) -> Result<(UDGraph, Option<Vec<usize>>), GraphError> {
        let file: GraphFile = serde_json::from_str(text)?;
        let g = UDGraph::build(file.vertices.iter().cloned());
        // Map file indices to canonical ones before comparing edges.
        let map: Vec<usize> = file
            .vertices
            .iter()
            .map(|p| g.index_of(p).expect("point present after build"))
            .collect();
        let mut stored: Vec<(usize, usize)> = file
            .edges
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (map.get(i).copied(), map.get(j).copied());
                match (a, b) {
                    (Some(a), Some(b)) => Ok((a.min(b), a.max(b))),
                    _ => Err(GraphError::EdgeMismatch),
                }
            })
            .collect::<Result<_, _>>()?;
        stored.sort_unstable();
        stored.dedup();
        if stored != g.edges() {
            return Err(GraphError::EdgeMismatch);
        }
        let orbits = match file.orbits {
            Some(o) if o.len() == file.vertices.len() && map.len() == g.len() => {
                let mut canon = vec![0; g.len()];
                for (i, &c) in map.iter().enumerate() {
                    canon[c] = o[i];
                }
                Some(canon)
            }
            Some(_) => return Err(GraphError::EdgeMismatch),
            None => None,
        };
        Ok((g, orbits))
    }

    pub fn to_dimacs(&self) -> String {
        to_dimacs(self)
    }
}

impl Adjacency for UDGraph {
    fn adjacency(&self) -> &[Bitset] {
        &self.adj
    }

    fn content_hash(&self) -> String {
        UDGraph::content_hash(self)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<Point>,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orbits: Option<Vec<usize>>,
}

pub fn induced_adjacency(adj: &[Bitset], keep: &[usize]) -> Vec<Bitset> {
    let k = keep.len();
    let mut pos = vec![usize::MAX; adj.len()];
    for (new, &old) in keep.iter().enumerate() {
        pos[old] = new;
    }
    keep.iter()
        .map(|&old| {
            Bitset::from_indices(
                k,
                adj[old].iter().filter_map(|j| (pos[j] != usize::MAX).then_some(pos[j])),
            )
        })
        .collect()
}

pub fn is_independent<G: Adjacency + ?Sized>(g: &G, set: &Bitset) -> bool {
    set.iter().all(|v| !g.neighbors(v).intersects(set))
}

pub fn to_dimacs<G: Adjacency + ?Sized>(g: &G) -> String {
    let mut s = format!("p edge {} {}\n", g.order(), g.edge_count());
    for (i, j) in g.edges() {
        s.push_str(&format!("e {} {}\n", i + 1, j + 1));
    }
    s
}

/// Parses DIMACS `p edge` format into an abstract graph.
pub fn from_dimacs(text: &str) -> Result<SimpleGraph, GraphError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let err = |reason: &str| GraphError::Dimacs {
            line: ln + 1,
            reason: reason.to_string(),
        };
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if tok.next() != Some("edge") {
                    return Err(err("expected 'p edge'"));
                }
                let v: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("bad vertex count"))?;
                n = Some(v);
            }
            Some("e") => {
                let nv = n.ok_or_else(|| err("edge before problem line"))?;
                let mut p = || -> Option<usize> { tok.next()?.parse().ok() };
                let (a, b) = (p(), p());
                match (a, b) {
                    (Some(a), Some(b)) if a >= 1 && b >= 1 && a <= nv && b <= nv && a != b => {
                        edges.push((a - 1, b - 1))
                    }
                    _ => return Err(err("bad edge")),
                }
            }
            Some(_) => return Err(err("unknown line type")),
        }
    }
    let n = n.ok_or(GraphError::Dimacs {
        line: 0,
        reason: "missing problem line".into(),
    })?;
    Ok(SimpleGraph::new(n, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> UDGraph {
        UDGraph::build([
            Point::from_ints(2, 0),
            Point::from_ints(0, 0),
            Point::from_ints(1, 0),
        ])
    }

    #[test]
    fn build_examples() {
        assert!(UDGraph::build([]).is_empty());
        let g = p3();
        assert_eq!(g.len(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.vertex(0), &Point::from_ints(0, 0));
    }

    #[test]
    fn build_deduplicates() {
        let g = UDGraph::build([Point::from_ints(0, 0), Point::from_ints(0, 0)]);
        assert_eq!(g.len(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn induced_examples() {
        let g = p3();
        assert_eq!(g.induced_subgraph(&Bitset::full(3)), g);
        assert!(g.induced_subgraph(&Bitset::new(3)).is_empty());
        let ends = g.induced_subgraph(&Bitset::from_indices(3, [0, 2]));
        assert_eq!(ends.len(), 2);
        assert_eq!(ends.edge_count(), 0);
    }

    #[test]
    fn independence_examples() {
        let g = p3();
        assert!(g.is_independent(&Bitset::new(3)));
        assert!(g.is_independent(&Bitset::from_indices(3, [1])));
        assert!(!g.is_independent(&Bitset::from_indices(3, [0, 1])));
        assert!(g.is_independent(&Bitset::from_indices(3, [0, 2])));
    }

    #[test]
    fn dimacs_of_path() {
        let s = p3().to_dimacs();
        assert!(s.starts_with("p edge 3 2\n"));
        let back = from_dimacs(&s).unwrap();
        assert_eq!(back.edges(), vec![(0, 1), (1, 2)]);
        assert!(from_dimacs("e 1 2\n").is_err());
        assert!(from_dimacs("p edge 2 1\ne 1 3\n").is_err());
    }

    #[test]
    fn json_round_trip_and_tamper() {
        let g = p3();
        let text = g.to_json(Some(&[0, 1, 0]));
        let (back, orbits) = UDGraph::from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(orbits, Some(vec![0, 1, 0]));
        let tampered = text.replacen("[\n      1,\n      2\n    ]", "[\n      0,\n      2\n    ]", 1);
        assert_ne!(tampered, text);
        assert!(matches!(
            UDGraph::from_json(&tampered),
            Err(GraphError::EdgeMismatch)
        ));
    }
}
