//! Vertex orbits: geometric (dihedral isometries of the point set) and
//! abstract (graph automorphisms by individualization-refinement).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{rotate, Point, RotationSpec};
use crate::graph::{Adjacency, UDGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("automorphism search exceeded its time budget")]
    TimeBudget,
    #[error("orbit label list has {got} entries for {expected} vertices")]
    Length { expected: usize, got: usize },
}

/// A partition of the vertices into orbits, numbered `0..p` in order of
/// their lowest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    orbit_of: Vec<usize>,
    orbit_sizes: Vec<usize>,
}

impl OrbitPartition {
    /// Renumbers arbitrary labels canonically.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = BTreeMap::new();
        let mut orbit_of = Vec::with_capacity(labels.len());
        let mut orbit_sizes = Vec::new();
        for &l in labels {
            let next = map.len();
            let id = *map.entry(l).or_insert(next);
            if id == orbit_sizes.len() {
                orbit_sizes.push(0);
            }
            orbit_sizes[id] += 1;
            orbit_of.push(id);
        }
        OrbitPartition {
            orbit_of,
            orbit_sizes,
        }
    }

    pub fn singletons(n: usize) -> Self {
        OrbitPartition {
            orbit_of: (0..n).collect(),
            orbit_sizes: vec![1; n],
        }
    }

    pub fn orbit_of(&self, v: usize) -> usize {
        self.orbit_of[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.orbit_of
    }

    pub fn orbit_sizes(&self) -> &[usize] {
        &self.orbit_sizes
    }

    pub fn num_orbits(&self) -> usize {
        self.orbit_sizes.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.orbit_of.len()
    }

    /// Members of each orbit, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut m = vec![Vec::new(); self.num_orbits()];
        for (v, &o) in self.orbit_of.iter().enumerate() {
            m[o].push(v);
        }
        m
    }

    /// True when every orbit of `self` lies inside one orbit of `coarser`.
    pub fn refines(&self, coarser: &OrbitPartition) -> bool {
        if self.num_vertices() != coarser.num_vertices() {
            return false;
        }
        let mut image = vec![usize::MAX; self.num_orbits()];
        for (v, &o) in self.orbit_of.iter().enumerate() {
            let c = coarser.orbit_of[v];
            if image[o] == usize::MAX {
                image[o] = c;
            } else if image[o] != c {
                return false;
            }
        }
        true
    }

    /// Restriction to the kept vertices (ascending), renumbered.
    pub fn restrict(&self, keep: &[usize]) -> OrbitPartition {
        let labels: Vec<usize> = keep.iter().map(|&v| self.orbit_of[v]).collect();
        OrbitPartition::from_labels(&labels)
    }
}

/// Orbits together with the automorphisms that witness them.
#[derive(Debug, Clone)]
pub struct Orbits {
    pub partition: OrbitPartition,
    /// Each witness is a vertex permutation preserving adjacency; the
    /// orbits are exactly the orbits of the group they generate.
    pub witnesses: Vec<Vec<usize>>,
}

pub fn is_automorphism<G: Adjacency + ?Sized>(g: &G, perm: &[usize]) -> bool {
    let n = g.order();
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    (0..n).all(|u| {
        g.neighbors(u).count() == g.neighbors(perm[u]).count()
            && g.neighbors(u).iter().all(|v| g.has_edge(perm[u], perm[v]))
    })
}

/// Checks that every witness is an automorphism and that the partition is
/// exactly the orbit partition of the group they generate.
pub fn verify_orbits<G: Adjacency + ?Sized>(g: &G, orbits: &Orbits) -> bool {
    orbits.witnesses.iter().all(|p| is_automorphism(g, p))
        && orbits_from_generators(g.order(), &orbits.witnesses) == orbits.partition
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
    fn labels(&mut self) -> Vec<usize> {
        (0..self.0.len()).map(|i| self.find(i)).collect()
    }
}

pub fn orbits_from_generators(n: usize, gens: &[Vec<usize>]) -> OrbitPartition {
    let mut uf = UnionFind::new(n);
    for g in gens {
        for (v, &w) in g.iter().enumerate() {
            uf.union(v, w);
        }
    }
    OrbitPartition::from_labels(&uf.labels())
}

/// The twelve isometries of the dihedral group generated by rotation by π/3
/// about the origin and reflection across the x-axis.
fn dihedral_isometries() -> Vec<(RotationSpec, bool)> {
    let mut out = Vec::new();
    let mut r = RotationSpec::identity();
    for _ in 0..6 {
        out.push((r.clone(), false));
        out.push((r.clone(), true));
        r = r.then(&RotationSpec::pi_3());
    }
    out
}

fn apply(p: &Point, r: &RotationSpec, reflect: bool) -> Point {
    let q = if reflect { p.conj() } else { p.clone() };
    rotate(&q, &Point::origin(), r)
}

/// Orbits under those dihedral isometries that map `V(g)` onto itself.
pub fn geometric_orbits(g: &UDGraph) -> Orbits {
    let mut witnesses = Vec::new();
    for (r, reflect) in dihedral_isometries().into_iter().skip(1) {
        let perm: Option<Vec<usize>> = g
            .vertices()
            .iter()
            .map(|p| g.index_of(&apply(p, &r, reflect)))
            .collect();
        if let Some(perm) = perm {
            debug_assert!(is_automorphism(g, &perm));
            witnesses.push(perm);
        }
    }
    Orbits {
        partition: orbits_from_generators(g.len(), &witnesses),
        witnesses,
    }
}

/// Orbits under the full automorphism group; on timeout, falls back to the
/// geometric orbits with a warning.
pub fn automorphism_orbits(g: &UDGraph, budget: Duration) -> Orbits {
    let geo = geometric_orbits(g);
    match automorphism_orbits_seeded(g, geo.witnesses.clone(), budget) {
        Ok(o) => o,
        Err(e) => {
            log::warn!("{e}; falling back to geometric orbits");
            geo
        }
    }
}

/// Full automorphism orbits of an abstract graph, starting from known
/// automorphisms `seed` (which may be empty).
pub fn automorphism_orbits_seeded<G: Adjacency + ?Sized>(
    g: &G,
    seed: Vec<Vec<usize>>,
    budget: Duration,
) -> Result<Orbits, SymmetryError> {
    let deadline = Instant::now() + budget;
    let n = g.order();
    let base = refine_pair(g, vec![0; n], vec![0; n]).expect("same graph").0;
    let mut witnesses = seed;
    let mut uf = UnionFind::new(n);
    for w in &witnesses {
        for (v, &t) in w.iter().enumerate() {
            uf.union(v, t);
        }
    }
    // For each cell, try to map its least vertex of every unresolved class
    // onto representatives of the other classes.
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &b) in base.iter().enumerate().take(n) {
        cells.entry(b).or_default().push(v);
    }
    for cell in cells.values() {
        let mut reps: Vec<usize> = Vec::new();
        for &v in cell {
            let rv = uf.find(v);
            if reps.iter().any(|&r| uf.find(r) == rv) {
                continue;
            }
            for &r in &reps.clone() {
                if uf.find(r) == uf.find(v) {
                    break;
                }
                if let Some(perm) = find_mapping(g, &base, r, v, deadline)? {
                    for (a, &b) in perm.iter().enumerate() {
                        uf.union(a, b);
                    }
                    witnesses.push(perm);
                    break;
                }
            }
            if !reps.iter().any(|&r| uf.find(r) == uf.find(v)) {
                reps.push(v);
            }
        }
    }
    Ok(Orbits {
        partition: OrbitPartition::from_labels(&uf.labels()),
        witnesses,
    })
}

/// Refines two colorings in lockstep to their coarsest equitable
/// refinements, using a shared relabelling so that corresponding cells get
/// the same color. Returns `None` if the colorings become incompatible.
fn refine_pair<G: Adjacency + ?Sized>(
    g: &G,
    mut a: Vec<usize>,
    mut b: Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.order();
    let count = |c: &[usize]| c.iter().collect::<std::collections::BTreeSet<_>>().len();
    loop {
        let sig = |c: &[usize], v: usize| {
            let mut nb: Vec<usize> = g.neighbors(v).iter().map(|u| c[u]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let sa: Vec<_> = (0..n).map(|v| sig(&a, v)).collect();
        let sb: Vec<_> = (0..n).map(|v| sig(&b, v)).collect();
        let mut ms_a = sa.clone();
        let mut ms_b = sb.clone();
        ms_a.sort();
        ms_b.sort();
        if ms_a != ms_b {
            return None;
        }
        ms_a.dedup();
        let before = count(&a);
        let label = |s: &(usize, Vec<usize>)| ms_a.binary_search(s).expect("present");
        a = sa.iter().map(label).collect();
        b = sb.iter().map(label).collect();
        if ms_a.len() == before {
            return Some((a, b));
        }
    }
}

/// Searches for an automorphism mapping `u` to `v`.
fn find_mapping<G: Adjacency + ?Sized>(
    g: &G,
    base: &[usize],
    u: usize,
    v: usize,
    deadline: Instant,
) -> Result<Option<Vec<usize>>, SymmetryError> {
    let fresh = base.iter().max().map_or(0, |m| m + 1);
    let mut a = base.to_vec();
    let mut b = base.to_vec();
    a[u] = fresh;
    b[v] = fresh;
    match refine_pair(g, a, b) {
        Some((a, b)) => search(g, a, b, deadline),
        None => Ok(None),
    }
}

fn search<G: Adjacency + ?Sized>(
    g: &G,
    a: Vec<usize>,
    b: Vec<usize>,
    deadline: Instant,
) -> Result<Option<Vec<usize>>, SymmetryError> {
    if Instant::now() > deadline {
        return Err(SymmetryError::TimeBudget);
    }
    let n = g.order();
    let mut size = BTreeMap::new();
    for &c in &a {
        *size.entry(c).or_insert(0usize) += 1;
    }
    // first non-singleton cell, smallest first
    let target = size
        .iter()
        .filter(|(_, &s)| s > 1)
        .min_by_key(|(&c, &s)| (s, c))
        .map(|(&c, _)| c);
    let Some(cell) = target else {
        let mut perm = vec![0; n];
        let mut pos = vec![0; a.len()];
        for (w, &c) in b.iter().enumerate() {
            pos[c] = w;
        }
        for (x, &c) in a.iter().enumerate() {
            perm[x] = pos[c];
        }
        return Ok(is_automorphism(g, &perm).then_some(perm));
    };
    let x = (0..n).find(|&w| a[w] == cell).expect("cell nonempty");
    let fresh = n.max(a.iter().max().map_or(0, |m| m + 1));
    for y in (0..n).filter(|&w| b[w] == cell) {
        let mut a2 = a.clone();
        let mut b2 = b.clone();
        a2[x] = fresh;
        b2[y] = fresh;
        if let Some((a3, b3)) = refine_pair(g, a2, b2) {
            if let Some(p) = search(g, a3, b3, deadline)? {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElem;
    use crate::graph::SimpleGraph;
    use crate::ops::circle;

    const BUDGET: Duration = Duration::from_secs(30);

    fn full(g: &SimpleGraph) -> Orbits {
        automorphism_orbits_seeded(g, Vec::new(), BUDGET).unwrap()
    }

    fn moser() -> SimpleGraph {
        SimpleGraph::new(
            7,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (0, 5),
                (4, 5),
                (4, 6),
                (5, 6),
                (3, 6),
            ],
        )
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn label_canonicalization() {
        let p = OrbitPartition::from_labels(&[7, 3, 7, 9]);
        assert_eq!(p.labels(), &[0, 1, 0, 2]);
        assert_eq!(p.orbit_sizes(), &[2, 1, 1]);
        assert!(OrbitPartition::singletons(4).refines(&p));
        assert!(!p.refines(&OrbitPartition::singletons(4)));
        assert_eq!(p.restrict(&[1, 2]).labels(), &[0, 1]);
    }

    #[test]
    fn path_and_triangle() {
        let p3 = SimpleGraph::new(3, &[(0, 1), (1, 2)]);
        let o = full(&p3);
        assert_eq!(o.partition.labels(), &[0, 1, 0]);
        assert!(verify_orbits(&p3, &o));
        let k3 = SimpleGraph::new(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(full(&k3).partition.num_orbits(), 1);
    }

    #[test]
    fn moser_orbits_match_brute_force_group() {
        let m = moser();
        let group: Vec<Vec<usize>> = permutations(7)
            .into_iter()
            .filter(|p| is_automorphism(&m, p))
            .collect();
        assert_eq!(group.len(), 8);
        let expected = orbits_from_generators(7, &group);
        let o = full(&m);
        assert_eq!(o.partition, expected);
        // hub, the four rhombus sides, the two far vertices
        assert_eq!(o.partition.labels(), &[0, 1, 1, 2, 1, 1, 2]);
        assert!(verify_orbits(&m, &o));
    }

    #[test]
    fn geometric_examples() {
        let origin = UDGraph::build([Point::origin()]);
        assert_eq!(geometric_orbits(&origin).partition.num_orbits(), 1);
        let hex = circle(&UDGraph::build([Point::from_ints(1, 0)]));
        let o = geometric_orbits(&hex);
        assert_eq!(o.partition.orbit_sizes(), &[6]);
        assert!(verify_orbits(&hex, &o));
        // a point off every mirror line: reflections do not apply
        let p = Point::new(
            FieldElem::from_int(2),
            FieldElem::from_ratios([(0, 1), (0, 1), (1, 3), (0, 1)]),
        );
        let ring = circle(&UDGraph::build([p]));
        let o = geometric_orbits(&ring);
        assert_eq!(o.partition.orbit_sizes(), &[6]);
        assert_eq!(o.witnesses.len(), 5);
    }

    #[test]
    fn geometric_orbits_refine_automorphism_orbits() {
        let hex = circle(&UDGraph::build([Point::from_ints(1, 0)]));
        let g = UDGraph::build(
            hex.vertices()
                .iter()
                .cloned()
                .chain([Point::origin()]),
        );
        let geo = geometric_orbits(&g);
        let aut = automorphism_orbits(&g, BUDGET);
        assert!(geo.partition.refines(&aut.partition));
        assert!(verify_orbits(&g, &aut));
        assert_eq!(aut.partition.num_orbits(), 2);
    }

    #[test]
    fn disconnected_swaps_found() {
        // two disjoint edges and an isolated vertex
        let g = SimpleGraph::new(5, &[(0, 1), (2, 3)]);
        let o = full(&g);
        assert_eq!(o.partition.labels(), &[0, 0, 0, 0, 1]);
        assert!(verify_orbits(&g, &o));
    }
}
