//! Cut families for the independent-set solver: maximal cliques and induced
//! Moser spindles, plus a brute-force independence oracle for small graphs.

use num_traits::Zero;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::field::Rational;
use crate::graph::Adjacency;

/// Largest graph accepted by [`alpha_brute`].
pub const BRUTE_FORCE_LIMIT: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuresError {
    #[error("brute force limited to {limit} vertices, graph has {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
}

/// All maximal cliques, by Bron–Kerbosch with Tomita pivoting.
///
/// Each clique is sorted; the list is sorted lexicographically.
pub fn maximal_cliques<G: Adjacency + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(g, &mut r, Bitset::full(n), Bitset::new(n), &mut out);
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch<G: Adjacency + ?Sized>(
    g: &G,
    r: &mut Vec<usize>,
    mut p: Bitset,
    mut x: Bitset,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    // Pivot maximizing |P ∩ N(u)| over P ∪ X.
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.intersection_count(g.neighbors(u)), std::cmp::Reverse(u)))
        .expect("P is nonempty");
    let candidates = p.difference(g.neighbors(pivot));
    for v in candidates.iter() {
        let nv = g.neighbors(v);
        r.push(v);
        bron_kerbosch(g, r, p.intersection(nv), x.intersection(nv), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Number of edges of the subgraph induced by `set`.
pub fn induced_edge_count<G: Adjacency + ?Sized>(g: &G, set: &[usize]) -> usize {
    let mut m = 0;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if g.has_edge(u, v) {
                m += 1;
            }
        }
    }
    m
}

/// A unit rhombus hinged at `hub`: two triangles `hub-a-b` and `a-b-far`
/// with `far` not adjacent to `hub`.
struct Rhombus {
    a: usize,
    b: usize,
    far: usize,
}

/// All induced Moser spindles, as sorted 7-vertex index sets.
///
/// A spindle is two rhombi sharing their hub whose far vertices are
/// adjacent. Candidates are collected hub by hub and kept only when the
/// induced subgraph has exactly the 11 spindle edges.
pub fn moser_spindles<G: Adjacency + ?Sized>(g: &G) -> Vec<[usize; 7]> {
    let n = g.order();
    let mut out = Vec::new();
    for hub in 0..n {
        let nh = g.neighbors(hub);
        let mut rhombi = Vec::new();
        for a in nh.iter() {
            for b in nh.intersection(g.neighbors(a)).iter().filter(|&b| b > a) {
                let common = g.neighbors(a).intersection(g.neighbors(b));
                for far in common.iter() {
                    if far != hub && !nh.contains(far) {
                        rhombi.push(Rhombus { a, b, far });
                    }
                }
            }
        }
        for (i, r1) in rhombi.iter().enumerate() {
            for r2 in &rhombi[i + 1..] {
                if !g.has_edge(r1.far, r2.far) {
                    continue;
                }
                let mut set = [hub, r1.a, r1.b, r1.far, r2.a, r2.b, r2.far];
                set.sort_unstable();
                if set.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                if induced_edge_count(g, &set) == 11 {
                    out.push(set);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Maximum weight of an independent set by exhaustive enumeration.
pub fn alpha_brute<G: Adjacency + ?Sized>(
    g: &G,
    weights: &[Rational],
) -> Result<Rational, StructuresError> {
    let n = g.order();
    if n > BRUTE_FORCE_LIMIT {
        return Err(StructuresError::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if weights.len() != n {
        return Err(StructuresError::WeightCount {
            expected: n,
            got: weights.len(),
        });
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let mask = if n == 32 { !0 } else { (1u32 << n) - 1 };
    Ok(enumerate(&nbr, weights, mask))
}

fn enumerate(nbr: &[u32], w: &[Rational], cand: u32) -> Rational {
    if cand == 0 {
        return Rational::zero();
    }
    let v = cand.trailing_zeros() as usize;
    let without = enumerate(nbr, w, cand & !(1 << v));
    let with = &w[v] + enumerate(nbr, w, cand & !(1 << v) & !nbr[v]);
    if with > without {
        with
    } else {
        without
    }
}
