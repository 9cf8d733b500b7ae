//! Exact maximum-weight independent sets by branch and bound.
//!
//! Rational weights are scaled to integers by the lcm of their denominators
//! (`i64`, `i128` or big integers, whichever fits), so every comparison is
//! exact. Upper bounds come from splitting the residual weights over induced
//! Moser spindles (each worth twice its share), triangles and edges. Nodes are
//! reduced (isolated and dominating vertices are taken) and split into
//! connected components, which are solved separately.
//!
//! A float local search is also provided for cheap pricing.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::field::Rational;
use crate::graph::Adjacency;
use crate::structures::{maximal_cliques, moser_spindles};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MwisError {
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("vertex {0} has a negative weight")]
    NegativeWeight(usize),
    #[error("vertex index {0} out of range")]
    NoSuchVertex(usize),
    #[error("forced vertices {0} and {1} are adjacent")]
    ForcedNotIndependent(usize, usize),
    #[error("vertex {0} is both forced in and forced out")]
    ForcedConflict(usize),
    #[error("search stopped at its deadline after {0} nodes")]
    Timeout(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwisResult {
    /// Sorted vertex indices.
    pub set: Vec<usize>,
    pub weight: Rational,
}

/// Integer weight arithmetic used inside the search.
pub trait Weight: Clone + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn double(&self) -> Self {
        self.add(self)
    }
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

macro_rules! prim_weight {
    ($t:ty) => {
        impl Weight for $t {
            fn zero() -> Self {
                0
            }
            fn add(&self, o: &Self) -> Self {
                self + o
            }
            fn sub(&self, o: &Self) -> Self {
                self - o
            }
        }
    };
}
prim_weight!(i64);
prim_weight!(i128);

impl Weight for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
}

/// Graph-dependent data reused across weightings: adjacency and the
/// triangle and spindle families used by the bound.
#[derive(Debug, Clone)]
pub struct Solver {
    adj: Vec<Bitset>,
    triangles: Vec<[usize; 3]>,
    spindles: Vec<[usize; 7]>,
    nodes: u64,
    deadline: Option<Instant>,
    aborted: bool,
}

impl Solver {
    pub fn new<G: Adjacency + ?Sized>(g: &G) -> Self {
        let triangles = maximal_cliques(g)
            .into_iter()
            .filter(|c| c.len() == 3)
            .map(|c| [c[0], c[1], c[2]])
            .collect();
        Solver {
            adj: g.adjacency().to_vec(),
            triangles,
            spindles: moser_spindles(g),
            nodes: 0,
            deadline: None,
            aborted: false,
        }
    }

    /// Exact solves give up with [`MwisError::Timeout`] after this instant.
    pub fn set_deadline(&mut self, deadline: Option<Instant>) {
        self.deadline = deadline;
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Search nodes visited by the last exact solve.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn spindle_count(&self) -> usize {
        self.spindles.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    fn check(
        &self,
        w: &[Rational],
        forced_in: &[usize],
        forced_out: &[usize],
    ) -> Result<(), MwisError> {
        let n = self.order();
        if w.len() != n {
            return Err(MwisError::WeightCount {
                expected: n,
                got: w.len(),
            });
        }
        if let Some(v) = w.iter().position(Signed::is_negative) {
            return Err(MwisError::NegativeWeight(v));
        }
        for &v in forced_in.iter().chain(forced_out) {
            if v >= n {
                return Err(MwisError::NoSuchVertex(v));
            }
        }
        for (i, &u) in forced_in.iter().enumerate() {
            if forced_out.contains(&u) {
                return Err(MwisError::ForcedConflict(u));
            }
            for &v in &forced_in[i + 1..] {
                if self.adj[u].contains(v) {
                    return Err(MwisError::ForcedNotIndependent(u, v));
                }
            }
        }
        Ok(())
    }

    /// Maximum-weight independent set containing `forced_in` and avoiding
    /// `forced_out`.
    pub fn solve(
        &mut self,
        w: &[Rational],
        forced_in: &[usize],
        forced_out: &[usize],
    ) -> Result<MwisResult, MwisError> {
        let lb = -Rational::one();
        Ok(self
            .solve_above(w, forced_in, forced_out, &lb)?
            .expect("the forced set itself beats a negative bound"))
    }

    /// The optimum, if its weight exceeds `lb`; `None` proves every
    /// admissible independent set weighs at most `lb`.
    pub fn solve_above(
        &mut self,
        w: &[Rational],
        forced_in: &[usize],
        forced_out: &[usize],
        lb: &Rational,
    ) -> Result<Option<MwisResult>, MwisError> {
        self.check(w, forced_in, forced_out)?;
        let n = self.order();
        let mut p = Bitset::full(n);
        for &v in forced_out {
            p.remove(v);
        }
        for &v in forced_in {
            p.remove(v);
            p.difference_with(&self.adj[v]);
        }
        let base: Rational = forced_in.iter().map(|&v| &w[v]).sum();
        let rest = lb - &base;

        let l = w
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled: Vec<BigInt> = w.iter().map(|q| q.numer() * (&l / q.denom())).collect();
        let total: BigInt = scaled.iter().sum();
        // w(S) > rest  ⇔  L·w(S) > ⌊L·rest⌋ for integer L·w(S)
        let lim = (&rest * Rational::from_integer(l.clone())).floor().to_integer();
        let found = if total.bits() < 62 && lim.abs().bits() < 62 {
            let ws: Vec<i64> = scaled.iter().map(|x| x.to_i64().expect("fits")).collect();
            self.run(&ws, p, lim.to_i64().expect("fits"))
        } else if total.bits() < 126 && lim.abs().bits() < 126 {
            let ws: Vec<i128> = scaled.iter().map(|x| x.to_i128().expect("fits")).collect();
            self.run(&ws, p, lim.to_i128().expect("fits"))
        } else {
            self.run(&scaled, p, lim)
        };
        if self.aborted {
            return Err(MwisError::Timeout(self.nodes));
        }
        Ok(found.map(|mut set| {
            set.extend_from_slice(forced_in);
            set.sort_unstable();
            let weight = set.iter().map(|&v| &w[v]).sum();
            MwisResult { set, weight }
        }))
    }

    fn run<W: Weight>(&mut self, w: &[W], mut p: Bitset, lb: W) -> Option<Vec<usize>> {
        self.nodes = 0;
        self.aborted = false;
        for (v, x) in w.iter().enumerate() {
            if x.is_zero() {
                p.remove(v);
            }
        }
        let mut search = Search {
            s: self,
            w,
            scratch: vec![W::zero(); w.len()],
        };
        search.solve(p, lb).map(|(_, set)| set)
    }
}

struct Search<'a, W: Weight> {
    s: &'a mut Solver,
    w: &'a [W],
    scratch: Vec<W>,
}

impl<W: Weight> Search<'_, W> {
    fn weight_of(&self, set: &Bitset) -> W {
        set.iter().fold(W::zero(), |acc, v| acc.add(&self.w[v]))
    }

    /// Upper bound on the heaviest independent subset of `p`.
    fn bound(&mut self, p: &Bitset) -> W {
        let r = &mut self.scratch;
        for v in p.iter() {
            r[v] = self.w[v].clone();
        }
        let mut total = W::zero();
        let min_of = |r: &[W], vs: &[usize]| -> Option<W> {
            let mut m: Option<&W> = None;
            for &v in vs {
                if !p.contains(v) || r[v].is_zero() {
                    return None;
                }
                m = Some(match m {
                    Some(x) if *x <= r[v] => x,
                    _ => &r[v],
                });
            }
            m.cloned()
        };
        for sp in &self.s.spindles {
            if let Some(m) = min_of(r, sp) {
                for &v in sp {
                    r[v] = r[v].sub(&m);
                }
                total = total.add(&m.double());
            }
        }
        for t in &self.s.triangles {
            if let Some(m) = min_of(r, t) {
                for &v in t {
                    r[v] = r[v].sub(&m);
                }
                total = total.add(&m);
            }
        }
        for u in p.iter() {
            if r[u].is_zero() {
                continue;
            }
            for v in self.s.adj[u].iter() {
                if v <= u || !p.contains(v) || r[v].is_zero() {
                    continue;
                }
                let m = std::cmp::min(&r[u], &r[v]).clone();
                r[u] = r[u].sub(&m);
                r[v] = r[v].sub(&m);
                total = total.add(&m);
                if r[u].is_zero() {
                    break;
                }
            }
            total = total.add(&r[u]);
        }
        total
    }

    /// Takes isolated and dominating vertices: `v` with
    /// `w(v) ≥ w(N(v) ∩ p)` belongs to some optimum of `p`.
    fn reduce(&self, p: &mut Bitset, taken: &mut Vec<usize>) -> W {
        let mut gained = W::zero();
        loop {
            let mut changed = false;
            let cand: Vec<usize> = p.iter().collect();
            for v in cand {
                if !p.contains(v) {
                    continue;
                }
                let mut nb = W::zero();
                let mut dominated = true;
                for u in self.s.adj[v].iter() {
                    if p.contains(u) {
                        nb = nb.add(&self.w[u]);
                        if nb > self.w[v] {
                            dominated = false;
                            break;
                        }
                    }
                }
                if dominated {
                    taken.push(v);
                    gained = gained.add(&self.w[v]);
                    p.remove(v);
                    p.difference_with(&self.s.adj[v]);
                    changed = true;
                }
            }
            if !changed {
                return gained;
            }
        }
    }

    fn components(&self, p: &Bitset) -> Vec<Bitset> {
        let mut left = p.clone();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = Bitset::new(p.capacity());
            let mut frontier = vec![start];
            comp.insert(start);
            left.remove(start);
            while let Some(v) = frontier.pop() {
                for u in self.s.adj[v].intersection(&left).iter() {
                    left.remove(u);
                    comp.insert(u);
                    frontier.push(u);
                }
            }
            out.push(comp);
        }
        out
    }

    /// Heaviest independent subset of `p`, if it weighs more than `lb`.
    fn solve(&mut self, mut p: Bitset, lb: W) -> Option<(W, Vec<usize>)> {
        self.s.nodes += 1;
        if self.s.aborted {
            return None;
        }
        if self.s.nodes & 0xfff == 0 {
            if let Some(d) = self.s.deadline {
                if Instant::now() >= d {
                    self.s.aborted = true;
                    return None;
                }
            }
        }
        let mut taken = Vec::new();
        let gained = self.reduce(&mut p, &mut taken);
        if p.is_empty() {
            return (gained > lb).then_some((gained, taken));
        }
        let lb = lb.sub(&gained);
        let comps = self.components(&p);
        let best = if comps.len() > 1 {
            self.solve_components(comps, lb)
        } else {
            self.branch(p, lb)
        };
        best.map(|(x, mut set)| {
            set.extend(taken);
            (x.add(&gained), set)
        })
    }

    fn solve_components(&mut self, mut comps: Vec<Bitset>, lb: W) -> Option<(W, Vec<usize>)> {
        comps.sort_by_key(|c| (c.count(), c.first()));
        let ubs: Vec<W> = comps.iter().map(|c| self.bound(c)).collect();
        let mut rest = ubs.iter().fold(W::zero(), |a, b| a.add(b));
        if rest <= lb {
            return None;
        }
        let mut acc = W::zero();
        let mut set = Vec::new();
        for (c, ub) in comps.into_iter().zip(ubs) {
            rest = rest.sub(&ub);
            // this component must beat lb − (found so far) − (bounds still to come)
            let need = lb.sub(&acc).sub(&rest);
            let (x, s) = self.solve(c, need)?;
            acc = acc.add(&x);
            set.extend(s);
        }
        Some((acc, set))
    }

    fn branch(&mut self, p: Bitset, lb: W) -> Option<(W, Vec<usize>)> {
        if self.bound(&p) <= lb {
            return None;
        }
        // vertex of largest residual weight-degree, lowest index on ties
        let mut pick = None;
        for v in p.iter() {
            let nb = self.s.adj[v].intersection(&p);
            let key = self.weight_of(&nb).add(&self.w[v]);
            match &pick {
                Some((_, k)) if *k >= key => {}
                _ => pick = Some((v, key)),
            }
        }
        let (v, _) = pick.expect("p is nonempty");
        let mut best: Option<(W, Vec<usize>)> = None;
        let mut lb = lb;

        let mut with = p.difference(&self.s.adj[v]);
        with.remove(v);
        if let Some((x, mut s)) = self.solve(with, lb.sub(&self.w[v])) {
            let x = x.add(&self.w[v]);
            s.push(v);
            lb = x.clone();
            best = Some((x, s));
        }
        let mut without = p;
        without.remove(v);
        if let Some(found) = self.solve(without, lb) {
            best = Some(found);
        }
        best
    }
}

/// One-shot exact solve.
pub fn solve<G: Adjacency + ?Sized>(
    g: &G,
    w: &[Rational],
    forced_in: &[usize],
    forced_out: &[usize],
) -> Result<MwisResult, MwisError> {
    Solver::new(g).solve(w, forced_in, forced_out)
}

/// Heaviest independent set containing `include` and avoiding `exclude`.
pub fn solve_excluding_including<G: Adjacency + ?Sized>(
    g: &G,
    w: &[Rational],
    exclude: usize,
    include: usize,
) -> Result<MwisResult, MwisError> {
    solve(g, w, &[include], &[exclude])
}

/// Iterated local search for a heavy independent set under float weights.
/// Deterministic for a given seed.
pub fn local_search<G: Adjacency + ?Sized>(
    g: &G,
    w: &[f64],
    rounds: usize,
    seed: u64,
) -> Vec<usize> {
    let n = g.order();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ls = LocalState::new(&nbrs, w);

    let mut order: Vec<usize> = (0..n).filter(|&v| w[v] > 0.0).collect();
    order.sort_by(|&a, &b| {
        let ka = w[a] / (nbrs[a].len() + 1) as f64;
        let kb = w[b] / (nbrs[b].len() + 1) as f64;
        kb.total_cmp(&ka).then(a.cmp(&b))
    });
    for &v in &order {
        if ls.conflict[v] == 0 {
            ls.insert(v);
        }
    }
    ls.improve();
    let mut best = ls.in_set.clone();
    let mut best_w = ls.weight;
    if order.is_empty() {
        return Vec::new();
    }
    for _ in 0..rounds {
        let k = 1 + rng.gen_range(0..3);
        for _ in 0..k {
            let v = *order.choose(&mut rng).expect("nonempty");
            if !ls.in_set[v] {
                ls.force(v);
            }
        }
        ls.improve();
        if ls.weight > best_w + 1e-12 {
            best_w = ls.weight;
            best = ls.in_set.clone();
        } else if ls.weight < best_w - 1e-12 && rng.gen_bool(0.9) {
            ls.reset(&best);
        }
    }
    (0..n).filter(|&v| best[v]).collect()
}

struct LocalState<'a> {
    nbrs: &'a [Vec<usize>],
    w: &'a [f64],
    in_set: Vec<bool>,
    /// Number of set neighbors.
    conflict: Vec<u32>,
    /// Weight of set neighbors.
    cover: Vec<f64>,
    weight: f64,
}

impl<'a> LocalState<'a> {
    fn new(nbrs: &'a [Vec<usize>], w: &'a [f64]) -> Self {
        let n = nbrs.len();
        LocalState {
            nbrs,
            w,
            in_set: vec![false; n],
            conflict: vec![0; n],
            cover: vec![0.0; n],
            weight: 0.0,
        }
    }

    fn insert(&mut self, v: usize) {
        self.in_set[v] = true;
        self.weight += self.w[v];
        for &u in &self.nbrs[v] {
            self.conflict[u] += 1;
            self.cover[u] += self.w[v];
        }
    }

    fn remove(&mut self, v: usize) {
        self.in_set[v] = false;
        self.weight -= self.w[v];
        for &u in &self.nbrs[v] {
            self.conflict[u] -= 1;
            self.cover[u] -= self.w[v];
        }
    }

    fn force(&mut self, v: usize) {
        for i in 0..self.nbrs[v].len() {
            let u = self.nbrs[v][i];
            if self.in_set[u] {
                self.remove(u);
            }
        }
        self.insert(v);
    }

    /// Applies improving (k,1)-swaps until none is left, then fills free
    /// vertices.
    fn improve(&mut self) {
        loop {
            let mut moved = false;
            for v in 0..self.nbrs.len() {
                if !self.in_set[v] && self.w[v] > 0.0 && self.w[v] > self.cover[v] + 1e-12 {
                    self.force(v);
                    moved = true;
                }
            }
            if !moved {
                return;
            }
        }
    }

    fn reset(&mut self, set: &[bool]) {
        for (v, &keep) in set.iter().enumerate() {
            if self.in_set[v] && !keep {
                self.remove(v);
            }
        }
        for (v, &b) in set.iter().enumerate() {
            if b && !self.in_set[v] {
                self.insert(v);
            }
        }
    }
}
