//! The master linear program: over symmetric weightings, minimize the
//! heaviest set of a given family of independent sets.
//!
//! It is solved through its dual (a fractional covering of the orbits by the
//! sets), which has only `p + 1` rows; the orbit weights are read off as the
//! simplex multipliers. A floating-point model gives cheap hints during
//! column generation, and the exact model re-solves from the float basis.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::field::Rational;
use crate::simplex::{Column, Simplex, Status};
use crate::symmetry::OrbitPartition;

/// Per-orbit weights; vertex `v` weighs `weights[orbit_of(v)]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDist {
    #[serde(with = "crate::field::rational_serde::vec")]
    pub orbit_weights: Vec<Rational>,
}

impl WeightDist {
    pub fn uniform(orbits: &OrbitPartition) -> Self {
        let n = orbits.num_vertices().max(1) as i64;
        WeightDist {
            orbit_weights: vec![Rational::new(1.into(), n.into()); orbits.num_orbits()],
        }
    }

    pub fn per_vertex(&self, orbits: &OrbitPartition) -> Vec<Rational> {
        orbits
            .labels()
            .iter()
            .map(|&o| self.orbit_weights[o].clone())
            .collect()
    }

    /// `Σ_j w_j |O_j|`.
    pub fn total(&self, orbits: &OrbitPartition) -> Rational {
        self.orbit_weights
            .iter()
            .zip(orbits.orbit_sizes())
            .map(|(w, &s)| w * Rational::from_integer(s.into()))
            .sum()
    }

    pub fn set_weight(&self, orbits: &OrbitPartition, set: &[usize]) -> Rational {
        set.iter()
            .map(|&v| &self.orbit_weights[orbits.orbit_of(v)])
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct P1Solution {
    pub weights: WeightDist,
    /// The optimal value: weight of the heaviest set.
    #[serde(with = "crate::field::rational_serde")]
    pub m: Rational,
    /// Dual multipliers, one per set; they certify optimality of `m`.
    #[serde(with = "crate::field::rational_serde::vec")]
    pub set_multipliers: Vec<Rational>,
}

impl P1Solution {
    /// Exact feasibility of both the weighting and the dual multipliers,
    /// with equal objectives.
    pub fn verify(&self, sets: &[Vec<usize>], orbits: &OrbitPartition) -> bool {
        let w = &self.weights;
        if w.orbit_weights.len() != orbits.num_orbits()
            || self.set_multipliers.len() != sets.len()
            || w.orbit_weights.iter().any(Signed::is_negative)
            || !w.total(orbits).is_one()
            || sets.iter().any(|s| w.set_weight(orbits, s) > self.m)
        {
            return false;
        }
        if sets.is_empty() {
            return self.m.is_zero();
        }
        let lam = &self.set_multipliers;
        if lam.iter().any(Signed::is_negative) || lam.iter().sum::<Rational>() > Rational::one() {
            return false;
        }
        let mut cover = vec![Rational::zero(); orbits.num_orbits()];
        for (s, l) in sets.iter().zip(lam) {
            for &v in s {
                cover[orbits.orbit_of(v)] += l;
            }
        }
        cover
            .iter()
            .zip(orbits.orbit_sizes())
            .all(|(c, &sz)| *c >= &self.m * Rational::from_integer(sz.into()))
    }
}

/// Orbit counts `n_{i,j}` of a set as a dual column.
fn column(orbits: &OrbitPartition, set: &[usize]) -> Column {
    let mut counts = std::collections::BTreeMap::new();
    for &v in set {
        *counts.entry(orbits.orbit_of(v)).or_insert(0i64) += 1;
    }
    std::iter::once((0, 1))
        .chain(counts.into_iter().map(|(j, c)| (j + 1, -c)))
        .collect()
}

/// Incremental model: sets are appended and the LP re-solved warm.
#[derive(Debug, Clone)]
pub struct P1Model {
    orbits: OrbitPartition,
    sets: Vec<Vec<usize>>,
    float: Simplex<f64>,
    exact: Simplex<Rational>,
}

impl P1Model {
    pub fn new(orbits: OrbitPartition) -> Self {
        let p = orbits.num_orbits();
        let mut b = vec![0; p + 1];
        b[0] = 1;
        let mu: Column = orbits
            .orbit_sizes()
            .iter()
            .enumerate()
            .map(|(j, &s)| (j + 1, s as i64))
            .collect();
        let mut float = Simplex::new(b.clone());
        let mut exact = Simplex::new(b);
        float.add_column(1, mu.clone());
        exact.add_column(1, mu);
        P1Model {
            orbits,
            sets: Vec::new(),
            float,
            exact,
        }
    }

    pub fn orbits(&self) -> &OrbitPartition {
        &self.orbits
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Appends a set (sorted internally). Duplicates are ignored; returns
    /// whether the set was new.
    pub fn add_set(&mut self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if self.sets.contains(&s) {
            return false;
        }
        let col = column(&self.orbits, &s);
        self.float.add_column(0, col.clone());
        self.exact.add_column(0, col);
        self.sets.push(s);
        true
    }

    /// Floating-point optimum: per-orbit weights and `M`.
    pub fn solve_float(&mut self) -> (Vec<f64>, f64) {
        let p = self.orbits.num_orbits();
        if self.sets.is_empty() {
            let n = self.orbits.num_vertices().max(1) as f64;
            return (vec![1.0 / n; p], 0.0);
        }
        let status = self.float.solve();
        debug_assert_eq!(status, Status::Optimal);
        let pi = self.float.duals();
        let mut w: Vec<f64> = pi[1..].iter().map(|x| x.max(0.0)).collect();
        let total: f64 = w
            .iter()
            .zip(self.orbits.orbit_sizes())
            .map(|(x, &s)| x * s as f64)
            .sum();
        if total > 0.0 {
            w.iter_mut().for_each(|x| *x /= total);
        }
        (w, pi[0] / total.max(f64::MIN_POSITIVE))
    }

    /// Exact optimum. The exact simplex is first offered the current float
    /// basis, then finishes with Bland's rule.
    pub fn solve_exact(&mut self) -> P1Solution {
        if self.sets.is_empty() {
            return P1Solution {
                weights: WeightDist::uniform(&self.orbits),
                m: Rational::zero(),
                set_multipliers: Vec::new(),
            };
        }
        if self.float.pivots > 0 {
            let fb = self.float.basis().to_vec();
            if fb != self.exact.basis() {
                self.exact.set_basis(&fb);
            }
        }
        let status = self.exact.solve();
        assert_eq!(status, Status::Optimal, "the covering LP is bounded");
        let pi = self.exact.duals();
        let x = self.exact.primal();
        let total: Rational = pi[1..]
            .iter()
            .zip(self.orbits.orbit_sizes())
            .map(|(w, &s)| w * Rational::from_integer(s.into()))
            .sum();
        // At an optimum with μ > 0 the normalization is tight; otherwise the
        // optimum is 0 and rescaling keeps every row at 0.
        let (w, m) = if total.is_zero() {
            (WeightDist::uniform(&self.orbits).orbit_weights, Rational::zero())
        } else {
            (
                pi[1..].iter().map(|v| v / &total).collect(),
                &pi[0] / &total,
            )
        };
        let sol = P1Solution {
            weights: WeightDist { orbit_weights: w },
            m,
            set_multipliers: x[1..].to_vec(),
        };
        debug_assert!(sol.verify(&self.sets, &self.orbits));
        sol
    }
}

/// Exact optimum of the master problem for a family of sets.
pub fn solve_p1(sets: &[Vec<usize>], orbits: &OrbitPartition) -> P1Solution {
    let mut model = P1Model::new(orbits.clone());
    for s in sets {
        model.add_set(s);
    }
    let mut sol = model.solve_exact();
    // report multipliers against the caller's list, duplicates included
    let mut mult = vec![Rational::zero(); sets.len()];
    for (i, s) in sets.iter().enumerate() {
        let mut k = s.clone();
        k.sort_unstable();
        k.dedup();
        let idx = model.sets().iter().position(|t| *t == k).expect("added");
        if !sol.set_multipliers[idx].is_zero() {
            mult[i] = std::mem::take(&mut sol.set_multipliers[idx]);
        }
    }
    sol.set_multipliers = mult;
    sol
}

/// The master problem with every vertex in its own orbit.
pub fn solve_p1_vertexwise(sets: &[Vec<usize>], n_vertices: usize) -> P1Solution {
    solve_p1(sets, &OrbitPartition::singletons(n_vertices))
}
