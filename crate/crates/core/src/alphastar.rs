//! Optimal weighted independence ratio by alternating the master LP with the
//! exact independent-set solver, plus certificates, orbit reduction and the
//! choice of spindling pairs.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::Bitset;
use crate::field::{rational_serde, Rational};
use crate::graph::{is_independent, Adjacency, UDGraph};
use crate::lp::{P1Model, WeightDist};
use crate::mwis::{local_search, MwisError, Solver};
use crate::ops::spindle_rotation;
use crate::symmetry::{is_automorphism, orbits_from_generators, OrbitPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphaStarError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("orbit partition covers {got} vertices, graph has {expected}")]
    OrbitSize { expected: usize, got: usize },
    #[error(transparent)]
    Mwis(#[from] MwisError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaStarCertificate {
    pub graph_hash: String,
    pub orbits: OrbitPartition,
    /// Automorphisms generating the group whose orbits are `orbits`.
    pub orbit_generators: Vec<Vec<usize>>,
    pub weights: WeightDist,
    #[serde(with = "rational_serde")]
    pub alpha_star: Rational,
    #[serde(with = "rational_serde")]
    pub chi_f: Rational,
    /// Upper bound on the density of planar sets avoiding distance one.
    #[serde(with = "rational_serde")]
    pub m1_upper: Rational,
    pub witness_sets: Vec<Vec<usize>>,
    /// Fractional covering multipliers, one per witness set.
    #[serde(with = "rational_serde::vec")]
    pub set_multipliers: Vec<Rational>,
}

impl AlphaStarCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// One round of the cut-generation loop.
#[derive(Debug, Clone, PartialEq)]
pub struct Iteration {
    pub index: usize,
    /// Exact master optimum, when the round solved it exactly.
    pub optlow: Option<Rational>,
    /// Best exact upper bound so far.
    pub optup: Option<Rational>,
    /// Float master optimum and priced set weight (heuristic rounds).
    pub float_low: f64,
    pub float_set: f64,
    pub sets: usize,
}

#[derive(Debug, Clone, Default)]
pub struct AlphaStarOptions {
    /// Local-search rounds per pricing attempt; 0 prices exactly every time.
    pub heuristic_rounds: usize,
    pub seed: u64,
    pub deadline: Option<Instant>,
    /// Independent sets to start from.
    pub initial_sets: Vec<Vec<usize>>,
    pub orbit_generators: Vec<Vec<usize>>,
}

/// Result of a possibly time-limited run.
#[derive(Debug, Clone)]
pub enum Outcome {
    Certified(Box<AlphaStarCertificate>),
    /// Stopped at the deadline with the bounds proven so far.
    Stopped {
        optlow: Rational,
        optup: Option<Rational>,
        /// Weighting that achieved `optup`.
        upper_weights: Option<WeightDist>,
        sets: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Clone)]
pub struct Run {
    pub outcome: Outcome,
    pub trace: Vec<Iteration>,
}

/// Exact α* with the default options.
pub fn alpha_star<G: Adjacency + ?Sized>(
    g: &G,
    orbits: &OrbitPartition,
    orbit_generators: &[Vec<usize>],
) -> Result<AlphaStarCertificate, AlphaStarError> {
    let opts = AlphaStarOptions {
        orbit_generators: orbit_generators.to_vec(),
        ..Default::default()
    };
    match run(g, orbits, &opts)?.outcome {
        Outcome::Certified(c) => Ok(*c),
        Outcome::Stopped { .. } => unreachable!("no deadline was set"),
    }
}

/// The cut-generation loop: price a heaviest independent set under the
/// current weighting, add it, re-solve the master LP, until the two agree.
///
/// With `heuristic_rounds > 0` the float master and a local search are used
/// first; the exact LP and exact search run only when the heuristic finds no
/// violated set, and the final agreement is always exact.
pub fn run<G: Adjacency + ?Sized>(
    g: &G,
    orbits: &OrbitPartition,
    opts: &AlphaStarOptions,
) -> Result<Run, AlphaStarError> {
    let n = g.order();
    if n == 0 {
        return Err(AlphaStarError::EmptyGraph);
    }
    if orbits.num_vertices() != n {
        return Err(AlphaStarError::OrbitSize {
            expected: n,
            got: orbits.num_vertices(),
        });
    }
    let mut solver = Solver::new(g);
    solver.set_deadline(opts.deadline);
    let mut model = P1Model::new(orbits.clone());
    for s in &opts.initial_sets {
        if is_independent(g, &Bitset::from_indices(n, s.iter().copied())) {
            model.add_set(s);
        }
    }
    let mut trace = Vec::new();
    let mut optlow = Rational::zero();
    let mut optup: Option<Rational> = None;
    let mut upper_weights = None;
    let mut seed = opts.seed;

    let stopped = |optlow: Rational, optup, upper_weights, model: &P1Model, trace| {
        Ok(Run {
            outcome: Outcome::Stopped {
                optlow,
                optup,
                upper_weights,
                sets: model.sets().to_vec(),
            },
            trace,
        })
    };

    loop {
        let index = trace.len();
        if opts.deadline.is_some_and(|d| Instant::now() >= d) {
            return stopped(optlow, optup, upper_weights, &model, trace);
        }
        if opts.heuristic_rounds > 0 {
            let (wf, mf) = model.solve_float();
            let per_vertex: Vec<f64> = orbits.labels().iter().map(|&o| wf[o]).collect();
            seed = seed.wrapping_add(1);
            let s = local_search(g, &per_vertex, opts.heuristic_rounds, seed);
            let ws: f64 = s.iter().map(|&v| per_vertex[v]).sum();
            if ws > mf * (1.0 + 1e-9) + 1e-12 && model.add_set(&s) {
                trace.push(Iteration {
                    index,
                    optlow: None,
                    optup: optup.clone(),
                    float_low: mf,
                    float_set: ws,
                    sets: model.sets().len(),
                });
                continue;
            }
        }
        let sol = model.solve_exact();
        assert!(sol.m >= optlow, "optlow must not decrease");
        optlow = sol.m.clone();
        let w = sol.weights.per_vertex(orbits);
        let found = match solver.solve_above(&w, &[], &[], &sol.m) {
            Ok(f) => f,
            Err(MwisError::Timeout(_)) => {
                return stopped(optlow, optup, upper_weights, &model, trace)
            }
            Err(e) => return Err(e.into()),
        };
        let up = found.as_ref().map_or(sol.m.clone(), |r| r.weight.clone());
        if optup.as_ref().is_none_or(|u| up < *u) {
            optup = Some(up.clone());
            upper_weights = Some(sol.weights.clone());
        }
        let cur_up = optup.clone().expect("set above");
        assert!(optlow <= cur_up, "optlow ≤ α* ≤ optup");
        trace.push(Iteration {
            index,
            optlow: Some(optlow.clone()),
            optup: Some(cur_up.clone()),
            float_low: optlow.to_f64().unwrap_or(f64::NAN),
            float_set: up.to_f64().unwrap_or(f64::NAN),
            sets: model.sets().len(),
        });
        log::info!(
            "iteration {index}: {} sets, optlow {:.8}, optup {:.8}",
            model.sets().len(),
            optlow.to_f64().unwrap_or(f64::NAN),
            cur_up.to_f64().unwrap_or(f64::NAN)
        );
        match found {
            None => {
                let cert = AlphaStarCertificate {
                    graph_hash: g.content_hash(),
                    orbits: orbits.clone(),
                    orbit_generators: opts.orbit_generators.clone(),
                    weights: sol.weights,
                    chi_f: if sol.m.is_zero() {
                        Rational::zero()
                    } else {
                        sol.m.recip()
                    },
                    m1_upper: sol.m.clone(),
                    alpha_star: sol.m,
                    witness_sets: model.sets().to_vec(),
                    set_multipliers: sol.set_multipliers,
                };
                return Ok(Run {
                    outcome: Outcome::Certified(Box::new(cert)),
                    trace,
                });
            }
            Some(r) => {
                let added = model.add_set(&r.set);
                assert!(added, "a strictly heavier set cannot already be present");
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("certificate was issued for graph {expected}, not {found}")]
    GraphHash { expected: String, found: String },
    #[error("orbit partition or weight vector does not fit the graph")]
    Shape,
    #[error("orbit generator {0} is not an automorphism")]
    Generator(usize),
    #[error("orbit partition is not the orbit partition of its generators")]
    Orbits,
    #[error("weights are negative or do not sum to 1")]
    Normalization,
    #[error("witness set {0} is not independent")]
    Witness(usize),
    #[error("χ_f or the m₁ bound disagree with α*")]
    Derived,
    #[error("the heaviest independent set weighs {found}, not α* = {claimed}")]
    Upper {
        claimed: Box<Rational>,
        found: Box<Rational>,
    },
    #[error("the covering multipliers do not prove α* from below")]
    Lower,
    #[error(transparent)]
    Mwis(#[from] MwisError),
}

/// Independent re-check: graph binding, orbit witnesses, normalization,
/// witness independence, the exact heaviest independent set under the
/// certified weighting, and the covering multipliers.
pub fn verify_certificate<G: Adjacency + ?Sized>(
    g: &G,
    cert: &AlphaStarCertificate,
) -> Result<(), VerifyError> {
    let n = g.order();
    let found = g.content_hash();
    if found != cert.graph_hash {
        return Err(VerifyError::GraphHash {
            expected: cert.graph_hash.clone(),
            found,
        });
    }
    let orbits = &cert.orbits;
    if orbits.num_vertices() != n
        || cert.weights.orbit_weights.len() != orbits.num_orbits()
        || cert.set_multipliers.len() != cert.witness_sets.len()
    {
        return Err(VerifyError::Shape);
    }
    if let Some(i) = cert
        .orbit_generators
        .iter()
        .position(|p| !is_automorphism(g, p))
    {
        return Err(VerifyError::Generator(i));
    }
    if orbits_from_generators(n, &cert.orbit_generators) != *orbits {
        return Err(VerifyError::Orbits);
    }
    let w = &cert.weights;
    if w.orbit_weights.iter().any(Signed::is_negative) || !w.total(orbits).is_one() {
        return Err(VerifyError::Normalization);
    }
    for (i, s) in cert.witness_sets.iter().enumerate() {
        if s.iter().any(|&v| v >= n) || !is_independent(g, &Bitset::from_indices(n, s.iter().copied()))
        {
            return Err(VerifyError::Witness(i));
        }
    }
    let a = &cert.alpha_star;
    if cert.m1_upper != *a || a.is_zero() || cert.chi_f != a.recip() {
        return Err(VerifyError::Derived);
    }
    let best = Solver::new(g).solve(&w.per_vertex(orbits), &[], &[])?;
    if best.weight != *a {
        return Err(VerifyError::Upper {
            claimed: Box::new(a.clone()),
            found: Box::new(best.weight),
        });
    }
    let lam = &cert.set_multipliers;
    if lam.iter().any(Signed::is_negative) || lam.iter().sum::<Rational>() > Rational::one() {
        return Err(VerifyError::Lower);
    }
    let mut cover = vec![Rational::zero(); orbits.num_orbits()];
    for (s, l) in cert.witness_sets.iter().zip(lam) {
        for &v in s {
            cover[orbits.orbit_of(v)] += l;
        }
    }
    let ok = cover
        .iter()
        .zip(orbits.orbit_sizes())
        .all(|(c, &sz)| *c >= a * Rational::from_integer(sz.into()));
    if !ok {
        return Err(VerifyError::Lower);
    }
    Ok(())
}

/// Proves `α* ≤ target` from a single weighting by showing that no
/// independent set is heavier than `target` times the total weight.
pub fn certify_upper_bound<G: Adjacency + ?Sized>(
    g: &G,
    per_vertex: &[Rational],
    target: &Rational,
    deadline: Option<Instant>,
) -> Result<bool, MwisError> {
    let total: Rational = per_vertex.iter().sum();
    let mut solver = Solver::new(g);
    solver.set_deadline(deadline);
    Ok(solver
        .solve_above(per_vertex, &[], &[], &(target * total))?
        .is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("threshold deletes every vertex")]
    EverythingDeleted,
    #[error("certificate does not fit the graph")]
    Shape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub graph: UDGraph,
    /// Fraction of the certified weight that was deleted.
    pub epsilon: Rational,
    /// Original indices of the kept vertices, ascending.
    pub kept: Vec<usize>,
}

/// Deletes every orbit whose per-vertex weight is at most `tau`.
///
/// With `G′` the result, `(1 − ε)·α*(G′) ≤ α*(G)`.
pub fn reduce(
    g: &UDGraph,
    cert: &AlphaStarCertificate,
    tau: &Rational,
) -> Result<Reduction, ReduceError> {
    if cert.orbits.num_vertices() != g.len() {
        return Err(ReduceError::Shape);
    }
    let w = cert.weights.per_vertex(&cert.orbits);
    let total: Rational = w.iter().sum();
    let kept: Vec<usize> = (0..g.len()).filter(|&v| w[v] > *tau).collect();
    if kept.is_empty() {
        return Err(ReduceError::EverythingDeleted);
    }
    let deleted: Rational = (0..g.len()).filter(|&v| w[v] <= *tau).map(|v| &w[v]).sum();
    let keep = Bitset::from_indices(g.len(), kept.iter().copied());
    Ok(Reduction {
        graph: g.induced_subgraph(&keep),
        epsilon: deleted / total,
        kept,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PickError {
    #[error("no candidate vertex admits a spindling rotation")]
    NoValidPair,
    #[error("certificate does not fit the graph")]
    Shape,
    #[error(transparent)]
    Mwis(#[from] MwisError),
}

/// Chooses a spindling pair `(u, v)`: `v` is the lowest vertex of a heaviest
/// orbit, and `u` minimizes the heaviest independent set that contains `u`
/// and avoids `v`, among vertices admitting a spindling rotation about `u`.
/// Ties go to the lower index. With `per_orbit`, only the lowest vertex of
/// each orbit is tried as `u`.
pub fn pick_spindling_pair(
    g: &UDGraph,
    cert: &AlphaStarCertificate,
    per_orbit: bool,
) -> Result<(usize, usize), PickError> {
    let orbits = &cert.orbits;
    if orbits.num_vertices() != g.len() {
        return Err(PickError::Shape);
    }
    let w = cert.weights.per_vertex(orbits);
    let heaviest = cert
        .weights
        .orbit_weights
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(j, _)| j)
        .ok_or(PickError::NoValidPair)?;
    let v = orbits.members()[heaviest][0];
    let mut solver = Solver::new(g);
    let mut scored = Vec::new();
    let reps: Vec<usize> = if per_orbit {
        orbits.members().iter().map(|m| m[0]).collect()
    } else {
        (0..g.len()).collect()
    };
    for u in reps.into_iter().filter(|&u| u != v) {
        let r = solver.solve(&w, &[u], &[v])?;
        scored.push((r.weight, u));
    }
    scored.sort();
    scored
        .into_iter()
        .map(|(_, u)| u)
        .find(|&u| spindle_rotation(g, u, v).is_ok())
        .map(|u| (u, v))
        .ok_or(PickError::NoValidPair)
}

/// Printable bounds: α* exactly, and decimal bounds that remain valid after
/// rounding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub alpha_star: Rational,
    pub chi_f: Rational,
    /// α* rounded up to 10 decimals: an upper bound on m₁.
    pub m1_upper_decimal: String,
    /// χ_f rounded down to 10 decimals: a lower bound on χ_f.
    pub chi_f_lower_decimal: String,
}

impl std::fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "alpha* = {}", self.alpha_star)?;
        writeln!(f, "chi_f  = {}", self.chi_f)?;
        writeln!(f, "m1(R^2) <= {}", self.m1_upper_decimal)?;
        write!(f, "chi_f(R^2) >= {}", self.chi_f_lower_decimal)
    }
}

pub fn report_bounds(cert: &AlphaStarCertificate) -> BoundsReport {
    BoundsReport {
        alpha_star: cert.alpha_star.clone(),
        chi_f: cert.chi_f.clone(),
        m1_upper_decimal: decimal(&cert.alpha_star, 10, true),
        chi_f_lower_decimal: decimal(&cert.chi_f, 10, false),
    }
}

/// Nonnegative rational to `places` decimals, rounded up or down, with
/// trailing zeros trimmed.
pub fn decimal(q: &Rational, places: u32, round_up: bool) -> String {
    let scale = BigInt::from(10).pow(places);
    let scaled = q * Rational::from_integer(scale.clone());
    let k = if round_up {
        scaled.ceil().to_integer()
    } else {
        scaled.floor().to_integer()
    };
    let int = &k / &scale;
    let frac = (&k % &scale).to_string();
    let frac = format!("{}{}", "0".repeat(places as usize - frac.len()), frac);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, FieldElem};
    use crate::geometry::{rotate, Point, RotationSpec};
    use crate::graph::SimpleGraph;
    use crate::symmetry::{automorphism_orbits_seeded, geometric_orbits};
    use std::time::Duration;

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

    fn full_cert(g: &SimpleGraph) -> AlphaStarCertificate {
        let o = automorphism_orbits_seeded(g, Vec::new(), Duration::from_secs(10)).unwrap();
        alpha_star(g, &o.partition, &o.witnesses).unwrap()
    }

    #[test]
    fn golden_values() {
        let p3 = SimpleGraph::new(3, &[(0, 1), (1, 2)]);
        let c = full_cert(&p3);
        assert_eq!(c.alpha_star, rat(1, 2));
        assert_eq!(c.weights.orbit_weights, vec![rat(1, 4), rat(1, 2)]);
        assert!(verify_certificate(&p3, &c).is_ok());

        let m = full_cert(&moser());
        assert_eq!(m.alpha_star, rat(2, 7));
        assert_eq!(m.chi_f, rat(7, 2));
        assert!(verify_certificate(&moser(), &m).is_ok());
        let single = alpha_star(&moser(), &OrbitPartition::singletons(7), &[]).unwrap();
        assert_eq!(single.alpha_star, rat(2, 7));

        let c5 = SimpleGraph::cycle(5);
        assert_eq!(full_cert(&c5).alpha_star, rat(2, 5));
    }

    #[test]
    fn heuristic_pricing_agrees() {
        let opts = AlphaStarOptions {
            heuristic_rounds: 20,
            ..Default::default()
        };
        let r = run(&moser(), &OrbitPartition::singletons(7), &opts).unwrap();
        match r.outcome {
            Outcome::Certified(c) => assert_eq!(c.alpha_star, rat(2, 7)),
            Outcome::Stopped { .. } => panic!("no deadline"),
        }
    }

    #[test]
    fn loop_bounds_are_monotone() {
        let r = run(&moser(), &OrbitPartition::singletons(7), &Default::default()).unwrap();
        let lows: Vec<&Rational> = r.trace.iter().filter_map(|i| i.optlow.as_ref()).collect();
        let ups: Vec<&Rational> = r.trace.iter().filter_map(|i| i.optup.as_ref()).collect();
        assert!(lows.windows(2).all(|p| p[0] <= p[1]));
        assert!(ups.windows(2).all(|p| p[0] >= p[1]));
        assert_eq!(lows.last(), ups.last());
    }

    #[test]
    fn tampering_is_detected() {
        let p3 = SimpleGraph::new(3, &[(0, 1), (1, 2)]);
        let c = full_cert(&p3);
        let mut bad = c.clone();
        bad.weights.orbit_weights = vec![rat(1, 3), rat(1, 3)];
        assert!(verify_certificate(&p3, &bad).is_err());
        let mut bad = c.clone();
        bad.witness_sets[0] = vec![0, 1];
        assert_eq!(verify_certificate(&p3, &bad), Err(VerifyError::Witness(0)));
        let mut bad = c.clone();
        bad.graph_hash = "00".into();
        assert!(matches!(
            verify_certificate(&p3, &bad),
            Err(VerifyError::GraphHash { .. })
        ));
        let mut bad = c.clone();
        bad.orbit_generators.clear();
        assert_eq!(verify_certificate(&p3, &bad), Err(VerifyError::Orbits));
        let json = c.to_json();
        assert!(json.contains("\"1/4\""));
        assert_eq!(AlphaStarCertificate::from_json(&json).unwrap(), c);
    }

    fn geometric_p3() -> UDGraph {
        UDGraph::build([Point::from_ints(0, 0), Point::from_ints(1, 0), Point::from_ints(2, 0)])
    }

    fn cert_for(g: &UDGraph) -> AlphaStarCertificate {
        let o = geometric_orbits(g);
        alpha_star(g, &o.partition, &o.witnesses).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let g = geometric_p3();
        let swap = vec![vec![2, 1, 0]];
        let c = alpha_star(&g, &OrbitPartition::from_labels(&[0, 1, 0]), &swap).unwrap();
        assert_eq!(c.weights.orbit_weights, vec![rat(1, 4), rat(1, 2)]);
        let r = reduce(&g, &c, &rat(0, 1)).unwrap();
        assert_eq!(r.epsilon, rat(0, 1));
        assert_eq!(r.graph, g);
        let r = reduce(&g, &c, &rat(1, 3)).unwrap();
        assert_eq!(r.epsilon, rat(1, 2));
        assert_eq!(r.kept, vec![1]);
        let single = cert_for(&r.graph);
        assert_eq!(single.alpha_star, rat(1, 1));
        assert!((Rational::one() - &r.epsilon) * &single.alpha_star <= c.alpha_star);
        assert_eq!(reduce(&g, &c, &rat(1, 1)), Err(ReduceError::EverythingDeleted));
    }

    #[test]
    fn rhombus_pair_is_the_long_diagonal() {
        let far = Point::new(
            FieldElem::from_rational(rat(3, 2)),
            FieldElem::from_ratios([(0, 1), (1, 2), (0, 1), (0, 1)]),
        );
        let g = UDGraph::build([
            Point::origin(),
            Point::from_ints(1, 0),
            rotate(&Point::from_ints(1, 0), &Point::origin(), &RotationSpec::pi_3()),
            far,
        ]);
        let c = cert_for(&g);
        assert_eq!(c.alpha_star, rat(1, 3));
        let (u, v) = pick_spindling_pair(&g, &c, false).unwrap();
        assert_eq!(
            crate::geometry::dist2(g.vertex(u), g.vertex(v)),
            FieldElem::from_int(3)
        );
    }

    #[test]
    fn path_pair_is_returned() {
        let g = geometric_p3();
        let c = cert_for(&g);
        let (u, v) = pick_spindling_pair(&g, &c, false).unwrap();
        assert_ne!(u, v);
        assert!(spindle_rotation(&g, u, v).is_ok());
    }

    #[test]
    fn decimals() {
        let m = AlphaStarCertificate {
            graph_hash: String::new(),
            orbits: OrbitPartition::singletons(1),
            orbit_generators: Vec::new(),
            weights: WeightDist {
                orbit_weights: vec![rat(1, 1)],
            },
            alpha_star: rat(2, 7),
            chi_f: rat(7, 2),
            m1_upper: rat(2, 7),
            witness_sets: Vec::new(),
            set_multipliers: Vec::new(),
        };
        let r = report_bounds(&m);
        assert_eq!(r.m1_upper_decimal, "0.2857142858");
        assert_eq!(r.chi_f_lower_decimal, "3.5");
        assert_eq!(decimal(&rat(1, 2), 10, true), "0.5");
        assert_eq!(decimal(&rat(2, 1), 10, false), "2");
        assert_eq!(decimal(&rat(1, 3), 10, false), "0.3333333333");
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::field::rat;
    use crate::structures::alpha_brute;
    use crate::symmetry::geometric_orbits;
    use crate::testutil::subgraph;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mwis_matches_brute_force(
            g in subgraph(),
            ws in prop::collection::vec((0i64..=20, 1i64..=8), 16),
        ) {
            let w: Vec<Rational> = (0..g.len()).map(|i| rat(ws[i].0, ws[i].1)).collect();
            let r = Solver::new(&g).solve(&w, &[], &[]).unwrap();
            prop_assert_eq!(&r.weight, &alpha_brute(&g, &w).unwrap());
            prop_assert!(is_independent(&g, &Bitset::from_indices(g.len(), r.set.iter().copied())));
        }

        #[test]
        fn loop_bounds_are_monotone(g in subgraph(), rounds in 0usize..40, seed in any::<u64>()) {
            let o = geometric_orbits(&g);
            let opts = AlphaStarOptions {
                heuristic_rounds: rounds,
                seed,
                orbit_generators: o.witnesses.clone(),
                ..Default::default()
            };
            let r = run(&g, &o.partition, &opts).unwrap();
            let lows: Vec<_> = r.trace.iter().filter_map(|i| i.optlow.clone()).collect();
            let ups: Vec<_> = r.trace.iter().filter_map(|i| i.optup.clone()).collect();
            prop_assert!(lows.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(ups.windows(2).all(|w| w[0] >= w[1]));
            let cert = match r.outcome {
                Outcome::Certified(c) => *c,
                Outcome::Stopped { .. } => unreachable!("no deadline"),
            };
            for it in &r.trace {
                if let (Some(l), Some(u)) = (&it.optlow, &it.optup) {
                    prop_assert!(*l <= cert.alpha_star && cert.alpha_star <= *u);
                }
            }
            prop_assert!(verify_certificate(&g, &cert).is_ok());
            let single = alpha_star(&g, &OrbitPartition::singletons(g.len()), &[]).unwrap();
            prop_assert_eq!(single.alpha_star, cert.alpha_star);
        }

        #[test]
        fn reduction_degrades_by_at_most_epsilon(g in subgraph(), pick in any::<usize>()) {
            let o = geometric_orbits(&g);
            let cert = alpha_star(&g, &o.partition, &o.witnesses).unwrap();
            let mut taus = cert.weights.per_vertex(&cert.orbits);
            taus.sort();
            taus.dedup();
            let tau = &taus[pick % taus.len()];
            if let Ok(red) = reduce(&g, &cert, tau) {
                let o2 = geometric_orbits(&red.graph);
                let sub = alpha_star(&red.graph, &o2.partition, &o2.witnesses).unwrap();
                prop_assert!((Rational::one() - &red.epsilon) * &sub.alpha_star <= cert.alpha_star);
            }
        }
    }
}
