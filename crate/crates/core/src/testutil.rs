//! Proptest strategies shared by the module test suites.

use std::sync::OnceLock;

use proptest::prelude::*;

use crate::bitset::Bitset;
use crate::dataset::final_graph;
use crate::field::{rat, FieldElem, Rational};
use crate::geometry::{Point, RotationSpec};
use crate::graph::{Adjacency, UDGraph};

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

pub fn field_elem() -> impl Strategy<Value = FieldElem> {
    let q = || (-12i64..=12, 1i64..=9);
    [q(), q(), q(), q()].prop_map(FieldElem::from_ratios)
}

pub fn point() -> impl Strategy<Value = Point> {
    (field_elem(), field_elem()).prop_map(|(x, y)| Point::new(x, y))
}

/// The spindling rotation of the unit rhombus: cos = 5/6, sin = √11/6.
pub fn spindle_turn() -> RotationSpec {
    RotationSpec::new(
        FieldElem::from_rational(rat(5, 6)),
        FieldElem::from_ratios([(0, 1), (0, 1), (1, 6), (0, 1)]),
    )
    .unwrap()
}

pub fn dataset_graph() -> &'static UDGraph {
    static G: OnceLock<UDGraph> = OnceLock::new();
    G.get_or_init(|| final_graph().unwrap())
}

/// Connected induced subgraph of the dataset graph grown from `start`.
fn grown_subgraph(start: usize, size: usize, picks: &[usize]) -> UDGraph {
    let g = dataset_graph();
    let mut inside = Bitset::new(g.len());
    let mut frontier = vec![start % g.len()];
    let mut k = 0;
    while inside.count() < size && !frontier.is_empty() {
        let i = picks[k % picks.len()] % frontier.len();
        k += 1;
        let v = frontier.swap_remove(i);
        if inside.contains(v) {
            continue;
        }
        inside.insert(v);
        frontier.extend(g.neighbors(v).iter().filter(|&u| !inside.contains(u)));
    }
    g.induced_subgraph(&inside)
}

/// Small connected pieces of the 607-vertex graph.
pub fn subgraph() -> impl Strategy<Value = UDGraph> {
    (0usize..607, 2usize..=16, prop::collection::vec(any::<usize>(), 16))
        .prop_map(|(s, n, picks)| grown_subgraph(s, n, &picks))
}
