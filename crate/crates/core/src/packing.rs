//! Two tree-packing problems solved through the max-weight solver.
//!
//! Packing vertex-disjoint trees whose orders are not divisible by `k`
//! is the feasible-set problem for the all-ones labelling over `Z_k`.
//! Covering the vertices with vertex-disjoint trees that each meet `S`
//! is the feasible-set problem for the indicator labelling of `S` over
//! `Z`. The solver's edge set is decoded into its components.

use std::collections::BTreeSet;

use num_rational::BigRational;
use thiserror::Error;

use crate::abelian::{GroupDescriptor, GroupElement};
use crate::greedy::{solve_max_weight, WeightError, WeightMap};
use crate::labelled_graph::{EdgeSet, GraphError, LabelledGraph, Multigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    #[error("k must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("the terminal set S is empty")]
    EmptyTerminals,
    #[error("terminal {0} is not a vertex of the graph")]
    UnknownTerminal(VertexId),
    #[error("the component containing {0} has no vertex of S")]
    ComponentMissesTerminals(VertexId),
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedTree {
    pub vertices: BTreeSet<VertexId>,
    pub edges: EdgeSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    pub trees: Vec<PackedTree>,
    pub total: BigRational,
}

fn solve_and_decode(g: &LabelledGraph, w: &WeightMap) -> Result<Packing, PackingError> {
    let solution = solve_max_weight(g, w)?;
    let trees = g
        .components(Some(&solution.edges))?
        .into_iter()
        .map(|c| PackedTree {
            vertices: c.vertices,
            edges: c.edges,
        })
        .collect();
    Ok(Packing {
        trees,
        total: solution.total,
    })
}

/// Maximum-weight packing of vertex-disjoint trees with orders not
/// divisible by `k`. Every component of the chosen forest is reported,
/// single vertices included.
pub fn pack_trees_mod_k(g: &Multigraph, k: u64, w: &WeightMap) -> Result<Packing, PackingError> {
    if k < 2 {
        return Err(PackingError::ModulusTooSmall(k));
    }
    let labelled = g.label_with(GroupDescriptor::Cyclic(k), |_| GroupElement::Cyclic {
        modulus: k,
        value: 1,
    })?;
    solve_and_decode(&labelled, w)
}

/// Maximum-weight partition of the vertices into trees that each contain
/// a vertex of `s`. Every component of `g` must meet `s`.
pub fn pack_s_trees(g: &Multigraph, s: &BTreeSet<VertexId>, w: &WeightMap) -> Result<Packing, PackingError> {
    if s.is_empty() {
        return Err(PackingError::EmptyTerminals);
    }
    if let Some(v) = s.iter().find(|v| !g.contains_vertex(v)) {
        return Err(PackingError::UnknownTerminal(v.clone()));
    }
    for component in g.component_vertex_sets() {
        if component.is_disjoint(s) {
            let first = component.into_iter().next().expect("components are non-empty");
            return Err(PackingError::ComponentMissesTerminals(first));
        }
    }
    let labelled = g.label_with(GroupDescriptor::Integers, |v| {
        GroupElement::Integer(u8::from(s.contains(v)).into())
    })?;
    solve_and_decode(&labelled, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelled_graph::Edge;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Multigraph {
        Multigraph::new(
            vertices.iter().map(|&v| VertexId::from(v)).collect(),
            edges.iter().map(|&(id, u, v)| Edge::new(id, u, v)).collect(),
        )
        .unwrap()
    }

    fn unit(g: &Multigraph) -> WeightMap {
        WeightMap::from_integers(g.edges().iter().map(|e| (e.id.clone(), 1)))
    }

    fn terminals(ids: &[&str]) -> BTreeSet<VertexId> {
        ids.iter().map(|&v| VertexId::from(v)).collect()
    }

    /// Best packing found by checking every edge subset directly against
    /// the packing conditions.
    fn brute<P>(g: &Multigraph, w: &WeightMap, valid_tree: P) -> Option<BigRational>
    where
        P: Fn(&BTreeSet<VertexId>) -> bool,
    {
        let plain = g
            .label_with(GroupDescriptor::Cyclic(2), |_| GroupElement::Cyclic { modulus: 2, value: 0 })
            .unwrap();
        let m = g.edges().len();
        (0u64..1 << m)
            .filter_map(|bits| {
                let f: EdgeSet = (0..m)
                    .filter(|i| bits >> i & 1 == 1)
                    .map(|i| g.edges()[i].id.clone())
                    .collect();
                let ok = plain.is_acyclic(&f).unwrap()
                    && plain.components(Some(&f)).unwrap().iter().all(|c| valid_tree(&c.vertices));
                ok.then(|| w.total(&f))
            })
            .max()
    }

    fn check_decoding(g: &Multigraph, p: &Packing) {
        let mut seen = BTreeSet::new();
        for t in &p.trees {
            assert!(t.vertices.iter().all(|v| seen.insert(v.clone())));
            assert_eq!(t.edges.len() + 1, t.vertices.len());
        }
        assert_eq!(seen.len(), g.vertices().len());
    }

    #[test]
    fn p4_mod_two() {
        let g = graph(&["v1", "v2", "v3", "v4"], &[("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v3", "v4")]);
        let p = pack_trees_mod_k(&g, 2, &unit(&g)).unwrap();
        assert_eq!(p.total, q(2));
        let mut orders: Vec<usize> = p.trees.iter().map(|t| t.vertices.len()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 3]);
    }

    #[test]
    fn single_vertex() {
        let g = graph(&["v"], &[]);
        let p = pack_trees_mod_k(&g, 5, &WeightMap::new()).unwrap();
        assert!(p.total.is_zero());
        assert_eq!(p.trees.len(), 1);
        assert!(p.trees[0].edges.is_empty());
    }

    #[test]
    fn triangle_mod_three() {
        let g = graph(&["a", "b", "c"], &[("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")]);
        let p = pack_trees_mod_k(&g, 3, &unit(&g)).unwrap();
        assert_eq!(p.total, q(1));
        check_decoding(&g, &p);
    }

    #[test]
    fn modulus_must_be_at_least_two() {
        let g = graph(&["v"], &[]);
        assert_eq!(
            pack_trees_mod_k(&g, 1, &WeightMap::new()).unwrap_err(),
            PackingError::ModulusTooSmall(1)
        );
    }

    #[test]
    fn star_with_center_terminal() {
        let g = graph(&["c", "x", "y", "z"], &[("cx", "c", "x"), ("cy", "c", "y"), ("cz", "c", "z")]);
        let p = pack_s_trees(&g, &terminals(&["c"]), &unit(&g)).unwrap();
        assert_eq!(p.total, q(3));
        assert_eq!(p.trees.len(), 1);
    }

    #[test]
    fn negative_edge_forced_for_coverage() {
        let g = graph(&["u", "v"], &[("uv", "u", "v")]);
        let w = WeightMap::from_integers([("uv", -1)]);
        let p = pack_s_trees(&g, &terminals(&["u"]), &w).unwrap();
        assert_eq!(p.total, q(-1));
    }

    #[test]
    fn forest_with_all_terminals() {
        let g = graph(
            &["a", "b", "c", "d", "e"],
            &[("ab", "a", "b"), ("bc", "b", "c"), ("de", "d", "e")],
        );
        let p = pack_s_trees(&g, &terminals(&["a", "b", "c", "d", "e"]), &unit(&g)).unwrap();
        assert_eq!(p.total, q(3));
        assert_eq!(p.trees.len(), 2);
    }

    #[test]
    fn terminal_errors() {
        let g = graph(&["a", "b", "c"], &[("ab", "a", "b")]);
        let w = unit(&g);
        assert_eq!(
            pack_s_trees(&g, &terminals(&["a"]), &w).unwrap_err(),
            PackingError::ComponentMissesTerminals("c".into())
        );
        assert_eq!(pack_s_trees(&g, &BTreeSet::new(), &w).unwrap_err(), PackingError::EmptyTerminals);
        assert_eq!(
            pack_s_trees(&g, &terminals(&["q"]), &w).unwrap_err(),
            PackingError::UnknownTerminal("q".into())
        );
    }

    fn instance() -> impl Strategy<Value = (Multigraph, WeightMap, Vec<bool>)> {
        (1usize..=5)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    proptest::collection::vec((0..n, 0..n, -3i64..=4), 0..=7),
                    proptest::collection::vec(any::<bool>(), n),
                )
            })
            .prop_map(|(n, edges, marks)| {
                let vs: Vec<VertexId> = (0..n).map(|i| VertexId::new(format!("v{i}"))).collect();
                let es: Vec<Edge> = edges
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b, _))| Edge::new(format!("e{i}"), format!("v{a}"), format!("v{b}")))
                    .collect();
                let w = WeightMap::from_integers(edges.iter().enumerate().map(|(i, &(_, _, x))| (format!("e{i}"), x)));
                (Multigraph::new(vs, es).unwrap(), w, marks)
            })
    }

    proptest! {
        #[test]
        fn mod_k_matches_brute_force((g, w, _) in instance(), k in 2u64..=4) {
            let p = pack_trees_mod_k(&g, k, &w).unwrap();
            check_decoding(&g, &p);
            prop_assert!(p.trees.iter().all(|t| t.vertices.len() as u64 % k != 0));
            let best = brute(&g, &w, |vs| vs.len() as u64 % k != 0).unwrap();
            prop_assert_eq!(p.total, best);
        }

        #[test]
        fn s_trees_match_brute_force((g, w, marks) in instance()) {
            let mut s: BTreeSet<VertexId> = g
                .vertices()
                .iter()
                .zip(&marks)
                .filter(|(_, &m)| m)
                .map(|(v, _)| v.clone())
                .collect();
            for c in g.component_vertex_sets() {
                if c.is_disjoint(&s) {
                    s.insert(c.into_iter().next().unwrap());
                }
            }
            let p = pack_s_trees(&g, &s, &w).unwrap();
            check_decoding(&g, &p);
            prop_assert!(p.trees.iter().all(|t| !t.vertices.is_disjoint(&s)));
            let best = brute(&g, &w, |vs| !vs.is_disjoint(&s)).unwrap();
            prop_assert_eq!(p.total, best);
        }
    }
}
