//! Seeded instance generators and brute-force oracles shared by the
//! integration suites.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use gamma_graphic::abelian::{GroupDescriptor, GroupElement};
use gamma_graphic::greedy::WeightMap;
use gamma_graphic::labelled_graph::{Edge, EdgeSet, LabelledGraph, Multigraph, VertexId};
use gamma_graphic::delta_matroid::enumerate_gamma_graphic;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The label groups exercised by the suites.
pub fn groups() -> Vec<(&'static str, GroupDescriptor)> {
    vec![
        ("Z2", GroupDescriptor::Cyclic(2)),
        ("Z3", GroupDescriptor::Cyclic(3)),
        ("Z4", GroupDescriptor::Cyclic(4)),
        ("Z", GroupDescriptor::Integers),
        ("Z2^2", GroupDescriptor::Vector { p: 2, k: 2 }),
    ]
}

/// Zero with probability about 0.3, otherwise uniform; integers are
/// drawn from `-3..=3` so that zero sums stay common.
pub fn random_label(rng: &mut ChaCha8Rng, group: &GroupDescriptor) -> GroupElement {
    if rng.gen_bool(0.3) {
        return group.zero();
    }
    any_label(rng, group)
}

fn any_label(rng: &mut ChaCha8Rng, group: &GroupDescriptor) -> GroupElement {
    match group {
        GroupDescriptor::Integers => group.residue(rng.gen_range(-3..=3)).unwrap(),
        GroupDescriptor::Cyclic(k) => group.residue(rng.gen_range(0..*k as i64)).unwrap(),
        GroupDescriptor::Vector { p, k } => GroupElement::Vector {
            p: *p,
            coords: (0..*k).map(|_| rng.gen_range(0..*p)).collect(),
        },
        GroupDescriptor::Product(factors) => {
            GroupElement::Tuple(factors.iter().map(|f| any_label(rng, f)).collect())
        }
    }
}

pub fn nonzero_label(rng: &mut ChaCha8Rng, group: &GroupDescriptor) -> GroupElement {
    loop {
        let l = any_label(rng, group);
        if !l.is_zero() {
            return l;
        }
    }
}

/// Endpoints for `m` edges on `n` vertices; about one edge in ten is a loop.
pub fn random_edges(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Edge> {
    (0..m)
        .map(|i| {
            let u = rng.gen_range(0..n);
            let v = if rng.gen_bool(0.1) { u } else { rng.gen_range(0..n) };
            Edge::new(format!("e{i}"), format!("v{u}"), format!("v{v}"))
        })
        .collect()
}

pub fn graph_with_labels<F>(rng: &mut ChaCha8Rng, group: &GroupDescriptor, max_v: usize, max_e: usize, mut label: F) -> LabelledGraph
where
    F: FnMut(&mut ChaCha8Rng) -> GroupElement,
{
    let n = rng.gen_range(1..=max_v);
    let m = rng.gen_range(0..=max_e);
    let vertices: Vec<(String, GroupElement)> = (0..n).map(|i| (format!("v{i}"), label(rng))).collect();
    let edges: Vec<(String, String, String)> = random_edges(rng, n, m)
        .into_iter()
        .map(|e| (e.id.to_string(), e.u.to_string(), e.v.to_string()))
        .collect();
    LabelledGraph::from_parts(group.clone(), vertices, edges).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, group: &GroupDescriptor, max_v: usize, max_e: usize) -> LabelledGraph {
    graph_with_labels(rng, group, max_v, max_e, |r| random_label(r, group))
}

pub fn random_nonzero_graph(rng: &mut ChaCha8Rng, group: &GroupDescriptor, max_v: usize, max_e: usize) -> LabelledGraph {
    graph_with_labels(rng, group, max_v, max_e, |r| nonzero_label(r, group))
}

pub fn random_multigraph(rng: &mut ChaCha8Rng, max_v: usize, max_e: usize) -> Multigraph {
    let n = rng.gen_range(1..=max_v);
    let m = rng.gen_range(0..=max_e);
    let vertices = (0..n).map(|i| VertexId::new(format!("v{i}"))).collect();
    Multigraph::new(vertices, random_edges(rng, n, m)).unwrap()
}

/// A spanning tree on `n` vertices plus random extra edges, `m` in total.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, group: &GroupDescriptor, n: usize, m: usize) -> LabelledGraph {
    let vertices: Vec<(String, GroupElement)> =
        (0..n).map(|i| (format!("v{i}"), random_label(rng, group))).collect();
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        edges.push((format!("e{}", edges.len()), format!("v{parent}"), format!("v{i}")));
    }
    while edges.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        edges.push((format!("e{}", edges.len()), format!("v{u}"), format!("v{v}")));
    }
    LabelledGraph::from_parts(group.clone(), vertices, edges).unwrap()
}

/// Weights `a / b` with `a` in `-4..=4` and `b` in `1..=3`, so that
/// negative weights, zeros and ties in absolute value all occur.
pub fn random_weights<'a, I>(rng: &mut ChaCha8Rng, edges: I) -> WeightMap
where
    I: IntoIterator<Item = &'a Edge>,
{
    let mut w = WeightMap::new();
    for e in edges {
        let num: i64 = rng.gen_range(-4..=4);
        let den: i64 = rng.gen_range(1..=3);
        w.insert(e.id.clone(), BigRational::new(num.into(), den.into()));
    }
    w
}

pub fn subset(g: &LabelledGraph, bits: u64) -> EdgeSet {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| bits >> i & 1 == 1)
        .map(|(_, e)| e.id.clone())
        .collect()
}

/// Feasible sets as bitmasks over edge positions in `g`.
pub fn feasible_masks(g: &LabelledGraph) -> Vec<u64> {
    let pos: HashMap<_, _> = g.edges().iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
    enumerate_gamma_graphic(g)
        .unwrap()
        .feasible_sets()
        .into_iter()
        .map(|f| f.iter().fold(0u64, |m, e| m | 1 << pos[e]))
        .collect()
}

/// Best total over all edge sets whose spanning subgraph is a forest
/// with every component accepted by `valid`, checked directly.
pub fn brute_packing<P>(g: &Multigraph, w: &WeightMap, valid: P) -> Option<BigRational>
where
    P: Fn(&BTreeSet<VertexId>) -> bool,
{
    let n = g.vertices().len();
    let index: HashMap<&VertexId, usize> = g.vertices().iter().enumerate().map(|(i, v)| (v, i)).collect();
    let m = g.edges().len();
    let mut best: Option<BigRational> = None;
    'subsets: for bits in 0u64..1 << m {
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                x = parent[x];
            }
            x
        }
        let mut f = EdgeSet::new();
        for (i, e) in g.edges().iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1) {
            let (a, b) = (root(&mut parent, index[&e.u]), root(&mut parent, index[&e.v]));
            if a == b {
                continue 'subsets;
            }
            parent[a] = b;
            f.insert(g.edges()[i].id.clone());
        }
        let mut parts: HashMap<usize, BTreeSet<VertexId>> = HashMap::new();
        for (i, v) in g.vertices().iter().enumerate() {
            parts.entry(root(&mut parent, i)).or_default().insert(v.clone());
        }
        if parts.values().all(&valid) {
            let total = w.total(&f);
            if best.as_ref().is_none_or(|b| total > *b) {
                best = Some(total);
            }
        }
    }
    best
}
