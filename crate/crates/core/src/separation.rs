//! Deciding whether some feasible set contains `X` and avoids `Y`.
//!
//! Such a set exists exactly when `X` is acyclic and contracting `X` and
//! deleting `Y` does not create new all-zero components. Contraction is
//! done virtually with a union-find structure, so a query costs
//! near-linear time in the size of the graph.

use thiserror::Error;

use crate::abelian::GroupElement;
use crate::dsu::DisjointSet;
use crate::labelled_graph::{EdgeId, EdgeSet, GraphError, LabelledGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparationError {
    #[error("edge {0} is in both X and Y")]
    Overlap(EdgeId),
    #[error("no feasible set contains X and avoids Y")]
    NotSeparable,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Separability queries on a fixed graph, with `X` and `Y` given as
/// membership vectors over edge positions.
#[derive(Debug, Clone, Copy)]
pub struct SeparationOracle<'g> {
    graph: &'g LabelledGraph,
}

impl<'g> SeparationOracle<'g> {
    pub fn new(graph: &'g LabelledGraph) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &'g LabelledGraph {
        self.graph
    }

    /// Union-find over `X` alone, or `None` if `X` has a cycle.
    fn contract(&self, x: &[bool]) -> Option<DisjointSet> {
        let g = self.graph;
        let mut classes = DisjointSet::new(g.vertex_count());
        for (i, _) in x.iter().enumerate().filter(|(_, &inside)| inside) {
            let (u, v) = g.ends(i);
            if !classes.union(u, v) {
                return None;
            }
        }
        Some(classes)
    }

    /// Label sum of every class, stored at the class root.
    fn class_sums(&self, classes: &mut DisjointSet) -> Vec<Option<GroupElement>> {
        let g = self.graph;
        let mut sums: Vec<Option<GroupElement>> = vec![None; g.vertex_count()];
        for i in 0..g.vertex_count() {
            let r = classes.find(i);
            match &mut sums[r] {
                Some(s) => s
                    .add_assign(g.label_at(i))
                    .expect("labels share the graph's group"),
                slot => *slot = Some(g.label_at(i).clone()),
            }
        }
        sums
    }

    /// κ of the graph obtained by contracting `x` and deleting `y`;
    /// `None` if `x` has a cycle.
    pub fn minor_kappa(&self, x: &[bool], y: &[bool]) -> Option<usize> {
        let g = self.graph;
        let n = g.vertex_count();
        let mut classes = self.contract(x)?;
        let sums = self.class_sums(&mut classes);
        let mut merged = DisjointSet::new(n);
        for i in 0..g.edge_count() {
            if !y[i] {
                let (u, v) = g.ends(i);
                merged.union(u, v);
            }
        }
        let mut nonzero = vec![false; n];
        let mut is_root = vec![false; n];
        for i in 0..n {
            let r = merged.find(i);
            is_root[r] = true;
            if sums[i].as_ref().is_some_and(|s| !s.is_zero()) {
                nonzero[r] = true;
            }
        }
        Some((0..n).filter(|&r| is_root[r] && !nonzero[r]).count())
    }

    /// Whether some acyclic gamma-nonzero set contains `x` and avoids `y`.
    /// The masks must be disjoint.
    pub fn query(&self, x: &[bool], y: &[bool]) -> bool {
        match self.minor_kappa(x, y) {
            Some(k) => k == self.graph.kappa(),
            None => false,
        }
    }
}

fn disjoint_masks(g: &LabelledGraph, x: &EdgeSet, y: &EdgeSet) -> Result<(Vec<bool>, Vec<bool>), SeparationError> {
    let xm = g.mask(x)?;
    let ym = g.mask(y)?;
    if let Some(e) = x.intersection(y).next() {
        return Err(SeparationError::Overlap(e.clone()));
    }
    Ok((xm, ym))
}

pub fn is_separable(g: &LabelledGraph, x: &EdgeSet, y: &EdgeSet) -> Result<bool, SeparationError> {
    let (xm, ym) = disjoint_masks(g, x, y)?;
    Ok(SeparationOracle::new(g).query(&xm, &ym))
}

/// A feasible set containing `x` and avoiding `y`.
///
/// Takes a spanning forest of the contracted graph, built greedily in
/// edge-id order. In each tree whose class sums add to zero without all
/// being zero, the smallest-id tree edge that cuts off exactly one
/// nonzero class is removed. The result is that forest together with `x`.
pub fn extend_to_feasible(g: &LabelledGraph, x: &EdgeSet, y: &EdgeSet) -> Result<EdgeSet, SeparationError> {
    let (xm, ym) = disjoint_masks(g, x, y)?;
    let oracle = SeparationOracle::new(g);
    if !oracle.query(&xm, &ym) {
        return Err(SeparationError::NotSeparable);
    }
    let n = g.vertex_count();
    let mut classes = oracle.contract(&xm).expect("separable implies X acyclic");
    let sums = oracle.class_sums(&mut classes);
    let class_of: Vec<usize> = (0..n).map(|i| classes.find(i)).collect();

    let mut order: Vec<usize> = (0..g.edge_count()).filter(|&i| !xm[i] && !ym[i]).collect();
    order.sort_by(|&a, &b| g.edges()[a].id.cmp(&g.edges()[b].id));
    let mut forest = DisjointSet::new(n);
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut tree_edges = Vec::new();
    for i in order {
        let (u, v) = g.ends(i);
        let (cu, cv) = (class_of[u], class_of[v]);
        if forest.union(cu, cv) {
            adjacency[cu].push((cv, i));
            adjacency[cv].push((cu, i));
            tree_edges.push(i);
        }
    }

    let nonzero = |c: usize| sums[c].as_ref().is_some_and(|s| !s.is_zero());
    let mut dropped = vec![false; g.edge_count()];
    let mut seen = vec![false; n];
    let mut below = vec![0usize; n];
    for root in (0..n).filter(|&c| class_of[c] == c) {
        if seen[root] {
            continue;
        }
        // Iterative DFS recording parent edges and a preorder.
        let mut preorder = Vec::new();
        let mut parent_edge = Vec::new();
        let mut stack = vec![(root, None)];
        seen[root] = true;
        while let Some((c, via)) = stack.pop() {
            preorder.push(c);
            parent_edge.push(via);
            for &(d, e) in &adjacency[c] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push((d, Some((c, e))));
                }
            }
        }
        let mut total = g.group().zero();
        for &c in &preorder {
            if let Some(s) = &sums[c] {
                total.add_assign(s).expect("labels share the graph's group");
            }
        }
        let total_nonzero = preorder.iter().filter(|&&c| nonzero(c)).count();
        if !total.is_zero() || total_nonzero == 0 {
            continue;
        }
        let mut candidate: Option<usize> = None;
        for (idx, &c) in preorder.iter().enumerate().rev() {
            below[c] += usize::from(nonzero(c));
            if let Some((p, e)) = parent_edge[idx] {
                below[p] += below[c];
                let splits_one = below[c] == 1 || total_nonzero - below[c] == 1;
                let smaller = candidate.is_none_or(|best| g.edges()[e].id < g.edges()[best].id);
                if splits_one && smaller {
                    candidate = Some(e);
                }
            }
        }
        dropped[candidate.expect("a zero-sum tree with nonzero labels has a splitting edge")] = true;
    }

    let mut out: EdgeSet = x.clone();
    out.extend(
        tree_edges
            .into_iter()
            .filter(|&i| !dropped[i])
            .map(|i| g.edges()[i].id.clone()),
    );
    Ok(out)
}
