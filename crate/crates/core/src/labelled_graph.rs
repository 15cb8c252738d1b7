//! Multigraphs whose vertices carry labels in an abelian group.
//!
//! Loops and parallel edges are allowed everywhere; parallel edges are
//! distinguished by their ids. Graph values are immutable: every minor
//! operation returns a new graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::abelian::{GroupDescriptor, GroupElement, GroupError};
use crate::dsu::DisjointSet;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(String);

macro_rules! string_id {
    ($name:ident) => {
        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_string())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl From<&String> for $name {
            fn from(s: &String) -> Self {
                Self(s.clone())
            }
        }

        impl std::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

string_id!(VertexId);
string_id!(EdgeId);

/// A set of edge ids, ordered by id.
pub type EdgeSet = BTreeSet<EdgeId>;

pub fn edge_set<I, S>(ids: I) -> EdgeSet
where
    I: IntoIterator<Item = S>,
    S: Into<EdgeId>,
{
    ids.into_iter().map(Into::into).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("label of vertex {vertex} is not an element of {group}")]
    LabelOutsideGroup {
        vertex: VertexId,
        group: GroupDescriptor,
    },
    #[error("vertex {0} is not isolated")]
    NotIsolated(VertexId),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub label: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn new(id: impl Into<EdgeId>, u: impl Into<VertexId>, v: impl Into<VertexId>) -> Self {
        Self {
            id: id.into(),
            u: u.into(),
            v: v.into(),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// A connected component of a spanning subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: BTreeSet<VertexId>,
    pub edges: EdgeSet,
}

/// Result of a traced contraction: the minor plus, for every vertex of
/// the original graph, the id of the vertex it ended up in.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: LabelledGraph,
    pub merge_map: BTreeMap<VertexId, VertexId>,
}

#[derive(Debug, Clone)]
struct Topology {
    vertex_index: HashMap<VertexId, usize>,
    edge_index: HashMap<EdgeId, usize>,
    ends: Vec<(usize, usize)>,
    /// Component index in the whole graph, per vertex.
    component: Vec<usize>,
    component_size: Vec<usize>,
}

impl Topology {
    fn build(vertices: &[VertexId], edges: &[Edge]) -> Result<Self, GraphError> {
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, id) in vertices.iter().enumerate() {
            if vertex_index.insert(id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(id.clone()));
            }
        }
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut ends = Vec::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateEdge(e.id.clone()));
            }
            let lookup = |v: &VertexId| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| GraphError::UnknownVertex(v.clone()))
            };
            ends.push((lookup(&e.u)?, lookup(&e.v)?));
        }
        let mut dsu = DisjointSet::new(vertices.len());
        for &(u, v) in &ends {
            dsu.union(u, v);
        }
        let mut root_to_comp = HashMap::new();
        let mut component = Vec::with_capacity(vertices.len());
        let mut component_size = Vec::new();
        for i in 0..vertices.len() {
            let r = dsu.find(i);
            let next = root_to_comp.len();
            let c = *root_to_comp.entry(r).or_insert(next);
            if c == component_size.len() {
                component_size.push(0);
            }
            component_size[c] += 1;
            component.push(c);
        }
        Ok(Self {
            vertex_index,
            edge_index,
            ends,
            component,
            component_size,
        })
    }
}

/// An unlabelled multigraph; input to the packing frontends.
#[derive(Debug, Clone)]
pub struct Multigraph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    topology: Topology,
}

impl Multigraph {
    pub fn new(vertices: Vec<VertexId>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let topology = Topology::build(&vertices, &edges)?;
        Ok(Self {
            vertices,
            edges,
            topology,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.topology.vertex_index.contains_key(v)
    }

    /// Vertex sets of the connected components, in order of first vertex.
    pub fn component_vertex_sets(&self) -> Vec<BTreeSet<VertexId>> {
        let mut out = vec![BTreeSet::new(); self.topology.component_size.len()];
        for (i, v) in self.vertices.iter().enumerate() {
            out[self.topology.component[i]].insert(v.clone());
        }
        out
    }

    /// Attaches a label to every vertex.
    pub fn label_with<F>(&self, group: GroupDescriptor, mut label: F) -> Result<LabelledGraph, GraphError>
    where
        F: FnMut(&VertexId) -> GroupElement,
    {
        let vertices = self
            .vertices
            .iter()
            .map(|id| Vertex {
                id: id.clone(),
                label: label(id),
            })
            .collect();
        LabelledGraph::new(group, vertices, self.edges.clone())
    }
}

/// A multigraph with a group label on each vertex.
#[derive(Debug, Clone)]
pub struct LabelledGraph {
    group: GroupDescriptor,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    topology: Topology,
}

impl PartialEq for LabelledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for LabelledGraph {}

impl LabelledGraph {
    pub fn new(group: GroupDescriptor, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        group.validate()?;
        for v in &vertices {
            if !v.label.belongs_to(&group) {
                return Err(GraphError::LabelOutsideGroup {
                    vertex: v.id.clone(),
                    group,
                });
            }
        }
        let ids: Vec<VertexId> = vertices.iter().map(|v| v.id.clone()).collect();
        let topology = Topology::build(&ids, &edges)?;
        Ok(Self {
            group,
            vertices,
            edges,
            topology,
        })
    }

    /// Convenience constructor from `(id, label)` and `(id, u, v)` tuples.
    pub fn from_parts<V, E, S, T>(group: GroupDescriptor, vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = (S, GroupElement)>,
        E: IntoIterator<Item = (T, S, S)>,
        S: Into<String>,
        T: Into<String>,
    {
        let vertices = vertices
            .into_iter()
            .map(|(id, label)| Vertex {
                id: VertexId::new(id),
                label,
            })
            .collect();
        let edges = edges
            .into_iter()
            .map(|(id, u, v)| Edge::new(EdgeId::new(id), VertexId::new(u), VertexId::new(v)))
            .collect();
        Self::new(group, vertices, edges)
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: &VertexId) -> Option<&GroupElement> {
        self.topology.vertex_index.get(v).map(|&i| &self.vertices[i].label)
    }

    pub fn edge(&self, e: &EdgeId) -> Option<&Edge> {
        self.topology.edge_index.get(e).map(|&i| &self.edges[i])
    }

    pub fn edge_ids(&self) -> EdgeSet {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph {
            vertices: self.vertices.iter().map(|v| v.id.clone()).collect(),
            edges: self.edges.clone(),
            topology: self.topology.clone(),
        }
    }

    /// Same graph with every label replaced, possibly in another group.
    pub fn relabel<F>(&self, group: GroupDescriptor, mut label: F) -> Result<Self, GraphError>
    where
        F: FnMut(&Vertex) -> GroupElement,
    {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.id.clone(),
                label: label(v),
            })
            .collect();
        Self::new(group, vertices, self.edges.clone())
    }

    pub(crate) fn ends(&self, edge: usize) -> (usize, usize) {
        self.topology.ends[edge]
    }

    pub(crate) fn label_at(&self, vertex: usize) -> &GroupElement {
        &self.vertices[vertex].label
    }

    pub(crate) fn edge_position(&self, e: &EdgeId) -> Result<usize, GraphError> {
        self.topology
            .edge_index
            .get(e)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(e.clone()))
    }

    pub(crate) fn vertex_position(&self, v: &VertexId) -> Result<usize, GraphError> {
        self.topology
            .vertex_index
            .get(v)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(v.clone()))
    }

    /// Membership vector over edge positions.
    pub(crate) fn mask(&self, set: &EdgeSet) -> Result<Vec<bool>, GraphError> {
        let mut m = vec![false; self.edges.len()];
        for e in set {
            m[self.edge_position(e)?] = true;
        }
        Ok(m)
    }

    /// Connected components of the spanning subgraph `(V, restrict_to)`,
    /// or of the whole graph when `restrict_to` is `None`. Components are
    /// listed in order of their first vertex.
    pub fn components(&self, restrict_to: Option<&EdgeSet>) -> Result<Vec<Component>, GraphError> {
        let mask = match restrict_to {
            Some(set) => self.mask(set)?,
            None => vec![true; self.edges.len()],
        };
        let mut dsu = DisjointSet::new(self.vertices.len());
        for (i, &inside) in mask.iter().enumerate() {
            if inside {
                let (u, v) = self.ends(i);
                dsu.union(u, v);
            }
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Component> = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let r = dsu.find(i);
            let c = *slot.entry(r).or_insert_with(|| {
                out.push(Component {
                    vertices: BTreeSet::new(),
                    edges: EdgeSet::new(),
                });
                out.len() - 1
            });
            out[c].vertices.insert(v.id.clone());
        }
        for (i, &inside) in mask.iter().enumerate() {
            if inside {
                let r = dsu.find(self.ends(i).0);
                out[slot[&r]].edges.insert(self.edges[i].id.clone());
            }
        }
        Ok(out)
    }

    pub(crate) fn is_acyclic_mask(&self, mask: &[bool]) -> bool {
        let mut dsu = DisjointSet::new(self.vertices.len());
        mask.iter()
            .enumerate()
            .filter(|(_, &inside)| inside)
            .all(|(i, _)| {
                let (u, v) = self.ends(i);
                u != v && dsu.union(u, v)
            })
    }

    /// Whether `(V, f)` has no cycle. Loops and parallel pairs are cycles.
    pub fn is_acyclic(&self, f: &EdgeSet) -> Result<bool, GraphError> {
        Ok(self.is_acyclic_mask(&self.mask(f)?))
    }

    /// Number of components whose labels are all zero.
    pub fn kappa(&self) -> usize {
        let mut nonzero = vec![false; self.topology.component_size.len()];
        for (i, v) in self.vertices.iter().enumerate() {
            if !v.label.is_zero() {
                nonzero[self.topology.component[i]] = true;
            }
        }
        nonzero.iter().filter(|&&nz| !nz).count()
    }

    /// Conditions (G1) and (G2) evaluated directly on every component of
    /// `(V, f)`: the label sum is nonzero, or every label is zero and the
    /// component's vertex set is a whole component of the graph.
    pub(crate) fn is_gamma_nonzero_mask(&self, mask: &[bool]) -> bool {
        let n = self.vertices.len();
        let mut dsu = DisjointSet::new(n);
        for (i, &inside) in mask.iter().enumerate() {
            if inside {
                let (u, v) = self.ends(i);
                dsu.union(u, v);
            }
        }
        let mut sums: Vec<Option<GroupElement>> = vec![None; n];
        let mut all_zero = vec![true; n];
        let mut size = vec![0usize; n];
        for i in 0..n {
            let r = dsu.find(i);
            let label = &self.vertices[i].label;
            match &mut sums[r] {
                Some(s) => s
                    .add_assign(label)
                    .expect("labels share the graph's group"),
                slot => *slot = Some(label.clone()),
            }
            all_zero[r] &= label.is_zero();
            size[r] += 1;
        }
        (0..n).filter(|&i| dsu.find(i) == i).all(|r| {
            if all_zero[r] {
                size[r] == self.topology.component_size[self.topology.component[r]]
            } else {
                !sums[r].as_ref().is_some_and(GroupElement::is_zero)
            }
        })
    }

    pub fn is_gamma_nonzero(&self, f: &EdgeSet) -> Result<bool, GraphError> {
        Ok(self.is_gamma_nonzero_mask(&self.mask(f)?))
    }

    /// Acyclic and gamma-nonzero: membership in the feasible family.
    pub fn is_feasible(&self, f: &EdgeSet) -> Result<bool, GraphError> {
        let m = self.mask(f)?;
        Ok(self.is_acyclic_mask(&m) && self.is_gamma_nonzero_mask(&m))
    }

    pub fn delete_edge(&self, e: &EdgeId) -> Result<Self, GraphError> {
        self.delete_edges(&EdgeSet::from([e.clone()]))
    }

    pub fn delete_edges(&self, x: &EdgeSet) -> Result<Self, GraphError> {
        self.mask(x)?;
        let edges = self.edges.iter().filter(|e| !x.contains(&e.id)).cloned().collect();
        Self::new(self.group.clone(), self.vertices.clone(), edges)
    }

    pub fn delete_isolated_vertex(&self, v: &VertexId) -> Result<Self, GraphError> {
        self.vertex_position(v)?;
        if self.edges.iter().any(|e| &e.u == v || &e.v == v) {
            return Err(GraphError::NotIsolated(v.clone()));
        }
        let vertices = self.vertices.iter().filter(|x| &x.id != v).cloned().collect();
        Self::new(self.group.clone(), vertices, self.edges.clone())
    }

    pub fn contract_edge(&self, e: &EdgeId) -> Result<Self, GraphError> {
        Ok(self.contract_sequence(std::slice::from_ref(e))?.graph)
    }

    /// Contracts every edge of `x`, in ascending id order.
    pub fn contract_set(&self, x: &EdgeSet) -> Result<Self, GraphError> {
        let order: Vec<EdgeId> = x.iter().cloned().collect();
        Ok(self.contract_sequence(&order)?.graph)
    }

    /// Contracts the edges one at a time in the given order. A non-loop
    /// edge `uv` merges `u` and `v` into a fresh vertex labelled
    /// `label(u) + label(v)`; an edge that is (or has become) a loop is
    /// simply deleted.
    pub fn contract_sequence(&self, order: &[EdgeId]) -> Result<Contraction, GraphError> {
        for e in order {
            self.edge_position(e)?;
        }
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        let mut taken: BTreeSet<VertexId> = vertices.iter().map(|v| v.id.clone()).collect();
        let mut merge_map: BTreeMap<VertexId, VertexId> =
            vertices.iter().map(|v| (v.id.clone(), v.id.clone())).collect();
        for id in order {
            let Some(pos) = edges.iter().position(|e| &e.id == id) else {
                continue;
            };
            let edge = edges.remove(pos);
            if edge.is_loop() {
                continue;
            }
            let mut fresh = format!("{}+{}", edge.u, edge.v);
            while taken.contains(fresh.as_str()) {
                fresh.push('\'');
            }
            let fresh = VertexId::new(fresh);
            taken.insert(fresh.clone());
            let iu = vertices.iter().position(|v| v.id == edge.u).expect("endpoint present");
            let iv = vertices.iter().position(|v| v.id == edge.v).expect("endpoint present");
            let label = vertices[iu]
                .label
                .add(&vertices[iv].label)
                .expect("labels share the graph's group");
            let keep = iu.min(iv);
            vertices[keep] = Vertex {
                id: fresh.clone(),
                label,
            };
            vertices.remove(iu.max(iv));
            for e in &mut edges {
                if e.u == edge.u || e.u == edge.v {
                    e.u = fresh.clone();
                }
                if e.v == edge.u || e.v == edge.v {
                    e.v = fresh.clone();
                }
            }
            for target in merge_map.values_mut() {
                if *target == edge.u || *target == edge.v {
                    *target = fresh.clone();
                }
            }
        }
        Ok(Contraction {
            graph: Self::new(self.group.clone(), vertices, edges)?,
            merge_map,
        })
    }

    /// Deleting `e` raises kappa.
    pub fn is_gamma_bridge(&self, e: &EdgeId) -> Result<bool, GraphError> {
        Ok(self.delete_edge(e)?.kappa() > self.kappa())
    }

    /// A non-loop edge `uv` whose component has nonzero labels exactly at
    /// `u` and `v`, with `label(u) + label(v) = 0`.
    pub fn is_gamma_tunnel(&self, e: &EdgeId) -> Result<bool, GraphError> {
        let i = self.edge_position(e)?;
        let (u, v) = self.ends(i);
        if u == v {
            return Ok(false);
        }
        let comp = self.topology.component[u];
        let only_ends = self.vertices.iter().enumerate().all(|(x, vert)| {
            self.topology.component[x] != comp || (!vert.label.is_zero()) == (x == u || x == v)
        });
        let cancels = self.vertices[u]
            .label
            .add(&self.vertices[v].label)
            .map_err(GraphError::Group)?
            .is_zero();
        Ok(only_ends && cancels)
    }

    pub fn from_json_str(text: &str) -> Result<Self, GraphError> {
        GraphDocument::from_json_str(text)?.into_labelled()
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            group: Some(self.group.to_json()),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexRecord {
                    id: v.id.clone(),
                    label: Some(v.label.to_json()),
                })
                .collect(),
            edges: self.edges.clone(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("graph documents serialize")
    }
}

/// On-disk graph format:
/// `{"group": <descriptor>, "vertices": [{"id", "label"}], "edges": [{"id", "u", "v"}]}`.
/// The group and labels may be omitted when only the multigraph is needed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Value>,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub id: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Value>,
}

impl GraphDocument {
    pub fn from_json_str(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Format(format!("graph file: {e}")))
    }

    pub fn into_labelled(self) -> Result<LabelledGraph, GraphError> {
        let group_json = self
            .group
            .ok_or_else(|| GraphError::Format("graph file: missing field `group`".into()))?;
        let group = GroupDescriptor::from_json(&group_json)
            .map_err(|e| GraphError::Format(format!("group: {e}")))?;
        let vertices = self
            .vertices
            .into_iter()
            .enumerate()
            .map(|(i, rec)| {
                let raw = rec
                    .label
                    .ok_or_else(|| GraphError::Format(format!("vertices[{i}].label: missing")))?;
                let label = group
                    .parse_element(&raw)
                    .map_err(|e| GraphError::Format(format!("vertices[{i}].label: {e}")))?;
                Ok(Vertex { id: rec.id, label })
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        LabelledGraph::new(group, vertices, self.edges)
    }

    pub fn into_multigraph(self) -> Result<Multigraph, GraphError> {
        Multigraph::new(self.vertices.into_iter().map(|v| v.id).collect(), self.edges)
    }
}
