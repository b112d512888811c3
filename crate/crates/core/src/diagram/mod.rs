//! Plex diagrams: marked hypergraphs whose vertices are indices and whose
//! hyperedges are plexes.

mod canon;
mod iso;
mod standard;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::array::{ArrayError, IndexSet};

pub use canon::{canonical_form, canonical_form_colored, canonical_labeling, Certificate};
pub use iso::{automorphisms, Automorphism, edge_transitive, is_isomorphic, isomorphism};
pub use standard::{fish_diagram, standard_diagram, StandardDiagram};
pub(crate) use standard::edge_label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("edge `{0}` lists vertex `{1}` more than once")]
    RepeatedLeg(String, String),
    #[error("edges `{0}` and `{1}` have the same leg set")]
    DuplicateLegSet(String, String),
    #[error("vertex `{0}` belongs to no edge")]
    IsolatedVertex(String),
    #[error("edge `{0}` has no legs")]
    EmptyEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("vertex `{vertex}` uses unknown index set `{index_set}`")]
    UnknownIndexSet { vertex: String, index_set: String },
    #[error("unknown standard diagram `{0}`")]
    UnknownName(String),
    #[error("chain needs at least 2 edges, got {0}")]
    ChainTooShort(usize),
    #[error(transparent)]
    Array(#[from] ArrayError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub index_set: IndexSet,
    pub contracted: bool,
}

impl Vertex {
    pub fn new(id: impl Into<String>, index_set: IndexSet, contracted: bool) -> Self {
        Self {
            id: id.into(),
            index_set,
            contracted,
        }
    }
}

/// A hyperedge. `legs` are vertex positions in the owning diagram; their
/// order is only a presentation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub legs: Vec<usize>,
}

impl Edge {
    pub fn new(id: impl Into<String>, legs: Vec<usize>) -> Self {
        Self { id: id.into(), legs }
    }

    pub fn order(&self) -> usize {
        self.legs.len()
    }

    pub fn leg_set(&self) -> BTreeSet<usize> {
        self.legs.iter().copied().collect()
    }
}

/// A validated plex diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl Diagram {
    /// Validate and build. Edges must be simple, leg sets distinct and every
    /// vertex covered.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, DiagramError> {
        let mut ids = BTreeSet::new();
        for v in &vertices {
            if !ids.insert(v.id.as_str()) {
                return Err(DiagramError::DuplicateVertex(v.id.clone()));
            }
        }
        let mut edge_ids = BTreeSet::new();
        let mut leg_sets: BTreeMap<BTreeSet<usize>, &str> = BTreeMap::new();
        let mut covered = vec![false; vertices.len()];
        for e in &edges {
            if !edge_ids.insert(e.id.as_str()) {
                return Err(DiagramError::DuplicateEdge(e.id.clone()));
            }
            if e.legs.is_empty() {
                return Err(DiagramError::EmptyEdge(e.id.clone()));
            }
            let mut seen = BTreeSet::new();
            for &leg in &e.legs {
                let vertex = vertices.get(leg).ok_or_else(|| DiagramError::UnknownVertex {
                    edge: e.id.clone(),
                    vertex: format!("#{leg}"),
                })?;
                if !seen.insert(leg) {
                    return Err(DiagramError::RepeatedLeg(e.id.clone(), vertex.id.clone()));
                }
                covered[leg] = true;
            }
            if let Some(other) = leg_sets.insert(seen, &e.id) {
                return Err(DiagramError::DuplicateLegSet(other.to_string(), e.id.clone()));
            }
        }
        if let Some(k) = covered.iter().position(|c| !c) {
            return Err(DiagramError::IsolatedVertex(vertices[k].id.clone()));
        }
        Ok(Self { vertices, edges })
    }

    /// Build with legs given by vertex id.
    pub fn from_ids(vertices: Vec<Vertex>, edges: &[(&str, &[&str])]) -> Result<Self, DiagramError> {
        let lookup: HashMap<&str, usize> = vertices.iter().enumerate().map(|(k, v)| (v.id.as_str(), k)).collect();
        let mut built = Vec::with_capacity(edges.len());
        for (id, legs) in edges {
            let legs = legs
                .iter()
                .map(|l| {
                    lookup.get(l).copied().ok_or_else(|| DiagramError::UnknownVertex {
                        edge: id.to_string(),
                        vertex: l.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            built.push(Edge::new(*id, legs));
        }
        Self::new(vertices, built)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Unmarked vertices, in vertex order.
    pub fn free_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&k| !self.vertices[k].contracted).collect()
    }

    pub fn marked_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&k| self.vertices[k].contracted).collect()
    }

    /// Free vertices sorted by id: the default output order.
    pub fn default_output_order(&self) -> Vec<usize> {
        let mut free = self.free_vertices();
        free.sort_by(|&a, &b| self.vertices[a].id.cmp(&self.vertices[b].id));
        free
    }

    /// Vertices shared by more than one edge or contracted.
    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&k| self.vertices[k].contracted || self.degree(k) > 1)
            .collect()
    }

    /// Free vertices on exactly one edge.
    pub fn external_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&k| !self.vertices[k].contracted && self.degree(k) == 1)
            .collect()
    }

    pub fn incident_edges(&self, vertex: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].legs.contains(&vertex)).collect()
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.edges.iter().filter(|e| e.legs.contains(&vertex)).count()
    }

    /// Connected components as sorted lists of edge positions.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            for w in e.legs.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, e) in self.edges.iter().enumerate() {
            let root = find(&mut parent, e.legs[0]);
            groups.entry(root).or_default().push(k);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Rename and reorder: vertex `k` moves to position `vertex_perm[k]`,
    /// edge `k` to `edge_perm[k]`; ids are replaced via the given closures.
    pub fn relabel(
        &self,
        vertex_perm: &[usize],
        edge_perm: &[usize],
        vertex_name: impl Fn(usize) -> String,
        edge_name: impl Fn(usize) -> String,
    ) -> Result<Self, DiagramError> {
        let mut vertices = vec![None; self.vertices.len()];
        for (k, v) in self.vertices.iter().enumerate() {
            let target = vertex_perm[k];
            vertices[target] = Some(Vertex::new(vertex_name(target), v.index_set.clone(), v.contracted));
        }
        let mut edges = vec![None; self.edges.len()];
        for (k, e) in self.edges.iter().enumerate() {
            let target = edge_perm[k];
            let legs = e.legs.iter().map(|&l| vertex_perm[l]).collect();
            edges[target] = Some(Edge::new(edge_name(target), legs));
        }
        Self::new(
            vertices.into_iter().map(Option::unwrap).collect(),
            edges.into_iter().map(Option::unwrap).collect(),
        )
    }

    /// Diagram induced by a subset of edges (vertices keep their marks;
    /// vertices not on any chosen edge are dropped).
    pub fn subdiagram(&self, edge_subset: &[usize]) -> Result<(Self, Vec<usize>), DiagramError> {
        let mut keep: Vec<usize> = edge_subset.iter().flat_map(|&e| self.edges[e].legs.iter().copied()).collect();
        keep.sort_unstable();
        keep.dedup();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = edge_subset
            .iter()
            .map(|&e| Edge::new(self.edges[e].id.clone(), self.edges[e].legs.iter().map(|l| pos[l]).collect()))
            .collect();
        Ok((Self::new(vertices, edges)?, keep))
    }
}

/// JSON shape for diagrams.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramJson {
    #[serde(default)]
    pub index_sets: BTreeMap<String, usize>,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub index_set: String,
    #[serde(default)]
    pub contracted: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub legs: Vec<String>,
}

impl Diagram {
    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            index_sets: self
                .vertices
                .iter()
                .map(|v| (v.index_set.name().to_string(), v.index_set.size()))
                .collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    id: v.id.clone(),
                    index_set: v.index_set.name().to_string(),
                    contracted: v.contracted,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.clone(),
                    legs: e.legs.iter().map(|&l| self.vertices[l].id.clone()).collect(),
                })
                .collect(),
        }
    }

    /// Parse, resolving index sets from the file and then from `known`.
    pub fn from_json(json: &DiagramJson, known: &HashMap<String, IndexSet>) -> Result<Self, DiagramError> {
        let mut sets = known.clone();
        for (name, &size) in &json.index_sets {
            sets.insert(name.clone(), IndexSet::new(name.clone(), size)?);
        }
        let vertices = json
            .vertices
            .iter()
            .map(|v| {
                let set = sets.get(&v.index_set).cloned().ok_or_else(|| DiagramError::UnknownIndexSet {
                    vertex: v.id.clone(),
                    index_set: v.index_set.clone(),
                })?;
                Ok(Vertex::new(v.id.clone(), set, v.contracted))
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        let edges: Vec<(&str, Vec<&str>)> = json
            .edges
            .iter()
            .map(|e| (e.id.as_str(), e.legs.iter().map(String::as_str).collect()))
            .collect();
        let borrowed: Vec<(&str, &[&str])> = edges.iter().map(|(id, legs)| (*id, legs.as_slice())).collect();
        Self::from_ids(vertices, &borrowed)
    }

    /// Graphviz rendering: vertices as points (filled when contracted),
    /// each edge as a labeled clique on its legs.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\""));
        let _ = writeln!(out, "  node [shape=point, width=0.12];");
        for v in &self.vertices {
            let style = if v.contracted { "filled" } else { "solid" };
            let fill = if v.contracted { "black" } else { "white" };
            let _ = writeln!(
                out,
                "  \"{}\" [style={style}, fillcolor={fill}, xlabel=\"{} : {}\"];",
                v.id,
                v.id,
                v.index_set
            );
        }
        for e in &self.edges {
            for (k, &a) in e.legs.iter().enumerate() {
                for &b in &e.legs[k + 1..] {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -- \"{}\" [label=\"{}\"];",
                        self.vertices[a].id, self.vertices[b].id, e.id
                    );
                }
            }
            if e.legs.len() == 1 {
                let v = &self.vertices[e.legs[0]].id;
                let _ = writeln!(out, "  \"{v}\" -- \"{v}\" [label=\"{}\"];", e.id);
            }
        }
        out.push_str("}\n");
        out
    }
}
