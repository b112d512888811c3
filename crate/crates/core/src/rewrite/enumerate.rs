//! Census of small plex compositions: connected simple hypergraphs with a
//! fixed number of equal-order edges and free vertices, up to isomorphism.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::array::IndexSet;
use crate::diagram::{canonical_form, edge_transitive, Certificate, Diagram, Edge, Vertex};

/// Which degree constraints a composition must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// marked vertices on at least two edges; free vertices unconstrained
    Default,
    /// free vertices on exactly one edge, marked vertices on at least two
    Strict,
    /// free vertices on exactly one edge, marked vertices unconstrained
    Leaf,
    /// no degree constraints
    Loose,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Default, Variant::Strict, Variant::Leaf, Variant::Loose];

    fn accepts(self, marked: bool, degree: usize) -> bool {
        match (self, marked) {
            (Variant::Default, true) | (Variant::Strict, true) => degree >= 2,
            (Variant::Strict, false) | (Variant::Leaf, false) => degree == 1,
            _ => true,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Default => "default",
            Variant::Strict => "strict",
            Variant::Leaf => "leaf",
            Variant::Loose => "loose",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Variant::ALL
            .into_iter()
            .find(|v| v.to_string() == s)
            .ok_or_else(|| format!("unknown variant `{s}` (expected default, strict, leaf or loose)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositionParams {
    pub edges: usize,
    pub order: usize,
    pub free: usize,
    pub variant: Variant,
}

impl Default for CompositionParams {
    fn default() -> Self {
        Self {
            edges: 3,
            order: 3,
            free: 3,
            variant: Variant::Default,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Census {
    /// one representative per isomorphism class, sorted by certificate
    pub diagrams: Vec<Diagram>,
    pub certificates: Vec<Certificate>,
    /// positions of the classes whose automorphism group is edge-transitive
    pub symmetric: Vec<usize>,
}

/// Grow edge lists where every edge's new vertices are the next unused
/// labels, so each hypergraph is produced up to relabeling at least once.
fn grow(params: &CompositionParams, used: usize, edges: &mut Vec<Vec<usize>>, out: &mut Vec<(usize, Vec<Vec<usize>>)>) {
    if edges.len() == params.edges {
        out.push((used, edges.clone()));
        return;
    }
    let order = params.order;
    // choose how many legs reuse existing vertices
    let min_old = usize::from(!edges.is_empty());
    for old in min_old..=order.min(used) {
        let fresh = order - old;
        for subset in combinations(used, old) {
            let mut legs = subset;
            legs.extend(used..used + fresh);
            if edges.contains(&legs) {
                continue;
            }
            edges.push(legs);
            grow(params, used + fresh, edges, out);
            edges.pop();
        }
    }
}

/// All `k`-subsets of `0..n`, increasing.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Enumerate compositions up to isomorphism. Every vertex carries `index`,
/// so only incidence and marks distinguish classes.
pub fn enumerate_compositions(params: &CompositionParams, index: &IndexSet) -> Census {
    let mut shapes = Vec::new();
    if params.edges > 0 && params.order > 0 {
        grow(params, 0, &mut Vec::new(), &mut shapes);
    }
    let mut classes: BTreeMap<Certificate, Diagram> = BTreeMap::new();
    for (n, edges) in shapes {
        if n < params.free {
            continue;
        }
        let degree: Vec<usize> = (0..n).map(|v| edges.iter().filter(|e| e.contains(&v)).count()).collect();
        for free in combinations(n, params.free) {
            let ok = (0..n).all(|v| params.variant.accepts(!free.contains(&v), degree[v]));
            if !ok {
                continue;
            }
            let vertices = (0..n)
                .map(|v| Vertex::new(format!("v{v}"), index.clone(), !free.contains(&v)))
                .collect();
            let es = edges
                .iter()
                .enumerate()
                .map(|(k, legs)| Edge::new(crate::diagram::edge_label(k), legs.clone()))
                .collect();
            let d = Diagram::new(vertices, es).expect("generated edges are simple");
            classes.entry(canonical_form(&d)).or_insert(d);
        }
    }
    let (certificates, diagrams): (Vec<_>, Vec<_>) = classes.into_iter().unzip();
    let symmetric = (0..diagrams.len()).filter(|&k| edge_transitive(&diagrams[k])).collect();
    Census {
        diagrams,
        certificates,
        symmetric,
    }
}
