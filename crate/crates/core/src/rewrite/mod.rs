//! Motif detection and rewriting on plex diagrams, multiway exploration and
//! the concurrency criterion.

mod enumerate;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use rand::Rng;
use thiserror::Error;

use crate::array::{Array, IndexSet};
use crate::diagram::{canonical_form, canonical_form_colored, standard_diagram, Certificate, Diagram, DiagramError, Edge, StandardDiagram, Vertex};
use crate::evaluator::{evaluate, Binding, EvalError};
use crate::semiring::Semiring;

pub use enumerate::{enumerate_compositions, Census, CompositionParams, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("motif must be connected")]
    DisconnectedMotif,
    #[error("motif needs at least one free vertex")]
    NoFreeVertex,
    #[error("role order must list every motif edge exactly once")]
    BadRoleOrder,
    #[error("rewrite rejected: {0}")]
    Rejected(DiagramError),
    #[error("semantic checks need an exact semiring, got {0}")]
    InexactSemiring(Semiring),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A connected diagram used as a rewrite rule, with the order in which its
/// edge labels are read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Motif {
    diagram: Diagram,
    role_order: Vec<usize>,
}

impl Motif {
    pub fn new(diagram: Diagram, role_order: Vec<usize>) -> Result<Self, RewriteError> {
        if !diagram.is_connected() {
            return Err(RewriteError::DisconnectedMotif);
        }
        if diagram.free_vertices().is_empty() {
            return Err(RewriteError::NoFreeVertex);
        }
        let mut sorted = role_order.clone();
        sorted.sort_unstable();
        if sorted != (0..diagram.edges().len()).collect::<Vec<_>>() {
            return Err(RewriteError::BadRoleOrder);
        }
        Ok(Self { diagram, role_order })
    }

    /// Role order = edge order (tail to head for the fish, left to right
    /// for chains).
    pub fn from_diagram(diagram: Diagram) -> Result<Self, RewriteError> {
        let order = (0..diagram.edges().len()).collect();
        Self::new(diagram, order)
    }

    pub fn standard(name: &StandardDiagram, index: &IndexSet) -> Result<Self, RewriteError> {
        Self::from_diagram(standard_diagram(name, index)?)
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn role_order(&self) -> &[usize] {
        &self.role_order
    }
}

/// An occurrence of a motif: motif edge `k` sits on host edge
/// `edge_map[k]`, motif vertex `v` on host vertex `vertex_map[v]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Match {
    pub edge_map: Vec<usize>,
    pub vertex_map: Vec<usize>,
}

impl Match {
    pub fn image_edges(&self) -> BTreeSet<usize> {
        self.edge_map.iter().copied().collect()
    }

    pub fn image_vertices(&self) -> BTreeSet<usize> {
        self.vertex_map.iter().copied().collect()
    }

    /// Host edges in motif role order.
    pub fn role_edges(&self, motif: &Motif) -> Vec<usize> {
        motif.role_order.iter().map(|&k| self.edge_map[k]).collect()
    }
}

struct Matcher<'a> {
    host: &'a Diagram,
    motif: &'a Motif,
    edge_map: Vec<usize>,
    vertex_map: Vec<Option<usize>>,
    host_used: Vec<bool>,
    edge_used: Vec<bool>,
    found: Vec<Match>,
}

impl Matcher<'_> {
    fn vertex_ok(&self, mv: usize, hv: usize) -> bool {
        let m = &self.motif.diagram.vertices()[mv];
        let h = &self.host.vertices()[hv];
        if m.index_set.size() != h.index_set.size() {
            return false;
        }
        !m.contracted || (h.contracted && self.host.degree(hv) == self.motif.diagram.degree(mv))
    }

    fn edges(&mut self, depth: usize) {
        let md = &self.motif.diagram;
        if depth == md.edges().len() {
            self.finish();
            return;
        }
        let mk = self.motif.role_order[depth];
        let medge = &md.edges()[mk];
        for hk in 0..self.host.edges().len() {
            if self.edge_used[hk] || self.host.edges()[hk].order() != medge.order() {
                continue;
            }
            let hlegs: BTreeSet<usize> = self.host.edges()[hk].leg_set();
            // already-placed legs must land inside this host edge
            if medge.legs.iter().any(|&l| self.vertex_map[l].is_some_and(|h| !hlegs.contains(&h))) {
                continue;
            }
            self.edge_used[hk] = true;
            self.edge_map[mk] = hk;
            let open: Vec<usize> = medge.legs.iter().copied().filter(|&l| self.vertex_map[l].is_none()).collect();
            let targets: Vec<usize> = hlegs.iter().copied().filter(|&h| !self.host_used[h]).collect();
            self.legs(depth, &open, 0, &targets);
            self.edge_used[hk] = false;
        }
    }

    fn legs(&mut self, depth: usize, open: &[usize], k: usize, targets: &[usize]) {
        if k == open.len() {
            self.edges(depth + 1);
            return;
        }
        let mv = open[k];
        for &hv in targets {
            if self.host_used[hv] || !self.vertex_ok(mv, hv) {
                continue;
            }
            self.host_used[hv] = true;
            self.vertex_map[mv] = Some(hv);
            self.legs(depth, open, k + 1, targets);
            self.vertex_map[mv] = None;
            self.host_used[hv] = false;
        }
    }

    fn finish(&mut self) {
        let image: BTreeSet<usize> = self.edge_map.iter().copied().collect();
        let vertex_map: Vec<usize> = self.vertex_map.iter().map(|v| v.unwrap()).collect();
        for mv in self.motif.diagram.marked_vertices() {
            if self.host.incident_edges(vertex_map[mv]).iter().any(|e| !image.contains(e)) {
                return;
            }
        }
        self.found.push(Match {
            edge_map: self.edge_map.clone(),
            vertex_map,
        });
    }
}

/// All matches of `motif` in `host`, one per (vertex image, edge image)
/// pair. The representative kept is the one whose host edges, read in role
/// order, are lexicographically smallest.
pub fn find_matches(host: &Diagram, motif: &Motif) -> Vec<Match> {
    let md = &motif.diagram;
    let mut m = Matcher {
        host,
        motif,
        edge_map: vec![0; md.edges().len()],
        vertex_map: vec![None; md.vertices().len()],
        host_used: vec![false; host.vertices().len()],
        edge_used: vec![false; host.edges().len()],
        found: Vec::new(),
    };
    m.edges(0);
    let mut best: BTreeMap<(BTreeSet<usize>, BTreeSet<usize>), Match> = BTreeMap::new();
    for found in m.found {
        let key = (found.image_vertices(), found.image_edges());
        let replace = best
            .get(&key)
            .is_none_or(|b| (found.role_edges(motif), &found.vertex_map) < (b.role_edges(motif), &b.vertex_map));
        if replace {
            best.insert(key, found);
        }
    }
    let mut out: Vec<Match> = best.into_values().collect();
    out.sort_by_key(|x| (x.role_edges(motif), x.vertex_map.clone()));
    out
}

/// Result of one rewrite step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewritten {
    pub diagram: Diagram,
    /// position of the inserted edge
    pub new_edge: usize,
    /// for each remaining old edge, its new position (None if consumed)
    pub edge_positions: Vec<Option<usize>>,
    /// for each old vertex, its new position (None if contracted away)
    pub vertex_positions: Vec<Option<usize>>,
}

/// Replace the matched edges by one edge on the images of the motif's free
/// vertices (in motif vertex order), removing the images of marked motif
/// vertices. The new edge is labeled by the matched labels in role order,
/// bracketed, and takes the place of the first matched edge.
pub fn apply_rewrite(host: &Diagram, m: &Match, motif: &Motif) -> Result<Rewritten, RewriteError> {
    let md = &motif.diagram;
    let consumed = m.image_edges();
    let removed: BTreeSet<usize> = md.marked_vertices().iter().map(|&v| m.vertex_map[v]).collect();

    let mut vertex_positions = vec![None; host.vertices().len()];
    let mut vertices = Vec::new();
    for (k, v) in host.vertices().iter().enumerate() {
        if !removed.contains(&k) {
            vertex_positions[k] = Some(vertices.len());
            vertices.push(v.clone());
        }
    }
    let legs: Vec<usize> = md
        .free_vertices()
        .iter()
        .map(|&v| vertex_positions[m.vertex_map[v]].expect("free images survive"))
        .collect();

    let mut label = String::from("(");
    for k in m.role_edges(motif) {
        label.push_str(&host.edges()[k].id);
    }
    label.push(')');
    while host.edges().iter().any(|e| e.id == label) {
        label.push('\'');
    }

    let first = *consumed.iter().next().expect("motif has edges");
    let mut edges = Vec::new();
    let mut edge_positions = vec![None; host.edges().len()];
    let mut new_edge = 0;
    for (k, e) in host.edges().iter().enumerate() {
        if k == first {
            new_edge = edges.len();
            edges.push(Edge::new(label.clone(), legs.clone()));
        }
        if consumed.contains(&k) {
            continue;
        }
        edge_positions[k] = Some(edges.len());
        edges.push(Edge::new(e.id.clone(), e.legs.iter().map(|&l| vertex_positions[l].unwrap()).collect()));
    }
    let diagram = Diagram::new(vertices, edges).map_err(RewriteError::Rejected)?;
    Ok(Rewritten {
        diagram,
        new_edge,
        edge_positions,
        vertex_positions,
    })
}

/// Concatenated edge labels, in edge order.
pub fn label_string(d: &Diagram) -> String {
    d.edges().iter().map(|e| e.id.as_str()).collect()
}

/// Diagram whose edges remember which original edges they were built from.
#[derive(Debug, Clone)]
struct Tracked {
    diagram: Diagram,
    provenance: Vec<BTreeSet<String>>,
}

impl Tracked {
    fn initial(d: &Diagram) -> Self {
        Self {
            diagram: d.clone(),
            provenance: d.edges().iter().map(|e| BTreeSet::from([e.id.clone()])).collect(),
        }
    }

    fn certificate(&self) -> Certificate {
        let colors: Vec<String> = self
            .provenance
            .iter()
            .map(|p| p.iter().cloned().collect::<Vec<_>>().join(","))
            .collect();
        canonical_form_colored(&self.diagram, &colors)
    }

    fn step(&self, m: &Match, motif: &Motif) -> Result<Self, RewriteError> {
        let r = apply_rewrite(&self.diagram, m, motif)?;
        let mut provenance = vec![BTreeSet::new(); r.diagram.edges().len()];
        for (old, pos) in r.edge_positions.iter().enumerate() {
            match pos {
                Some(p) => provenance[*p] = self.provenance[old].clone(),
                None => provenance[r.new_edge].extend(self.provenance[old].iter().cloned()),
            }
        }
        Ok(Self {
            diagram: r.diagram,
            provenance,
        })
    }
}

#[derive(Debug, Clone)]
pub struct RewriteState {
    /// certificate with each edge coloured by the original edges it covers
    pub certificate: Certificate,
    /// plain certificate of the unlabeled diagram
    pub syntactic: Certificate,
    pub diagram: Diagram,
    /// every label string reaching this state
    pub labels: BTreeSet<String>,
    pub terminal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    /// label of the inserted edge
    pub label: String,
}

#[derive(Debug, Clone)]
pub struct RewriteGraph {
    pub states: Vec<RewriteState>,
    pub transitions: Vec<Transition>,
    pub initial_matches: Vec<Match>,
    /// rewrites refused because they would duplicate a leg set
    pub rejected: usize,
}

impl RewriteGraph {
    pub fn terminal_states(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&k| self.states[k].terminal).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph multiway {\n  node [shape=box];\n");
        for (k, s) in self.states.iter().enumerate() {
            let labels: Vec<&str> = s.labels.iter().map(String::as_str).collect();
            let shape = if s.terminal { ", peripheries=2" } else { "" };
            let _ = writeln!(out, "  s{k} [label=\"{}\"{shape}];", labels.join("\\n"));
        }
        for t in &self.transitions {
            let _ = writeln!(out, "  s{} -> s{} [label=\"{}\"];", t.from, t.to, t.label);
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first closure of `host` under motif rewrites. States are merged
/// by their provenance-coloured certificate; every labeled variant of a state
/// is expanded so all label strings are collected.
pub fn multiway(host: &Diagram, motif: &Motif) -> Result<RewriteGraph, RewriteError> {
    let initial_matches = find_matches(host, motif);
    let mut states: Vec<RewriteState> = Vec::new();
    let mut index: HashMap<Certificate, usize> = HashMap::new();
    let mut transitions = BTreeSet::new();
    let mut rejected = 0;
    let mut queue = VecDeque::new();
    let mut seen_labels: BTreeSet<(usize, String)> = BTreeSet::new();

    let mut intern = |t: &Tracked, states: &mut Vec<RewriteState>| -> (usize, bool) {
        let cert = t.certificate();
        let k = *index.entry(cert.clone()).or_insert_with(|| {
            states.push(RewriteState {
                certificate: cert,
                syntactic: canonical_form(&t.diagram),
                diagram: t.diagram.clone(),
                labels: BTreeSet::new(),
                terminal: true,
            });
            states.len() - 1
        });
        let fresh = states[k].labels.insert(label_string(&t.diagram));
        (k, fresh)
    };

    let start = Tracked::initial(host);
    let (k0, _) = intern(&start, &mut states);
    seen_labels.insert((k0, label_string(host)));
    queue.push_back((k0, start));
    while let Some((from, t)) = queue.pop_front() {
        for m in find_matches(&t.diagram, motif) {
            let next = match t.step(&m, motif) {
                Ok(n) => n,
                Err(RewriteError::Rejected(_)) => {
                    rejected += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            states[from].terminal = false;
            let (to, fresh) = intern(&next, &mut states);
            let label = m.role_edges(motif).iter().map(|&e| t.diagram.edges()[e].id.clone()).collect::<String>();
            transitions.insert(Transition {
                from,
                to,
                label: format!("({label})"),
            });
            if fresh && seen_labels.insert((to, label_string(&next.diagram))) {
                queue.push_back((to, next));
            }
        }
    }
    Ok(RewriteGraph {
        states,
        transitions: transitions.into_iter().collect(),
        initial_matches,
        rejected,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcurrencyVerdict {
    pub initial_matches: usize,
    pub states: usize,
    pub terminals: usize,
    /// exactly one unlabeled terminal shape
    pub confluent: bool,
    /// every edge of every state has the same order
    pub regular: bool,
    /// initial matches pairwise share a host edge
    pub overlapping: bool,
    pub concurrent: bool,
}

pub fn check_concurrency(host: &Diagram, motif: &Motif) -> Result<ConcurrencyVerdict, RewriteError> {
    let g = multiway(host, motif)?;
    Ok(verdict_of(&g))
}

pub fn verdict_of(g: &RewriteGraph) -> ConcurrencyVerdict {
    let terminals = g.terminal_states();
    let shapes: BTreeSet<&Certificate> = terminals.iter().map(|&k| &g.states[k].syntactic).collect();
    let orders: BTreeSet<usize> = g.states.iter().flat_map(|s| s.diagram.edges().iter().map(Edge::order)).collect();
    let m = &g.initial_matches;
    let overlapping = (0..m.len()).all(|a| (a + 1..m.len()).all(|b| !m[a].image_edges().is_disjoint(&m[b].image_edges())));
    let confluent = shapes.len() == 1;
    let regular = orders.len() <= 1;
    ConcurrencyVerdict {
        initial_matches: m.len(),
        states: g.states.len(),
        terminals: terminals.len(),
        confluent,
        regular,
        overlapping,
        concurrent: confluent && regular && overlapping,
    }
}

/// Outcome of checking that every maximal rewrite sequence evaluates to the
/// same array as the host.
#[derive(Debug, Clone, PartialEq)]
pub enum SemanticVerdict {
    Pass { trials: usize, sequences: usize },
    Counterexample { trial: usize, sequence: Vec<String>, expected: Array, found: Array },
}

impl SemanticVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SemanticVerdict::Pass { .. })
    }
}

/// Evaluate the matched part of `d` as one product: images of marked motif
/// vertices are summed, images of free motif vertices index the result in
/// motif vertex order.
pub fn evaluate_match(d: &Diagram, b: &Binding, m: &Match, motif: &Motif) -> Result<Array, RewriteError> {
    let md = &motif.diagram;
    let mut host_vertices: Vec<usize> = m.image_vertices().into_iter().collect();
    host_vertices.sort_unstable();
    let pos: HashMap<usize, usize> = host_vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let marked: BTreeSet<usize> = md.marked_vertices().iter().map(|&v| m.vertex_map[v]).collect();
    let vertices = host_vertices
        .iter()
        .map(|&v| {
            let x = &d.vertices()[v];
            Vertex::new(x.id.clone(), x.index_set.clone(), marked.contains(&v))
        })
        .collect();
    let mut edges = Vec::new();
    let mut sub_binding = Binding::new();
    for &k in &m.edge_map {
        let e = &d.edges()[k];
        edges.push(Edge::new(e.id.clone(), e.legs.iter().map(|l| pos[l]).collect()));
        let eb = b.get(&e.id).ok_or_else(|| EvalError::MissingBinding(e.id.clone()))?;
        sub_binding.bind(&e.id, eb.array.clone(), eb.axis_vertices.iter().map(|v| pos[v]).collect());
    }
    let sub = Diagram::new(vertices, edges)?;
    let order: Vec<usize> = md.free_vertices().iter().map(|&v| pos[&m.vertex_map[v]]).collect();
    Ok(evaluate(&sub, &sub_binding, Some(&order))?)
}

fn rewrite_bound(d: &Diagram, b: &Binding, m: &Match, motif: &Motif) -> Result<(Diagram, Binding), RewriteError> {
    let product = evaluate_match(d, b, m, motif)?;
    let r = apply_rewrite(d, m, motif)?;
    let mut next = Binding::new();
    for (old, pos) in r.edge_positions.iter().enumerate() {
        if pos.is_some() {
            let id = &d.edges()[old].id;
            let eb = b.get(id).ok_or_else(|| EvalError::MissingBinding(id.clone()))?;
            let axes = eb.axis_vertices.iter().map(|&v| r.vertex_positions[v].unwrap()).collect();
            next.bind(id, eb.array.clone(), axes);
        }
    }
    let new = &r.diagram.edges()[r.new_edge];
    next.bind(&new.id, product, new.legs.clone());
    Ok((r.diagram, next))
}

/// Follow every maximal rewrite sequence from `(d, b)`, calling `leaf` with
/// the labels of the inserted edges and the terminal evaluation.
fn each_sequence(
    d: &Diagram,
    b: &Binding,
    motif: &Motif,
    path: &mut Vec<String>,
    leaf: &mut dyn FnMut(&[String], Array) -> Result<bool, RewriteError>,
) -> Result<bool, RewriteError> {
    let matches = find_matches(d, motif);
    let mut progressed = false;
    for m in &matches {
        let (next_d, next_b) = match rewrite_bound(d, b, m, motif) {
            Ok(x) => x,
            Err(RewriteError::Rejected(_)) => continue,
            Err(e) => return Err(e),
        };
        progressed = true;
        path.push(label_string(&next_d));
        let keep_going = each_sequence(&next_d, &next_b, motif, path, leaf)?;
        path.pop();
        if !keep_going {
            return Ok(false);
        }
    }
    if !progressed {
        return leaf(path, evaluate(d, b, None)?);
    }
    Ok(true)
}

/// For `trials` random bindings of `host` (entries drawn below
/// `entry_bound`), check every maximal rewrite sequence, evaluated step by
/// step, against direct evaluation of the host.
pub fn semantic_confluence<R: Rng + ?Sized>(
    host: &Diagram,
    motif: &Motif,
    semiring: Semiring,
    trials: usize,
    entry_bound: u64,
    rng: &mut R,
) -> Result<SemanticVerdict, RewriteError> {
    if !semiring.is_exact() {
        return Err(RewriteError::InexactSemiring(semiring));
    }
    let mut sequences = 0;
    for trial in 0..trials {
        let b = random_binding(host, semiring, entry_bound, rng);
        let expected = evaluate(host, &b, None)?;
        let mut failure = None;
        each_sequence(host, &b, motif, &mut Vec::new(), &mut |path, found| {
            sequences += 1;
            if found != expected {
                failure = Some((path.to_vec(), found));
                return Ok(false);
            }
            Ok(true)
        })?;
        if let Some((sequence, found)) = failure {
            return Ok(SemanticVerdict::Counterexample {
                trial,
                sequence,
                expected,
                found,
            });
        }
    }
    Ok(SemanticVerdict::Pass { trials, sequences })
}

/// Random arrays for every edge, axis `k` on the edge's `k`-th leg.
pub fn random_binding<R: Rng + ?Sized>(d: &Diagram, s: Semiring, bound: u64, rng: &mut R) -> Binding {
    let mut b = Binding::new();
    for e in d.edges() {
        let axes: Vec<IndexSet> = e.legs.iter().map(|&l| d.vertices()[l].index_set.clone()).collect();
        let n: usize = axes.iter().map(IndexSet::size).product();
        let entries = (0..n).map(|_| s.random(rng, bound)).collect();
        let array = Array::new(axes, entries, s).expect("random entries are in the carrier");
        b.bind(&e.id, array, e.legs.clone());
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn i2() -> IndexSet {
        IndexSet::new("I", 2).unwrap()
    }

    fn std(name: StandardDiagram) -> Diagram {
        standard_diagram(&name, &i2()).unwrap()
    }

    fn motif(name: StandardDiagram) -> Motif {
        Motif::standard(&name, &i2()).unwrap()
    }

    #[test]
    fn match_counts() {
        assert_eq!(find_matches(&std(StandardDiagram::Zee), &motif(StandardDiagram::Vee)).len(), 2);
        assert_eq!(find_matches(&std(StandardDiagram::LongFish), &motif(StandardDiagram::Fish)).len(), 3);
        assert_eq!(find_matches(&std(StandardDiagram::Fish), &motif(StandardDiagram::Fish)).len(), 1);
        assert_eq!(find_matches(&std(StandardDiagram::Chain(4)), &motif(StandardDiagram::Vee)).len(), 3);
    }

    #[test]
    fn cardinality_blocks_matches() {
        let three = IndexSet::new("J", 3).unwrap();
        let vee3 = Motif::standard(&StandardDiagram::Vee, &three).unwrap();
        assert!(find_matches(&std(StandardDiagram::Zee), &vee3).is_empty());
    }

    #[test]
    fn rewrite_labels() {
        let zee = std(StandardDiagram::Zee);
        let vee = motif(StandardDiagram::Vee);
        let m = &find_matches(&zee, &vee)[0];
        let r = apply_rewrite(&zee, m, &vee).unwrap();
        assert_eq!(label_string(&r.diagram), "(ab)c");
        let again = &find_matches(&r.diagram, &vee)[0];
        assert_eq!(label_string(&apply_rewrite(&r.diagram, again, &vee).unwrap().diagram), "((ab)c)");

        let long = std(StandardDiagram::LongFish);
        let fish = motif(StandardDiagram::Fish);
        let labels: BTreeSet<String> = find_matches(&long, &fish)
            .iter()
            .map(|m| label_string(&apply_rewrite(&long, m, &fish).unwrap().diagram))
            .collect();
        let expected: BTreeSet<String> = ["(abc)de", "a(dcb)e", "ab(cde)"].iter().map(|s| s.to_string()).collect();
        assert_eq!(labels, expected);

        let one = std(StandardDiagram::Fish);
        let m = &find_matches(&one, &fish)[0];
        let r = apply_rewrite(&one, m, &fish).unwrap();
        assert_eq!(label_string(&r.diagram), "(abc)");
        assert_eq!(r.diagram.free_vertices().len(), 3);
    }

    #[test]
    fn marked_free_images_stay_marked() {
        let zee = std(StandardDiagram::Zee);
        let vee = motif(StandardDiagram::Vee);
        let m = &find_matches(&zee, &vee)[0];
        let r = apply_rewrite(&zee, m, &vee).unwrap();
        assert_eq!(r.diagram.marked_vertices().len(), 1);
    }

    #[test]
    fn duplicate_leg_sets_are_rejected() {
        // triangle with one marked vertex: contracting it would duplicate the third edge
        let i = i2();
        let d = Diagram::from_ids(
            vec![
                Vertex::new("x", i.clone(), false),
                Vertex::new("m", i.clone(), true),
                Vertex::new("y", i.clone(), false),
            ],
            &[("a", &["x", "m"]), ("b", &["m", "y"]), ("c", &["x", "y"])],
        )
        .unwrap();
        let vee = motif(StandardDiagram::Vee);
        let m = &find_matches(&d, &vee)[0];
        assert!(matches!(apply_rewrite(&d, m, &vee), Err(RewriteError::Rejected(DiagramError::DuplicateLegSet(..)))));
        let g = multiway(&d, &vee).unwrap();
        assert_eq!(g.rejected, 1);
        assert_eq!(g.states.len(), 1);
    }

    #[test]
    fn multiway_shapes() {
        let g = multiway(&std(StandardDiagram::Zee), &motif(StandardDiagram::Vee)).unwrap();
        assert_eq!((g.initial_matches.len(), g.states.len(), g.terminal_states().len()), (2, 4, 1));
        let last = &g.states[g.terminal_states()[0]];
        let want: BTreeSet<String> = ["((ab)c)", "(a(bc))"].iter().map(|s| s.to_string()).collect();
        assert_eq!(last.labels, want);

        let g = multiway(&std(StandardDiagram::LongFish), &motif(StandardDiagram::Fish)).unwrap();
        assert_eq!((g.initial_matches.len(), g.states.len(), g.terminal_states().len()), (3, 5, 1));
        let last = &g.states[g.terminal_states()[0]];
        let want: BTreeSet<String> = ["((abc)de)", "(a(dcb)e)", "(ab(cde))"].iter().map(|s| s.to_string()).collect();
        assert_eq!(last.labels, want);

        let g = multiway(&std(StandardDiagram::Chain(4)), &motif(StandardDiagram::Vee)).unwrap();
        assert_eq!(g.terminal_states().len(), 1);
        assert!(g.to_dot().contains("->"));
    }

    #[test]
    fn concurrency_flags() {
        let v = check_concurrency(&std(StandardDiagram::Zee), &motif(StandardDiagram::Vee)).unwrap();
        assert!(v.concurrent);
        let v = check_concurrency(&std(StandardDiagram::LongFish), &motif(StandardDiagram::Fish)).unwrap();
        assert!(v.concurrent);

        // path x - m1 - y - m2 - z: the two vees share only the free vertex y
        let i = i2();
        let marks = [false, true, false, true, false];
        let d = Diagram::from_ids(
            marks.iter().enumerate().map(|(k, &m)| Vertex::new(format!("v{k}"), i.clone(), m)).collect(),
            &[("a", &["v0", "v1"]), ("b", &["v1", "v2"]), ("c", &["v2", "v3"]), ("d", &["v3", "v4"])],
        )
        .unwrap();
        let v = check_concurrency(&d, &motif(StandardDiagram::Vee)).unwrap();
        assert!(v.confluent && v.regular);
        assert!(!v.overlapping);
        assert!(!v.concurrent);
    }

    #[test]
    fn semantic_checks_pass() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        let v = semantic_confluence(&std(StandardDiagram::Zee), &motif(StandardDiagram::Vee), Semiring::Boolean, 10, 2, &mut rng).unwrap();
        assert_eq!(v, SemanticVerdict::Pass { trials: 10, sequences: 20 });
        let m5 = Semiring::IntMod(5);
        let v = semantic_confluence(&std(StandardDiagram::LongFish), &motif(StandardDiagram::Fish), m5, 5, 5, &mut rng).unwrap();
        assert_eq!(v, SemanticVerdict::Pass { trials: 5, sequences: 15 });
        assert!(semantic_confluence(&std(StandardDiagram::Zee), &motif(StandardDiagram::Vee), Semiring::Float64, 1, 2, &mut rng).is_err());
    }
}
