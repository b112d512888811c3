//! Canonical certificates by colour refinement plus individualisation.
//!
//! Vertices and edges are nodes of the incidence graph. Refinement splits
//! classes by the multiset of neighbouring classes; when it stalls, every
//! vertex of the first non-singleton class is individualised in turn and the
//! lexicographically smallest leaf certificate wins.

use std::collections::BTreeMap;
use std::fmt;

use super::Diagram;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate(String);

impl Certificate {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

struct Incidence<'a> {
    n: usize,
    vertex_labels: Vec<String>,
    edge_labels: Vec<String>,
    /// neighbours of every node; vertices first, then edges
    adjacent: Vec<Vec<usize>>,
    diagram: &'a Diagram,
}

impl<'a> Incidence<'a> {
    fn new(d: &'a Diagram, edge_colors: Option<&[String]>) -> Self {
        let n = d.vertices().len();
        let vertex_labels = d
            .vertices()
            .iter()
            .map(|v| format!("{}{}", if v.contracted { 'm' } else { 'f' }, v.index_set.size()))
            .collect();
        let edge_labels = d
            .edges()
            .iter()
            .enumerate()
            .map(|(k, e)| match edge_colors {
                Some(c) => format!("{}<{}>", e.order(), c[k]),
                None => e.order().to_string(),
            })
            .collect();
        let mut adjacent = vec![Vec::new(); n + d.edges().len()];
        for (k, e) in d.edges().iter().enumerate() {
            for &l in &e.legs {
                adjacent[l].push(n + k);
                adjacent[n + k].push(l);
            }
        }
        Self {
            n,
            vertex_labels,
            edge_labels,
            adjacent,
            diagram: d,
        }
    }

    fn initial_colors(&self) -> Vec<usize> {
        let labels: Vec<String> = self
            .vertex_labels
            .iter()
            .map(|l| format!("v{l}"))
            .chain(self.edge_labels.iter().map(|l| format!("e{l}")))
            .collect();
        rank(&labels)
    }

    /// Refine until the number of classes stops growing.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = count_classes(&colors);
        loop {
            let signatures: Vec<(usize, Vec<usize>)> = (0..colors.len())
                .map(|k| {
                    let mut around: Vec<usize> = self.adjacent[k].iter().map(|&j| colors[j]).collect();
                    around.sort_unstable();
                    (colors[k], around)
                })
                .collect();
            colors = rank(&signatures);
            let next = count_classes(&colors);
            if next == classes {
                return colors;
            }
            classes = next;
        }
    }

    fn leaf(&self, colors: &[usize]) -> (String, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| colors[v]);
        let mut position = vec![0; self.n];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let vertices: Vec<&str> = order.iter().map(|&v| self.vertex_labels[v].as_str()).collect();
        let mut edges: Vec<String> = self
            .diagram
            .edges()
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let mut legs: Vec<usize> = e.legs.iter().map(|&l| position[l]).collect();
                legs.sort_unstable();
                let legs: Vec<String> = legs.iter().map(ToString::to_string).collect();
                format!("{}({})", self.edge_labels[k], legs.join(","))
            })
            .collect();
        edges.sort();
        (format!("V[{}]E[{}]", vertices.join(","), edges.join(";")), position)
    }

    fn search(&self, colors: Vec<usize>, best: &mut Option<(String, Vec<usize>)>) {
        let colors = self.refine(colors);
        let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            cells.entry(colors[v]).or_default().push(v);
        }
        let Some(target) = cells.values().find(|c| c.len() > 1) else {
            let leaf = self.leaf(&colors);
            if best.as_ref().is_none_or(|b| leaf.0 < b.0) {
                *best = Some(leaf);
            }
            return;
        };
        for &v in target {
            let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
            next[v] -= 1;
            self.search(next, best);
        }
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Replace each item by the rank of its value among the distinct values.
fn rank<T: Ord + Clone>(items: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = items.to_vec();
    sorted.sort();
    sorted.dedup();
    items.iter().map(|x| sorted.binary_search(x).unwrap()).collect()
}

/// Certificate plus the canonical position of every vertex. Edge colours,
/// when given, must be one string per edge.
pub fn canonical_labeling(d: &Diagram, edge_colors: Option<&[String]>) -> (Certificate, Vec<usize>) {
    let inc = Incidence::new(d, edge_colors);
    let mut best = None;
    inc.search(inc.initial_colors(), &mut best);
    let (cert, position) = best.unwrap_or_default();
    (Certificate(cert), position)
}

pub fn canonical_form(d: &Diagram) -> Certificate {
    canonical_labeling(d, None).0
}

pub fn canonical_form_colored(d: &Diagram, edge_colors: &[String]) -> Certificate {
    canonical_labeling(d, Some(edge_colors)).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::IndexSet;
    use crate::diagram::{fish_diagram, standard_diagram, StandardDiagram};

    fn std(name: StandardDiagram) -> Diagram {
        standard_diagram(&name, &IndexSet::new("I", 2).unwrap()).unwrap()
    }

    #[test]
    fn distinguishes_standard_diagrams() {
        let all: Vec<Certificate> = StandardDiagram::NAMED.iter().map(|&n| canonical_form(&std(n))).collect();
        for a in 0..all.len() {
            for b in a + 1..all.len() {
                assert_ne!(all[a], all[b], "{} vs {}", StandardDiagram::NAMED[a], StandardDiagram::NAMED[b]);
            }
        }
    }

    #[test]
    fn relabeled_fish_matches() {
        let fish = std(StandardDiagram::Fish);
        let renamed = fish
            .relabel(&[5, 4, 3, 2, 1, 0], &[2, 0, 1], |k| format!("x{k}"), |k| format!("E{k}"))
            .unwrap();
        assert_eq!(canonical_form(&fish), canonical_form(&renamed));
    }

    #[test]
    fn cardinality_matters() {
        let two = IndexSet::new("I", 2).unwrap();
        let three = IndexSet::new("J", 3).unwrap();
        let a = fish_diagram(&two, &two, &two).unwrap();
        let b = fish_diagram(&two, &three, &two).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&b));
        // names of index sets do not
        let renamed = IndexSet::new("Q", 2).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&fish_diagram(&renamed, &renamed, &renamed).unwrap()));
    }

    #[test]
    fn edge_colours_split() {
        let zee = std(StandardDiagram::Zee);
        let plain: Vec<String> = vec!["x".into(); 3];
        let left: Vec<String> = vec!["x".into(), "y".into(), "x".into()];
        assert_ne!(canonical_form_colored(&zee, &plain), canonical_form_colored(&zee, &left));
        let ab: Vec<String> = vec!["p".into(), "q".into(), "q".into()];
        let bc: Vec<String> = vec!["q".into(), "q".into(), "p".into()];
        // the zee is mirror symmetric, so colouring either end is the same shape
        assert_eq!(canonical_form_colored(&zee, &ab), canonical_form_colored(&zee, &bc));
    }
}
