use std::fmt;
use std::str::FromStr;

use super::{Diagram, DiagramError, Edge, Vertex};
use crate::array::IndexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardDiagram {
    Vee,
    Zee,
    Chain(usize),
    Fish,
    LongFish,
    Bm,
    TrinityMid,
    TrinityRight,
}

impl StandardDiagram {
    pub const NAMED: [StandardDiagram; 7] = [
        StandardDiagram::Vee,
        StandardDiagram::Zee,
        StandardDiagram::Fish,
        StandardDiagram::LongFish,
        StandardDiagram::Bm,
        StandardDiagram::TrinityMid,
        StandardDiagram::TrinityRight,
    ];
}

impl fmt::Display for StandardDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardDiagram::Vee => f.write_str("vee"),
            StandardDiagram::Zee => f.write_str("zee"),
            StandardDiagram::Chain(n) => write!(f, "chain({n})"),
            StandardDiagram::Fish => f.write_str("fish"),
            StandardDiagram::LongFish => f.write_str("long_fish"),
            StandardDiagram::Bm => f.write_str("bm"),
            StandardDiagram::TrinityMid => f.write_str("trinity_mid"),
            StandardDiagram::TrinityRight => f.write_str("trinity_right"),
        }
    }
}

impl FromStr for StandardDiagram {
    type Err = DiagramError;

    /// Accepts `chain(4)`, `chain:4` and `chain4` for chains.
    fn from_str(s: &str) -> Result<Self, DiagramError> {
        let lower = s.trim().to_ascii_lowercase().replace('-', "_");
        let named = match lower.as_str() {
            "vee" => Some(StandardDiagram::Vee),
            "zee" => Some(StandardDiagram::Zee),
            "fish" => Some(StandardDiagram::Fish),
            "long_fish" | "longfish" => Some(StandardDiagram::LongFish),
            "bm" => Some(StandardDiagram::Bm),
            "trinity_mid" => Some(StandardDiagram::TrinityMid),
            "trinity_right" => Some(StandardDiagram::TrinityRight),
            _ => None,
        };
        if let Some(d) = named {
            return Ok(d);
        }
        let n = lower
            .strip_prefix("chain")
            .map(|rest| rest.trim_start_matches(['(', ':']).trim_end_matches(')'))
            .and_then(|n| n.parse::<usize>().ok())
            .ok_or_else(|| DiagramError::UnknownName(s.to_string()))?;
        Ok(StandardDiagram::Chain(n))
    }
}

/// `a`, `b`, … then `e26`, `e27`, … past the alphabet.
pub(crate) fn edge_label(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("e{k}")
    }
}

fn build(sets: &[&IndexSet], marked: &[usize], edges: &[&[usize]]) -> Result<Diagram, DiagramError> {
    let vertices = sets
        .iter()
        .enumerate()
        .map(|(k, s)| Vertex::new(format!("v{k}"), (*s).clone(), marked.contains(&k)))
        .collect();
    let edges = edges
        .iter()
        .enumerate()
        .map(|(k, legs)| Edge::new(edge_label(k), legs.to_vec()))
        .collect();
    Diagram::new(vertices, edges)
}

/// The fish with tips on `x`, `y` and mouth on `z`:
/// tail `a = {v0, v1, v2}`, body `b = {v2, v3, v4}`, head `c = {v3, v4, v5}`.
pub fn fish_diagram(x: &IndexSet, y: &IndexSet, z: &IndexSet) -> Result<Diagram, DiagramError> {
    build(&[x, y, z, x, y, z], &[2, 3, 4], &[&[0, 1, 2], &[2, 3, 4], &[3, 4, 5]])
}

/// A named diagram with every vertex on `index`. Vertex ids are `v0, v1, …`
/// and edge ids `a, b, c, …` in reading order.
pub fn standard_diagram(name: &StandardDiagram, index: &IndexSet) -> Result<Diagram, DiagramError> {
    let i = index;
    match *name {
        StandardDiagram::Vee => build(&[i; 3], &[1], &[&[0, 1], &[1, 2]]),
        StandardDiagram::Zee => build(&[i; 4], &[1, 2], &[&[0, 1], &[1, 2], &[2, 3]]),
        StandardDiagram::Chain(n) => {
            if n < 2 {
                return Err(DiagramError::ChainTooShort(n));
            }
            let sets = vec![i; n + 1];
            let marked: Vec<usize> = (1..n).collect();
            let legs: Vec<[usize; 2]> = (0..n).map(|k| [k, k + 1]).collect();
            let edges: Vec<&[usize]> = legs.iter().map(|l| l.as_slice()).collect();
            build(&sets, &marked, &edges)
        }
        StandardDiagram::Fish => fish_diagram(i, i, i),
        StandardDiagram::LongFish => build(
            &[i; 9],
            &[2, 3, 4, 5, 6, 7],
            &[&[0, 1, 2], &[2, 3, 4], &[3, 4, 5], &[5, 6, 7], &[6, 7, 8]],
        ),
        StandardDiagram::Bm => build(&[i; 4], &[3], &[&[0, 3, 1], &[1, 3, 2], &[0, 3, 2]]),
        StandardDiagram::TrinityMid => build(&[i; 5], &[3, 4], &[&[0, 3, 4], &[1, 3, 4], &[2, 3, 4]]),
        StandardDiagram::TrinityRight => build(&[i; 6], &[3, 4, 5], &[&[0, 3, 4], &[1, 4, 5], &[2, 3, 5]]),
    }
}
