use std::collections::{BTreeSet, HashMap};

use super::canon::canonical_labeling;
use super::Diagram;

pub fn is_isomorphic(a: &Diagram, b: &Diagram) -> bool {
    canonical_labeling(a, None).0 == canonical_labeling(b, None).0
}

/// A vertex map `a → b` realising an isomorphism, if one exists.
pub fn isomorphism(a: &Diagram, b: &Diagram) -> Option<Vec<usize>> {
    let (ca, pa) = canonical_labeling(a, None);
    let (cb, pb) = canonical_labeling(b, None);
    if ca != cb {
        return None;
    }
    let mut at = vec![0; pb.len()];
    for (w, &p) in pb.iter().enumerate() {
        at[p] = w;
    }
    Some(pa.iter().map(|&p| at[p]).collect())
}

/// An automorphism: a vertex permutation together with the induced edge
/// permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// All automorphisms, by backtracking over vertex images.
pub fn automorphisms(d: &Diagram) -> Vec<Automorphism> {
    let n = d.vertices().len();
    let key = |v: usize| {
        let x = &d.vertices()[v];
        (x.contracted, x.index_set.size(), d.degree(v))
    };
    let edge_of: HashMap<BTreeSet<usize>, usize> = d.edges().iter().enumerate().map(|(k, e)| (e.leg_set(), k)).collect();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(d: &Diagram, image: &[usize], edge_of: &HashMap<BTreeSet<usize>, usize>) -> bool {
        d.edges().iter().all(|e| {
            if e.legs.iter().any(|&l| image[l] == usize::MAX) {
                return true;
            }
            edge_of.contains_key(&e.legs.iter().map(|&l| image[l]).collect::<BTreeSet<_>>())
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        d: &Diagram,
        v: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        key: &dyn Fn(usize) -> (bool, usize, usize),
        edge_of: &HashMap<BTreeSet<usize>, usize>,
        out: &mut Vec<Automorphism>,
    ) {
        let n = image.len();
        if v == n {
            let edges = d
                .edges()
                .iter()
                .map(|e| edge_of[&e.legs.iter().map(|&l| image[l]).collect::<BTreeSet<_>>()])
                .collect();
            out.push(Automorphism {
                vertices: image.clone(),
                edges,
            });
            return;
        }
        for w in 0..n {
            if used[w] || key(w) != key(v) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if consistent(d, image, edge_of) {
                go(d, v + 1, image, used, key, edge_of, out);
            }
            used[w] = false;
            image[v] = usize::MAX;
        }
    }

    go(d, 0, &mut image, &mut used, &key, &edge_of, &mut out);
    out
}

/// Whether the automorphism group acts transitively on edges.
pub fn edge_transitive(d: &Diagram) -> bool {
    if d.edges().is_empty() {
        return true;
    }
    let reached: BTreeSet<usize> = automorphisms(d).iter().map(|a| a.edges[0]).collect();
    reached.len() == d.edges().len()
}
