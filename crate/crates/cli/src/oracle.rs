//! Reference computations that share no code with the library's
//! evaluator or law checkers.

use plexus_core::array::{kronecker, Array, IndexSet};
use plexus_core::ternary::InvolutedMonoid;
use plexus_core::{Binding, Diagram, Edge, Semiring, Value};

/// `Σ_pqr a[i,j,p] · b[q,r,p] · c[q,r,k]` by six nested loops over the raw
/// entry vectors.
pub fn fish_triple_loop(a: &Array, b: &Array, c: &Array) -> Vec<Value> {
    let s = a.semiring();
    let shape = a.shape();
    let (ni, nj, nk) = (shape[0], shape[1], shape[2]);
    let at = |x: &Array, i: usize, j: usize, k: usize| x.entries()[(i * nj + j) * nk + k];
    let mut out = Vec::with_capacity(ni * nj * nk);
    for i in 0..ni {
        for j in 0..nj {
            for k in 0..nk {
                let mut acc = s.zero();
                for p in 0..nk {
                    for q in 0..ni {
                        for r in 0..nj {
                            let t = s.mul(&s.mul(&at(a, i, j, p), &at(b, q, r, p)).unwrap(), &at(c, q, r, k)).unwrap();
                            acc = s.add(&acc, &t).unwrap();
                        }
                    }
                }
                out.push(acc);
            }
        }
    }
    out
}

/// `e` on `(I, J, K)` as a boolean `I × (J·K)` matrix.
pub fn boolean_matrix(e: &Array) -> Vec<Vec<bool>> {
    let shape = e.shape();
    let cols = shape[1] * shape[2];
    (0..shape[0])
        .map(|i| (0..cols).map(|c| e.entries()[i * cols + c] == Value::Int(1)).collect())
        .collect()
}

/// `Eᵀ · E' = 1` and `E' · Eᵀ = 1` over the booleans.
pub fn inverse_pair(e: &Array, e2: &Array) -> bool {
    let (x, y) = (boolean_matrix(e), boolean_matrix(e2));
    let rows = x.len();
    let cols = x[0].len();
    let left = (0..cols).all(|c| (0..cols).all(|d| (0..rows).any(|i| x[i][c] && y[i][d]) == (c == d)));
    let right = (0..rows).all(|i| (0..rows).all(|k| (0..cols).any(|c| y[i][c] && x[k][c]) == (i == k)));
    left && right
}

/// The 0/1 array `e[i, j, k] = [σ(i) = j·|K| + k]`.
pub fn permutation_array(axes: &[IndexSet], sigma: &[usize]) -> Array {
    let s = Semiring::Boolean;
    let nk = axes[2].size();
    Array::from_fn(axes.to_vec(), s, |ix| Ok(if sigma[ix[0]] == ix[1] * nk + ix[2] { s.one() } else { s.zero() })).unwrap()
}

/// All permutations of `0..n` by Heap's algorithm.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Monoid and involution axioms, written out directly.
pub fn involuted_monoid_axioms(m: &InvolutedMonoid) -> bool {
    let n = m.n;
    let mul = |a: usize, b: usize| m.product[a * n + b];
    (0..n).all(|a| {
        mul(m.identity, a) == a
            && mul(a, m.identity) == a
            && m.star[m.star[a]] == a
            && (0..n).all(|b| m.star[mul(a, b)] == mul(m.star[b], m.star[a]) && (0..n).all(|c| mul(mul(a, b), c) == mul(a, mul(b, c))))
    })
}

/// Split marked vertex `vertex`: its first incident edge moves to a fresh
/// marked copy, joined to the original by a `δ₂` edge.
pub fn insert_identity(d: &Diagram, b: &Binding, vertex: usize) -> (Diagram, Binding) {
    let mut vertices = d.vertices().to_vec();
    let copy = vertices.len();
    let original = d.vertices()[vertex].clone();
    let mut twin = original.clone();
    twin.id = format!("{}'", original.id);
    vertices.push(twin);
    let moved = d.incident_edges(vertex)[0];
    let mut edges: Vec<Edge> = d.edges().to_vec();
    for leg in edges[moved].legs.iter_mut() {
        if *leg == vertex {
            *leg = copy;
        }
    }
    edges.push(Edge::new("delta", vec![vertex, copy]));
    let mut b2 = b.clone();
    let eb = b.get(&d.edges()[moved].id).unwrap();
    let axis_vertices = eb.axis_vertices.iter().map(|&v| if v == vertex { copy } else { v }).collect();
    b2.bind(&d.edges()[moved].id, eb.array.clone(), axis_vertices);
    b2.bind("delta", kronecker(2, &original.index_set, eb.array.semiring()).unwrap(), vec![vertex, copy]);
    (Diagram::new(vertices, edges).unwrap(), b2)
}
