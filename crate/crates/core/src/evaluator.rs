//! Evaluation of a plex diagram under array bindings: the general plex
//! product. Every marked vertex is summed over, every edge contributes one
//! factor, and the free vertices index the result.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::array::{Array, ArrayError, IndexSet, MultiIndices};
use crate::diagram::Diagram;
use crate::semiring::{Semiring, SemiringError, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("edge `{0}` has no binding")]
    MissingBinding(String),
    #[error("binding for unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("binding for edge `{edge}` does not map its axes one-to-one onto its legs")]
    NotALegPermutation { edge: String },
    #[error("edge `{edge}` axis {axis}: vertex `{vertex}` is on {expected} but the axis is on {found}")]
    Conformability {
        edge: String,
        axis: usize,
        vertex: String,
        expected: String,
        found: String,
    },
    #[error("bindings mix semirings {0} and {1}")]
    SemiringMismatch(Semiring, Semiring),
    #[error("diagram has no edges; pass a semiring explicitly")]
    NoSemiring,
    #[error("output order is not a permutation of the free vertices: {0}")]
    BadOrder(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error(transparent)]
    Array(#[from] ArrayError),
    #[error(transparent)]
    Semiring(#[from] SemiringError),
}

/// One edge's array and, for each array axis, the vertex it sits on.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBinding {
    pub array: Array,
    pub axis_vertices: Vec<usize>,
}

/// Arrays attached to the edges of a diagram, keyed by edge id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Binding {
    edges: BTreeMap<String, EdgeBinding>,
}

/// Legs sorted by vertex id: the default axis assignment.
pub fn default_axis_vertices(d: &Diagram, edge: usize) -> Vec<usize> {
    let mut legs = d.edges()[edge].legs.clone();
    legs.sort_by(|&a, &b| d.vertices()[a].id.cmp(&d.vertices()[b].id));
    legs
}

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    /// Attach `array` to `edge`, with axis `k` on vertex `axis_vertices[k]`.
    pub fn bind(&mut self, edge: &str, array: Array, axis_vertices: Vec<usize>) -> &mut Self {
        self.edges.insert(edge.to_string(), EdgeBinding { array, axis_vertices });
        self
    }

    /// Attach with axes given by vertex ids.
    pub fn bind_ids(&mut self, d: &Diagram, edge: &str, array: Array, legs: &[&str]) -> Result<&mut Self, EvalError> {
        let axis_vertices = legs
            .iter()
            .map(|id| d.vertex_index(id).ok_or_else(|| EvalError::UnknownVertex(id.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.bind(edge, array, axis_vertices))
    }

    /// Attach using the default axis assignment.
    pub fn bind_default(&mut self, d: &Diagram, edge: &str, array: Array) -> Result<&mut Self, EvalError> {
        let k = d.edge_index(edge).ok_or_else(|| EvalError::UnknownEdge(edge.to_string()))?;
        Ok(self.bind(edge, array, default_axis_vertices(d, k)))
    }

    pub fn get(&self, edge: &str) -> Option<&EdgeBinding> {
        self.edges.get(edge)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &EdgeBinding)> {
        self.edges.iter()
    }

    pub fn remove(&mut self, edge: &str) -> Option<EdgeBinding> {
        self.edges.remove(edge)
    }

    /// Check coverage, leg bijections and conformability; returns the
    /// common semiring.
    pub fn validate(&self, d: &Diagram) -> Result<Semiring, EvalError> {
        for id in self.edges.keys() {
            if d.edge_index(id).is_none() {
                return Err(EvalError::UnknownEdge(id.clone()));
            }
        }
        let mut semiring = None;
        for e in d.edges() {
            let b = self.edges.get(&e.id).ok_or_else(|| EvalError::MissingBinding(e.id.clone()))?;
            let mut axes = b.axis_vertices.clone();
            axes.sort_unstable();
            let mut legs = e.legs.clone();
            legs.sort_unstable();
            if axes != legs || b.array.order() != e.order() {
                return Err(EvalError::NotALegPermutation { edge: e.id.clone() });
            }
            for (axis, (&v, set)) in b.axis_vertices.iter().zip(b.array.axes()).enumerate() {
                let vertex = &d.vertices()[v];
                if &vertex.index_set != set {
                    return Err(EvalError::Conformability {
                        edge: e.id.clone(),
                        axis,
                        vertex: vertex.id.clone(),
                        expected: vertex.index_set.to_string(),
                        found: set.to_string(),
                    });
                }
            }
            match semiring {
                None => semiring = Some(b.array.semiring()),
                Some(s) if s != b.array.semiring() => return Err(EvalError::SemiringMismatch(s, b.array.semiring())),
                _ => {}
            }
        }
        semiring.ok_or(EvalError::NoSemiring)
    }
}

fn resolve_order(d: &Diagram, order: Option<&[usize]>) -> Result<Vec<usize>, EvalError> {
    let Some(order) = order else {
        return Ok(d.default_output_order());
    };
    let mut given = order.to_vec();
    given.sort_unstable();
    if given != d.free_vertices() {
        let names: Vec<String> = order
            .iter()
            .map(|&v| d.vertices().get(v).map_or(format!("#{v}"), |x| x.id.clone()))
            .collect();
        return Err(EvalError::BadOrder(names.join(",")));
    }
    Ok(order.to_vec())
}

/// Resolve an output order written as vertex ids.
pub fn order_from_ids(d: &Diagram, ids: &[&str]) -> Result<Vec<usize>, EvalError> {
    let order = ids
        .iter()
        .map(|id| d.vertex_index(id).ok_or_else(|| EvalError::UnknownVertex(id.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    resolve_order(d, Some(&order))
}

/// Evaluate by enumerating every assignment of every vertex. `order` lists
/// the free vertices indexing the result (default: sorted by id).
pub fn evaluate(d: &Diagram, b: &Binding, order: Option<&[usize]>) -> Result<Array, EvalError> {
    let s = b.validate(d)?;
    enumerate_product(d, b, order, s)
}

/// As [`evaluate`], with the semiring given explicitly (needed for diagrams
/// without edges).
pub fn evaluate_in(d: &Diagram, b: &Binding, order: Option<&[usize]>, s: Semiring) -> Result<Array, EvalError> {
    if !d.edges().is_empty() {
        let found = b.validate(d)?;
        if found != s {
            return Err(EvalError::SemiringMismatch(s, found));
        }
    }
    enumerate_product(d, b, order, s)
}

fn enumerate_product(d: &Diagram, b: &Binding, order: Option<&[usize]>, s: Semiring) -> Result<Array, EvalError> {
    let order = resolve_order(d, order)?;
    let marked = d.marked_vertices();
    let out_axes: Vec<IndexSet> = order.iter().map(|&v| d.vertices()[v].index_set.clone()).collect();
    let marked_shape: Vec<usize> = marked.iter().map(|&v| d.vertices()[v].index_set.size()).collect();

    // per edge: (entries, [(vertex, stride)])
    let factors: Vec<(&[Value], Vec<(usize, usize)>)> = d
        .edges()
        .iter()
        .map(|e| {
            let eb = &b.edges[&e.id];
            let st = eb.array.strides();
            (eb.array.entries(), eb.axis_vertices.iter().copied().zip(st).collect())
        })
        .collect();

    let mut value = vec![0usize; d.vertices().len()];
    Ok(Array::from_fn(out_axes, s, |free| {
        for (&v, &x) in order.iter().zip(free) {
            value[v] = x;
        }
        let mut acc = s.zero();
        for inner in MultiIndices::new(&marked_shape) {
            for (&v, &x) in marked.iter().zip(&inner) {
                value[v] = x;
            }
            let mut term = s.one();
            for (entries, axes) in &factors {
                let offset: usize = axes.iter().map(|&(v, stride)| value[v] * stride).sum();
                term = s.mul(&term, &entries[offset])?;
                if s.is_zero(&term) && s.is_exact() {
                    break;
                }
            }
            acc = s.add(&acc, &term)?;
        }
        Ok(acc)
    })?)
}

/// Independent reference evaluation: a recursive nested loop over vertices
/// (output vertices outermost), accumulating directly into a flat buffer.
pub fn evaluate_formula_oracle(d: &Diagram, b: &Binding, order: Option<&[usize]>) -> Result<Array, EvalError> {
    let s = b.validate(d)?;
    let order = resolve_order(d, order)?;
    let n = d.vertices().len();
    let sizes: Vec<usize> = d.vertices().iter().map(|v| v.index_set.size()).collect();
    let mut loop_order = order.clone();
    loop_order.extend((0..n).filter(|&v| d.vertices()[v].contracted));

    struct Ctx<'a> {
        s: Semiring,
        sizes: Vec<usize>,
        loop_order: Vec<usize>,
        out_len: usize,
        edges: Vec<(&'a Array, &'a [usize])>,
        out: Vec<Value>,
    }

    fn visit(ctx: &mut Ctx<'_>, depth: usize, assignment: &mut [usize], out_pos: usize) -> Result<(), EvalError> {
        if depth == ctx.loop_order.len() {
            let mut term = ctx.s.one();
            for (array, axes) in &ctx.edges {
                let mut flat = 0;
                for (k, &v) in axes.iter().enumerate() {
                    flat = flat * array.axes()[k].size() + assignment[v];
                }
                term = ctx.s.mul(&term, &array.entries()[flat])?;
            }
            ctx.out[out_pos] = ctx.s.add(&ctx.out[out_pos], &term)?;
            return Ok(());
        }
        let v = ctx.loop_order[depth];
        for x in 0..ctx.sizes[v] {
            assignment[v] = x;
            let pos = if depth < ctx.out_len { out_pos * ctx.sizes[v] + x } else { out_pos };
            visit(ctx, depth + 1, assignment, pos)?;
        }
        Ok(())
    }

    let total: usize = order.iter().map(|&v| sizes[v]).product();
    let mut ctx = Ctx {
        s,
        sizes,
        loop_order,
        out_len: order.len(),
        edges: d
            .edges()
            .iter()
            .map(|e| {
                let eb = &b.edges[&e.id];
                (&eb.array, eb.axis_vertices.as_slice())
            })
            .collect(),
        out: vec![s.zero(); total],
    };
    visit(&mut ctx, 0, &mut vec![0; n], 0)?;
    let axes = order.iter().map(|&v| d.vertices()[v].index_set.clone()).collect();
    Ok(Array::new(axes, ctx.out, s)?)
}
