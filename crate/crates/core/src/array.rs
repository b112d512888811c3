//! Dense multi-index arrays over a [`Semiring`].
//!
//! Entries are stored row-major: the last axis varies fastest. Every
//! operation returns a fresh array.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semiring::{Semiring, SemiringError, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrayError {
    #[error("index set `{0}` must have at least one element")]
    EmptyIndexSet(String),
    #[error("expected {expected} entries, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("{0:?} is not a permutation of the axes")]
    NotAPermutation(Vec<usize>),
    #[error("axis {axis} out of range for an array of order {order}")]
    InvalidAxis { axis: usize, order: usize },
    #[error("repeated axis {0}")]
    RepeatedAxis(usize),
    #[error("index {value} out of range for axis {axis} of size {size}")]
    IndexOutOfRange { axis: usize, value: usize, size: usize },
    #[error("constellation mismatch: {left} vs {right}")]
    ConstellationMismatch { left: String, right: String },
    #[error("shared axes do not reference a single index set: {0}")]
    IncompatibleSharedAxes(String),
    #[error("semiring mismatch: {0} vs {1}")]
    SemiringMismatch(Semiring, Semiring),
    #[error("operation needs at least one array")]
    NoArrays,
    #[error("kronecker arrays need order >= 1")]
    ZeroOrder,
    #[error("unknown index set `{0}`")]
    UnknownIndexSet(String),
    #[error("malformed array json: {0}")]
    Json(String),
    #[error(transparent)]
    Semiring(#[from] SemiringError),
}

/// A named finite index set `{0, …, size-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSet {
    name: String,
    size: usize,
}

impl IndexSet {
    pub fn new(name: impl Into<String>, size: usize) -> Result<Self, ArrayError> {
        let name = name.into();
        if size == 0 {
            return Err(ArrayError::EmptyIndexSet(name));
        }
        Ok(Self { name, size })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.size)
    }
}

fn describe(axes: &[IndexSet]) -> String {
    let parts: Vec<String> = axes.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Row-major strides for a shape.
pub fn strides(shape: &[usize]) -> Vec<usize> {
    let mut out = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        out[k] = out[k + 1] * shape[k + 1];
    }
    out
}

/// Odometer over all multi-indices of a shape, in row-major order.
#[derive(Debug, Clone)]
pub struct MultiIndices {
    shape: Vec<usize>,
    current: Vec<usize>,
    done: bool,
}

impl MultiIndices {
    pub fn new(shape: &[usize]) -> Self {
        Self {
            shape: shape.to_vec(),
            current: vec![0; shape.len()],
            done: shape.contains(&0),
        }
    }
}

impl Iterator for MultiIndices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut k = self.shape.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.current[k] += 1;
            if self.current[k] < self.shape[k] {
                break;
            }
            self.current[k] = 0;
        }
        Some(out)
    }
}

/// A dense array: a constellation of index sets plus row-major entries.
#[derive(Debug, Clone)]
pub struct Array {
    axes: Vec<IndexSet>,
    entries: Vec<Value>,
    semiring: Semiring,
}

impl PartialEq for Array {
    /// Same constellation (by index set, in order), same semiring, and
    /// pointwise semiring equality.
    fn eq(&self, other: &Self) -> bool {
        self.axes == other.axes
            && self.semiring == other.semiring
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| self.semiring.same(a, b))
    }
}

impl Array {
    pub fn new(axes: Vec<IndexSet>, entries: Vec<Value>, semiring: Semiring) -> Result<Self, ArrayError> {
        let expected: usize = axes.iter().map(IndexSet::size).product();
        if entries.len() != expected {
            return Err(ArrayError::SizeMismatch {
                expected,
                found: entries.len(),
            });
        }
        for v in &entries {
            semiring.check(v)?;
        }
        Ok(Self { axes, entries, semiring })
    }

    /// Convenience constructor from plain integers.
    pub fn from_ints(axes: Vec<IndexSet>, entries: &[u64], semiring: Semiring) -> Result<Self, ArrayError> {
        Self::new(axes, entries.iter().map(|&n| Value::Int(n)).collect(), semiring)
    }

    /// Entries drawn independently with [`Semiring::random`].
    pub fn random<R: rand::Rng + ?Sized>(axes: Vec<IndexSet>, semiring: Semiring, bound: u64, rng: &mut R) -> Self {
        let n = axes.iter().map(IndexSet::size).product();
        let entries = (0..n).map(|_| semiring.random(rng, bound)).collect();
        Self::from_parts(axes, entries, semiring)
    }

    /// An order-0 array holding a single value.
    pub fn scalar(value: Value, semiring: Semiring) -> Result<Self, ArrayError> {
        Self::new(Vec::new(), vec![value], semiring)
    }

    pub(crate) fn from_parts(axes: Vec<IndexSet>, entries: Vec<Value>, semiring: Semiring) -> Self {
        debug_assert_eq!(entries.len(), axes.iter().map(IndexSet::size).product::<usize>());
        Self { axes, entries, semiring }
    }

    pub fn axes(&self) -> &[IndexSet] {
        &self.axes
    }

    pub fn entries(&self) -> &[Value] {
        &self.entries
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn order(&self) -> usize {
        self.axes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(IndexSet::size).collect()
    }

    pub fn strides(&self) -> Vec<usize> {
        strides(&self.shape())
    }

    pub fn offset(&self, index: &[usize]) -> Result<usize, ArrayError> {
        if index.len() != self.order() {
            return Err(ArrayError::SizeMismatch {
                expected: self.order(),
                found: index.len(),
            });
        }
        let mut off = 0;
        for (axis, (&i, set)) in index.iter().zip(&self.axes).enumerate() {
            if i >= set.size() {
                return Err(ArrayError::IndexOutOfRange {
                    axis,
                    value: i,
                    size: set.size(),
                });
            }
            off = off * set.size() + i;
        }
        Ok(off)
    }

    pub fn get(&self, index: &[usize]) -> Result<Value, ArrayError> {
        Ok(self.entries[self.offset(index)?])
    }

    /// The single entry of an order-0 array.
    pub fn as_scalar(&self) -> Option<Value> {
        (self.order() == 0).then(|| self.entries[0])
    }

    /// Build an array by evaluating `f` at every multi-index.
    pub fn from_fn(
        axes: Vec<IndexSet>,
        semiring: Semiring,
        mut f: impl FnMut(&[usize]) -> Result<Value, ArrayError>,
    ) -> Result<Self, ArrayError> {
        let shape: Vec<usize> = axes.iter().map(IndexSet::size).collect();
        let entries = MultiIndices::new(&shape)
            .map(|idx| f(&idx))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_parts(axes, entries, semiring))
    }

    fn check_axis(&self, axis: usize) -> Result<(), ArrayError> {
        if axis >= self.order() {
            return Err(ArrayError::InvalidAxis {
                axis,
                order: self.order(),
            });
        }
        Ok(())
    }

    /// Permute axes: `result.axes[k] = self.axes[perm[k]]`, so
    /// `result[j] = self[i]` with `i[perm[k]] = j[k]`.
    pub fn reorder(&self, perm: &[usize]) -> Result<Self, ArrayError> {
        let n = self.order();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(ArrayError::NotAPermutation(perm.to_vec()));
        }
        let axes: Vec<IndexSet> = perm.iter().map(|&p| self.axes[p].clone()).collect();
        let src_strides = self.strides();
        let mut src = vec![0; n];
        Self::from_fn(axes, self.semiring, |j| {
            for (k, &p) in perm.iter().enumerate() {
                src[p] = j[k];
            }
            Ok(self.entries[src.iter().zip(&src_strides).map(|(i, s)| i * s).sum::<usize>()])
        })
    }

    /// Replace the axes in `group` by one composite axis, placed at the
    /// position of the lowest grouped axis. The composite index enumerates the
    /// grouped axes row-major in the order they are listed in `group`.
    pub fn flatten(&self, group: &[usize]) -> Result<Self, ArrayError> {
        if group.is_empty() {
            return Err(ArrayError::NoArrays);
        }
        let mut seen = vec![false; self.order()];
        for &g in group {
            self.check_axis(g)?;
            if std::mem::replace(&mut seen[g], true) {
                return Err(ArrayError::RepeatedAxis(g));
            }
        }
        let first = *group.iter().min().unwrap();
        let name = group.iter().map(|&g| self.axes[g].name()).collect::<Vec<_>>().join("*");
        let size = group.iter().map(|&g| self.axes[g].size()).product();
        let composite = IndexSet::new(name, size)?;
        let group_shape: Vec<usize> = group.iter().map(|&g| self.axes[g].size()).collect();

        let mut axes = Vec::new();
        // position k of the result -> either Some(source axis) or None for the composite
        let mut layout = Vec::new();
        for k in 0..self.order() {
            if k == first {
                axes.push(composite.clone());
                layout.push(None);
            } else if !seen[k] {
                axes.push(self.axes[k].clone());
                layout.push(Some(k));
            }
        }
        let mut src = vec![0; self.order()];
        Self::from_fn(axes, self.semiring, |j| {
            for (pos, slot) in layout.iter().enumerate() {
                match slot {
                    Some(k) => src[*k] = j[pos],
                    None => {
                        let mut rest = j[pos];
                        for (gi, &g) in group.iter().enumerate().rev() {
                            src[g] = rest % group_shape[gi];
                            rest /= group_shape[gi];
                        }
                    }
                }
            }
            self.get(&src)
        })
    }

    /// Insert a redundant axis at `position`; entries do not depend on it.
    pub fn broaden(&self, new_axis: IndexSet, position: usize) -> Result<Self, ArrayError> {
        if position > self.order() {
            return Err(ArrayError::InvalidAxis {
                axis: position,
                order: self.order(),
            });
        }
        let mut axes = self.axes.clone();
        axes.insert(position, new_axis);
        let mut src = Vec::with_capacity(self.order());
        Self::from_fn(axes, self.semiring, |j| {
            src.clear();
            src.extend(j.iter().enumerate().filter(|(k, _)| *k != position).map(|(_, &v)| v));
            self.get(&src)
        })
    }

    /// Fix some axes to given values (currying). Fixing every axis yields the
    /// order-0 array holding that entry.
    pub fn slice(&self, assignment: &BTreeMap<usize, usize>) -> Result<Self, ArrayError> {
        for (&axis, &value) in assignment {
            self.check_axis(axis)?;
            let size = self.axes[axis].size();
            if value >= size {
                return Err(ArrayError::IndexOutOfRange { axis, value, size });
            }
        }
        let free: Vec<usize> = (0..self.order()).filter(|k| !assignment.contains_key(k)).collect();
        let axes = free.iter().map(|&k| self.axes[k].clone()).collect();
        let mut src = vec![0; self.order()];
        for (&axis, &value) in assignment {
            src[axis] = value;
        }
        Self::from_fn(axes, self.semiring, |j| {
            for (pos, &k) in free.iter().enumerate() {
                src[k] = j[pos];
            }
            self.get(&src)
        })
    }

    fn same_shape(&self, other: &Self) -> Result<(), ArrayError> {
        if self.semiring != other.semiring {
            return Err(ArrayError::SemiringMismatch(self.semiring, other.semiring));
        }
        if self.axes != other.axes {
            return Err(ArrayError::ConstellationMismatch {
                left: describe(&self.axes),
                right: describe(&other.axes),
            });
        }
        Ok(())
    }

    pub fn entrywise_add(&self, other: &Self) -> Result<Self, ArrayError> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.semiring.add(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_parts(self.axes.clone(), entries, self.semiring))
    }

    pub fn entrywise_mul(&self, other: &Self) -> Result<Self, ArrayError> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.semiring.mul(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_parts(self.axes.clone(), entries, self.semiring))
    }

    /// Sum out one axis.
    pub fn unary_contract(&self, axis: usize) -> Result<Self, ArrayError> {
        self.check_axis(axis)?;
        let s = self.semiring;
        let mut axes = self.axes.clone();
        let removed = axes.remove(axis);
        let mut src = vec![0; self.order()];
        Self::from_fn(axes, s, |j| {
            let mut acc = s.zero();
            for p in 0..removed.size() {
                let mut pos = 0;
                for (k, slot) in src.iter_mut().enumerate() {
                    if k == axis {
                        *slot = p;
                    } else {
                        *slot = j[pos];
                        pos += 1;
                    }
                }
                acc = s.add(&acc, &self.get(&src)?)?;
            }
            Ok(acc)
        })
    }

    /// Sum over the diagonal of two axes on the same index set, removing both.
    pub fn self_contract(&self, axis_i: usize, axis_j: usize) -> Result<Self, ArrayError> {
        self.check_axis(axis_i)?;
        self.check_axis(axis_j)?;
        if axis_i == axis_j {
            return Err(ArrayError::RepeatedAxis(axis_i));
        }
        if self.axes[axis_i] != self.axes[axis_j] {
            return Err(ArrayError::IncompatibleSharedAxes(format!(
                "{} vs {}",
                self.axes[axis_i], self.axes[axis_j]
            )));
        }
        let s = self.semiring;
        let keep: Vec<usize> = (0..self.order()).filter(|&k| k != axis_i && k != axis_j).collect();
        let axes = keep.iter().map(|&k| self.axes[k].clone()).collect();
        let mut src = vec![0; self.order()];
        Self::from_fn(axes, s, |j| {
            for (pos, &k) in keep.iter().enumerate() {
                src[k] = j[pos];
            }
            let mut acc = s.zero();
            for p in 0..self.axes[axis_i].size() {
                src[axis_i] = p;
                src[axis_j] = p;
                acc = s.add(&acc, &self.get(&src)?)?;
            }
            Ok(acc)
        })
    }

    /// Replace `axis` by `copies + 1` axes on the same index set; entries are
    /// `a(…, i, …) · δ(i, i₁, …, i_copies)`. The new axes follow `axis`.
    pub fn diagonal_extension(&self, axis: usize, copies: usize) -> Result<Self, ArrayError> {
        self.check_axis(axis)?;
        let s = self.semiring;
        let mut axes = self.axes.clone();
        for _ in 0..copies {
            axes.insert(axis + 1, self.axes[axis].clone());
        }
        let mut src = vec![0; self.order()];
        Self::from_fn(axes, s, |j| {
            let diag = &j[axis..=axis + copies];
            if diag.iter().any(|&x| x != diag[0]) {
                return Ok(s.zero());
            }
            for (k, slot) in src.iter_mut().enumerate() {
                *slot = if k <= axis { j[k] } else { j[k + copies] };
            }
            self.get(&src)
        })
    }
}

/// The constant-zero array on a constellation.
pub fn zero_array(axes: Vec<IndexSet>, semiring: Semiring) -> Array {
    let n = axes.iter().map(IndexSet::size).product();
    Array::from_parts(axes, vec![semiring.zero(); n], semiring)
}

/// The constant-one (Hadamard) array on a constellation.
pub fn full_array(axes: Vec<IndexSet>, semiring: Semiring) -> Array {
    let n = axes.iter().map(IndexSet::size).product();
    Array::from_parts(axes, vec![semiring.one(); n], semiring)
}

/// `δₙ` on `index`: one on the total diagonal, zero elsewhere.
pub fn kronecker(order: usize, index: &IndexSet, semiring: Semiring) -> Result<Array, ArrayError> {
    if order == 0 {
        return Err(ArrayError::ZeroOrder);
    }
    Array::from_fn(vec![index.clone(); order], semiring, |j| {
        Ok(if j.iter().all(|&x| x == j[0]) {
            semiring.one()
        } else {
            semiring.zero()
        })
    })
}

/// Where each array's shared axis sits, and the layout of an incidence result.
struct Incidence {
    /// result axes
    axes: Vec<IndexSet>,
    /// for each array, for each of its axes: the result position (the
    /// shared axis maps to `shared_pos`)
    maps: Vec<Vec<usize>>,
    shared_pos: usize,
}

/// Result layout: the first array's axes (shared axis in place), then the
/// remaining axes of each further array in order.
fn incidence_layout(arrays: &[&Array], shared: &[usize]) -> Result<Incidence, ArrayError> {
    if arrays.is_empty() {
        return Err(ArrayError::NoArrays);
    }
    if shared.len() != arrays.len() {
        return Err(ArrayError::SizeMismatch {
            expected: arrays.len(),
            found: shared.len(),
        });
    }
    let s = arrays[0].semiring;
    for (a, &axis) in arrays.iter().zip(shared) {
        if a.semiring != s {
            return Err(ArrayError::SemiringMismatch(s, a.semiring));
        }
        a.check_axis(axis)?;
    }
    let set = &arrays[0].axes[shared[0]];
    for (a, &axis) in arrays.iter().zip(shared) {
        if &a.axes[axis] != set {
            return Err(ArrayError::IncompatibleSharedAxes(format!("{} vs {}", set, a.axes[axis])));
        }
    }
    let shared_pos = shared[0];
    let mut axes = arrays[0].axes.clone();
    let mut maps = vec![(0..arrays[0].order()).collect::<Vec<_>>()];
    for (a, &axis) in arrays.iter().zip(shared).skip(1) {
        let mut map = Vec::with_capacity(a.order());
        for (k, set) in a.axes.iter().enumerate() {
            if k == axis {
                map.push(shared_pos);
            } else {
                map.push(axes.len());
                axes.push(set.clone());
            }
        }
        maps.push(map);
    }
    Ok(Incidence { axes, maps, shared_pos })
}

fn incidence(arrays: &[&Array], shared: &[usize], additive: bool) -> Result<Array, ArrayError> {
    let layout = incidence_layout(arrays, shared)?;
    let s = arrays[0].semiring;
    let expected = arrays.iter().map(|a| a.order()).sum::<usize>() + 1 - arrays.len();
    debug_assert_eq!(layout.axes.len(), expected);
    let mut src: Vec<Vec<usize>> = arrays.iter().map(|a| vec![0; a.order()]).collect();
    Array::from_fn(layout.axes.clone(), s, |j| {
        let mut acc = if additive { s.zero() } else { s.one() };
        for ((a, map), idx) in arrays.iter().zip(&layout.maps).zip(src.iter_mut()) {
            for (k, &pos) in map.iter().enumerate() {
                idx[k] = j[pos];
            }
            let v = a.get(idx)?;
            acc = if additive { s.add(&acc, &v)? } else { s.mul(&acc, &v)? };
        }
        Ok(acc)
    })
}

/// Entries `a₁(…l…) + a₂(…l…) + …` with the shared index `l` kept once.
pub fn additive_incidence(arrays: &[&Array], shared: &[usize]) -> Result<Array, ArrayError> {
    incidence(arrays, shared, true)
}

/// Entries `a₁(…l…) · a₂(…l…) · …` with the shared index `l` kept once.
pub fn multiplicative_incidence(arrays: &[&Array], shared: &[usize]) -> Result<Array, ArrayError> {
    incidence(arrays, shared, false)
}

/// N-ary contraction over one shared index: `Σ_p a₁(…p…) · a₂(…p…) · …`.
/// The result keeps the incidence layout with the shared axis removed.
pub fn contract(arrays: &[&Array], shared: &[usize]) -> Result<Array, ArrayError> {
    let layout = incidence_layout(arrays, shared)?;
    let s = arrays[0].semiring;
    let shared_size = layout.axes[layout.shared_pos].size();
    let mut axes = layout.axes.clone();
    axes.remove(layout.shared_pos);
    // result position -> incidence position
    let lift = |pos: usize| if pos >= layout.shared_pos { pos + 1 } else { pos };
    let mut full = vec![0; layout.axes.len()];
    let mut src: Vec<Vec<usize>> = arrays.iter().map(|a| vec![0; a.order()]).collect();
    Array::from_fn(axes, s, |j| {
        for (pos, &v) in j.iter().enumerate() {
            full[lift(pos)] = v;
        }
        let mut acc = s.zero();
        for p in 0..shared_size {
            full[layout.shared_pos] = p;
            let mut term = s.one();
            for ((a, map), idx) in arrays.iter().zip(&layout.maps).zip(src.iter_mut()) {
                for (k, &pos) in map.iter().enumerate() {
                    idx[k] = full[pos];
                }
                term = s.mul(&term, &a.get(idx)?)?;
            }
            acc = s.add(&acc, &term)?;
        }
        Ok(acc)
    })
}

/// Parallel multiplication: concatenated constellation, entries multiply.
pub fn tensor_product(arrays: &[&Array]) -> Result<Array, ArrayError> {
    let first = arrays.first().ok_or(ArrayError::NoArrays)?;
    let s = first.semiring;
    for a in arrays {
        if a.semiring != s {
            return Err(ArrayError::SemiringMismatch(s, a.semiring));
        }
    }
    let axes: Vec<IndexSet> = arrays.iter().flat_map(|a| a.axes.iter().cloned()).collect();
    Array::from_fn(axes, s, |j| {
        let mut acc = s.one();
        let mut start = 0;
        for a in arrays {
            acc = s.mul(&acc, &a.get(&j[start..start + a.order()])?)?;
            start += a.order();
        }
        Ok(acc)
    })
}

/// JSON shape: `{"axes": ["I","J"], "entries": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrayJson {
    pub axes: Vec<String>,
    pub entries: Vec<serde_json::Value>,
}

impl Array {
    pub fn to_json(&self) -> ArrayJson {
        ArrayJson {
            axes: self.axes.iter().map(|a| a.name().to_string()).collect(),
            entries: self.entries.iter().map(|v| self.semiring.value_to_json(v)).collect(),
        }
    }

    pub fn from_json(
        json: &ArrayJson,
        index_sets: &HashMap<String, IndexSet>,
        semiring: Semiring,
    ) -> Result<Self, ArrayError> {
        let axes = json
            .axes
            .iter()
            .map(|name| index_sets.get(name).cloned().ok_or_else(|| ArrayError::UnknownIndexSet(name.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let expected: usize = axes.iter().map(IndexSet::size).product();
        if json.entries.len() != expected {
            return Err(ArrayError::SizeMismatch {
                expected,
                found: json.entries.len(),
            });
        }
        let entries = json
            .entries
            .iter()
            .map(|v| semiring.value_from_json(v))
            .collect::<Result<Vec<_>, _>>()?;
        Array::new(axes, entries, semiring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(name: &str, n: usize) -> IndexSet {
        IndexSet::new(name, n).unwrap()
    }

    fn nat(axes: Vec<IndexSet>, entries: &[u64]) -> Array {
        Array::from_ints(axes, entries, Semiring::Nat64).unwrap()
    }

    fn boolean(axes: Vec<IndexSet>, entries: &[u64]) -> Array {
        Array::from_ints(axes, entries, Semiring::Boolean).unwrap()
    }

    fn ints(a: &Array) -> Vec<u64> {
        a.entries()
            .iter()
            .map(|v| match v {
                Value::Int(n) => *n,
                other => panic!("not an int: {other}"),
            })
            .collect()
    }

    /// (2,2,2) nat64 array with entries 0..7.
    fn counting_cube() -> Array {
        nat(vec![set("I", 2), set("J", 2), set("K", 2)], &[0, 1, 2, 3, 4, 5, 6, 7])
    }

    #[test]
    fn make_array_row_major() {
        let r = boolean(vec![set("I", 2), set("J", 2)], &[1, 1, 0, 0]);
        let related: Vec<(usize, usize)> = MultiIndices::new(&r.shape())
            .filter(|idx| r.get(idx).unwrap() == Value::Int(1))
            .map(|idx| (idx[0], idx[1]))
            .collect();
        assert_eq!(related, vec![(0, 0), (0, 1)]);

        let scalar = nat(vec![], &[7]);
        assert_eq!(scalar.order(), 0);
        assert_eq!(scalar.as_scalar(), Some(Value::Int(7)));

        let err = Array::from_ints(vec![set("I", 3)], &[1, 2], Semiring::Nat64).unwrap_err();
        assert_eq!(err, ArrayError::SizeMismatch { expected: 3, found: 2 });
        assert!(Array::from_ints(vec![set("I", 2)], &[0, 2], Semiring::Boolean).is_err());
        assert!(IndexSet::new("E", 0).is_err());
    }

    #[test]
    fn reorder_transpose_and_identity() {
        let m = nat(vec![set("I", 2), set("J", 3)], &[1, 2, 3, 4, 5, 6]);
        let t = m.reorder(&[1, 0]).unwrap();
        assert_eq!(t.axes(), &[set("J", 3), set("I", 2)]);
        for idx in MultiIndices::new(&m.shape()) {
            assert_eq!(t.get(&[idx[1], idx[0]]).unwrap(), m.get(&idx).unwrap());
        }
        assert_eq!(m.reorder(&[0, 1]).unwrap(), m);
        assert!(matches!(m.reorder(&[0, 0]), Err(ArrayError::NotAPermutation(_))));
    }

    #[test]
    fn reorder_cube_brute_force() {
        // result axes (K, I, J): result[k][i][j] = a[i][j][k] = 4i + 2j + k
        let r = counting_cube().reorder(&[2, 0, 1]).unwrap();
        assert_eq!(ints(&r), vec![0, 2, 4, 6, 1, 3, 5, 7]);
    }

    #[test]
    fn flatten_groups_and_bijection() {
        let a = Array::from_fn(vec![set("I", 2), set("J", 2), set("K", 3)], Semiring::Nat64, |j| {
            Ok(Value::Int((j[0] * 100 + j[1] * 10 + j[2]) as u64))
        })
        .unwrap();
        let f = a.flatten(&[1, 2]).unwrap();
        assert_eq!(f.shape(), vec![2, 6]);
        assert_eq!(f.axes()[1].name(), "J*K");
        // exhaustive bijection check
        for idx in MultiIndices::new(&a.shape()) {
            let composite = idx[1] * 3 + idx[2];
            assert_eq!(f.get(&[idx[0], composite]).unwrap(), a.get(&idx).unwrap());
        }
        assert_eq!(f.get(&[1, 2]).unwrap(), a.get(&[1, 0, 2]).unwrap());
        assert_eq!(a.flatten(&[1]).unwrap().shape(), a.shape());
        assert_eq!(a.flatten(&[1]).unwrap().entries(), a.entries());
        assert!(a.flatten(&[1, 1]).is_err());
        assert!(a.flatten(&[3]).is_err());
    }

    #[test]
    fn flatten_non_adjacent_group() {
        let a = counting_cube();
        // group (K, I) placed at position 0; composite = k*2 + i; remaining J
        let f = a.flatten(&[2, 0]).unwrap();
        assert_eq!(f.axes()[0].name(), "K*I");
        for idx in MultiIndices::new(&a.shape()) {
            assert_eq!(f.get(&[idx[2] * 2 + idx[0], idx[1]]).unwrap(), a.get(&idx).unwrap());
        }
    }

    #[test]
    fn broaden_and_slice_back() {
        let v = nat(vec![set("I", 2)], &[4, 9]);
        let b = v.broaden(set("J", 3), 1).unwrap();
        assert_eq!(ints(&b), vec![4, 4, 4, 9, 9, 9]);
        for j in 0..3 {
            let back = b.slice(&BTreeMap::from([(1, j)])).unwrap();
            assert_eq!(back, v);
        }
        assert!(v.broaden(set("J", 3), 2).is_err());
    }

    #[test]
    fn broaden_then_contract_boolean_relation() {
        let r = boolean(vec![set("I", 2), set("J", 2)], &[1, 0, 1, 1]);
        let b = r.broaden(set("K", 3), 2).unwrap();
        assert_eq!(b.unary_contract(2).unwrap(), r);
    }

    #[test]
    fn slices() {
        let m = nat(vec![set("I", 2), set("J", 3)], &[1, 2, 3, 4, 5, 6]);
        let row = m.slice(&BTreeMap::from([(0, 1)])).unwrap();
        assert_eq!(ints(&row), vec![4, 5, 6]);
        let entry = m.slice(&BTreeMap::from([(0, 1), (1, 2)])).unwrap();
        assert_eq!(entry.as_scalar(), Some(Value::Int(6)));
        let cube = counting_cube().slice(&BTreeMap::from([(1, 1)])).unwrap();
        assert_eq!(ints(&cube), vec![2, 3, 6, 7]);
        assert!(matches!(
            m.slice(&BTreeMap::from([(1, 3)])),
            Err(ArrayError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn entrywise_neutral_elements() {
        let axes = vec![set("I", 2), set("J", 2)];
        let a = nat(axes.clone(), &[3, 0, 2, 5]);
        assert_eq!(a.entrywise_add(&zero_array(axes.clone(), Semiring::Nat64)).unwrap(), a);
        assert_eq!(a.entrywise_mul(&full_array(axes.clone(), Semiring::Nat64)).unwrap(), a);
        let x = boolean(vec![set("I", 2)], &[1, 0]);
        let y = boolean(vec![set("I", 2)], &[0, 0]);
        assert_eq!(ints(&x.entrywise_add(&y).unwrap()), vec![1, 0]);
        let other = nat(vec![set("J", 2), set("I", 2)], &[0, 0, 0, 0]);
        assert!(matches!(a.entrywise_add(&other), Err(ArrayError::ConstellationMismatch { .. })));
    }

    #[test]
    fn incidence_of_two_relations() {
        let (x, y, z) = (set("X", 2), set("Y", 2), set("Z", 2));
        let a = boolean(vec![x.clone(), y.clone()], &[1, 1, 0, 0]);
        let b = boolean(vec![y.clone(), z.clone()], &[0, 1, 1, 0]);
        let inc = multiplicative_incidence(&[&a, &b], &[1, 0]).unwrap();
        assert_eq!(inc.order(), 3);
        assert_eq!(inc.axes(), &[x, y, z]);
        // brute force over (x, y, z)
        for idx in MultiIndices::new(&[2, 2, 2]) {
            let want = a.get(&idx[0..2]).unwrap() == Value::Int(1) && b.get(&idx[1..3]).unwrap() == Value::Int(1);
            assert_eq!(inc.get(&idx).unwrap(), Value::Int(want as u64));
        }
        let add = additive_incidence(&[&a, &b], &[1, 0]).unwrap();
        assert_eq!(add.order(), 3);
        // unary incidence is the identity
        assert_eq!(multiplicative_incidence(&[&a], &[0]).unwrap(), a);
    }

    #[test]
    fn incompatible_shared_axes() {
        let a = nat(vec![set("I", 2)], &[1, 2]);
        let b = nat(vec![set("J", 2)], &[1, 2]);
        assert!(matches!(contract(&[&a, &b], &[0, 0]), Err(ArrayError::IncompatibleSharedAxes(_))));
    }

    #[test]
    fn contraction_is_relation_composition() {
        let (x, y, z) = (set("X", 2), set("Y", 2), set("Z", 2));
        let a = boolean(vec![x, y.clone()], &[1, 1, 0, 0]);
        let b = boolean(vec![y, z], &[0, 1, 1, 0]);
        let c = contract(&[&a, &b], &[1, 0]).unwrap();
        assert_eq!(ints(&c), vec![1, 1, 0, 0]);
    }

    #[test]
    fn ternary_dot_product() {
        let i = set("I", 3);
        let v = nat(vec![i.clone()], &[1, 2, 3]);
        let w = nat(vec![i.clone()], &[4, 5, 6]);
        let u = nat(vec![i], &[7, 8, 9]);
        let dot = contract(&[&v, &w, &u], &[0, 0, 0]).unwrap();
        assert_eq!(dot.as_scalar(), Some(Value::Int(28 + 80 + 162)));
    }

    #[test]
    fn unary_contractions() {
        let r = boolean(vec![set("I", 2), set("J", 2)], &[1, 1, 0, 0]);
        assert_eq!(ints(&r.unary_contract(1).unwrap()), vec![1, 0]);
        let m = nat(vec![set("I", 2), set("J", 2)], &[1, 2, 3, 4]);
        assert_eq!(ints(&m.unary_contract(0).unwrap()), vec![4, 6]);
    }

    #[test]
    fn traces() {
        let i = set("I", 3);
        let d = kronecker(2, &i, Semiring::Nat64).unwrap();
        assert_eq!(d.self_contract(0, 1).unwrap().as_scalar(), Some(Value::Int(3)));
        let m = nat(vec![set("I", 2), set("I", 2)], &[1, 2, 3, 4]);
        assert_eq!(m.self_contract(0, 1).unwrap().as_scalar(), Some(Value::Int(5)));
        let bad = nat(vec![set("I", 2), set("J", 2)], &[1, 2, 3, 4]);
        assert!(bad.self_contract(0, 1).is_err());
    }

    #[test]
    fn self_contraction_via_kronecker() {
        let i = set("I", 3);
        let a = Array::from_fn(vec![set("J", 2), i.clone(), i.clone()], Semiring::Nat64, |j| {
            Ok(Value::Int((j[0] * 9 + j[1] * 3 + j[2] + 1) as u64))
        })
        .unwrap();
        let d = kronecker(2, &i, Semiring::Nat64).unwrap();
        // Σ_p Σ_q δ(p,q) a(j,p,q): contract q first, then self-contract p
        let step = contract(&[&a, &d], &[2, 1]).unwrap(); // axes (J, I_p, I_from_delta)
        let via_delta = step.self_contract(1, 2).unwrap();
        assert_eq!(via_delta, a.self_contract(1, 2).unwrap());
    }

    #[test]
    fn tensor_products() {
        let v = nat(vec![set("I", 2)], &[1, 2]);
        let m = nat(vec![set("J", 2), set("K", 2)], &[1, 2, 3, 4]);
        let a = nat(vec![set("L", 2), set("N", 2), set("M", 2)], &[1; 8]);
        assert_eq!(tensor_product(&[&v, &m, &a]).unwrap().order(), 6);
        let one = Array::scalar(Value::Int(1), Semiring::Nat64).unwrap();
        assert_eq!(tensor_product(&[&one, &m]).unwrap(), m);
        let two = nat(vec![], &[2]);
        let w = nat(vec![set("I", 2)], &[3, 4]);
        assert_eq!(ints(&tensor_product(&[&two, &w]).unwrap()), vec![6, 8]);
        let b = Array::from_ints(vec![], &[1], Semiring::Boolean).unwrap();
        assert!(matches!(tensor_product(&[&two, &b]), Err(ArrayError::SemiringMismatch(..))));
    }

    #[test]
    fn kronecker_identities() {
        let i = set("I", 3);
        let s = Semiring::Nat64;
        let d2 = kronecker(2, &i, s).unwrap();
        assert_eq!(ints(&d2), vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let d3 = kronecker(3, &i, s).unwrap();
        assert_eq!(multiplicative_incidence(&[&d2, &d2], &[1, 0]).unwrap(), d3);
        assert_eq!(contract(&[&d3, &d3], &[2, 0]).unwrap(), kronecker(4, &i, s).unwrap());
        assert_eq!(kronecker(0, &i, s), Err(ArrayError::ZeroOrder));
    }

    #[test]
    fn diagonal_extensions() {
        let i = set("I", 2);
        let v = nat(vec![i.clone()], &[2, 5]);
        let m = v.diagonal_extension(0, 1).unwrap();
        assert_eq!(ints(&m), vec![2, 0, 0, 5]);
        assert_eq!(m.unary_contract(1).unwrap(), v);
        assert_eq!(m.unary_contract(0).unwrap(), v);
        // m(i,j) = v(i)·δ₂(i,j) as an incidence
        let d2 = kronecker(2, &i, Semiring::Nat64).unwrap();
        assert_eq!(multiplicative_incidence(&[&v, &d2], &[0, 0]).unwrap(), m);
        let cube = v.diagonal_extension(0, 2).unwrap();
        assert_eq!(cube.order(), 3);
        assert_eq!(cube.unary_contract(2).unwrap().unary_contract(1).unwrap(), v);
    }

    #[test]
    fn json_round_trip() {
        let sets = HashMap::from([("I".to_string(), set("I", 2))]);
        let a = Array::new(vec![set("I", 2)], vec![Value::Int(3), Value::Inf], Semiring::MinPlus).unwrap();
        let json = a.to_json();
        assert_eq!(serde_json::to_string(&json).unwrap(), r#"{"axes":["I"],"entries":[3,"inf"]}"#);
        assert_eq!(Array::from_json(&json, &sets, Semiring::MinPlus).unwrap(), a);
        let bad = ArrayJson {
            axes: vec!["Q".into()],
            entries: vec![],
        };
        assert_eq!(
            Array::from_json(&bad, &sets, Semiring::MinPlus),
            Err(ArrayError::UnknownIndexSet("Q".into()))
        );
    }
}
