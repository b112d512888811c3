//! The fish product of 3-arrays and its laws.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::TernaryError;
use crate::array::{contract, kronecker, Array, IndexSet, MultiIndices};
use crate::diagram::{fish_diagram, Diagram, Edge, Vertex};
use crate::evaluator::{evaluate, Binding};
use crate::semiring::{Semiring, Value};

/// One of the six fish products on a constellation `(I, J, K)`.
///
/// `axes = [x, y, z]` are axis positions: `x`, `y` carry the tips and `z`
/// the mouth. Even permutations of `IJK` read the arguments tail to head,
/// odd ones head to tail. `twist` swaps the two body legs that meet the
/// head; it needs the tip index sets to coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FishVariant {
    pub axes: [usize; 3],
    pub twist: bool,
}

impl FishVariant {
    pub const IJK: FishVariant = FishVariant::new([0, 1, 2]);
    pub const JIK: FishVariant = FishVariant::new([1, 0, 2]);
    pub const KIJ: FishVariant = FishVariant::new([2, 0, 1]);
    pub const IKJ: FishVariant = FishVariant::new([0, 2, 1]);
    pub const JKI: FishVariant = FishVariant::new([1, 2, 0]);
    pub const KJI: FishVariant = FishVariant::new([2, 1, 0]);
    pub const ALL: [FishVariant; 6] = [Self::IJK, Self::JIK, Self::KIJ, Self::IKJ, Self::JKI, Self::KJI];

    pub const fn new(axes: [usize; 3]) -> Self {
        Self { axes, twist: false }
    }

    pub fn twisted(self) -> Self {
        Self { twist: true, ..self }
    }

    pub fn is_even(&self) -> bool {
        matches!(self.axes, [0, 1, 2] | [1, 2, 0] | [2, 0, 1])
    }

    /// The variant with the tips swapped: its arguments read the other way.
    pub fn reversed(&self) -> Self {
        let [x, y, z] = self.axes;
        Self {
            axes: [y, x, z],
            twist: self.twist,
        }
    }

    pub fn name(&self) -> String {
        let letters: String = self.axes.iter().map(|&a| ['I', 'J', 'K'][a]).collect();
        if self.twist {
            format!("{letters}'")
        } else {
            letters
        }
    }
}

impl fmt::Display for FishVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for FishVariant {
    type Err = TernaryError;

    /// `IJK`, `eta_JKI`, `KIJ'` (trailing quote = twisted).
    fn from_str(s: &str) -> Result<Self, TernaryError> {
        let bad = || TernaryError::UnknownVariant(s.to_string());
        let t = s.trim();
        let t = t.strip_prefix("eta_").unwrap_or(t);
        let (t, twist) = match t.strip_suffix('\'') {
            Some(rest) => (rest, true),
            None => (t, false),
        };
        let mut axes = [0; 3];
        let chars: Vec<char> = t.to_ascii_uppercase().chars().collect();
        if chars.len() != 3 {
            return Err(bad());
        }
        for (slot, c) in axes.iter_mut().zip(&chars) {
            *slot = match c {
                'I' => 0,
                'J' => 1,
                'K' => 2,
                _ => return Err(bad()),
            };
        }
        let mut sorted = axes;
        sorted.sort_unstable();
        if sorted != [0, 1, 2] {
            return Err(bad());
        }
        Ok(Self { axes, twist })
    }
}

fn check_order3(arrays: &[&Array]) -> Result<(), TernaryError> {
    for a in arrays {
        if a.order() != 3 {
            return Err(TernaryError::NotOrderThree(a.order()));
        }
    }
    Ok(())
}

/// The fish diagram, binding and output order realising `variant` on
/// `(a, b, c)`.
pub fn fish_setup(a: &Array, b: &Array, c: &Array, v: FishVariant) -> Result<(Diagram, Binding, Vec<usize>), TernaryError> {
    check_order3(&[a, b, c])?;
    let (tail, head) = if v.is_even() { (a, c) } else { (c, a) };
    let [x, y, z] = v.axes;
    let sets = tail.axes();
    let d = fish_diagram(&sets[x], &sets[y], &sets[z])?;
    let place = |xv: usize, yv: usize, zv: usize| {
        let mut axes = vec![0; 3];
        axes[x] = xv;
        axes[y] = yv;
        axes[z] = zv;
        axes
    };
    let mut binding = Binding::new();
    binding.bind("a", tail.clone(), place(0, 1, 2));
    let body = if v.twist { place(4, 3, 2) } else { place(3, 4, 2) };
    binding.bind("b", b.clone(), body);
    binding.bind("c", head.clone(), place(3, 4, 5));
    Ok((d, binding, place(0, 1, 5)))
}

/// The fish product, evaluated through the general diagram evaluator.
pub fn fish(a: &Array, b: &Array, c: &Array, v: FishVariant) -> Result<Array, TernaryError> {
    let (d, binding, order) = fish_setup(a, b, c, v)?;
    Ok(evaluate(&d, &binding, Some(&order))?)
}

/// Outcome of an array law check.
#[derive(Debug, Clone, PartialEq)]
pub enum ArrayLawVerdict {
    Pass { checked: usize },
    Fail(ArrayCounterexample),
}

impl ArrayLawVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ArrayLawVerdict::Pass { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArrayCounterexample {
    pub law: String,
    pub inputs: Vec<Array>,
    pub left: Array,
    pub right: Array,
}

type TernaryOp<'a> = dyn Fn(&Array, &Array, &Array) -> Result<Array, TernaryError> + 'a;

/// Check `((abc)de) = (a(dcb)e) = (ab(cde))` for `trials` quintuples from
/// `draw`.
pub fn semiheap_law_with(op: &TernaryOp<'_>, trials: usize, draw: &mut dyn FnMut() -> Array) -> Result<ArrayLawVerdict, TernaryError> {
    for _ in 0..trials {
        let q: Vec<Array> = (0..5).map(|_| draw()).collect();
        let (a, b, c, d, e) = (&q[0], &q[1], &q[2], &q[3], &q[4]);
        let left = op(&op(a, b, c)?, d, e)?;
        let middle = op(a, &op(d, c, b)?, e)?;
        let right = op(a, b, &op(c, d, e)?)?;
        for (law, other) in [("((abc)de) = (a(dcb)e)", &middle), ("((abc)de) = (ab(cde))", &right)] {
            if &left != other {
                return Ok(ArrayLawVerdict::Fail(ArrayCounterexample {
                    law: law.to_string(),
                    inputs: q.clone(),
                    left,
                    right: other.clone(),
                }));
            }
        }
    }
    Ok(ArrayLawVerdict::Pass { checked: trials })
}

/// The semiheap law for a fish variant on random arrays of the given sizes.
pub fn semiheap_law_arrays<R: Rng + ?Sized>(
    v: FishVariant,
    semiring: Semiring,
    sizes: [usize; 3],
    trials: usize,
    entry_bound: u64,
    rng: &mut R,
) -> Result<ArrayLawVerdict, TernaryError> {
    if !semiring.is_exact() {
        return Err(TernaryError::InexactSemiring(semiring));
    }
    let axes = constellation(sizes)?;
    let op = move |a: &Array, b: &Array, c: &Array| fish(a, b, c, v);
    semiheap_law_with(&op, trials, &mut || Array::random(axes.clone(), semiring, entry_bound, rng))
}

/// `(I, J, K)` with the given sizes; equal sizes share one index set so
/// regular arrays stay conformable under twists.
pub fn constellation(sizes: [usize; 3]) -> Result<Vec<IndexSet>, TernaryError> {
    if sizes.iter().all(|&s| s == sizes[0]) {
        let n = IndexSet::new("N", sizes[0])?;
        return Ok(vec![n; 3]);
    }
    Ok(vec![IndexSet::new("I", sizes[0])?, IndexSet::new("J", sizes[1])?, IndexSet::new("K", sizes[2])?])
}

/// A "fish" whose body is attached by the wrong legs:
/// `Σ a_ijp · b_pqr · c_qrk`. It is not a semiheap operation.
pub fn corrupted_fish(a: &Array, b: &Array, c: &Array) -> Result<Array, TernaryError> {
    check_order3(&[a, b, c])?;
    let n = regular_set(a)?;
    for x in [b, c] {
        if regular_set(x)? != n {
            return Err(TernaryError::NotRegular);
        }
    }
    let vertices: Vec<Vertex> = ["i", "j", "p", "q", "r", "k"]
        .iter()
        .enumerate()
        .map(|(k, id)| Vertex::new(*id, n.clone(), (2..5).contains(&k)))
        .collect();
    let d = Diagram::new(vertices, vec![Edge::new("a", vec![0, 1, 2]), Edge::new("b", vec![2, 3, 4]), Edge::new("c", vec![3, 4, 5])])?;
    let mut binding = Binding::new();
    binding.bind("a", a.clone(), vec![0, 1, 2]);
    binding.bind("b", b.clone(), vec![2, 3, 4]);
    binding.bind("c", c.clone(), vec![3, 4, 5]);
    Ok(evaluate(&d, &binding, Some(&[0, 1, 5]))?)
}

/// Search random boolean regular arrays for a violation of the semiheap
/// law by [`corrupted_fish`].
pub fn corrupted_fish_counterexample<R: Rng + ?Sized>(n: usize, attempts: usize, rng: &mut R) -> Result<Option<ArrayCounterexample>, TernaryError> {
    let axes = constellation([n; 3])?;
    let op = |a: &Array, b: &Array, c: &Array| corrupted_fish(a, b, c);
    match semiheap_law_with(&op, attempts, &mut || Array::random(axes.clone(), Semiring::Boolean, 1, rng))? {
        ArrayLawVerdict::Fail(c) => Ok(Some(c)),
        ArrayLawVerdict::Pass { .. } => Ok(None),
    }
}

fn regular_set(a: &Array) -> Result<IndexSet, TernaryError> {
    let first = a.axes().first().ok_or(TernaryError::NotRegular)?;
    if a.axes().iter().any(|x| x != first) {
        return Err(TernaryError::NotRegular);
    }
    Ok(first.clone())
}

/// `t = δ₃` on `n`.
pub fn tridentity(n: &IndexSet, s: Semiring) -> Result<Array, TernaryError> {
    Ok(kronecker(3, n, s)?)
}

/// `u(x, y, z) = δ(y, z)`: the identity 2-array broadened at the front.
pub fn partial_identity(n: &IndexSet, s: Semiring) -> Result<Array, TernaryError> {
    Ok(kronecker(2, n, s)?.broaden(n.clone(), 0)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitsVerdict {
    /// (a t t) = a
    pub att: bool,
    /// (a u t) = a
    pub aut: bool,
    /// (a t u) = a
    pub atu: bool,
    /// (t t a) = a, which δ₃ does not satisfy in general
    pub tta: bool,
}

impl UnitsVerdict {
    pub fn passed(&self) -> bool {
        self.att && self.aut && self.atu
    }
}

/// The unit equations for a regular 3-array under `η_IJK`.
pub fn fish_units_check(a: &Array) -> Result<UnitsVerdict, TernaryError> {
    check_order3(&[a])?;
    let n = regular_set(a)?;
    let s = a.semiring();
    let t = tridentity(&n, s)?;
    let u = partial_identity(&n, s)?;
    let v = FishVariant::IJK;
    Ok(UnitsVerdict {
        att: &fish(a, &t, &t, v)? == a,
        aut: &fish(a, &u, &t, v)? == a,
        atu: &fish(a, &t, &u, v)? == a,
        tta: &fish(&t, &t, a, v)? == a,
    })
}

/// The array as a matrix with rows indexed by the tip pair and columns by
/// the mouth of `v`.
pub fn role_matrix(a: &Array, v: FishVariant) -> Result<Array, TernaryError> {
    Ok(a.reorder(&v.axes)?.flatten(&[0, 1])?)
}

fn transpose(m: &Array) -> Result<Array, TernaryError> {
    Ok(m.reorder(&[1, 0])?)
}

fn matmul(x: &Array, y: &Array) -> Result<Array, TernaryError> {
    Ok(contract(&[x, y], &[1, 0])?)
}

/// Flattened fish: `A ∘ Bᵀ ∘ C` in role coordinates for even variants,
/// `C ∘ Bᵀ ∘ A` for odd ones.
pub fn flat_fish(a: &Array, b: &Array, c: &Array, v: FishVariant) -> Result<Array, TernaryError> {
    if v.twist {
        return Err(TernaryError::TwistedFlattening);
    }
    let (first, last) = if v.is_even() { (a, c) } else { (c, a) };
    let left = matmul(&role_matrix(first, v)?, &transpose(&role_matrix(b, v)?)?)?;
    matmul(&left, &role_matrix(last, v)?)
}

/// Whether the flattened fish product equals the chain of matrix products.
pub fn flat_fish_equiv(a: &Array, b: &Array, c: &Array, v: FishVariant) -> Result<bool, TernaryError> {
    Ok(role_matrix(&fish(a, b, c, v)?, v)? == flat_fish(a, b, c, v)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiunitVerdict {
    /// the equation over the tip pair: Σ_z f[xy, z] · g[x'y', z] = δ δ
    pub tips: bool,
    /// the equation over the mouth: Σ_xy f[xy, z] · g[xy, z'] = δ
    pub mouth: bool,
}

impl BiunitVerdict {
    pub fn passed(&self) -> bool {
        self.tips && self.mouth
    }
}

/// The quadratic biunit-pair equations for `(e, e')` under `v`, in role
/// coordinates. For even variants `(f, g) = (e, e')`, for odd ones the pair
/// is swapped.
pub fn biunit_pair_check(e: &Array, e2: &Array, v: FishVariant) -> Result<BiunitVerdict, TernaryError> {
    check_order3(&[e, e2])?;
    let (f, g) = if v.is_even() { (e, e2) } else { (e2, e) };
    let fm = role_matrix(f, v)?;
    let gm = role_matrix(g, v)?;
    let s = e.semiring();
    let tips = matmul(&fm, &transpose(&gm)?)? == kronecker(2, &fm.axes()[0], s)?;
    let mouth = matmul(&transpose(&fm)?, &gm)? == kronecker(2, &fm.axes()[1], s)?;
    Ok(BiunitVerdict { tips, mouth })
}

/// Arrays with a single one, every other entry zero, on the given axes.
pub fn basis_arrays(axes: &[IndexSet], s: Semiring) -> Vec<Array> {
    let shape: Vec<usize> = axes.iter().map(IndexSet::size).collect();
    let n: usize = shape.iter().product();
    (0..n)
        .map(|hot| {
            let entries = (0..n).map(|k| if k == hot { s.one() } else { s.zero() }).collect();
            Array::new(axes.to_vec(), entries, s).expect("basis entries are valid")
        })
        .collect()
}

/// `(a e e') = a = (e e' a)` for every basis array `a`; the fish product is
/// additive in each argument, so this covers all arrays.
pub fn biunit_pair_by_fish(e: &Array, e2: &Array, v: FishVariant) -> Result<bool, TernaryError> {
    for a in basis_arrays(e.axes(), e.semiring()) {
        if fish(&a, e, e2, v)? != a || fish(e, e2, &a, v)? != a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All boolean biunit pairs on `axes` for `v`. For each candidate `f` the
/// partner `g` is solved column by column from the mouth equation; the tip
/// equation is then checked.
pub fn biunit_pair_search(axes: &[IndexSet], v: FishVariant) -> Result<Vec<(Array, Array)>, TernaryError> {
    if axes.len() != 3 {
        return Err(TernaryError::NotOrderThree(axes.len()));
    }
    if v.twist {
        return Err(TernaryError::TwistedFlattening);
    }
    let [x, y, z] = v.axes;
    let rows = axes[x].size() * axes[y].size();
    let cols = axes[z].size();
    if rows * cols > 16 {
        return Err(TernaryError::TooLarge {
            what: "biunit search entries",
            cap: 16,
        });
    }
    let mut found = Vec::new();
    for bits in 0u32..(1 << (rows * cols)) {
        // column masks over rows
        let column: Vec<u32> = (0..cols)
            .map(|c| (0..rows).filter(|&r| bits >> (r * cols + c) & 1 == 1).fold(0, |m, r| m | 1 << r))
            .collect();
        // each partner column g must meet column z exactly when z is its own index
        let options: Vec<Vec<u32>> = (0..cols)
            .map(|target| {
                (0u32..(1 << rows))
                    .filter(|&g| (0..cols).all(|c| ((column[c] & g) != 0) == (c == target)))
                    .collect()
            })
            .collect();
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        for partner in cartesian(&options) {
            // tip equation: rows r, r' of f and g meet in exactly the diagonal
            let row_f: Vec<u32> = (0..rows).map(|r| (0..cols).filter(|&c| column[c] >> r & 1 == 1).fold(0, |m, c| m | 1 << c)).collect();
            let row_g: Vec<u32> = (0..rows).map(|r| (0..cols).filter(|&c| partner[c] >> r & 1 == 1).fold(0, |m, c| m | 1 << c)).collect();
            let ok = (0..rows).all(|r| (0..rows).all(|r2| ((row_f[r] & row_g[r2]) != 0) == (r == r2)));
            if ok {
                let f = from_role_bits(axes, v, rows, cols, |r, c| column[c] >> r & 1 == 1)?;
                let g = from_role_bits(axes, v, rows, cols, |r, c| partner[c] >> r & 1 == 1)?;
                found.push(if v.is_even() { (f, g) } else { (g, f) });
            }
        }
    }
    Ok(found)
}

fn cartesian(options: &[Vec<u32>]) -> Vec<Vec<u32>> {
    options.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&o| {
                    let mut p = prefix.clone();
                    p.push(o);
                    p
                })
            })
            .collect()
    })
}

fn from_role_bits(axes: &[IndexSet], v: FishVariant, _rows: usize, _cols: usize, bit: impl Fn(usize, usize) -> bool) -> Result<Array, TernaryError> {
    let [x, y, z] = v.axes;
    let s = Semiring::Boolean;
    let ysize = axes[y].size();
    Ok(Array::from_fn(axes.to_vec(), s, |idx| {
        Ok(if bit(idx[x] * ysize + idx[y], idx[z]) { s.one() } else { s.zero() })
    })?)
}

/// The four classical sequentializations of the fish product on regular
/// arrays, as direct sums.
pub fn sequentialization(form: usize, a: &Array, b: &Array, c: &Array) -> Result<Array, TernaryError> {
    check_order3(&[a, b, c])?;
    let n = regular_set(a)?;
    for x in [b, c] {
        if regular_set(x)? != n {
            return Err(TernaryError::NotRegular);
        }
    }
    let s = a.semiring();
    let size = n.size();
    Array::from_fn(vec![n; 3], s, |o| {
        let (i, j, k) = (o[0], o[1], o[2]);
        let mut acc = s.zero();
        for idx in MultiIndices::new(&[size; 3]) {
            let (p, q, r) = (idx[0], idx[1], idx[2]);
            let term = match form {
                1 => [a.get(&[q, r, k])?, b.get(&[r, q, p])?, c.get(&[i, j, p])?],
                2 => [a.get(&[q, r, k])?, b.get(&[q, r, p])?, c.get(&[i, j, p])?],
                3 => [a.get(&[i, j, p])?, b.get(&[q, r, p])?, c.get(&[q, r, k])?],
                4 => [a.get(&[i, j, p])?, b.get(&[r, q, p])?, c.get(&[q, r, k])?],
                _ => unreachable!("forms are 1 to 4"),
            };
            let t = s.mul(&s.mul(&term[0], &term[1])?, &term[2])?;
            acc = s.add(&acc, &t)?;
        }
        Ok(acc)
    })
    .map_err(Into::into)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequentializationVerdict {
    /// (1)(a, b, c) = (4)(c, b, a)
    pub one_is_four_reversed: bool,
    /// (2)(a, b, c) = (3)(c, b, a)
    pub two_is_three_reversed: bool,
    /// (3) is the untwisted and (4) the twisted η_IJK
    pub three_four_are_twists: bool,
    /// (1), (2) are the twisted and untwisted η_JIK
    pub one_two_are_reversed_twists: bool,
}

impl SequentializationVerdict {
    pub fn passed(&self) -> bool {
        self.one_is_four_reversed && self.two_is_three_reversed && self.three_four_are_twists && self.one_two_are_reversed_twists
    }
}

pub fn fish_sequentializations_check(a: &Array, b: &Array, c: &Array) -> Result<SequentializationVerdict, TernaryError> {
    let form = |k, x: &Array, y: &Array, z: &Array| sequentialization(k, x, y, z);
    let ijk = FishVariant::IJK;
    let jik = FishVariant::JIK;
    Ok(SequentializationVerdict {
        one_is_four_reversed: form(1, a, b, c)? == form(4, c, b, a)?,
        two_is_three_reversed: form(2, a, b, c)? == form(3, c, b, a)?,
        three_four_are_twists: form(3, a, b, c)? == fish(a, b, c, ijk)? && form(4, a, b, c)? == fish(a, b, c, ijk.twisted())?,
        one_two_are_reversed_twists: form(1, a, b, c)? == fish(a, b, c, jik.twisted())? && form(2, a, b, c)? == fish(a, b, c, jik)?,
    })
}

/// The two twists of the two-edge contraction `Σ_pq a·b` with `a` on
/// `(i, p, q)` or `(i, q, p)` and `b` on `(p, q, k)`.
pub fn two_edge_twists(a: &Array, b: &Array) -> Result<(Array, Array), TernaryError> {
    check_order3(&[a, b])?;
    let n = regular_set(a)?;
    if regular_set(b)? != n {
        return Err(TernaryError::NotRegular);
    }
    let vertices: Vec<Vertex> = ["i", "p", "q", "k"]
        .iter()
        .enumerate()
        .map(|(k, id)| Vertex::new(*id, n.clone(), k == 1 || k == 2))
        .collect();
    let d = Diagram::new(vertices, vec![Edge::new("a", vec![0, 1, 2]), Edge::new("b", vec![1, 2, 3])])?;
    let mut straight = Binding::new();
    straight.bind("a", a.clone(), vec![0, 1, 2]);
    straight.bind("b", b.clone(), vec![1, 2, 3]);
    let mut twisted = straight.clone();
    twisted.bind("a", a.clone(), vec![0, 2, 1]);
    Ok((evaluate(&d, &straight, None)?, evaluate(&d, &twisted, None)?))
}

/// Every boolean array on `n³`, in counting order.
pub fn all_boolean_arrays(n: &IndexSet) -> impl Iterator<Item = Array> + '_ {
    let cells = n.size().pow(3);
    (0u64..(1 << cells)).map(move |bits| {
        let entries = (0..cells).map(|k| Value::Int(bits >> (cells - 1 - k) & 1)).collect();
        Array::new(vec![n.clone(); 3], entries, Semiring::Boolean).expect("boolean entries")
    })
}

/// First pair of boolean 2×2×2 arrays whose two twists differ.
pub fn twist_witness() -> Result<Option<(Array, Array)>, TernaryError> {
    let n = IndexSet::new("N", 2)?;
    for a in all_boolean_arrays(&n) {
        for b in all_boolean_arrays(&n) {
            let (s, t) = two_edge_twists(&a, &b)?;
            if s != t {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Whether the twists agree for every boolean `a` when the other factor is
/// `δ₃`, both for the two-edge contraction and for the fish body.
pub fn twists_agree_on_delta_body() -> Result<bool, TernaryError> {
    let n = IndexSet::new("N", 2)?;
    let t = tridentity(&n, Semiring::Boolean)?;
    let all: Vec<Array> = all_boolean_arrays(&n).collect();
    for a in &all {
        let (s, u) = two_edge_twists(a, &t)?;
        if s != u {
            return Ok(false);
        }
    }
    // fish: the body δ₃ is symmetric, so the head choice cannot matter either
    for (k, a) in all.iter().enumerate() {
        let c = &all[(k * 37 + 11) % all.len()];
        if fish(a, &t, c, FishVariant::IJK)? != fish(a, &t, c, FishVariant::IJK.twisted())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Group arrays by their entries for fast membership tests.
pub(crate) fn entry_key(a: &Array) -> String {
    let parts: Vec<String> = a.entries().iter().map(ToString::to_string).collect();
    format!("{:?}|{}", a.axes(), parts.join(","))
}

pub(crate) fn index_by_entries(carrier: &[Array]) -> BTreeMap<String, usize> {
    carrier.iter().enumerate().map(|(k, a)| (entry_key(a), k)).collect()
}
