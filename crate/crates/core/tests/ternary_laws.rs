use plexus_core::array::{Array, IndexSet};
use plexus_core::ternary::{
    biunit_pair_check, constellation, cyclic_group, fish, flat_fish_equiv, permutations, FishVariant, InvolutedMonoid, TernaryTable,
};
use plexus_core::{Semiring, Value};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int(v: &Value) -> u64 {
    match v {
        Value::Int(x) => *x,
        other => panic!("expected an integer, got {other:?}"),
    }
}

/// Σ_pqr a[i,j,p] b[q,r,p] c[q,r,k] mod m, straight from the entry vectors.
fn fish_by_hand(a: &Array, b: &Array, c: &Array, m: u64) -> Vec<u64> {
    let [ni, nj, nk] = [a.shape()[0], a.shape()[1], a.shape()[2]];
    let at = |x: &Array, i: usize, j: usize, k: usize| int(&x.entries()[(i * nj + j) * nk + k]);
    let mut out = Vec::new();
    for i in 0..ni {
        for j in 0..nj {
            for k in 0..nk {
                let mut acc = 0;
                for p in 0..nk {
                    for q in 0..ni {
                        for r in 0..nj {
                            acc += at(a, i, j, p) * at(b, q, r, p) * at(c, q, r, k);
                        }
                    }
                }
                out.push(if m == 2 { u64::from(acc > 0) } else { acc % m });
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fish_matches_hand_transcription(seed in any::<u64>(), boolean in any::<bool>(), wide in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, m) = if boolean { (Semiring::Boolean, 2) } else { (Semiring::IntMod(5), 5) };
        let axes = constellation(if wide { [2, 3, 2] } else { [2, 2, 2] }).unwrap();
        let [a, b, c] = [0, 1, 2].map(|_| Array::random(axes.clone(), s, 0, &mut rng));
        let got: Vec<u64> = fish(&a, &b, &c, FishVariant::IJK).unwrap().entries().iter().map(int).collect();
        prop_assert_eq!(got, fish_by_hand(&a, &b, &c, m));
    }

    #[test]
    fn reversal_pairs(seed in any::<u64>(), i in 1usize..4, j in 1usize..4, k in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let axes = constellation([i, j, k]).unwrap();
        let [a, b, c] = [0, 1, 2].map(|_| Array::random(axes.clone(), Semiring::IntMod(7), 0, &mut rng));
        for v in [FishVariant::IJK, FishVariant::KIJ, FishVariant::JKI] {
            prop_assert_eq!(fish(&a, &b, &c, v).unwrap(), fish(&c, &b, &a, v.reversed()).unwrap());
        }
    }

    #[test]
    fn flattening_matches_matrix_chain(seed in any::<u64>(), i in 1usize..4, j in 1usize..4, k in 1usize..4, which in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let axes = constellation([i, j, k]).unwrap();
        let [a, b, c] = [0, 1, 2].map(|_| Array::random(axes.clone(), Semiring::Nat64, 3, &mut rng));
        prop_assert!(flat_fish_equiv(&a, &b, &c, FishVariant::ALL[which]).unwrap());
    }

    #[test]
    fn heaps_are_semiheaps(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = TernaryTable::random(n, &mut rng).unwrap();
        prop_assert!(t.check_heap().consistent());
    }
}

fn example_tables() -> Vec<TernaryTable> {
    vec![
        TernaryTable::group_heap(&cyclic_group(2)).unwrap(),
        TernaryTable::group_heap(&cyclic_group(3)).unwrap(),
        TernaryTable::group_heap(&cyclic_group(4)).unwrap(),
        TernaryTable::vector_heap(3, 1).unwrap(),
        TernaryTable::vector_heap(2, 2).unwrap(),
        TernaryTable::bijection_heap(2).unwrap(),
        TernaryTable::bijection_heap(3).unwrap(),
        TernaryTable::relation_semiheap(1, 2).unwrap(),
        TernaryTable::relation_semiheap(2, 2).unwrap(),
    ]
}

#[test]
fn heap_implies_semiheap_on_examples() {
    for t in example_tables() {
        let v = t.check_heap();
        assert!(v.consistent());
        assert!(v.semiheap.passed());
    }
}

#[test]
fn bijection_heaps_are_malcev() {
    for n in 1..=3 {
        let t = TernaryTable::bijection_heap(n).unwrap();
        assert_eq!(t.find_biunits().len(), (1..=n).product::<usize>());
    }
}

/// Monoid and involution axioms, checked without the library's own checker.
fn axioms_hold(m: &InvolutedMonoid) -> bool {
    let n = m.n;
    let mul = |a: usize, b: usize| m.product[a * n + b];
    (0..n).all(|a| {
        mul(m.identity, a) == a
            && mul(a, m.identity) == a
            && m.star[m.star[a]] == a
            && (0..n).all(|b| m.star[mul(a, b)] == mul(m.star[b], m.star[a]) && (0..n).all(|c| mul(mul(a, b), c) == mul(a, mul(b, c))))
    })
}

#[test]
fn involuted_monoids_satisfy_axioms() {
    for t in example_tables() {
        for e in t.find_biunits() {
            assert!(axioms_hold(&t.involuted_monoid(e).unwrap()));
        }
    }
}

/// `e` on `(I, J, K)` as an `I × (J·K)` 0/1 matrix.
fn matrix(e: &Array) -> Vec<Vec<bool>> {
    let s = e.shape();
    let cols = s[1] * s[2];
    (0..s[0]).map(|i| (0..cols).map(|c| int(&e.entries()[i * cols + c]) == 1).collect()).collect()
}

/// `Eᵀ · E' = 1` and `E' · Eᵀ = 1` over the booleans.
fn inverse_pair(e: &Array, e2: &Array) -> bool {
    let (x, y) = (matrix(e), matrix(e2));
    let rows = x.len();
    let cols = x[0].len();
    let left = (0..cols).all(|c| (0..cols).all(|d| (0..rows).any(|i| x[i][c] && y[i][d]) == (c == d)));
    let right = (0..rows).all(|i| (0..rows).all(|k| (0..cols).any(|c| y[i][c] && x[k][c]) == (i == k)));
    left && right
}

#[test]
fn biunit_pairs_are_inverse_matrices() {
    let axes = vec![IndexSet::new("I", 4).unwrap(), IndexSet::new("J", 2).unwrap(), IndexSet::new("K", 2).unwrap()];
    let s = Semiring::Boolean;
    let from_perm = |p: &[usize]| Array::from_fn(axes.clone(), s, |ix| Ok(if p[ix[0]] == ix[1] * 2 + ix[2] { s.one() } else { s.zero() })).unwrap();
    let perms: Vec<Array> = permutations(4).iter().map(|p| from_perm(p)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut candidates = perms.clone();
    for _ in 0..40 {
        let base = &perms[rng.gen_range(0..perms.len())];
        let flip = rng.gen_range(0..16);
        let mut entries = base.entries().to_vec();
        entries[flip] = Value::Int(1 - int(&entries[flip]));
        candidates.push(Array::new(axes.clone(), entries, s).unwrap());
        candidates.push(Array::random(axes.clone(), s, 1, &mut rng));
    }
    let mut passes = 0;
    for e in &candidates {
        for e2 in candidates.iter().take(60) {
            let pass = biunit_pair_check(e, e2, FishVariant::JKI).unwrap().passed();
            assert_eq!(pass, inverse_pair(e, e2));
            passes += usize::from(pass);
        }
    }
    assert!(passes >= 24);
}
