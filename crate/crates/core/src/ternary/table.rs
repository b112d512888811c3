//! Finite ternary operations given by explicit tables.

use std::fmt;

use rand::Rng;

use super::TernaryError;

/// Largest carrier accepted by the table constructors.
pub const TABLE_CAP: usize = 64;

/// A total ternary operation on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryTable {
    n: usize,
    table: Vec<u32>,
    names: Vec<String>,
}

/// Outcome of an exhaustive law check on a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableVerdict {
    Pass { checked: usize },
    Fail { law: String, elements: Vec<usize> },
}

impl TableVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, TableVerdict::Pass { .. })
    }

    fn fail(law: &str, elements: &[usize]) -> Self {
        TableVerdict::Fail {
            law: law.to_string(),
            elements: elements.to_vec(),
        }
    }
}

impl fmt::Display for TableVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableVerdict::Pass { checked } => write!(f, "pass ({checked} cases)"),
            TableVerdict::Fail { law, elements } => write!(f, "fail: {law} at {elements:?}"),
        }
    }
}

fn check_cap(what: &'static str, n: usize) -> Result<(), TernaryError> {
    if n > TABLE_CAP {
        return Err(TernaryError::TooLarge { what, cap: TABLE_CAP });
    }
    Ok(())
}

impl TernaryTable {
    /// `table[(a * n + b) * n + c]` is `(abc)`.
    pub fn custom(n: usize, table: Vec<u32>, names: Option<Vec<String>>) -> Result<Self, TernaryError> {
        check_cap("carrier", n)?;
        if n == 0 {
            return Err(TernaryError::InvalidTable("empty carrier".into()));
        }
        if table.len() != n * n * n {
            return Err(TernaryError::InvalidTable(format!("expected {} entries, found {}", n * n * n, table.len())));
        }
        if let Some(bad) = table.iter().find(|&&x| x as usize >= n) {
            return Err(TernaryError::InvalidTable(format!("entry {bad} outside carrier of size {n}")));
        }
        let names = names.unwrap_or_else(|| (0..n).map(|k| k.to_string()).collect());
        if names.len() != n {
            return Err(TernaryError::InvalidTable(format!("{} names for {n} elements", names.len())));
        }
        Ok(Self { n, table, names })
    }

    pub fn from_fn(n: usize, names: Vec<String>, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self, TernaryError> {
        check_cap("carrier", n)?;
        let mut table = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    table.push(f(a, b, c) as u32);
                }
            }
        }
        Self::custom(n, table, Some(names))
    }

    /// A uniformly random table.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self, TernaryError> {
        check_cap("carrier", n)?;
        let table = (0..n * n * n).map(|_| rng.gen_range(0..n as u32)).collect();
        Self::custom(n, table, None)
    }

    /// `(abc) = a · b⁻¹ · c` for a group given by its multiplication table.
    pub fn group_heap(mul: &[Vec<usize>]) -> Result<Self, TernaryError> {
        let n = mul.len();
        check_cap("group", n)?;
        if n == 0 || mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(TernaryError::NotAGroup("table is not square over its carrier".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(TernaryError::NotAGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let one = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| TernaryError::NotAGroup("no identity".into()))?;
        let mut inverse = vec![0; n];
        for (a, slot) in inverse.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&b| mul[a][b] == one && mul[b][a] == one)
                .ok_or_else(|| TernaryError::NotAGroup(format!("{a} has no inverse")))?;
        }
        Self::from_fn(n, (0..n).map(|k| k.to_string()).collect(), |a, b, c| mul[mul[a][inverse[b]]][c])
    }

    /// All relations `A → B` under `R₁ ∘ R₂ᵀ ∘ R₃`. Element `r` relates `x`
    /// to `y` when bit `x·|B| + y` is set.
    pub fn relation_semiheap(a: usize, b: usize) -> Result<Self, TernaryError> {
        if a == 0 || b == 0 || a > 2 || b > 2 {
            return Err(TernaryError::TooLarge { what: "relation sets", cap: 2 });
        }
        let n = 1usize << (a * b);
        let rel = |r: usize, x: usize, y: usize| r >> (x * b + y) & 1 == 1;
        let names = (0..n)
            .map(|r| {
                let pairs: Vec<String> = (0..a)
                    .flat_map(|x| (0..b).map(move |y| (x, y)))
                    .filter(|&(x, y)| rel(r, x, y))
                    .map(|(x, y)| format!("({x},{y})"))
                    .collect();
                format!("{{{}}}", pairs.join(","))
            })
            .collect();
        Self::from_fn(n, names, |r1, r2, r3| {
            let mut out = 0;
            for x in 0..a {
                for y in 0..b {
                    let linked = (0..b).any(|y1| rel(r1, x, y1) && (0..a).any(|x2| rel(r2, x2, y1) && rel(r3, x2, y)));
                    if linked {
                        out |= 1 << (x * b + y);
                    }
                }
            }
            out
        })
    }

    /// All bijections between two `n`-element sets under `f ∘ g⁻¹ ∘ h`.
    pub fn bijection_heap(n: usize) -> Result<Self, TernaryError> {
        if n == 0 || n > 3 {
            return Err(TernaryError::TooLarge { what: "bijection sets", cap: 3 });
        }
        let perms = permutations(n);
        let names = perms.iter().map(|p| format!("{p:?}")).collect();
        Self::from_fn(perms.len(), names, |f, g, h| {
            let p = compose(&compose(&perms[f], &invert(&perms[g])), &perms[h]);
            perms.iter().position(|q| *q == p).expect("bijections are closed")
        })
    }

    /// `ℤ_m^dim` under `v − u + w`.
    pub fn vector_heap(m: usize, dim: usize) -> Result<Self, TernaryError> {
        let n = m.checked_pow(dim as u32).filter(|&n| n <= TABLE_CAP && m > 0);
        let n = n.ok_or(TernaryError::TooLarge {
            what: "vector carrier",
            cap: TABLE_CAP,
        })?;
        let digits = |mut x: usize| {
            (0..dim)
                .map(|_| {
                    let d = x % m;
                    x /= m;
                    d
                })
                .collect::<Vec<_>>()
        };
        let names = (0..n)
            .map(|x| {
                let mut d = digits(x);
                d.reverse();
                format!("{d:?}")
            })
            .collect();
        Self::from_fn(n, names, |v, u, w| {
            let (v, u, w) = (digits(v), digits(u), digits(w));
            (0..dim).rev().fold(0, |acc, k| acc * m + (v[k] + m - u[k] + w[k]) % m)
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn entries(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> usize {
        self.table[(a * self.n + b) * self.n + c] as usize
    }

    /// `(abc)` read backwards: `(cba)`.
    pub fn reverse_table(&self) -> Self {
        let names = self.names.clone();
        Self::from_fn(self.n, names, |a, b, c| self.get(c, b, a)).expect("same carrier")
    }

    /// `((abc)de) = (a(dcb)e) = (ab(cde))` over all quintuples.
    pub fn check_semiheap(&self) -> TableVerdict {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let abc = self.get(a, b, c);
                    for d in 0..n {
                        let dcb = self.get(d, c, b);
                        for e in 0..n {
                            let left = self.get(abc, d, e);
                            if left != self.get(a, dcb, e) {
                                return TableVerdict::fail("((abc)de) = (a(dcb)e)", &[a, b, c, d, e]);
                            }
                            if left != self.get(a, b, self.get(c, d, e)) {
                                return TableVerdict::fail("((abc)de) = (ab(cde))", &[a, b, c, d, e]);
                            }
                        }
                    }
                }
            }
        }
        TableVerdict::Pass { checked: n.pow(5) }
    }

    pub fn check_reverse_semiheap(&self) -> TableVerdict {
        self.reverse_table().check_semiheap()
    }

    /// The outer-bracket law `((abc)de) = (ab(cde))` on its own.
    pub fn check_para_associative(&self) -> TableVerdict {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for e in 0..n {
                            if self.get(self.get(a, b, c), d, e) != self.get(a, b, self.get(c, d, e)) {
                                return TableVerdict::fail("((abc)de) = (ab(cde))", &[a, b, c, d, e]);
                            }
                        }
                    }
                }
            }
        }
        TableVerdict::Pass { checked: n.pow(5) }
    }

    /// `(aab) = b = (baa)` for all pairs.
    pub fn check_malcev(&self) -> TableVerdict {
        for a in 0..self.n {
            for b in 0..self.n {
                if self.get(a, a, b) != b {
                    return TableVerdict::fail("(aab) = b", &[a, b]);
                }
                if self.get(b, a, a) != b {
                    return TableVerdict::fail("(baa) = b", &[a, b]);
                }
            }
        }
        TableVerdict::Pass { checked: self.n * self.n }
    }

    pub fn check_heap(&self) -> HeapVerdict {
        HeapVerdict {
            para_associative: self.check_para_associative(),
            malcev: self.check_malcev(),
            semiheap: self.check_semiheap(),
        }
    }

    pub fn is_biunit(&self, e: usize) -> bool {
        (0..self.n).all(|a| self.get(e, e, a) == a && self.get(a, e, e) == a)
    }

    /// Every `e` with `(eea) = a = (aee)` for all `a`.
    pub fn find_biunits(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.is_biunit(e)).collect()
    }

    /// `a · b = (a e b)`, `a* = (e a e)`, verified against the monoid and
    /// involution axioms.
    pub fn involuted_monoid(&self, e: usize) -> Result<InvolutedMonoid, TernaryError> {
        if e >= self.n || !self.is_biunit(e) {
            return Err(TernaryError::NotABiunit(e));
        }
        let n = self.n;
        let product = (0..n * n).map(|k| self.get(k / n, e, k % n)).collect();
        let star = (0..n).map(|a| self.get(e, a, e)).collect();
        let m = InvolutedMonoid { n, identity: e, product, star };
        match m.check_axioms() {
            TableVerdict::Pass { .. } => Ok(m),
            TableVerdict::Fail { law, elements } => Err(TernaryError::InvalidTable(format!("{law} fails at {elements:?}"))),
        }
    }

    /// `φ(a) = (a e e')` together with the verdict that it is a bijective
    /// map of involuted monoids taking `e` to `e'`.
    pub fn biunit_transport(&self, e: usize, e2: usize) -> Result<(Vec<usize>, TableVerdict), TernaryError> {
        let from = self.involuted_monoid(e)?;
        let to = self.involuted_monoid(e2)?;
        let n = self.n;
        let phi: Vec<usize> = (0..n).map(|a| self.get(a, e, e2)).collect();
        let verdict = 'check: {
            let mut seen = vec![false; n];
            for (a, &x) in phi.iter().enumerate() {
                if std::mem::replace(&mut seen[x], true) {
                    break 'check TableVerdict::fail("injective", &[a]);
                }
            }
            if phi[e] != e2 {
                break 'check TableVerdict::fail("φ(e) = e'", &[e]);
            }
            for a in 0..n {
                if phi[from.star(a)] != to.star(phi[a]) {
                    break 'check TableVerdict::fail("φ(a*) = φ(a)*", &[a]);
                }
                for b in 0..n {
                    if phi[from.mul(a, b)] != to.mul(phi[a], phi[b]) {
                        break 'check TableVerdict::fail("φ(a·b) = φ(a)·φ(b)", &[a, b]);
                    }
                }
            }
            TableVerdict::Pass { checked: n * n + 2 * n }
        };
        Ok((phi, verdict))
    }
}

/// `f((abc)) = (f(a) f(b) f(c))` for every triple.
pub fn check_homomorphism(from: &TernaryTable, to: &TernaryTable, f: &[usize]) -> Result<TableVerdict, TernaryError> {
    if f.len() != from.size() || f.iter().any(|&x| x >= to.size()) {
        return Err(TernaryError::InvalidTable("map does not go between the carriers".into()));
    }
    let n = from.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if f[from.get(a, b, c)] != to.get(f[a], f[b], f[c]) {
                    return Ok(TableVerdict::fail("f((abc)) = (f(a) f(b) f(c))", &[a, b, c]));
                }
            }
        }
    }
    Ok(TableVerdict::Pass { checked: n.pow(3) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapVerdict {
    /// ((abc)de) = (ab(cde))
    pub para_associative: TableVerdict,
    /// (aab) = b = (baa)
    pub malcev: TableVerdict,
    /// the full semiheap law, which a heap must also satisfy
    pub semiheap: TableVerdict,
}

impl HeapVerdict {
    pub fn is_heap(&self) -> bool {
        self.para_associative.passed() && self.malcev.passed()
    }

    /// False only if the table is a heap but fails the semiheap law.
    pub fn consistent(&self) -> bool {
        !self.is_heap() || self.semiheap.passed()
    }
}

/// A binary operation with identity and an involution, on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutedMonoid {
    pub n: usize,
    pub identity: usize,
    pub product: Vec<usize>,
    pub star: Vec<usize>,
}

impl InvolutedMonoid {
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.n + b]
    }

    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    pub fn check_axioms(&self) -> TableVerdict {
        let n = self.n;
        for a in 0..n {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                return TableVerdict::fail("identity", &[a]);
            }
            if self.star(self.star(a)) != a {
                return TableVerdict::fail("(a*)* = a", &[a]);
            }
            for b in 0..n {
                if self.star(self.mul(a, b)) != self.mul(self.star(b), self.star(a)) {
                    return TableVerdict::fail("(ab)* = b*a*", &[a, b]);
                }
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return TableVerdict::fail("(ab)c = a(bc)", &[a, b, c]);
                    }
                }
            }
        }
        TableVerdict::Pass { checked: n.pow(3) }
    }
}

/// The cyclic group `ℤ_n` as a multiplication table.
pub fn cyclic_group(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `(f ∘ g)(x) = f(g(x))`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

pub fn invert(f: &[usize]) -> Vec<usize> {
    let mut out = vec![0; f.len()];
    for (x, &y) in f.iter().enumerate() {
        out[y] = x;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    /// `f ↦ f ∘ a` on the right, `f ↦ b ∘ f` on the left
    Correct,
    /// the source permutation applied on the wrong side
    Wrong,
}

/// Bi-invariance `η(f∘a, b∘g∘a, b∘h) = η(f, g, h)` of the bijection heap
/// on `n`-element sets, and `η(f, g, h)⁻¹ = η̄(f⁻¹, g⁻¹, h⁻¹)`.
pub fn check_isotropy_biinvariance(n: usize, action: Action) -> Result<TableVerdict, TernaryError> {
    if n == 0 || n > 3 {
        return Err(TernaryError::TooLarge { what: "bijection sets", cap: 3 });
    }
    let perms = permutations(n);
    let eta = |f: &[usize], g: &[usize], h: &[usize]| compose(&compose(f, &invert(g)), h);
    let mut checked = 0;
    for (fi, f) in perms.iter().enumerate() {
        for (gi, g) in perms.iter().enumerate() {
            for (hi, h) in perms.iter().enumerate() {
                let base = eta(f, g, h);
                if invert(&base) != eta(&invert(h), &invert(g), &invert(f)) {
                    return Ok(TableVerdict::fail("η(f,g,h)⁻¹ = η̄(f⁻¹,g⁻¹,h⁻¹)", &[fi, gi, hi]));
                }
                for (ai, a) in perms.iter().enumerate() {
                    for (bi, b) in perms.iter().enumerate() {
                        let fa = match action {
                            Action::Correct => compose(f, a),
                            Action::Wrong => compose(a, f),
                        };
                        let moved = eta(&fa, &compose(&compose(b, g), a), &compose(b, h));
                        checked += 1;
                        if moved != base {
                            return Ok(TableVerdict::fail("η(f∘a, b∘g∘a, b∘h) = η(f,g,h)", &[fi, gi, hi, ai, bi]));
                        }
                    }
                }
            }
        }
    }
    Ok(TableVerdict::Pass { checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z(n: usize) -> TernaryTable {
        TernaryTable::group_heap(&cyclic_group(n)).unwrap()
    }

    #[test]
    fn constructors() {
        assert_eq!(z(2).get(1, 0, 1), 0);
        assert_eq!(TernaryTable::vector_heap(3, 1).unwrap().get(2, 1, 2), 0);
        let b2 = TernaryTable::bijection_heap(2).unwrap();
        assert_eq!(b2.size(), 2);
        // identity = 0, swap = 1: swap ∘ swap⁻¹ ∘ swap = swap
        assert_eq!(b2.get(1, 1, 1), 1);
        assert_eq!(b2.get(0, 1, 0), 1);
        assert_eq!(TernaryTable::relation_semiheap(2, 2).unwrap().size(), 16);
        assert!(TernaryTable::relation_semiheap(3, 2).is_err());
        assert!(TernaryTable::bijection_heap(4).is_err());
        assert!(TernaryTable::group_heap(&[vec![0, 0], vec![0, 1]]).is_err());
        assert!(TernaryTable::custom(2, vec![0; 7], None).is_err());
        assert!(TernaryTable::custom(2, vec![2; 8], None).is_err());
    }

    #[test]
    fn vector_heap_two_dims() {
        let t = TernaryTable::vector_heap(2, 2).unwrap();
        assert_eq!(t.size(), 4);
        assert!(t.check_heap().is_heap());
        assert_eq!(t.name(2), "[1, 0]");
    }

    #[test]
    fn heaps() {
        for t in [z(2), z(3), TernaryTable::vector_heap(3, 1).unwrap(), TernaryTable::bijection_heap(2).unwrap(), TernaryTable::bijection_heap(3).unwrap()] {
            let v = t.check_heap();
            assert!(v.is_heap() && v.semiheap.passed());
            assert_eq!(t.find_biunits(), (0..t.size()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn relations() {
        let t = TernaryTable::relation_semiheap(2, 2).unwrap();
        assert!(t.check_semiheap().passed());
        let v = t.check_heap();
        assert!(!v.malcev.passed());
        assert!(!v.is_heap());
        let biunits: Vec<&str> = t.find_biunits().into_iter().map(|e| t.name(e)).collect();
        assert_eq!(biunits, vec!["{(0,1),(1,0)}", "{(0,0),(1,1)}"]);
        assert!(t.check_reverse_semiheap().passed());
    }

    #[test]
    fn random_table_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = TernaryTable::random(3, &mut rng).unwrap();
        match t.check_semiheap() {
            TableVerdict::Fail { elements, .. } => assert_eq!(elements.len(), 5),
            TableVerdict::Pass { .. } => panic!("random table passed"),
        }
    }

    #[test]
    fn involuted_monoids() {
        let m = z(2).involuted_monoid(0).unwrap();
        assert_eq!(m.product, vec![0, 1, 1, 0]);
        assert_eq!(m.star, vec![0, 1]);
        assert_eq!(m.identity, 0);
        let r = TernaryTable::relation_semiheap(2, 2).unwrap();
        assert!(matches!(r.involuted_monoid(0), Err(TernaryError::NotABiunit(0))));
        let b = TernaryTable::bijection_heap(3).unwrap();
        for e in 0..6 {
            for e2 in 0..6 {
                let (phi, verdict) = b.biunit_transport(e, e2).unwrap();
                assert!(verdict.passed());
                assert!(check_homomorphism(&b, &b, &phi).unwrap().passed());
            }
        }
    }

    #[test]
    fn reverse_and_homomorphisms() {
        assert_eq!(z(2).reverse_table(), z(2));
        assert!(TernaryTable::bijection_heap(3).unwrap().check_reverse_semiheap().passed());
        let t = z(3);
        assert!(check_homomorphism(&t, &t, &[0, 1, 2]).unwrap().passed());
        // constants are homomorphisms exactly when their value is idempotent
        let r = TernaryTable::relation_semiheap(2, 2).unwrap();
        let full = 15;
        assert_ne!(r.get(7, 7, 7), 7);
        assert!(!check_homomorphism(&r, &r, &[7; 16]).unwrap().passed());
        assert!(check_homomorphism(&r, &r, &[full; 16]).unwrap().passed());
        assert_eq!(r.get(full, full, full), full);
    }

    #[test]
    fn isotropy() {
        assert!(check_isotropy_biinvariance(2, Action::Correct).unwrap().passed());
        assert_eq!(check_isotropy_biinvariance(3, Action::Correct).unwrap(), TableVerdict::Pass { checked: 7776 });
        assert!(!check_isotropy_biinvariance(3, Action::Wrong).unwrap().passed());
    }
}
