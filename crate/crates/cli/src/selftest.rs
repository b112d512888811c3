//! The acceptance suite: fourteen criteria, each with a runtime bound.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use plexus_core::array::{contract, kronecker, multiplicative_incidence, Array, IndexSet};
use plexus_core::diagram::{canonical_form, standard_diagram, Certificate, StandardDiagram};
use plexus_core::rewrite::{enumerate_compositions, multiway, random_binding, semantic_confluence, verdict_of, CompositionParams, Motif, Variant};
use plexus_core::ternary::{
    biunit_pair_search, check_homomorphism, check_isotropy_biinvariance, constellation, cyclic_group, fish, fish_units_check, flat_fish_equiv,
    semiheap_law_arrays, twist_witness, two_edge_twists, twists_agree_on_delta_body, Action, FishVariant, TernaryTable,
};
use plexus_core::{evaluate, Semiring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::oracle;

type Check = fn(u64) -> Result<String, String>;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub bound: Duration,
    pub check: Check,
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub within_bound: bool,
    pub elapsed_ms: u128,
    pub bound_ms: u128,
    pub detail: String,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.passed && self.within_bound
    }

    /// One report line. Without timings the line depends only on the seed.
    pub fn line(&self, timings: bool) -> String {
        let verdict = match (self.passed, self.within_bound || !timings) {
            (true, true) => "PASS",
            (true, false) => "SLOW",
            _ => "FAIL",
        };
        if timings {
            format!(
                "[{verdict}] {:>2}. {} ({} ms / {} ms): {}",
                self.id, self.name, self.elapsed_ms, self.bound_ms, self.detail
            )
        } else {
            format!("[{verdict}] {:>2}. {}: {}", self.id, self.name, self.detail)
        }
    }
}

pub fn run(c: &Criterion, seed: u64) -> Outcome {
    let start = Instant::now();
    let result = (c.check)(seed);
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        id: c.id,
        name: c.name,
        passed,
        within_bound: elapsed <= c.bound,
        elapsed_ms: elapsed.as_millis(),
        bound_ms: c.bound.as_millis(),
        detail,
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    criteria().iter().map(|c| run(c, seed)).collect()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn secs(n: u64) -> Duration {
    Duration::from_secs(n)
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "fish formula oracle", bound: secs(2), check: fish_oracle },
        Criterion { id: 2, name: "semiheap law on arrays", bound: secs(5), check: semiheap_arrays },
        Criterion { id: 3, name: "multiway reproduction", bound: secs(1), check: multiway_counts },
        Criterion { id: 4, name: "semantic confluence", bound: secs(5), check: semantic },
        Criterion { id: 5, name: "kronecker identities", bound: secs(2), check: kronecker_identities },
        Criterion { id: 6, name: "fish units", bound: secs(2), check: fish_units },
        Criterion { id: 7, name: "flat fish", bound: secs(2), check: flat_fish },
        Criterion { id: 8, name: "biunit pairs", bound: secs(10), check: biunit_pairs },
        Criterion { id: 9, name: "finite semiheap suite", bound: secs(60), check: finite_semiheaps },
        Criterion { id: 10, name: "involuted monoids", bound: secs(5), check: involuted_monoids },
        Criterion { id: 11, name: "isotropy bi-invariance", bound: secs(30), check: isotropy },
        Criterion { id: 12, name: "enumeration census", bound: secs(30), check: census },
        Criterion { id: 13, name: "reversal relations", bound: secs(2), check: reversal },
        Criterion { id: 14, name: "twist witness", bound: secs(10), check: twists },
    ]
}

fn fish_oracle(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0;
    for semiring in [Semiring::Boolean, Semiring::IntMod(5)] {
        for sizes in [[2, 2, 2], [2, 3, 2]] {
            let axes = constellation(sizes).map_err(s)?;
            for _ in 0..50 {
                let [a, b, c] = [0, 1, 2].map(|_| Array::random(axes.clone(), semiring, 0, &mut rng));
                let got = fish(&a, &b, &c, FishVariant::IJK).map_err(s)?;
                ensure!(got.entries() == oracle::fish_triple_loop(&a, &b, &c).as_slice(), "mismatch over {semiring} at sizes {sizes:?}");
                count += 1;
            }
        }
    }
    Ok(format!("{count} triples agree"))
}

fn semiheap_arrays(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for semiring in [Semiring::Boolean, Semiring::IntMod(5)] {
        let v = semiheap_law_arrays(FishVariant::IJK, semiring, [2, 2, 2], 100, 0, &mut rng).map_err(s)?;
        ensure!(v.passed(), "{semiring}: {v:?}");
    }
    Ok("100 quintuples per semiring, all three bracketings equal".into())
}

fn multiway_counts(_: u64) -> Result<String, String> {
    let i2 = IndexSet::new("I", 2).map_err(s)?;
    let mut report = Vec::new();
    for (host, motif, expected) in [(StandardDiagram::Zee, StandardDiagram::Vee, (2, 4, 1)), (StandardDiagram::LongFish, StandardDiagram::Fish, (3, 5, 1))] {
        let h = standard_diagram(&host, &i2).map_err(s)?;
        let m = Motif::standard(&motif, &i2).map_err(s)?;
        let v = verdict_of(&multiway(&h, &m).map_err(s)?);
        let got = (v.initial_matches, v.states, v.terminals);
        ensure!(got == expected, "{host}/{motif}: (matches, states, terminals) = {got:?}, expected {expected:?}");
        ensure!(v.concurrent, "{host}/{motif} is not concurrent: {v:?}");
        report.push(format!("{host}/{motif} {got:?}"));
    }
    Ok(format!("{}, both concurrent", report.join(", ")))
}

fn semantic(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i2 = IndexSet::new("I", 2).map_err(s)?;
    let mut report = Vec::new();
    for (host, motif) in [(StandardDiagram::Chain(5), StandardDiagram::Vee), (StandardDiagram::LongFish, StandardDiagram::Fish)] {
        let h = standard_diagram(&host, &i2).map_err(s)?;
        let m = Motif::standard(&motif, &i2).map_err(s)?;
        let v = semantic_confluence(&h, &m, Semiring::IntMod(7), 50, 0, &mut rng).map_err(s)?;
        match v {
            plexus_core::rewrite::SemanticVerdict::Pass { sequences, .. } => report.push(format!("{host}: {sequences} sequences")),
            other => return Err(format!("{host}: {other:?}")),
        }
    }
    Ok(report.join(", "))
}

fn kronecker_identities(seed: u64) -> Result<String, String> {
    let sr = Semiring::Nat64;
    for n in 2..=4 {
        let set = IndexSet::new("I", n).map_err(s)?;
        let d = |k| kronecker(k, &set, sr).map_err(s);
        ensure!(multiplicative_incidence(&[&d(2)?, &d(2)?], &[1, 0]).map_err(s)? == d(3)?, "δ₂δ₂ incidence ≠ δ₃ on {n}");
        ensure!(contract(&[&d(3)?, &d(3)?], &[2, 0]).map_err(s)? == d(4)?, "Σ δ₃δ₃ ≠ δ₄ on {n}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let set = IndexSet::new("I", 3).map_err(s)?;
    let mut insertions = 0;
    for name in [StandardDiagram::Vee, StandardDiagram::Zee, StandardDiagram::Fish] {
        let d = standard_diagram(&name, &set).map_err(s)?;
        for _ in 0..50 {
            let b = random_binding(&d, Semiring::IntMod(5), 0, &mut rng);
            let expected = evaluate(&d, &b, None).map_err(s)?;
            for v in d.marked_vertices() {
                let (d2, b2) = oracle::insert_identity(&d, &b, v);
                ensure!(evaluate(&d2, &b2, None).map_err(s)? == expected, "δ₂ at {v} of {name} changed the result");
                insertions += 1;
            }
        }
    }
    Ok(format!("δ products exact for |I| = 2..4; {insertions} δ₂ insertions neutral"))
}

fn fish_units(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut right_only = 0;
    for k in 0..100 {
        let semiring = if k % 2 == 0 { Semiring::Boolean } else { Semiring::IntMod(5) };
        let n = rng.gen_range(1..=3);
        let a = Array::random(constellation([n; 3]).map_err(s)?, semiring, 0, &mut rng);
        let v = fish_units_check(&a).map_err(s)?;
        ensure!(v.passed(), "units fail for trial {k}: {v:?}");
        right_only += usize::from(!v.tta);
    }
    Ok(format!("(att) = (aut) = (atu) = a for 100 arrays; (tta) ≠ a in {right_only}"))
}

fn flat_fish(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..100 {
        let sizes = [rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3)];
        let axes = constellation(sizes).map_err(s)?;
        let semiring = [Semiring::Boolean, Semiring::IntMod(5), Semiring::Nat64][k % 3];
        let [a, b, c] = [0, 1, 2].map(|_| Array::random(axes.clone(), semiring, 4, &mut rng));
        ensure!(flat_fish_equiv(&a, &b, &c, FishVariant::IJK).map_err(s)?, "trial {k} at sizes {sizes:?}");
    }
    Ok("100 triples match a ∘ bᵀ ∘ c".into())
}

fn biunit_pairs(_: u64) -> Result<String, String> {
    let axes = vec![IndexSet::new("I", 4).map_err(s)?, IndexSet::new("J", 2).map_err(s)?, IndexSet::new("K", 2).map_err(s)?];
    let found = biunit_pair_search(&axes, FishVariant::JKI).map_err(s)?;
    for (e, e2) in &found {
        ensure!(oracle::inverse_pair(e, e2), "found pair is not an inverse pair");
    }
    let found_keys: BTreeSet<(Vec<String>, Vec<String>)> = found
        .iter()
        .map(|(e, e2)| (e.entries().iter().map(ToString::to_string).collect(), e2.entries().iter().map(ToString::to_string).collect()))
        .collect();
    let expected: BTreeSet<(Vec<String>, Vec<String>)> = oracle::all_permutations(4)
        .iter()
        .map(|p| {
            let e: Vec<String> = oracle::permutation_array(&axes, p).entries().iter().map(ToString::to_string).collect();
            (e.clone(), e)
        })
        .collect();
    ensure!(found_keys == expected, "found {} pairs, oracle expects {}", found_keys.len(), expected.len());
    let small = vec![IndexSet::new("I", 3).map_err(s)?, axes[1].clone(), axes[2].clone()];
    let none = biunit_pair_search(&small, FishVariant::JKI).map_err(s)?;
    ensure!(none.is_empty(), "{} pairs found for |I| = 3", none.len());
    Ok(format!("{} pairs for |I| = 4, all permutation inverses; none for |I| = 3", found.len()))
}

fn example_tables() -> Result<Vec<(&'static str, TernaryTable)>, String> {
    Ok(vec![
        ("group_heap(Z2)", TernaryTable::group_heap(&cyclic_group(2)).map_err(s)?),
        ("group_heap(Z3)", TernaryTable::group_heap(&cyclic_group(3)).map_err(s)?),
        ("vector_heap(3,1)", TernaryTable::vector_heap(3, 1).map_err(s)?),
        ("bijection_heap(2)", TernaryTable::bijection_heap(2).map_err(s)?),
        ("bijection_heap(3)", TernaryTable::bijection_heap(3).map_err(s)?),
        ("relation_semiheap(2,2)", TernaryTable::relation_semiheap(2, 2).map_err(s)?),
    ])
}

fn finite_semiheaps(_: u64) -> Result<String, String> {
    let tables = example_tables()?;
    for (name, t) in &tables[..5] {
        let v = t.check_heap();
        ensure!(v.is_heap(), "{name} fails check_heap: {v:?}");
        ensure!(v.semiheap.passed(), "{name} is a heap but fails the semiheap law");
    }
    let (_, r) = &tables[5];
    let v = r.check_semiheap();
    ensure!(v == plexus_core::ternary::TableVerdict::Pass { checked: 16usize.pow(5) }, "relations: {v}");
    ensure!(!r.check_heap().is_heap(), "relations pass check_heap");
    let biunits: Vec<&str> = r.find_biunits().into_iter().map(|e| r.name(e)).collect();
    let mut sorted = biunits.clone();
    sorted.sort_unstable();
    ensure!(sorted == ["{(0,0),(1,1)}", "{(0,1),(1,0)}"], "relation biunits {biunits:?}");
    Ok(format!("5 heaps; relations pass 16^5 quintuples with biunits {biunits:?}"))
}

fn involuted_monoids(_: u64) -> Result<String, String> {
    let mut monoids = 0;
    let mut transports = 0;
    for (name, t) in example_tables()? {
        let biunits = t.find_biunits();
        for &e in &biunits {
            let m = t.involuted_monoid(e).map_err(|err| format!("{name}, e = {e}: {err}"))?;
            ensure!(oracle::involuted_monoid_axioms(&m), "{name}, e = {e}: axioms fail");
            monoids += 1;
        }
        for &e in &biunits {
            for &e2 in &biunits {
                let (phi, v) = t.biunit_transport(e, e2).map_err(s)?;
                ensure!(v.passed(), "{name}: transport {e} → {e2}: {v}");
                ensure!(check_homomorphism(&t, &t, &phi).map_err(s)?.passed(), "{name}: transport {e} → {e2} is not a homomorphism");
                transports += 1;
            }
        }
    }
    Ok(format!("{monoids} involuted monoids, {transports} transports verified"))
}

fn isotropy(_: u64) -> Result<String, String> {
    let mut checked = 0;
    for n in [2, 3] {
        match check_isotropy_biinvariance(n, Action::Correct).map_err(s)? {
            plexus_core::ternary::TableVerdict::Pass { checked: c } => checked += c,
            other => return Err(format!("|A| = {n}: {other}")),
        }
    }
    ensure!(!check_isotropy_biinvariance(3, Action::Wrong).map_err(s)?.passed(), "the wrong action passes");
    Ok(format!("{checked} combinations; wrong-side action rejected"))
}

fn census(_: u64) -> Result<String, String> {
    let set = IndexSet::new("I", 2).map_err(s)?;
    let c = enumerate_compositions(&CompositionParams::default(), &set);
    let mut symmetric: Vec<&Certificate> = c.symmetric.iter().map(|&k| &c.certificates[k]).collect();
    symmetric.sort();
    let mut expected = Vec::new();
    for name in [StandardDiagram::Bm, StandardDiagram::TrinityMid, StandardDiagram::TrinityRight] {
        expected.push(canonical_form(&standard_diagram(&name, &set).map_err(s)?));
    }
    expected.sort();
    let ok = c.diagrams.len() == 10 && symmetric == expected.iter().collect::<Vec<_>>();
    if !ok {
        let per_variant: Vec<String> = Variant::ALL
            .iter()
            .map(|&variant| {
                let p = CompositionParams { variant, ..CompositionParams::default() };
                let c = enumerate_compositions(&p, &set);
                format!("{variant}: {} / {}", c.diagrams.len(), c.symmetric.len())
            })
            .collect();
        return Err(format!("count {}, symmetric {}; per variant {}", c.diagrams.len(), c.symmetric.len(), per_variant.join(", ")));
    }
    Ok("count: 10, symmetric: 3 (bm, trinity_mid, trinity_right)".into())
}

fn reversal(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..100 {
        let sizes = [rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3)];
        let axes = constellation(sizes).map_err(s)?;
        let [a, b, c] = [0, 1, 2].map(|_| Array::random(axes.clone(), Semiring::IntMod(5), 0, &mut rng));
        for (v, w) in [(FishVariant::IJK, FishVariant::JIK), (FishVariant::KIJ, FishVariant::IKJ), (FishVariant::JKI, FishVariant::KJI)] {
            ensure!(fish(&a, &b, &c, v).map_err(s)? == fish(&c, &b, &a, w).map_err(s)?, "{v}(a,b,c) ≠ {w}(c,b,a) in trial {k}");
        }
    }
    Ok("100 triples, three pairs each".into())
}

fn twists(_: u64) -> Result<String, String> {
    let (a, b) = twist_witness().map_err(s)?.ok_or("no witness in the boolean 2×2×2 search")?;
    let (x, y) = two_edge_twists(&a, &b).map_err(s)?;
    ensure!(x != y, "witness does not separate the twists");
    ensure!(twists_agree_on_delta_body().map_err(s)?, "twists differ with a δ₃ body");
    let show = |arr: &Array| arr.entries().iter().map(ToString::to_string).collect::<String>();
    Ok(format!("witness a = {}, b = {}; δ₃ bodies agree", show(&a), show(&b)))
}
