use plexus_core::array::IndexSet;
use plexus_core::diagram::{standard_diagram, StandardDiagram};
use plexus_core::rewrite::{check_concurrency, evaluate_match, find_matches, multiway, random_binding, semantic_confluence, Motif};
use plexus_core::Semiring;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn i2() -> IndexSet {
    IndexSet::new("I", 2).unwrap()
}

#[test]
fn each_rewrite_removes_motif_edges_minus_one() {
    for (host, motif) in [
        (StandardDiagram::Zee, StandardDiagram::Vee),
        (StandardDiagram::Chain(5), StandardDiagram::Vee),
        (StandardDiagram::LongFish, StandardDiagram::Fish),
    ] {
        let h = standard_diagram(&host, &i2()).unwrap();
        let m = Motif::standard(&motif, &i2()).unwrap();
        let g = multiway(&h, &m).unwrap();
        let shrink = m.diagram().edges().len() - 1;
        for t in &g.transitions {
            let from = g.states[t.from].diagram.edges().len();
            let to = g.states[t.to].diagram.edges().len();
            assert_eq!(from - to, shrink);
        }
        assert!(!g.terminal_states().is_empty());
    }
}

#[test]
fn both_standard_systems_are_concurrent() {
    let zee = check_concurrency(&standard_diagram(&StandardDiagram::Zee, &i2()).unwrap(), &Motif::standard(&StandardDiagram::Vee, &i2()).unwrap()).unwrap();
    assert!(zee.concurrent);
    let fish = check_concurrency(
        &standard_diagram(&StandardDiagram::LongFish, &i2()).unwrap(),
        &Motif::standard(&StandardDiagram::Fish, &i2()).unwrap(),
    )
    .unwrap();
    assert!(fish.concurrent);
}

#[test]
fn terminal_results_agree_on_random_bindings() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for s in [Semiring::Boolean, Semiring::IntMod(5)] {
        for (host, motif) in [(StandardDiagram::Zee, StandardDiagram::Vee), (StandardDiagram::LongFish, StandardDiagram::Fish)] {
            let h = standard_diagram(&host, &i2()).unwrap();
            let m = Motif::standard(&motif, &i2()).unwrap();
            assert!(semantic_confluence(&h, &m, s, 20, 0, &mut rng).unwrap().passed(), "{host} over {s}");
        }
    }
}

/// Every single match of a motif evaluates to an array on the motif's free
/// vertices.
#[test]
fn matched_subdiagrams_evaluate() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let h = standard_diagram(&StandardDiagram::LongFish, &i2()).unwrap();
    let m = Motif::standard(&StandardDiagram::Fish, &i2()).unwrap();
    let b = random_binding(&h, Semiring::IntMod(5), 0, &mut rng);
    for mat in find_matches(&h, &m) {
        assert_eq!(evaluate_match(&h, &b, &mat, &m).unwrap().order(), 3);
    }
}
