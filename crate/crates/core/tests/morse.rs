use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use posetmorse::cellular::{cellular_chain_complex, incidence, skeleton_homology_scan, GeneratorTable};
use posetmorse::flow::{build_flow, morse_complex, morse_inequalities};
use posetmorse::fixtures;
use posetmorse::homology::{homology, poset_homology};
use posetmorse::matching::{
    classify_poset, edge_admissible, morse_check, morse_function, path_stats, Matching,
};
use posetmorse::poset::Poset;
use posetmorse::random::random_face_poset;
use posetmorse::search::{greedy_matching, verify_and_report, SearchPolicy};
use posetmorse::simplicial::{face_poset, simplex_boundary};
use posetmorse::Error;

fn shipped(name: &str) -> (Poset, Matching) {
    let f = fixtures::load(name).unwrap();
    (f.poset, f.matching.unwrap())
}

fn admissible(seed: u64) -> SearchPolicy {
    SearchPolicy {
        rng_seed: seed,
        admissibility_filter: true,
        ..SearchPolicy::default()
    }
}

/// Longest Morse path from every element by explicit path enumeration.
fn enumerate_morse_paths(x: &Poset, m: &Matching) -> BTreeMap<String, usize> {
    let up: BTreeMap<&str, &str> = m.pairs().iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    fn walk(x: &Poset, up: &BTreeMap<&str, &str>, at: &str, depth: usize, best: &mut usize) {
        *best = (*best).max(depth);
        let Some(&y) = up.get(at) else { return };
        let yi = x.index_of(y).unwrap();
        for &next in x.lower_covers(yi) {
            let name = x.name(next);
            if name != at {
                walk(x, up, name, depth + 1, best);
            }
        }
    }
    x.names()
        .iter()
        .map(|n| {
            let mut best = 0;
            walk(x, &up, n, 0, &mut best);
            (n.clone(), best)
        })
        .collect()
}

#[test]
fn path_lengths_match_enumeration() {
    for name in fixtures::NAMES {
        let (x, m) = shipped(name);
        assert_eq!(path_stats(&x, &m).unwrap(), enumerate_morse_paths(&x, &m), "{name}");
    }
    let (x, m) = shipped("fig4x");
    let l = path_stats(&x, &m).unwrap();
    assert_eq!((l["p"], l["A"], l["q"], l["r"], l["C"]), (1, 1, 0, 0, 0));
    let (x, m) = shipped("fig1x");
    let l = path_stats(&x, &m).unwrap();
    assert_eq!(l["c3"], 0);
    assert!(l["c1"] >= 1);
}

#[test]
fn admissibility_examples() {
    let (fig4, _) = shipped("fig4x");
    assert!(edge_admissible(&fig4, "p", "B").unwrap());
    let (fig1, _) = shipped("fig1x");
    assert!(edge_admissible(&fig1, "a1", "T1").unwrap());
    let circle = Poset::new(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap();
    assert!(edge_admissible(&circle, "a", "c").unwrap());
}

#[test]
fn classification_examples() {
    let c = classify_poset(&shipped("fig1x").0);
    assert!(c.homologically_h_regular && !c.graded && !c.cellular);
    let c = classify_poset(&shipped("fig4x").0);
    assert!(c.graded && c.cellular);
    let c = classify_poset(&face_poset(&simplex_boundary(3)).unwrap());
    assert!(c.graded && c.cellular && c.homologically_h_regular && c.homologically_admissible);
}

#[test]
fn morse_function_with_empty_matching_is_degree() {
    let x = face_poset(&simplex_boundary(2)).unwrap();
    let f = morse_function(&x, &Matching::empty()).unwrap();
    for (name, v) in &f.values {
        let deg = BigInt::from(name.split('.').count() - 1);
        assert_eq!(*v, BigRational::from_integer(deg));
    }
    assert_eq!(f.critical_points(&x).len(), x.len());
}

#[test]
fn incidence_examples() {
    let (x, _) = shipped("fig4x");
    let t = GeneratorTable::new(&x).unwrap();
    assert_eq!(incidence(&x, "B", "p", &t).unwrap(), BigInt::from(1));
    assert_eq!(incidence(&x, "B", "r", &t).unwrap(), BigInt::from(-1));
    assert_eq!(
        incidence(&x, "T", "p", &t).unwrap_err(),
        Error::NotACover("p".into(), "T".into())
    );
}

#[test]
fn cellular_complexes_of_fixtures() {
    let (fig3, _) = shipped("fig3x");
    let c = cellular_chain_complex(&fig3, false).unwrap();
    let sizes: Vec<usize> = (0..=3).map(|p| c.basis(p).len()).collect();
    assert_eq!(sizes, [4, 5, 4, 2]);
    for name in ["fig3x", "fig4x", "sq2"] {
        let (x, _) = shipped(name);
        let h = homology(&cellular_chain_complex(&x, true).unwrap()).unwrap();
        assert_eq!(h, poset_homology(&x, true), "{name}");
        assert!(skeleton_homology_scan(&x).unwrap().all_pass, "{name}");
    }
    let (fig1, _) = shipped("fig1x");
    assert!(matches!(cellular_chain_complex(&fig1, true), Err(Error::NotCellular(_))));
}

#[test]
fn flow_on_fig4x() {
    let (x, m) = shipped("fig4x");
    let t = GeneratorTable::new(&x).unwrap();
    let f = build_flow(&x, &m).unwrap();
    let pos = |p: usize, n: &str| f.bases[p].iter().position(|b| b == n).unwrap();
    let eps_ta = incidence(&x, "T", "A", &t).unwrap();
    let eps_bp = incidence(&x, "B", "p", &t).unwrap();
    assert_eq!(f.v[1].get(pos(2, "T"), pos(1, "A")), -eps_ta);
    assert_eq!(f.v[0].get(pos(1, "B"), pos(0, "p")), -eps_bp);
    assert_eq!(f.v[0].nnz() + f.v[1].nnz(), 2);
    for p in 1..=f.top_degree() {
        assert_eq!(f.differential[p].mul(&f.phi[p]), f.phi[p - 1].mul(&f.differential[p]));
    }
    let r = morse_complex(&x, &m).unwrap();
    assert_eq!(r.morse_counts, [2, 1, 0]);
    assert!(r.homology.is_acyclic());
}

#[test]
fn morse_complex_examples() {
    let (x, m) = shipped("fig3x");
    let r = morse_complex(&x, &m).unwrap();
    assert_eq!(r.morse_counts, [1, 0, 0, 0]);
    assert!(r.homology.is_acyclic());
    let (x, m) = shipped("sq2");
    let r = morse_complex(&x, &m).unwrap();
    assert_eq!(r.morse_counts, [1, 0, 1]);
    assert!(r.homology.is_sphere(2));
    let (x, m) = shipped("fig1x");
    assert!(matches!(morse_complex(&x, &m), Err(Error::NotCellular(_))));
}

#[test]
fn inequality_examples() {
    let (x, m) = shipped("fig1x");
    let r = morse_inequalities(&x, &m).unwrap();
    assert_eq!((r.m.clone(), r.b.clone()), (vec![1, 0, 0, 1], vec![1, 0, 0, 1]));
    assert!(r.perfect);
    let (x, m) = shipped("sq2");
    let r = morse_inequalities(&x, &m).unwrap();
    assert_eq!((r.m.clone(), r.b.clone()), (vec![1, 0, 1], vec![1, 0, 1]));
    // The shipped matching on fig4x leaves three critical cells on a
    // contractible poset.
    let (x, m) = shipped("fig4x");
    let r = morse_inequalities(&x, &m).unwrap();
    assert_eq!((r.m.clone(), r.b.clone()), (vec![2, 1], vec![1, 0]));
    assert!(r.weak_holds && r.strong_holds && r.euler_holds && !r.perfect);
}

#[test]
fn pipeline_reports() {
    let (x, m) = shipped("fig1x");
    let r = verify_and_report(&x, &m);
    assert_eq!(r["morse_check"]["is_acyclic"], true);
    assert_eq!(r["morse_function"]["error"], "NotGraded");
    assert_eq!(r["morse_complex"]["error"], "NotCellular");
    assert_eq!(r["morse_inequalities"]["status"], "ok");
    let (x, m) = shipped("fig4x");
    let r = verify_and_report(&x, &m);
    for stage in ["morse_function", "morse_complex", "morse_inequalities"] {
        assert_eq!(r[stage]["status"], "ok", "{stage}");
    }
    assert_eq!(r["morse_function"]["result"]["values"]["A"], "3/2");
    let bad = Matching::new([("q", "A"), ("r", "C"), ("p", "T")]);
    let r = verify_and_report(&x, &bad);
    assert_eq!(r["morse_check"]["is_matching"], false);
    assert!(r["morse_check"]["matching_errors"][0].as_str().unwrap().contains("p -- T"));
}

#[test]
fn search_on_fig1x_with_filter() {
    let (x, _) = shipped("fig1x");
    let m = greedy_matching(&x, &admissible(0));
    let r = morse_check(&x, &m);
    assert!(r.is_admissible_morse());
    assert!(r.critical.len() <= 2);
}

#[test]
fn exhaustive_minimum_on_triangle() {
    let x = face_poset(&simplex_boundary(2)).unwrap();
    let covers = x.cover_names();
    let best = (0u32..1 << covers.len())
        .filter_map(|mask| {
            let m = Matching::new((0..covers.len()).filter(|i| mask & (1 << i) != 0).map(|i| covers[i].clone()));
            let r = morse_check(&x, &m);
            r.is_morse().then_some(r.critical.len())
        })
        .min()
        .unwrap();
    assert_eq!(best, 2);
    let m = greedy_matching(&x, &SearchPolicy::default());
    assert_eq!(morse_check(&x, &m).critical.len(), best);
}

#[test]
fn removing_a_pair_adds_two_critical_cells() {
    for name in ["fig3x", "fig4x", "sq2"] {
        let (x, m) = shipped(name);
        let base = morse_complex(&x, &m).unwrap();
        for (a, b) in m.pairs() {
            let smaller = m.without(a, b);
            let r = morse_complex(&x, &smaller).unwrap();
            let mut expected = base.morse_counts.clone();
            expected[x.grading_info().degree_of.unwrap()[a]] += 1;
            expected[x.grading_info().degree_of.unwrap()[b]] += 1;
            assert_eq!(r.morse_counts, expected, "{name} without {a} -- {b}");
            assert_eq!(r.homology, base.homology);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn searched_matchings_satisfy_the_theory(seed in any::<u64>(), dim in 2usize..4, search_seed in any::<u64>()) {
        let x = random_face_poset(seed, dim, 10);
        let m = greedy_matching(&x, &admissible(search_seed));
        let check = morse_check(&x, &m);
        prop_assert!(check.is_admissible_morse());
        let f = morse_function(&x, &m).unwrap();
        prop_assert!(f.is_morse_function(&x));
        prop_assert_eq!(f.critical_points(&x), check.critical.clone());
        let r = morse_complex(&x, &m).unwrap();
        prop_assert_eq!(&r.homology, &poset_homology(&x, true));
        let ineq = morse_inequalities(&x, &m).unwrap();
        prop_assert!(ineq.weak_holds && ineq.strong_holds && ineq.euler_holds);
        for p in 0..=r.flow.top_degree() {
            prop_assert_eq!(r.flow.phi[p].mul(&r.flow.phi_stable[p]), r.flow.phi_stable[p].clone());
        }
    }

    #[test]
    fn subsets_of_morse_matchings_are_morse(seed in any::<u64>(), mask in any::<u64>()) {
        let x = random_face_poset(seed, 2, 9);
        let m = greedy_matching(&x, &SearchPolicy { rng_seed: seed, ..SearchPolicy::default() });
        let subset = Matching::new(
            m.pairs().iter().enumerate().filter(|(i, _)| mask & (1 << (i % 64)) != 0).map(|(_, p)| p.clone()),
        );
        prop_assert!(morse_check(&x, &subset).is_morse());
    }

    #[test]
    fn generator_flips_keep_homology(seed in any::<u64>(), pick in any::<usize>()) {
        let x = random_face_poset(seed, 2, 8);
        let mut table = GeneratorTable::new(&x).unwrap();
        let h = homology(&posetmorse::cellular::cellular_chain_complex_with(&x, &table, true).unwrap()).unwrap();
        table.flip(pick % x.len());
        let flipped = posetmorse::cellular::cellular_chain_complex_with(&x, &table, true).unwrap();
        prop_assert_eq!(homology(&flipped).unwrap(), h);
    }
}
