use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

use posetmorse::fixtures;
use posetmorse::flow::morse_inequalities;
use posetmorse::homology::poset_homology;
use posetmorse::matching::morse_check;
use posetmorse::search::{greedy_matching, Ordering, SearchPolicy};

fn fixture(file: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    dir.join(file).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_posetmorse"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = run(args);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout} {stderr}"));
    (code, v)
}

#[test]
fn morse_check_on_fig1x() {
    let (code, v) = run_json(&["morse", "check", &fixture("fig1x.poset"), &fixture("fig2.match")]);
    assert_eq!(code, 0);
    assert_eq!(v["is_acyclic"], json!(true));
    assert_eq!(v["critical"], json!(["T2", "c3"]));
}

#[test]
fn fig3x_homology_vanishes() {
    let (code, v) = run_json(&["poset", "homology", &fixture("fig3x.poset")]);
    assert_eq!(code, 0);
    let groups = v["homology"]["groups"].as_object().unwrap();
    assert!(!groups.is_empty());
    for g in groups.values() {
        assert_eq!(g, &json!({ "betti": 0, "torsion": [] }));
    }
}

#[test]
fn fixtures_run_passes_all() {
    let (code, v) = run_json(&["fixtures", "run"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"], json!("4/4 fixtures pass"));
}

#[test]
fn results_match_library_calls() {
    let x = fixtures::load("fig4x").unwrap().poset;
    let m = fixtures::load("fig4x").unwrap().matching.unwrap();
    let (_, v) = run_json(&["morse", "check", &fixture("fig4x.poset"), &fixture("fig4.match")]);
    assert_eq!(v, json!(morse_check(&x, &m)));
    let (_, v) = run_json(&["morse", "inequalities", &fixture("fig4x.poset"), &fixture("fig4.match")]);
    assert_eq!(v, json!(morse_inequalities(&x, &m).unwrap()));
    let (_, v) = run_json(&["poset", "homology", "--unreduced", &fixture("fig4x.poset")]);
    assert_eq!(v["homology"], poset_homology(&x, false).to_json());

    let sq2 = fixtures::load("sq2").unwrap().poset;
    let policy = SearchPolicy {
        ordering: Ordering::MaxDegreeFirst,
        restarts: 5,
        rng_seed: 9,
        admissibility_filter: true,
    };
    let expected = posetmorse::io::serialize_matching(&greedy_matching(&sq2, &policy));
    let (code, v) = run_json(&[
        "morse", "search", &fixture("sq2.poset"),
        "--seed", "9", "--restarts", "5", "--ordering", "maxdeg", "--admissible-only",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["matching"], json!(expected));
}

#[test]
fn output_is_stable_across_runs() {
    let args = ["morse", "complex", "--emit-morse", "--emit-chain", &fixture("sq2.poset"), &fixture("sq2.match")];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    for _ in 0..3 {
        assert_eq!(run(&args).1, first);
    }
    let (_, single, _) = run(&[&["--threads", "1"][..], &args].concat());
    assert_eq!(single, first);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["morse_counts"], json!([1, 0, 1]));
    assert_eq!(v["inequalities"]["perfect"], json!(true));
    assert!(v["chain_complex"]["degrees"]["2"]["differential"]["entries"].is_array());
}

#[test]
fn exit_codes() {
    // Not a Morse matching: report printed, exit 1.
    let dir = std::env::temp_dir().join(format!("posetmorse-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.match");
    std::fs::write(&bad, "p -- A\np -- B\n").unwrap();
    let (code, v) = run_json(&["morse", "check", &fixture("fig4x.poset"), bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["is_matching"], json!(false));

    // Library rejection: error kind on stdout, exit 1.
    let (code, v) = run_json(&["morse", "complex", &fixture("fig1x.poset"), &fixture("fig2.match")]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], json!("NotCellular"));

    let dup = dir.join("dup.poset");
    std::fs::write(&dup, "a < b\na < b\n").unwrap();
    let (code, v) = run_json(&["poset", "validate", dup.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], json!("SyntaxError"));
    assert!(v["message"].as_str().unwrap().contains("line 2"));

    // Usage errors exit 2 and list the grammar.
    let (code, _, stderr) = run(&["poset", "frobnicate"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("Usage"));
    let (code, _, _) = run(&["morse", "check", "/no/such/file", "/no/such/match"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["morse", "search", &fixture("sq2.poset"), "--ordering", "random"]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn complex_commands() {
    let dir = std::env::temp_dir().join(format!("posetmorse-cx-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("circle.cx");
    std::fs::write(&path, "# hollow triangle\na b\nb c\na c\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = run_json(&["complex", "homology", p]);
    assert_eq!(code, 0);
    assert_eq!(v["homology"]["groups"]["1"]["betti"], json!(1));
    for alias in ["faceposet", "facepose"] {
        let (code, v) = run_json(&["complex", alias, p]);
        assert_eq!(code, 0);
        assert_eq!(v["poset"]["elements"].as_array().unwrap().len(), 6);
    }
    let (_, v) = run_json(&["complex", "order", "--emit-chain", &fixture("fig4x.poset")]);
    assert_eq!(v["complex"]["dimension"], json!(2));
    assert_eq!(v["chain_complex"]["augmented"], json!(true));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn poset_commands() {
    let (_, v) = run_json(&["poset", "validate", &fixture("fig1x.poset")]);
    assert_eq!((v["elements"].clone(), v["covers"].clone()), (json!(10), json!(16)));
    assert_eq!(v["classification"]["graded"], json!(false));
    let (_, v) = run_json(&["poset", "algebra", "skeleton", "--degree", "1", &fixture("fig4x.poset")]);
    assert_eq!(v["poset"]["elements"].as_array().unwrap().len(), 6);
    let (code, v) = run_json(&["poset", "algebra", "skeleton", &fixture("fig1x.poset")]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], json!("NotGraded"));
    let (_, v) = run_json(&["poset", "algebra", "join", &fixture("fig4x.poset"), &fixture("sq2.poset")]);
    assert_eq!(v["poset"]["elements"].as_array().unwrap().len(), 15);
    let (_, v) = run_json(&["poset", "reduce", &fixture("fig3x.poset")]);
    assert!(!v["removed"].as_array().unwrap().is_empty());
    let (code, text, _) = run(&["--pretty", "fixtures", "show", "fig4.match"]);
    assert_eq!(code, 0);
    assert!(text.contains("A -- T"));
}
