//! End-to-end runs of the binary: output shape, exit-code discipline, and
//! determinism of the JSON format.

use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gpairs"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn tmpfile(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("gpairs-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p
}

#[test]
fn h1_of_a_corpus_name() {
    let (code, out, _) = run(&["h1", "weeks"]);
    assert_eq!(code, 0);
    assert!(out.contains("Z/5 x Z/5"), "{out}");
}

#[test]
fn h1_of_a_file() {
    let p = tmpfile("f2.grp", "gens a b\n");
    let (code, out, _) = run(&["h1", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("Z^2"), "{out}");
}

#[test]
fn h1_rejects_malformed_input() {
    let p = tmpfile("bad.grp", "gens a b\nrel c\n");
    let (code, _, err) = run(&["h1", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("error"), "{err}");
}

#[test]
fn h1_rejects_unknown_names() {
    let (code, _, err) = run(&["h1", "no-such-thing"]);
    assert_eq!(code, 2);
    assert!(err.contains("corpus list"), "{err}");
}

#[test]
fn h1_json_shape() {
    let (code, out, _) = run(&["h1", "gamma4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["display"], "Z/3 x Z/15");
    assert_eq!(v["h1"]["free_rank"], 0);
}

#[test]
fn certify_pt_exit_codes() {
    let full = tmpfile("s_full.grp", "gens a b\nrel a\nrel b\n");
    let control = tmpfile("s_control.grp", "gens a b\nrel b\nrel a^2\n");

    let (code, out, _) = run(&["certify-pt", "free(2)", full.to_str().unwrap(), "--level", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("VALID"), "{out}");

    let (code, out, _) =
        run(&["certify-pt", "free(2)", control.to_str().unwrap(), "--level", "2"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("INVALID"), "{out}");

    let (code, _, _) =
        run(&["certify-pt", "free(2)", control.to_str().unwrap(), "--level", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn certify_pt_starved_budget_is_not_a_refutation() {
    let (code, _, err) =
        run(&["certify-pt", "free(4)", "higman", "--level", "8", "--max-nodes", "100"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn certify_pt_rejects_mismatched_generators() {
    let s = tmpfile("s_wrong_gens.grp", "gens x y\nrel x\n");
    let (code, _, err) = run(&["certify-pt", "free(2)", s.to_str().unwrap(), "--level", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("do not match"), "{err}");
}

#[test]
fn recipe_pass_unknown_and_budget() {
    let (code, out, _) = run(&["recipe", "weeks-h1"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS"), "{out}");

    let (code, _, _) = run(&["recipe", "nope"]);
    assert_eq!(code, 2);

    let (code, _, err) = run(&["recipe", "higman-cert", "--max-nodes", "10"]);
    assert_eq!(code, 3);
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn recipe_list_names_them_all() {
    let (code, out, _) = run(&["recipe", "--list"]);
    assert_eq!(code, 0);
    for name in ["weeks-h1", "pt-f4-higman", "triangle-spectra"] {
        assert!(out.contains(name), "{out}");
    }
}

#[test]
fn nfq_exit_codes() {
    let (code, out, _) = run(&["nfq", "higman", "--level", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("valid"), "{out}");

    let (code, out, _) = run(&["nfq", "triangle(2,3,5)", "--level", "5"]);
    assert_eq!(code, 1);
    assert!(out.contains("index 5"), "{out}");

    let (code, _, _) = run(&["nfq", "higman", "--level", "8", "--max-nodes", "10"]);
    assert_eq!(code, 3);
}

#[test]
fn spectra_equal_exit_codes() {
    let (code, out, _) = run(&["spectra-equal", "weeks", "weeks", "--level", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("agree"), "{out}");

    let (code, out, _) =
        run(&["spectra-equal", "triangle(2,3,3)", "triangle(2,3,5)", "--level", "12"]);
    assert_eq!(code, 1);
    assert!(out.contains("differ"), "{out}");
}

#[test]
fn spectrum_json_is_deterministic() {
    let args = ["spectrum", "triangle(2,3,3)", "--level", "12", "--format", "json"];
    let (c1, o1, _) = run(&args);
    let (c2, o2, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(o1, o2);
    let v: serde_json::Value = serde_json::from_str(&o1).unwrap();
    assert_eq!(v["complete"], true);
    assert_eq!(v["quotients"].as_array().unwrap().len(), 3);
}

#[test]
fn corpus_listing_and_show_roundtrip() {
    let (code, out, _) = run(&["corpus", "list"]);
    assert_eq!(code, 0);
    assert!(out.contains("weeks"), "{out}");
    assert!(out.contains("triangle(p,q,r)"), "{out}");

    // shown text is a valid input file again (comments included)
    let (code, out, _) = run(&["corpus", "show", "weeks"]);
    assert_eq!(code, 0);
    let p = tmpfile("weeks_shown.grp", &out);
    let (code, out, _) = run(&["h1", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("Z/5 x Z/5"), "{out}");
}

#[test]
fn tietze_output_feeds_back_in() {
    let (code, out, _) = run(&["tietze", "weeks", "--seed", "3", "--moves", "25"]);
    assert_eq!(code, 0);
    let p = tmpfile("weeks_tietze.grp", &out);
    let (code, out, _) = run(&["h1", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("Z/5 x Z/5"), "{out}");
}

#[test]
fn rs_output_feeds_back_in() {
    let (code, out, _) =
        run(&["rs", "free(2)", "-w", "a", "-w", "b a b^-1", "-w", "b^2"]);
    assert_eq!(code, 0);
    let p = tmpfile("f2_index2.grp", &out);
    let (code, out, _) = run(&["h1", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("Z^3"), "{out}");
}

#[test]
fn five_term_normality_is_input_validation() {
    let (code, out, _) =
        run(&["five-term", "free(2)", "-w", "b", "-w", "a^2", "-w", "a b a^-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("five-term: PASS"), "{out}");

    let (code, _, err) = run(&["five-term", "triangle(2,3,3)", "-w", "x"]);
    assert_eq!(code, 2);
    assert!(err.contains("not normal"), "{err}");
}

#[test]
fn incomplete_enumeration_exhausts_the_budget_code() {
    let (code, out, _) = run(&["cosets", "higman", "--max-cosets", "500"]);
    assert_eq!(code, 3);
    assert!(out.contains("incomplete"), "{out}");
}
