use std::path::PathBuf;
use std::process::{Command, Output};

fn hgx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgx")).args(args).env_remove("HGX_THREADS").output().unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn taft_suite_passes() {
    let o = hgx(&["suite", "taft", "--n", "2", "--s", "1", "--alpha-m", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn broken_alpha_fails_with_witness() {
    let out = tmp("broken.json");
    let o = hgx(&["suite", "taft", "--n", "2", "--alpha-m", "1", "--break", "alpha-order", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let r = hgx::report::from_json(&std::fs::read_to_string(out).unwrap()).unwrap();
    let failures: Vec<_> = r.failures().collect();
    assert!(!failures.is_empty());
    assert!(failures.iter().all(|e| e.witness.as_ref().is_some_and(|w| !w.residue.is_empty())));
}

#[test]
fn flip_passes() {
    assert_eq!(code(&hgx(&["check-twisting", "--input", &data("flip.json"), "--degree", "3"])), 0);
}

#[test]
fn file_commands_pass_on_shipped_data() {
    let (bundle, map, twist, sigma) = (data("taft2_bundle.json"), data("cyclic2_map.json"), data("alpha1_twist.json"), data("taft2_sigma.json"));
    let tau = tmp("tau.json");
    let tau = tau.to_str().unwrap();
    assert_eq!(code(&hgx(&["pushforward", "--input", &bundle, "--map", &map, "--twist", &twist])), 0);
    assert_eq!(code(&hgx(&["bialgebroid", "--input", &bundle, "--map", &map, "--twist", &twist, "--save-tau", tau])), 0);
    assert_eq!(code(&hgx(&["bialgebroid", "--input", &bundle, "--load-tau", tau])), 0);
    assert_eq!(code(&hgx(&["deform", "--input", &bundle, "--cocycle", &sigma])), 0);
}

#[test]
fn reports_are_byte_reproducible() {
    let run = |name: &str| {
        let out = tmp(name);
        let o = hgx(&["suite", "cocycle", "--seed", "7", "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        (o.stdout, std::fs::read(out).unwrap())
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn timing_is_opt_in() {
    let out = tmp("timed.json");
    hgx(&["suite", "taft", "--timing", "--out", out.to_str().unwrap()]);
    assert!(std::fs::read_to_string(&out).unwrap().contains("timing_ms"));
    hgx(&["suite", "taft", "--out", out.to_str().unwrap()]);
    assert!(!std::fs::read_to_string(&out).unwrap().contains("timing_ms"));
}

#[test]
fn malformed_input_exits_64_naming_file_and_line() {
    let flip = std::fs::read_to_string(data("flip.json")).unwrap();
    let truncated = tmp("truncated.json");
    std::fs::write(&truncated, &flip[..flip.len() / 2]).unwrap();
    let o = hgx(&["check-twisting", "--input", truncated.to_str().unwrap()]);
    assert_eq!(code(&o), 64);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("truncated.json:"), "{err}");

    let bad = tmp("badgen.json");
    let text = flip.replace("\"X | c\"", "\"Y | c\"");
    let line = text.lines().position(|l| l.contains("\"Y | c\"")).unwrap() + 1;
    std::fs::write(&bad, text).unwrap();
    let o = hgx(&["check-twisting", "--input", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 64);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(&format!("badgen.json:{line}:")), "{err}");
    assert!(err.contains("unknown generator `Y`"), "{err}");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&hgx(&["suite", "nonsense"])), 64);
    assert_eq!(code(&hgx(&["suite", "taft", "--n", "2", "--alpha-m", "2"])), 64);
    assert_eq!(code(&hgx(&["frobnicate"])), 64);
    assert_eq!(code(&hgx(&["--help"])), 0);
}

#[test]
fn thread_cap_is_validated() {
    let run = |v: &str| Command::new(env!("CARGO_BIN_EXE_hgx")).args(["suite", "taft"]).env("HGX_THREADS", v).output().unwrap();
    assert_eq!(code(&run("4")), 0);
    assert_eq!(code(&run("zero")), 64);
}
