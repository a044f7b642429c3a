use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lambda-skeletons"));
    cmd.env_remove("LAMBDA_SKELETONS_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

fn stderr(o: &Output) -> &str {
    std::str::from_utf8(&o.stderr).unwrap()
}

#[test]
fn enumerate_structured_closable() {
    let o = run(&["enumerate", "--family", "closable", "--repr", "structured", "--size", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "cl(l(l(v)))\ncl(a(v,v))\n");
}

#[test]
fn counts_match_enumeration_lengths() {
    for (family, n) in [("motzkin", 7), ("closable", 9), ("ucs", 10)] {
        let size = n.to_string();
        let count = run(&["count", "--family", family, "--size", &size]);
        let listed = run(&["enumerate", "--family", family, "--size", &size]);
        assert_eq!(
            stdout(&count).trim().parse::<usize>().unwrap(),
            stdout(&listed).lines().count(),
            "{family} at {n}"
        );
    }
}

#[test]
fn count_json_shape() {
    let o = run(&["count", "--family", "ucs", "--size", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!([{"count": 2, "family": "ucs", "size": 6}]));
}

#[test]
fn convert_reads_stdin_lines() {
    let o = run_stdin(&["convert", "--family", "ucs"], "l(a(v,v))\na(l(v),l(v))\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "L(B(V,V))\nA(L(V),L(V))\n");
    let back = run_stdin(&["convert", "--family", "ucs", "--repr", "structured"], stdout(&o));
    assert_eq!(stdout(&back), "l(a(v,v))\na(l(v),l(v))\n");
}

#[test]
fn convert_failure_names_the_path() {
    let o = run(&["convert", "--family", "ucs", "--term", "l(a(l(v),v))"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotUcs"), "{}", stderr(&o));
    assert!(stderr(&o).contains("/body/left"), "{}", stderr(&o));
}

#[test]
fn lmt_converts_at_minimal_openness() {
    let o = run(&["convert", "--family", "lmt", "--term", "lam(app(var(1),lam(var(1))))"]);
    assert_eq!(stdout(&o), "open(1,lam(app(var(1),lam(var(1)))))\n");
    let o = run(&["convert", "--family", "open", "--term", "var(3)", "-m", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotOpen"));
}

#[test]
fn analyze_reports_labelings() {
    let o = run(&["analyze", "--family", "motzkin", "--term", "l(a(v,l(v)))", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let entry = &v[0];
    assert_eq!(entry["is_closable"], true);
    assert_eq!(entry["is_ucs"], false);
    assert_eq!(entry["count_labelings"], "2");
    assert_eq!(
        entry["labelings"],
        serde_json::json!(["lam(app(var(0),lam(var(0))))", "lam(app(var(0),lam(var(1))))"])
    );
}

#[test]
fn sampling_is_reproducible_and_seed_sensitive() {
    let args = |seed: &'static str| ["sample", "--family", "closable", "--seed", seed, "--samples", "40"];
    let a = run(&args("5"));
    let b = run(&args("5"));
    let c = run(&args("6"));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let via_env = bin()
        .args(["sample", "--family", "closable", "--samples", "40"])
        .env("LAMBDA_SKELETONS_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(a.stdout, via_env.stdout);
}

#[test]
fn sampled_terms_belong_to_their_family() {
    for strategy in ["derived", "filtered", "structural", "converted"] {
        let o = run(&[
            "sample", "--family", "ucs", "--seed", "11", "--samples", "200", "--strategy", strategy,
        ]);
        assert_eq!(o.status.code(), Some(0), "{strategy}: {}", stderr(&o));
        for line in stdout(&o).lines() {
            let t: lambda_skeletons::Motzkin = line.parse().unwrap();
            assert!(lambda_skeletons::motzkin::is_ucs(&t), "{strategy}: {line}");
        }
    }
}

#[test]
fn filtered_sampling_reports_stats() {
    let o = run(&[
        "sample", "--family", "closable", "--seed", "1", "--samples", "5", "--strategy", "filtered",
        "--filter-max", "0", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for entry in v.as_array().unwrap() {
        assert_eq!(entry["exhausted"], true);
        assert_eq!(entry["term"], "l(v)");
    }
}

#[test]
fn check_json_is_byte_reproducible() {
    let args = ["check", "--suite", "generators", "--samples", "300", "--seed", "9", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_flag_writes_file() {
    let path = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli_output.txt");
    let o = run(&["count", "--family", "motzkin", "--size", "8", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "127\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["count", "--family", "nope", "--size", "3"][..],
        &["count", "--family", "closable", "--size", "1"],
        &["enumerate", "--family", "lmt", "--size", "3"],
        &["enumerate", "--family", "open", "--size", "3"],
        &["check", "--suite", "nope"],
        &[],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
