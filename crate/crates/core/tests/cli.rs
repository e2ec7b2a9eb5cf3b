use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn tmx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmx"))
        .args(args)
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_lemmas_on_scalars_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = tmx(&[
        "verify-lemmas",
        "--trials",
        "1",
        "--dim-max",
        "1",
        "--p-max",
        "4",
        "--seed",
        "0",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["lemmas"].as_array().unwrap().len(), 7);
    assert_eq!(report["manifest"]["command"], "verify-lemmas");
    assert_eq!(report["manifest"]["seed"], 0);
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = blocker.join("report.json");
    let o = tmx(&[
        "verify-lemmas",
        "--trials",
        "1",
        "--dim-max",
        "1",
        "--p-max",
        "2",
        "--seed",
        "0",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));

    let o = tmx(&[
        "corollary",
        "--p-max",
        "2",
        "--n-max",
        "2",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = tmx(&[
        "search",
        "--n",
        "1",
        "--p",
        "2",
        "--restarts",
        "1",
        "--steps",
        "1",
        "--seed",
        "0",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn randomized_commands_require_a_seed() {
    let o = tmx(&[
        "verify-lemmas",
        "--trials",
        "1",
        "--dim-max",
        "1",
        "--p-max",
        "2",
        "--out",
        "x.json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--seed"));
}

#[test]
fn extremal_prints_value_and_trace() {
    let o = tmx(&[
        "extremal", "--n", "2", "--L", "2", "--alpha", "0.5", "--p", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("theorem_max_value = 8\n"), "{text}");
    assert!(text.contains("step 1:"));

    let o = tmx(&[
        "extremal", "--n", "2", "--L", "1", "--alpha", "1.5", "--p", "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = tmx(&[
        "extremal", "--n", "2", "--L", "1", "--alpha", "0.5", "--p", "31",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn extremal_oracle_matches_for_three_members() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("extremal.json");
    let o = tmx(&[
        "extremal",
        "--n",
        "3",
        "--L",
        "1,2,0.5",
        "--alpha",
        "0.2,0.5,0.9",
        "--p",
        "6",
        "--oracle",
        "--seed",
        "3",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.matches("  step ").count(), 3);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let dp = report["bernoulli_moment"].as_f64().unwrap();
    let oracle = report["oracle_moment"].as_f64().unwrap();
    assert!((dp - oracle).abs() <= 1e-12 * oracle);
    assert_eq!(report["reduction_consistent"], true);
}

#[test]
fn corollary_smallest_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let o = tmx(&[
        "corollary",
        "--p-max",
        "2",
        "--n-max",
        "2",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(&out).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["n", "p", "value", "ratio"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][2].parse::<f64>().unwrap(), 1.5);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("c.csv.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["csv_schema"], "tmx-corollary/v1");

    let first = fs::read(&out).unwrap();
    let o = tmx(&[
        "corollary",
        "--p-max",
        "2",
        "--n-max",
        "2",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(&out).unwrap(), first);
}

#[test]
fn search_writes_table_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = tmx(&[
            "search",
            "--n",
            "1..2",
            "--N",
            "1,2",
            "--p",
            "2..3",
            "--L",
            "1,2",
            "--alpha",
            "0.3,0.8",
            "--restarts",
            "3",
            "--steps",
            "50",
            "--sampler-seeds",
            "5",
            "--seed",
            "4",
            "--out",
            path_str(&out),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        fs::read(&out).unwrap()
    };
    let a = run("a.csv");
    let b = run("b.csv");
    assert_eq!(a, b);
    let mut reader = csv::Reader::from_reader(a.as_slice());
    assert_eq!(
        reader.headers().unwrap(),
        vec![
            "n",
            "N",
            "p",
            "alphas",
            "Ls",
            "best_value",
            "theorem_value",
            "gap",
            "seed",
            "status"
        ]
    );
    let rows: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| &r[9] == "ok"));
    assert_eq!(
        (&rows[2][1], &rows[2][3], &rows[2][4]),
        ("2", "0.3;0.8", "1;2")
    );
}

#[test]
fn thread_cap_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: Option<&str>| {
        let out = dir.path().join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_tmx"));
        cmd.args([
            "verify-lemmas",
            "--trials",
            "50",
            "--dim-max",
            "3",
            "--p-max",
            "5",
            "--seed",
            "9",
            "--out",
            path_str(&out),
        ]);
        cmd.env_remove("SOURCE_DATE_EPOCH");
        match threads {
            Some(t) => cmd.env("TMX_THREADS", t),
            None => cmd.env_remove("TMX_THREADS"),
        };
        let o = cmd.output().unwrap();
        (o.status.code(), fs::read(&out).ok())
    };
    let (code, one) = run("one.json", Some("1"));
    assert_eq!(code, Some(0));
    let (_, default) = run("default.json", None);
    let strip = |b: Vec<u8>| {
        let mut v: serde_json::Value = serde_json::from_slice(&b).unwrap();
        v["manifest"]["outputs"] = serde_json::Value::Null;
        v["manifest"]["parameters"]["out"] = serde_json::Value::Null;
        v
    };
    assert_eq!(strip(one.unwrap()), strip(default.unwrap()));
    let (code, _) = run("bad.json", Some("zero"));
    assert_eq!(code, Some(1));
}
