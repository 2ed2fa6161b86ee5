use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dioph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dioph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

const PAPER: [&str; 6] = [
    "27900/17479",
    "471352/112365",
    "261770/17479",
    "185535272/419265",
    "63737828/526368735",
    "79554420/408480247",
];

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&dioph(&["verify", "1,3,8,120"])), 0);
    let o = dioph(&["verify", "1,2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("a1·a2 + 1 = 3  NOT A SQUARE"));
    assert_eq!(code(&dioph(&["verify", "1,3,x"])), 2);
    assert_eq!(code(&dioph(&["verify", "1,0.5"])), 2);
    assert_eq!(code(&dioph(&["verify", "1,3/0"])), 2);
    assert_eq!(code(&dioph(&["verify", "1,3,3"])), 1);
    assert_eq!(code(&dioph(&["verify", "-1/4,1"])), 1);
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(code(&dioph(&["verify", "--colour", "1,3"])), 2);
    assert_eq!(code(&dioph(&["family", "--u", "1.5"])), 2);
    assert_eq!(code(&dioph(&["curve", "--u", "-1", "--bound", "0"])), 2);
    assert_eq!(code(&dioph(&["triple", "--params", "1,2"])), 2);
    assert_eq!(code(&dioph(&["bogus"])), 2);
}

#[test]
fn verify_records_golden() {
    let o = dioph(&["--format", "records", "verify", "1,3,8,120"]);
    assert_eq!(stdout(&o), golden("verify_fermat.jsonl"));
}

#[test]
fn family_sextuple_at_minus_one() {
    let o = dioph(&["family", "--mode", "sextuple", "--u", "-1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), golden("family_sextuple_u_minus_1.txt"));
    let o = dioph(&[
        "--format", "records", "family", "--mode", "sextuple", "--u", "-1",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text, golden("family_sextuple_u_minus_1.jsonl"));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let elements: Vec<&str> = v["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_str().unwrap())
        .collect();
    assert_eq!(elements, PAPER);
    assert_eq!(v["tag"], "VALID");
}

#[test]
fn family_pole_is_degenerate() {
    let o = dioph(&["family", "--mode", "sextuple", "--u", "4"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("u-4 = 0"));
}

#[test]
fn quintuple_matches_sextuple_prefix() {
    let o = dioph(&[
        "--format",
        "records",
        "family",
        "--mode",
        "quintuple",
        "--u",
        "-1",
        "--t1",
        "-225/532",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let elements: Vec<&str> = v["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_str().unwrap())
        .collect();
    assert_eq!(elements, PAPER[..5]);
}

#[test]
fn curve_combinations() {
    let o = dioph(&["--format", "records", "curve", "--u", "-1", "--bound", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text, golden("curve_u_minus_1_bound_2.jsonl"));
    let records: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 25);
    let at = |m: i64, n: i64| records.iter().find(|r| r["m"] == m && r["n"] == n).unwrap();
    let two = at(0, 2);
    assert_eq!(two["tag"], "VALID");
    let hit = two["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["t1"] == "-225/532")
        .unwrap();
    let elements: Vec<&str> = hit["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_str().unwrap())
        .collect();
    assert_eq!(elements, PAPER);

    let o = dioph(&["curve", "--u", "-1", "--bound", "1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("(m, n) = (0, 1): DEGENERATE"));
    assert!(text.contains("a6 = 0"));
    assert!(text.lines().last().unwrap().starts_with("VALID "));
}

#[test]
fn curve_pole_exits_degenerate() {
    assert_eq!(code(&dioph(&["curve", "--u", "4", "--bound", "1"])), 3);
}

#[test]
fn classify_files() {
    let dir = tempfile::tempdir().unwrap();
    let gibbs = dir.path().join("gibbs.txt");
    fs::write(&gibbs, "11/192,35/192,155/27,512/27,1235/48,180873/16\n").unwrap();
    let o = dioph(&["--format", "records", "classify", gibbs.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(
        v["profile"]["regular_quadruples"],
        serde_json::json!([[0, 1, 3, 4], [2, 3, 4, 5]])
    );
    assert_eq!(
        v["profile"]["regular_quintuples"][0]["indices"],
        serde_json::json!([0, 1, 2, 3, 5])
    );

    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let o = dioph(&["classify", empty.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1,3\n1,y\n").unwrap();
    assert_eq!(code(&dioph(&["classify", bad.to_str().unwrap()])), 2);
    assert_eq!(
        code(&dioph(&[
            "classify",
            dir.path().join("missing").to_str().unwrap()
        ])),
        2
    );
}

#[test]
fn triple_subcommand() {
    let o = dioph(&["--format", "records", "triple", "--params", "1,-5/6,3"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["triple"], serde_json::json!(["6/7", "20/7", "12/7"]));
    assert_eq!(v["regular_pair"], serde_json::json!(["28", "-120/343"]));
    // t1·t2·t3 = 1
    assert_eq!(code(&dioph(&["triple", "--params", "1,1,1"])), 3);
}

#[test]
fn search_emits_one_record_per_grid_point() {
    let o = dioph(&[
        "--format",
        "records",
        "search",
        "--mode",
        "family",
        "--height-bound",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text
        .lines()
        .next()
        .unwrap()
        .contains("\"tag\":\"DEGENERATE\""));
}

#[test]
fn search_to_file_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("runs.jsonl");
    let out_s = out.to_str().unwrap();
    let args = [
        "search",
        "--mode",
        "family",
        "--height-bound",
        "3",
        "--out",
        out_s,
    ];
    assert_eq!(code(&dioph(&args)), 0);
    let full = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = full.lines().collect();

    // interrupted run: three complete lines and a torn fourth
    let torn = format!("{}\n{}", lines[..3].join("\n"), &lines[3][..10]);
    fs::write(&out, torn).unwrap();
    let o = dioph(&args);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("3 already present"));
    assert_eq!(fs::read_to_string(&out).unwrap(), full);

    // rerun is a no-op
    assert_eq!(code(&dioph(&args)), 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), full);
}

#[test]
fn search_job_file() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.txt");
    fs::write(&job, "job_id = tri\npipeline = triple\nbound = 1\n").unwrap();
    let o = dioph(&[
        "--format",
        "records",
        "search",
        "--job",
        job.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 8);
    fs::write(&job, "pipeline = nonsense\nbound = 1\n").unwrap();
    assert_eq!(code(&dioph(&["search", "--job", job.to_str().unwrap()])), 2);
}
