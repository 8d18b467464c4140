mod common;

use std::process::{Command, Output};

use nm_elasticity::profile::ElasticityProfile;
use nm_elasticity::NumericalMonoid;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nm-elasticity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn circles(svg: &str) -> Vec<(f64, f64)> {
    svg.lines()
        .filter(|l| l.starts_with("<circle"))
        .map(|l| {
            let attr = |name: &str| -> f64 {
                let key = format!("{name}=\"");
                l.split(&key)
                    .nth(1)
                    .unwrap()
                    .split('"')
                    .next()
                    .unwrap()
                    .parse()
                    .unwrap()
            };
            (attr("cx"), attr("cy"))
        })
        .collect()
}

#[test]
fn stats_rows() {
    let text = stdout(&["stats", "3,5,7", "--from", "0", "--to", "10"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,max_len,min_len,rho_num,rho_den");
    let ns: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ns, ["0", "3", "5", "6", "7", "8", "9", "10"]);
    assert_eq!(lines.last().unwrap(), &"10,2,2,1,1");

    assert_eq!(
        stdout(&["stats", "3,5,7", "--from", "4", "--to", "4"]),
        "n,max_len,min_len,rho_num,rho_den\n"
    );
    assert_eq!(
        stdout(&["stats", "7,12,17,22", "--from", "66", "--to", "66"])
            .lines()
            .nth(1),
        Some("66,8,3,8,3")
    );
}

#[test]
fn stats_rows_match_oracle_and_are_reduced() {
    let gens = [6u64, 10, 13, 14];
    let text = stdout(&["stats", "6,10,13,14", "--from", "1", "--to", "400"]);
    let oracle = common::dp_lengths(&gens, 400);
    let rows: Vec<Vec<u64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    let members: Vec<u64> = (1..=400)
        .filter(|&n| oracle[n as usize].is_some())
        .collect();
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), members);
    for row in rows {
        let (hi, lo) = oracle[row[0] as usize].unwrap();
        assert_eq!((row[1], row[2]), (hi, lo));
        assert_eq!((row[3], row[4]), common::reduced(hi, lo));
    }
}

#[test]
fn stats_json_and_default_range() {
    let text = stdout(&[
        "stats", "3,5", "--format", "json", "--from", "8", "--to", "10",
    ]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = value.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["n"], 10);
    assert_eq!(rows[2]["max_len"], 2);
    assert!(!text.contains('.'));

    // default upper end is base + 10 * period = 15 + 150
    let text = stdout(&["stats", "3,5"]);
    assert_eq!(text.lines().last().unwrap().split(',').next(), Some("165"));
}

#[test]
fn output_file_and_errors() {
    let dir = std::env::temp_dir().join(format!("nm-elasticity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("stats.csv");
    let p = path.to_str().unwrap();
    assert_eq!(code(&["stats", "3,5,7", "--to", "10", "--output", p]), 0);
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        stdout(&["stats", "3,5,7", "--to", "10"])
    );
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(code(&["stats", "4,6"]), 2);
    assert_eq!(code(&["stats", "0,3"]), 2);
    assert_eq!(code(&["stats", "3,x"]), 2);
    assert_eq!(code(&["stats", "3,5", "--format", "svg"]), 2);
    assert_eq!(code(&["plot", "3,5", "--format", "csv"]), 2);
    assert_eq!(
        code(&[
            "stats",
            "3,5",
            "--to",
            "5",
            "--output",
            "/nonexistent-dir/x.csv"
        ]),
        3
    );
}

#[test]
fn plots() {
    let svg = stdout(&["plot", "1", "--kind", "rho", "--to", "10"]);
    let points = circles(&svg);
    assert_eq!(points.len(), 11);
    assert!(points.iter().all(|p| p.1 == points[0].1));
    assert!(svg.contains(r#"viewBox="0 0 800 600""#));
    assert!(points.iter().all(|_| svg.contains(r#"r="2""#)));

    let svg = stdout(&["plot", "7,12,17,22", "--kind", "rho", "--to", "700"]);
    let members = (0..=700)
        .filter(|&n| NumericalMonoid::new(&[7, 12, 17, 22]).unwrap().contains(n))
        .count();
    assert_eq!(circles(&svg).len(), members);
    assert_eq!(
        svg,
        stdout(&["plot", "7,12,17,22", "--kind", "rho", "--to", "700"])
    );
}

/// Past the quasilinearity threshold the max-length plot is `g_1` lines of
/// slope `1/g_1`, one per residue class.
#[test]
fn maxlen_plot_lines() {
    let svg = stdout(&["plot", "5,16,17,18,19", "--kind", "maxlen", "--to", "700"]);
    let points = circles(&svg);
    let oracle = common::dp_lengths(&[5, 16, 17, 18, 19], 700);
    let ns: Vec<u64> = (0..=700)
        .filter(|&n| oracle[n as usize].is_some())
        .collect();
    assert_eq!(points.len(), ns.len());
    for w in ns.windows(2).filter(|w| w[0] > 76 && w[1] == w[0] + 5) {
        let (a, b) = (
            oracle[w[0] as usize].unwrap().0,
            oracle[w[1] as usize].unwrap().0,
        );
        assert_eq!(b, a + 1);
    }
    let lines: std::collections::BTreeSet<i64> = ns
        .iter()
        .filter(|&&n| n > 76)
        .map(|&n| 5 * oracle[n as usize].unwrap().0 as i64 - n as i64)
        .collect();
    assert_eq!(lines.len(), 5);
}

#[test]
fn recover() {
    assert_eq!(stdout(&["recover", "7,12,17,22"]), "d=5 a/k=7/3 sup=22/7\n");
    assert_eq!(stdout(&["recover", "3,5"]), "d=2 a/k=3/1 sup=5/3\n");
    assert_eq!(code(&["recover", "20,21,45"]), 4);
}

#[test]
fn compare() {
    assert_eq!(stdout(&["compare", "6,10,13,14", "6,11,13,14"]), "EQUAL\n");
    let text = stdout(&["compare", "14,17,20,23,26,29,32", "7,10,13,16"]);
    assert_eq!(text.lines().next(), Some("NOT_EQUAL witness=86/39"));
    assert_eq!(text.lines().nth(1), Some("arithmetical NOT_EQUAL"));
    assert_eq!(
        stdout(&["compare", "3,5", "3,5"]),
        "EQUAL\narithmetical EQUAL\n"
    );
    assert_eq!(
        stdout(&["compare", "3,5", "3,7"]).lines().next(),
        Some("NOT_EQUAL witness=7/3")
    );
    assert_eq!(code(&["compare", "3,5", "1"]), 2);
}

#[test]
fn profile_json_schema() {
    let text = stdout(&["profile", "3,5"]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = value
        .as_object()
        .unwrap()
        .keys()
        .map(|k| k.as_str())
        .collect();
    assert_eq!(
        keys,
        ["base", "finite_part", "generators", "period", "sequences"]
    );
    assert_eq!(value["base"], 15);
    assert_eq!(value["period"], 15);
    assert_eq!(value["sequences"].as_array().unwrap().len(), 15);
    let parsed = ElasticityProfile::from_json(&text).unwrap();
    assert_eq!(
        parsed,
        ElasticityProfile::build(&NumericalMonoid::new(&[3, 5]).unwrap()).unwrap()
    );
    assert_eq!(text, stdout(&["profile", "3,5"]));
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "core"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .all(|l| l.starts_with("PASS ") || l.ends_with("0 failed")));
    assert_eq!(code(&["verify", "--suite", "arith"]), 0);
    assert_eq!(code(&["verify", "--suite", "core", "--tamper"]), 1);
}
