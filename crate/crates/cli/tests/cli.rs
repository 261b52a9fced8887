use std::process::{Command, Output};

fn cayley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cayley(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    cayley(args).status.code().unwrap()
}

#[test]
fn sign_of_e5_e6_in_octonions() {
    assert_eq!(stdout(&["sign", "5", "6", "-n", "3"]), "e5 * e6 = -e3 (sigma=1)\n");
    assert_eq!(stdout(&["sign", "6", "5", "-n", "3"]), "e6 * e5 = +e3 (sigma=0)\n");
}

#[test]
fn sign_unit_and_squares() {
    assert_eq!(stdout(&["sign", "0", "7", "-n", "3"]), "e0 * e7 = +e7 (sigma=0)\n");
    assert_eq!(stdout(&["sign", "3", "3", "-n", "2"]), "e3 * e3 = -e0 (sigma=1)\n");
    // in the split algebra the top generator squares to +1
    assert_eq!(stdout(&["sign", "4", "4", "-n", "3", "--split"]), "e4 * e4 = +e0 (sigma=0)\n");
}

#[test]
fn sign_in_binary() {
    assert_eq!(
        stdout(&["sign", "5", "6", "-n", "3", "--binary"]),
        "e0b101 * e0b110 = -e0b011 (sigma=1)\n"
    );
}

#[test]
fn quaternion_products() {
    // i j = k, j i = -k
    assert_eq!(stdout(&["mul", "0,1,0,0", "0,0,1,0", "-n", "2"]), "0,0,0,1\n");
    assert_eq!(stdout(&["mul", "0,0,1,0", "0,1,0,0", "-n", "2"]), "0,0,0,-1\n");
    assert_eq!(stdout(&["mul", "1/2,-1,0,0", "1/2,1,0,0", "-n", "2"]), "5/4,0,0,0\n");
}

#[test]
fn mul_engines_agree() {
    let x = "1,2,-1,0,3,0,0,-2";
    let y = "0,1,1,-1,2,0,1/3,0";
    let twist = stdout(&["mul", x, y, "-n", "3", "--engine", "twist"]);
    assert_eq!(twist, stdout(&["mul", x, y, "-n", "3", "--engine", "doubling"]));
    assert_eq!(twist, stdout(&["mul", x, y, "-n", "3"]));
}

#[test]
fn general_gamma_uses_doubling() {
    assert_eq!(stdout(&["mul", "0,1,0,0", "0,1,0,0", "--gamma", "1,-1"]), "1,0,0,0\n");
    assert_eq!(code(&["mul", "0,1,0,0", "0,1,0,0", "--gamma", "1,-1", "--engine", "twist"]), 1);
}

fn csv_cells(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').skip(1).map(str::to_string).collect())
        .collect()
}

fn markdown_cells(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(2)
        .map(|l| {
            l.trim_matches('|')
                .split('|')
                .skip(1)
                .map(|c| c.trim().replace("e_", ""))
                .collect()
        })
        .collect()
}

fn json_cells(text: &str) -> Vec<Vec<String>> {
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|c| {
                    let s = if c["s"] == 1 { '+' } else { '-' };
                    format!("{s}{}", c["i"])
                })
                .collect()
        })
        .collect()
}

#[test]
fn table_formats_agree() {
    for extra in [&[][..], &["--split"][..]] {
        let base = |format: &str| {
            let mut args = vec!["table", "-n", "4", "--format", format];
            args.extend_from_slice(extra);
            stdout(&args)
        };
        let json = base("json");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["n"], 4);
        let cells = json_cells(&json);
        assert_eq!(cells.len(), 16);
        assert_eq!(cells, csv_cells(&base("csv")));
        assert_eq!(cells, markdown_cells(&base("markdown")));
        // row 5, column 6 in the octonion corner of the table
        assert_eq!(cells[5][6], "-3");
    }
}

#[test]
fn table_entries_match_sign_queries() {
    let cells = csv_cells(&stdout(&["table", "-n", "3", "--format", "csv"]));
    for a in 0..8usize {
        for b in 0..8usize {
            let line = stdout(&["sign", &a.to_string(), &b.to_string(), "-n", "3"]);
            let rhs = line.split(" = ").nth(1).unwrap().split(' ').next().unwrap();
            assert_eq!(rhs.replace('e', ""), cells[a][b]);
        }
    }
}

#[test]
fn table_to_file() {
    let path = std::env::temp_dir().join(format!("cayley-table-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["table", "-n", "2", "--format", "csv", "--out", p]), "");
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, stdout(&["table", "-n", "2", "--format", "csv"]));
}

#[test]
fn table_cap() {
    assert_eq!(code(&["table", "-n", "5", "--cap", "4"]), 1);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "engines", "-n", "5", "--seed", "7"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    for line in first.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["n"], 5);
        assert_eq!(v["holds"], true);
    }
}

#[test]
fn verify_reports_expected_failures() {
    let out = stdout(&["verify", "--suite", "algebra-laws", "-n", "4", "--samples", "20"]);
    let assoc = out
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .find(|v| v["property"] == "associativity")
        .unwrap();
    assert_eq!(assoc["holds"], false);
    assert_eq!(assoc["expected"], false);
    assert!(assoc["witness"].is_object());
}

#[test]
fn verify_levels_up_to_n_max() {
    let out = stdout(&["verify", "--suite", "twist-laws", "--n-max", "3"]);
    let levels: std::collections::BTreeSet<u64> = out
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["n"].as_u64().unwrap())
        .collect();
    assert_eq!(levels.into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
}

#[test]
fn bench_rows() {
    let out = stdout(&["bench", "--n-min", "8", "--n-max", "9", "--queries", "1000", "--repetitions", "1"]);
    let rows: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["per_query_ns"].is_number()));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["sign", "1", "2", "-n", "2"]), 0);
    assert_eq!(code(&["sign", "8", "1", "-n", "3"]), 1);
    assert_eq!(code(&["sign", "1", "2"]), 1);
    assert_eq!(code(&["sign", "x", "2", "-n", "2"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["mul", "1,2", "1,2,3", "-n", "1"]), 1);
    assert_eq!(code(&["sign", "1", "1", "-n", "0", "--split"]), 1);
    assert_eq!(code(&["verify", "--suite", "nonsense", "-n", "2"]), 1);
    assert_eq!(code(&["verify", "--suite", "relations", "-n", "2", "--split"]), 1);
    assert_eq!(code(&["bench", "--n-min", "9", "--n-max", "8"]), 1);
}
