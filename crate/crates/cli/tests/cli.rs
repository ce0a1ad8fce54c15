//! Runs the `wlc` binary on the files in `tests/data` and checks stdout and
//! exit codes.

use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn wlc(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_wlc"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn lc_examples() {
    let (out, _, code) = wlc(&["lc", &data("triple7.seq")]);
    assert_eq!(code, 0);
    assert_eq!(out, "lc=7\nminpoly=1,0,0,0,0,0,0,1\n");
    let (out, _, _) = wlc(&["lc", &data("zeros.seq")]);
    assert_eq!(out, "lc=0\nminpoly=1\n");
    let (out, _, _) = wlc(&["lc", &data("pair_wlc3.seq")]);
    assert_eq!(out, "lc=6\nminpoly=1,0,0,0,0,0,1\n");
}

#[test]
fn wlc_kv_reports() {
    let (out, _, code) = wlc(&["wlc", &data("pair_wlc3.seq"), "--format", "kv"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "lc=6\nminpoly=1,0,0,0,0,0,1\ndivisible=true\nblock_rank=6\nnontrivial=true\nwlc=3\n\
         A0=0,1,1,1\nA1=0,0,0,1\nA2=1,1,0,1\n"
    );
    let (out, _, _) = wlc(&["wlc", &data("pair_deficient.seq"), "--format", "kv"]);
    assert!(out.contains("block_rank=5\nnontrivial=false\nwlc=none\n"));
    let (out, _, _) = wlc(&["wlc", &data("triple7.seq"), "--format", "kv"]);
    assert!(out.contains("divisible=false\n"));
    let (out, _, _) = wlc(&["wlc", &data("pair_wlc3.seq")]);
    assert!(out.contains("word linear complexity: 3"));
}

#[test]
fn parse_and_data_errors() {
    let bad = scratch("bad.seq");
    std::fs::write(&bad, "seq 2 1 2\n0\n5\n").unwrap();
    let (_, err, code) = wlc(&["lc", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"));

    let (_, _, code) = wlc(&["lc", "/nonexistent/file.seq"]);
    assert_eq!(code, 2);

    // Three terms cannot pin down a recurrence of order 2.
    let short = scratch("short.seq");
    std::fs::write(&short, "seq 2 1 3\n0\n1\n1\n").unwrap();
    let (_, _, code) = wlc(&["lc", short.to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn invert_examples() {
    let (out, _, code) = wlc(&["invert", &data("identity.map"), "--y", "1,1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("x=1,1\nverified=true\n"));

    let (out, _, code) = wlc(&["invert", &data("cycle3.map"), "--y", "1,0"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("x=1,1\nverified=true\nroute=matrix\n"));

    let (_, _, code) = wlc(&["invert", &data("chain.map"), "--y", "0"]);
    assert_eq!(code, 4);

    let (_, _, code) = wlc(&[
        "invert",
        &data("four_cycle.map"),
        "--y",
        "0,0",
        "--max-terms",
        "4",
    ]);
    assert_eq!(code, 5);
}

#[test]
fn iterate_round_trips() {
    let out = scratch("iter.seq");
    let path = out.to_str().unwrap();
    let (_, _, code) = wlc(&[
        "iterate",
        &data("four_cycle.map"),
        "--y",
        "0,0",
        "--count",
        "8",
        "--out",
        path,
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text, "seq 2 2 8\n0 0\n1 0\n0 1\n1 1\n0 0\n1 0\n0 1\n1 1\n");
    let parsed = wlc_core::formats::parse_sequence(&text).unwrap();
    assert_eq!(wlc_core::formats::write_sequence(&parsed), text);

    let (stdout, _, _) = wlc(&[
        "iterate",
        &data("identity.map"),
        "--y",
        "1,0",
        "--count",
        "3",
    ]);
    assert_eq!(stdout, "seq 2 2 3\n1 0\n1 0\n1 0\n");
    let (stdout, _, _) = wlc(&["iterate", &data("cycle3.map"), "--y", "1,1", "--count", "1"]);
    assert_eq!(stdout, "seq 2 2 1\n1 1\n");
}

#[test]
fn divide_examples() {
    let (out, _, code) = wlc(&[
        "divide",
        "--dividend",
        &data("x6_plus_1.mpoly"),
        "--divisor",
        &data("pair_wlc3_m.mpoly"),
        "--side",
        "right",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "# quotient\nmpoly 2 2 3\n1 1\n1 0\n1 0\n0 0\n1 1\n0 1\n1 0\n0 1\n\
         # remainder\nmpoly 2 2 0\n0 0\n0 0\n"
    );

    let m = data("pair_wlc3_m.mpoly");
    let (out, _, _) = wlc(&[
        "divide",
        "--dividend",
        &m,
        "--divisor",
        &m,
        "--side",
        "left",
    ]);
    assert_eq!(
        out,
        "# quotient\nmpoly 2 2 0\n1 0\n0 1\n# remainder\nmpoly 2 2 0\n0 0\n0 0\n"
    );

    let (out, _, _) = wlc(&[
        "divide",
        "--dividend",
        &data("x.mpoly"),
        "--divisor",
        &data("x2.mpoly"),
    ]);
    assert_eq!(
        out,
        "# quotient\nmpoly 2 2 0\n0 0\n0 0\n# remainder\nmpoly 2 2 1\n0 0\n0 0\n1 0\n0 1\n"
    );

    let (_, _, code) = wlc(&[
        "divide",
        "--dividend",
        &m,
        "--divisor",
        &data("singular_lead.mpoly"),
    ]);
    assert_eq!(code, 6);
}

#[test]
fn verify_examples() {
    let (out, _, code) = wlc(&["verify", &data("pair_wlc3.seq")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("verified=true\n"));
    assert!(!out.contains("skip"));

    let (out, _, code) = wlc(&["verify", &data("triple7.seq")]);
    assert_eq!(code, 0);
    assert!(out.contains("scalar_routes_agree=pass"));
    assert!(out.contains("n_wlc_equals_lc=skip: divisible=false"));

    let text = std::fs::read_to_string(data("pair_wlc3.seq")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let first_term = lines.iter().position(|l| l.starts_with("seq")).unwrap() + 1;
    for t in 0..12 {
        for bit in 0..2 {
            let mut flipped: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
            let mut vals: Vec<u32> = flipped[first_term + t]
                .split_whitespace()
                .map(|v| v.parse().unwrap())
                .collect();
            vals[bit] ^= 1;
            flipped[first_term + t] = format!("{} {}", vals[0], vals[1]);
            let path = scratch(&format!("flip_{t}_{bit}.seq"));
            std::fs::write(&path, flipped.join("\n") + "\n").unwrap();
            let (out, _, code) = wlc(&["verify", path.to_str().unwrap()]);
            assert_eq!(code, 1, "term {t} bit {bit}: {out}");
            assert!(out.contains("FAIL"));
        }
    }

    let (_, _, code) = wlc(&["verify", &data("zeros.seq")]);
    assert_eq!(code, 2);
}

#[test]
fn bench_output() {
    let (out, _, code) = wlc(&[
        "bench", "--field", "2", "--dim", "4", "--trials", "0", "--seed", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "seed,period,lc,wlc_nontrivial,wlc,inverse_verified\n\
         # summary trials=0 periodic=n/a wlc_nontrivial=n/a inverse_verified=n/a\n"
    );

    let args = [
        "bench", "--field", "3", "--dim", "3", "--trials", "40", "--seed", "17",
    ];
    let (a, _, _) = wlc(&args);
    let (b, _, _) = wlc(&args);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 42);
    assert!(a.lines().nth(1).unwrap().starts_with("17,"));

    let (out, _, code) = wlc(&[
        "bench",
        "--field",
        "2",
        "--dim",
        "8",
        "--trials",
        "100",
        "--seed",
        "5",
        "--permutation",
    ]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("inverse_verified=100.00%"));

    let (_, _, code) = wlc(&["bench", "--field", "4", "--dim", "2", "--trials", "1"]);
    assert_eq!(code, 2);
    let (_, _, code) = wlc(&["bench", "--field", "2", "--dim", "21", "--trials", "1"]);
    assert_eq!(code, 2);
}
