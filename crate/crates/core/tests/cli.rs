use std::process::Command;

use strucprof::cli::run;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn ok(args: &[&str]) -> String {
    let mut argv = vec!["strucprof"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert!(out.stderr.is_empty());
    out.stdout
}

#[test]
fn series_golden() {
    assert_eq!(ok(&["series", "--num", "1", "--den", "1,-1,-1", "--max-n", "6"]), "1,1,2,3,5,8,13\n");
    assert_eq!(ok(&["series", "--num", "-1", "--den", "-1,1", "--max-n", "3"]), "1,1,1,1\n");
}

#[test]
fn components_golden() {
    assert_eq!(ok(&["components", "--file", &data("c4.struct")]), "0,2\n1,3\n");
}

#[test]
fn intervals_golden() {
    assert_eq!(ok(&["intervals", "--file", &data("bichain.struct")]), "0,1\n2,3\n");
}

#[test]
fn profile_golden() {
    let csv = ok(&["profile", "--family", "G2", "--max-n", "9", "--format", "csv"]);
    assert_eq!(csv, "n,count\n0,1\n1,1\n2,2\n3,3\n4,6\n5,10\n6,20\n7,36\n8,72\n9,136\n");
    let json = ok(&["profile", "--family", "G2", "--max-n", "9", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["source"], "G2");
    assert_eq!(v["stabilized"], true);
    assert_eq!(v["values"][9], 136);
    let amc = ok(&["profile", "--family", &format!("amc:{}", data("half_graph.amc")), "--max-n", "9"]);
    assert_eq!(amc, csv);
    let multichain = ok(&["profile", "--family", &format!("amc:{}", data("multichain2.amc")), "--max-n", "8"]);
    assert_eq!(multichain, "n,count\n0,1\n1,1\n2,2\n3,3\n4,5\n5,8\n6,13\n7,21\n8,34\n");
    let file = ok(&["profile", "--file", &data("c4.struct"), "--max-n", "5"]);
    assert_eq!(file, "n,count\n0,1\n1,1\n2,2\n3,1\n4,1\n5,0\n");
}

#[test]
fn prefix_cap_reports_unstabilized() {
    let json = ok(&["profile", "--family", "G5", "--max-n", "4", "--prefix-cap", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["stabilized"], false);
    assert_eq!(v["prefix_used"], 6);
}

#[test]
fn classify_and_obstruct() {
    assert_eq!(ok(&["classify", "--family", "G1", "--max-n", "10"]), "eventually-polynomial(1)\n");
    assert_eq!(ok(&["classify", "--family", "G5", "--max-n", "10"]), "exponential-at-least(2.0000)\n");
    let lexsum = format!("lexsum:{}:c,i,c", data("p3.struct"));
    assert_eq!(ok(&["obstruct", "--family", &lexsum, "--prefix", "6", "--target", "3"]), "\n");
    let found = ok(&["obstruct", "--family", "G2", "--prefix", "4", "--target", "4"]);
    assert!(found.trim().split(',').any(|g| g == "G2"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["strucprof"],
        vec!["strucprof", "frobnicate"],
        vec!["strucprof", "profile", "--max-n", "3"],
        vec!["strucprof", "profile", "--family", "G12", "--max-n", "3"],
        vec!["strucprof", "components", "--file", "/nonexistent/file"],
        vec!["strucprof", "intervals", "--file", "/dev/null"],
        vec!["strucprof", "series", "--num", "1", "--den", "2,1", "--max-n", "3"],
        vec!["strucprof", "verify", "--suite", "unknown"],
        vec!["strucprof", "obstruct", "--family", "multichain:2", "--prefix", "4", "--target", "2"],
    ] {
        let out = run(args.clone());
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_exit_status() {
    let good = run(["strucprof", "verify", "--suite", "w-sequences"]);
    assert_eq!(good.code, 0);
    assert!(good.stdout.lines().all(|l| l.starts_with("PASS") || l.ends_with("0 failed")));
    // The printed G5 series does not expand to the G5 profile.
    let series = run(["strucprof", "verify", "--suite", "series"]);
    assert_eq!(series.code, 1);
    assert!(series.stdout.contains("FAIL [2] printed series of G5"));
}

#[test]
fn binary_output_is_independent_of_thread_count() {
    let bin = env!("CARGO_BIN_EXE_strucprof");
    let outputs: Vec<Vec<u8>> = ["1", "4"]
        .iter()
        .map(|t| {
            let out = Command::new(bin)
                .args(["profile", "--family", "G4", "--max-n", "8"])
                .env("STRUCPROF_THREADS", t)
                .output()
                .unwrap();
            assert!(out.status.success());
            out.stdout
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    let bad = Command::new(bin).args(["series", "--num", "x", "--den", "1", "--max-n", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}
