use schubloc::cli::{run, Outcome};
use serde_json::Value;
use std::path::Path;
use std::process::Command;

fn cli(args: &str) -> Outcome {
    run(std::iter::once("schubloc").chain(args.split_whitespace()))
}

fn validate(verb: &str, out: &Outcome) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{verb}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap();
    let inst: Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{verb}: {e}\n{}", out.stdout));
    let errs: Vec<String> = v.iter_errors(&inst).map(|e| e.to_string()).collect();
    assert!(errs.is_empty(), "{verb}: {errs:?}");
}

#[test]
fn rpoly_golden() {
    let o = cli("rpoly --type A4 --u s3.s4.s3.s2 --w s4.s3.s1.s4.s2.s1.s3.s2");
    assert_eq!((o.code, o.stdout.as_str()), (0, "1 -3 4 -3 1\n"));
    let o = cli("rpoly --type A2 --u e --w e");
    assert_eq!((o.code, o.stdout.as_str()), (0, "1\n"));
}

#[test]
fn rpoly_csv_dump() {
    let o = cli("rpoly --type A2 --all");
    let mut lines = o.stdout.lines();
    assert_eq!(lines.next(), Some("u,w,coeffs"));
    assert_eq!(lines.count(), 19);
}

#[test]
fn subwords_table() {
    let o = cli("subwords --word s4.s3.s1.s4.s2.s1.s3.s2 --u s3.s4.s3.s2 --list");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("(s4,s3,\u{b7},s4,s2,\u{b7},\u{b7},\u{b7})  J+={1,2,4,5} J-={} E+={3,6,7} E-={8} reduced"));
    assert!(o.stdout.contains("J-={6} E+={1,5} E-={} not-reduced distinguished"));
    assert_eq!(o.stdout.lines().count(), 6);
    assert!(o.stdout.ends_with("1 -3 4 -3 1\n"));
}

#[test]
fn smc_example_and_limit() {
    let o = cli("smc --type A2 --u s2 --w s1.s2 --limit-chamber s2");
    assert_eq!(o.stdout, "y^2 + y\n");
    let o = cli("smc --type A2 --u s2 --w s1.s2 --limit-chamber e");
    assert_eq!(o.stdout, "-y - 1\n");
}

#[test]
fn verify_main_exit_codes() {
    assert_eq!(cli("verify-main --type GL3 --lambda 1,0,0 --all").code, 0);
    assert_eq!(cli("verify-main --type GL2 --lambda 2,0 --u s1 --w e").code, 0);
    assert_eq!(cli("verify-main --type GL3 --lambda 0,1,0 --all").code, 2);
}

#[test]
fn usage_errors_exit_2() {
    for args in ["rpoly --type A2", "rpoly --type Q7 --u e --w e", "rpoly --type A2 --u s9 --w e", "frobnicate", "pipedream --n 3"] {
        let o = cli(args);
        assert_eq!(o.code, 2, "{args}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn pipedream_verbs() {
    let o = cli("pipedream --n 7 --k 3 --rows XBBXBBX,BBXBXBX,XXBXXBX");
    assert_eq!(o.stdout, "2,6,5,10,8,11,7\n");
    let o = cli("pipedream --n 3 --k 1 --f 2,3,4 --ascii");
    assert!(o.stdout.contains("%%%"));
    let o = cli("pipedream --n 4 --k 2 --verify");
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().count(), 33);
    assert!(o.stdout.lines().all(|l| l.ends_with("PASS")));
}

#[test]
fn json_outputs_match_schemas() {
    let cases = [
        ("rpoly", "rpoly --type B2 --u s1 --w s1.s2.s1 --json"),
        ("twisted-rpoly", "twisted-rpoly --type A2 --u s1 --v s2 --w s1.s2 --json"),
        ("subwords", "subwords --word s1.s2.s1 --u s1 --scheme smc --json"),
        ("smc", "smc --type A2 --json"),
        ("smc", "smc --type B2 --u s1 --w s2.s1 --times-prefactor --json"),
        ("ajs-billey", "ajs-billey --type A3 --u s2 --w s1.s2.s3.s2 --json"),
        ("limit", "limit --type A2 --u s2 --w s1.s2 --v s2.s1 --json"),
        ("richardson", "richardson --type GL3 --lambda 1,1,0 --u s2 --w s2 --json"),
        ("verify-main", "verify-main --type GL2 --lambda 1,0 --all"),
        ("pipedream", "pipedream --n 3 --k 2 --gtilde --json"),
        ("pipedream", "pipedream --n 3 --k 1 --verify --json"),
        ("pipedream", "pipedream --n 3 --k 2 --rows XBB,BXB --json"),
        ("selftest", "selftest --criterion 4 --json"),
    ];
    for (verb, args) in cases {
        let o = cli(args);
        assert_eq!(o.code, 0, "{args}: {}", o.stderr);
        validate(verb, &o);
    }
}

#[test]
fn deterministic_under_thread_counts() {
    for args in ["smc --type B2 --json", "verify-main --type GL3 --lambda 1,1,0 --all", "pipedream --n 4 --k 2 --gtilde"] {
        let a = cli(&format!("--threads 1 {args}"));
        let b = cli(&format!("--threads 4 {args}"));
        let c = cli(args);
        assert_eq!(a, b, "{args}");
        assert_eq!(a, c, "{args}");
    }
}

#[test]
fn binary_honours_thread_env() {
    let exe = env!("CARGO_BIN_EXE_schubloc");
    let out = |threads: &str| {
        Command::new(exe)
            .args(["rpoly", "--type", "A3", "--all"])
            .env("SCHUBLOC_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = out("1");
    let b = out("3");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(exe).arg("rpoly").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn selftest_reports_known_deviation() {
    let o = cli("selftest --criterion 5");
    assert_eq!(o.code, 1);
    assert!(o.stdout.starts_with("criterion 5 FAIL"));
    assert!(o.stdout.contains("known deviation"));
    assert_eq!(cli("selftest --criterion 5 --allow-known").code, 0);
    assert_eq!(cli("selftest --criterion 1").code, 0);
    assert_eq!(cli("selftest --criterion 10").code, 2);
}
