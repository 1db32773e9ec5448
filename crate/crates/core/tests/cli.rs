//! CLI output pinned against golden files in `tests/golden/`.
//!
//! Set `PINDEX_BLESS=1` to rewrite the files from the current output.

use std::fs;
use std::path::PathBuf;

use pindex::cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("pindex").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Replaces the digits of every `elapsed` value with `*`; timings vary.
fn mask_elapsed(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(i) = rest.find("elapsed") {
        let (head, tail) = rest.split_at(i + "elapsed".len());
        out.push_str(head);
        let skip = tail.find(|c: char| c.is_ascii_digit()).unwrap_or(0);
        out.push_str(&tail[..skip]);
        let digits = tail[skip..]
            .find(|c: char| !(c.is_ascii_digit() || c == '.'))
            .unwrap_or(tail.len() - skip);
        out.push('*');
        rest = &tail[skip + digits..];
    }
    out.push_str(rest);
    out
}

fn golden(name: &str, code: i32, args: &[&str]) {
    let (got_code, out, err) = invoke(args);
    assert_eq!(got_code, code, "{name}: exit status; stderr: {err}");
    let out = mask_elapsed(&out);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("PINDEX_BLESS").is_some() {
        fs::write(&path, &out).unwrap();
        return;
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out, want, "{name}");
}

#[test]
fn mask_covers_every_format() {
    assert_eq!(mask_elapsed("a=1 elapsed=0.475\n"), "a=1 elapsed=*\n");
    assert_eq!(mask_elapsed("{\"elapsed\":\"12.5\"}"), "{\"elapsed\":\"*\"}");
}

#[test]
fn compute_commands() {
    golden("pidx_minus.txt", 0, &["pidx-minus", "--modulus", "63", "--k", "2", "--h", "1"]);
    golden("pidx_minus_oracle.txt", 0, &["pidx-minus", "--modulus", "32", "--k", "3", "--h", "5", "--oracle"]);
    golden("pidx_plus_absent.txt", 0, &["pidx-plus", "--modulus", "15", "--k", "2"]);
    golden("order.json", 0, &["--format", "json", "order", "--modulus", "1000", "--k", "3"]);
    golden("gamma.txt", 0, &["gamma", "--p", "2", "--k", "3"]);
    golden("lambda.txt", 0, &["lambda", "--primes", "2,3", "--k", "5"]);
    golden("nu2_plus.txt", 0, &["nu2-plus", "--n", "3", "--k", "3"]);
    golden("cyclotomic.txt", 0, &["cyclotomic", "--n", "20", "--k", "2"]);
    golden("zsigmondy.txt", 0, &["zsigmondy", "--n", "20", "--k", "2"]);
    golden("zsigmondy_six.json", 0, &["--format", "json", "zsigmondy", "--n", "6", "--k", "2", "--oracle"]);
    golden("zeta.txt", 0, &["zeta", "--n", "1", "--k", "5"]);
    golden("coset_count.txt", 0, &["coset-count", "--n", "31", "--k", "2"]);
    golden("repunit.txt", 0, &["repunit", "--n", "19", "--base", "10"]);
}

#[test]
fn primover_formats() {
    let args = ["primover", "--n", "2047", "--base", "2"];
    for (name, format) in [("primover.txt", "text"), ("primover.json", "json"), ("primover.csv", "csv")] {
        let argv: Vec<&str> = ["--format", format].into_iter().chain(args).collect();
        golden(name, 0, &argv);
    }
    golden("wagstaff.json", 0, &["--format", "json", "wagstaff", "--p", "29"]);
}

#[test]
fn verify_reports() {
    golden("verify_zsigmondy.txt", 0, &["verify", "zsigmondy", "--n", "1..40", "--pairs", "2,1"]);
    golden("verify_pidx_minus.json", 0, &["--format", "json", "verify", "pidx-minus", "--n", "2..300", "--pairs", "2,1", "3,2"]);
    golden("verify_theorem9.txt", 0, &["verify", "theorem9", "--kmax", "49", "--nmax", "16"]);
    golden("verify_theorem5.json", 1, &["--format", "json", "verify", "theorem5", "--samples", "200"]);
}

#[test]
fn scan_reports() {
    golden("scan_wagstaff.json", 0, &["--format", "json", "scan", "wagstaff", "--range", "3..31"]);
    golden("scan_overpseudoprime.csv", 0, &["--format", "csv", "scan", "overpseudoprime", "--range", "2..10000"]);
    golden("scan_repunit.txt", 0, &["scan", "repunit", "--base", "10", "--range", "2..19"]);
    golden("scan_z_pq.txt", 0, &["scan", "z-pq", "--range", "2..7"]);
}

#[test]
fn wagstaff_scan_is_all_primover() {
    let (code, out, _) = invoke(&["scan", "wagstaff", "--range", "3..31"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines
        .iter()
        .all(|l| l.contains("class=prime ") || l.contains("class=overpseudoprime ")));
}

#[test]
fn job_count_does_not_change_output() {
    for args in [
        &["scan", "overpseudoprime", "--range", "2..20000"][..],
        &["verify", "pidx-plus", "--n", "2..600"][..],
        &["verify", "theorem5", "--samples", "300"][..],
    ] {
        let single: Vec<&str> = ["--jobs", "1"].into_iter().chain(args.iter().copied()).collect();
        let many: Vec<&str> = ["--jobs", "4"].into_iter().chain(args.iter().copied()).collect();
        let (a, b) = (invoke(&single), invoke(&many));
        assert_eq!(a.0, b.0);
        assert_eq!(mask_elapsed(&a.1), mask_elapsed(&b.1), "{args:?}");
    }
}

#[test]
fn usage_and_domain_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["pidx-minus", "--modulus", "63"][..],
        &["zsigmondy", "--n", "6", "--k", "2", "--h", "2"][..],
        &["order", "--modulus", "10", "--k", "4"][..],
        &["primover", "--n", "1", "--base", "2"][..],
        &["scan", "wagstaff", "--base", "3", "--range", "3..31"][..],
        &["scan", "overpseudoprime", "--range", "2..100000000"][..],
        &["verify", "pidx-minus", "--pairs", "2"][..],
    ] {
        let (code, out, err) = invoke(args);
        assert_eq!(code, 2, "{args:?}: {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("pidx-minus"));
}
