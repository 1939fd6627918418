use std::path::Path;
use std::process::Command;

use wittkit::cli::{run, Outcome};

fn wk(cache: &Path, args: &[&str]) -> Outcome {
    let cache = cache.to_str().unwrap();
    let argv = ["wittkit", "--cache", cache].into_iter().chain(args.iter().copied()).map(String::from);
    run(argv.collect::<Vec<_>>())
}

fn ok(cache: &Path, args: &[&str], expect: &str) {
    let out = wk(cache, args);
    assert_eq!(out.code, 0, "{args:?}\nstdout:\n{}\nstderr:\n{}", out.stdout, out.stderr);
    assert!(out.stdout.contains(expect), "{args:?}: `{expect}` not in\n{}", out.stdout);
}

#[test]
fn spec_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = wk(d, &["witt", "--p", "2", "--n", "1", "--ring", "f2", "add", "(1,0)", "(1,0)"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "(0,1)\n"));
    ok(d, &["canlift", "--p", "5", "--a", "1", "--b", "1", "--k", "2"], "j_canonical = 7 (mod 25)");
    let out = wk(d, &["jet", "--ring", "Z[t]/(t^2-1)", "--p", "2", "--n", "1", "--emit", "points", "--over", "f2"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().next(), Some("2 points"));
}

/// Every module operation, reached through some subcommand.
#[test]
fn every_operation_is_reachable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let table: &[(&str, &[&str], &str)] = &[
        // exact substrate
        ("poly_exact_div_by_int", &["ring", "divide", "--by", "3", "--vars", "x,y", "3*x + 6*y^2"], "quotient = 2*y^2 + x"),
        ("finite_ring_enumerate", &["ring", "elements", "--ring", "gf:2:2"], "count = 4"),
        ("find_roots", &["ring", "roots", "--ring", "f5", "x^2 - 1"], "roots = {1,4}"),
        ("hensel_root", &["ring", "hensel", "--ring", "z125", "--start", "2", "x^2 + 1"], "root = 57"),
        // universal polynomials
        ("generate_ghost", &["poly", "--p", "3", "--n", "2", "--kind", "ghost", "--show"], "ghost_1 = x0^3 + 3*x1"),
        ("generate_law", &["poly", "--p", "2", "--n", "1", "--kind", "sum", "--show"], "sum_1 = -x0*y0 + x1 + y1"),
        ("generate_conversion", &["poly", "--p", "2", "--n", "2", "--kind", "bjfromwitt", "--verify"], "holds"),
        ("cache_store/cache_load", &["poly", "--p", "2", "--n", "1", "--kind", "sum", "--verify"], "identity (p=2, n=1, kind=sum) = holds"),
        // Witt rings
        ("witt_arith add", &["witt", "--p", "3", "--n", "1", "--ring", "f3", "add", "(2,0)", "(2,0)"], "(1,2)"),
        ("witt_arith mul", &["witt", "--p", "2", "--n", "1", "--ring", "zz", "mul", "(1,1)", "(1,1)"], "(1,"),
        ("witt_arith neg", &["witt", "--p", "2", "--n", "2", "--ring", "zz", "neg", "(1,1,0)"], "(-1,-2,-7)"),
        ("truncate", &["witt", "--p", "2", "--n", "2", "--ring", "zz", "trunc", "(1,2,3)"], "(1,2)"),
        ("delta_shift", &["witt", "--p", "2", "--n", "2", "--ring", "zz", "delta", "(1,2,3)"], "(2,3)"),
        ("frobenius", &["witt", "--p", "2", "--n", "1", "--ring", "zz", "frob", "(1,1)"], "(3)"),
        ("verschiebung", &["witt", "--p", "2", "--n", "0", "--ring", "zz", "versch", "(3)"], "(0,3)"),
        ("ghost_map", &["witt", "--p", "2", "--n", "2", "--ring", "zz", "ghost", "(1,1,0)"], "<1,3,11>"),
        ("coplethysm", &["witt", "--p", "2", "--n", "2", "--ring", "f2", "copleth", "--split", "1,1", "(1,0,1)"], "((1,0),(0,1))"),
        ("coplethysm_equalizer_check", &["witt", "--p", "2", "--n", "1", "--ring", "f2", "equalizer", "((1,1),(0,1))"], "not_in_image index=0"),
        ("ghost_retraction", &["witt", "--p", "2", "--n", "1", "--ring", "zz", "retract", "<<1,2>,<3,4>>"], "<1,3,4>"),
        ("p_nilpotency_degree", &["witt", "--p", "3", "--n", "2", "--ring", "f3", "nilp"], "p_nilpotency_degree = 3"),
        // δ-rings
        ("validate_delta", &["delta", "validate", "--tower", "fermat", "--p", "3", "--levels", "3"], "PASS tower=fermat"),
        ("apply_delta tower", &["delta", "apply", "--tower", "fermat", "--p", "2", "--levels", "3", "--level", "0", "3"], "delta = 1"),
        ("apply_delta poly", &["delta", "to-frobenius", "--p", "2", "--ring", "Z[T]", "--delta", "T", "--eval", "T^3"], "delta(T^3) = 3*T^5 + 6*T^4 + 4*T^3"),
        ("delta_from_frobenius", &["delta", "from-frobenius", "--p", "2", "--ring", "Z[T]", "--image", "T^2 + 2*T"], "delta(T) = T"),
        ("frobenius_from_delta", &["delta", "to-frobenius", "--p", "3", "--ring", "Z[T]", "--delta", "1"], "phi(T) = T^3 + 3"),
        ("hopf_delta_solve", &["delta", "solve-mu", "--p", "2", "--exps", "1", "--k", "3"], "only_trivial = true"),
        // jets
        ("parse_presentation/jet_presentation", &["jet", "--ring", "Z[t]/(t^2-1)", "--p", "2", "--n", "1", "--emit", "presentation"], "generators = t_0,t_1"),
        ("prolong", &["jet", "--ring", "Z[t]/(t^2-1)", "--p", "2", "--n", "1", "--emit", "prolong"], "delta^1(f0) = 2*t_0^2*t_1 + t_0^2 + 2*t_1^2 - 1"),
        ("enumerate_points", &["jet", "--ring", "Z[t]/(t^2-1)", "--p", "2", "--n", "1", "--emit", "points", "--over", "z8", "--base"], "4 points"),
        ("adjunction_check", &["jet", "--ring", "Z[x,y]/(x*y)", "--p", "2", "--n", "1", "--emit", "adjunction", "--over", "f2"], "pass = true"),
        ("coghost_eval", &["jet", "--ring", "Z[t]/(t^2-1)", "--p", "2", "--n", "1", "--emit", "coghost", "--over", "f2"], "(1,1) -> (1) (1)"),
        // canonical lifts
        ("j_invariant/curve_from_j", &["canlift", "--p", "5", "--j", "2", "--k", "2"], "residue_j = 2"),
        ("count_points_trace", &["canlift", "--p", "5", "--a", "1", "--b", "1", "--k", "2"], "points = 9"),
        ("is_ordinary", &["canlift", "--p", "5", "--a", "1", "--b", "1", "--k", "2"], "ordinary = true"),
        ("division_polynomial", &["canlift", "--p", "5", "--a", "1", "--b", "1", "--k", "1", "--divpoly", "3"], "psi_3 = 3*x^4"),
        ("etale_kernel_poly", &["canlift", "--p", "5", "--a", "1", "--b", "1", "--k", "2", "--verify"], "etale_kernel = x^2 + 2*x + 14"),
        ("velu_quotient", &["canlift", "--p", "5", "--a", "1", "--b", "1", "--k", "2", "--verify"], "velu_quotient_j = 7"),
        ("canonical_lift_j", &["canlift", "--p", "5", "--a", "1", "--b", "1", "--k", "3", "--trace"], "j_canonical = 107 (mod 125)"),
        ("cm_oracle_j", &["canlift", "--p", "7", "--a", "1", "--b", "1", "--k", "3", "--oracle", "cm"], "oracle_agrees = true"),
        ("verify_vp_factorization", &["canlift", "--p", "5", "--a", "1", "--b", "1", "--k", "3", "--verify"], "factorization = true"),
        // shell
        ("selftest", &["selftest", "quick"], "0 failed"),
    ];
    let mut missing = Vec::new();
    for (op, args, expect) in table {
        let out = wk(d, args);
        if out.code != 0 || !out.stdout.contains(expect) {
            missing.push(format!("{op}: {args:?} -> {}\n{}{}", out.code, out.stdout, out.stderr));
        }
    }
    assert!(missing.is_empty(), "{}", missing.join("\n"));
}

#[test]
fn golden_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = wk(d, &["witt", "--p", "2", "--n", "1", "--ring", "f2", "iso"]);
    assert_eq!(out.stdout, "0 -> (0,0)\n1 -> (1,0)\n2 -> (0,1)\n3 -> (1,1)\n");
    let out = wk(d, &["canlift", "--p", "5", "--a", "1", "--b", "1", "--k", "2", "--trace", "--oracle", "cm"]);
    let expect = "\
residue_curve = y^2 = x^3 + 1*x + 1 (mod 5)
residue_j = 2
points = 9
ordinary = true
p = 5
k = 2
a_p = -3
j_canonical = 7 (mod 25)
curve = y^2 = x^3 + 1*x + 9 (mod 25)
iterations = 3
trace = 2 7 7 7
oracle_discriminant = -11
oracle_class_number = 1
oracle_j = 7
oracle_agrees = true
";
    assert_eq!(out.stdout, expect);
    let out = wk(d, &["delta", "validate", "--tower", "zero", "--p", "2", "--levels", "2"]);
    assert_eq!(out.code, 1);
    assert_eq!(out.stdout, "FAIL tower=zero p=2 levels=2 checks=33\n  level 0 axiom 1: x=1 y=1: 0 != 1\n");
}

#[test]
fn errors_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // usage errors
    for args in [
        &["bogus"][..],
        &["witt", "--p", "2", "--n", "1", "--ring", "f2", "add", "(1,0)", "(1,0)", "--frobnicate"],
        &["canlift", "--p", "5", "--k", "2"],
        &["witt", "--p", "2", "--n", "2", "--ring", "f2", "copleth", "--split", "2,1", "(1,0,1)"],
        &["witt", "--p", "2", "--n", "1", "--ring", "q7", "neg", "(1,0)"],
    ] {
        let out = wk(d, args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stderr);
        assert!(!out.stderr.is_empty());
    }
    // domain errors
    for (args, msg) in [
        (&["canlift", "--p", "13", "--j", "5", "--k", "2"][..], "supersingular"),
        (&["canlift", "--p", "5", "--a", "0", "--b", "1", "--k", "2"], "j"),
        (&["canlift", "--p", "17", "--a", "1", "--b", "1", "--k", "2"], "unsupported"),
        (&["witt", "--p", "2", "--n", "1", "--ring", "f2", "add", "(1,0,1)", "(1,0)"], "components"),
        (&["witt", "--p", "3", "--n", "1", "--ring", "f3", "inv", "(0,1)"], "not a unit"),
        (&["delta", "from-frobenius", "--p", "2", "--ring", "Z[T]/(2*T)", "--image", "T"], "does not reduce"),
        (&["ring", "divide", "--by", "2", "3*x"], "not divisible"),
        (&["jet", "--ring", "Z/4[t]", "--p", "2", "--n", "1", "--emit", "presentation"], "base z"),
    ] {
        let out = wk(d, args);
        assert_eq!(out.code, 1, "{args:?}: {}{}", out.stdout, out.stderr);
        assert!(out.stderr.to_lowercase().contains(msg), "{args:?}: {}", out.stderr);
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        &["canlift", "--p", "5", "--a", "1", "--b", "1", "--k", "3", "--verify", "--trace"][..],
        &["jet", "--ring", "Z[t]/(t^3-t)", "--p", "3", "--n", "1", "--emit", "coghost", "--over", "f3"],
        &["delta", "validate", "--tower", "witt", "--p", "2", "--levels", "3", "--random", "50", "--seed", "9"],
        &["poly", "--p", "3", "--n", "2", "--kind", "product", "--show"],
    ] {
        let first = wk(d, args);
        let second = wk(d, args);
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn cache_directory_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let exe = env!("CARGO_BIN_EXE_wittkit");
    let args = ["poly", "--p", "2", "--n", "1", "--kind", "sum"];

    let env_cache = dir.path().join("from-env");
    let st = Command::new(exe).args(args).current_dir(dir.path()).env("WITT_CACHE", &env_cache).output().unwrap();
    assert!(st.status.success());
    assert!(env_cache.join("p2_n1_sum.wpoly").is_file());

    let flag_cache = dir.path().join("from-flag");
    let st = Command::new(exe)
        .args(["--cache", flag_cache.to_str().unwrap()])
        .args(args)
        .current_dir(dir.path())
        .env("WITT_CACHE", &env_cache)
        .output()
        .unwrap();
    assert!(st.status.success());
    assert!(flag_cache.join("p2_n1_sum.wpoly").is_file());

    let st = Command::new(exe).args(args).current_dir(dir.path()).env_remove("WITT_CACHE").output().unwrap();
    assert!(st.status.success());
    assert!(dir.path().join(".wittcache").join("p2_n0_sum.wpoly").is_file());
}

#[test]
fn corrupted_cache_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = wk(d, &["selftest", "quick"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let file = d.join("p3_n2_product.wpoly");
    let text = std::fs::read_to_string(&file).unwrap();
    std::fs::write(&file, text.replacen("x0", "x9", 1)).unwrap();
    let out = wk(d, &["selftest", "quick"]);
    assert_eq!(out.code, 1);
    let fail: Vec<&str> = out.stdout.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert!(!fail.is_empty());
    assert!(fail[0].contains("(p=3, n=2, kind=product)"), "{fail:?}");
}

#[test]
fn poly_out_writes_level_files() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("laws");
    let out = wk(dir.path(), &["poly", "--p", "2", "--n", "3", "--kind", "sum", "--out", target.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    for m in 0..=3 {
        assert!(target.join(format!("p2_n{m}_sum.wpoly")).is_file(), "level {m}");
        assert!(out.stdout.contains(&format!("level {m}: terms=")));
    }
    assert!(!dir.path().join("p2_n3_sum.wpoly").exists());
}

#[test]
fn printed_presentation_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = wk(dir.path(), &["jet", "--ring", "Z[x,y]/(y^2-x^3-1)", "--p", "3", "--n", "1", "--emit", "presentation"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let gens = out.stdout.lines().find_map(|l| l.strip_prefix("generators = ")).unwrap();
    let rels: Vec<&str> = out.stdout.lines().filter_map(|l| l.strip_prefix("relation = ")).collect();
    let ring = format!("Z[{gens}]/({})", rels.join(", "));
    let again = wk(dir.path(), &["jet", "--ring", &ring, "--p", "3", "--n", "0", "--emit", "presentation"]);
    assert_eq!(again.code, 0, "{ring}: {}", again.stderr);
    // level 0 renames each generator g to g_0
    let renamed: Vec<String> = rels.iter().map(|r| r.replace("_0", "_0_0").replace("_1", "_1_0")).collect();
    let rels2: Vec<&str> = again.stdout.lines().filter_map(|l| l.strip_prefix("relation = ")).collect();
    assert_eq!(renamed, rels2);
}
