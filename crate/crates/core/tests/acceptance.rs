//! Acceptance criteria 1 to 8, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittkit::calculus::{verify_identity, LawKind};
use wittkit::canlift::{
    canonical_lift_from, canonical_lift_j, cm_oracle_j, curve_from_j, frobenius_quotient, CmTable,
};
use wittkit::delta::{
    delta_from_frobenius, frobenius_from_delta, hopf_delta_solve, validate_delta, DeltaError, DeltaPolyRing, DeltaTower,
    Sample,
};
use wittkit::jets::{
    adjunction_check, adjunction_check_with, jet_presentation, parse_polynomial, parse_presentation, JetError,
    RingPresentation,
};
use wittkit::substrate::{FiniteLocalRing, FiniteRing, IntegerRing, Monomial, Ring, SparsePoly, VarList};
use wittkit::witt::{
    coplethysm, equalizer_check, ghost_retraction, iterated_ghost, p_nilpotency_degree, zmod_isomorphism,
    EqualizerVerdict, WittRing,
};

fn n(x: i64) -> BigInt {
    BigInt::from(x)
}

fn fp(p: u64) -> FiniteLocalRing {
    FiniteLocalRing::prime_field(p).unwrap()
}

fn universal_law_identities() {
    let kinds = [
        LawKind::Sum,
        LawKind::Product,
        LawKind::Negation,
        LawKind::BjFromWitt,
        LawKind::WittFromBj,
    ];
    for (p, top) in [(2u64, 4usize), (3, 4), (5, 3)] {
        for kind in kinds {
            let checks = verify_identity(p, top, kind).unwrap();
            assert_eq!(checks.len(), top + 1);
            for c in checks {
                assert!(c.holds, "identity fails at {}", c.key);
            }
        }
    }
}

fn witt_of_fp_is_zmod() {
    for (p, n) in [(2u64, 0usize), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2), (5, 1)] {
        let w = WittRing::new(fp(p), p, n).unwrap();
        let table = zmod_isomorphism(p, n).unwrap();
        let q = table.len();
        assert_eq!(q as u128, w.cardinality());
        let mut distinct = table.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), q, "p={p} n={n}: not injective");
        for i in 0..q {
            for j in 0..q {
                assert_eq!(w.add(&table[i], &table[j]), table[(i + j) % q], "p={p} n={n}: {i}+{j}");
                assert_eq!(w.mul(&table[i], &table[j]), table[(i * j) % q], "p={p} n={n}: {i}*{j}");
            }
        }
        assert_eq!(p_nilpotency_degree(&w), Some(n as u32 + 1), "p={p} n={n}");
    }
}

fn comonad_and_equalizer() {
    let big = WittRing::new(fp(2), 2, 2).unwrap();
    let outer = WittRing::new(WittRing::new(fp(2), 2, 1).unwrap(), 2, 1).unwrap();
    let d = |x: &Vec<Vec<u64>>| coplethysm(x, 1, 1).unwrap();
    let all = big.elements();
    let mut pairs = 0;
    for a in &all {
        for b in &all {
            assert_eq!(d(&big.add(a, b)), outer.add(&d(a), &d(b)));
            assert_eq!(d(&big.mul(a, b)), outer.mul(&d(a), &d(b)));
            pairs += 1;
        }
    }
    assert_eq!(pairs, 64);
    assert_eq!(d(&big.one()), outer.one());

    let image: Vec<Vec<Vec<Vec<u64>>>> = all.iter().map(d).collect();
    let targets = outer.elements();
    assert_eq!(targets.len(), 16);
    for z in targets {
        match equalizer_check(&z).unwrap() {
            EqualizerVerdict::InImage(pre) => {
                assert!(image.contains(&z));
                assert_eq!(coplethysm(&pre, 1, 1).unwrap(), z);
            }
            EqualizerVerdict::NotInImage { .. } => assert!(!image.contains(&z)),
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for p in [2u64, 3] {
        for i in 0..100 {
            let level = 1 + i % 3;
            let big = WittRing::new(IntegerRing, p, level + 1).unwrap();
            let outer = WittRing::new(WittRing::new(IntegerRing, p, 1).unwrap(), p, level).unwrap();
            let x: Vec<BigInt> = (0..=level + 1).map(|_| n(rng.gen_range(-50..50))).collect();
            let g = iterated_ghost(&outer, &coplethysm(&x, 1, level).unwrap()).unwrap();
            assert_eq!(ghost_retraction(&g).unwrap(), big.ghost_map(&x).unwrap(), "p={p} x={x:?}");
        }
    }
}

fn delta_axioms_and_idempotents() {
    for p in [2u64, 3] {
        for levels in 1..=2 {
            let report = validate_delta(&DeltaTower::fermat(p, levels).unwrap(), Sample::Exhaustive);
            assert!(report.passed(), "{report}");
        }
    }
    for (p, levels) in [(2u64, 3usize), (3, 2)] {
        let t = DeltaTower::fermat_power(p, levels, 2).unwrap();
        let m = levels - 2;
        let (hi, lo) = (t.ring(m + 1), t.ring(m));
        assert_eq!(hi.cardinality(), (p.pow(levels as u32) as u128).pow(2));
        let all = hi.elements();
        let idempotents: Vec<&Vec<u64>> = all.iter().filter(|e| hi.mul(e, e) == **e).collect();
        assert_eq!(idempotents.len(), 4);
        for e in &idempotents {
            assert!(lo.is_zero(&t.apply_delta(m, e)));
            for x in &all {
                assert_eq!(
                    t.apply_delta(m, &hi.mul(e, x)),
                    lo.mul(&t.apply_tau(m, e), &t.apply_delta(m, x))
                );
            }
        }
        for a in &all {
            for b in &all {
                if hi.is_zero(&hi.mul(a, b)) {
                    assert_eq!(
                        t.apply_delta(m, &hi.add(a, b)),
                        lo.add(&t.apply_delta(m, a), &t.apply_delta(m, b))
                    );
                }
            }
        }
    }

    let rings: [(u64, &[&str], &[&str]); 3] = [
        (2, &["T"], &["T^2 + 2*T"]),
        (3, &["T"], &["T^3 + 3*T^2 - 3"]),
        (2, &["T", "U"], &["T^2 + 2*U", "U^2 + 2*T*U + 4"]),
    ];
    for (p, names, images) in rings {
        let vars = VarList::new(names.iter().copied());
        let phi: Vec<SparsePoly> = images.iter().map(|t| parse_polynomial(&vars, t).unwrap()).collect();
        let d = delta_from_frobenius(p, &vars, &[], &phi).unwrap();
        assert_eq!(frobenius_from_delta(&d), phi);
        let again = DeltaPolyRing::new(p, vars.clone(), d.generator_deltas().to_vec()).unwrap();
        let back = delta_from_frobenius(p, &vars, &[], &frobenius_from_delta(&again)).unwrap();
        assert_eq!(back.generator_deltas(), d.generator_deltas());
    }

    for p in [2u64, 3] {
        let pres = parse_presentation(&format!("Z[T]/({p}*T)")).unwrap();
        let identity = vec![SparsePoly::var(pres.vars(), 0)];
        let err = delta_from_frobenius(p, pres.vars(), pres.relations(), &identity).unwrap_err();
        assert!(matches!(err, DeltaError::NotAFrobeniusLift { .. }), "{err}");
    }
}

fn mu_uniqueness() {
    for (p, exps, k) in [(2u64, vec![1u32], 3u32), (2, vec![2], 3), (3, vec![1], 2)] {
        let report = hopf_delta_solve(p, &exps, k).unwrap();
        assert!(report.only_trivial(), "{report}");
        assert!(report.stable, "{report}");
    }
}

fn jet_adjunction() {
    let mut combos = 0;
    for spec in ["Z[t]", "Z[t]/(t^2-1)", "Z[t]/(t^3-t)", "Z[x,y]/(x*y)", "Z[x,y]/(x*y-1)"] {
        let a = parse_presentation(spec).unwrap();
        for p in [2u64, 3] {
            for order in [1usize, 2] {
                for c in [format!("f{p}"), format!("z{}", p * p)] {
                    let c = FiniteLocalRing::parse(&c).unwrap();
                    match adjunction_check(&a, p, order, &c, 300_000) {
                        Ok(r) => {
                            assert!(r.pass(), "{spec} p={p} n={order} {}: {r}", c.name());
                            combos += 1;
                        }
                        Err(JetError::TooLarge { .. }) => {}
                        Err(e) => panic!("{spec}: {e}"),
                    }
                }
            }
        }
    }
    assert!(combos >= 12, "only {combos} combinations fit the bound");

    // corrupt one coefficient of δ(t^2 − 1)
    let a = parse_presentation("Z[t]/(t^2-1)").unwrap();
    let mut jet = jet_presentation(&a, 2, 1).unwrap();
    let vars = jet.presentation.vars().clone();
    let mut rels = jet.presentation.relations().to_vec();
    let m = Monomial::new(vec![2, 1]);
    let bumped = rels[1]
        .terms()
        .map(|(mo, c)| (mo.clone(), if *mo == m { c + 1 } else { c.clone() }))
        .collect();
    rels[1] = SparsePoly::from_terms(&vars, bumped);
    jet.presentation = RingPresentation::new(None, vars, rels).unwrap();
    let r = adjunction_check_with(&a, &jet, &FiniteLocalRing::parse("z4").unwrap(), 300_000).unwrap();
    assert!(!r.pass(), "corrupted relation still passes: {r}");
}

fn canonical_lift() {
    let table = CmTable::embedded();
    for (k, j) in [(2u32, n(7)), (3, n(107)), (4, n(-32768).mod_floor(&n(625)))] {
        let lift = canonical_lift_j(5, &n(1), &n(1), k).unwrap();
        assert_eq!(lift.trace_of_frobenius, -3);
        assert_eq!(lift.j, j, "k={k}");
        let oracle = cm_oracle_j(5, &n(1), &n(1), k, &table).unwrap();
        assert_eq!(oracle.discriminant, -11);
        assert_eq!(oracle.j, lift.j);
        let again = frobenius_quotient(&lift.curve).unwrap();
        assert_eq!(again.j_invariant(), lift.j, "re-iteration moved j at k={k}");
    }
    let start = curve_from_j(&n(2), 5, 2).unwrap();
    assert_eq!(frobenius_quotient(&start).unwrap().j_invariant(), n(7));
    assert_eq!(canonical_lift_from(&start).unwrap().j, n(7));

    for (p, a, b, d) in [(7u64, 1i64, 1i64, -19i64), (7, 2, 1, -19), (11, 1, 5, -43), (11, 3, 2, -43)] {
        for k in 2..=3 {
            let lift = canonical_lift_j(p, &n(a), &n(b), k).unwrap();
            let oracle = cm_oracle_j(p, &n(a), &n(b), k, &table).unwrap();
            assert_eq!(oracle.discriminant, d);
            assert_eq!(oracle.class_number, 1);
            assert_eq!(lift.j, oracle.j, "p={p} ({a},{b}) k={k}");
        }
    }
}

fn selftest_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_wittkit"))
            .args(["selftest", "full"])
            .current_dir(dir.path())
            .env_remove("WITT_CACHE")
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
        out.stdout
    };
    let first = run();
    assert!(dir.path().join(".wittcache").is_dir());
    let second = run();
    assert!(!first.is_empty());
    assert_eq!(first, second, "selftest full output differs between runs");
}

fn main() {
    let criteria: [(&str, fn()); 8] = [
        ("universal-law identities", universal_law_identities),
        ("W_n(F_p) = Z/p^(n+1)", witt_of_fp_is_zmod),
        ("comonad and equalizer", comonad_and_equalizer),
        ("delta axioms and idempotents", delta_axioms_and_idempotents),
        ("mu_(p^n) uniqueness", mu_uniqueness),
        ("jet adjunction", jet_adjunction),
        ("canonical lift", canonical_lift),
        ("selftest determinism", selftest_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {} ({name}): {} [{secs:.1}s]", i + 1, if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
