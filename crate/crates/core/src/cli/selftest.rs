use std::path::Path;

use clap::ValueEnum;
use num_bigint::BigInt;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Out, Res};
use crate::calculus::{generate, install_laws, is_graded, verify_identity, LawKind, PolyCache};
use crate::canlift::{canonical_lift_from, curve_from_j, CmTable};
use crate::delta::{
    delta_from_frobenius, frobenius_from_delta, hopf_delta_solve, validate_delta, DeltaError, DeltaPolyRing, DeltaTower,
    Sample,
};
use crate::jets::{adjunction_check, parse_presentation, JetError};
use crate::substrate::{FiniteLocalRing, FiniteRing, IntegerRing, Ring, SparsePoly, VarList};
use crate::witt::{self, EqualizerVerdict, WittRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum Level {
    Quick,
    Full,
}

type Check = Result<(), String>;

struct Suite<'a> {
    out: &'a mut Out,
    passed: usize,
    failed: usize,
}

impl Suite<'_> {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Check) {
        match f() {
            Ok(()) => {
                self.passed += 1;
                self.out.line(format!("PASS {name}"));
            }
            Err(e) => {
                self.failed += 1;
                self.out.line(format!("FAIL {name}: {e}"));
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const ARITH: [LawKind; 5] = [
    LawKind::Sum,
    LawKind::Product,
    LawKind::Negation,
    LawKind::BjFromWitt,
    LawKind::WittFromBj,
];

pub(crate) fn run(out: &mut Out, cache: &Path, level: Level) -> Res {
    let full = level == Level::Full;
    let mut suite = Suite {
        out,
        passed: 0,
        failed: 0,
    };
    let law_sets: Vec<(u64, usize)> = if full {
        vec![(2, 4), (3, 4), (5, 3)]
    } else {
        vec![(2, 3), (3, 3)]
    };
    for &(p, n) in &law_sets {
        for kind in ARITH {
            suite.run(&format!("cache p={p} n<={n} kind={kind}"), || cached_laws(cache, p, n, kind));
        }
    }
    let id_sets: Vec<(u64, usize)> = if full { law_sets.clone() } else { vec![(2, 2), (3, 2)] };
    for &(p, n) in &id_sets {
        for kind in ARITH {
            suite.run(&format!("identity p={p} n<={n} kind={kind}"), || {
                let checks = verify_identity(p, n, kind).map_err(s)?;
                match checks.iter().find(|c| !c.holds) {
                    Some(c) => Err(format!("fails at {}", c.key)),
                    None => Ok(()),
                }
            });
            suite.run(&format!("graded p={p} n<={n} kind={kind}"), || {
                let family = crate::calculus::laws(p, n, kind).map_err(s)?;
                match family.iter().find(|u| !is_graded(u)) {
                    Some(u) => Err(format!("not graded at {}", u.key())),
                    None => Ok(()),
                }
            });
        }
    }

    let mut witt_sets = vec![(2u64, 1usize), (2, 2), (3, 1)];
    if full {
        witt_sets.push((5, 1));
    }
    for &(p, n) in &witt_sets {
        suite.run(&format!("ring_axioms W_{n}(F_{p})"), || ring_axioms(p, n));
    }
    let mut iso_sets = vec![(2u64, 1usize), (2, 2), (3, 1), (3, 2)];
    if full {
        iso_sets.push((5, 1));
    }
    for &(p, n) in &iso_sets {
        suite.run(&format!("zmod_isomorphism p={p} n={n}"), || zmod_iso(p, n));
    }
    suite.run("coplethysm_homomorphism W_2(F_2)", coplethysm_hom);
    suite.run("equalizer W_1W_1(F_2)", equalizer_brute_force);
    for p in [2u64, 3] {
        suite.run(&format!("ghost_retraction p={p}"), || retraction(p));
    }

    let mut fermat = vec![(2u64, 3usize), (3, 3)];
    if full {
        fermat.push((5, 2));
    }
    for &(p, levels) in &fermat {
        suite.run(&format!("delta fermat p={p} levels={levels}"), || {
            let r = validate_delta(&DeltaTower::fermat(p, levels).map_err(s)?, Sample::Exhaustive);
            ensure(r.passed(), || r.to_string())
        });
    }
    suite.run("delta zero tower rejected", || {
        let r = validate_delta(&DeltaTower::zero(2, 2).map_err(s)?, Sample::Exhaustive);
        ensure(!r.passed(), || "the zero map passed the δ axioms".into())
    });
    suite.run("delta witt p=2 levels=3", || {
        let r = validate_delta(&DeltaTower::witt(2, 3).map_err(s)?, Sample::Exhaustive);
        ensure(r.passed(), || r.to_string())
    });
    for (p, levels) in [(2u64, 3usize), (3, 2)] {
        suite.run(&format!("idempotents p={p} levels={levels}"), || idempotents(p, levels));
    }
    suite.run("frobenius roundtrip", frobenius_roundtrip);
    suite.run("obstruction Z[T]/(pT)", || match delta_from_frobenius(
        2,
        &VarList::new(["T"]),
        &[SparsePoly::var(&VarList::new(["T"]), 0).scale(&BigInt::from(2))],
        &[SparsePoly::var(&VarList::new(["T"]), 0)],
    ) {
        Err(DeltaError::NotAFrobeniusLift { .. }) => Ok(()),
        other => Err(format!("expected NotAFrobeniusLift, got {other:?}")),
    });
    let mut hopf = vec![(2u64, vec![1u32], 3u32), (3, vec![1], 2)];
    if full {
        hopf.push((2, vec![2], 3));
    }
    for (p, exps, k) in hopf {
        suite.run(&format!("hopf p={p} exps={exps:?} k={k}"), || {
            let r = hopf_delta_solve(p, &exps, k).map_err(s)?;
            ensure(r.only_trivial() && r.stable, || r.to_string())
        });
    }

    let specs: &[&str] = if full {
        &["Z[t]", "Z[t]/(t^2-1)", "Z[t]/(t^3-t)", "Z[x,y]/(x*y)"]
    } else {
        &["Z[t]", "Z[t]/(t^2-1)"]
    };
    for spec in specs {
        for p in [2u64, 3] {
            suite.run(&format!("adjunction {spec} p={p} n=1 C=f{p}"), || {
                let a = parse_presentation(spec).map_err(s)?;
                let c = FiniteLocalRing::prime_field(p).map_err(s)?;
                match adjunction_check(&a, p, 1, &c, 300_000) {
                    Ok(r) => ensure(r.pass(), || r.to_string()),
                    Err(JetError::TooLarge { .. }) => Ok(()),
                    Err(e) => Err(e.to_string()),
                }
            });
        }
    }

    if full {
        let table = CmTable::embedded();
        let curves: [(u64, i64, i64, u32); 8] = [
            (5, 1, 1, 2),
            (5, 1, 1, 3),
            (5, 1, 1, 4),
            (7, 1, 1, 3),
            (11, 1, 5, 3),
            (13, 2, 4, 3),
            (5, 2, 1, 3),
            (11, 2, 4, 3),
        ];
        for (p, a, b, k) in curves {
            suite.run(&format!("canonical_lift p={p} a={a} b={b} k={k}"), || {
                let (lift, oracle) = super::commands::lift_agrees(p, a, b, k, &table).map_err(s)?;
                ensure(lift == oracle, || format!("lift {lift} != oracle {oracle}"))
            });
        }
        suite.run("canonical_lift non-canonical start p=5 j=2 k=2", || {
            let start = curve_from_j(&BigInt::from(2), 5, 2).map_err(s)?;
            let lift = canonical_lift_from(&start).map_err(s)?;
            ensure(lift.j == BigInt::from(7), || format!("moved to {}", lift.j))
        });
    }

    let level_name = if full { "full" } else { "quick" };
    suite.out.line(format!(
        "selftest {level_name}: {} passed, {} failed",
        suite.passed, suite.failed
    ));
    Ok(suite.failed == 0)
}

/// Levels 0..=n of one family from the cache, each compared with a fresh
/// generation and then installed for the later checks.
fn cached_laws(dir: &Path, p: u64, n: usize, kind: LawKind) -> Check {
    let cache = PolyCache::open(dir).map_err(s)?;
    let fresh = generate(p, n, kind).map_err(s)?;
    let mut loaded = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let name = format!("(p={p}, n={m}, kind={kind})");
        let family = cache.load_or_generate(p, m, kind).map_err(|e| format!("{name}: {e}"))?;
        let u = family[m].clone();
        if u != fresh[m] {
            return Err(format!("{name}: cached polynomial differs from a fresh generation"));
        }
        loaded.push(u);
    }
    install_laws(loaded);
    Ok(())
}

fn ring_axioms(p: u64, n: usize) -> Check {
    let w = WittRing::new(FiniteLocalRing::prime_field(p).map_err(s)?, p, n).map_err(s)?;
    let all = w.elements();
    let (zero, one) = (w.zero(), w.one());
    for a in &all {
        ensure(w.add(a, &zero) == *a && w.mul(a, &one) == *a, || format!("identity fails at {a:?}"))?;
        ensure(w.is_zero(&w.add(a, &w.neg(a))), || format!("a + (-a) != 0 at {a:?}"))?;
        for b in &all {
            ensure(w.add(a, b) == w.add(b, a), || format!("+ not commutative at {a:?}, {b:?}"))?;
            ensure(w.mul(a, b) == w.mul(b, a), || format!("* not commutative at {a:?}, {b:?}"))?;
            for c in &all {
                let ok = w.add(&w.add(a, b), c) == w.add(a, &w.add(b, c))
                    && w.mul(&w.mul(a, b), c) == w.mul(a, &w.mul(b, c))
                    && w.mul(a, &w.add(b, c)) == w.add(&w.mul(a, b), &w.mul(a, c));
                ensure(ok, || format!("axiom fails at {a:?}, {b:?}, {c:?}"))?;
            }
        }
    }
    Ok(())
}

fn zmod_iso(p: u64, n: usize) -> Check {
    let table = witt::zmod_isomorphism(p, n).map_err(s)?;
    let w = WittRing::new(FiniteLocalRing::prime_field(p).map_err(s)?, p, n).map_err(s)?;
    let q = table.len();
    let mut seen = table.clone();
    seen.sort();
    seen.dedup();
    ensure(seen.len() == q && q as u128 == w.cardinality(), || "not a bijection".into())?;
    for i in 0..q {
        for j in 0..q {
            ensure(w.add(&table[i], &table[j]) == table[(i + j) % q], || format!("{i} + {j}"))?;
            ensure(w.mul(&table[i], &table[j]) == table[(i * j) % q], || format!("{i} * {j}"))?;
        }
    }
    let e = witt::p_nilpotency_degree(&w);
    ensure(e == Some(n as u32 + 1), || format!("p_nilpotency_degree = {e:?}"))
}

fn coplethysm_hom() -> Check {
    let f2 = FiniteLocalRing::prime_field(2).map_err(s)?;
    let big = WittRing::new(f2.clone(), 2, 2).map_err(s)?;
    let outer = WittRing::new(WittRing::new(f2, 2, 1).map_err(s)?, 2, 1).map_err(s)?;
    let d = |x: &Vec<Vec<u64>>| witt::coplethysm(x, 1, 1).map_err(s);
    let all = big.elements();
    for a in &all {
        for b in &all {
            ensure(d(&big.add(a, b))? == outer.add(&d(a)?, &d(b)?), || format!("Δ(a+b) at {a:?}, {b:?}"))?;
            ensure(d(&big.mul(a, b))? == outer.mul(&d(a)?, &d(b)?), || format!("Δ(ab) at {a:?}, {b:?}"))?;
        }
    }
    ensure(d(&big.one())? == outer.one(), || "Δ(1) != 1".into())
}

fn equalizer_brute_force() -> Check {
    let f2 = FiniteLocalRing::prime_field(2).map_err(s)?;
    let big = WittRing::new(f2.clone(), 2, 2).map_err(s)?;
    let outer = WittRing::new(WittRing::new(f2, 2, 1).map_err(s)?, 2, 1).map_err(s)?;
    let image: Vec<Vec<Vec<Vec<u64>>>> = big
        .elements()
        .iter()
        .map(|x| witt::coplethysm(x, 1, 1))
        .collect::<Result<_, _>>()
        .map_err(s)?;
    for z in outer.elements() {
        let verdict = witt::equalizer_check(&z).map_err(s)?;
        let in_image = image.contains(&z);
        match verdict {
            EqualizerVerdict::InImage(pre) => {
                ensure(in_image && witt::coplethysm(&pre, 1, 1).map_err(s)? == z, || format!("wrong preimage for {z:?}"))?
            }
            EqualizerVerdict::NotInImage { .. } => ensure(!in_image, || format!("{z:?} is in the image"))?,
        }
    }
    Ok(())
}

fn retraction(p: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e7 + p);
    for n in 1..=2usize {
        let big = WittRing::new(IntegerRing, p, n + 1).map_err(s)?;
        let outer = WittRing::new(WittRing::new(IntegerRing, p, 1).map_err(s)?, p, n).map_err(s)?;
        for _ in 0..50 {
            let x: Vec<BigInt> = (0..=n + 1).map(|_| BigInt::from(rng.gen_range(-30i64..30))).collect();
            let g = witt::iterated_ghost(&outer, &witt::coplethysm(&x, 1, n).map_err(s)?).map_err(s)?;
            let back = witt::ghost_retraction(&g).map_err(s)?;
            ensure(back == big.ghost_map(&x).map_err(s)?, || format!("retraction fails at {x:?}"))?;
        }
    }
    Ok(())
}

fn idempotents(p: u64, levels: usize) -> Check {
    let t = DeltaTower::fermat_power(p, levels, 2).map_err(s)?;
    let m = levels - 2;
    let (hi, lo) = (t.ring(m + 1), t.ring(m));
    let all = hi.elements();
    let idem: Vec<&Vec<u64>> = all.iter().filter(|r| hi.mul(r, r) == **r).collect();
    ensure(idem.len() == 4, || format!("{} idempotents", idem.len()))?;
    for e in &idem {
        ensure(lo.is_zero(&t.apply_delta(m, e)), || format!("δ({e:?}) != 0"))?;
        for x in &all {
            let lhs = t.apply_delta(m, &hi.mul(e, x));
            ensure(lhs == lo.mul(&t.apply_tau(m, e), &t.apply_delta(m, x)), || format!("δ(ex) at {e:?}, {x:?}"))?;
        }
    }
    for a in &all {
        for b in &all {
            if hi.is_zero(&hi.mul(a, b)) {
                let lhs = t.apply_delta(m, &hi.add(a, b));
                let rhs = lo.add(&t.apply_delta(m, a), &t.apply_delta(m, b));
                ensure(lhs == rhs, || format!("orthogonal sum at {a:?}, {b:?}"))?;
            }
        }
    }
    Ok(())
}

fn frobenius_roundtrip() -> Check {
    let cases: [(u64, &[&str], &[&str]); 3] = [
        (2, &["T"], &["T^2+2*T"]),
        (3, &["T"], &["T^3"]),
        (2, &["T", "U"], &["T^2+2*U", "U^2+2*T*U"]),
    ];
    for (p, names, images) in cases {
        let vars = VarList::new(names.iter().copied());
        let phi: Vec<SparsePoly> = images
            .iter()
            .map(|t| crate::jets::parse_polynomial(&vars, t))
            .collect::<Result<_, _>>()
            .map_err(s)?;
        let d = delta_from_frobenius(p, &vars, &[], &phi).map_err(s)?;
        ensure(frobenius_from_delta(&d) == phi, || format!("φ → δ → φ changes {images:?}"))?;
        let again = DeltaPolyRing::new(p, vars.clone(), d.generator_deltas().to_vec()).map_err(s)?;
        let d2 = delta_from_frobenius(p, &vars, &[], &frobenius_from_delta(&again)).map_err(s)?;
        ensure(d2.generator_deltas() == d.generator_deltas(), || format!("δ → φ → δ changes {images:?}"))?;
    }
    Ok(())
}
