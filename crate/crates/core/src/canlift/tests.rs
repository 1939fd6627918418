use num_bigint::BigInt;

use super::*;
use crate::substrate::{BigZmod, Ring, UniPoly};

fn n(x: i64) -> BigInt {
    BigInt::from(x)
}

fn curve(p: u64, k: u32, a: i64, b: i64) -> EllipticCurve {
    EllipticCurve::new(p, k, &n(a), &n(b)).unwrap()
}

fn modp(x: i64, m: i64) -> BigInt {
    n(x.rem_euclid(m))
}

#[test]
fn j_invariant_examples() {
    assert_eq!(curve(5, 1, 1, 1).j_invariant(), n(2));
    assert_eq!(curve(7, 2, 3, 0).j_invariant(), n(1728 % 49));
    let c = curve_from_j(&n(2), 5, 1).unwrap();
    assert_eq!((c.a().clone(), c.b().clone()), (n(1), n(4)));
    assert_eq!(c.j_invariant(), n(2));
    assert_eq!(curve_from_j(&n(0), 5, 1), Err(CanLiftError::SpecialJ));
    assert_eq!(curve_from_j(&n(1728), 7, 1), Err(CanLiftError::SpecialJ));
    assert!(matches!(EllipticCurve::new(5, 1, &n(0), &n(0)), Err(CanLiftError::SingularCurve(_))));
}

#[test]
fn point_count_examples() {
    assert_eq!(count_points_trace(5, 1, 1), (9, -3));
    assert_eq!(count_points_trace(5, 1, 0), (4, 2));
    assert_eq!(count_points_trace(5, 0, 1), (6, 0));
    assert!(is_ordinary(5, -3));
    assert!(!is_ordinary(5, 0));
    // Hasse bound over every smooth curve mod 7
    for a in 0..7 {
        for b in 0..7 {
            if (4 * a * a * a + 27 * b * b) % 7 != 0 {
                let (_, t) = count_points_trace(7, a, b);
                assert!(t * t <= 28);
            }
        }
    }
}

#[test]
fn division_polynomial_examples() {
    let r = BigZmod::prime_power(101, 1);
    let (a, b) = (n(3), n(7));
    let psi3 = division_polynomial(&r, &a, &b, 3);
    let expect = UniPoly::new(&r, [-9i64, 84, 18, 0, 3].iter().map(|&c| r.from_i64(c)).collect());
    assert_eq!(psi3, expect);
    assert_eq!(division_polynomial(&r, &a, &b, 5).degree(), Some(12));
    for m in [7usize, 11, 13] {
        let f = division_polynomial(&r, &a, &b, m);
        assert_eq!(f.degree(), Some((m * m - 1) / 2));
        assert_eq!(*f.leading().unwrap(), r.from_i64(m as i64));
    }
}

#[test]
fn division_polynomial_vanishes_on_torsion() {
    // y² = x³ + x + 1 over 𝔽_5 has 9 points; the rational 3-torsion points are
    // those with x(2P) = x(P), and their x-coordinates are the rational roots of
    // ψ_3 with f(x) a nonzero square
    let p = 5i64;
    let r = BigZmod::prime_power(5, 1);
    let psi3 = division_polynomial(&r, &n(1), &n(1), 3);
    let inv = |v: i64| (1..p).find(|w| v.rem_euclid(p) * w % p == 1).unwrap();
    let mut order3 = Vec::new();
    for x in 0..p {
        for y in 1..p {
            if (y * y - (x * x * x + x + 1)).rem_euclid(p) == 0 {
                let lambda = (3 * x * x + 1) * inv(2 * y) % p;
                if (lambda * lambda - 2 * x - x).rem_euclid(p) == 0 {
                    order3.push(x);
                }
            }
        }
    }
    order3.dedup();
    let square = |v: i64| (1..p).any(|y| y * y % p == v);
    let roots: Vec<i64> = (0..p)
        .filter(|&x| r.is_zero(&psi3.eval(&r, &n(x))) && square((x * x * x + x + 1) % p))
        .collect();
    assert!(!order3.is_empty());
    assert_eq!(order3, roots);
}

#[test]
fn velu_two_torsion_example() {
    let c = curve(7, 2, 2, 0);
    let h = UniPoly::new(c.ring(), vec![n(0), n(1)]);
    let q = velu_quotient(&c, &h).unwrap();
    assert_eq!(q.a(), &modp(-8, 49));
    assert_eq!(q.b(), &n(0));
}

#[test]
fn canonical_lift_p5() {
    let table = CmTable::embedded();
    let expect = [(2u32, 7i64), (3, 107), (4, (-32768i64).rem_euclid(625))];
    for (k, j) in expect {
        let lift = canonical_lift_j(5, &n(1), &n(1), k).unwrap();
        assert_eq!(lift.j, n(j), "k={k}: {:?}", lift.j_trace);
        let oracle = cm_oracle_j(5, &n(1), &n(1), k, &table).unwrap();
        assert_eq!(oracle.discriminant, -11);
        assert_eq!(oracle.j, lift.j);
        assert_eq!(lift.trace_of_frobenius, -3);
    }
    let lift = canonical_lift_j(5, &n(1), &n(1), 1).unwrap();
    assert_eq!((lift.j.clone(), lift.iterations), (n(2), 0));
}

#[test]
fn canonical_lift_other_curves() {
    let table = CmTable::embedded();
    let cases: [(u64, i64, i64, i64); 5] = [(7, 1, 1, 1233), (11, 1, 5, 4989), (13, 2, 4, 26658), (5, 2, 1, 264), (11, 2, 4, 8365)];
    for (p, a, b, j4) in cases {
        let lift = canonical_lift_j(p, &n(a), &n(b), 4).unwrap();
        assert_eq!(lift.j, n(j4), "p={p} ({a},{b}) trace {:?}", lift.j_trace);
        let oracle = cm_oracle_j(p, &n(a), &n(b), 4, &table).unwrap();
        assert_eq!(oracle.j, lift.j, "p={p} D={}", oracle.discriminant);
        // precision coherence
        let pk = num_traits::pow(BigInt::from(p), 2);
        let lower = canonical_lift_j(p, &n(a), &n(b), 2).unwrap();
        assert_eq!(lower.j, &lift.j % &pk);
    }
}

#[test]
fn fixed_point_and_negative_control() {
    let lift = canonical_lift_j(5, &n(1), &n(1), 3).unwrap();
    let again = frobenius_quotient(&lift.curve).unwrap();
    assert_eq!(again.j_invariant(), lift.j);

    let start = curve_from_j(&n(2), 5, 2).unwrap();
    let moved = frobenius_quotient(&start).unwrap();
    assert_eq!(moved.j_invariant(), n(7));
    let from = canonical_lift_from(&start).unwrap();
    assert_eq!(from.j_trace[0], n(2));
    assert_eq!(from.j, n(7));
}

#[test]
fn iteration_gains_a_digit_per_step() {
    // observed: a start that is right mod p only needs k − 1 steps, plus two
    // confirming steps
    for k in 2..=4u32 {
        let lift = canonical_lift_j(5, &n(1), &n(1), k).unwrap();
        assert_eq!(lift.iterations, k as usize + 1, "{:?}", lift.j_trace);
    }
}

#[test]
fn rejections() {
    assert!(matches!(canonical_lift_j(5, &n(0), &n(1), 2), Err(CanLiftError::SpecialJ)));
    // j = 5 is the supersingular j-invariant mod 13
    let c = curve_from_j(&n(5), 13, 2).unwrap();
    assert_eq!(c.trace().rem_euclid(13), 0);
    let err = canonical_lift_from(&c).unwrap_err();
    assert!(matches!(err, CanLiftError::NotOrdinary { .. }), "{err}");
    assert!(matches!(canonical_lift_j(17, &n(1), &n(1), 2), Err(CanLiftError::Unsupported(_))));
    assert!(matches!(canonical_lift_j(5, &n(1), &n(1), 5), Err(CanLiftError::Unsupported(_))));
    let t = CmTable::parse("-7 3375 1\n").unwrap();
    assert!(matches!(cm_oracle_j(5, &n(1), &n(1), 2, &t), Err(CanLiftError::NoCmData(-11))));
}

#[test]
fn verschiebung_factorization() {
    let lift = canonical_lift_j(5, &n(1), &n(1), 3).unwrap();
    let report = verify_vp_factorization(&lift.curve).unwrap();
    assert!(report.fixed && report.factorization, "{report}");
    assert_eq!(report.kernel.poly.degree(), Some(2));

    // a non-canonical lift: F moves j but V ∘ F still comes back
    let start = curve_from_j(&n(2), 5, 3).unwrap();
    let report = verify_vp_factorization(&start).unwrap();
    assert!(!report.fixed);
    assert!(report.factorization, "{report}");

    for (p, a, b) in [(7u64, 1i64, 1i64), (11, 1, 5), (13, 2, 4)] {
        let c = curve(p, 3, a, b);
        let report = verify_vp_factorization(&c).unwrap();
        assert!(report.factorization, "p={p}: {report}");
        assert_eq!(report.kernel.poly.degree(), Some(((p - 1) / 2) as usize));
    }
}

#[test]
fn etale_points_cross_check() {
    let lift = canonical_lift_j(5, &n(1), &n(1), 3).unwrap();
    let kernel = etale_kernel_poly(&lift.curve).unwrap();
    let check = etale_points_check(&kernel).unwrap();
    assert_eq!(check.unit_root_order, 4);
    assert_eq!(check.residue_roots, 2);
    assert!(check.passed(), "{check}");
    // same trace as E over 𝔽_p
    assert_eq!(kernel.quotient.trace(), -3);

    for (p, a, b, k) in [(7u64, 1i64, 1i64, 2u32), (11, 1, 5, 2), (13, 2, 4, 2), (5, 2, 1, 3)] {
        let kernel = etale_kernel_poly(&curve(p, k, a, b)).unwrap();
        let check = etale_points_check(&kernel).unwrap();
        assert!(check.passed(), "p={p}: {check}");
        assert_eq!(kernel.quotient.trace(), curve(p, 1, a, b).trace());
    }
}

#[test]
fn division_polynomial_mod_p_is_a_pth_power() {
    // recorded for p = 5, 7: ψ_p ≡ lc · h^p (mod p) with h the étale kernel
    for (p, a, b) in [(5u64, 1i64, 1i64), (5, 2, 1), (7, 1, 1), (7, 3, 2)] {
        let c = curve(p, 2, a, b);
        if !is_ordinary(p, c.trace()) {
            continue;
        }
        let kernel = etale_kernel_poly(&c).unwrap();
        let check = etale_points_check(&kernel).unwrap();
        assert!(check.division_polynomial_is_pth_power, "p={p} ({a},{b})");
    }
}

#[test]
fn field_roots_find_all_roots() {
    use rand::SeedableRng;
    let field = crate::substrate::GaloisRing::new(5, 1, 4).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    // X^4 − 1 splits into 4 roots over 𝔽_5 ⊂ 𝔽_625; X^624 − 1 would be all of them
    let f = UniPoly::new(&field, vec![field.from_i64(-1), field.zero(), field.zero(), field.zero(), field.one()]);
    let roots = super::points::field_roots(&field, &f, &mut rng).unwrap();
    assert_eq!(roots.len(), 4);
    for r in &roots {
        assert!(field.is_zero(&f.eval(&field, r)));
    }
    // an irreducible quadratic over 𝔽_5 splits over 𝔽_625
    let g = UniPoly::new(&field, vec![field.from_i64(2), field.zero(), field.one()]);
    assert_eq!(super::points::field_roots(&field, &g, &mut rng).unwrap().len(), 2);
}
