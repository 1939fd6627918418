use num_bigint::BigInt;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::substrate::{SparsePoly, VarList};

fn poly(vars: &VarList, text: &str) -> SparsePoly {
    crate::jets::parse_polynomial(vars, text).unwrap()
}

#[test]
fn fermat_tower_passes() {
    let t = DeltaTower::fermat(2, 3).unwrap();
    let r = validate_delta(&t, Sample::Exhaustive);
    assert!(r.passed(), "{r}");
    for p in [3u64, 5] {
        let r = validate_delta(&DeltaTower::fermat(p, 3).unwrap(), Sample::Exhaustive);
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn zero_tower_fails_with_witness() {
    let t = DeltaTower::zero(2, 3).unwrap();
    let r = validate_delta(&t, Sample::Exhaustive);
    assert!(!r.passed());
    let top = r.failures.iter().find(|f| f.level == 1 && f.axiom == 1).unwrap();
    assert_eq!((top.x.as_str(), top.y.as_deref()), ("1", Some("1")));
    assert_eq!((top.lhs.as_str(), top.rhs.as_str()), ("0", "3"));
}

#[test]
fn witt_tower_passes() {
    let t = DeltaTower::witt(2, 3).unwrap();
    let r = validate_delta(&t, Sample::Exhaustive);
    assert!(r.passed(), "{r}");
    let r = validate_delta(&DeltaTower::witt(3, 3).unwrap(), Sample::Random { count: 300, seed: 5 });
    assert!(r.passed(), "{r}");
}

#[test]
fn apply_delta_examples() {
    let t = DeltaTower::fermat(2, 3).unwrap();
    assert_eq!(t.apply_delta(1, &3), 1);
    assert_eq!(fermat_quotient(&BigInt::from(2), 2), BigInt::from(-1));
    let vars = VarList::new(["T"]);
    let ring = DeltaPolyRing::new(2, vars.clone(), vec![SparsePoly::zero(&vars)]).unwrap();
    assert!(ring.delta(&poly(&vars, "T^2")).is_zero());
}

#[test]
fn frobenius_of_fermat_tower_is_reduction() {
    let t = DeltaTower::fermat(2, 3).unwrap();
    for x in 0..8u64 {
        assert_eq!(t.frobenius(1, &x), x % 4);
    }
    assert_eq!(t.frobenius(1, &3), 3);
    let t = DeltaTower::fermat(2, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let r = t.ring(2);
    for _ in 0..50 {
        let (x, y) = (rng.gen_range(0..16u64), rng.gen_range(0..16u64));
        let hi = t.ring(3);
        assert_eq!(t.frobenius(2, &hi.mul(&x, &y)), r.mul(&t.frobenius(2, &x), &t.frobenius(2, &y)));
    }
}

#[test]
fn poly_ring_axioms_and_confluence() {
    let vars = VarList::new(["T", "U"]);
    let samples: Vec<SparsePoly> = ["T", "U", "T^2", "T*U", "3*T + 1", "U^3 - 2", "7"]
        .iter()
        .map(|s| poly(&vars, s))
        .collect();
    let zero = DeltaPolyRing::new(2, vars.clone(), vec![SparsePoly::zero(&vars); 2]).unwrap();
    assert!(validate_poly_delta(&zero, &samples).is_empty());
    let twisted = DeltaPolyRing::new(3, vars.clone(), vec![poly(&vars, "U"), poly(&vars, "T^2 + 1")]).unwrap();
    assert!(validate_poly_delta(&twisted, &samples).is_empty());
}

#[test]
fn delta_from_frobenius_examples() {
    let vars = VarList::new(["T"]);
    let d = delta_from_frobenius(2, &vars, &[], &[poly(&vars, "T^2")]).unwrap();
    assert!(d.generator_deltas()[0].is_zero());
    let d = delta_from_frobenius(2, &vars, &[], &[poly(&vars, "T^2 + 2*T")]).unwrap();
    assert_eq!(d.generator_deltas()[0], poly(&vars, "T"));
    let d = delta_from_frobenius(3, &vars, &[], &[poly(&vars, "T^3 + 3*T")]).unwrap();
    assert_eq!(d.generator_deltas()[0], poly(&vars, "T"));
    let err = delta_from_frobenius(2, &vars, &[poly(&vars, "2*T")], &[poly(&vars, "T")]).unwrap_err();
    assert!(matches!(err, DeltaError::NotAFrobeniusLift { .. }));
    // T ↦ T^2 + T + 1 on ℤ[T]/(T^2 + T + 1): φ(T) − T^2 = T + 1 ∉ (2, T^2+T+1)
    let rel = poly(&vars, "T^2 + T + 1");
    assert!(delta_from_frobenius(2, &vars, &[rel.clone()], &[poly(&vars, "T + 1")]).is_err());
    // φ(T) = T^2 + T^2 + T + 1 ≡ T^2 mod (2, rel) but T^2 + T + 1 is not 2·g
    let err = delta_from_frobenius(2, &vars, &[rel], &[poly(&vars, "2*T^2 + T + 1")]).unwrap_err();
    assert!(matches!(err, DeltaError::NotDivisible { .. }));
}

#[test]
fn roundtrip_delta_frobenius() {
    let vars = VarList::new(["T", "U"]);
    let ring = DeltaPolyRing::new(5, vars.clone(), vec![poly(&vars, "U^2 - T"), poly(&vars, "4")]).unwrap();
    let phi = frobenius_from_delta(&ring);
    let back = delta_from_frobenius(5, &vars, &[], &phi).unwrap();
    assert_eq!(back, ring);
}

#[test]
fn hopf_examples() {
    let r = hopf_delta_solve(2, &[1], 3).unwrap();
    assert!(r.only_trivial(), "{r}");
    assert!(r.stable);
    let r = hopf_delta_solve(3, &[1], 2).unwrap();
    assert!(r.only_trivial(), "{r}");
    let r = hopf_delta_solve(2, &[], 3).unwrap();
    assert_eq!(r.solutions, vec![Vec::<Vec<u64>>::new()]);
    let r = hopf_delta_solve(2, &[0], 2).unwrap();
    assert!(r.only_trivial());
    let r = hopf_delta_solve(2, &[1, 1], 2).unwrap();
    assert!(r.only_trivial() && r.stable);
    let r = hopf_delta_solve(2, &[2], 3).unwrap();
    assert!(r.only_trivial() && r.stable);
}

#[test]
fn idempotents_have_zero_delta() {
    for p in [2u64, 3] {
        for levels in 2..=3usize {
            for rank in 1..=2usize {
                let t = DeltaTower::fermat_power(p, levels, rank).unwrap();
                let m = levels - 2;
                let hi = t.ring(m + 1);
                let lo = t.ring(m);
                let all = hi.elements();
                let idempotents: Vec<&Vec<u64>> = all.iter().filter(|r| hi.mul(r, r) == **r).collect();
                assert_eq!(idempotents.len(), 1 << rank);
                for r in &idempotents {
                    assert!(lo.is_zero(&t.apply_delta(m, r)));
                    for s in &all {
                        let lhs = t.apply_delta(m, &hi.mul(r, s));
                        let rhs = lo.mul(&t.apply_tau(m, r), &t.apply_delta(m, s));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn orthogonal_additivity_in_z8_squared() {
    let t = DeltaTower::fermat_power(2, 3, 2).unwrap();
    let (hi, lo) = (t.ring(2), t.ring(1));
    let all = hi.elements();
    for a in &all {
        for b in &all {
            if hi.is_zero(&hi.mul(a, b)) {
                let lhs = t.apply_delta(1, &hi.add(a, b));
                let rhs = lo.add(&t.apply_delta(1, a), &t.apply_delta(1, b));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
