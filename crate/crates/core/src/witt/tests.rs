use num_bigint::BigInt;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::substrate::{FiniteLocalRing, IntegerRing, Zmod};

fn wz(p: u64, m: u64, n: usize) -> WittRing<Zmod> {
    WittRing::new(Zmod::new(m).unwrap(), p, n).unwrap()
}

fn zz(p: u64, n: usize) -> WittRing<IntegerRing> {
    WittRing::new(IntegerRing, p, n).unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn arithmetic_examples() {
    let w = wz(2, 2, 1);
    assert_eq!(w.add(&vec![1, 0], &vec![1, 0]), vec![0, 1]);
    assert_eq!(w.mul(&vec![0, 1], &vec![0, 1]), vec![0, 0]);
    let z = zz(2, 1);
    assert_eq!(z.neg(&ints(&[1, 1])), ints(&[-1, -2]));
}

#[test]
fn truncate_and_shift() {
    let w = wz(3, 3, 2);
    let a = vec![1, 2, 0];
    assert_eq!(w.truncate(&a).unwrap(), vec![1, 2]);
    assert_eq!(w.delta_shift(&a).unwrap(), vec![2, 0]);
    let w0 = wz(3, 3, 0);
    assert!(matches!(w0.delta_shift(&[1]), Err(WittError::ShapeMismatch { .. })));
    assert!(matches!(w0.truncate(&[1]), Err(WittError::ShapeMismatch { .. })));
    assert!(matches!(w.truncate(&[1, 2]), Err(WittError::ShapeMismatch { .. })));
    // τ(a+b) = τ(a)+τ(b)
    let lower = w.lower().unwrap();
    let b = vec![2, 2, 1];
    assert_eq!(
        w.truncate(&w.add(&a, &b)).unwrap(),
        lower.add(&w.truncate(&a).unwrap(), &w.truncate(&b).unwrap())
    );
}

#[test]
fn frobenius_examples() {
    let z = zz(2, 2);
    assert_eq!(z.frobenius(&ints(&[0, 1, 0])).unwrap(), ints(&[2, 1]));
    assert_eq!(z.ghost_map(&ints(&[0, 1, 0])).unwrap(), ints(&[0, 2, 6]));
    let z1 = zz(2, 1);
    let a = ints(&[3, 5]);
    assert_eq!(z1.frobenius(&a).unwrap(), ints(&[19]));
    assert_eq!(z1.ghost_map(&a).unwrap(), ints(&[3, 19]));
    let z0 = zz(2, 0);
    assert_eq!(z0.ghost_map(&z1.frobenius(&a).unwrap()).unwrap(), ints(&[19]));
}

#[test]
fn verschiebung_examples() {
    let w = wz(2, 2, 1);
    let w0 = wz(2, 2, 0);
    assert_eq!(w.verschiebung(&[1]).unwrap(), vec![0, 1]);
    assert_eq!(w0.raise().unwrap().level(), 1);
    // V(a)V(b) = pV(ab)
    let z2 = zz(2, 2);
    let z1 = zz(2, 1);
    let one = z1.one();
    let v = z2.verschiebung(&one).unwrap();
    let lhs = z2.mul(&v, &v);
    let rhs = z2.scale(2, &z2.verschiebung(&z1.mul(&one, &one)).unwrap());
    assert_eq!(lhs, rhs);
    // V lands in the kernel of W_n → W_0
    assert_eq!(v[0], BigInt::from(0));
}

#[test]
fn ghost_kernel_on_z4() {
    let w = wz(2, 4, 1);
    let kernel: Vec<Vec<u64>> = w
        .elements()
        .into_iter()
        .filter(|a| w.ghost_map(a).unwrap().iter().all(|z| *z == 0))
        .collect();
    assert_eq!(kernel, vec![vec![0, 0], vec![0, 2]]);
}

#[test]
fn ring_axioms_exhaustive() {
    for (p, m) in [(2u64, 2u64), (3, 3)] {
        let w = wz(p, m, 1);
        let all = w.elements();
        for a in &all {
            assert_eq!(w.add(a, &w.neg(a)), w.zero());
            assert_eq!(w.mul(a, &w.one()), *a);
            for b in &all {
                assert_eq!(w.add(a, b), w.add(b, a));
                assert_eq!(w.mul(a, b), w.mul(b, a));
                for c in &all {
                    assert_eq!(w.add(&w.add(a, b), c), w.add(a, &w.add(b, c)));
                    assert_eq!(w.mul(&w.mul(a, b), c), w.mul(a, &w.mul(b, c)));
                    assert_eq!(w.mul(a, &w.add(b, c)), w.add(&w.mul(a, b), &w.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn ring_axioms_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, m) in [(5u64, 5u64), (2, 4)] {
        let w = wz(p, m, 2);
        for _ in 0..500 {
            let mut r = || (0..3).map(|_| rng.gen_range(0..m)).collect::<Vec<u64>>();
            let (a, b, c) = (r(), r(), r());
            assert_eq!(w.add(&w.add(&a, &b), &c), w.add(&a, &w.add(&b, &c)));
            assert_eq!(w.mul(&w.mul(&a, &b), &c), w.mul(&a, &w.mul(&b, &c)));
            assert_eq!(w.mul(&a, &w.add(&b, &c)), w.add(&w.mul(&a, &b), &w.mul(&a, &c)));
            assert_eq!(w.add(&a, &w.neg(&a)), w.zero());
        }
    }
}

#[test]
fn structure_maps_are_homomorphisms_w2f2() {
    let w = wz(2, 2, 2);
    let lower = w.lower().unwrap();
    let base = Zmod::new(2).unwrap();
    let ghost_mul = |x: &Vec<u64>, y: &Vec<u64>| -> Vec<u64> { x.iter().zip(y).map(|(a, b)| base.mul(a, b)).collect() };
    let ghost_add = |x: &Vec<u64>, y: &Vec<u64>| -> Vec<u64> { x.iter().zip(y).map(|(a, b)| base.add(a, b)).collect() };
    let outer = WittRing::new(wz(2, 2, 1), 2, 1).unwrap();
    let all = w.elements();
    for a in &all {
        for b in &all {
            let s = w.add(a, b);
            let m = w.mul(a, b);
            for (f, name) in [
                (&(|x: &Vec<u64>| w.truncate(x).unwrap()) as &dyn Fn(&Vec<u64>) -> Vec<u64>, "tau"),
                (&|x: &Vec<u64>| w.frobenius(x).unwrap(), "phi"),
            ] {
                assert_eq!(f(&s), lower.add(&f(a), &f(b)), "{name}");
                assert_eq!(f(&m), lower.mul(&f(a), &f(b)), "{name}");
            }
            let g = |x: &Vec<u64>| w.ghost_map(x).unwrap();
            assert_eq!(g(&s), ghost_add(&g(a), &g(b)));
            assert_eq!(g(&m), ghost_mul(&g(a), &g(b)));
            let d = |x: &Vec<u64>| coplethysm(x, 1, 1).unwrap();
            assert_eq!(d(&s), outer.add(&d(a), &d(b)));
            assert_eq!(d(&m), outer.mul(&d(a), &d(b)));
        }
    }
}

#[test]
fn kernel_of_truncation_squares_into_p() {
    for m in [2u64, 4] {
        let w = wz(2, m, 1);
        let all = w.elements();
        let p_multiples: Vec<Vec<u64>> = all.iter().map(|x| w.scale(2, x)).collect();
        let ker: Vec<&Vec<u64>> = all.iter().filter(|x| x[0] == 0).collect();
        for a in &ker {
            for b in &ker {
                assert!(p_multiples.contains(&w.mul(a, b)));
            }
        }
    }
}

#[test]
fn zmod_isomorphism_exhaustive() {
    for (p, nmax) in [(2u64, 2usize), (3, 2), (5, 1)] {
        for n in 0..=nmax {
            let table = zmod_isomorphism(p, n).unwrap();
            let w = WittRing::new(FiniteLocalRing::prime_field(p).unwrap(), p, n).unwrap();
            let order = table.len();
            let mut sorted = table.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), order);
            for i in 0..order {
                for j in 0..order {
                    assert_eq!(w.mul(&table[i], &table[j]), table[(i * j) % order]);
                }
            }
        }
    }
}

#[test]
fn nilpotency_examples() {
    assert_eq!(p_nilpotency_degree(&wz(3, 3, 2)), Some(3));
    assert_eq!(p_nilpotency_degree(&wz(2, 2, 0)), Some(1));
    let w = wz(2, 4, 1);
    assert_eq!(p_nilpotency_degree(&w), Some(3));
    let two = w.from_i64(2);
    assert_eq!(two, vec![2, 3]);
    assert_eq!(w.mul(&two, &two), vec![0, 2]);
    assert_eq!(p_nilpotency_degree(&zz(2, 1)), None);
}

#[test]
fn coplethysm_examples() {
    assert_eq!(coplethysm(&[0, 1, 2], 1, 1).unwrap(), vec![vec![0, 1], vec![1, 2]]);
    assert_eq!(coplethysm(&[4, 5], 1, 0).unwrap(), vec![vec![4, 5]]);
    assert!(coplethysm(&[0, 1], 1, 1).is_err());
    // counit: first window is the truncation to W_m
    let w = wz(2, 2, 3);
    for a in w.elements() {
        let d = coplethysm(&a, 2, 1).unwrap();
        assert_eq!(d[0], a[..3].to_vec());
    }
}

#[test]
fn coassociativity_w3f2() {
    let w = wz(2, 2, 3);
    for a in w.elements() {
        // Δ_{2,1} then W_1(Δ_{1,1})
        let left: Vec<Vec<Vec<u64>>> = coplethysm(&a, 2, 1)
            .unwrap()
            .iter()
            .map(|x| coplethysm(x, 1, 1).unwrap())
            .collect();
        // Δ_{1,2} then Δ_{1,1} over the base W_1
        let right = coplethysm(&coplethysm(&a, 1, 2).unwrap(), 1, 1).unwrap();
        // the two nestings index x_{i+j+k} with outer/inner roles swapped
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    assert_eq!(left[i][j][k], right[i][j][k]);
                }
            }
        }
    }
}

#[test]
fn equalizer_examples() {
    let z = vec![vec![1, 2], vec![2, 3]];
    assert_eq!(equalizer_check(&z).unwrap(), EqualizerVerdict::InImage(vec![1, 2, 3]));
    let z = vec![vec![1, 2], vec![4, 3]];
    assert_eq!(equalizer_check(&z).unwrap(), EqualizerVerdict::NotInImage { index: 0 });
    let x = vec![5, 6, 7, 8];
    assert_eq!(
        equalizer_check(&coplethysm(&x, 1, 2).unwrap()).unwrap(),
        EqualizerVerdict::InImage(x)
    );
}

#[test]
fn equalizer_matches_brute_force_image() {
    let inner = wz(2, 2, 1);
    let outer = WittRing::new(inner.clone(), 2, 1).unwrap();
    let image: Vec<Vec<Vec<u64>>> = wz(2, 2, 2)
        .elements()
        .iter()
        .map(|x| coplethysm(x, 1, 1).unwrap())
        .collect();
    let all = outer.elements();
    assert_eq!(all.len(), 16);
    for z in all {
        let verdict = equalizer_check(&z).unwrap();
        assert_eq!(matches!(verdict, EqualizerVerdict::InImage(_)), image.contains(&z));
    }
}

#[test]
fn ghost_retraction_inverts_coplethysm() {
    assert_eq!(ghost_retraction(&[vec![1, 2]]).unwrap(), vec![1, 2]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, n) in [(2u64, 1usize), (3, 1), (3, 2)] {
        let big = zz(p, n + 1);
        let outer = WittRing::new(zz(p, 1), p, n).unwrap();
        for _ in 0..10 {
            let x: Vec<BigInt> = (0..=n + 1).map(|_| BigInt::from(rng.gen_range(-20i64..20))).collect();
            let g = iterated_ghost(&outer, &coplethysm(&x, 1, n).unwrap()).unwrap();
            assert_eq!(ghost_retraction(&g).unwrap(), big.ghost_map(&x).unwrap());
        }
    }
}

#[test]
fn coordinate_conversion_roundtrip() {
    let w = wz(3, 9, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let a: Vec<u64> = (0..4).map(|_| rng.gen_range(0..9)).collect();
        assert_eq!(w.from_witt_coords(&w.to_witt_coords(&a).unwrap()).unwrap(), a);
    }
}

#[test]
fn inverse_of_unit() {
    let w = wz(3, 9, 2);
    let a = vec![2, 5, 7];
    let b = w.inv(&a).unwrap();
    assert_eq!(w.mul(&a, &b), w.one());
    assert!(w.inv(&vec![3, 1, 1]).is_none());
}

#[test]
fn tuple_splitting() {
    assert_eq!(split_tuple("(1, 2,(3,4))").unwrap(), vec!["1", "2", "(3,4)"]);
    assert_eq!(split_tuple("([1,2],3)").unwrap(), vec!["[1,2]", "3"]);
    assert!(split_tuple("(1,2").is_err());
    assert!(split_tuple("(1,,2)").is_err());
}
