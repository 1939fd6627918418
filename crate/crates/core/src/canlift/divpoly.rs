use std::collections::HashMap;

use num_bigint::BigInt;

use crate::substrate::{BigZmod, LocalRing, Ring, UniPoly};

type P = UniPoly<BigInt>;

struct DivPolys<'a> {
    r: &'a BigZmod,
    f2: P,
    inv2: BigInt,
    memo: HashMap<usize, P>,
}

impl DivPolys<'_> {
    fn get(&mut self, n: usize) -> P {
        if let Some(f) = self.memo.get(&n) {
            return f.clone();
        }
        let r = self.r;
        let m = n / 2;
        let out = if n % 2 == 1 {
            let pm = self.get(m);
            let mut lhs = self.get(m + 2).mul(r, &pm.pow(r, 3));
            let mut rhs = self.get(m - 1).mul(r, &self.get(m + 1).pow(r, 3));
            // ψ_{2m}, ψ_{2m+2} carry a factor 2y that is squared away here
            if m % 2 == 0 {
                lhs = lhs.mul(r, &self.f2);
            } else {
                rhs = rhs.mul(r, &self.f2);
            }
            lhs.sub(r, &rhs)
        } else {
            let a = self.get(m + 2).mul(r, &self.get(m - 1).pow(r, 2));
            let b = self.get(m - 2).mul(r, &self.get(m + 1).pow(r, 2));
            self.get(m).mul(r, &a.sub(r, &b)).scale(r, &self.inv2)
        };
        self.memo.insert(n, out.clone());
        out
    }
}

/// The m-th division polynomial of y² = x³ + ax + b as a polynomial in x,
/// with the factor y dropped for even m (ψ_2 = 2). Degree (m² − 1)/2 for odd m.
pub fn division_polynomial(ring: &BigZmod, a: &BigInt, b: &BigInt, m: usize) -> UniPoly<BigInt> {
    let r = ring;
    let inv2 = r.inv(&r.from_i64(2)).expect("p is odd");
    let cubic = UniPoly::new(r, vec![b.clone(), a.clone(), r.zero(), r.one()]);
    let mut d = DivPolys {
        r,
        f2: cubic.mul(r, &cubic),
        inv2,
        memo: HashMap::new(),
    };
    let (a, b) = (a.clone(), b.clone());
    let c = |x: BigInt| r.from_int(&x);
    let a2 = &a * &a;
    let base: [(usize, Vec<BigInt>); 5] = [
        (0, vec![]),
        (1, vec![BigInt::from(1)]),
        (2, vec![BigInt::from(2)]),
        (3, vec![-&a2, 12 * &b, 6 * &a, BigInt::from(0), BigInt::from(3)]),
        (
            4,
            vec![
                -8 * &b * &b - &a2 * &a,
                -4 * &a * &b,
                -5 * &a2,
                20 * &b,
                5 * &a,
                BigInt::from(0),
                BigInt::from(1),
            ],
        ),
    ];
    for (n, coeffs) in base {
        let mut f = UniPoly::new(r, coeffs.into_iter().map(c).collect());
        if n == 4 {
            f = f.scale(r, &r.from_i64(4));
        }
        d.memo.insert(n, f);
    }
    d.get(m)
}
