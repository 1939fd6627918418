use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

/// A commutative ring with identity whose elements are plain values.
///
/// All rings in this crate are "context" objects: the ring value carries the
/// parameters (modulus, prime, level, ...) and every operation goes through it.
/// This lets `WittRing<WittRing<Zmod>>` be just another ring.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Human-readable form, also the form accepted by the CLI parsers.
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Image of an integer under the unique ring map from ℤ.
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        let one = self.one();
        let mut acc = self.zero();
        let (sign, mag) = (n.sign(), n.magnitude());
        for i in (0..mag.bits()).rev() {
            acc = self.add(&acc, &acc);
            if mag.bit(i) {
                acc = self.add(&acc, &one);
            }
        }
        if sign == Sign::Minus {
            self.neg(&acc)
        } else {
            acc
        }
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `n · a` for a machine integer `n`, by doubling.
    fn scale(&self, n: i64, a: &Self::Elem) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = a.clone();
        let mut m = n.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            m >>= 1;
            if m > 0 {
                base = self.add(&base, &base);
            }
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }
}

/// A ring with finitely many elements and a deterministic enumeration order.
pub trait FiniteRing: Ring {
    fn cardinality(&self) -> u128;

    /// Every element exactly once, in a fixed order.
    fn elements(&self) -> Vec<Self::Elem>;
}

/// A local ring with finite residue field of characteristic `residue_char`.
pub trait LocalRing: Ring {
    fn residue_char(&self) -> u64;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn in_maximal_ideal(&self, a: &Self::Elem) -> bool {
        !self.is_unit(a)
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntegerRing;

impl Ring for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn pow(&self, a: &BigInt, e: u64) -> BigInt {
        num_traits::pow(a.clone(), e as usize)
    }
    fn scale(&self, n: i64, a: &BigInt) -> BigInt {
        a * n
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

impl IntegerRing {
    /// Units of ℤ are ±1.
    pub fn inv(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
}

/// R^r with componentwise operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerRing<R: Ring> {
    base: R,
    r: usize,
}

impl<R: Ring> PowerRing<R> {
    pub fn new(base: R, r: usize) -> Self {
        PowerRing { base, r }
    }
    pub fn base(&self) -> &R {
        &self.base
    }
    pub fn rank(&self) -> usize {
        self.r
    }
}

impl<R: Ring> Ring for PowerRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.r]
    }
    fn one(&self) -> Self::Elem {
        vec![self.base.one(); self.r]
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.mul(x, y)).collect()
    }
    fn format(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a.iter().map(|x| self.base.format(x)).collect();
        format!("<{}>", parts.join(","))
    }
}

impl<R: FiniteRing> FiniteRing for PowerRing<R> {
    fn cardinality(&self) -> u128 {
        self.base.cardinality().pow(self.r as u32)
    }

    /// Cartesian power, first coordinate fastest.
    fn elements(&self) -> Vec<Self::Elem> {
        let base = self.base.elements();
        let mut out: Vec<Self::Elem> = vec![Vec::new()];
        for _ in 0..self.r {
            let mut next = Vec::with_capacity(out.len() * base.len());
            for x in &base {
                for v in &out {
                    let mut w = v.clone();
                    w.push(x.clone());
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}
