use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{FiniteRing, LocalRing, Ring};
use super::SubstrateError;

/// ℤ/m for a machine-word modulus, residues kept in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Zmod {
    modulus: u64,
    /// Smallest prime factor of the modulus.
    prime: u64,
}

impl Zmod {
    pub fn new(modulus: u64) -> Result<Self, SubstrateError> {
        if modulus < 2 {
            return Err(SubstrateError::InvalidModulus(modulus.to_string()));
        }
        Ok(Zmod {
            modulus,
            prime: smallest_prime_factor(modulus),
        })
    }

    /// ℤ/p^k.
    pub fn prime_power(p: u64, k: u32) -> Result<Self, SubstrateError> {
        let m = p
            .checked_pow(k)
            .ok_or_else(|| SubstrateError::InvalidModulus(format!("{p}^{k}")))?;
        Zmod::new(m)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// True when the modulus is a power of a single prime, i.e. the ring is local.
    pub fn is_local(&self) -> bool {
        let mut m = self.modulus;
        while m % self.prime == 0 {
            m /= self.prime;
        }
        m == 1
    }

    pub fn reduce_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.modulus as i128) as u64
    }

    /// Canonical lift of a residue to an integer in `[0, m)`.
    pub fn lift(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub(crate) fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

impl Ring for Zmod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.modulus - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap()
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }
    fn scale(&self, n: i64, a: &u64) -> u64 {
        self.mul(&self.from_i64(n), a)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl FiniteRing for Zmod {
    fn cardinality(&self) -> u128 {
        self.modulus as u128
    }
    fn elements(&self) -> Vec<u64> {
        (0..self.modulus).collect()
    }
}

impl LocalRing for Zmod {
    fn residue_char(&self) -> u64 {
        self.prime
    }
    fn is_unit(&self, a: &u64) -> bool {
        a.gcd(&self.modulus) == 1
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod_u64(*a, self.modulus)
    }
    fn in_maximal_ideal(&self, a: &u64) -> bool {
        a % self.prime == 0
    }
}

/// ℤ/m with an arbitrary-precision modulus. Used for the high-precision p-adic
/// work in the canonical-lift iteration, where p^N outgrows a machine word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigZmod {
    modulus: BigInt,
    prime: u64,
}

impl BigZmod {
    pub fn prime_power(p: u64, k: u32) -> Self {
        assert!(is_prime(p), "BigZmod::prime_power needs a prime, got {p}");
        BigZmod {
            modulus: num_traits::pow(BigInt::from(p), k as usize),
            prime: p,
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// p-adic valuation of a residue, capped at the precision.
    pub fn valuation(&self, a: &BigInt) -> u32 {
        if a.is_zero() {
            return self.precision();
        }
        let p = BigInt::from(self.prime);
        let mut v = 0;
        let mut x = a.clone();
        while (&x % &p).is_zero() {
            x /= &p;
            v += 1;
        }
        v
    }

    /// The exponent N with modulus p^N.
    pub fn precision(&self) -> u32 {
        let p = BigInt::from(self.prime);
        let mut m = self.modulus.clone();
        let mut n = 0;
        while m > BigInt::one() {
            m /= &p;
            n += 1;
        }
        n
    }

    /// Exact division of a residue by p^e, landing in ℤ/p^(N-e).
    pub fn div_by_prime_power(&self, a: &BigInt, e: u32) -> Option<BigInt> {
        let pe = num_traits::pow(BigInt::from(self.prime), e as usize);
        if (a % &pe).is_zero() {
            Some(a / pe)
        } else {
            None
        }
    }
}

impl Ring for BigZmod {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a + b;
        if s >= self.modulus {
            s - &self.modulus
        } else {
            s
        }
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        if a.is_zero() {
            BigInt::zero()
        } else {
            &self.modulus - a
        }
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) % &self.modulus
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.mod_floor(&self.modulus)
    }
    fn scale(&self, n: i64, a: &BigInt) -> BigInt {
        (a * n).mod_floor(&self.modulus)
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

impl LocalRing for BigZmod {
    fn residue_char(&self) -> u64 {
        self.prime
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        !(a % BigInt::from(self.prime)).is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        let g = a.extended_gcd(&self.modulus);
        if g.gcd.abs().is_one() {
            Some((g.x * g.gcd.signum()).mod_floor(&self.modulus))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_are_normalised() {
        let r = Zmod::new(7).unwrap();
        assert_eq!(r.from_i64(-1), 6);
        assert_eq!(r.from_int(&BigInt::from(-15)), 6);
        assert_eq!(r.sub(&2, &5), 4);
        assert_eq!(r.format(&r.neg(&3)), "4");
    }

    #[test]
    fn inverses_and_units() {
        let r = Zmod::new(9).unwrap();
        assert!(r.is_local());
        assert_eq!(r.inv(&2), Some(5));
        assert_eq!(r.inv(&3), None);
        assert!(r.in_maximal_ideal(&6));
        assert!(!Zmod::new(6).unwrap().is_local());
    }

    #[test]
    fn big_modulus_division() {
        let r = BigZmod::prime_power(13, 30);
        assert_eq!(r.precision(), 30);
        let x = r.mul(&BigInt::from(13 * 13), &BigInt::from(5));
        assert_eq!(r.valuation(&x), 2);
        assert_eq!(r.div_by_prime_power(&x, 2), Some(BigInt::from(5)));
        assert_eq!(r.div_by_prime_power(&x, 3), None);
        let u = BigInt::from(1234567);
        assert_eq!(r.mul(&u, &r.inv(&u).unwrap()), BigInt::one());
    }

    #[test]
    fn prime_detection() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
