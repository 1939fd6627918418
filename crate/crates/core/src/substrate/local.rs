use num_bigint::BigInt;

use super::galois::GaloisRing;
use super::ring::{FiniteRing, LocalRing, Ring};
use super::zmod::{is_prime, Zmod};
use super::SubstrateError;

/// A finite local ring: ℤ/p^k or a Galois ring. Elements are coefficient
/// vectors (length 1 for ℤ/m) so both kinds share one element type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FiniteLocalRing {
    Zmod(Zmod),
    Galois(GaloisRing),
}

impl FiniteLocalRing {
    pub fn zmod(m: u64) -> Result<Self, SubstrateError> {
        let r = Zmod::new(m)?;
        if !r.is_local() {
            return Err(SubstrateError::InvalidModulus(format!("{m} is not a prime power")));
        }
        Ok(FiniteLocalRing::Zmod(r))
    }

    pub fn prime_field(p: u64) -> Result<Self, SubstrateError> {
        if !is_prime(p) {
            return Err(SubstrateError::InvalidModulus(format!("{p} is not prime")));
        }
        Self::zmod(p)
    }

    pub fn galois(p: u64, k: u32, d: usize) -> Result<Self, SubstrateError> {
        Ok(FiniteLocalRing::Galois(GaloisRing::new(p, k, d)?))
    }

    /// Parses `f<p>`, `z<m>`, `zmod:<m>`, `gf:<p>:<d>`, `gr:<p>:<k>:<d>`.
    pub fn parse(spec: &str) -> Result<Self, SubstrateError> {
        let s = spec.trim().to_ascii_lowercase();
        let bad = || SubstrateError::ParseRing(spec.to_string());
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        let fields: Vec<&str> = s.split(':').collect();
        match fields.as_slice() {
            ["zmod", m] => Self::zmod(num(m)?),
            ["gf", p, d] => Self::galois(num(p)?, 1, num(d)? as usize),
            ["gr", p, k, d] => Self::galois(num(p)?, num(k)? as u32, num(d)? as usize),
            [one] if one.starts_with('f') && !one.starts_with("gf") => Self::prime_field(num(&one[1..])?),
            [one] if one.starts_with('z') => Self::zmod(num(&one[1..])?),
            _ => Err(bad()),
        }
    }

    /// Canonical name accepted by `parse`.
    pub fn name(&self) -> String {
        match self {
            FiniteLocalRing::Zmod(r) if r.modulus() == r.residue_char() => format!("f{}", r.modulus()),
            FiniteLocalRing::Zmod(r) => format!("z{}", r.modulus()),
            FiniteLocalRing::Galois(g) => format!("gr:{}:{}:{}", g.prime(), g.level(), g.degree()),
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Vec<u64>, SubstrateError> {
        match self {
            FiniteLocalRing::Zmod(r) => {
                let n: BigInt = s.trim().parse().map_err(|_| SubstrateError::ParseElement(s.to_string()))?;
                Ok(vec![r.from_int(&n)])
            }
            FiniteLocalRing::Galois(g) => g.parse_elem(s),
        }
    }
}

impl Ring for FiniteLocalRing {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        match self {
            FiniteLocalRing::Zmod(_) => vec![0],
            FiniteLocalRing::Galois(g) => g.zero(),
        }
    }
    fn one(&self) -> Vec<u64> {
        match self {
            FiniteLocalRing::Zmod(r) => vec![r.one()],
            FiniteLocalRing::Galois(g) => g.one(),
        }
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        match self {
            FiniteLocalRing::Zmod(r) => vec![r.add(&a[0], &b[0])],
            FiniteLocalRing::Galois(g) => g.add(a, b),
        }
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        match self {
            FiniteLocalRing::Zmod(r) => vec![r.neg(&a[0])],
            FiniteLocalRing::Galois(g) => g.neg(a),
        }
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        match self {
            FiniteLocalRing::Zmod(r) => vec![r.sub(&a[0], &b[0])],
            FiniteLocalRing::Galois(g) => g.sub(a, b),
        }
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        match self {
            FiniteLocalRing::Zmod(r) => vec![r.mul(&a[0], &b[0])],
            FiniteLocalRing::Galois(g) => g.mul(a, b),
        }
    }
    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        match self {
            FiniteLocalRing::Zmod(r) => vec![r.from_int(n)],
            FiniteLocalRing::Galois(g) => g.from_int(n),
        }
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        match self {
            FiniteLocalRing::Zmod(r) => vec![r.from_i64(n)],
            FiniteLocalRing::Galois(g) => g.from_i64(n),
        }
    }
    fn format(&self, a: &Vec<u64>) -> String {
        match self {
            FiniteLocalRing::Zmod(r) => r.format(&a[0]),
            FiniteLocalRing::Galois(g) => g.format(a),
        }
    }
}

impl FiniteRing for FiniteLocalRing {
    fn cardinality(&self) -> u128 {
        match self {
            FiniteLocalRing::Zmod(r) => r.cardinality(),
            FiniteLocalRing::Galois(g) => g.cardinality(),
        }
    }
    fn elements(&self) -> Vec<Vec<u64>> {
        match self {
            FiniteLocalRing::Zmod(r) => r.elements().into_iter().map(|a| vec![a]).collect(),
            FiniteLocalRing::Galois(g) => g.elements(),
        }
    }
}

impl LocalRing for FiniteLocalRing {
    fn residue_char(&self) -> u64 {
        match self {
            FiniteLocalRing::Zmod(r) => r.residue_char(),
            FiniteLocalRing::Galois(g) => g.residue_char(),
        }
    }
    fn is_unit(&self, a: &Vec<u64>) -> bool {
        match self {
            FiniteLocalRing::Zmod(r) => r.is_unit(&a[0]),
            FiniteLocalRing::Galois(g) => g.is_unit(a),
        }
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        match self {
            FiniteLocalRing::Zmod(r) => r.inv(&a[0]).map(|x| vec![x]),
            FiniteLocalRing::Galois(g) => g.inv(a),
        }
    }
}

/// Every element of r, in the ring's enumeration order.
pub fn finite_ring_enumerate(r: &FiniteLocalRing) -> Vec<Vec<u64>> {
    r.elements()
}
