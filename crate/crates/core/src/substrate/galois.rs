use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;

use super::ring::{FiniteRing, LocalRing, Ring};
use super::unipoly::UniPoly;
use super::zmod::{is_prime, Zmod};
use super::SubstrateError;

const IRREDUCIBLES: &str = include_str!("../../data/irreducibles.txt");

fn tabulated() -> &'static HashMap<(u64, usize), Vec<u64>> {
    static TABLE: OnceLock<HashMap<(u64, usize), Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut map = HashMap::new();
        for line in IRREDUCIBLES.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<u64> = line
                .split_whitespace()
                .map(|s| s.parse().expect("irreducibles.txt: bad integer"))
                .collect();
            let (p, d) = (nums[0], nums[1] as usize);
            assert_eq!(nums.len(), d + 3, "irreducibles.txt: wrong arity for p={p} d={d}");
            map.insert((p, d), nums[2..].to_vec());
        }
        map
    })
}

/// The tabulated monic irreducible of degree `d` over 𝔽_p, constant term first.
pub fn tabulated_irreducible(p: u64, d: usize) -> Option<Vec<u64>> {
    tabulated().get(&(p, d)).cloned()
}

/// The Galois ring GR(p^k, d) = (ℤ/p^k)[x]/(f) with f monic of degree d and
/// irreducible mod p. Elements are coefficient vectors of length d, constant
/// term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisRing {
    p: u64,
    k: u32,
    base: Zmod,
    /// Monic modulus, length d + 1.
    modulus: Vec<u64>,
}

impl GaloisRing {
    /// GR(p^k, d) with the tabulated modulus.
    pub fn new(p: u64, k: u32, d: usize) -> Result<Self, SubstrateError> {
        let f = tabulated_irreducible(p, d).ok_or(SubstrateError::NoTabulatedModulus { p, d })?;
        Self::with_modulus(p, k, f)
    }

    /// GR(p^k, deg f) with an explicit monic modulus (coefficients reduced mod p^k).
    pub fn with_modulus(p: u64, k: u32, f: Vec<u64>) -> Result<Self, SubstrateError> {
        if !is_prime(p) || k == 0 {
            return Err(SubstrateError::InvalidModulus(format!("GR({p}^{k})")));
        }
        let base = Zmod::prime_power(p, k)?;
        let f: Vec<u64> = f.iter().map(|c| c % base.modulus()).collect();
        if f.len() < 2 || *f.last().unwrap() != 1 {
            return Err(SubstrateError::InvalidModulus(format!("{f:?} is not monic of degree >= 1")));
        }
        let fp = Zmod::new(p)?;
        let reduced = UniPoly::new(&fp, f.iter().map(|c| c % p).collect());
        if !reduced.is_irreducible_mod_p(&fp) {
            return Err(SubstrateError::NotIrreducible(reduced.display(&fp, "x"), p));
        }
        Ok(GaloisRing {
            p,
            k,
            base,
            modulus: f,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
    pub fn level(&self) -> u32 {
        self.k
    }
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
    pub fn base(&self) -> &Zmod {
        &self.base
    }
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    /// The residue field GR(p, d) with the same modulus reduced mod p.
    pub fn residue_field(&self) -> GaloisRing {
        GaloisRing {
            p: self.p,
            k: 1,
            base: Zmod::new(self.p).unwrap(),
            modulus: self.modulus.iter().map(|c| c % self.p).collect(),
        }
    }

    /// Same modulus at a different level k'.
    pub fn at_level(&self, k: u32) -> Result<GaloisRing, SubstrateError> {
        GaloisRing::with_modulus(self.p, k, self.modulus.iter().map(|c| c % self.p).collect())
    }

    pub fn reduce_to(&self, other: &GaloisRing, a: &[u64]) -> Vec<u64> {
        a.iter().map(|c| c % other.base.modulus()).collect()
    }

    pub fn constant(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = c % self.base.modulus();
        v
    }

    /// The class of x.
    pub fn generator(&self) -> Vec<u64> {
        let mut v = self.constant(0);
        if self.degree() > 1 {
            v[1] = 1;
        } else {
            // d = 1: x ≡ -f_0
            v[0] = self.base.neg(&self.modulus[0]);
        }
        v
    }

    fn reduce_full(&self, mut c: Vec<u64>) -> Vec<u64> {
        let d = self.degree();
        let m = &self.base;
        for i in (d..c.len()).rev() {
            let top = c[i];
            if top == 0 {
                continue;
            }
            for j in 0..d {
                let t = m.mul(&top, &self.modulus[j]);
                c[i - d + j] = m.sub(&c[i - d + j], &t);
            }
            c[i] = 0;
        }
        c.truncate(d);
        c
    }

    /// Parses `[c0,c1,...]` (constant first) or a bare integer.
    pub fn parse_elem(&self, s: &str) -> Result<Vec<u64>, SubstrateError> {
        let s = s.trim();
        let bad = || SubstrateError::ParseElement(s.to_string());
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() > self.degree() {
                return Err(bad());
            }
            let mut v = self.constant(0);
            for (i, part) in parts.iter().enumerate() {
                let n: BigInt = part.parse().map_err(|_| bad())?;
                v[i] = self.base.from_int(&n);
            }
            Ok(v)
        } else {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(self.constant(self.base.from_int(&n)))
        }
    }
}

impl Ring for GaloisRing {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.constant(1)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let d = self.degree();
        let mut c = vec![0u64; 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.base.mul(x, y);
                c[i + j] = self.base.add(&c[i + j], &t);
            }
        }
        self.reduce_full(c)
    }
    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        self.constant(self.base.from_int(n))
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        self.constant(self.base.from_i64(n))
    }
    fn scale(&self, n: i64, a: &Vec<u64>) -> Vec<u64> {
        let c = self.base.from_i64(n);
        a.iter().map(|x| self.base.mul(&c, x)).collect()
    }
    fn format(&self, a: &Vec<u64>) -> String {
        if self.degree() == 1 {
            return a[0].to_string();
        }
        let parts: Vec<String> = a.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl FiniteRing for GaloisRing {
    fn cardinality(&self) -> u128 {
        (self.base.modulus() as u128).pow(self.degree() as u32)
    }

    /// Mixed-radix order with the constant coefficient varying fastest.
    fn elements(&self) -> Vec<Vec<u64>> {
        let q = self.base.modulus();
        let total = self.cardinality() as usize;
        let mut out = Vec::with_capacity(total);
        let mut cur = self.zero();
        for _ in 0..total {
            out.push(cur.clone());
            for c in cur.iter_mut() {
                *c += 1;
                if *c < q {
                    break;
                }
                *c = 0;
            }
        }
        out
    }
}

impl LocalRing for GaloisRing {
    fn residue_char(&self) -> u64 {
        self.p
    }
    fn is_unit(&self, a: &Vec<u64>) -> bool {
        a.iter().any(|c| c % self.p != 0)
    }
    fn in_maximal_ideal(&self, a: &Vec<u64>) -> bool {
        !self.is_unit(a)
    }

    /// Invert in the residue field by a^(q-2), then Newton-lift b ← b(2 − ab).
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if !self.is_unit(a) {
            return None;
        }
        let field = self.residue_field();
        let abar = self.reduce_to(&field, a);
        let q = field.cardinality() as u64;
        let mut b = field.pow(&abar, q - 2);
        let two = self.from_i64(2);
        let mut prec = 1;
        while prec < self.k {
            b = self.mul(&b, &self.sub(&two, &self.mul(a, &b)));
            prec *= 2;
        }
        debug_assert_eq!(self.mul(a, &b), self.one());
        Some(b)
    }
}
