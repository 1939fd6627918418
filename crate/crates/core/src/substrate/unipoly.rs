use num_bigint::BigInt;

use super::poly::SparsePoly;
use super::ring::{FiniteRing, LocalRing, Ring};
use super::zmod::{smallest_prime_factor, Zmod};
use super::SubstrateError;

/// Dense univariate polynomial over a ring, coefficients low degree first,
/// never with a zero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> UniPoly<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, c: E) -> Self {
        Self::new(ring, vec![c])
    }

    pub fn x<R: Ring<Elem = E>>(ring: &R) -> Self {
        Self::new(ring, vec![ring.zero(), ring.one()])
    }

    /// Image of a univariate integer polynomial (in any single variable).
    pub fn from_sparse<R: Ring<Elem = E>>(ring: &R, f: &SparsePoly) -> Result<Self, SubstrateError> {
        if f.vars().len() > 1 {
            let used = f.used_vars();
            if used.len() > 1 {
                return Err(SubstrateError::NotUnivariate(f.to_string()));
            }
        }
        let mut coeffs = vec![ring.zero(); f.total_degree().map_or(0, |d| d as usize + 1)];
        for (m, c) in f.terms() {
            let e = m.degree() as usize;
            coeffs[e] = ring.add(&coeffs[e], &ring.from_int(c));
        }
        Ok(Self::new(ring, coeffs))
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| ring.add(&self.coeff(ring, i), &other.coeff(ring, i)))
            .collect();
        Self::new(ring, c)
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = ring.add(&c[i + j], &ring.mul(a, b));
            }
        }
        Self::new(ring, c)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, s: &E) -> Self {
        Self::new(ring, self.coeffs.iter().map(|c| ring.mul(s, c)).collect())
    }

    /// Horner evaluation.
    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
    }

    pub fn derivative<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ring.scale(i as i64, c))
            .collect();
        Self::new(ring, c)
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(ring, ring.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    /// Substitute `g` for the variable.
    pub fn compose<R: Ring<Elem = E>>(&self, ring: &R, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(ring, g).add(ring, &Self::constant(ring, c.clone()))
        })
    }

    pub fn display<R: Ring<Elem = E>>(&self, ring: &R, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if ring.is_zero(c) {
                continue;
            }
            let cs = ring.format(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (i, cs.as_str()) {
                (0, _) => cs,
                (_, "1") => mono,
                _ => format!("{cs}*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

impl<E: Clone + PartialEq> UniPoly<E> {
    /// Division with remainder by a polynomial whose leading coefficient is a unit.
    pub fn divrem<R: LocalRing<Elem = E>>(&self, ring: &R, d: &Self) -> Result<(Self, Self), SubstrateError> {
        let dl = d.leading().ok_or(SubstrateError::DivisionByZero)?;
        let inv = ring.inv(dl).ok_or(SubstrateError::DivisionByZero)?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![ring.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = ring.mul(&r[i], &inv);
            if ring.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = ring.sub(&r[i - dd + j], &ring.mul(&c, dc));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((Self::new(ring, q), Self::new(ring, r)))
    }

    pub fn rem<R: LocalRing<Elem = E>>(&self, ring: &R, d: &Self) -> Result<Self, SubstrateError> {
        Ok(self.divrem(ring, d)?.1)
    }

    pub fn monic<R: LocalRing<Elem = E>>(&self, ring: &R) -> Result<Self, SubstrateError> {
        let l = self.leading().ok_or(SubstrateError::DivisionByZero)?;
        let inv = ring.inv(l).ok_or(SubstrateError::DivisionByZero)?;
        Ok(self.scale(ring, &inv))
    }

    /// `base^e mod m`.
    pub fn pow_mod<R: LocalRing<Elem = E>>(&self, ring: &R, e: &BigInt, m: &Self) -> Result<Self, SubstrateError> {
        let mut acc = Self::constant(ring, ring.one()).rem(ring, m)?;
        let base = self.rem(ring, m)?;
        let mag = e.magnitude();
        for i in (0..mag.bits()).rev() {
            acc = acc.mul(ring, &acc).rem(ring, m)?;
            if mag.bit(i) {
                acc = acc.mul(ring, &base).rem(ring, m)?;
            }
        }
        Ok(acc)
    }

    /// Monic gcd; only meaningful over a field.
    pub fn gcd<R: LocalRing<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self, SubstrateError> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(ring, &b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic(ring)
        }
    }

    /// Every root in a finite ring, by exhaustive evaluation in enumeration order.
    pub fn find_roots<R: FiniteRing<Elem = E>>(&self, ring: &R) -> Vec<E> {
        ring.elements()
            .into_iter()
            .filter(|a| ring.is_zero(&self.eval(ring, a)))
            .collect()
    }

    /// Newton lift of a simple root mod the maximal ideal to an exact root.
    pub fn hensel_root<R: LocalRing<Elem = E>>(&self, ring: &R, r0: &E) -> Result<E, SubstrateError> {
        let df = self.derivative(ring);
        if !ring.in_maximal_ideal(&self.eval(ring, r0)) {
            return Err(SubstrateError::NotARootModP);
        }
        if !ring.is_unit(&df.eval(ring, r0)) {
            return Err(SubstrateError::NonUnitDerivative);
        }
        let mut r = r0.clone();
        // quadratic convergence; 64 steps covers any precision representable here
        for _ in 0..64 {
            let fr = self.eval(ring, &r);
            if ring.is_zero(&fr) {
                return Ok(r);
            }
            let inv = ring.inv(&df.eval(ring, &r)).ok_or(SubstrateError::NonUnitDerivative)?;
            r = ring.sub(&r, &ring.mul(&fr, &inv));
        }
        Err(SubstrateError::NoConvergence)
    }
}

impl UniPoly<u64> {
    /// Rabin's test over the prime field `fp`.
    pub fn is_irreducible_mod_p(&self, fp: &Zmod) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let Ok(f) = self.monic(fp) else {
            return false;
        };
        let p = BigInt::from(fp.modulus());
        let x = Self::x(fp);
        // x^(p^i) mod f for i = 0..=d
        let mut frob = vec![x.clone()];
        for i in 0..d {
            let next = frob[i].pow_mod(fp, &p, &f).unwrap();
            frob.push(next);
        }
        if frob[d].sub(fp, &x).rem(fp, &f).unwrap() != Self::zero() {
            return false;
        }
        let mut rest = d as u64;
        while rest > 1 {
            let q = smallest_prime_factor(rest);
            while rest % q == 0 {
                rest /= q;
            }
            let g = frob[d / q as usize].sub(fp, &x).gcd(fp, &f).unwrap();
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substrate::{GaloisRing, VarList};

    fn zp(m: u64) -> Zmod {
        Zmod::new(m).unwrap()
    }

    fn ints(ring: &Zmod, cs: &[i64]) -> UniPoly<u64> {
        UniPoly::new(ring, cs.iter().map(|c| ring.from_i64(*c)).collect())
    }

    #[test]
    fn roots_over_prime_fields() {
        let f5 = zp(5);
        assert_eq!(ints(&f5, &[-1, 0, 1]).find_roots(&f5), vec![1, 4]);
        let f2 = zp(2);
        assert!(ints(&f2, &[1, 1, 1]).find_roots(&f2).is_empty());
        let f7 = zp(7);
        assert_eq!(ints(&f7, &[-1, 0, 0, 1]).find_roots(&f7), vec![1, 2, 4]);
    }

    #[test]
    fn roots_agree_with_naive_evaluation_in_gf9() {
        let r = GaloisRing::new(3, 1, 2).unwrap();
        let f = UniPoly::new(&r, vec![r.from_i64(1), r.zero(), r.one()]);
        let naive: Vec<_> = r
            .elements()
            .into_iter()
            .filter(|a| {
                let v = r.add(&r.from_i64(1), &r.pow(a, 2));
                r.is_zero(&v)
            })
            .collect();
        assert_eq!(f.find_roots(&r), naive);
        assert_eq!(naive.len(), 2);
    }

    #[test]
    fn hensel_examples() {
        let r = zp(25);
        assert_eq!(ints(&r, &[-1, 0, 1]).hensel_root(&r, &4).unwrap(), 24);
        let r = zp(49);
        assert_eq!(ints(&r, &[-2, 0, 1]).hensel_root(&r, &3).unwrap(), 10);
        let r = zp(8);
        assert_eq!(
            ints(&r, &[-1, 0, 1]).hensel_root(&r, &1),
            Err(SubstrateError::NonUnitDerivative)
        );
    }

    #[test]
    fn hensel_in_galois_ring() {
        // x^2 + 1 over GR(3^4, 2) lifts the square roots of -1 in F_9
        let r = GaloisRing::new(3, 4, 2).unwrap();
        let f = UniPoly::new(&r, vec![r.one(), r.zero(), r.one()]);
        let field = r.residue_field();
        let fbar = UniPoly::new(&field, vec![field.one(), field.zero(), field.one()]);
        for r0 in fbar.find_roots(&field) {
            let root = f.hensel_root(&r, &r0).unwrap();
            assert!(r.is_zero(&f.eval(&r, &root)));
            assert_eq!(r.reduce_to(&field, &root), r0);
        }
    }

    #[test]
    fn from_sparse_polynomial() {
        let vars = VarList::new(["x"]);
        let f: SparsePoly = SparsePoly::var(&vars, 0).pow(3).sub(&SparsePoly::constant(&vars, 1.into()));
        let r = zp(7);
        assert_eq!(UniPoly::from_sparse(&r, &f).unwrap(), ints(&r, &[-1, 0, 0, 1]));
    }

    #[test]
    fn rabin_test() {
        let f2 = zp(2);
        assert!(ints(&f2, &[1, 1, 1]).is_irreducible_mod_p(&f2));
        assert!(!ints(&f2, &[1, 0, 1]).is_irreducible_mod_p(&f2));
        // (x^2+x+1)^2 has no roots but is reducible
        assert!(!ints(&f2, &[1, 0, 1, 0, 1]).is_irreducible_mod_p(&f2));
        let f3 = zp(3);
        assert!(ints(&f3, &[1, 0, 1]).is_irreducible_mod_p(&f3));
        assert!(!ints(&f3, &[2, 0, 1]).is_irreducible_mod_p(&f3));
    }

    #[test]
    fn division_with_remainder() {
        let r = zp(9);
        let a = ints(&r, &[1, 2, 3, 4, 5]);
        let d = ints(&r, &[2, 0, 1]);
        let (q, rem) = a.divrem(&r, &d).unwrap();
        assert_eq!(q.mul(&r, &d).add(&r, &rem), a);
        assert!(rem.degree().unwrap() < 2);
    }
}
