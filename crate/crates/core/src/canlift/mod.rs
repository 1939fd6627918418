//! Canonical lifts of ordinary elliptic curves over 𝔽_p to ℤ/p^k.
//!
//! The lift is the fixed point of the quotient by the canonical (connected)
//! subgroup of order p. The quotient by the image of Ẽ[p] on the other side
//! gives back Ẽ, which exhibits [p] = V ∘ F explicitly.

mod cm;
mod divpoly;
mod isogeny;
mod points;

#[cfg(test)]
mod tests;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::substrate::{is_prime, BigZmod, LocalRing, Ring, SubstrateError};

pub use cm::{cm_oracle_j, CmOracle, CmTable};
pub use divpoly::division_polynomial;
pub use isogeny::{etale_kernel_poly, frobenius_quotient, velu_quotient, EtaleKernel};
pub use points::{etale_points_check, PointCheck};

/// Primes the iteration is set up for.
pub const SUPPORTED_PRIMES: [u64; 4] = [5, 7, 11, 13];
pub const MAX_PRECISION: u32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanLiftError {
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("singular curve: 4a^3 + 27b^2 is not a unit mod {0}")]
    SingularCurve(BigInt),
    #[error("j-invariant is 0 or 1728 mod p")]
    SpecialJ,
    #[error("curve is supersingular (a_p = {trace})")]
    NotOrdinary { trace: i64 },
    #[error("bad reduction: {0}")]
    BadReduction(String),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("no convergence after {} iterations; j trace: {}", .trace.len().saturating_sub(1), join(.trace))]
    NoConvergence { trace: Vec<BigInt> },
    #[error("discriminant {0} has no tabulated class polynomial with a matching root")]
    NoCmData(i64),
    #[error("CM table: {0}")]
    Table(String),
    #[error(transparent)]
    Substrate(#[from] SubstrateError),
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// y² = x³ + ax + b over ℤ/p^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticCurve {
    ring: BigZmod,
    p: u64,
    k: u32,
    a: BigInt,
    b: BigInt,
}

impl EllipticCurve {
    pub fn new(p: u64, k: u32, a: &BigInt, b: &BigInt) -> Result<Self, CanLiftError> {
        if p < 5 || !is_prime(p) {
            return Err(CanLiftError::Unsupported(format!("p = {p} must be a prime at least 5")));
        }
        if k == 0 {
            return Err(CanLiftError::Unsupported("precision k must be at least 1".into()));
        }
        let ring = BigZmod::prime_power(p, k);
        let a = ring.from_int(a);
        let b = ring.from_int(b);
        let c = EllipticCurve { ring, p, k, a, b };
        if !c.ring.is_unit(&c.disc_core()) {
            return Err(CanLiftError::SingularCurve(c.ring.modulus().clone()));
        }
        Ok(c)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
    pub fn precision(&self) -> u32 {
        self.k
    }
    pub fn ring(&self) -> &BigZmod {
        &self.ring
    }
    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// 4a³ + 27b².
    fn disc_core(&self) -> BigInt {
        let r = &self.ring;
        let a3 = r.pow(&self.a, 3);
        r.add(&r.scale(4, &a3), &r.scale(27, &r.mul(&self.b, &self.b)))
    }

    pub fn j_invariant(&self) -> BigInt {
        let r = &self.ring;
        let num = r.scale(1728 * 4, &r.pow(&self.a, 3));
        let den = r.inv(&self.disc_core()).expect("discriminant is a unit");
        r.mul(&num, &den)
    }

    /// The same curve with coefficients reduced to a lower precision.
    pub fn reduce(&self, k: u32) -> EllipticCurve {
        assert!(k >= 1 && k <= self.k);
        EllipticCurve::new(self.p, k, &self.a, &self.b).expect("reduction of a smooth curve is smooth")
    }

    /// Reduction mod p as small integers.
    pub fn residue_coeffs(&self) -> (u64, u64) {
        let p = BigInt::from(self.p);
        let red = |x: &BigInt| x.mod_floor(&p).to_u64().unwrap();
        (red(&self.a), red(&self.b))
    }

    pub fn trace(&self) -> i64 {
        let (a, b) = self.residue_coeffs();
        count_points_trace(self.p, a, b).1
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + {}*x + {} (mod {})", self.a, self.b, self.ring.modulus())
    }
}

fn j_is_special(p: u64, j: &BigInt) -> bool {
    let jp = j.mod_floor(&BigInt::from(p));
    jp.is_zero() || jp == BigInt::from(1728u64 % p)
}

/// A curve with j-invariant j over ℤ/p^k: a = 3j/(1728 − j), b = 2j/(1728 − j).
pub fn curve_from_j(j: &BigInt, p: u64, k: u32) -> Result<EllipticCurve, CanLiftError> {
    if p < 5 || !is_prime(p) {
        return Err(CanLiftError::Unsupported(format!("p = {p} must be a prime at least 5")));
    }
    if j_is_special(p, j) {
        return Err(CanLiftError::SpecialJ);
    }
    let r = BigZmod::prime_power(p, k);
    let j = r.from_int(j);
    let den = r.inv(&r.sub(&r.from_i64(1728), &j)).expect("1728 - j is a unit");
    let a = r.mul(&r.scale(3, &j), &den);
    let b = r.mul(&r.scale(2, &j), &den);
    EllipticCurve::new(p, k, &a, &b)
}

/// (#E(𝔽_p), a_p) by summing the quadratic character of x³ + ax + b.
pub fn count_points_trace(p: u64, a: u64, b: u64) -> (u64, i64) {
    assert!(p <= 1000, "point counting enumerates 𝔽_p");
    let half = (p - 1) / 2;
    let mut n = 1u64;
    for x in 0..p {
        let f = (x * x % p * x + a % p * x + b % p) % p;
        if f == 0 {
            n += 1;
        } else if pow_mod(f, half, p) == 1 {
            n += 2;
        }
    }
    (n, (p + 1) as i64 - n as i64)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub fn is_ordinary(p: u64, trace: i64) -> bool {
    trace.rem_euclid(p as i64) != 0
}

/// Result of the fixed-point iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalLift {
    pub p: u64,
    pub k: u32,
    pub trace_of_frobenius: i64,
    /// j(Ẽ) mod p^k.
    pub j: BigInt,
    /// A model of the lift; coefficients change by isomorphism between steps.
    pub curve: EllipticCurve,
    /// j-invariants of the iterates, starting with the input curve.
    pub j_trace: Vec<BigInt>,
    pub iterations: usize,
}

impl CanonicalLift {
    pub fn modulus(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.p), self.k as usize)
    }
}

impl fmt::Display for CanonicalLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p = {}", self.p)?;
        writeln!(f, "k = {}", self.k)?;
        writeln!(f, "a_p = {}", self.trace_of_frobenius)?;
        writeln!(f, "j_canonical = {} (mod {})", self.j, self.modulus())?;
        writeln!(f, "curve = {}", self.curve)?;
        write!(f, "iterations = {}", self.iterations)
    }
}

pub(crate) fn check_parameters(p: u64, k: u32) -> Result<(), CanLiftError> {
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(CanLiftError::Unsupported(format!("p = {p} (supported: 5, 7, 11, 13)")));
    }
    if k == 0 || k > MAX_PRECISION {
        return Err(CanLiftError::Unsupported(format!("k = {k} (supported: 1..={MAX_PRECISION})")));
    }
    Ok(())
}

fn check_liftable(curve: &EllipticCurve) -> Result<i64, CanLiftError> {
    check_parameters(curve.p, curve.k)?;
    if j_is_special(curve.p, &curve.j_invariant()) {
        return Err(CanLiftError::SpecialJ);
    }
    let t = curve.trace();
    if !is_ordinary(curve.p, t) {
        return Err(CanLiftError::NotOrdinary { trace: t });
    }
    Ok(t)
}

/// Iterates Ẽ ↦ Ẽ/C_can at precision p^k, starting from the given lift,
/// until j repeats twice in a row. At most 4(k − 1) steps.
pub fn canonical_lift_from(start: &EllipticCurve) -> Result<CanonicalLift, CanLiftError> {
    let trace = check_liftable(start)?;
    let (p, k) = (start.p, start.k);
    let pb = BigInt::from(p);
    let j0 = start.j_invariant();
    let mut cur = start.clone();
    let mut js = vec![j0.clone()];
    let cap = 4 * (k as usize - 1);
    let mut iterations = 0;
    if k > 1 {
        loop {
            let n = js.len();
            if n >= 3 && js[n - 1] == js[n - 2] && js[n - 2] == js[n - 3] {
                break;
            }
            if iterations == cap {
                return Err(CanLiftError::NoConvergence { trace: js });
            }
            cur = frobenius_quotient(&cur)?;
            let j = cur.j_invariant();
            if (&j - &j0).mod_floor(&pb) != BigInt::zero() {
                return Err(CanLiftError::BadReduction(format!("iterate j = {j} does not reduce to j(E)")));
            }
            js.push(j);
            iterations += 1;
        }
    }
    Ok(CanonicalLift {
        p,
        k,
        trace_of_frobenius: trace,
        j: js.last().unwrap().clone(),
        curve: cur,
        j_trace: js,
        iterations,
    })
}

/// The canonical lift of y² = x³ + ax + b over 𝔽_p to ℤ/p^k.
pub fn canonical_lift_j(p: u64, a: &BigInt, b: &BigInt, k: u32) -> Result<CanonicalLift, CanLiftError> {
    check_parameters(p, k)?;
    let pb = BigInt::from(p);
    let start = EllipticCurve::new(p, k, &a.mod_floor(&pb), &b.mod_floor(&pb))?;
    canonical_lift_from(&start)
}

/// [p] = V ∘ F on a lift Ẽ: the Frobenius quotient Ẽ' and the quotient of Ẽ'
/// by the image of Ẽ[p].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VpReport {
    pub j_start: BigInt,
    /// j(Ẽ / C_can).
    pub j_frobenius: BigInt,
    /// j(Ẽ' / F(Ẽ[p])), which must be j(Ẽ).
    pub j_verschiebung: BigInt,
    pub kernel: EtaleKernel,
    /// Ẽ / C_can ≅ Ẽ, i.e. Ẽ is the canonical lift.
    pub fixed: bool,
    pub factorization: bool,
}

impl fmt::Display for VpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "j_start = {}", self.j_start)?;
        writeln!(f, "j_frobenius_quotient = {}", self.j_frobenius)?;
        writeln!(f, "j_verschiebung_quotient = {}", self.j_verschiebung)?;
        writeln!(f, "etale_kernel = {}", self.kernel.display())?;
        writeln!(f, "fixed_point = {}", self.fixed)?;
        write!(f, "factorization = {}", self.factorization)
    }
}

pub fn verify_vp_factorization(curve: &EllipticCurve) -> Result<VpReport, CanLiftError> {
    check_liftable(curve)?;
    let kernel = etale_kernel_poly(curve)?;
    let back = velu_quotient(&kernel.quotient, &kernel.poly)?;
    let j_start = curve.j_invariant();
    let j_frobenius = kernel.quotient.j_invariant();
    let j_verschiebung = back.j_invariant();
    Ok(VpReport {
        fixed: j_frobenius == j_start,
        factorization: j_verschiebung == j_start,
        j_start,
        j_frobenius,
        j_verschiebung,
        kernel,
    })
}
