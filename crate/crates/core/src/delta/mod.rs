//! δ-structures: truncated towers, δ-polynomial rings over ℤ, the
//! Frobenius-lift correspondence and the Hopf compatibility solver.

mod hopf;
mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::substrate::{FiniteLocalRing, FiniteRing, PowerRing, Ring, SubstrateError, Zmod};
use crate::witt::{WittError, WittRing};

pub use hopf::{hopf_delta_solve, HopfSolveReport};
pub use poly::{delta_from_frobenius, frobenius_from_delta, validate_poly_delta, DeltaPolyRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaError {
    #[error("φ({generator}) does not reduce to {generator}^p modulo p")]
    NotAFrobeniusLift { generator: String },
    #[error("φ({generator}) - {generator}^p is not divisible by p: {source}")]
    NotDivisible { generator: String, source: SubstrateError },
    #[error("expected {expected} images, got {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search space of {0} assignments is too large")]
    TooLarge(u128),
    #[error(transparent)]
    Substrate(#[from] SubstrateError),
    #[error(transparent)]
    Witt(#[from] WittError),
}

type LevelMap<E> = Arc<dyn Fn(usize, &E) -> E + Send + Sync>;

/// Rings R_0 ← R_1 ← ... ← R_N with δ_m, τ_m : R_{m+1} → R_m.
#[derive(Clone)]
pub struct DeltaTower<R: Ring> {
    name: String,
    p: u64,
    rings: Vec<R>,
    delta: LevelMap<R::Elem>,
    tau: LevelMap<R::Elem>,
}

impl<R: Ring> fmt::Debug for DeltaTower<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeltaTower")
            .field("name", &self.name)
            .field("p", &self.p)
            .field("levels", &self.rings.len())
            .finish()
    }
}

/// (x − x^p)/p for an integer x.
pub fn fermat_quotient(x: &BigInt, p: u64) -> BigInt {
    (x - num_traits::pow(x.clone(), p as usize)) / BigInt::from(p)
}

fn zmod_levels(p: u64, levels: usize) -> Result<Vec<Zmod>, DeltaError> {
    (0..levels)
        .map(|m| Ok(Zmod::prime_power(p, m as u32 + 1)?))
        .collect()
}

fn fermat_delta(rings: &[Zmod], p: u64, m: usize, x: u64) -> u64 {
    let q = fermat_quotient(&BigInt::from(x), p);
    rings[m].from_int(&q)
}

impl<R: Ring> DeltaTower<R> {
    pub fn new(
        name: &str,
        p: u64,
        rings: Vec<R>,
        delta: impl Fn(usize, &R::Elem) -> R::Elem + Send + Sync + 'static,
        tau: impl Fn(usize, &R::Elem) -> R::Elem + Send + Sync + 'static,
    ) -> Self {
        DeltaTower {
            name: name.to_string(),
            p,
            rings,
            delta: Arc::new(delta),
            tau: Arc::new(tau),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn prime(&self) -> u64 {
        self.p
    }
    /// Number of rings N + 1.
    pub fn levels(&self) -> usize {
        self.rings.len()
    }
    pub fn ring(&self, m: usize) -> &R {
        &self.rings[m]
    }

    /// δ_m : R_{m+1} → R_m.
    pub fn apply_delta(&self, m: usize, x: &R::Elem) -> R::Elem {
        (self.delta)(m, x)
    }

    /// τ_m : R_{m+1} → R_m.
    pub fn apply_tau(&self, m: usize, x: &R::Elem) -> R::Elem {
        (self.tau)(m, x)
    }

    /// φ_m(x) = τ(x)^p + p·δ(x), a map R_{m+1} → R_m.
    pub fn frobenius(&self, m: usize, x: &R::Elem) -> R::Elem {
        let r = &self.rings[m];
        let t = self.apply_tau(m, x);
        r.add(&r.pow(&t, self.p), &r.scale(self.p as i64, &self.apply_delta(m, x)))
    }
}

impl DeltaTower<Zmod> {
    /// R_m = ℤ/p^{m+1}, δ the Fermat quotient of a lift.
    pub fn fermat(p: u64, levels: usize) -> Result<Self, DeltaError> {
        let rings = zmod_levels(p, levels)?;
        let (r1, r2) = (rings.clone(), rings.clone());
        Ok(DeltaTower::new(
            "fermat",
            p,
            rings,
            move |m, x| fermat_delta(&r1, p, m, *x),
            move |m, x| x % r2[m].modulus(),
        ))
    }

    /// Same rings as `fermat`, δ = 0. Not a δ-structure.
    pub fn zero(p: u64, levels: usize) -> Result<Self, DeltaError> {
        let rings = zmod_levels(p, levels)?;
        let r2 = rings.clone();
        Ok(DeltaTower::new("zero", p, rings, |_, _| 0, move |m, x| x % r2[m].modulus()))
    }
}

impl DeltaTower<PowerRing<Zmod>> {
    /// (ℤ/p^{m+1})^r with the Fermat δ in every coordinate.
    pub fn fermat_power(p: u64, levels: usize, r: usize) -> Result<Self, DeltaError> {
        let base = zmod_levels(p, levels)?;
        let rings: Vec<PowerRing<Zmod>> = base.iter().map(|z| PowerRing::new(z.clone(), r)).collect();
        let (b1, b2) = (base.clone(), base);
        Ok(DeltaTower::new(
            "fermat-power",
            p,
            rings,
            move |m, x: &Vec<u64>| x.iter().map(|c| fermat_delta(&b1, p, m, *c)).collect(),
            move |m, x: &Vec<u64>| x.iter().map(|c| c % b2[m].modulus()).collect(),
        ))
    }
}

impl DeltaTower<WittRing<FiniteLocalRing>> {
    /// R_m = W_m(𝔽_p), δ the component shift, τ the truncation.
    pub fn witt(p: u64, levels: usize) -> Result<Self, DeltaError> {
        let fp = FiniteLocalRing::prime_field(p)?;
        let rings = (0..levels)
            .map(|m| WittRing::new(fp.clone(), p, m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DeltaTower::new(
            "witt",
            p,
            rings,
            |_, x: &Vec<Vec<u64>>| x[1..].to_vec(),
            |_, x: &Vec<Vec<u64>>| x[..x.len() - 1].to_vec(),
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sample {
    Exhaustive,
    Random { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub level: usize,
    /// 1: additivity, 2: product rule, 3: δ(1) = 0.
    pub axiom: u8,
    pub x: String,
    pub y: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub tower: String,
    pub p: u64,
    pub levels: usize,
    pub checked: u64,
    /// First failure per (level, axiom).
    pub failures: Vec<AxiomFailure>,
}

impl DeltaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for DeltaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} tower={} p={} levels={} checks={}",
            self.tower, self.p, self.levels, self.checked
        )?;
        for e in &self.failures {
            write!(f, "\n  level {} axiom {}: x={}", e.level, e.axiom, e.x)?;
            if let Some(y) = &e.y {
                write!(f, " y={y}")?;
            }
            write!(f, ": {} != {}", e.lhs, e.rhs)?;
        }
        Ok(())
    }
}

/// Checks the shifted δ-ring axioms on every level of the tower:
/// δ(x+y) = δx + δy − Σ_{0<i<p} (C(p,i)/p) τx^i τy^{p−i},
/// δ(xy) = τx^p δy + δx τy^p + p δx δy, and δ(1) = 0.
pub fn validate_delta<R: FiniteRing>(tower: &DeltaTower<R>, sample: Sample) -> DeltaReport {
    let p = tower.p;
    let coeffs: Vec<BigInt> = (1..p)
        .map(|i| binomial(BigInt::from(p), BigInt::from(i)) / BigInt::from(p))
        .collect();
    let mut report = DeltaReport {
        tower: tower.name.clone(),
        p,
        levels: tower.levels(),
        checked: 0,
        failures: Vec::new(),
    };
    let mut rng = match sample {
        Sample::Random { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
        Sample::Exhaustive => None,
    };
    for m in 0..tower.levels().saturating_sub(1) {
        let (lo, hi) = (&tower.rings[m], &tower.rings[m + 1]);
        let d = |x: &R::Elem| tower.apply_delta(m, x);
        let t = |x: &R::Elem| tower.apply_tau(m, x);
        let coeff_elems: Vec<R::Elem> = coeffs.iter().map(|c| lo.from_int(c)).collect();

        let d1 = d(&hi.one());
        report.checked += 1;
        if !lo.is_zero(&d1) {
            report.failures.push(AxiomFailure {
                level: m,
                axiom: 3,
                x: hi.format(&hi.one()),
                y: None,
                lhs: lo.format(&d1),
                rhs: lo.format(&lo.zero()),
            });
        }

        let elems = hi.elements();
        let pairs: Vec<(usize, usize)> = match (&sample, rng.as_mut()) {
            (Sample::Random { count, .. }, Some(rng)) => (0..*count)
                .map(|_| (rng.gen_range(0..elems.len()), rng.gen_range(0..elems.len())))
                .collect(),
            _ => (0..elems.len())
                .flat_map(|i| (0..elems.len()).map(move |j| (i, j)))
                .collect(),
        };
        let (mut sum_failed, mut prod_failed) = (false, false);
        for (i, j) in pairs {
            let (x, y) = (&elems[i], &elems[j]);
            let (dx, dy, tx, ty) = (d(x), d(y), t(x), t(y));
            report.checked += 2;
            if !sum_failed {
                let lhs = d(&hi.add(x, y));
                let mut rhs = lo.add(&dx, &dy);
                for (k, c) in coeff_elems.iter().enumerate() {
                    let i = k as u64 + 1;
                    let term = lo.mul(c, &lo.mul(&lo.pow(&tx, i), &lo.pow(&ty, p - i)));
                    rhs = lo.sub(&rhs, &term);
                }
                if lhs != rhs {
                    sum_failed = true;
                    report.failures.push(AxiomFailure {
                        level: m,
                        axiom: 1,
                        x: hi.format(x),
                        y: Some(hi.format(y)),
                        lhs: lo.format(&lhs),
                        rhs: lo.format(&rhs),
                    });
                }
            }
            if !prod_failed {
                let lhs = d(&hi.mul(x, y));
                let rhs = lo.add(
                    &lo.add(&lo.mul(&lo.pow(&tx, p), &dy), &lo.mul(&dx, &lo.pow(&ty, p))),
                    &lo.scale(p as i64, &lo.mul(&dx, &dy)),
                );
                if lhs != rhs {
                    prod_failed = true;
                    report.failures.push(AxiomFailure {
                        level: m,
                        axiom: 2,
                        x: hi.format(x),
                        y: Some(hi.format(y)),
                        lhs: lo.format(&lhs),
                        rhs: lo.format(&rhs),
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests;
