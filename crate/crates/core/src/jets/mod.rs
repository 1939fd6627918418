//! Finitely presented rings, δ-prolongation of relations, truncated jet
//! rings J^n(A), point counts and the adjunction J^n(A)(C) ≅ A(W_n(C)).

mod parse;

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::calculus::ghost_components;
use crate::substrate::{FiniteLocalRing, FiniteRing, PolyRing, Ring, SparsePoly, SubstrateError, VarList};
use crate::witt::{WittError, WittRing};

pub use parse::{parse_polynomial, parse_presentation};

/// Default cap on the number of assignments an enumeration may visit.
pub const DEFAULT_BOUND: u128 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JetError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{name}` at position {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("relation at position {position} is zero")]
    ZeroRelation { position: usize },
    #[error("jet rings need base Z, got Z/{0}")]
    BaseNotIntegers(u64),
    #[error("{modulus} is not zero in the target ring {ring}")]
    BaseMismatch { modulus: u64, ring: String },
    #[error("{count} assignments exceed the enumeration bound {bound}")]
    TooLarge { count: u128, bound: u128 },
    #[error("expected {expected} coordinates, got {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    NotDivisible(#[from] SubstrateError),
    #[error(transparent)]
    Witt(#[from] WittError),
}

/// Base ring (ℤ, or ℤ/m), generators and relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    modulus: Option<u64>,
    vars: VarList,
    relations: Vec<SparsePoly>,
}

impl RingPresentation {
    pub fn new(modulus: Option<u64>, vars: VarList, relations: Vec<SparsePoly>) -> Result<Self, JetError> {
        for (i, name) in vars.names().iter().enumerate() {
            if vars.names()[..i].contains(name) {
                return Err(JetError::DuplicateGenerator(name.clone()));
            }
        }
        if relations.iter().any(|f| f.is_zero()) {
            return Err(JetError::ZeroRelation { position: 0 });
        }
        let relations = relations.iter().map(|f| f.rename_into(&vars)).collect();
        Ok(RingPresentation {
            modulus,
            vars,
            relations,
        })
    }

    /// `None` for ℤ.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }
    pub fn vars(&self) -> &VarList {
        &self.vars
    }
    pub fn relations(&self) -> &[SparsePoly] {
        &self.relations
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            Some(m) => write!(f, "Z/{m}")?,
            None => write!(f, "Z")?,
        }
        write!(f, "[{}]", self.vars.names().join(","))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

/// J^n(A): generators g_0..g_n for every generator g of A (generator-major),
/// relations δ^j(f) for every relation f and 0 ≤ j ≤ n (relation-major).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetPresentation {
    pub p: u64,
    pub n: usize,
    pub presentation: RingPresentation,
}

impl fmt::Display for JetPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.presentation.fmt(f)
    }
}

/// Jet variables of order n: g_0, ..., g_n for each g in `base`.
pub fn jet_vars(base: &VarList, n: usize) -> VarList {
    VarList::new(
        base.names()
            .iter()
            .flat_map(|g| (0..=n).map(move |j| format!("{g}_{j}"))),
    )
}

/// Index of g_j among `jet_vars(base, n)`.
fn jet_index(i: usize, j: usize, n: usize) -> usize {
    i * (n + 1) + j
}

/// One δ on the jet ring: g is a polynomial over `jet_vars(base, order)`,
/// the result lives over `jet_vars(base, order + 1)`. Uses
/// δ(g) = (g(φ(t)) − g^p)/p with φ(g_m) = g_m^p + p·g_{m+1}.
pub fn jet_delta(g: &SparsePoly, base: &VarList, p: u64, order: usize) -> Result<SparsePoly, JetError> {
    let target = jet_vars(base, order + 1);
    let g = g.rename_into(&target);
    let pb = BigInt::from(p);
    let images: Vec<SparsePoly> = (0..target.len())
        .map(|k| {
            let (i, j) = (k / (order + 2), k % (order + 2));
            let x = SparsePoly::var(&target, k);
            if j <= order {
                x.pow(p as u32)
                    .add(&SparsePoly::var(&target, jet_index(i, j + 1, order + 1)).scale(&pb))
            } else {
                x
            }
        })
        .collect();
    let phi_g = g.substitute(&target, &images);
    Ok(phi_g.sub(&g.pow(p as u32)).exact_div_int(&pb)?)
}

/// δ^j(f) for f over the generators `f.vars()`, computed as j successive
/// single δ steps. Lives over `jet_vars(f.vars(), j)`.
pub fn prolong(f: &SparsePoly, p: u64, j: usize) -> Result<SparsePoly, JetError> {
    let base = f.vars().clone();
    let mut g = order_zero(f);
    for order in 0..j {
        g = jet_delta(&g, &base, p, order)?;
    }
    Ok(g)
}

/// f with every generator g renamed to g_0.
fn order_zero(f: &SparsePoly) -> SparsePoly {
    let base = f.vars();
    let target = jet_vars(base, 0);
    let map: Vec<usize> = (0..base.len()).collect();
    f.embed(&target, &map)
}

/// δ^0(f), ..., δ^n(f) in one pass through the ghost map: the jet vector
/// (f_0..f_n) is the Witt vector whose ghost components are f evaluated at
/// the ghost components of the generators' jet vectors.
pub fn prolong_all(f: &SparsePoly, p: u64, n: usize) -> Result<Vec<SparsePoly>, JetError> {
    let base = f.vars().clone();
    let target = jet_vars(&base, n);
    let ring = PolyRing::new(target.clone());
    let gens: Vec<Vec<SparsePoly>> = (0..base.len())
        .map(|i| {
            let v: Vec<SparsePoly> = (0..=n).map(|j| SparsePoly::var(&target, jet_index(i, j, n))).collect();
            ghost_components(&ring, p, &v)
        })
        .collect();
    let mut out: Vec<SparsePoly> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let args: Vec<SparsePoly> = gens.iter().map(|z| z[m].clone()).collect();
        let goal = f.evaluate(&ring, &args);
        let mut trial = out.clone();
        trial.push(SparsePoly::zero(&target));
        let partial = ghost_components(&ring, p, &trial)[m].clone();
        let pm = num_traits::pow(BigInt::from(p), m);
        out.push(goal.sub(&partial).exact_div_int(&pm)?);
    }
    Ok(out)
}

/// Emits J^n(A). Requires base ℤ.
pub fn jet_presentation(a: &RingPresentation, p: u64, n: usize) -> Result<JetPresentation, JetError> {
    if let Some(m) = a.modulus {
        return Err(JetError::BaseNotIntegers(m));
    }
    let vars = jet_vars(&a.vars, n);
    let mut relations = Vec::with_capacity(a.relations.len() * (n + 1));
    for f in &a.relations {
        for j in 0..=n {
            relations.push(prolong(f, p, j)?.rename_into(&vars));
        }
    }
    Ok(JetPresentation {
        p,
        n,
        presentation: RingPresentation::new(None, vars, relations)?,
    })
}

fn check_count(card: u128, r: usize, bound: u128) -> Result<u128, JetError> {
    let count = card.checked_pow(r as u32).unwrap_or(u128::MAX);
    if count > bound {
        return Err(JetError::TooLarge { count, bound });
    }
    Ok(count)
}

/// Every assignment of the generators to C satisfying all relations, in
/// enumeration order (first generator slowest).
fn solutions<R: FiniteRing>(
    ring: &R,
    nvars: usize,
    relations: &[SparsePoly],
    bound: u128,
) -> Result<Vec<Vec<R::Elem>>, JetError> {
    let count = check_count(ring.cardinality(), nvars, bound)? as u64;
    let elems = ring.elements();
    let q = elems.len() as u64;
    let compiled: Vec<_> = relations.iter().map(|f| f.compile()).collect();
    let out = (0..count)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut point = vec![elems[0].clone(); nvars];
            for slot in point.iter_mut().rev() {
                *slot = elems[(idx % q) as usize].clone();
                idx /= q;
            }
            compiled
                .iter()
                .all(|f| ring.is_zero(&f.evaluate(ring, &point)))
                .then_some(point)
        })
        .collect();
    Ok(out)
}

fn check_base(a: &RingPresentation, c: &FiniteLocalRing) -> Result<(), JetError> {
    if let Some(m) = a.modulus {
        if !c.is_zero(&c.from_i64(m as i64)) {
            return Err(JetError::BaseMismatch {
                modulus: m,
                ring: c.name(),
            });
        }
    }
    Ok(())
}

/// A(C) for a finite local ring C.
pub fn enumerate_points(a: &RingPresentation, c: &FiniteLocalRing, bound: u128) -> Result<Vec<Vec<Vec<u64>>>, JetError> {
    check_base(a, c)?;
    solutions(c, a.vars.len(), &a.relations, bound)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub count_jet: usize,
    pub count_witt: usize,
}

impl AdjunctionReport {
    pub fn pass(&self) -> bool {
        self.count_jet == self.count_witt
    }
}

impl fmt::Display for AdjunctionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass() { "pass" } else { "FAIL" };
        write!(f, "jet={} witt={} {verdict}", self.count_jet, self.count_witt)
    }
}

/// Compares |J^n(A)(C)| with |A(W_n(C))| for a given jet presentation.
pub fn adjunction_check_with(
    a: &RingPresentation,
    jet: &JetPresentation,
    c: &FiniteLocalRing,
    bound: u128,
) -> Result<AdjunctionReport, JetError> {
    let count_jet = enumerate_points(&jet.presentation, c, bound)?.len();
    let w = WittRing::new(c.clone(), jet.p, jet.n)?;
    let count_witt = solutions(&w, a.vars.len(), &a.relations, bound)?.len();
    Ok(AdjunctionReport { count_jet, count_witt })
}

pub fn adjunction_check(
    a: &RingPresentation,
    p: u64,
    n: usize,
    c: &FiniteLocalRing,
    bound: u128,
) -> Result<AdjunctionReport, JetError> {
    let jet = jet_presentation(a, p, n)?;
    adjunction_check_with(a, &jet, c, bound)
}

/// Coghost map on points: a jet point (generator-major, n+1 coordinates per
/// generator) goes to n+1 points of A, the m-th given by the ghost
/// components Z_m of every generator's jet vector.
pub fn coghost_eval<R: Ring>(ring: &R, p: u64, n: usize, point: &[R::Elem]) -> Result<Vec<Vec<R::Elem>>, JetError> {
    if point.len() % (n + 1) != 0 {
        return Err(JetError::ShapeMismatch {
            expected: (point.len() / (n + 1) + 1) * (n + 1),
            found: point.len(),
        });
    }
    let ghosts: Vec<Vec<R::Elem>> = point.chunks(n + 1).map(|v| ghost_components(ring, p, v)).collect();
    Ok((0..=n).map(|m| ghosts.iter().map(|z| z[m].clone()).collect()).collect())
}
