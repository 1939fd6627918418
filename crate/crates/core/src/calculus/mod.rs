//! Universal polynomials for Witt-vector arithmetic in Buium–Joyal
//! coordinates, and their on-disk cache.

mod cache;
mod table;
mod verify;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::substrate::{is_prime, PolyRing, Ring, SparsePoly, SubstrateError, VarList};

pub use cache::PolyCache;
pub use table::{install_laws, laws, LawTable};
pub use verify::{is_graded, verify_identity, IdentityCheck};

pub const MAX_PRIME: u64 = 7;
pub const MAX_LEVEL: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalculusError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p={p}, n={n} is beyond the supported range (p <= {MAX_PRIME}, n <= {MAX_LEVEL})")]
    Ceiling { p: u64, n: usize },
    #[error(transparent)]
    Substrate(#[from] SubstrateError),
    #[error("no cache entry for {0}")]
    CacheMiss(LawKey),
    #[error("cache file {path}: {message}")]
    FormatError { path: String, message: String },
    #[error("cache file {path} holds {found}, expected {expected}")]
    KeyMismatch {
        path: String,
        expected: LawKey,
        found: LawKey,
    },
    #[error("cache I/O: {0}")]
    Io(String),
    #[error("unknown polynomial kind `{0}`")]
    UnknownKind(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LawKind {
    Sum,
    Product,
    Negation,
    Ghost,
    WittGhost,
    BjFromWitt,
    WittFromBj,
}

impl LawKind {
    pub const ALL: [LawKind; 7] = [
        LawKind::Sum,
        LawKind::Product,
        LawKind::Negation,
        LawKind::Ghost,
        LawKind::WittGhost,
        LawKind::BjFromWitt,
        LawKind::WittFromBj,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawKind::Sum => "sum",
            LawKind::Product => "product",
            LawKind::Negation => "negation",
            LawKind::Ghost => "ghost",
            LawKind::WittGhost => "wittghost",
            LawKind::BjFromWitt => "bjfromwitt",
            LawKind::WittFromBj => "wittfrombj",
        }
    }

    pub fn is_binary(self) -> bool {
        matches!(self, LawKind::Sum | LawKind::Product)
    }

    /// Variable list of the level-m polynomial.
    ///
    /// Binary laws use x0..xm, y0..ym. The Witt-to-BJ conversion takes
    /// classical Witt coordinates, named w0..wm; everything else uses x0..xm.
    pub fn vars(self, m: usize) -> VarList {
        match self {
            LawKind::Sum | LawKind::Product => {
                let xs = (0..=m).map(|i| format!("x{i}"));
                let ys = (0..=m).map(|i| format!("y{i}"));
                VarList::new(xs.chain(ys))
            }
            LawKind::BjFromWitt => VarList::indexed("w", m + 1),
            _ => VarList::indexed("x", m + 1),
        }
    }
}

impl fmt::Display for LawKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawKind {
    type Err = CalculusError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.to_ascii_lowercase().replace(['-', '_'], "");
        LawKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .or(match norm.as_str() {
                "add" => Some(LawKind::Sum),
                "mul" => Some(LawKind::Product),
                "neg" => Some(LawKind::Negation),
                _ => None,
            })
            .ok_or_else(|| CalculusError::UnknownKind(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LawKey {
    pub p: u64,
    pub n: usize,
    pub kind: LawKind,
}

impl fmt::Display for LawKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, n={}, kind={})", self.p, self.n, self.kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalPolynomial {
    pub p: u64,
    pub level: usize,
    pub kind: LawKind,
    pub body: SparsePoly,
}

impl UniversalPolynomial {
    pub fn key(&self) -> LawKey {
        LawKey {
            p: self.p,
            n: self.level,
            kind: self.kind,
        }
    }

    /// Weight of each variable, p^i for index i (x and y alike).
    pub fn weights(&self) -> Vec<u64> {
        let w: Vec<u64> = (0..=self.level).map(|i| self.p.pow(i as u32)).collect();
        if self.kind.is_binary() {
            w.iter().chain(&w).copied().collect()
        } else {
            w
        }
    }
}

fn check_params(p: u64, n: usize) -> Result<(), CalculusError> {
    if !is_prime(p) {
        return Err(CalculusError::NotPrime(p));
    }
    if p > MAX_PRIME || n > MAX_LEVEL {
        return Err(CalculusError::Ceiling { p, n });
    }
    Ok(())
}

/// Z_0(u_0), Z_1(u_0,u_1), ..., Z_n(u_0..u_n) evaluated in any ring, using
/// Z_l(u_s..u_{s+l}) = Z_{l-1}(u_s..u_{s+l-1})^p + p·Z_{l-1}(u_{s+1}..u_{s+l}).
pub fn ghost_components<R: Ring>(ring: &R, p: u64, u: &[R::Elem]) -> Vec<R::Elem> {
    // row[s] holds Z_l(u_s..u_{s+l}) for the current l
    let mut row: Vec<R::Elem> = u.to_vec();
    let mut out = Vec::with_capacity(u.len());
    for l in 0..u.len() {
        out.push(row[0].clone());
        if l + 1 == u.len() {
            break;
        }
        row = (0..row.len() - 1)
            .map(|s| ring.add(&ring.pow(&row[s], p), &ring.scale(p as i64, &row[s + 1])))
            .collect();
    }
    out
}

/// Classical Witt ghost components w_m = Σ_{i≤m} p^i a_i^{p^{m-i}}.
pub fn witt_ghost_components<R: Ring>(ring: &R, p: u64, a: &[R::Elem]) -> Vec<R::Elem> {
    // powers[i] = a_i^{p^{m-i}}, raised once more per level
    let mut powers: Vec<R::Elem> = Vec::with_capacity(a.len());
    let mut out = Vec::with_capacity(a.len());
    for m in 0..a.len() {
        for x in powers.iter_mut() {
            *x = ring.pow(x, p);
        }
        powers.push(a[m].clone());
        let mut acc = ring.zero();
        for (i, x) in powers.iter().enumerate() {
            acc = ring.add(&acc, &ring.mul(&ring.from_int(&BigInt::from(p).pow(i as u32)), x));
        }
        out.push(acc);
    }
    out
}

/// Solves Z_m(u_0..u_m) = target_m for u_0..u_n one level at a time.
///
/// Each u_m occurs in Z_m linearly with coefficient p^m, so
/// u_m = (target_m − Z_m(u_0..u_{m−1}, 0)) / p^m. Ghost windows are kept in a
/// table so every level only adds one new anti-diagonal.
fn solve_bj_levels(ring: &PolyRing, p: u64, targets: &[SparsePoly]) -> Result<Vec<SparsePoly>, SubstrateError> {
    let pp = BigInt::from(p);
    // g[s][l] = Z_l(u_s..u_{s+l}) with the true u's
    let mut g: Vec<Vec<SparsePoly>> = vec![Vec::new(); targets.len()];
    let mut us = Vec::with_capacity(targets.len());
    for (m, target) in targets.iter().enumerate() {
        // h[s] = Z_{m-s}(u_s..u_{m-1}, 0)
        let mut h = vec![ring.zero(); m + 1];
        for s in (0..m).rev() {
            h[s] = ring.add(&ring.pow(&g[s][m - s - 1], p), &h[s + 1].scale(&pp));
        }
        let um = target.sub(&h[0]).exact_div_int(&pp.pow(m as u32))?;
        for s in 0..=m {
            let v = h[s].add(&um.scale(&pp.pow((m - s) as u32)));
            g[s].push(v);
        }
        us.push(um);
    }
    Ok(us)
}

fn wrap(p: u64, kind: LawKind, polys: Vec<SparsePoly>) -> Vec<UniversalPolynomial> {
    polys
        .into_iter()
        .enumerate()
        .map(|(m, body)| UniversalPolynomial {
            p,
            level: m,
            kind,
            body: body.rename_into(&kind.vars(m)),
        })
        .collect()
}

/// Z_0..Z_n in x0..xm.
pub fn generate_ghost(p: u64, n: usize) -> Result<Vec<UniversalPolynomial>, CalculusError> {
    check_params(p, n)?;
    let ring = PolyRing::new(LawKind::Ghost.vars(n));
    let xs: Vec<_> = (0..=n).map(|i| ring.var(i)).collect();
    Ok(wrap(p, LawKind::Ghost, ghost_components(&ring, p, &xs)))
}

/// Classical ghost polynomials w_0..w_n in x0..xm.
pub fn generate_witt_ghost(p: u64, n: usize) -> Result<Vec<UniversalPolynomial>, CalculusError> {
    check_params(p, n)?;
    let ring = PolyRing::new(LawKind::WittGhost.vars(n));
    let xs: Vec<_> = (0..=n).map(|i| ring.var(i)).collect();
    Ok(wrap(p, LawKind::WittGhost, witt_ghost_components(&ring, p, &xs)))
}

/// Sum, product or negation laws, levels 0..n.
pub fn generate_law(p: u64, n: usize, kind: LawKind) -> Result<Vec<UniversalPolynomial>, CalculusError> {
    check_params(p, n)?;
    let vars = LawKind::Sum.vars(n);
    let ring = PolyRing::new(vars.clone());
    let xs: Vec<_> = (0..=n).map(|i| ring.var(i)).collect();
    let ys: Vec<_> = (0..=n).map(|i| ring.var(n + 1 + i)).collect();
    let zx = ghost_components(&ring, p, &xs);
    let targets: Vec<SparsePoly> = match kind {
        LawKind::Sum => {
            let zy = ghost_components(&ring, p, &ys);
            zx.iter().zip(&zy).map(|(a, b)| a.add(b)).collect()
        }
        LawKind::Product => {
            let zy = ghost_components(&ring, p, &ys);
            zx.iter().zip(&zy).map(|(a, b)| a.mul(b)).collect()
        }
        LawKind::Negation => zx.iter().map(|a| a.neg()).collect(),
        other => panic!("generate_law called with {other}"),
    };
    let solved = solve_bj_levels(&ring, p, &targets)?;
    Ok(wrap(p, kind, solved))
}

/// Coordinate conversions between classical Witt and Buium–Joyal components.
pub fn generate_conversion(p: u64, n: usize, kind: LawKind) -> Result<Vec<UniversalPolynomial>, CalculusError> {
    check_params(p, n)?;
    let ring = PolyRing::new(kind.vars(n));
    let vs: Vec<_> = (0..=n).map(|i| ring.var(i)).collect();
    let pp = BigInt::from(p);
    let solved = match kind {
        LawKind::BjFromWitt => {
            let targets = witt_ghost_components(&ring, p, &vs);
            solve_bj_levels(&ring, p, &targets)?
        }
        LawKind::WittFromBj => {
            let targets = ghost_components(&ring, p, &vs);
            let mut cs: Vec<SparsePoly> = Vec::new();
            for (m, t) in targets.iter().enumerate() {
                let mut rest = t.clone();
                for (i, c) in cs.iter().enumerate() {
                    let term = c.pow(p.pow((m - i) as u32) as u32).scale(&pp.pow(i as u32));
                    rest = rest.sub(&term);
                }
                cs.push(rest.exact_div_int(&pp.pow(m as u32))?);
            }
            cs
        }
        other => panic!("generate_conversion called with {other}"),
    };
    Ok(wrap(p, kind, solved))
}

/// Any kind, levels 0..n.
pub fn generate(p: u64, n: usize, kind: LawKind) -> Result<Vec<UniversalPolynomial>, CalculusError> {
    match kind {
        LawKind::Ghost => generate_ghost(p, n),
        LawKind::WittGhost => generate_witt_ghost(p, n),
        LawKind::Sum | LawKind::Product | LawKind::Negation => generate_law(p, n, kind),
        LawKind::BjFromWitt | LawKind::WittFromBj => generate_conversion(p, n, kind),
    }
}
