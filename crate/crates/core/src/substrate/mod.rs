//! Exact rings: integers, residue rings, Galois rings, sparse integer
//! polynomials and dense univariate polynomials over any of them.

mod galois;
mod local;
mod poly;
mod ring;
mod unipoly;
mod zmod;

use num_bigint::BigInt;
use thiserror::Error;

pub use galois::{tabulated_irreducible, GaloisRing};
pub use local::{finite_ring_enumerate, FiniteLocalRing};
pub use poly::{poly_exact_div_by_int, CompiledPoly, Monomial, PolyRing, SparsePoly, VarList};
pub use ring::{FiniteRing, IntegerRing, LocalRing, PowerRing, Ring};
pub use unipoly::UniPoly;
pub use zmod::{is_prime, BigZmod, Zmod};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstrateError {
    #[error("term `{term}` is not divisible by {divisor}")]
    NotDivisible { term: String, divisor: BigInt },
    #[error("division by zero or by a non-unit")]
    DivisionByZero,
    #[error("derivative at the starting point is not a unit")]
    NonUnitDerivative,
    #[error("starting point is not a root modulo the maximal ideal")]
    NotARootModP,
    #[error("Newton iteration did not converge")]
    NoConvergence,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {0} is not irreducible mod {1}")]
    NotIrreducible(String, u64),
    #[error("no tabulated irreducible polynomial for p={p}, d={d}")]
    NoTabulatedModulus { p: u64, d: usize },
    #[error("polynomial `{0}` is not univariate")]
    NotUnivariate(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("cannot parse ring element `{0}`")]
    ParseElement(String),
    #[error("unknown ring `{0}` (expected f<p>, z<m>, zmod:<m>, gf:<p>:<d> or gr:<p>:<k>:<d>)")]
    ParseRing(String),
}
