//! Truncated Witt rings W_n(R) in Buium–Joyal coordinates.

mod maps;

use std::sync::Arc;

use thiserror::Error;

use crate::calculus::{laws, CalculusError, LawKind};
use crate::substrate::{CompiledPoly, FiniteRing, LocalRing, Ring, SubstrateError};

pub use maps::{
    coplethysm, equalizer_check, ghost_retraction, iterated_ghost, p_nilpotency_degree, zmod_isomorphism,
    EqualizerVerdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("shape mismatch: expected {expected} components, got {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Substrate(#[from] SubstrateError),
    #[error("cannot parse Witt vector `{0}`")]
    Parse(String),
}

#[derive(Debug)]
struct Laws {
    sum: Vec<CompiledPoly>,
    product: Vec<CompiledPoly>,
    negation: Vec<CompiledPoly>,
}

fn compiled(p: u64, n: usize, kind: LawKind) -> Result<Vec<CompiledPoly>, CalculusError> {
    Ok(laws(p, n, kind)?[..=n].iter().map(|u| u.body.compile()).collect())
}

/// W_n(R): vectors (x_0, ..., x_n) over a base ring R with the universal
/// sum, product and negation laws. Itself a `Ring`, so W_n(W_m(R)) works.
#[derive(Clone, Debug)]
pub struct WittRing<R: Ring> {
    base: R,
    p: u64,
    n: usize,
    laws: Arc<Laws>,
}

impl<R: Ring> WittRing<R> {
    pub fn new(base: R, p: u64, n: usize) -> Result<Self, WittError> {
        let laws = Laws {
            sum: compiled(p, n, LawKind::Sum)?,
            product: compiled(p, n, LawKind::Product)?,
            negation: compiled(p, n, LawKind::Negation)?,
        };
        Ok(WittRing {
            base,
            p,
            n,
            laws: Arc::new(laws),
        })
    }

    pub fn base(&self) -> &R {
        &self.base
    }
    pub fn prime(&self) -> u64 {
        self.p
    }
    /// Truncation level n; vectors have n + 1 components.
    pub fn level(&self) -> usize {
        self.n
    }
    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn check(&self, a: &[R::Elem]) -> Result<(), WittError> {
        if a.len() != self.len() {
            return Err(WittError::ShapeMismatch {
                expected: self.len(),
                found: a.len(),
            });
        }
        Ok(())
    }

    /// W_{n-1}(R), the target of truncation, δ and Frobenius.
    pub fn lower(&self) -> Result<Self, WittError> {
        if self.n == 0 {
            return Err(WittError::ShapeMismatch { expected: 2, found: 1 });
        }
        WittRing::new(self.base.clone(), self.p, self.n - 1)
    }

    /// W_{n+1}(R), the target of the Verschiebung.
    pub fn raise(&self) -> Result<Self, WittError> {
        WittRing::new(self.base.clone(), self.p, self.n + 1)
    }

    fn binary(&self, laws: &[CompiledPoly], a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        (0..=self.n)
            .map(|m| {
                let vals: Vec<R::Elem> = a[..=m].iter().chain(&b[..=m]).cloned().collect();
                laws[m].evaluate(&self.base, &vals)
            })
            .collect()
    }

    /// Drops the last component: W_n → W_{n-1}, a ring map.
    pub fn truncate(&self, a: &[R::Elem]) -> Result<Vec<R::Elem>, WittError> {
        self.check(a)?;
        if self.n == 0 {
            return Err(WittError::ShapeMismatch { expected: 2, found: 1 });
        }
        Ok(a[..self.n].to_vec())
    }

    /// Drops the first component: the degree-shifting δ, W_n → W_{n-1}.
    pub fn delta_shift(&self, a: &[R::Elem]) -> Result<Vec<R::Elem>, WittError> {
        self.check(a)?;
        if self.n == 0 {
            return Err(WittError::ShapeMismatch { expected: 2, found: 1 });
        }
        Ok(a[1..].to_vec())
    }

    /// φ(a) = τ(a)^p + p·δ(a), computed in W_{n-1}(R).
    pub fn frobenius(&self, a: &[R::Elem]) -> Result<Vec<R::Elem>, WittError> {
        let lower = self.lower()?;
        let t = self.truncate(a)?;
        let d = self.delta_shift(a)?;
        let tp = lower.pow(&t, self.p);
        Ok(lower.add(&tp, &lower.scale(self.p as i64, &d)))
    }

    /// Buium–Joyal → classical Witt components.
    pub fn to_witt_coords(&self, a: &[R::Elem]) -> Result<Vec<R::Elem>, WittError> {
        self.check(a)?;
        let conv = compiled(self.p, self.n, LawKind::WittFromBj)?;
        Ok((0..=self.n).map(|m| conv[m].evaluate(&self.base, &a[..=m])).collect())
    }

    /// Classical Witt → Buium–Joyal components.
    pub fn from_witt_coords(&self, w: &[R::Elem]) -> Result<Vec<R::Elem>, WittError> {
        self.check(w)?;
        let conv = compiled(self.p, self.n, LawKind::BjFromWitt)?;
        Ok((0..=self.n).map(|m| conv[m].evaluate(&self.base, &w[..=m])).collect())
    }

    /// V: W_{n-1}(R) → W_n(R). In classical coordinates V prepends a zero.
    pub fn verschiebung(&self, a: &[R::Elem]) -> Result<Vec<R::Elem>, WittError> {
        let lower = self.lower()?;
        let w = lower.to_witt_coords(a)?;
        let shifted: Vec<R::Elem> = std::iter::once(self.base.zero()).chain(w).collect();
        self.from_witt_coords(&shifted)
    }

    /// Ghost components ⟨Z_0(a), ..., Z_n(a)⟩ in R^{n+1}.
    pub fn ghost_map(&self, a: &[R::Elem]) -> Result<Vec<R::Elem>, WittError> {
        self.check(a)?;
        Ok(crate::calculus::ghost_components(&self.base, self.p, a))
    }

    /// Parenthesised comma list, each component in the base ring's format.
    pub fn format_vec(&self, a: &[R::Elem]) -> String {
        let parts: Vec<String> = a.iter().map(|x| self.base.format(x)).collect();
        format!("({})", parts.join(","))
    }
}

impl<R: Ring> Ring for WittRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.len()]
    }
    fn one(&self) -> Self::Elem {
        let mut v = self.zero();
        v[0] = self.base.one();
        v
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.binary(&self.laws.sum, a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.binary(&self.laws.product, a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (0..=self.n)
            .map(|m| self.laws.negation[m].evaluate(&self.base, &a[..=m]))
            .collect()
    }
    fn format(&self, a: &Self::Elem) -> String {
        self.format_vec(a)
    }
}

impl<R: FiniteRing> FiniteRing for WittRing<R> {
    fn cardinality(&self) -> u128 {
        self.base.cardinality().pow(self.len() as u32)
    }

    /// Cartesian power of the base enumeration, first component fastest.
    fn elements(&self) -> Vec<Self::Elem> {
        let base = self.base.elements();
        let mut out: Vec<Self::Elem> = vec![Vec::new()];
        for _ in 0..self.len() {
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

impl<R: LocalRing> LocalRing for WittRing<R> {
    fn residue_char(&self) -> u64 {
        self.base.residue_char()
    }

    /// A Witt vector over a local ring is a unit iff its first component is.
    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.base.is_unit(&a[0])
    }

    /// Newton iteration b ← b(2 − ab) from any b with b·a ≡ 1 on the first component.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let b0 = self.base.inv(&a[0])?;
        let mut b = self.zero();
        b[0] = b0;
        let two = self.from_i64(2);
        // each step at least doubles the number of correct components
        for _ in 0..=self.len() {
            let ab = self.mul(a, &b);
            if ab == self.one() {
                return Some(b);
            }
            b = self.mul(&b, &self.sub(&two, &ab));
        }
        (self.mul(a, &b) == self.one()).then_some(b)
    }
}

/// Splits `(a,b,(c,d))` into its top-level parts `a`, `b`, `(c,d)`.
pub fn split_tuple(s: &str) -> Result<Vec<String>, WittError> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| WittError::Parse(s.to_string()))?;
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(WittError::Parse(s.to_string()));
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(WittError::Parse(s.to_string()));
    }
    parts.push(cur.trim().to_string());
    if parts.iter().any(|p| p.is_empty()) {
        return Err(WittError::Parse(s.to_string()));
    }
    Ok(parts)
}

#[cfg(test)]
mod tests;
