use super::{WittError, WittRing};
use crate::substrate::{FiniteLocalRing, Ring};

/// Δ: W_{m+n}(R) → W_n(W_m(R)), the window map
/// (x_0..x_{m+n}) ↦ ((x_0..x_m), (x_1..x_{m+1}), ..., (x_n..x_{m+n})).
pub fn coplethysm<E: Clone>(a: &[E], m: usize, n: usize) -> Result<Vec<Vec<E>>, WittError> {
    if a.len() != m + n + 1 {
        return Err(WittError::ShapeMismatch {
            expected: m + n + 1,
            found: a.len(),
        });
    }
    Ok((0..=n).map(|i| a[i..=i + m].to_vec()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualizerVerdict<E> {
    InImage(Vec<E>),
    /// First window index i whose tail disagrees with the head of window i+1.
    NotInImage { index: usize },
}

/// Decides whether z ∈ W_n(W_m(R)) lies in the image of Δ. The windows must
/// overlap: z_i[1..] = z_{i+1}[..m]. The preimage is then the heads of all
/// windows followed by the tail of the last one.
pub fn equalizer_check<E: Clone + PartialEq>(z: &[Vec<E>]) -> Result<EqualizerVerdict<E>, WittError> {
    let width = z.first().map(|w| w.len()).unwrap_or(0);
    if width == 0 {
        return Err(WittError::ShapeMismatch { expected: 1, found: 0 });
    }
    if let Some(bad) = z.iter().find(|w| w.len() != width) {
        return Err(WittError::ShapeMismatch {
            expected: width,
            found: bad.len(),
        });
    }
    for i in 0..z.len().saturating_sub(1) {
        if z[i][1..] != z[i + 1][..width - 1] {
            return Ok(EqualizerVerdict::NotInImage { index: i });
        }
    }
    let mut pre: Vec<E> = z.iter().map(|w| w[0].clone()).collect();
    pre.extend_from_slice(&z[z.len() - 1][1..]);
    Ok(EqualizerVerdict::InImage(pre))
}

/// Ghost of an element of W_n(W_1(R)) taken twice: first in W_1(R), then each
/// W_1(R) component through its own ghost map. Returns ⟨⟨a_i, b_i⟩⟩.
pub fn iterated_ghost<R: Ring>(outer: &WittRing<WittRing<R>>, z: &[Vec<R::Elem>]) -> Result<Vec<Vec<R::Elem>>, WittError> {
    let inner = outer.base();
    outer.ghost_map(z)?.iter().map(|g| inner.ghost_map(g)).collect()
}

/// ⟨⟨a_0,b_0⟩, ..., ⟨a_n,b_n⟩⟩ ↦ ⟨a_0, ..., a_n, b_n⟩.
pub fn ghost_retraction<E: Clone>(g: &[Vec<E>]) -> Result<Vec<E>, WittError> {
    if g.is_empty() {
        return Err(WittError::ShapeMismatch { expected: 1, found: 0 });
    }
    if let Some(bad) = g.iter().find(|pair| pair.len() != 2) {
        return Err(WittError::ShapeMismatch {
            expected: 2,
            found: bad.len(),
        });
    }
    let mut out: Vec<E> = g.iter().map(|pair| pair[0].clone()).collect();
    out.push(g[g.len() - 1][1].clone());
    Ok(out)
}

/// Least e ≥ 1 with p^e = 0 in W_n(R), by repeated multiplication.
/// `None` if p^e is still nonzero at the search bound.
pub fn p_nilpotency_degree<R: Ring>(w: &WittRing<R>) -> Option<u32> {
    let p = w.from_i64(w.prime() as i64);
    let bound = 64 * w.len() as u32;
    let mut acc = p.clone();
    for e in 1..=bound {
        if w.is_zero(&acc) {
            return Some(e);
        }
        acc = w.mul(&acc, &p);
    }
    None
}

/// The table k ↦ k·1 in W_n(𝔽_p) for k = 0..p^{n+1}, which realises
/// ℤ/p^{n+1} ≅ W_n(𝔽_p).
pub fn zmod_isomorphism(p: u64, n: usize) -> Result<Vec<Vec<Vec<u64>>>, WittError> {
    let base = FiniteLocalRing::prime_field(p)?;
    let w = WittRing::new(base, p, n)?;
    let order = p.pow(n as u32 + 1);
    let one = w.one();
    let mut table = Vec::with_capacity(order as usize);
    let mut acc = w.zero();
    for _ in 0..order {
        table.push(acc.clone());
        acc = w.add(&acc, &one);
    }
    Ok(table)
}
