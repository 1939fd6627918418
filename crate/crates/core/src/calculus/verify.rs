use super::{generate, laws, CalculusError, LawKey, LawKind, UniversalPolynomial};
use crate::substrate::{SparsePoly, VarList};

/// Outcome of one ghost identity at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub key: LawKey,
    pub holds: bool,
}

fn ghost_in(ghost: &[UniversalPolynomial], m: usize, target: &VarList, prefix: &str) -> SparsePoly {
    // Z_m is stored over x0..xm; rename to the requested letter
    let letters = VarList::indexed(prefix, m + 1);
    let renamed = SparsePoly::from_terms(
        &letters,
        ghost[m].body.terms().map(|(mo, c)| (mo.clone(), c.clone())).collect(),
    );
    renamed.rename_into(target)
}

/// Checks the defining ghost identity of a law family at levels 0..=n by
/// substituting the law into the expanded ghost polynomials.
///
/// This goes through `SparsePoly::substitute` on the stored expansions, a
/// different route from the ghost-window recursion used for generation.
pub fn verify_identity(p: u64, n: usize, kind: LawKind) -> Result<Vec<IdentityCheck>, CalculusError> {
    let family = laws(p, n, kind)?;
    let ghost = generate(p, n, LawKind::Ghost)?;
    let wghost = generate(p, n, LawKind::WittGhost)?;
    let mut out = Vec::new();
    for m in 0..=n {
        let vars = kind.vars(m);
        let images: Vec<SparsePoly> = (0..=m).map(|i| family[i].body.rename_into(&vars)).collect();
        let holds = match kind {
            LawKind::Sum | LawKind::Product | LawKind::Negation => {
                let lhs = ghost[m].body.substitute(&vars, &images);
                let zx = ghost_in(&ghost, m, &vars, "x");
                let rhs = match kind {
                    LawKind::Sum => zx.add(&ghost_in(&ghost, m, &vars, "y")),
                    LawKind::Product => zx.mul(&ghost_in(&ghost, m, &vars, "y")),
                    _ => zx.neg(),
                };
                lhs == rhs
            }
            LawKind::BjFromWitt => {
                let lhs = ghost[m].body.substitute(&vars, &images);
                lhs == ghost_in(&wghost, m, &vars, "w")
            }
            LawKind::WittFromBj => {
                let lhs = wghost[m].body.substitute(&vars, &images);
                lhs == ghost[m].body.rename_into(&vars)
            }
            LawKind::Ghost | LawKind::WittGhost => true,
        };
        out.push(IdentityCheck {
            key: LawKey { p, n: m, kind },
            holds,
        });
    }
    Ok(out)
}

/// Sum/negation/ghost/conversion polynomials are isobaric of weight p^m under
/// wt(x_i) = p^i. Products are bi-isobaric: weight p^m in the x's and in the
/// y's separately.
pub fn is_graded(u: &UniversalPolynomial) -> bool {
    let target = u.p.pow(u.level as u32);
    let w = u.weights();
    if u.kind == LawKind::Product {
        let half = u.level + 1;
        let wx: Vec<u64> = w.iter().enumerate().map(|(i, x)| if i < half { *x } else { 0 }).collect();
        let wy: Vec<u64> = w.iter().enumerate().map(|(i, x)| if i >= half { *x } else { 0 }).collect();
        u.body.is_isobaric(&wx, target) && u.body.is_isobaric(&wy, target)
    } else {
        u.body.is_isobaric(&w, target)
    }
}
