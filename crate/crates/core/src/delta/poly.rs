use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use super::{fermat_quotient, DeltaError};
use crate::substrate::{PolyRing, SparsePoly, UniPoly, VarList, Zmod};

/// ℤ[T_1..T_r] with prescribed δ(T_i). δ of integers is the Fermat quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPolyRing {
    p: u64,
    vars: VarList,
    deltas: Vec<SparsePoly>,
}

impl DeltaPolyRing {
    pub fn new(p: u64, vars: VarList, deltas: Vec<SparsePoly>) -> Result<Self, DeltaError> {
        if deltas.len() != vars.len() {
            return Err(DeltaError::ShapeMismatch {
                expected: vars.len(),
                found: deltas.len(),
            });
        }
        let deltas = deltas.iter().map(|d| d.rename_into(&vars)).collect();
        Ok(DeltaPolyRing { p, vars, deltas })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
    pub fn vars(&self) -> &VarList {
        &self.vars
    }
    /// δ(T_i) for every generator.
    pub fn generator_deltas(&self) -> &[SparsePoly] {
        &self.deltas
    }

    fn ring(&self) -> PolyRing {
        PolyRing::new(self.vars.clone())
    }

    /// δ(a + b) from a, b, δa, δb.
    fn sum_rule(&self, a: &SparsePoly, da: &SparsePoly, b: &SparsePoly, db: &SparsePoly) -> SparsePoly {
        let p = self.p;
        let mut out = da.add(db);
        for i in 1..p {
            let c = binomial(BigInt::from(p), BigInt::from(i)) / BigInt::from(p);
            out = out.sub(&a.pow(i as u32).mul(&b.pow((p - i) as u32)).scale(&c));
        }
        out
    }

    /// δ(ab) from a, b, δa, δb.
    fn product_rule(&self, a: &SparsePoly, da: &SparsePoly, b: &SparsePoly, db: &SparsePoly) -> SparsePoly {
        let p = self.p as u32;
        a.pow(p)
            .mul(db)
            .add(&da.mul(&b.pow(p)))
            .add(&da.mul(db).scale(&BigInt::from(self.p)))
    }

    /// δ(f) by the Leibniz rules: term by term, each term as c · Π T_i^{e_i}.
    pub fn delta(&self, f: &SparsePoly) -> SparsePoly {
        let f = f.rename_into(&self.vars);
        let zero = SparsePoly::zero(&self.vars);
        let mut acc = zero.clone();
        let mut dacc = zero.clone();
        for (mono, c) in f.terms() {
            let mut t = SparsePoly::constant(&self.vars, c.clone());
            let mut dt = SparsePoly::constant(&self.vars, fermat_quotient(c, self.p));
            for (i, &e) in mono.exps().iter().enumerate() {
                let x = SparsePoly::var(&self.vars, i);
                for _ in 0..e {
                    dt = self.product_rule(&t, &dt, &x, &self.deltas[i]);
                    t = t.mul(&x);
                }
            }
            dacc = self.sum_rule(&acc, &dacc, &t, &dt);
            acc = acc.add(&t);
        }
        dacc
    }

    /// φ(T_i) = T_i^p + p·δ(T_i).
    pub fn frobenius_images(&self) -> Vec<SparsePoly> {
        (0..self.vars.len())
            .map(|i| {
                SparsePoly::var(&self.vars, i)
                    .pow(self.p as u32)
                    .add(&self.deltas[i].scale(&BigInt::from(self.p)))
            })
            .collect()
    }

    /// φ(f) = f(φ(T_1), ..., φ(T_r)).
    pub fn frobenius(&self, f: &SparsePoly) -> SparsePoly {
        f.rename_into(&self.vars).evaluate(&self.ring(), &self.frobenius_images())
    }

    /// δ(f) = (φ(f) − f^p)/p, the torsion-free formula.
    pub fn delta_via_frobenius(&self, f: &SparsePoly) -> Result<SparsePoly, DeltaError> {
        let f = f.rename_into(&self.vars);
        let diff = self.frobenius(&f).sub(&f.pow(self.p as u32));
        Ok(diff.exact_div_int(&BigInt::from(self.p))?)
    }
}

/// Checks the δ axioms on all pairs of `samples`, and that the Leibniz
/// extension agrees with the torsion-free formula. Returns the failing
/// sample descriptions.
pub fn validate_poly_delta(ring: &DeltaPolyRing, samples: &[SparsePoly]) -> Vec<String> {
    let mut failures = Vec::new();
    let one = SparsePoly::one(ring.vars());
    if !ring.delta(&one).is_zero() {
        failures.push("δ(1) != 0".to_string());
    }
    let deltas: Vec<SparsePoly> = samples.iter().map(|f| ring.delta(f)).collect();
    for (f, df) in samples.iter().zip(&deltas) {
        match ring.delta_via_frobenius(f) {
            Ok(g) if g == *df => {}
            _ => failures.push(format!("Leibniz and Frobenius disagree on {f}")),
        }
    }
    for (i, a) in samples.iter().enumerate() {
        for (j, b) in samples.iter().enumerate().skip(i) {
            let a = a.rename_into(ring.vars());
            let b = b.rename_into(ring.vars());
            if ring.delta(&a.add(&b)) != ring.sum_rule(&a, &deltas[i], &b, &deltas[j]) {
                failures.push(format!("additivity fails on ({a}, {b})"));
            }
            if ring.delta(&a.mul(&b)) != ring.product_rule(&a, &deltas[i], &b, &deltas[j]) {
                failures.push(format!("product rule fails on ({a}, {b})"));
            }
        }
    }
    failures
}

/// Whether h lies in (p, relations) ⊂ ℤ[vars]. Decided exactly with no
/// relations or in one variable (𝔽_p[T] is a PID).
fn in_p_ideal(h: &SparsePoly, p: u64, relations: &[SparsePoly]) -> Result<bool, DeltaError> {
    let pb = BigInt::from(p);
    let reduced: Vec<&SparsePoly> = relations
        .iter()
        .filter(|r| r.terms().any(|(_, c)| !(c % &pb).is_zero()))
        .collect();
    if reduced.is_empty() {
        return Ok(h.terms().all(|(_, c)| (c % &pb).is_zero()));
    }
    let used: Vec<usize> = {
        let mut u: Vec<usize> = reduced.iter().flat_map(|r| r.used_vars()).chain(h.used_vars()).collect();
        u.sort_unstable();
        u.dedup();
        u
    };
    if used.len() > 1 {
        return Err(DeltaError::Unsupported(
            "Frobenius-lift check modulo p with relations in several variables".to_string(),
        ));
    }
    let fp = Zmod::new(p)?;
    let var = VarList::new([used.first().map_or("t", |&i| h.vars().name(i))]);
    let uni = |f: &SparsePoly| -> Result<UniPoly<u64>, DeltaError> { Ok(UniPoly::from_sparse(&fp, &f.rename_into(&var))?) };
    let mut g = UniPoly::zero();
    for r in reduced {
        g = g.gcd(&fp, &uni(r)?)?;
    }
    Ok(uni(h)?.rem(&fp, &g)?.is_zero())
}

/// δ(T_i) = (φ(T_i) − T_i^p)/p for a Frobenius lift φ on ℤ[vars]/(relations).
/// Checks φ(T_i) ≡ T_i^p mod (p, relations) first, then divides the
/// representative exactly.
pub fn delta_from_frobenius(
    p: u64,
    vars: &VarList,
    relations: &[SparsePoly],
    phi: &[SparsePoly],
) -> Result<DeltaPolyRing, DeltaError> {
    if phi.len() != vars.len() {
        return Err(DeltaError::ShapeMismatch {
            expected: vars.len(),
            found: phi.len(),
        });
    }
    let relations: Vec<SparsePoly> = relations.iter().map(|r| r.rename_into(vars)).collect();
    let mut deltas = Vec::with_capacity(vars.len());
    for (i, image) in phi.iter().enumerate() {
        let generator = vars.name(i).to_string();
        let h = image.rename_into(vars).sub(&SparsePoly::var(vars, i).pow(p as u32));
        if !in_p_ideal(&h, p, &relations)? {
            return Err(DeltaError::NotAFrobeniusLift { generator });
        }
        let d = h
            .exact_div_int(&BigInt::from(p))
            .map_err(|source| DeltaError::NotDivisible { generator, source })?;
        deltas.push(d);
    }
    DeltaPolyRing::new(p, vars.clone(), deltas)
}

/// φ on generators, the inverse direction of `delta_from_frobenius`.
pub fn frobenius_from_delta(ring: &DeltaPolyRing) -> Vec<SparsePoly> {
    ring.frobenius_images()
}
