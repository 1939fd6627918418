use std::fmt;

use super::DeltaError;

const SEARCH_LIMIT: u128 = 10_000_000;

/// All δ-structures δ(T_i) = Σ_I a_{I,(i)} T^I on the group algebra of
/// μ_{p^{n_1}} × ... × μ_{p^{n_r}} compatible with Δ(T_i) = T_i ⊗ T_i,
/// with coefficients in ℤ/p^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfSolveReport {
    pub p: u64,
    pub exps: Vec<u32>,
    pub k: u32,
    /// Group-like monomial basis, exponent vectors with 0 ≤ I_i < p^{n_i}.
    pub basis: Vec<Vec<u32>>,
    /// Each solution lists, per generator, its coefficient on every basis monomial.
    pub solutions: Vec<Vec<Vec<u64>>>,
    /// Whether the solutions mod p^{k+1} reduce bijectively onto those mod p^k.
    pub stable: bool,
}

fn basis(p: u64, exps: &[u32]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for &n in exps {
        let order = p.pow(n) as u32;
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..order).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Comultiplication compatibility for one generator. With E the exponent of
/// T_i^p, the T^I ⊗ T^J coefficient of Δδ(T_i) − δΔ(T_i) is
/// [I=J] a_I − [I=E] a_J − [J=E] a_I − p a_I a_J.
fn compatible(a: &[u64], e_idx: usize, p: u64, q: u64) -> bool {
    let q = q as u128;
    let n = a.len();
    for i in 0..n {
        for j in 0..n {
            let (ai, aj) = (a[i] as u128, a[j] as u128);
            let mut lhs = if i == j { ai } else { 0 };
            lhs %= q;
            let mut rhs = (p as u128 * ai % q) * aj % q;
            if i == e_idx {
                rhs += aj;
            }
            if j == e_idx {
                rhs += ai;
            }
            if lhs != rhs % q {
                return false;
            }
        }
    }
    true
}

/// Solutions mod p^k for one generator, lifted digit by digit from mod p.
fn solve_generator(p: u64, size: usize, e_idx: usize, k: u32) -> Result<Vec<Vec<u64>>, DeltaError> {
    let lifts = (p as u128).checked_pow(size as u32).unwrap_or(u128::MAX);
    let mut sols: Vec<Vec<u64>> = vec![vec![0; size]];
    let mut scale = 1u64;
    for _ in 0..k {
        let work = lifts.saturating_mul(sols.len() as u128);
        if work > SEARCH_LIMIT {
            return Err(DeltaError::TooLarge(work));
        }
        let q = scale * p;
        let mut next = Vec::new();
        for s in &sols {
            let mut digits = vec![0u64; size];
            loop {
                let cand: Vec<u64> = s.iter().zip(&digits).map(|(a, d)| a + d * scale).collect();
                if compatible(&cand, e_idx, p, q) {
                    next.push(cand);
                }
                // odometer over the new digit
                let mut pos = 0;
                while pos < size {
                    digits[pos] += 1;
                    if digits[pos] < p {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
                if pos == size {
                    break;
                }
            }
        }
        next.sort();
        sols = next;
        scale = q;
    }
    Ok(sols)
}

fn solve_all(p: u64, exps: &[u32], k: u32, basis: &[Vec<u32>]) -> Result<Vec<Vec<Vec<u64>>>, DeltaError> {
    let mut per_gen = Vec::with_capacity(exps.len());
    for i in 0..exps.len() {
        // exponent vector of T_i^p, reduced by T_i^{p^{n_i}} = 1
        let mut e = vec![0u32; exps.len()];
        e[i] = (p % p.pow(exps[i])) as u32;
        let e_idx = basis.iter().position(|b| *b == e).expect("basis contains every reduced exponent");
        per_gen.push(solve_generator(p, basis.len(), e_idx, k)?);
    }
    let mut out: Vec<Vec<Vec<u64>>> = vec![Vec::new()];
    for sols in per_gen {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                sols.iter().map(move |s| {
                    let mut v = prefix.clone();
                    v.push(s.clone());
                    v
                })
            })
            .collect();
    }
    Ok(out)
}

pub fn hopf_delta_solve(p: u64, exps: &[u32], k: u32) -> Result<HopfSolveReport, DeltaError> {
    let basis = basis(p, exps);
    let solutions = solve_all(p, exps, k, &basis)?;
    let finer = solve_all(p, exps, k + 1, &basis)?;
    let q = p.pow(k);
    let mut reduced: Vec<Vec<Vec<u64>>> = finer
        .iter()
        .map(|s| s.iter().map(|g| g.iter().map(|a| a % q).collect()).collect())
        .collect();
    reduced.sort();
    let stable = reduced == solutions;
    Ok(HopfSolveReport {
        p,
        exps: exps.to_vec(),
        k,
        basis,
        solutions,
        stable,
    })
}

impl HopfSolveReport {
    /// True when the only solution is δ(T_i) = 0 for every i.
    pub fn only_trivial(&self) -> bool {
        self.solutions.len() == 1 && self.solutions[0].iter().all(|g| g.iter().all(|&a| a == 0))
    }
}

fn monomial(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("T{}", i + 1) } else { format!("T{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for HopfSolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        writeln!(
            f,
            "p={} exps=({}) k={} basis={} solutions={} stable={}",
            self.p,
            exps.join(","),
            self.k,
            self.basis.len(),
            self.solutions.len(),
            self.stable
        )?;
        for (s, sol) in self.solutions.iter().enumerate() {
            let mut gens = Vec::new();
            for (i, coeffs) in sol.iter().enumerate() {
                let terms: Vec<String> = coeffs
                    .iter()
                    .zip(&self.basis)
                    .filter(|(&a, _)| a != 0)
                    .map(|(a, b)| format!("{a}*{}", monomial(b)))
                    .collect();
                let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                gens.push(format!("delta(T{}) = {rhs}", i + 1));
            }
            if gens.is_empty() {
                gens.push("(no generators)".to_string());
            }
            writeln!(f, "solution {}: {}", s + 1, gens.join(", "))?;
        }
        Ok(())
    }
}
