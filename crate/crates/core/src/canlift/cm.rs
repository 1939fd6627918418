use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;

use super::{check_parameters, count_points_trace, is_ordinary, CanLiftError, EllipticCurve};
use crate::substrate::{BigZmod, Ring, UniPoly};

const EMBEDDED: &str = include_str!("../../data/cm_table.txt");

/// Hilbert class polynomials by discriminant, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmTable {
    entries: BTreeMap<i64, Vec<BigInt>>,
}

impl CmTable {
    pub fn embedded() -> CmTable {
        CmTable::parse(EMBEDDED).expect("bundled CM table parses")
    }

    pub fn from_file(path: &Path) -> Result<CmTable, CanLiftError> {
        let text = std::fs::read_to_string(path).map_err(|e| CanLiftError::Table(format!("{}: {e}", path.display())))?;
        CmTable::parse(&text)
    }

    /// Lines `D c_0 c_1 ... c_h`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<CmTable, CanLiftError> {
        let mut entries = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: &str| CanLiftError::Table(format!("line {}: {m}", no + 1));
            let mut it = line.split_whitespace();
            let d: i64 = it.next().unwrap().parse().map_err(|_| bad("bad discriminant"))?;
            if d >= 0 || d.rem_euclid(4) > 1 {
                return Err(bad("discriminant must be negative and 0 or 1 mod 4"));
            }
            let coeffs: Vec<BigInt> = it
                .map(|s| s.parse().map_err(|_| bad("bad coefficient")))
                .collect::<Result<_, _>>()?;
            if coeffs.len() < 2 || coeffs.last() != Some(&BigInt::from(1)) {
                return Err(bad("class polynomial must be monic of positive degree"));
            }
            if entries.insert(d, coeffs).is_some() {
                return Err(bad("duplicate discriminant"));
            }
        }
        Ok(CmTable { entries })
    }

    pub fn get(&self, d: i64) -> Option<&[BigInt]> {
        self.entries.get(&d).map(Vec::as_slice)
    }

    pub fn class_number(&self, d: i64) -> Option<usize> {
        self.get(d).map(|c| c.len() - 1)
    }

    pub fn discriminants(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }
}

/// The oracle's answer: the order's discriminant and the CM j-invariant mod p^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmOracle {
    pub discriminant: i64,
    pub class_number: usize,
    pub j: BigInt,
}

/// The j-invariant of the canonical lift from the CM table. The Frobenius
/// discriminant a_p² − 4p is f² times the discriminant of End(E); for each
/// tabulated order containing Frobenius whose class polynomial has j(E) as a
/// simple root mod p, that root is Hensel-lifted to ℤ/p^k.
pub fn cm_oracle_j(p: u64, a: &BigInt, b: &BigInt, k: u32, table: &CmTable) -> Result<CmOracle, CanLiftError> {
    check_parameters(p, k)?;
    let e = EllipticCurve::new(p, 1, a, b)?;
    let (_, trace) = {
        let (a, b) = e.residue_coeffs();
        count_points_trace(p, a, b)
    };
    if !is_ordinary(p, trace) {
        return Err(CanLiftError::NotOrdinary { trace });
    }
    let jp = e.j_invariant();
    let frob_disc = trace * trace - 4 * p as i64;
    let fp = BigZmod::prime_power(p, 1);
    let ring = BigZmod::prime_power(p, k);
    let mut found: Vec<CmOracle> = Vec::new();
    let mut f = 1i64;
    while f * f <= frob_disc.abs() {
        if frob_disc % (f * f) == 0 {
            let d = frob_disc / (f * f);
            if d.rem_euclid(4) <= 1 {
                if let Some(coeffs) = table.get(d) {
                    let hp = UniPoly::new(&fp, coeffs.iter().map(|c| fp.from_int(c)).collect());
                    if fp.is_zero(&hp.eval(&fp, &jp)) {
                        let hk = UniPoly::new(&ring, coeffs.iter().map(|c| ring.from_int(c)).collect());
                        let j = hk.hensel_root(&ring, &jp).map_err(|_| {
                            CanLiftError::Table(format!("j(E) is a repeated root of the class polynomial for D = {d}"))
                        })?;
                        found.push(CmOracle {
                            discriminant: d,
                            class_number: coeffs.len() - 1,
                            j,
                        });
                    }
                }
            }
        }
        f += 1;
    }
    match found.len() {
        0 => Err(CanLiftError::NoCmData(frob_disc)),
        1 => Ok(found.pop().unwrap()),
        _ => Err(CanLiftError::Table(format!(
            "several tabulated orders match j(E) for a_p^2 - 4p = {frob_disc}"
        ))),
    }
}
