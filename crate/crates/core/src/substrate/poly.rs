use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::ring::Ring;
use super::SubstrateError;

/// Ordered list of variable names shared by the polynomials built over it.
// Arc's PartialEq already short-circuits on pointer equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarList(Arc<Vec<String>>);

impl VarList {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VarList(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    /// `prefix0, prefix1, ..., prefix{n-1}`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        Self::new((0..n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn weight(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(e, w)| *e as u64 * w).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with integer coefficients.
///
/// Terms are kept in descending grlex order with no zero coefficients, so two
/// polynomials over the same variables are equal iff their term lists are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    vars: VarList,
    terms: Vec<(Monomial, BigInt)>,
}

impl SparsePoly {
    pub fn zero(vars: &VarList) -> Self {
        SparsePoly {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: &VarList, c: BigInt) -> Self {
        Self::from_terms(vars, vec![(Monomial::one(vars.len()), c)])
    }

    pub fn one(vars: &VarList) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn var(vars: &VarList, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::from_terms(vars, vec![(Monomial(e), BigInt::one())])
    }

    /// Collects like terms, drops zeros and sorts.
    pub fn from_terms(vars: &VarList, terms: Vec<(Monomial, BigInt)>) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "monomial arity does not match variable list");
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: &VarList, acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        SparsePoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap_or(0)
    }

    /// Indices of variables that occur in some term.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable lists");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.1 + &b.1;
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        SparsePoly {
            vars: self.vars.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars);
        }
        if self.terms.len() == 1 && self.terms[0].0.degree() == 0 {
            return other.scale(&self.terms[0].1);
        }
        if other.terms.len() == 1 && other.terms[0].0.degree() == 0 {
            return self.scale(&other.terms[0].1);
        }
        if let Some(p) = self.mul_packed(other) {
            return p;
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        Self::from_map(&self.vars, acc)
    }

    /// Product with exponent vectors packed 8 bits per variable into a u128,
    /// when the variable count and product degrees allow it.
    fn mul_packed(&self, other: &Self) -> Option<Self> {
        let n = self.vars.len();
        if n > 16 || (0..n).any(|i| self.degree_in(i) + other.degree_in(i) > 255) {
            return None;
        }
        let pack = |m: &Monomial| m.0.iter().enumerate().fold(0u128, |k, (i, e)| k | (*e as u128) << (8 * i));
        let a: Vec<(u128, &BigInt)> = self.terms.iter().map(|(m, c)| (pack(m), c)).collect();
        let b: Vec<(u128, &BigInt)> = other.terms.iter().map(|(m, c)| (pack(m), c)).collect();
        let unpack = |k: u128| Monomial((0..n).map(|i| ((k >> (8 * i)) & 0xff) as u32).collect());

        // If |c_a|·|c_b|·min(#a, #b) < 2^126 no accumulated coefficient can overflow i128.
        let bits = |t: &[(u128, &BigInt)]| t.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
        let (ba, bb) = (bits(&a), bits(&b));
        let count_bits = 64 - (a.len().min(b.len()) as u64).leading_zeros() as u64;
        if ba <= 63 && bb <= 63 && ba + bb + count_bits < 126 {
            let sa: Vec<(u128, i128)> = a.iter().map(|(k, c)| (*k, i64::try_from(*c).unwrap() as i128)).collect();
            let sb: Vec<(u128, i128)> = b.iter().map(|(k, c)| (*k, i64::try_from(*c).unwrap() as i128)).collect();
            let mut acc: FxHashMap<u128, i128> = FxHashMap::default();
            acc.reserve(sa.len() * sb.len() / 2 + 1);
            for (ka, ca) in &sa {
                for (kb, cb) in &sb {
                    *acc.entry(ka + kb).or_insert(0) += ca * cb;
                }
            }
            let mut terms: Vec<(Monomial, BigInt)> = acc
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(k, c)| (unpack(k), BigInt::from(c)))
                .collect();
            terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
            return Some(SparsePoly {
                vars: self.vars.clone(),
                terms,
            });
        }

        let mut acc: FxHashMap<u128, BigInt> = FxHashMap::default();
        acc.reserve(a.len() * b.len() / 2 + 1);
        for (ka, ca) in &a {
            for (kb, cb) in &b {
                let prod = *ca * *cb;
                match acc.entry(ka + kb) {
                    Entry::Occupied(mut e) => *e.get_mut() += prod,
                    Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, BigInt)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (unpack(k), c))
            .collect();
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        Some(SparsePoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides every coefficient by `c`, failing unless all divisions are exact.
    pub fn exact_div_int(&self, c: &BigInt) -> Result<Self, SubstrateError> {
        if c.is_zero() {
            return Err(SubstrateError::DivisionByZero);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, a) in &self.terms {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return Err(SubstrateError::NotDivisible {
                    term: self.term_text(m, a),
                    divisor: c.clone(),
                });
            }
            terms.push((m.clone(), q));
        }
        let g = SparsePoly {
            vars: self.vars.clone(),
            terms,
        };
        debug_assert_eq!(&g.scale(c), self, "re-multiplication after exact division");
        Ok(g)
    }

    /// Evaluates at `vals` (one value per variable) in any ring.
    pub fn evaluate<R: Ring>(&self, ring: &R, vals: &[R::Elem]) -> R::Elem {
        self.compile().evaluate(ring, vals)
    }

    /// Pre-sorts the terms for repeated evaluation.
    pub fn compile(&self) -> CompiledPoly {
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| b.0 .0.cmp(&a.0 .0));
        CompiledPoly {
            nvars: self.vars.len(),
            terms,
        }
    }

    /// Substitutes polynomials (over `target`) for the variables.
    pub fn substitute(&self, target: &VarList, images: &[SparsePoly]) -> SparsePoly {
        self.evaluate(&PolyRing::new(target.clone()), images)
    }

    /// Re-expresses over a larger variable list; `map[i]` is the new index of variable i.
    pub fn embed(&self, target: &VarList, map: &[usize]) -> SparsePoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; target.len()];
                for (i, x) in m.0.iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Self::from_terms(target, terms)
    }

    /// Moves to another variable list, matching variables by name. Panics if a
    /// variable that actually occurs is missing from `target`.
    pub fn rename_into(&self, target: &VarList) -> SparsePoly {
        let map: Vec<usize> = (0..self.vars.len())
            .map(|i| match target.index(self.vars.name(i)) {
                Some(j) => j,
                None if self.degree_in(i) == 0 => usize::MAX,
                None => panic!("variable `{}` missing from target list", self.vars.name(i)),
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; target.len()];
                for (i, x) in m.0.iter().enumerate() {
                    if *x > 0 {
                        e[map[i]] = *x;
                    }
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Self::from_terms(target, terms)
    }

    /// Every term has weight `w` under the given variable weights.
    pub fn is_isobaric(&self, weights: &[u64], w: u64) -> bool {
        self.terms.iter().all(|(m, _)| m.weight(weights) == w)
    }

    fn term_text(&self, m: &Monomial, c: &BigInt) -> String {
        let mut s = c.to_string();
        for (i, e) in m.0.iter().enumerate() {
            if *e > 0 {
                s.push_str(&format!(" {}:{}", self.vars.name(i), e));
            }
        }
        s
    }

    /// Canonical text form: one term per line, `<coeff> <var>:<exp> ...`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (m, c) in &self.terms {
            s.push_str(&self.term_text(m, c));
            s.push('\n');
        }
        s
    }

    /// Parses the canonical text form, rejecting anything that is not
    /// already canonical (order, duplicates, zero coefficients).
    /// `first_line` only affects error line numbers.
    pub fn from_text(vars: &VarList, text: &str, first_line: usize) -> Result<Self, SubstrateError> {
        let mut terms: Vec<(Monomial, BigInt)> = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let lineno = first_line + k;
            let err = |message: String| SubstrateError::Format { line: lineno, message };
            let mut parts = line.split(' ');
            let coeff: BigInt = parts
                .next()
                .unwrap_or("")
                .parse()
                .map_err(|_| err(format!("bad coefficient in `{line}`")))?;
            if coeff.is_zero() {
                return Err(err("zero coefficient".into()));
            }
            let mut e = vec![0u32; vars.len()];
            let mut last: Option<usize> = None;
            for part in parts {
                let (name, exp) = part
                    .split_once(':')
                    .ok_or_else(|| err(format!("bad factor `{part}`")))?;
                let i = vars
                    .index(name)
                    .ok_or_else(|| err(format!("unknown variable `{name}`")))?;
                let exp: u32 = exp.parse().map_err(|_| err(format!("bad exponent `{exp}`")))?;
                if exp == 0 || last.is_some_and(|l| l >= i) {
                    return Err(err(format!("non-canonical factor `{part}`")));
                }
                last = Some(i);
                e[i] = exp;
            }
            let m = Monomial(e);
            if let Some((prev, _)) = terms.last() {
                if *prev <= m {
                    return Err(err("terms out of order".into()));
                }
            }
            terms.push((m, coeff));
        }
        Ok(SparsePoly {
            vars: vars.clone(),
            terms,
        })
    }
}

/// A polynomial prepared for fast repeated evaluation: terms in pure
/// lexicographic order so the nested Horner scheme can walk them in one pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledPoly {
    nvars: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl CompiledPoly {
    /// Evaluates at `vals` (one value per variable) in any ring.
    ///
    /// Nested Horner scheme: outermost in the first variable, so substituting a
    /// small polynomial for x0 costs only cheap multiplications at the top.
    pub fn evaluate<R: Ring>(&self, ring: &R, vals: &[R::Elem]) -> R::Elem {
        assert_eq!(vals.len(), self.nvars, "evaluation needs one value per variable");
        if self.terms.is_empty() {
            return ring.zero();
        }
        eval_rec(ring, &self.terms, 0, vals)
    }
}

fn eval_rec<R: Ring>(ring: &R, terms: &[(Monomial, BigInt)], var: usize, vals: &[R::Elem]) -> R::Elem {
    if var == vals.len() {
        // all exponents consumed; terms are distinct so there is exactly one
        return terms
            .iter()
            .fold(ring.zero(), |acc, (_, c)| ring.add(&acc, &ring.from_int(c)));
    }
    let v = &vals[var];
    let mut acc: Option<R::Elem> = None;
    let mut prev = 0u32;
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0 .0[var];
        let mut end = start + 1;
        while end < terms.len() && terms[end].0 .0[var] == e {
            end += 1;
        }
        let inner = eval_rec(ring, &terms[start..end], var + 1, vals);
        acc = Some(match acc {
            None => inner,
            Some(a) => ring.add(&ring.mul(&a, &ring.pow(v, (prev - e) as u64)), &inner),
        });
        prev = e;
        start = end;
    }
    let acc = acc.unwrap();
    if prev == 0 {
        acc
    } else {
        ring.mul(&acc, &ring.pow(v, prev as u64))
    }
}

impl fmt::Display for SparsePoly {
    /// Human-readable form in the presentation grammar, e.g. `2*t0^2*t1 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// ℤ[vars] as a ring, so `SparsePoly::evaluate` doubles as substitution and
/// generic code (ghost maps, Witt laws) runs symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: VarList,
}

impl PolyRing {
    pub fn new(vars: VarList) -> Self {
        PolyRing { vars }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn var(&self, i: usize) -> SparsePoly {
        SparsePoly::var(&self.vars, i)
    }
}

impl Ring for PolyRing {
    type Elem = SparsePoly;

    fn zero(&self) -> SparsePoly {
        SparsePoly::zero(&self.vars)
    }
    fn one(&self) -> SparsePoly {
        SparsePoly::one(&self.vars)
    }
    fn add(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        a.add(b)
    }
    fn neg(&self, a: &SparsePoly) -> SparsePoly {
        a.neg()
    }
    fn sub(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        a.sub(b)
    }
    fn mul(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        a.mul(b)
    }
    fn is_zero(&self, a: &SparsePoly) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: &BigInt) -> SparsePoly {
        SparsePoly::constant(&self.vars, n.clone())
    }
    fn scale(&self, n: i64, a: &SparsePoly) -> SparsePoly {
        a.scale(&BigInt::from(n))
    }
    fn pow(&self, a: &SparsePoly, e: u64) -> SparsePoly {
        a.pow(e as u32)
    }
    fn format(&self, a: &SparsePoly) -> String {
        a.to_string()
    }
}

/// Exact division of an integer polynomial by a nonzero integer.
pub fn poly_exact_div_by_int(f: &SparsePoly, c: &BigInt) -> Result<SparsePoly, SubstrateError> {
    f.exact_div_int(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substrate::{IntegerRing, Zmod};

    fn xy() -> (VarList, SparsePoly, SparsePoly) {
        let v = VarList::new(["x", "y"]);
        let x = SparsePoly::var(&v, 0);
        let y = SparsePoly::var(&v, 1);
        (v, x, y)
    }

    fn int(v: &VarList, n: i64) -> SparsePoly {
        SparsePoly::constant(v, BigInt::from(n))
    }

    #[test]
    fn exact_division_examples() {
        let (v, x, _) = xy();
        let f = x.pow(2).scale(&2.into()).add(&x.scale(&4.into()));
        let g = poly_exact_div_by_int(&f, &2.into()).unwrap();
        assert_eq!(g, x.pow(2).add(&x.scale(&2.into())));
        let h = x.pow(2).sub(&x);
        assert!(matches!(
            poly_exact_div_by_int(&h, &2.into()),
            Err(SubstrateError::NotDivisible { .. })
        ));
        assert_eq!(poly_exact_div_by_int(&h, &0.into()), Err(SubstrateError::DivisionByZero));
        let _ = v;
    }

    #[test]
    fn prolongation_quotient_example() {
        let v = VarList::new(["t0", "t1"]);
        let t0 = SparsePoly::var(&v, 0);
        let t1 = SparsePoly::var(&v, 1);
        let phi = t0.pow(2).add(&t1.scale(&2.into()));
        let f = phi.pow(2).sub(&int(&v, 1)).sub(&t0.pow(2).sub(&int(&v, 1)).pow(2));
        let g = poly_exact_div_by_int(&f, &2.into()).unwrap();
        assert_eq!(g.to_string(), "2*t0^2*t1 + t0^2 + 2*t1^2 - 1");
        assert_eq!(g.scale(&2.into()), f);
    }

    #[test]
    fn grlex_order_and_text_roundtrip() {
        let (v, x, y) = xy();
        let f = y.pow(3).add(&x.mul(&y).scale(&(-5).into())).add(&x.pow(2)).add(&int(&v, 7));
        assert_eq!(f.to_text(), "1 y:3\n1 x:2\n-5 x:1 y:1\n7\n");
        assert_eq!(SparsePoly::from_text(&v, &f.to_text(), 1).unwrap(), f);
        let swapped = "1 x:2\n1 y:3\n";
        assert!(matches!(
            SparsePoly::from_text(&v, swapped, 1),
            Err(SubstrateError::Format { line: 2, .. })
        ));
        assert!(SparsePoly::from_text(&v, "0 x:1\n", 1).is_err());
        assert!(SparsePoly::from_text(&v, "3 z:1\n", 1).is_err());
    }

    #[test]
    fn evaluation_and_substitution() {
        let (v, x, y) = xy();
        let f = x.pow(3).add(&x.mul(&y).scale(&2.into())).sub(&int(&v, 1));
        assert_eq!(f.evaluate(&IntegerRing, &[2.into(), 3.into()]), BigInt::from(19));
        assert_eq!(f.evaluate(&Zmod::new(5).unwrap(), &[2, 3]), 4);
        // substitute x -> x + y, y -> 1
        let g = f.substitute(&v, &[x.add(&y), int(&v, 1)]);
        let direct = x.add(&y).pow(3).add(&x.add(&y).scale(&2.into())).sub(&int(&v, 1));
        assert_eq!(g, direct);
    }

    #[test]
    fn display_signs() {
        let (v, x, y) = xy();
        let f = x.scale(&(-1).into()).add(&y.scale(&3.into())).sub(&int(&v, 2));
        assert_eq!(f.to_string(), "-x + 3*y - 2");
        assert_eq!(SparsePoly::zero(&v).to_string(), "0");
    }
}
