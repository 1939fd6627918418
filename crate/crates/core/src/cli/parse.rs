use num_bigint::BigInt;

use super::Fail;
use crate::substrate::{IntegerRing, PowerRing, Ring, Zmod};
use crate::witt::{split_tuple, WittRing};

/// Rings whose elements can be read from the command line.
pub(crate) trait ParseElem: Ring {
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, Fail>;

    fn witt_inverse(_w: &WittRing<Self>, _a: &[Self::Elem]) -> Result<Option<Vec<Self::Elem>>, Fail> {
        Err(Fail::Domain("inverses need a finite local base ring".into()))
    }
}

fn integer(s: &str) -> Result<BigInt, Fail> {
    s.trim()
        .parse()
        .map_err(|_| Fail::Domain(format!("cannot parse `{s}` as an integer")))
}

impl ParseElem for IntegerRing {
    fn parse_elem(&self, s: &str) -> Result<BigInt, Fail> {
        integer(s)
    }
}

impl ParseElem for Zmod {
    fn parse_elem(&self, s: &str) -> Result<u64, Fail> {
        Ok(self.from_int(&integer(s)?))
    }
}

impl ParseElem for PowerRing<Zmod> {
    fn parse_elem(&self, s: &str) -> Result<Vec<u64>, Fail> {
        let t = s.trim().replace('<', "(").replace('>', ")");
        let parts = split_tuple(&t)?;
        if parts.len() != self.rank() {
            return Err(Fail::Domain(format!("expected {} coordinates in `{s}`", self.rank())));
        }
        parts.iter().map(|x| self.base().parse_elem(x)).collect()
    }
}

impl<R: ParseElem> ParseElem for WittRing<R> {
    fn parse_elem(&self, s: &str) -> Result<Vec<R::Elem>, Fail> {
        let parts = split_tuple(s)?;
        if parts.len() != self.len() {
            return Err(Fail::Domain(format!(
                "`{s}` has {} components, W_{} needs {}",
                parts.len(),
                self.level(),
                self.len()
            )));
        }
        parts.iter().map(|x| self.base().parse_elem(x)).collect()
    }
}

/// `m,n` as two non-negative integers.
pub(crate) fn pair(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// A tuple of tuples, e.g. `((1,0),(0,1))`, with the given brackets.
pub(crate) fn nested<R: ParseElem>(base: &R, s: &str, open: char, close: char) -> Result<Vec<Vec<R::Elem>>, Fail> {
    let t = s.trim().replace(open, "(").replace(close, ")");
    split_tuple(&t)?
        .iter()
        .map(|inner| split_tuple(inner)?.iter().map(|x| base.parse_elem(x)).collect())
        .collect()
}

/// Comma-separated list of numbers.
pub(crate) fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Fail> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| super::usage(format!("bad list `{s}`"))))
        .collect()
}
