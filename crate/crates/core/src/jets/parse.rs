use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{JetError, RingPresentation};
use crate::substrate::{SparsePoly, VarList};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Option<&'a VarList>,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, vars: Option<&'a VarList>) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            vars,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, JetError> {
        Err(JetError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), JetError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn ident(&mut self) -> Result<String, JetError> {
        match self.peek() {
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                while self.pos < self.src.len() && is_ident_char(self.src[self.pos]) {
                    self.pos += 1;
                }
                Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
            }
            _ => self.err("expected a name"),
        }
    }

    fn number(&mut self) -> Result<BigInt, JetError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn vars(&self) -> &'a VarList {
        self.vars.expect("variables are set before parsing polynomials")
    }

    /// expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<SparsePoly, JetError> {
        let vars = self.vars();
        let mut acc = SparsePoly::zero(vars);
        let mut sign_neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if sign_neg { acc.sub(&t) } else { acc.add(&t) };
            if self.eat(b'+') {
                sign_neg = false;
            } else if self.eat(b'-') {
                sign_neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    /// term := power (['*'] power)*
    fn term(&mut self) -> Result<SparsePoly, JetError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.power()?);
                continue;
            }
            match self.peek() {
                Some(c) if c.is_ascii_digit() || is_ident_start(c) || c == b'(' => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    /// power := atom ['^' number]
    fn power(&mut self) -> Result<SparsePoly, JetError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.number()?;
            match e.to_u32() {
                Some(e) => Ok(base.pow(e)),
                None => self.err("exponent too large"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SparsePoly, JetError> {
        let vars = self.vars();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(SparsePoly::constant(vars, self.number()?)),
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                let name = self.ident()?;
                match vars.index(&name) {
                    Some(i) => Ok(SparsePoly::var(vars, i)),
                    None => Err(JetError::UnknownGenerator { name, position: start }),
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an integer polynomial in the given variables.
pub fn parse_polynomial(vars: &VarList, text: &str) -> Result<SparsePoly, JetError> {
    let mut p = Parser::new(text, Some(vars));
    let f = p.expr()?;
    if !p.at_end() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// `Z[g1,...,gr]/(f1, ..., fs)`, `Z[g1,...]`, or the same over `Z/m`.
pub fn parse_presentation(text: &str) -> Result<RingPresentation, JetError> {
    let mut p = Parser::new(text, None);
    if p.ident()? != "Z" {
        p.pos = 0;
        return p.err("expected `Z`");
    }
    let mut modulus = None;
    if p.eat(b'/') {
        let m = p.number()?;
        if m <= BigInt::one() {
            return p.err("modulus must be at least 2");
        }
        modulus = Some(m.to_u64().ok_or(JetError::Syntax {
            position: p.pos,
            message: "modulus too large".into(),
        })?);
    }
    p.expect(b'[')?;
    let mut names: Vec<String> = Vec::new();
    if !p.eat(b']') {
        loop {
            let name = p.ident()?;
            if names.contains(&name) {
                return Err(JetError::DuplicateGenerator(name));
            }
            names.push(name);
            if p.eat(b']') {
                break;
            }
            p.expect(b',')?;
        }
    }
    let vars = VarList::new(names);
    let mut relations = Vec::new();
    if p.eat(b'/') {
        p.expect(b'(')?;
        let mut sub = Parser {
            src: p.src,
            pos: p.pos,
            vars: Some(&vars),
        };
        loop {
            sub.skip_ws();
            let start = sub.pos;
            let f = sub.expr()?;
            if f.is_zero() {
                return Err(JetError::ZeroRelation { position: start });
            }
            relations.push(f);
            if sub.eat(b')') {
                break;
            }
            sub.expect(b',')?;
        }
        p.pos = sub.pos;
    }
    if !p.at_end() {
        return p.err("trailing input");
    }
    let relations = match modulus {
        Some(m) => {
            let mb = BigInt::from(m);
            let mut out = Vec::new();
            for f in relations {
                let r = reduce_coeffs(&f, &mb);
                if r.is_zero() {
                    return Err(JetError::ZeroRelation { position: 0 });
                }
                out.push(r);
            }
            out
        }
        None => relations,
    };
    RingPresentation::new(modulus, vars, relations)
}

/// Coefficients reduced into [0, m).
pub(crate) fn reduce_coeffs(f: &SparsePoly, m: &BigInt) -> SparsePoly {
    let terms = f
        .terms()
        .map(|(mo, c)| {
            let mut r = c % m;
            if r < BigInt::zero() {
                r += m;
            }
            (mo.clone(), r)
        })
        .collect();
    SparsePoly::from_terms(f.vars(), terms)
}
