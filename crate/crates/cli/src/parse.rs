//! Text grammars for elements, polynomials, Weyl expressions, ordinals and
//! the various handles. Every syntax error carries the byte offset where
//! parsing stopped.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use triad::ideals::IdealHandle;
use triad::infinity::InfIdeal;
use triad::poly_module::SubmoduleHandle;
use triad::weyl::WeylElement;
use triad::{BasisVector, Element, Multidegree, Ordinal, Polynomial, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for SyntaxError {}

pub type PResult<T> = Result<T, SyntaxError>;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(SyntaxError { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expect_str(&mut self, s: &str) -> PResult<()> {
        if self.eat_str(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn at_digit(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    /// A run of decimal digits, with no whitespace inside.
    fn digits(&mut self) -> PResult<&'a str> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected a number");
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Ok(s)
    }

    /// Digits written directly after a letter, as in `x12`.
    fn index(&mut self) -> PResult<usize> {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected an index right after the variable letter");
        }
        self.pos += len;
        match self.src[start..self.pos].parse::<usize>() {
            Ok(0) => Err(SyntaxError { pos: start, msg: "indices start at 1".into() }),
            Ok(i) => Ok(i),
            Err(_) => Err(SyntaxError { pos: start, msg: "index too large".into() }),
        }
    }

    fn small(&mut self) -> PResult<u32> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| SyntaxError { pos: start, msg: "exponent too large".into() })
    }

    fn usize(&mut self) -> PResult<usize> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| SyntaxError { pos: start, msg: "number too large".into() })
    }

    fn rational(&mut self) -> PResult<Scalar> {
        let start = self.pos;
        let num = self.digits()?;
        let mut text = num.to_string();
        if self.eat('/') {
            let den = self.digits()?;
            if den.bytes().all(|b| b == b'0') {
                return Err(SyntaxError { pos: start, msg: "zero denominator".into() });
            }
            text = format!("{num}/{den}");
        }
        text.parse().map_err(|_| SyntaxError { pos: start, msg: "malformed rational".into() })
    }

    fn finish(&mut self) -> PResult<()> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return self.err(format!("unexpected '{}'", self.rest().chars().next().unwrap()));
        }
        Ok(())
    }
}

/// One factor `x_i^e` or `d_i^e` in source order.
#[derive(Debug, Clone, Copy)]
struct Factor {
    var: char,
    index: usize,
    exp: u32,
    pos: usize,
}

/// `[rational] factor*`, with `*` or whitespace between the pieces.
fn term(c: &mut Cursor) -> PResult<(Scalar, Vec<Factor>)> {
    let mut coeff = Scalar::one();
    let mut any = false;
    if c.at_digit() {
        coeff = c.rational()?;
        any = true;
    }
    let mut factors = Vec::new();
    loop {
        if any {
            c.eat('*');
        }
        let pos = {
            c.skip_ws();
            c.pos
        };
        let var = match c.peek() {
            Some(v @ ('x' | 'd')) => v,
            _ => break,
        };
        c.pos += 1;
        let index = c.index()?;
        let mut exp = 1;
        if c.eat('^') {
            exp = c.small()?;
        }
        factors.push(Factor { var, index, exp, pos });
        any = true;
    }
    if !any {
        return c.err("expected a term");
    }
    Ok((coeff, factors))
}

/// `term (('+' | '-') term)*` with an optional leading sign.
fn sum(c: &mut Cursor) -> PResult<Vec<(Scalar, Vec<Factor>)>> {
    let mut out = Vec::new();
    let mut neg = c.eat('-');
    if !neg {
        c.eat('+');
    }
    loop {
        let (coeff, f) = term(c)?;
        out.push((if neg { -coeff } else { coeff }, f));
        if c.eat('+') {
            neg = false;
        } else if c.eat('-') {
            neg = true;
        } else {
            break;
        }
    }
    Ok(out)
}

fn monomial_of(factors: &[Factor]) -> Multidegree {
    let mut m = Multidegree::zero();
    for f in factors {
        m = m.add(&Multidegree::var_pow(f.index, f.exp));
    }
    m
}

/// An element of some `u_n`; the rank is the largest slot unless raised.
pub fn element(text: &str) -> PResult<Element> {
    let terms = element_terms(text)?;
    let rank = terms.iter().map(|(b, _)| b.slot).max().unwrap_or(1);
    Ok(Element::from_terms(rank, terms).expect("terms were validated while parsing"))
}

fn element_terms(text: &str) -> PResult<Vec<(BasisVector, Scalar)>> {
    let mut c = Cursor::new(text);
    if c.eat_str("0") && c.peek().is_none() {
        return Ok(Vec::new());
    }
    c.pos = 0;
    let mut out = Vec::new();
    for (coeff, factors) in sum(&mut c)? {
        let Some((last, xs)) = factors.split_last() else {
            return c.err("a term needs a derivation d<i>");
        };
        if last.var != 'd' {
            return Err(SyntaxError { pos: last.pos, msg: "a term must end with d<i>".into() });
        }
        if last.exp != 1 {
            return Err(SyntaxError { pos: last.pos, msg: "derivations appear to the first power".into() });
        }
        if let Some(f) = xs.iter().find(|f| f.var == 'd') {
            return Err(SyntaxError { pos: f.pos, msg: "only one d<i> per term".into() });
        }
        if let Some(f) = xs.iter().find(|f| f.index >= last.index) {
            return Err(SyntaxError {
                pos: f.pos,
                msg: format!(
                    "factor index {} >= slot {}: the coefficient of d{} uses x1..x{} only",
                    f.index,
                    last.index,
                    last.index,
                    last.index - 1
                ),
            });
        }
        let b = BasisVector::new(monomial_of(xs), last.index).expect("indices checked above");
        out.push((b, coeff));
    }
    c.finish()?;
    Ok(out)
}

pub fn polynomial(text: &str) -> PResult<Polynomial> {
    let mut c = Cursor::new(text);
    let mut p = Polynomial::zero();
    for (coeff, factors) in sum(&mut c)? {
        if let Some(f) = factors.iter().find(|f| f.var == 'd') {
            return Err(SyntaxError { pos: f.pos, msg: "polynomials have no d factors".into() });
        }
        p = p.add(&Polynomial::term(monomial_of(&factors), coeff));
    }
    c.finish()?;
    Ok(p)
}

/// A single monomial such as `x1^2 x3` or `1`.
pub fn monomial(text: &str) -> PResult<Multidegree> {
    let p = polynomial(text)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(SyntaxError { pos: 0, msg: "expected a single monomial with coefficient 1".into() }),
    }
}

/// A Weyl expression. Factors are multiplied in the order written, so
/// `d1 x1` means `x1 d1 + 1`.
pub fn weyl(text: &str, rank: Option<usize>) -> PResult<WeylElement> {
    let mut c = Cursor::new(text);
    let terms = sum(&mut c)?;
    c.finish()?;
    let max = terms.iter().flat_map(|(_, f)| f.iter().map(|f| f.index)).max().unwrap_or(1);
    let rank = rank.unwrap_or(1).max(max);
    let mut out = WeylElement::zero(rank);
    for (coeff, factors) in terms {
        let mut t = WeylElement::one(rank);
        for f in factors {
            let m = Multidegree::var_pow(f.index, f.exp);
            let g = if f.var == 'x' {
                WeylElement::monomial(rank, m, Multidegree::zero())
            } else {
                WeylElement::monomial(rank, Multidegree::zero(), m)
            };
            t = t.mul(&g.expect("index within rank")).expect("same rank");
        }
        out = out.add(&t.scale(&coeff)).expect("same rank");
    }
    Ok(out)
}

fn ordinal_at(c: &mut Cursor) -> PResult<Ordinal> {
    if c.eat_str("w^w") {
        return Ok(Ordinal::top());
    }
    let mut acc = Ordinal::zero();
    loop {
        let t = ordinal_term(c)?;
        acc = acc.add(&t).expect("finite ordinals");
        // stop before `]` or `,` in handles; `+U[` begins an infinity tail
        let save = c.pos;
        if c.eat('+') {
            if matches!(c.peek(), Some('U')) {
                c.pos = save;
                break;
            }
            continue;
        }
        break;
    }
    Ok(acc)
}

fn ordinal_term(c: &mut Cursor) -> PResult<Ordinal> {
    if c.eat('w') {
        let mut exp = 1;
        if c.eat('^') {
            exp = c.small()?;
        }
        let mut coeff = BigUint::one();
        if c.eat('*') {
            coeff = big(c)?;
        }
        if coeff.is_zero() {
            return Ok(Ordinal::zero());
        }
        return Ok(Ordinal::monomial(exp, coeff));
    }
    if c.at_digit() {
        let n = big(c)?;
        // `2*w^3` is accepted as well as `w^3*2`
        if c.eat('*') {
            c.expect('w')?;
            let mut exp = 1;
            if c.eat('^') {
                exp = c.small()?;
            }
            return Ok(if n.is_zero() { Ordinal::zero() } else { Ordinal::monomial(exp, n) });
        }
        return Ok(Ordinal::finite(n));
    }
    c.err("expected an ordinal term (a number or w)")
}

fn big(c: &mut Cursor) -> PResult<BigUint> {
    let d = c.digits()?;
    Ok(d.parse().expect("digits parse"))
}

pub fn ordinal(text: &str) -> PResult<Ordinal> {
    let mut c = Cursor::new(text);
    let o = ordinal_at(&mut c)?;
    c.finish()?;
    Ok(o)
}

fn bracketed_ordinal(c: &mut Cursor, head: char) -> PResult<Ordinal> {
    c.expect(head)?;
    c.expect('[')?;
    let l = ordinal_at(c)?;
    c.expect(']')?;
    Ok(l)
}

/// Where an ideal was named, for error messages on out-of-range values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawIdeal {
    pub rank: usize,
    pub lambda: Ordinal,
}

/// `I[λ]@un`, `un/I[λ]` or a bare `un` (the zero ideal, i.e. `u_n` itself).
pub fn ideal(text: &str) -> PResult<RawIdeal> {
    let mut c = Cursor::new(text);
    let out = if c.peek() == Some('u') {
        c.pos += 1;
        let rank = c.index()?;
        let lambda = if c.eat('/') { bracketed_ordinal(&mut c, 'I')? } else { Ordinal::zero() };
        RawIdeal { rank, lambda }
    } else {
        let lambda = bracketed_ordinal(&mut c, 'I')?;
        c.expect('@')?;
        c.expect('u')?;
        let rank = c.index()?;
        RawIdeal { rank, lambda }
    };
    c.finish()?;
    Ok(out)
}

impl RawIdeal {
    pub fn handle(&self) -> triad::Result<IdealHandle> {
        IdealHandle::new(self.rank, self.lambda.clone())
    }
}

/// `P[λ]@Pn`.
pub fn submodule(text: &str) -> PResult<(usize, Ordinal)> {
    let mut c = Cursor::new(text);
    let lambda = bracketed_ordinal(&mut c, 'P')?;
    c.expect('@')?;
    c.expect('P')?;
    let rank = c.index()?;
    c.finish()?;
    Ok((rank, lambda))
}

pub fn submodule_handle(text: &str) -> Result<SubmoduleHandle, crate::CliError> {
    let (rank, lambda) = submodule(text)?;
    Ok(SubmoduleHandle::new(rank, lambda)?)
}

/// `Whole`, `Zero`, `U[oo,n]` or `I[λ]@n+U[oo,n+1]`.
pub fn inf_ideal(text: &str) -> Result<InfIdeal, crate::CliError> {
    let mut c = Cursor::new(text);
    let out = if c.eat_str("Whole") {
        InfIdeal::Whole
    } else if c.eat_str("Zero") {
        InfIdeal::Zero
    } else if c.peek() == Some('U') {
        let n = tail(&mut c)?;
        InfIdeal::tail(n)?
    } else if c.peek() == Some('I') {
        let lambda = bracketed_ordinal(&mut c, 'I')?;
        c.expect('@')?;
        let n = c.usize()?;
        c.expect('+')?;
        let at = c.pos;
        let t = tail(&mut c)?;
        if t != n + 1 {
            return Err(SyntaxError { pos: at, msg: format!("the tail after level {n} is U[oo,{}]", n + 1) }.into());
        }
        InfIdeal::mixed(n, lambda)?
    } else {
        return Err(SyntaxError { pos: c.pos, msg: "expected Whole, Zero, U[oo,n] or I[λ]@n+U[oo,n+1]".into() }.into());
    };
    c.finish()?;
    Ok(out)
}

fn tail(c: &mut Cursor) -> PResult<usize> {
    c.expect('U')?;
    c.expect('[')?;
    c.expect_str("oo")?;
    c.expect(',')?;
    let n = c.usize()?;
    c.expect(']')?;
    Ok(n)
}

/// Comma-separated rationals, optionally bracketed and signed: `[1, 0, -1/2]`.
pub fn scalars(text: &str) -> PResult<Vec<Scalar>> {
    let mut c = Cursor::new(text);
    let bracket = c.eat('[');
    let mut out = Vec::new();
    loop {
        let neg = c.eat('-');
        let v = c.rational()?;
        out.push(if neg { -v } else { v });
        if !c.eat(',') {
            break;
        }
    }
    if bracket {
        c.expect(']')?;
    }
    c.finish()?;
    Ok(out)
}
