//! Concrete syntax for polynomials, star words, traces and verdicts.
//!
//! ```text
//! poly     := [sign] term { sign term }
//! term     := rational ["*"] factors | rational | factors
//! factors  := factor { ["*"] factor }
//! factor   := "1" | ident | ("R"|"S") "_" ident "[" poly "]" | "(" poly ")" | "@"
//! rational := integer [ "/" positive-integer ]
//! ident    := letter { letter | digit | "'" }
//! ```
//!
//! Bracket and parenthesis contents are polynomials, applied linearly.
//! `@` (the hole) is accepted only in star-word mode.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gsb::{AmbiguityKind, GsbVerdict};
use crate::rewrite::{ReductionTrace, TraceStep};
use crate::systems::RuleSystem;
use crate::terms::{Polynomial, Prime, Rational, Signature, StarWord, Tag, Word};

pub fn parse_polynomial(text: &str, sig: &Signature) -> Result<Polynomial> {
    Parser::new(text, sig, false).parse_all()
}

pub fn parse_star_word(text: &str, sig: &Signature) -> Result<StarWord> {
    let mut parser = Parser::new(text, sig, true);
    let p = parser.parse_all()?;
    let mut terms = p.iter();
    match (terms.next(), terms.next()) {
        (Some((w, c)), None) if c.is_one() => StarWord::new(w.clone()),
        (None, _) => Err(parser.error_at(0, "a star word cannot be zero")),
        _ => Err(parser.error_at(0, "a star word must be a single monomial with coefficient 1")),
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    sig: &'a Signature,
    star: bool,
    holes: u32,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a Signature, star: bool) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            sig,
            star,
            holes: 0,
        }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn parse_all(&mut self) -> Result<Polynomial> {
        let p = self.poly()?;
        if let Some(c) = self.peek() {
            return Err(self.error(format!("unexpected `{c}`")));
        }
        if self.star && self.holes != 1 {
            return Err(Error::HoleCount(self.holes));
        }
        Ok(p)
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            if negative {
                out = &out - &t;
            } else {
                out = &out + &t;
            }
        }
        Ok(out)
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_alphabetic() || c == '(' || c == '@' || c == '1')
    }

    fn term(&mut self) -> Result<Polynomial> {
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            let c = self.rational()?;
            // A lone `1` is the empty word.
            if self.peek() == Some('*') {
                self.pos += 1;
                Some(c)
            } else if self.starts_factor() || start + 1 != self.pos || self.chars[start] != '1' {
                Some(c)
            } else {
                return Ok(Polynomial::monomial(Word::one()));
            }
        } else {
            None
        };
        let product = match coeff {
            Some(_) if !self.starts_factor() => Polynomial::monomial(Word::one()),
            _ => self.factors()?,
        };
        Ok(match coeff {
            Some(c) => product.scale(&c),
            None => product,
        })
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        let save = self.pos;
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            self.skip_ws();
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.error_at(at, "zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        self.pos = save;
        Ok(Rational::from_integer(num))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn factors(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some('*') {
                self.pos += 1;
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.chars.get(self.pos).is_some_and(|c| c.is_alphabetic()) {
            return Err(self.error("expected a name"));
        }
        while self
            .chars
            .get(self.pos)
            .is_some_and(|&c| c.is_alphanumeric() || c == '\'')
        {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                if self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error_at(start, "coefficients must start a term"));
                }
                Ok(Polynomial::monomial(Word::one()))
            }
            Some('@') => {
                if !self.star {
                    return Err(self.error("`@` is only allowed in star words"));
                }
                self.pos += 1;
                self.holes += 1;
                Ok(Polynomial::monomial(Word::hole()))
            }
            Some('(') => {
                self.pos += 1;
                let p = self.poly()?;
                self.expect(')')?;
                Ok(p)
            }
            Some(c) if c.is_alphabetic() => {
                let name = self.ident()?;
                let tag = match name.as_str() {
                    "R" => Some(Tag::R),
                    "S" => Some(Tag::S),
                    _ => None,
                };
                match tag {
                    Some(tag) if self.chars.get(self.pos) == Some(&'_') => {
                        self.pos += 1;
                        let omega = self.ident()?;
                        let op = self.sig.operator(tag, &omega)?;
                        self.expect('[')?;
                        let inner = self.poly()?;
                        self.expect(']')?;
                        Ok(inner.wrap(op))
                    }
                    _ => Ok(Polynomial::monomial(Word::gen(self.sig.generator(&name)?))),
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Words render as space-separated primes; the empty word is `1`.
pub fn render_word(w: &Word, sig: &Signature) -> String {
    let mut out = String::new();
    write_word(&mut out, w, sig);
    out
}

fn write_word(out: &mut String, w: &Word, sig: &Signature) {
    if w.is_one() {
        out.push('1');
        return;
    }
    for (i, p) in w.primes().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        match p {
            Prime::Hole => out.push('@'),
            Prime::Gen(g) => out.push_str(sig.generator_name(*g)),
            Prime::Bracket(op, inner) => {
                let _ = write!(out, "{}_{}[", op.tag, sig.omega_name(op.omega));
                write_word(out, inner, sig);
                out.push(']');
            }
        }
    }
}

pub fn render_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Terms in descending order, ` + ` / ` - ` separators, `c * w` for
/// non-unit coefficients, and `0` for the zero polynomial.
pub fn render_polynomial(p: &Polynomial, sig: &Signature) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in p.iter().rev().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if w.is_one() {
            out.push_str(&render_rational(&a));
        } else if a.is_one() {
            write_word(&mut out, w, sig);
        } else {
            out.push_str(&render_rational(&a));
            out.push_str(" * ");
            write_word(&mut out, w, sig);
        }
    }
    out
}

pub fn render_star_word(q: &StarWord, sig: &Signature) -> String {
    render_word(q.as_word(), sig)
}

/// `c * <context> |_ <kind>(α,β,Q,u,v)`
pub fn render_step(step: &TraceStep, sys: &RuleSystem, sig: &Signature) -> String {
    let r = &step.redex;
    format!(
        "{} * {} |_ {}({},{},{},{},{})",
        render_rational(&step.coeff),
        render_star_word(&r.context, sig),
        sys.kind().name(),
        sys.omega().name(r.alpha),
        sys.omega().name(r.beta),
        r.tag,
        render_word(&r.u, sig),
        render_word(&r.v, sig),
    )
}

/// One line per step, then `NF: <poly>`.
pub fn render_trace(trace: &ReductionTrace, sys: &RuleSystem, sig: &Signature) -> String {
    let mut out = String::new();
    for s in &trace.steps {
        out.push_str(&render_step(s, sys, sig));
        out.push('\n');
    }
    let _ = write!(out, "NF: {}", render_polynomial(&trace.normal_form, sig));
    out
}

/// Family tallies, the coverage note, counterexample dumps and a final
/// verdict line.
pub fn render_verdict(v: &GsbVerdict, sys: &RuleSystem) -> String {
    let sig = &v.signature;
    let mut out = String::new();
    for t in &v.tallies {
        let kind = if t.family.is_intersection() {
            "intersection"
        } else {
            "including"
        };
        let _ = writeln!(
            out,
            "{} {}: {} checked, {} nontrivial",
            t.family, kind, t.checked, t.nontrivial
        );
    }
    let _ = writeln!(out, "coverage: {}", v.coverage);
    for c in &v.counterexamples {
        let a = &c.ambiguity;
        let idx: Vec<&str> = a.indices.iter().map(|&i| sys.omega().name(i)).collect();
        let _ = writeln!(out, "counterexample {} ({}):", a.family, idx.join(","));
        let _ = writeln!(out, "  w = {}", render_word(&a.w, sig));
        if let AmbiguityKind::Including { context } = &a.kind {
            let _ = writeln!(out, "  q = {}", render_star_word(context, sig));
        }
        let _ = writeln!(out, "  composition = {}", render_polynomial(&c.composition, sig));
        for line in render_trace(&c.trace, sys, sig).lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    let total: usize = v.tallies.iter().map(|t| t.checked).sum();
    if v.consistent {
        let _ = write!(out, "verdict: consistent ({total} compositions reduce to 0)");
    } else {
        let _ = write!(
            out,
            "verdict: inconsistent ({} of {total} compositions have a nonzero normal form)",
            v.counterexamples.len()
        );
    }
    out
}
