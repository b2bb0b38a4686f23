//! Canonical text for elements: a sum of atomic terms
//! `scalar*exp(pi*i*(form))*letters`, letters written `z1`, `z1^*`, `z1^*^2`.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::coefficient::Coefficient;
use super::element::Element;
use super::monomial::{letter, letter_gen, letter_is_adjoint, Letter, Monomial};
use super::spec::GeneratorSpec;
use crate::error::Result;
use crate::phase::PhaseExponent;
use crate::rational::{Gauss, Rat};
use crate::text::{tokenize, Cursor, Token};

pub(crate) const RESERVED: [&str; 3] = ["i", "pi", "exp"];

pub(crate) fn render_letter(l: Letter, gens: &[GeneratorSpec], e: u16, out: &mut String) {
    out.push_str(&gens[letter_gen(l)].name);
    if letter_is_adjoint(l) {
        out.push_str("^*");
    }
    if e > 1 {
        let _ = write!(out, "^{e}");
    }
}

pub(crate) fn render_monomial(m: &Monomial, gens: &[GeneratorSpec]) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut out = String::new();
    for (k, &(l, e)) in m.pairs().iter().enumerate() {
        if k > 0 {
            out.push('*');
        }
        render_letter(l, gens, e, &mut out);
    }
    out
}

/// Splits a scalar into a sign and a magnitude string (empty for 1).
fn render_scalar(g: &Gauss) -> (bool, String) {
    let mag = |r: &Rat| -> String { r.abs().to_string() };
    if g.im.is_zero() {
        let neg = g.re.is_negative();
        return (neg, if g.re.abs().is_one() { String::new() } else { mag(&g.re) });
    }
    if g.re.is_zero() {
        let neg = g.im.is_negative();
        return (neg, if g.im.abs().is_one() { "i".into() } else { format!("{}*i", mag(&g.im)) });
    }
    let im = if g.im.abs().is_one() { "i".to_string() } else { format!("{}*i", mag(&g.im)) };
    let sign = if g.im.is_negative() { '-' } else { '+' };
    (false, format!("({} {sign} {im})", g.re))
}

pub(crate) fn render_element(e: &Element, gens: &[GeneratorSpec]) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (m, c) in e.terms() {
        let letters = if m.is_one() { String::new() } else { render_monomial(m, gens) };
        for (p, g) in c.terms() {
            let (neg, scalar) = render_scalar(g);
            let mut atoms: Vec<String> = Vec::new();
            if !scalar.is_empty() {
                atoms.push(scalar);
            }
            if !p.is_generically_trivial() {
                atoms.push(p.to_string());
            }
            if !letters.is_empty() {
                atoms.push(letters.clone());
            }
            let body = if atoms.is_empty() { "1".to_string() } else { atoms.join("*") };
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
    }
    out
}

/// Name lookup used while parsing.
pub(crate) struct Names<'a> {
    pub gens: &'a [GeneratorSpec],
    pub index: &'a HashMap<String, usize>,
}

impl Names<'_> {
    fn star(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            let sm = m.map_letters(|l| {
                if self.gens[letter_gen(l)].central {
                    l
                } else {
                    l ^ 1
                }
            });
            out.add_term(sm, &c.conj());
        }
        out
    }
}

pub(crate) fn parse_element(src: &str, names: &Names<'_>) -> Result<Element> {
    let toks = tokenize(src)?;
    let mut cur = Cursor::new(&toks, src);
    let e = parse_sum(&mut cur, names)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(e)
}

fn parse_sum(cur: &mut Cursor<'_>, names: &Names<'_>) -> Result<Element> {
    let mut neg = cur.eat(&Token::Minus);
    if !neg {
        cur.eat(&Token::Plus);
    }
    let mut acc = Element::zero();
    loop {
        let t = parse_product(cur, names)?;
        acc.add_assign(&if neg { t.neg() } else { t });
        if cur.eat(&Token::Plus) {
            neg = false;
        } else if cur.eat(&Token::Minus) {
            neg = true;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_product(cur: &mut Cursor<'_>, names: &Names<'_>) -> Result<Element> {
    let mut acc = parse_factor(cur, names)?;
    loop {
        if cur.eat(&Token::Star) {
            let f = parse_factor(cur, names)?;
            acc = acc.classical_mul(&f);
        } else if cur.eat(&Token::Slash) {
            match cur.bump() {
                Some(Token::Num(d)) if !d.is_zero() => acc = acc.scale_rat(&d.recip()),
                _ => return Err(cur.error("expected nonzero integer divisor")),
            }
        } else {
            return Ok(acc);
        }
    }
}

fn parse_factor(cur: &mut Cursor<'_>, names: &Names<'_>) -> Result<Element> {
    let mut base = parse_atom(cur, names)?;
    while cur.peek() == Some(&Token::Caret) {
        match cur.peek_at(1) {
            Some(Token::Star) => {
                cur.bump();
                cur.bump();
                base = names.star(&base);
            }
            Some(Token::Num(k)) => {
                let k = k.to_i64().filter(|k| (0..=u16::MAX as i64).contains(k));
                let Some(k) = k else { return Err(cur.error("bad exponent")) };
                cur.bump();
                cur.bump();
                let mut p = Element::one();
                for _ in 0..k {
                    p = p.classical_mul(&base);
                }
                base = p;
            }
            _ => return Err(cur.error("expected `*` or exponent after `^`")),
        }
    }
    Ok(base)
}

fn parse_atom(cur: &mut Cursor<'_>, names: &Names<'_>) -> Result<Element> {
    match cur.peek() {
        Some(Token::Num(n)) => {
            cur.bump();
            Ok(Element::rational(n.clone()))
        }
        Some(Token::LParen) => {
            cur.bump();
            let e = parse_sum(cur, names)?;
            cur.expect(&Token::RParen)?;
            Ok(e)
        }
        Some(Token::Minus) => {
            cur.bump();
            Ok(parse_factor(cur, names)?.neg())
        }
        Some(Token::Ident(name)) if name == "i" => {
            cur.bump();
            Ok(Element::scalar(Gauss::i()))
        }
        Some(Token::Ident(name)) if name == "exp" => {
            let p = PhaseExponent::parse_tokens(cur)?;
            Ok(Element::term(Monomial::one(), Coefficient::phase(&p)))
        }
        Some(Token::Ident(name)) => {
            cur.bump();
            match names.index.get(name.as_str()) {
                Some(&g) => Ok(Element::from_letter(letter(g, false))),
                None => Err(crate::error::Error::UnknownGenerator(name.clone())),
            }
        }
        _ => Err(cur.error("expected a term")),
    }
}
