//! Unit phases `exp(πi·ℓ)` where `ℓ` is a rational linear form in named,
//! formal deformation parameters.
//!
//! Parameters are treated as algebraically independent reals, so a phase is
//! trivial exactly when its linear form has no parameter part and an even
//! constant. Constrained parameter values are handled by [`Bindings`], which
//! rewrite parameters as linear forms in others.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::text::{tokenize, Cursor, Token};

/// A named formal parameter such as `theta`, `lambda1` or `tp_14`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamSymbol(Arc<str>);

impl ParamSymbol {
    pub fn new(name: &str) -> ParamSymbol {
        ParamSymbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ParamSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for ParamSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ParamSymbol {
    fn from(s: &str) -> Self {
        ParamSymbol::new(s)
    }
}

/// `constant + Σ coeff·param`, kept canonical: terms sorted by parameter,
/// no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinearForm {
    constant: Rat,
    terms: Vec<(ParamSymbol, Rat)>,
}

impl LinearForm {
    pub fn zero() -> LinearForm {
        LinearForm::default()
    }

    pub fn constant(c: Rat) -> LinearForm {
        LinearForm { constant: c, terms: Vec::new() }
    }

    pub fn param(p: impl Into<ParamSymbol>) -> LinearForm {
        LinearForm::term(Rat::one(), p)
    }

    pub fn term(coeff: Rat, p: impl Into<ParamSymbol>) -> LinearForm {
        let mut f = LinearForm::zero();
        if !coeff.is_zero() {
            f.terms.push((p.into(), coeff));
        }
        f
    }

    /// Builds a form from arbitrary terms, merging repeats and dropping zeros.
    pub fn from_terms(constant: Rat, terms: impl IntoIterator<Item = (ParamSymbol, Rat)>) -> LinearForm {
        let mut map: BTreeMap<ParamSymbol, Rat> = BTreeMap::new();
        for (p, c) in terms {
            *map.entry(p).or_default() += &c;
        }
        LinearForm { constant, terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn constant_part(&self) -> &Rat {
        &self.constant
    }

    pub fn terms(&self) -> &[(ParamSymbol, Rat)] {
        &self.terms
    }

    pub fn coeff(&self, p: &ParamSymbol) -> Rat {
        self.terms
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn params(&self) -> impl Iterator<Item = &ParamSymbol> {
        self.terms.iter().map(|(p, _)| p)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn has_params(&self) -> bool {
        !self.terms.is_empty()
    }

    pub fn scale(&self, k: &Rat) -> LinearForm {
        if k.is_zero() {
            return LinearForm::zero();
        }
        LinearForm {
            constant: &self.constant * k,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * k)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> LinearForm {
        self.scale(&Rat::from_int(k))
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, other: &LinearForm, k: &Rat) -> LinearForm {
        if k.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (p, c) = &other.terms[j];
                    terms.push((p.clone(), c * k));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &self.terms[i].1 + &(&other.terms[j].1 * k);
                    if !c.is_zero() {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        LinearForm { constant: &self.constant + &(&other.constant * k), terms }
    }

    /// Replaces parameters through `bindings`, which must already be resolved.
    fn substitute_resolved(&self, bindings: &BTreeMap<ParamSymbol, LinearForm>) -> LinearForm {
        let mut out = LinearForm::constant(self.constant.clone());
        for (p, c) in &self.terms {
            match bindings.get(p) {
                Some(f) => out = out.add_scaled(f, c),
                None => out = out.add_scaled(&LinearForm::param(p.clone()), c),
            }
        }
        out
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<LinearForm> {
        Ok(self.substitute_resolved(&bindings.resolved()?))
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (p, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{mag}*{p}")?;
            }
            first = false;
        }
        Ok(())
    }

    pub(crate) fn parse_tokens(cur: &mut Cursor<'_>) -> Result<LinearForm> {
        let mut out = LinearForm::zero();
        let mut sign = Rat::one();
        if cur.eat(&Token::Minus) {
            sign = -Rat::one();
        } else {
            cur.eat(&Token::Plus);
        }
        loop {
            let (coeff, param) = parse_form_term(cur)?;
            let coeff = &coeff * &sign;
            out = match param {
                Some(p) => out.add_scaled(&LinearForm::param(p), &coeff),
                None => out.add_scaled(&LinearForm::constant(Rat::one()), &coeff),
            };
            match cur.peek() {
                Some(Token::Plus) => {
                    cur.bump();
                    sign = Rat::one();
                }
                Some(Token::Minus) => {
                    cur.bump();
                    sign = -Rat::one();
                }
                _ => break,
            }
        }
        Ok(out)
    }
}

fn parse_form_term(cur: &mut Cursor<'_>) -> Result<(Rat, Option<ParamSymbol>)> {
    let mut coeff = Rat::one();
    let mut param: Option<ParamSymbol> = None;
    loop {
        match cur.bump() {
            Some(Token::Num(n)) => coeff = &coeff * n,
            Some(Token::Ident(name)) if name != "pi" && name != "i" => {
                if param.is_some() {
                    return Err(cur.error("nonlinear term"));
                }
                param = Some(ParamSymbol::new(name));
            }
            _ => return Err(cur.error("expected number or parameter")),
        }
        while cur.eat(&Token::Slash) {
            match cur.bump() {
                Some(Token::Num(d)) if !d.is_zero() => coeff = &coeff / d,
                _ => return Err(cur.error("expected nonzero integer denominator")),
            }
        }
        if cur.peek() == Some(&Token::Star)
            && matches!(cur.peek_at(1), Some(Token::Num(_)) | Some(Token::Ident(_)))
        {
            cur.bump();
            continue;
        }
        return Ok((coeff, param));
    }
}

impl FromStr for LinearForm {
    type Err = Error;

    /// Parses forms like `2*theta - lambda1 + 1/2` or `-t`.
    fn from_str(s: &str) -> Result<LinearForm> {
        let toks = tokenize(s)?;
        let mut cur = Cursor::new(&toks, s);
        let f = LinearForm::parse_tokens(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.error("trailing input"));
        }
        Ok(f)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: &LinearForm) -> LinearForm {
        self.add_scaled(rhs, &Rat::one())
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: &LinearForm) -> LinearForm {
        self.add_scaled(rhs, &-Rat::one())
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        self.scale(&-Rat::one())
    }
}

/// The unit phase `exp(πi·ℓ)`; the constant of `ℓ` is kept in `[0, 2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PhaseExponent(LinearForm);

impl PhaseExponent {
    pub fn one() -> PhaseExponent {
        PhaseExponent::default()
    }

    pub fn new(mut form: LinearForm) -> PhaseExponent {
        form.constant = form.constant.rem_euclid(&Rat::from_int(2));
        PhaseExponent(form)
    }

    /// `exp(πi·k·p)`.
    pub fn of_param(k: Rat, p: impl Into<ParamSymbol>) -> PhaseExponent {
        PhaseExponent::new(LinearForm::term(k, p))
    }

    pub fn form(&self) -> &LinearForm {
        &self.0
    }

    pub fn constant(&self) -> &Rat {
        &self.0.constant
    }

    pub fn mul(&self, other: &PhaseExponent) -> PhaseExponent {
        if other.0.is_zero() {
            return self.clone();
        }
        if self.0.is_zero() {
            return other.clone();
        }
        PhaseExponent::new(&self.0 + &other.0)
    }

    pub fn conj(&self) -> PhaseExponent {
        PhaseExponent::new(-&self.0)
    }

    pub fn pow(&self, k: i64) -> PhaseExponent {
        PhaseExponent::new(self.0.scale_int(k))
    }

    /// True iff the phase is 1 for generic values of every parameter.
    pub fn is_generically_trivial(&self) -> bool {
        self.0.is_zero()
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<PhaseExponent> {
        Ok(PhaseExponent::new(self.0.substitute(bindings)?))
    }

    pub(crate) fn substitute_resolved(&self, b: &BTreeMap<ParamSymbol, LinearForm>) -> PhaseExponent {
        PhaseExponent::new(self.0.substitute_resolved(b))
    }

    /// Splits off the part of the constant that is a multiple of 1/2:
    /// returns `(k, rest)` with `self = i^k · rest` and rest's constant in `[0, 1/2)`.
    pub fn split_quarter_turns(&self) -> (i64, PhaseExponent) {
        let twice = &self.0.constant * &Rat::from_int(2);
        let k = twice.floor();
        let rest_const = &self.0.constant - &(&k / &Rat::from_int(2));
        let k = k.to_i64().expect("phase constant is reduced mod 2");
        (k, PhaseExponent(LinearForm { constant: rest_const, terms: self.0.terms.clone() }))
    }

    /// Short rendering for single-parameter phases: `exp(2*pi*i*theta)`,
    /// falling back to the canonical form otherwise; `1` for the identity.
    pub fn compact(&self) -> String {
        if self.0.is_zero() {
            return "1".to_string();
        }
        if self.0.constant.is_zero() && self.0.terms.len() == 1 {
            let (p, c) = &self.0.terms[0];
            return if c.is_one() {
                format!("exp(pi*i*{p})")
            } else if (-c).is_one() {
                format!("exp(-pi*i*{p})")
            } else {
                format!("exp({c}*pi*i*{p})")
            };
        }
        self.to_string()
    }

    pub(crate) fn parse_tokens(cur: &mut Cursor<'_>) -> Result<PhaseExponent> {
        // exp ( pi * i * ( form ) )
        match cur.bump() {
            Some(Token::Ident(e)) if e == "exp" => {}
            _ => return Err(cur.error("expected `exp`")),
        }
        cur.expect(&Token::LParen)?;
        let mut scale = Rat::one();
        if cur.eat(&Token::Minus) {
            scale = -Rat::one();
        }
        if let Some(Token::Num(n)) = cur.peek() {
            scale = &scale * n;
            cur.bump();
            cur.expect(&Token::Star)?;
        }
        for word in ["pi", "i"] {
            match cur.bump() {
                Some(Token::Ident(w)) if w == word => {}
                _ => return Err(cur.error(&format!("expected `{word}`"))),
            }
            cur.expect(&Token::Star)?;
        }
        let form = if cur.eat(&Token::LParen) {
            let f = LinearForm::parse_tokens(cur)?;
            cur.expect(&Token::RParen)?;
            f
        } else {
            match cur.bump() {
                Some(Token::Ident(p)) => LinearForm::param(p.as_str()),
                _ => return Err(cur.error("expected parameter or `(`")),
            }
        };
        cur.expect(&Token::RParen)?;
        Ok(PhaseExponent::new(form.scale(&scale)))
    }
}

impl fmt::Display for PhaseExponent {
    /// Canonical rendering `exp(pi*i*(<form>))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(pi*i*({}))", self.0)
    }
}

impl fmt::Debug for PhaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PhaseExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<PhaseExponent> {
        let toks = tokenize(s)?;
        let mut cur = Cursor::new(&toks, s);
        let p = PhaseExponent::parse_tokens(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.error("trailing input"));
        }
        Ok(p)
    }
}

impl Mul for &PhaseExponent {
    type Output = PhaseExponent;
    fn mul(self, rhs: &PhaseExponent) -> PhaseExponent {
        PhaseExponent::mul(self, rhs)
    }
}

/// Parameter rewrites `p ↦ linear form`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings(BTreeMap<ParamSymbol, LinearForm>);

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    pub fn bind(mut self, p: impl Into<ParamSymbol>, form: LinearForm) -> Bindings {
        self.insert(p, form);
        self
    }

    pub fn insert(&mut self, p: impl Into<ParamSymbol>, form: LinearForm) {
        self.0.insert(p.into(), form);
    }

    pub fn get(&self, p: &ParamSymbol) -> Option<&LinearForm> {
        self.0.get(p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ParamSymbol, &LinearForm)> {
        self.0.iter()
    }

    /// Binds every listed parameter to zero.
    pub fn zero_all<'a>(params: impl IntoIterator<Item = &'a ParamSymbol>) -> Bindings {
        Bindings(params.into_iter().map(|p| (p.clone(), LinearForm::zero())).collect())
    }

    /// Expands every binding until no bound parameter remains on a right-hand
    /// side. Self-bindings `p ↦ p` are identities; longer cycles are errors.
    pub fn resolved(&self) -> Result<BTreeMap<ParamSymbol, LinearForm>> {
        fn visit(
            p: &ParamSymbol,
            raw: &BTreeMap<ParamSymbol, LinearForm>,
            done: &mut BTreeMap<ParamSymbol, LinearForm>,
            stack: &mut BTreeSet<ParamSymbol>,
        ) -> Result<()> {
            if done.contains_key(p) {
                return Ok(());
            }
            if !stack.insert(p.clone()) {
                return Err(Error::CyclicBinding(p.to_string()));
            }
            let form = &raw[p];
            for q in form.params() {
                if q != p && raw.contains_key(q) {
                    visit(q, raw, done, stack)?;
                }
            }
            let mut out = LinearForm::constant(form.constant.clone());
            for (q, c) in &form.terms {
                let sub = if q == p { LinearForm::param(q.clone()) } else {
                    done.get(q).cloned().unwrap_or_else(|| LinearForm::param(q.clone()))
                };
                out = out.add_scaled(&sub, c);
            }
            if out.params().any(|q| q == p) && *form != LinearForm::param(p.clone()) {
                return Err(Error::CyclicBinding(p.to_string()));
            }
            stack.remove(p);
            done.insert(p.clone(), out);
            Ok(())
        }
        let mut done = BTreeMap::new();
        let mut stack = BTreeSet::new();
        for p in self.0.keys() {
            visit(p, &self.0, &mut done, &mut stack)?;
        }
        Ok(done)
    }
}

impl FromIterator<(ParamSymbol, LinearForm)> for Bindings {
    fn from_iter<T: IntoIterator<Item = (ParamSymbol, LinearForm)>>(iter: T) -> Self {
        Bindings(iter.into_iter().collect())
    }
}
