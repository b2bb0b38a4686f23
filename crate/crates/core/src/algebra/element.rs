use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::coefficient::Coefficient;
use super::monomial::{Letter, Monomial};
use crate::error::Result;
use crate::phase::{Bindings, ParamSymbol, PhaseExponent};
use crate::rational::{Gauss, Rat};

/// A finite sum of classical monomials with phase-group coefficients.
///
/// Elements carry no reference to their algebra; the product, star and
/// reduction live on [`AlgebraSpec`](super::AlgebraSpec).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element(BTreeMap<Monomial, Coefficient>);

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn one() -> Element {
        Element::from_monomial(Monomial::one())
    }

    pub fn scalar(c: Gauss) -> Element {
        Element::term(Monomial::one(), Coefficient::scalar(c))
    }

    pub fn rational(r: Rat) -> Element {
        Element::scalar(Gauss::real(r))
    }

    pub fn from_int(n: i64) -> Element {
        Element::scalar(Gauss::from_int(n))
    }

    pub fn from_monomial(m: Monomial) -> Element {
        Element::term(m, Coefficient::one())
    }

    pub fn from_letter(l: Letter) -> Element {
        Element::from_monomial(Monomial::from_letter(l))
    }

    pub fn term(m: Monomial, c: Coefficient) -> Element {
        let mut e = Element::zero();
        if !c.is_zero() {
            e.0.insert(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coefficient)> {
        self.0.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.0.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coefficient {
        self.0.get(m).cloned().unwrap_or_default()
    }

    /// The value if this is a multiple of the unit with a plain scalar.
    pub fn as_scalar(&self) -> Option<Gauss> {
        match self.0.len() {
            0 => Some(Gauss::zero()),
            1 => {
                let (m, c) = self.0.iter().next()?;
                if m.is_one() {
                    c.as_scalar()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.0.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (m, c) in &other.0 {
            self.add_term(m.clone(), c);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element(self.0.iter().map(|(m, c)| (m.clone(), c.neg())).collect())
    }

    pub fn scale(&self, s: &Gauss) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        Element(self.0.iter().map(|(m, c)| (m.clone(), c.scale(s))).collect())
    }

    pub fn scale_rat(&self, r: &Rat) -> Element {
        self.scale(&Gauss::real(r.clone()))
    }

    pub fn mul_coefficient(&self, k: &Coefficient) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.0 {
            out.add_term(m.clone(), &c.mul(k));
        }
        out
    }

    pub fn mul_phase(&self, p: &PhaseExponent) -> Element {
        self.mul_coefficient(&Coefficient::phase(p))
    }

    /// The undeformed product of commuting monomials.
    pub fn classical_mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.0 {
            for (n, d) in &other.0 {
                out.add_term(m.mul(n), &c.mul(d));
            }
        }
        out
    }

    /// Rewrites every monomial, summing collisions.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.0 {
            out.add_term(f(m), c);
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Coefficient) -> Coefficient) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.0 {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element(self.0.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect())
    }

    pub fn params(&self) -> BTreeSet<ParamSymbol> {
        self.0.values().flat_map(|c| c.params().cloned()).collect()
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<Element> {
        let resolved = bindings.resolved()?;
        Ok(self.map_coefficients(|c| c.substitute(&resolved)))
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.keys().filter_map(|m| m.pairs().last().map(|&(l, _)| l)).max()
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Element>) -> Element {
        let mut out = Element::zero();
        for e in items {
            out.add_assign(e);
        }
        out
    }
}

impl From<Monomial> for Element {
    fn from(m: Monomial) -> Self {
        Element::from_monomial(m)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(m, c)| format!("({c:?})*{m:?}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let x = Element::from_letter(0);
        let y = Element::from_letter(2);
        let s = x.add(&y).sub(&x);
        assert_eq!(s, y);
        assert!(s.sub(&y).is_zero());
        assert_eq!(Element::from_int(3).as_scalar(), Some(Gauss::from_int(3)));
    }

    #[test]
    fn classical_product_commutes() {
        let x = Element::from_letter(0).add(&Element::one());
        let y = Element::from_letter(3).add(&Element::from_int(2));
        assert_eq!(x.classical_mul(&y), y.classical_mul(&x));
        assert_eq!(x.classical_mul(&y).len(), 4);
    }
}
