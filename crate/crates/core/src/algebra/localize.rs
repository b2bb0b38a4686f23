//! Identity testing with central localization symbols.
//!
//! A symbol `Q` inverting `D` is eliminated by multiplying through by `D^K`,
//! `K` the largest power of `Q` present, using `Q^e·D^e = 1`. This is sound
//! when `D` is not a zero divisor modulo the relations;
//! [`AlgebraSpec::denominator_is_regular`] probes that at low degree.

use super::element::Element;
use super::monomial::{letter, Monomial};
use super::spec::AlgebraSpec;
use crate::error::Result;
use crate::rational::Gauss;

/// The result of clearing every central symbol from an element.
#[derive(Clone, Debug)]
pub struct Cleared {
    /// `a·Π D_s^{K_s}`, reduced and free of central symbols.
    pub element: Element,
    /// Clearing exponent per central symbol, in declaration order.
    pub exponents: Vec<u16>,
}

impl AlgebraSpec {
    pub fn clear_denominators(&self, a: &Element) -> Result<Cleared> {
        let mut cur = self.reduce(a)?;
        let mut exponents = Vec::new();
        for sym in self.central_symbols() {
            let q = letter(sym.generator, false);
            let k = cur.monomials().map(|m| m.exponent(q)).max().unwrap_or(0);
            exponents.push(k);
            if k == 0 {
                continue;
            }
            let mut parts = vec![Element::zero(); k as usize + 1];
            for (m, c) in cur.terms() {
                let e = m.exponent(q);
                parts[e as usize].add_term(m.filter(|l| l != q), c);
            }
            let d = self.reduce(&sym.denominator)?;
            // Horner: Σ_e f_e·D^{K-e}, with f_0 picking up the full power.
            let mut acc = parts[0].clone();
            for f in &parts[1..] {
                acc = self.reduce(&self.mul(&acc, &d)?)?;
                acc.add_assign(f);
            }
            cur = self.reduce(&acc)?;
        }
        Ok(Cleared { element: cur, exponents })
    }

    /// `a = b` in the localized quotient.
    pub fn eq_mod_ideal(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.clear_denominators(&a.sub(b))?.element.is_zero())
    }

    /// The scalar `s` with `a = s` in the localized quotient, if there is one.
    pub fn localized_scalar(&self, a: &Element) -> Result<Option<Gauss>> {
        let cleared = self.clear_denominators(a)?;
        let mut power = Element::one();
        for (sym, &k) in self.central_symbols().iter().zip(&cleared.exponents) {
            for _ in 0..k {
                power = self.reduce(&self.mul(&power, &sym.denominator)?)?;
            }
        }
        if cleared.element.is_zero() {
            return Ok(Some(Gauss::zero()));
        }
        let Some((m, c)) = power.terms().next_back() else { return Ok(None) };
        let Some(pc) = c.as_scalar() else { return Ok(None) };
        let Some(ec) = cleared.element.coefficient(m).as_scalar() else { return Ok(None) };
        let s = &ec / &pc;
        Ok((power.scale(&s) == cleared.element).then_some(s))
    }

    /// Checks that `D·m` does not reduce to zero for every normal monomial `m`
    /// in the non-central letters up to `max_degree`.
    pub fn denominator_is_regular(&self, max_degree: usize) -> Result<bool> {
        let letters = self.letters();
        for sym in self.central_symbols() {
            let d = self.reduce(&sym.denominator)?;
            for m in monomials_up_to(&letters, max_degree) {
                if self.rewrite_system().is_reducible(&m) {
                    continue;
                }
                if self.reduce(&self.mul(&d, &Element::from_monomial(m))?)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// All monomials in `letters` of total degree at most `max_degree`.
pub fn monomials_up_to(letters: &[u16], max_degree: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![(Monomial::one(), 0usize)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for (i, &l) in letters.iter().enumerate().skip(*start) {
                let n = m.mul(&Monomial::from_letter(l));
                out.push(n.clone());
                next.push((n, i));
            }
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_with_inverse() -> AlgebraSpec {
        // x x* + y y* = 1 with Q inverting 1 - x x*.
        AlgebraSpec::builder("C", 2)
            .generator("x", vec![1, 0])
            .generator("y", vec![0, 1])
            .deform(0, 1, "theta".parse().unwrap())
            .relation("x*x^* + y*y^* - 1")
            .central_symbol("Q", "1 - x*x^*")
            .build()
            .unwrap()
    }

    #[test]
    fn denominator_identities() {
        let s = circle_with_inverse();
        let q = s.gen("Q").unwrap();
        let d = s.parse("1 - x*x^*").unwrap();
        assert!(s.eq_mod_ideal(&s.mul(&q, &d).unwrap(), &Element::one()).unwrap());
        let q2 = s.mul(&q, &q).unwrap();
        assert!(s.eq_mod_ideal(&s.mul(&q2, &d).unwrap(), &q).unwrap());
        assert!(!s.eq_mod_ideal(&q, &Element::one()).unwrap());
        let y = s.gen("y").unwrap();
        assert!(s.eq_mod_ideal(&y, &y).unwrap());
        // Q·y y* = 1 since y y* = 1 - x x*.
        let yy = s.parse("y*y^*").unwrap();
        assert_eq!(s.localized_scalar(&s.mul(&q, &yy).unwrap()).unwrap(), Some(Gauss::one()));
        assert_eq!(s.localized_scalar(&q).unwrap(), None);
        assert!(s.denominator_is_regular(3).unwrap());
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(n + d, d) monomials of degree ≤ d in n letters.
        assert_eq!(monomials_up_to(&[0, 1, 2, 3], 2).len(), 15);
        assert_eq!(monomials_up_to(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11], 5).len(), 6188);
    }
}
