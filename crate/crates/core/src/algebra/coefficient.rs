use std::collections::BTreeMap;
use std::fmt;

use crate::phase::{LinearForm, ParamSymbol, PhaseExponent};
use crate::rational::{Gauss, Rat};

/// A finite Gaussian-rational combination of phases `Σ c_k·exp(πi·ℓ_k)`.
///
/// Phases are stored with their constant in `[0, 1/2)`; quarter turns are
/// folded into the Gaussian scalar, so `exp(πi·(1/2 + θ))` is `i·exp(πiθ)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Coefficient(Vec<(PhaseExponent, Gauss)>);

impl Coefficient {
    pub fn zero() -> Coefficient {
        Coefficient(Vec::new())
    }

    pub fn one() -> Coefficient {
        Coefficient::scalar(Gauss::one())
    }

    pub fn scalar(c: Gauss) -> Coefficient {
        if c.is_zero() {
            Coefficient::zero()
        } else {
            Coefficient(vec![(PhaseExponent::one(), c)])
        }
    }

    pub fn rational(r: Rat) -> Coefficient {
        Coefficient::scalar(Gauss::real(r))
    }

    pub fn phase(p: &PhaseExponent) -> Coefficient {
        Coefficient::term(p, Gauss::one())
    }

    pub fn term(p: &PhaseExponent, c: Gauss) -> Coefficient {
        if c.is_zero() {
            return Coefficient::zero();
        }
        let (k, rest) = p.split_quarter_turns();
        Coefficient(vec![(rest, &c * &Gauss::i_pow(k))])
    }

    pub fn terms(&self) -> &[(PhaseExponent, Gauss)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].0.is_generically_trivial() && self.0[0].1.is_one()
    }

    /// The plain scalar if no nontrivial phase occurs.
    pub fn as_scalar(&self) -> Option<Gauss> {
        match self.0.as_slice() {
            [] => Some(Gauss::zero()),
            [(p, c)] if p.is_generically_trivial() => Some(c.clone()),
            _ => None,
        }
    }

    fn from_map(map: BTreeMap<PhaseExponent, Gauss>) -> Coefficient {
        Coefficient(map.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    fn add_into(map: &mut BTreeMap<PhaseExponent, Gauss>, p: PhaseExponent, c: Gauss) {
        let (k, rest) = p.split_quarter_turns();
        let c = if k == 0 { c } else { &c * &Gauss::i_pow(k) };
        *map.entry(rest).or_insert_with(Gauss::zero) += &c;
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &self.0[i].1 + &other.0[j].1;
                    if !c.is_zero() {
                        out.push((self.0[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Coefficient(out)
    }

    pub fn is_generic_scalar(&self) -> bool {
        self.as_scalar().is_some()
    }

    pub fn neg(&self) -> Coefficient {
        Coefficient(self.0.iter().map(|(p, c)| (p.clone(), -c)).collect())
    }

    pub fn sub(&self, other: &Coefficient) -> Coefficient {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        if self.is_zero() || other.is_zero() {
            return Coefficient::zero();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut map = BTreeMap::new();
        for (p, c) in &self.0 {
            for (q, d) in &other.0 {
                Coefficient::add_into(&mut map, p.mul(q), c * d);
            }
        }
        Coefficient::from_map(map)
    }

    pub fn mul_phase(&self, p: &PhaseExponent) -> Coefficient {
        if p.is_generically_trivial() {
            return self.clone();
        }
        let mut map = BTreeMap::new();
        for (q, c) in &self.0 {
            Coefficient::add_into(&mut map, q.mul(p), c.clone());
        }
        Coefficient::from_map(map)
    }

    pub fn scale(&self, s: &Gauss) -> Coefficient {
        if s.is_zero() {
            return Coefficient::zero();
        }
        Coefficient(self.0.iter().map(|(p, c)| (p.clone(), c * s)).collect())
    }

    pub fn conj(&self) -> Coefficient {
        let mut map = BTreeMap::new();
        for (p, c) in &self.0 {
            Coefficient::add_into(&mut map, p.conj(), c.conj());
        }
        Coefficient::from_map(map)
    }

    pub fn params(&self) -> impl Iterator<Item = &ParamSymbol> {
        self.0.iter().flat_map(|(p, _)| p.form().params())
    }

    pub fn substitute(&self, bindings: &BTreeMap<ParamSymbol, LinearForm>) -> Coefficient {
        let mut map = BTreeMap::new();
        for (p, c) in &self.0 {
            Coefficient::add_into(&mut map, p.substitute_resolved(bindings), c.clone());
        }
        Coefficient::from_map(map)
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(p, c)| format!("{c}*{}", p.compact())).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ph(s: &str) -> PhaseExponent {
        PhaseExponent::new(s.parse().unwrap())
    }

    #[test]
    fn quarter_turns_fold_into_scalar() {
        let c = Coefficient::phase(&ph("1/2 + theta"));
        assert_eq!(c, Coefficient::term(&ph("theta"), Gauss::i()));
        let minus = Coefficient::phase(&ph("1"));
        assert_eq!(minus.as_scalar(), Some(Gauss::from_int(-1)));
        assert!(Coefficient::one().add(&minus).is_zero());
    }

    #[test]
    fn products_and_conjugation() {
        let a = Coefficient::phase(&ph("theta")).add(&Coefficient::one());
        let b = a.conj();
        let prod = a.mul(&b);
        // (1 + e)(1 + ē) = 2 + e + ē
        let expected = Coefficient::rational(Rat::from_int(2))
            .add(&Coefficient::phase(&ph("theta")))
            .add(&Coefficient::phase(&ph("-theta")));
        assert_eq!(prod, expected);
        assert_eq!(Coefficient::phase(&ph("3/2")).conj().as_scalar(), Some(Gauss::i()));
    }
}
