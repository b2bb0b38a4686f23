use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A generator or its adjoint: `2*gen` is the generator, `2*gen + 1` its adjoint.
/// Central symbols are self-adjoint and only ever use the even letter.
pub type Letter = u16;

pub fn letter(gen: usize, adjoint: bool) -> Letter {
    (2 * gen + usize::from(adjoint)) as Letter
}

pub fn letter_gen(l: Letter) -> usize {
    (l / 2) as usize
}

pub fn letter_is_adjoint(l: Letter) -> bool {
    l % 2 == 1
}

/// A classical (commutative) monomial: sorted `(letter, exponent)` pairs.
///
/// Ordered by graded reverse lexicographic order with larger letters as larger
/// variables, so the empty monomial is the smallest.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Letter, u16); 6]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn from_letter(l: Letter) -> Monomial {
        Monomial::power(l, 1)
    }

    pub fn power(l: Letter, e: u16) -> Monomial {
        let mut m = Monomial::one();
        if e > 0 {
            m.0.push((l, e));
        }
        m
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Letter, u16)>) -> Monomial {
        let mut out = Monomial::one();
        for (l, e) in pairs {
            out = out.mul(&Monomial::power(l, e));
        }
        out
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Monomial {
        Monomial::from_pairs(letters.into_iter().map(|l| (l, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Letter, u16)] {
        &self.0
    }

    /// Letters with multiplicity, in ascending order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().flat_map(|&(l, e)| std::iter::repeat_n(l, e as usize))
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn exponent(&self, l: Letter) -> u16 {
        self.0
            .binary_search_by_key(&l, |&(m, _)| m)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: u16) -> Monomial {
        Monomial(self.0.iter().map(|&(l, e)| (l, e * k)).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        let mut j = 0;
        for &(l, e) in &self.0 {
            while j < other.0.len() && other.0[j].0 < l {
                j += 1;
            }
            if j == other.0.len() || other.0[j].0 != l || other.0[j].1 < e {
                return false;
            }
        }
        true
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(l, e) in &other.0 {
            let d = e - self.exponent(l);
            if d > 0 {
                out.push((l, d));
            }
        }
        Monomial(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out: SmallVec<[(Letter, u16); 6]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&a), Some(&b)) if a.0 == b.0 => {
                    out.push((a.0, a.1.max(b.1)));
                    i += 1;
                    j += 1;
                }
                (Some(&a), Some(&b)) if a.0 < b.0 => {
                    out.push(a);
                    i += 1;
                }
                (Some(&a), None) => {
                    out.push(a);
                    i += 1;
                }
                (_, Some(&b)) => {
                    out.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(l, _)| other.exponent(l) == 0)
    }

    /// Applies a letter map, merging letters that collide.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(l, e)| (f(l), e)))
    }

    /// Keeps only the letters for which `keep` holds.
    pub fn filter(&self, keep: impl Fn(Letter) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(l, _)| keep(l)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Smallest letter where the exponents differ decides; the smaller
        // exponent there belongs to the larger monomial.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(la, ea)), Some(&(lb, eb))) => {
                    if la == lb {
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        i += 1;
                        j += 1;
                    } else if la < lb {
                        return Ordering::Less;
                    } else {
                        return Ordering::Greater;
                    }
                }
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|&(l, e)| format!("x{l}^{e}")).collect();
        f.write_str(&parts.join("*"))
    }
}
