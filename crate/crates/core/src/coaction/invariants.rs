//! Classical SU(3)-invariants by the infinitesimal action, lifted to the
//! deformed algebra and confirmed there.
//!
//! With at most two vectors and two covectors in play no determinant
//! invariant survives, so SU(3)- and U(3)-invariants coincide on the
//! bidegrees the oracle is run on.

use std::collections::{BTreeMap, HashMap};

use super::CoactionSpec;
use crate::algebra::{letter_gen, letter_is_adjoint, monomials_up_to, Coefficient, Element, Letter, Monomial};
use crate::error::Result;
use crate::linalg::{Echelon, SparseRow};
use crate::rational::Gauss;

/// Invariants found at one bidegree `(p, q)`: `p` unstarred, `q` starred letters.
#[derive(Clone, Debug)]
pub struct BidegreeInvariants {
    pub bidegree: (usize, usize),
    /// Null space dimension in the free commutative algebra.
    pub free_dimension: usize,
    /// Representatives reduced modulo the relations and independent of all lower ones.
    pub elements: Vec<Element>,
    /// Whether every representative satisfies `δ(x) = 1 ⊗ x` after reduction.
    pub confirmed: bool,
}

#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub max_degree: usize,
    pub bidegrees: Vec<BidegreeInvariants>,
    index: HashMap<Monomial, usize>,
    span: Echelon<Gauss>,
}

/// Monomials with `p` unstarred and `q` starred letters.
pub(crate) fn bidegree_monomials(letters: &[Letter], p: usize, q: usize) -> Vec<Monomial> {
    let plain: Vec<Letter> = letters.iter().copied().filter(|&l| !letter_is_adjoint(l)).collect();
    let starred: Vec<Letter> = letters.iter().copied().filter(|&l| letter_is_adjoint(l)).collect();
    let a: Vec<Monomial> = monomials_up_to(&plain, p).into_iter().filter(|m| m.degree() == p).collect();
    let b: Vec<Monomial> = monomials_up_to(&starred, q).into_iter().filter(|m| m.degree() == q).collect();
    let mut out: Vec<Monomial> = a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).collect();
    out.sort();
    out
}

/// `E_ab` for `a ≠ b`, then `E_11 − E_22` and `E_22 − E_33`.
fn sl3_basis() -> Vec<[[i64; 3]; 3]> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                let mut x = [[0; 3]; 3];
                x[a][b] = 1;
                out.push(x);
            }
        }
    }
    out.push([[1, 0, 0], [0, -1, 0], [0, 0, 0]]);
    out.push([[0, 0, 0], [0, 1, 0], [0, 0, -1]]);
    out
}

impl CoactionSpec {
    /// `X·l` for a single letter: `Σ X_{row,col} z_t` on generators,
    /// `−Σ X_{col,row} z_t*` on adjoints.
    fn infinitesimal_letter(&self, x: &[[i64; 3]; 3], l: Letter) -> Vec<(Letter, i64)> {
        let adj = letter_is_adjoint(l);
        self.summands(letter_gen(l))
            .iter()
            .filter_map(|s| {
                let v = if adj { -x[s.col - 1][s.row - 1] } else { x[s.row - 1][s.col - 1] };
                (v != 0).then(|| (crate::algebra::letter(s.target, adj), v))
            })
            .collect()
    }

    /// The derivation `X` on a monomial.
    fn infinitesimal(&self, x: &[[i64; 3]; 3], m: &Monomial) -> Vec<(Monomial, i64)> {
        let letters: Vec<Letter> = m.letters().collect();
        let mut out: BTreeMap<Monomial, i64> = BTreeMap::new();
        for i in 0..letters.len() {
            if i > 0 && letters[i] == letters[i - 1] {
                continue;
            }
            let mult = letters.iter().filter(|&&l| l == letters[i]).count() as i64;
            for (t, v) in self.infinitesimal_letter(x, letters[i]) {
                let mut ls = letters.clone();
                ls[i] = t;
                *out.entry(Monomial::from_letters(ls)).or_default() += mult * v;
            }
        }
        out.into_iter().filter(|(_, v)| *v != 0).collect()
    }

    /// Basis of the invariants at `(p, q)` in the free commutative algebra.
    pub fn free_invariants(&self, p: usize, q: usize) -> Vec<Element> {
        let basis = bidegree_monomials(&self.target().letters(), p, q);
        let mut rows: BTreeMap<(usize, Monomial), SparseRow<Gauss>> = BTreeMap::new();
        for (xi, x) in sl3_basis().iter().enumerate() {
            for (j, m) in basis.iter().enumerate() {
                for (n, v) in self.infinitesimal(x, m) {
                    let row = rows.entry((xi, n)).or_default();
                    let e = row.entry(j).or_insert_with(Gauss::zero);
                    *e += &Gauss::from_int(v);
                }
            }
        }
        let mut ech = Echelon::new();
        for (_, r) in rows {
            ech.insert(r);
        }
        ech.nullspace(basis.len())
            .into_iter()
            .map(|v| {
                let mut e = Element::zero();
                for (m, c) in basis.iter().zip(v) {
                    if !c.is_zero() {
                        e.add_term(m.clone(), &Coefficient::scalar(c));
                    }
                }
                e
            })
            .collect()
    }

    /// Dimension of `{x : δ(x) = 1 ⊗ x}` at `(p, q)` in the free algebra, by
    /// expanding the classical `δ` on every monomial and reducing only the
    /// `H` leg modulo unitarity.
    pub fn oracle_dimension(&self, p: usize, q: usize) -> Result<usize> {
        let basis = bidegree_monomials(&self.target().letters(), p, q);
        let tensor = self.tensor();
        let mut rows: HashMap<Monomial, SparseRow<Gauss>> = HashMap::new();
        for (j, m) in basis.iter().enumerate() {
            let x = Element::from_monomial(m.clone());
            let mut v = self.apply_linear(&x)?.sub(&tensor.embed(1, &x)?);
            v = reduce_leg0(self, &v)?;
            for (n, c) in v.terms() {
                let c = c.as_scalar().expect("classical coefficients");
                rows.entry(n.clone()).or_default().insert(j, c);
            }
        }
        let mut ech = Echelon::new();
        for (_, r) in rows {
            ech.insert(r);
        }
        Ok(basis.len() - ech.rank())
    }
}

/// Reduces the `H` leg of each term, leaving the target leg free.
fn reduce_leg0(c: &CoactionSpec, e: &Element) -> Result<Element> {
    let tensor = c.tensor();
    let mut by_target: BTreeMap<Monomial, Element> = BTreeMap::new();
    for (m, k) in e.terms() {
        let parts = tensor.split_monomial(m);
        by_target.entry(parts[1].clone()).or_insert_with(Element::zero).add_term(parts[0].clone(), k);
    }
    let mut out = Element::zero();
    for (a, h) in by_target {
        let h = c.hopf().base().reduce(&h)?;
        for (n, k) in h.terms() {
            out.add_term(tensor.join_monomials(&[n.clone(), a.clone()]), k);
        }
    }
    Ok(out)
}

pub(crate) fn solve(c: &CoactionSpec, max_degree: usize) -> Result<Coinvariants> {
    let mut bideg = Vec::new();
    for d in 0..=max_degree {
        for q in 0..=d {
            bideg.push((d - q, q));
        }
    }
    let free: Vec<Vec<Element>> = std::thread::scope(|s| {
        let hs: Vec<_> = bideg.iter().map(|&(p, q)| s.spawn(move || c.free_invariants(p, q))).collect();
        hs.into_iter().map(|h| h.join().expect("invariant solve panicked")).collect()
    });
    let mut out = Coinvariants { max_degree, bidegrees: Vec::new(), index: HashMap::new(), span: Echelon::new() };
    for (&(p, q), cands) in bideg.iter().zip(free) {
        let mut elements = Vec::new();
        for x in &cands {
            let r = c.target().reduce(x)?;
            if out.insert(&r) {
                elements.push(r);
            }
        }
        let mut confirmed = true;
        for x in &elements {
            confirmed &= c.is_coinvariant(x)?;
        }
        out.bidegrees.push(BidegreeInvariants { bidegree: (p, q), free_dimension: cands.len(), elements, confirmed });
    }
    Ok(out)
}

impl Coinvariants {
    fn row(&mut self, e: &Element) -> Option<SparseRow<Gauss>> {
        let mut row = SparseRow::new();
        for (m, c) in e.terms() {
            let n = self.index.len();
            let j = *self.index.entry(m.clone()).or_insert(n);
            row.insert(j, c.as_scalar()?);
        }
        Some(row)
    }

    /// Adds a scalar-coefficient element; false if it is already in the span.
    fn insert(&mut self, e: &Element) -> bool {
        match self.row(e) {
            Some(r) => self.span.insert(r),
            None => false,
        }
    }

    /// All representatives in bidegree order.
    pub fn basis(&self) -> Vec<&Element> {
        self.bidegrees.iter().flat_map(|b| b.elements.iter()).collect()
    }

    pub fn dimension(&self) -> usize {
        self.span.rank()
    }

    pub fn all_confirmed(&self) -> bool {
        self.bidegrees.iter().all(|b| b.confirmed)
    }

    pub fn at(&self, p: usize, q: usize) -> Option<&BidegreeInvariants> {
        self.bidegrees.iter().find(|b| b.bidegree == (p, q))
    }

    /// Membership of a reduced element in the span, one phase component at a time.
    pub fn contains(&self, e: &Element) -> bool {
        let mut components: BTreeMap<crate::phase::PhaseExponent, Element> = BTreeMap::new();
        for (m, c) in e.terms() {
            for (ph, g) in c.terms() {
                components.entry(ph.clone()).or_insert_with(Element::zero).add_term(m.clone(), &Coefficient::scalar(g.clone()));
            }
        }
        components.values().all(|x| {
            let mut row = SparseRow::new();
            for (m, c) in x.terms() {
                let Some(&j) = self.index.get(m) else { return false };
                row.insert(j, c.as_scalar().unwrap_or_else(Gauss::zero));
            }
            self.span.reduce(row).is_empty()
        })
    }
}
