//! Exact sparse row reduction over Q and Q(i).

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::rational::{Gauss, Rat};

pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for Gauss {
    fn zero() -> Self {
        Gauss::zero()
    }
    fn one() -> Self {
        Gauss::one()
    }
    fn is_zero(&self) -> bool {
        Gauss::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

pub type SparseRow<F> = BTreeMap<usize, F>;

/// A row space kept in reduced row-echelon form, one row per pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

fn axpy<F: Field>(row: &mut SparseRow<F>, k: &F, other: &SparseRow<F>) {
    for (c, v) in other {
        let t = k.mul(v);
        match row.get_mut(c) {
            Some(x) => {
                *x = x.add(&t);
                if x.is_zero() {
                    row.remove(c);
                }
            }
            None => {
                if !t.is_zero() {
                    row.insert(*c, t);
                }
            }
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseRow<F>)> {
        self.rows.iter().map(|(k, v)| (*k, v))
    }

    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        row.retain(|_, v| !v.is_zero());
        let mut from = 0;
        loop {
            let hit = row.range(from..).find(|(c, _)| self.rows.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((c, v)) = hit else { return row };
            axpy(&mut row, &v.neg(), &self.rows[&c]);
            from = c + 1;
        }
    }

    /// Adds a row; returns false if it was already in the span.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let mut row = self.reduce(row);
        let Some((&lead, lv)) = row.iter().next() else { return false };
        let inv = F::one().div(lv);
        for v in row.values_mut() {
            *v = v.mul(&inv);
        }
        for other in self.rows.values_mut() {
            if let Some(k) = other.get(&lead).cloned() {
                axpy(other, &k.neg(), &row);
            }
        }
        self.rows.insert(lead, row);
        true
    }

    /// A basis of `{x : row·x = 0 for every row}` in `ncols` unknowns.
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<F>> {
        let mut out = Vec::new();
        for f in (0..ncols).filter(|c| !self.rows.contains_key(c)) {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (&p, row) in &self.rows {
                if let Some(x) = row.get(&f) {
                    v[p] = x.neg();
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn rank<F: Field>(rows: impl IntoIterator<Item = SparseRow<F>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn nullspace<F: Field>(rows: impl IntoIterator<Item = SparseRow<F>>, ncols: usize) -> Vec<Vec<F>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.nullspace(ncols)
}

pub fn dense_to_sparse<F: Field>(row: &[F]) -> SparseRow<F> {
    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> SparseRow<Rat> {
        dense_to_sparse(&v.iter().map(|&x| Rat::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[0, 1, 1])];
        assert_eq!(rank(rows.clone()), 2);
        let ns = nullspace(rows.clone(), 3);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let dot = row.iter().fold(Rat::zero(), |acc, (c, v)| &acc + &(v * &ns[0][*c]));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn echelon_is_fully_reduced() {
        let mut e = Echelon::new();
        e.insert(r(&[0, 1, 1, 0]));
        e.insert(r(&[1, 1, 0, 1]));
        e.insert(r(&[0, 0, 1, 1]));
        for (p, row) in e.rows() {
            assert_eq!(row.get(&p), Some(&Rat::one()));
            for q in e.pivots().filter(|&q| q != p) {
                assert!(!row.contains_key(&q));
            }
        }
        assert!(!e.insert(r(&[1, 2, 1, 1])));
    }

    #[test]
    fn gaussian_entries() {
        let i = Gauss::i();
        let rows = vec![dense_to_sparse(&[Gauss::one(), i.clone()]), dense_to_sparse(&[i.clone(), Gauss::from_int(-1)])];
        assert_eq!(rank(rows), 1);
    }
}
