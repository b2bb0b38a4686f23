use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::linalg::{Echelon, SparseRow};
use crate::phase::{Bindings, LinearForm, ParamSymbol};
use crate::rational::Rat;

/// Linear conditions `ℓ = 0` on the deformation parameters, kept in reduced
/// row-echelon form for a fixed column order.
///
/// The last column is the constant term; an all-zero row with a nonzero
/// constant makes the set inconsistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    columns: Vec<ParamSymbol>,
    rows: Vec<LinearForm>,
    inconsistent: bool,
}

impl ConstraintSet {
    /// Row-reduces `forms` with pivots chosen in `column_order` first; any
    /// parameter not listed is appended in ascending name order.
    pub fn new(forms: impl IntoIterator<Item = LinearForm>, column_order: &[ParamSymbol]) -> ConstraintSet {
        let forms: Vec<LinearForm> = forms.into_iter().collect();
        let mut columns: Vec<ParamSymbol> = Vec::new();
        let mut seen = BTreeSet::new();
        for p in column_order {
            if seen.insert(p.clone()) {
                columns.push(p.clone());
            }
        }
        let rest: BTreeSet<ParamSymbol> = forms.iter().flat_map(|f| f.params().cloned()).collect();
        for p in rest {
            if seen.insert(p.clone()) {
                columns.push(p);
            }
        }
        let index: BTreeMap<&ParamSymbol, usize> = columns.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let constant_col = columns.len();
        let mut ech: Echelon<Rat> = Echelon::new();
        for f in &forms {
            let mut row: SparseRow<Rat> = f.terms().iter().map(|(p, c)| (index[p], c.clone())).collect();
            if !f.constant_part().is_zero() {
                row.insert(constant_col, f.constant_part().clone());
            }
            ech.insert(row);
        }
        let mut inconsistent = false;
        let mut rows = Vec::new();
        for (pivot, row) in ech.rows() {
            if pivot == constant_col {
                inconsistent = true;
                continue;
            }
            let constant = row.get(&constant_col).cloned().unwrap_or_default();
            rows.push(LinearForm::from_terms(
                constant,
                row.iter().filter(|(c, _)| **c != constant_col).map(|(c, v)| (columns[*c].clone(), v.clone())),
            ));
        }
        ConstraintSet { columns, rows, inconsistent }
    }

    pub fn empty() -> ConstraintSet {
        ConstraintSet { columns: Vec::new(), rows: Vec::new(), inconsistent: false }
    }

    pub fn rows(&self) -> &[LinearForm] {
        &self.rows
    }

    pub fn columns(&self) -> &[ParamSymbol] {
        &self.columns
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() && !self.inconsistent
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// The pivot parameter of each row, in column order.
    pub fn pivots(&self) -> Vec<ParamSymbol> {
        let pos: BTreeMap<&ParamSymbol, usize> = self.columns.iter().enumerate().map(|(i, p)| (p, i)).collect();
        self.rows
            .iter()
            .map(|r| r.params().min_by_key(|p| pos[p]).expect("nonzero row").clone())
            .collect()
    }

    /// Parameters not fixed by any row.
    pub fn free_params(&self) -> Vec<ParamSymbol> {
        let pivots: BTreeSet<ParamSymbol> = self.pivots().into_iter().collect();
        self.columns.iter().filter(|p| !pivots.contains(p)).cloned().collect()
    }

    /// Solves for the pivots in terms of the free parameters.
    pub fn bindings(&self) -> Bindings {
        let mut b = Bindings::new();
        for (row, pivot) in self.rows.iter().zip(self.pivots()) {
            // pivot + rest = 0 with unit pivot coefficient.
            let rest = row.add_scaled(&LinearForm::param(pivot.clone()), &-Rat::one());
            b.insert(pivot, -&rest);
        }
        b
    }

    /// True if both sets describe the same solution space.
    pub fn same_solutions(&self, other: &ConstraintSet) -> bool {
        let order = self.columns.clone();
        let a = ConstraintSet::new(self.rows.clone(), &order);
        let b = ConstraintSet::new(other.rows.clone(), &order);
        a.inconsistent == b.inconsistent && a.rows == b.rows
    }

    /// Canonical sorted rendering `form = 0`, one per line.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.rows.iter().map(|r| format!("{r} = 0")).collect();
        out.sort();
        if self.inconsistent {
            out.push("1 = 0".into());
        }
        out
    }

    /// Each pivot solved, `pivot = form`, in column order.
    pub fn solved_lines(&self) -> Vec<String> {
        self.bindings().iter().map(|(p, f)| (p.clone(), f.clone())).collect::<Vec<_>>().iter().map(|(p, f)| format!("{p} = {f}")).collect()
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.lines() {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(s: &str) -> LinearForm {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_and_solution() {
        let order: Vec<ParamSymbol> = ["c", "b", "a"].iter().map(|s| ParamSymbol::new(s)).collect();
        let cs = ConstraintSet::new([lf("a - b"), lf("b - c"), lf("2*a - 2*c")], &order);
        assert_eq!(cs.rank(), 2);
        assert_eq!(cs.free_params(), vec![ParamSymbol::new("a")]);
        let b = cs.bindings();
        assert_eq!(b.get(&ParamSymbol::new("c")), Some(&lf("a")));
        assert_eq!(b.get(&ParamSymbol::new("b")), Some(&lf("a")));
        assert!(!ConstraintSet::new([lf("a"), lf("a + 1")], &order).is_consistent());
        assert!(cs.same_solutions(&ConstraintSet::new([lf("c - a"), lf("b - a")], &order)));
        assert!(ConstraintSet::new(Vec::<LinearForm>::new(), &order).is_empty());
    }
}
