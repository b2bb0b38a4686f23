//! Weight-homogeneous rewriting over classical monomials.
//!
//! Relations of a θ-deformed quotient are classical relations written in the
//! classical monomial basis, so a commutative Gröbner basis under grevlex
//! gives a confluent, terminating rule set.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use super::coefficient::Coefficient;
use super::element::Element;
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::rational::Gauss;

/// Default number of single rewrite steps allowed per monomial.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// A polynomial with scalar coefficients, keyed in ascending monomial order.
pub type Poly = BTreeMap<Monomial, Gauss>;

/// `lhs → rhs`, with every rhs monomial smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Monomial,
    pub rhs: Vec<(Monomial, Gauss)>,
}

impl Rule {
    /// Orients `p = 0` so its leading monomial is rewritten.
    pub fn from_poly(p: &Poly) -> Option<Rule> {
        let (lead, lc) = p.iter().next_back()?;
        let inv = lc.inv();
        let rhs = p
            .iter()
            .rev()
            .skip(1)
            .map(|(m, c)| (m.clone(), -&(c * &inv)))
            .collect();
        Some(Rule { lhs: lead.clone(), rhs })
    }

    pub fn to_poly(&self) -> Poly {
        let mut p: Poly = self.rhs.iter().map(|(m, c)| (m.clone(), -c)).collect();
        p.insert(self.lhs.clone(), Gauss::one());
        p
    }
}

type NormalForm = Arc<Vec<(Monomial, Gauss)>>;

#[derive(Debug)]
struct Inner {
    rules: Vec<Rule>,
    budget: usize,
    cache: Mutex<HashMap<Monomial, NormalForm>>,
}

/// A rule set with memoized monomial normal forms. Cloning shares the cache.
#[derive(Clone, Debug)]
pub struct RewriteSystem(Arc<Inner>);

impl Default for RewriteSystem {
    fn default() -> Self {
        RewriteSystem::from_rules(Vec::new())
    }
}

impl RewriteSystem {
    /// Uses `rules` as given; the caller vouches for confluence.
    pub fn from_rules(rules: Vec<Rule>) -> RewriteSystem {
        RewriteSystem::with_budget(rules, DEFAULT_BUDGET)
    }

    pub fn with_budget(rules: Vec<Rule>, budget: usize) -> RewriteSystem {
        RewriteSystem(Arc::new(Inner { rules, budget, cache: Mutex::new(HashMap::new()) }))
    }

    /// Completes the relations `p = 0` to a reduced Gröbner basis.
    pub fn complete(relations: &[Poly]) -> RewriteSystem {
        RewriteSystem::from_rules(groebner(relations))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.0.rules
    }

    pub fn budget(&self) -> usize {
        self.0.budget
    }

    pub fn is_reducible(&self, m: &Monomial) -> bool {
        self.find_rule(m).is_some()
    }

    fn find_rule(&self, m: &Monomial) -> Option<&Rule> {
        self.0.rules.iter().find(|r| r.lhs.divides(m))
    }

    pub fn normal_form_monomial(&self, m: &Monomial) -> Result<NormalForm> {
        if let Some(nf) = self.0.cache.lock().unwrap().get(m) {
            return Ok(nf.clone());
        }
        if !self.is_reducible(m) {
            let nf = Arc::new(vec![(m.clone(), Gauss::one())]);
            self.0.cache.lock().unwrap().insert(m.clone(), nf.clone());
            return Ok(nf);
        }
        let mut work: Poly = BTreeMap::new();
        work.insert(m.clone(), Gauss::one());
        let mut out: Poly = BTreeMap::new();
        let mut steps = 0usize;
        while let Some((top, c)) = work.pop_last() {
            if &top != m {
                let cached = self.0.cache.lock().unwrap().get(&top).cloned();
                if let Some(nf) = cached {
                    for (n, d) in nf.iter() {
                        add_poly_term(&mut out, n.clone(), &c * d);
                    }
                    continue;
                }
            }
            match self.find_rule(&top) {
                None => add_poly_term(&mut out, top, c),
                Some(rule) => {
                    steps += 1;
                    if steps > self.0.budget {
                        return Err(Error::BudgetExceeded(self.0.budget));
                    }
                    let q = rule.lhs.quotient_of(&top);
                    for (rm, rc) in &rule.rhs {
                        add_poly_term(&mut work, rm.mul(&q), &c * rc);
                    }
                }
            }
        }
        let nf: NormalForm = Arc::new(out.into_iter().collect());
        self.0.cache.lock().unwrap().insert(m.clone(), nf.clone());
        Ok(nf)
    }

    pub fn reduce(&self, e: &Element) -> Result<Element> {
        if self.0.rules.is_empty() {
            return Ok(e.clone());
        }
        let mut acc: BTreeMap<Monomial, Coefficient> = BTreeMap::new();
        for (m, c) in e.terms() {
            let nf = self.normal_form_monomial(m)?;
            for (n, d) in nf.iter() {
                let term = c.scale(d);
                match acc.get_mut(n) {
                    Some(v) => *v = v.add(&term),
                    None => {
                        acc.insert(n.clone(), term);
                    }
                }
            }
        }
        let mut out = Element::zero();
        for (m, c) in acc {
            out.add_term(m, &c);
        }
        Ok(out)
    }

    /// Reduces by single rewrite steps, letting `choose(n)` pick among `n`
    /// reducible monomials and then among `n` applicable rules. No caching.
    pub fn reduce_with_choices(&self, e: &Element, choose: &mut dyn FnMut(usize) -> usize) -> Result<Element> {
        let mut cur = e.clone();
        let mut steps = 0usize;
        loop {
            let reducible: Vec<Monomial> = cur.monomials().filter(|m| self.is_reducible(m)).cloned().collect();
            if reducible.is_empty() {
                return Ok(cur);
            }
            steps += 1;
            if steps > self.0.budget {
                return Err(Error::BudgetExceeded(self.0.budget));
            }
            let m = &reducible[choose(reducible.len()) % reducible.len()];
            let applicable: Vec<&Rule> = self.0.rules.iter().filter(|r| r.lhs.divides(m)).collect();
            let rule = applicable[choose(applicable.len()) % applicable.len()];
            let c = cur.coefficient(m);
            let q = rule.lhs.quotient_of(m);
            let mut next = cur.sub(&Element::term(m.clone(), c.clone()));
            for (rm, rc) in &rule.rhs {
                next.add_term(rm.mul(&q), &c.scale(rc));
            }
            cur = next;
        }
    }
}

fn add_poly_term(p: &mut Poly, m: Monomial, c: Gauss) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&m) {
        Some(v) => {
            *v += &c;
            if v.is_zero() {
                p.remove(&m);
            }
        }
        None => {
            p.insert(m, c);
        }
    }
}

fn leader(p: &Poly) -> &Monomial {
    p.keys().next_back().expect("nonzero polynomial")
}

fn monic(mut p: Poly) -> Poly {
    if let Some((_, lc)) = p.iter().next_back() {
        let inv = lc.inv();
        for v in p.values_mut() {
            *v = &*v * &inv;
        }
    }
    p
}

/// Fully reduces `p` by `basis`.
fn reduce_poly(mut p: Poly, basis: &[Poly]) -> Poly {
    let mut out = Poly::new();
    while let Some((top, c)) = p.pop_last() {
        match basis.iter().find(|g| leader(g).divides(&top)) {
            None => {
                out.insert(top, c);
            }
            Some(g) => {
                let lg = leader(g);
                let q = lg.quotient_of(&top);
                let f = &c / &g[lg];
                for (m, d) in g.iter().rev().skip(1) {
                    add_poly_term(&mut p, m.mul(&q), -&(&f * d));
                }
            }
        }
    }
    out
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (lf, lg) = (leader(f), leader(g));
    let l = lf.lcm(lg);
    let (qf, qg) = (lf.quotient_of(&l), lg.quotient_of(&l));
    let mut out = Poly::new();
    let (cf, cg) = (&f[lf], &g[lg]);
    for (m, c) in f.iter().rev().skip(1) {
        add_poly_term(&mut out, m.mul(&qf), c * cg);
    }
    for (m, c) in g.iter().rev().skip(1) {
        add_poly_term(&mut out, m.mul(&qg), -&(c * cf));
    }
    out
}

/// Buchberger's algorithm with the coprime and chain criteria, followed by
/// inter-reduction. Returns rules sorted by leading monomial.
pub fn groebner(relations: &[Poly]) -> Vec<Rule> {
    let mut basis: Vec<Poly> = Vec::new();
    for r in relations {
        let p = reduce_poly(r.clone(), &basis);
        if !p.is_empty() {
            basis.push(monic(p));
        }
    }
    let mut pairs: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let key = |b: &[Poly], i: usize, j: usize| leader(&b[i]).lcm(leader(&b[j])).degree();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((key(&basis, i, j), i, j));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    while let Some((_, i, j)) = pairs.pop_first() {
        done.insert((i, j));
        let (li, lj) = (leader(&basis[i]).clone(), leader(&basis[j]).clone());
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let pending = |a: usize, b: usize| !done.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && leader(&basis[k]).divides(&l) && !pending(i, k) && !pending(j, k)
        });
        if chain {
            continue;
        }
        let s = reduce_poly(s_poly(&basis[i], &basis[j]), &basis);
        if s.is_empty() {
            continue;
        }
        basis.push(monic(s));
        let n = basis.len() - 1;
        for a in 0..n {
            pairs.insert((key(&basis, a, n), a, n));
        }
    }
    // Drop redundant leaders, then tail-reduce.
    let mut minimal: Vec<Poly> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| leader(a).cmp(leader(b)));
    for p in sorted {
        if !minimal.iter().any(|g| leader(g).divides(leader(&p))) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let mut p = minimal[k].clone();
        let (lead, lc) = p.pop_last().expect("nonzero");
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|&(o, _)| o != k).map(|(_, g)| g.clone()).collect();
        let mut tail = reduce_poly(p, &others);
        tail.insert(lead, lc);
        reduced.push(monic(tail));
    }
    reduced.iter().filter_map(Rule::from_poly).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::letter;

    fn lt(g: usize, adj: bool) -> Monomial {
        Monomial::from_letter(letter(g, adj))
    }

    fn sphere() -> Poly {
        let mut p = Poly::new();
        for g in 0..3 {
            p.insert(lt(g, false).mul(&lt(g, true)), Gauss::one());
        }
        p.insert(Monomial::one(), Gauss::from_int(-1));
        p
    }

    #[test]
    fn sphere_rule_is_oriented_at_highest_pair() {
        let rules = groebner(&[sphere()]);
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].lhs, lt(2, false).mul(&lt(2, true)));
        let sys = RewriteSystem::from_rules(rules);
        let e = Element::from_monomial(lt(2, false).mul(&lt(2, true)));
        let r = sys.reduce(&e).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(sys.reduce(&r).unwrap(), r);
    }

    #[test]
    fn budget_is_enforced() {
        let rules = groebner(&[sphere()]);
        let sys = RewriteSystem::with_budget(rules, 2);
        let big = lt(2, false).mul(&lt(2, true)).pow(4);
        assert!(matches!(sys.normal_form_monomial(&big), Err(Error::BudgetExceeded(2))));
    }

    #[test]
    fn completion_of_overlapping_rules() {
        // x*y - z, y*w - 1: the overlap x*y*w gives x - z*w.
        let (x, y, z, w) = (Monomial::power(6, 1), Monomial::power(4, 1), Monomial::power(2, 1), Monomial::power(0, 1));
        let p1: Poly = [(x.mul(&y), Gauss::one()), (z.clone(), Gauss::from_int(-1))].into_iter().collect();
        let p2: Poly = [(y.mul(&w), Gauss::one()), (Monomial::one(), Gauss::from_int(-1))].into_iter().collect();
        let rules = groebner(&[p1, p2]);
        let sys = RewriteSystem::from_rules(rules);
        let lhs = sys.reduce(&Element::from_monomial(x.mul(&y).mul(&w))).unwrap();
        let rhs = sys.reduce(&Element::from_monomial(z.mul(&w))).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(sys.reduce(&Element::from_monomial(x.clone())).unwrap(), rhs);
    }
}
