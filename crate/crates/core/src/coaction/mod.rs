//! Left coactions `δ: A → H ⊗ A` of SU(3)_θ on toric spheres, the pairwise
//! extension criterion, parameter constraints and coinvariants.

mod constraints;
mod invariants;

use std::collections::BTreeSet;

pub use constraints::ConstraintSet;
pub use invariants::{BidegreeInvariants, Coinvariants};

use crate::algebra::{letter, letter_gen, letter_is_adjoint, tensor_spec, AlgebraSpec, Element, Letter, Monomial};
use crate::error::{Error, Result};
use crate::phase::{Bindings, LinearForm, ParamSymbol, PhaseExponent};
use crate::quantumgroup::{u_index, HopfSpec};
use crate::report::CheckReport;

/// One summand `u_{row,col} ⊗ z_target` of `δ(z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Summand {
    pub row: usize,
    pub col: usize,
    pub target: usize,
}

/// A coaction given on generators; adjoints map to the leg-wise star.
#[derive(Clone, Debug)]
pub struct CoactionSpec {
    hopf: HopfSpec,
    target: AlgebraSpec,
    tensor: AlgebraSpec,
    map: Vec<Vec<Summand>>,
}

/// The torus-deformed sphere `S^{2n-1}` (or a product of such) on generators
/// `z1..z_{3k}` with the standard weights and one sphere relation per block of three.
pub fn build_spheres(name: &str, blocks: usize, deformation: Vec<Vec<LinearForm>>) -> Result<AlgebraSpec> {
    let n = 3 * blocks;
    let mut b = AlgebraSpec::builder(name, n).deformation(deformation);
    for j in 0..n {
        let mut w = vec![0; n];
        w[j] = 1;
        b = b.generator(&format!("z{}", j + 1), w);
    }
    for s in 0..blocks {
        let terms: Vec<String> = (1..=3).map(|k| format!("z{0}*z{0}^*", 3 * s + k)).collect();
        b = b.relation(&format!("{} - 1", terms.join(" + ")));
    }
    b.build()
}

/// A skew matrix with entry `(j, k)`, `j < k`, set to the parameter `{prefix}{j+1}{k+1}`.
pub fn generic_matrix(n: usize, prefix: &str) -> Vec<Vec<LinearForm>> {
    let mut d = vec![vec![LinearForm::zero(); n]; n];
    for j in 0..n {
        for k in j + 1..n {
            let f = LinearForm::param(format!("{prefix}{}{}", j + 1, k + 1).as_str());
            d[k][j] = -&f;
            d[j][k] = f;
        }
    }
    d
}

/// `δ(z_j) = Σ_k u_jk ⊗ z_k` on S⁵.
pub fn build_s5_coaction(hopf: &HopfSpec, theta_a: Vec<Vec<LinearForm>>) -> Result<CoactionSpec> {
    let target = build_spheres("S5", 1, theta_a)?;
    let map = (1..=3)
        .map(|j| (1..=3).map(|k| Summand { row: j, col: k, target: k - 1 }).collect())
        .collect();
    CoactionSpec::new(hopf.clone(), target, map)
}

/// The diagonal coaction on S⁵×S⁵: both `z_s` and `w_t = z_{t+3}` transform by rows of `u`.
pub fn build_s5xs5_coaction(hopf: &HopfSpec, theta6: Vec<Vec<LinearForm>>) -> Result<CoactionSpec> {
    let target = build_spheres("S5xS5", 2, theta6)?;
    let mut map = Vec::new();
    for block in 0..2 {
        for j in 1..=3 {
            map.push((1..=3).map(|k| Summand { row: j, col: k, target: 3 * block + k - 1 }).collect());
        }
    }
    CoactionSpec::new(hopf.clone(), target, map)
}

/// S⁵ with parameters `theta12, theta13, theta23`.
pub fn s5_generic(hopf: &HopfSpec) -> Result<CoactionSpec> {
    build_s5_coaction(hopf, generic_matrix(3, "theta"))
}

/// S⁵×S⁵ with parameters `tp_jk`.
pub fn s5xs5_generic(hopf: &HopfSpec) -> Result<CoactionSpec> {
    build_s5xs5_coaction(hopf, generic_matrix(6, "tp_"))
}

/// Outcome of the pairwise extension check for one ordered letter pair.
#[derive(Clone, Debug)]
pub struct PairCheck {
    pub left: Letter,
    pub right: Letter,
    pub passed: bool,
    /// Distinct nontrivial phases `χ_A(g,h)·χ_T(t₁,t₂)⁻¹` over the summand pairs.
    pub mismatches: Vec<PhaseExponent>,
}

impl CoactionSpec {
    fn new(hopf: HopfSpec, target: AlgebraSpec, map: Vec<Vec<Summand>>) -> Result<CoactionSpec> {
        if map.len() != target.generators().len() {
            return Err(Error::DimensionMismatch { expected: target.generators().len(), got: map.len() });
        }
        let tensor = tensor_spec(&format!("SU3⊗{}", target.name()), &[hopf.base(), &target])?;
        let c = CoactionSpec { hopf, target, tensor, map };
        c.check_equivariance()?;
        Ok(c)
    }

    pub fn hopf(&self) -> &HopfSpec {
        &self.hopf
    }

    pub fn target(&self) -> &AlgebraSpec {
        &self.target
    }

    /// `H ⊗ A` with deformation `J ⊕ Θ_A`.
    pub fn tensor(&self) -> &AlgebraSpec {
        &self.tensor
    }

    pub fn summands(&self, gen: usize) -> &[Summand] {
        &self.map[gen]
    }

    /// Every summand of `δ(z)` has left-torus weight fixed by `z`, and
    /// right-torus weight fixed by the target generator. Generator weights are
    /// unit vectors, so both assignments extend to linear maps.
    fn check_equivariance(&self) -> Result<()> {
        let hw = |s: &Summand| self.hopf.base().generators()[u_index(s.row, s.col)].weight.clone();
        let mut right_of: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for (g, summands) in self.map.iter().enumerate() {
            let mut left = None;
            for s in summands {
                if s.target >= self.target.generators().len() {
                    return Err(Error::UnknownGenerator(format!("z{}", s.target + 1)));
                }
                let w = hw(s);
                let (l, r) = w.split_at(2);
                if *left.get_or_insert_with(|| l.to_vec()) != l {
                    return Err(Error::Invalid(format!("δ({}) mixes left weights", self.target.generators()[g].name)));
                }
                let tw = self.target.generators()[s.target].weight.clone();
                match right_of.iter().find(|(t, _)| *t == tw) {
                    Some((_, r0)) if r0 != r => {
                        return Err(Error::Invalid(format!("δ({}) is not equivariant", self.target.generators()[g].name)))
                    }
                    Some(_) => {}
                    None => right_of.push((tw, r.to_vec())),
                }
            }
        }
        Ok(())
    }

    /// `δ` on a target letter, as an element of `H ⊗ A`.
    pub fn delta_letter(&self, l: Letter) -> Result<Element> {
        let g = letter_gen(l);
        let adj = letter_is_adjoint(l);
        let summands = self.map.get(g).ok_or_else(|| Error::UnknownGenerator(format!("#{g}")))?;
        let mut out = Element::zero();
        for s in summands {
            let u = Element::from_letter(letter(u_index(s.row, s.col), adj));
            let z = Element::from_letter(letter(s.target, adj));
            out.add_assign(&self.tensor.tensor(&[&u, &z])?);
        }
        Ok(out)
    }

    /// `δ` extended multiplicatively through the deformed products.
    pub fn apply(&self, a: &Element) -> Result<Element> {
        self.target.extend_letter_map(&self.tensor, a, &|l| self.delta_letter(l), false)
    }

    /// `δ` extended as the classical algebra map on the monomial basis.
    pub fn apply_linear(&self, a: &Element) -> Result<Element> {
        self.target.check_letters(a)?;
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let mut acc = Element::one();
            for l in m.letters() {
                acc = acc.classical_mul(&self.delta_letter(l)?);
            }
            out.add_assign(&acc.mul_coefficient(c));
        }
        Ok(out)
    }

    /// All parameters of both deformations.
    pub fn params(&self) -> BTreeSet<ParamSymbol> {
        let mut p = self.target.params();
        p.extend(self.hopf.base().params());
        p
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<CoactionSpec> {
        CoactionSpec::new(self.hopf.substitute(bindings)?, self.target.substitute(bindings)?, self.map.clone())
    }

    /// Both deformations set to zero.
    pub fn classical(&self) -> CoactionSpec {
        CoactionSpec::new(self.hopf.classical(), self.target.classical(), self.map.clone()).expect("classical coaction")
    }

    fn letter_pairs(&self) -> Vec<(Letter, Letter)> {
        let ls = self.target.letters();
        ls.iter().flat_map(|&g| ls.iter().map(move |&h| (g, h))).collect()
    }

    /// The phases `χ_A(g,h)·χ_T(t₁,t₂)⁻¹` over all summand pairs of `δ(g)`, `δ(h)`.
    fn pair_phases(&self, g: Letter, h: Letter) -> Result<Vec<PhaseExponent>> {
        let chi_a = self.target.bicharacter(&self.target.letter_weight(g), &self.target.letter_weight(h))?;
        let (dg, dh) = (self.delta_letter(g)?, self.delta_letter(h)?);
        let mut out = BTreeSet::new();
        for t1 in dg.monomials() {
            let w1 = self.tensor.weight(t1);
            for t2 in dh.monomials() {
                let chi_t = self.tensor.bicharacter(&w1, &self.tensor.weight(t2))?;
                let phi = chi_a.mul(&chi_t.conj());
                if !phi.is_generically_trivial() {
                    out.insert(phi);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Compares `δ(g ×_Θ h)` with `δ(g) ×_{J⊕Θ} δ(h)` after reduction.
    pub fn check_pair(&self, g: Letter, h: Letter) -> Result<PairCheck> {
        let gh = self.target.word(&[g, h])?;
        let lhs = self.apply_linear(&gh)?;
        let rhs = self.tensor.mul(&self.delta_letter(g)?, &self.delta_letter(h)?)?;
        let passed = self.tensor.reduce(&lhs.sub(&rhs))?.is_zero();
        let mismatches = if passed { Vec::new() } else { self.pair_phases(g, h)? };
        Ok(PairCheck { left: g, right: h, passed, mismatches })
    }

    pub fn pair_checks(&self) -> Result<Vec<PairCheck>> {
        let pairs = self.letter_pairs();
        let results: Vec<Result<PairCheck>> = std::thread::scope(|s| {
            let handles: Vec<_> = pairs.iter().map(|&(g, h)| s.spawn(move || self.check_pair(g, h))).collect();
            handles.into_iter().map(|t| t.join().expect("pair check panicked")).collect()
        });
        results.into_iter().collect()
    }

    /// The extension criterion on every ordered pair of generators and adjoints.
    pub fn check_homomorphism(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new(&format!("coaction on {}", self.target.name()));
        for pc in self.pair_checks()? {
            let name = format!("δ({} × {})", self.target.letter_name(pc.left), self.target.letter_name(pc.right));
            let detail = if pc.passed {
                "matches".to_string()
            } else {
                let ps: Vec<String> = pc.mismatches.iter().map(|p| p.to_string()).collect();
                format!(
                    "pair ({}, {}) phase mismatch: {}",
                    self.target.letter_name(pc.left),
                    self.target.letter_name(pc.right),
                    ps.join(", ")
                )
            };
            report.push(&name, pc.passed, detail);
        }
        Ok(report)
    }

    /// Column order for the constraint system: target parameters in descending
    /// name order, then the group parameters.
    pub fn constraint_columns(&self) -> Vec<ParamSymbol> {
        let mut cols: Vec<ParamSymbol> = self.target.params().into_iter().rev().collect();
        let group: Vec<ParamSymbol> = self.hopf.base().params().into_iter().filter(|p| !cols.contains(p)).collect();
        cols.extend(group);
        cols
    }

    /// The linear conditions under which every pair matches, parameters generic.
    pub fn extract_constraints(&self) -> Result<ConstraintSet> {
        let pairs = self.letter_pairs();
        let per_pair: Vec<Result<Vec<PhaseExponent>>> = std::thread::scope(|s| {
            let handles: Vec<_> = pairs.iter().map(|&(g, h)| s.spawn(move || self.pair_phases(g, h))).collect();
            handles.into_iter().map(|t| t.join().expect("constraint extraction panicked")).collect()
        });
        let mut forms = BTreeSet::new();
        for r in per_pair {
            for p in r? {
                forms.insert(p.form().clone());
            }
        }
        Ok(ConstraintSet::new(forms, &self.constraint_columns()))
    }

    /// Substitutes the constraints, and each single perturbation `pivot ↦ solution + eps`.
    pub fn check_constraint_soundness(&self, cs: &ConstraintSet) -> Result<CheckReport> {
        let mut report = CheckReport::new("constraint soundness");
        let solved = self.substitute(&cs.bindings())?.check_homomorphism()?;
        let n = solved.items.len();
        report.push_cases("all pairs match under the constraints", n, solved.failures().next().map(|f| f.detail.clone()));
        let eps = ParamSymbol::new("eps");
        for (pivot, _) in cs.bindings().iter() {
            let mut b = Bindings::new();
            for (p, f) in cs.bindings().iter() {
                let f = if p == pivot { f.add_scaled(&LinearForm::param(eps.clone()), &crate::Rat::one()) } else { f.clone() };
                b.insert(p.clone(), f);
            }
            let r = self.substitute(&b)?.check_homomorphism()?;
            let failing = r.failures().count();
            report.push(&format!("perturbing {pivot}"), failing > 0, format!("{failing} of {n} pairs fail"));
        }
        Ok(report)
    }

    fn join3(&self, cube: &AlgebraSpec, h1: &Monomial, h2: &Monomial, a: &Monomial) -> Monomial {
        cube.join_monomials(&[h1.clone(), h2.clone(), a.clone()])
    }

    /// Coassociativity `(Δ⊗id)δ = (id⊗δ)δ` and counit `(ε⊗id)δ = id` on all
    /// generators, adjoints and degree-2 monomials.
    pub fn check_coaction_axioms(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new(&format!("coaction axioms on {}", self.target.name()));
        let cube = tensor_spec("SU3⊗SU3⊗A", &[self.hopf.base(), self.hopf.base(), &self.target])?;
        let letters = self.target.letters();
        let mut tests: Vec<Monomial> = letters.iter().map(|&l| Monomial::from_letter(l)).collect();
        for (i, &a) in letters.iter().enumerate() {
            for &b in &letters[i..] {
                tests.push(Monomial::from_letters([a, b]));
            }
        }
        let (mut coassoc, mut counit) = (None, None);
        for m in &tests {
            let x = Element::from_monomial(m.clone());
            let d = self.apply(&x)?;
            let mut left = Element::zero();
            let mut right = Element::zero();
            let mut eps = Element::zero();
            for (t, c) in d.terms() {
                let parts = self.tensor.split_monomial(t);
                let (h, a) = (&parts[0], &parts[1]);
                for (n, e) in self.hopf.coproduct(&Element::from_monomial(h.clone()))?.terms() {
                    let hp = self.hopf.square().split_monomial(n);
                    left.add_term(self.join3(&cube, &hp[0], &hp[1], a), &c.mul(e));
                }
                for (n, e) in self.apply(&Element::from_monomial(a.clone()))?.terms() {
                    let ap = self.tensor.split_monomial(n);
                    right.add_term(self.join3(&cube, h, &ap[0], &ap[1]), &c.mul(e));
                }
                let k = self.hopf.counit(&Element::from_monomial(h.clone()));
                eps.add_term(a.clone(), &c.mul(&k));
            }
            if coassoc.is_none() && !cube.eq_reduced(&left, &right)? {
                coassoc = Some(format!("fails on {}", self.target.render_monomial(m)));
            }
            if counit.is_none() && !self.target.eq_reduced(&eps, &x)? {
                counit = Some(format!("fails on {}", self.target.render_monomial(m)));
            }
        }
        report.push_cases("(Δ⊗id)δ = (id⊗δ)δ", tests.len(), coassoc);
        report.push_cases("(ε⊗id)δ = id", tests.len(), counit);
        Ok(report)
    }

    /// Classical invariants up to `max_degree`, lifted and confirmed in the deformed tensor algebra.
    pub fn coinvariants(&self, max_degree: usize) -> Result<Coinvariants> {
        invariants::solve(self, max_degree)
    }

    /// Products of basis elements commute after reduction and reduce into the
    /// span of the coinvariants at the product degree.
    pub fn check_coinvariant_subalgebra(&self, basis: &Coinvariants) -> Result<CheckReport> {
        let mut report = CheckReport::new(&format!("coinvariant subalgebra of {}", self.target.name()));
        let elems = basis.basis();
        let top = elems.iter().map(|e| e.max_degree()).max().unwrap_or(0);
        let wide = self.coinvariants(2 * top)?;
        for (i, a) in elems.iter().enumerate() {
            for b in &elems[i..] {
                let ab = self.target.reduce(&self.target.mul(a, b)?)?;
                let ba = self.target.reduce(&self.target.mul(b, a)?)?;
                let name = format!("({}) × ({})", self.target.render(a), self.target.render(b));
                report.push(&format!("{name} commutes"), ab == ba, self.target.render(&ab.sub(&ba)));
                let closed = wide.contains(&ab);
                report.push(&format!("{name} is coinvariant"), closed, self.target.render(&ab));
            }
        }
        Ok(report)
    }

    /// `δ(x)` reduces to `1 ⊗ x`.
    pub fn is_coinvariant(&self, x: &Element) -> Result<bool> {
        let d = self.apply(x)?;
        let expected = self.tensor.embed(1, x)?;
        self.tensor.eq_reduced(&d, &expected)
    }
}

#[cfg(test)]
mod tests;
