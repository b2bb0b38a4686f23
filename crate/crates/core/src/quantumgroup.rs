//! The compact quantum group SU(3)_θ: deformation `J = θ ⊕ (−θ)` on the
//! two-torus `T² × T²` acting by left and right translations, undeformed
//! coalgebra maps, and the Haar state on balanced degree (1,1).

use std::fmt;

use crate::algebra::{
    letter, letter_gen, letter_is_adjoint, monomials_up_to, tensor_spec, AlgebraSpec, Coefficient, Element, Letter,
    Monomial,
};
use crate::error::{Error, Result};
use crate::phase::{Bindings, LinearForm, ParamSymbol, PhaseExponent};
use crate::rational::{Gauss, Rat};
use crate::report::CheckReport;

/// Left torus weights by row.
const ROW: [[i64; 2]; 3] = [[-1, 0], [0, -1], [1, 1]];
/// Right torus weights by column.
const COL: [[i64; 2]; 3] = [[1, 0], [0, 1], [-1, -1]];

/// Generator index of `u_ij`, 1-based indices.
pub fn u_index(i: usize, j: usize) -> usize {
    3 * (i - 1) + (j - 1)
}

/// `(i, j)` of generator index `g`.
pub fn u_position(g: usize) -> (usize, usize) {
    (g / 3 + 1, g % 3 + 1)
}

/// A Hopf *-algebra presented on generators `u_ij` with tensor square and
/// triple tensor specs for the coalgebra checks.
#[derive(Clone, Debug)]
pub struct HopfSpec {
    base: AlgebraSpec,
    square: AlgebraSpec,
    cube: AlgebraSpec,
    theta: ParamSymbol,
}

/// The SU(3)_θ presentation with deformation parameter `theta`.
pub fn build_su3_theta(theta: &str) -> Result<HopfSpec> {
    let t = LinearForm::param(theta);
    let mut b = AlgebraSpec::builder("SU3", 4);
    for i in 1..=3 {
        for j in 1..=3 {
            let (a, c) = (ROW[i - 1], COL[j - 1]);
            b = b.generator(&format!("u{i}{j}"), vec![a[0], a[1], c[0], c[1]]);
        }
    }
    // θ = [[0, -t], [t, 0]] on the left torus, its negative on the right.
    b = b.deform(0, 1, -&t).deform(2, 3, t.clone());
    for j in 1..=3 {
        for l in 1..=3 {
            let delta = if j == l { " - 1" } else { "" };
            let rows: Vec<String> = (1..=3).map(|k| format!("u{j}{k}*u{l}{k}^*")).collect();
            b = b.relation(&format!("{}{delta}", rows.join(" + ")));
            let cols: Vec<String> = (1..=3).map(|k| format!("u{k}{j}^**u{k}{l}")).collect();
            b = b.relation(&format!("{}{delta}", cols.join(" + ")));
        }
    }
    HopfSpec::new(b.build()?, ParamSymbol::new(theta))
}

impl HopfSpec {
    fn new(base: AlgebraSpec, theta: ParamSymbol) -> Result<HopfSpec> {
        let square = tensor_spec("SU3⊗SU3", &[&base, &base])?;
        let cube = tensor_spec("SU3⊗SU3⊗SU3", &[&base, &base, &base])?;
        Ok(HopfSpec { base, square, cube, theta })
    }

    pub fn base(&self) -> &AlgebraSpec {
        &self.base
    }

    /// The tensor square with deformation `J ⊕ J`.
    pub fn square(&self) -> &AlgebraSpec {
        &self.square
    }

    pub fn cube(&self) -> &AlgebraSpec {
        &self.cube
    }

    pub fn theta(&self) -> &ParamSymbol {
        &self.theta
    }

    pub fn u(&self, i: usize, j: usize) -> Letter {
        letter(u_index(i, j), false)
    }

    pub fn u_adj(&self, i: usize, j: usize) -> Letter {
        letter(u_index(i, j), true)
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<HopfSpec> {
        HopfSpec::new(self.base.substitute(bindings)?, self.theta.clone())
    }

    /// The same presentation with `θ = 0`.
    pub fn classical(&self) -> HopfSpec {
        HopfSpec::new(self.base.classical(), self.theta.clone()).expect("classical spec")
    }

    /// `Δ` on a generator or adjoint: `Σ_k u_ik ⊗ u_kj`, leg-wise starred.
    pub fn coproduct_letter(&self, l: Letter) -> Result<Element> {
        let (i, j) = u_position(letter_gen(l));
        let adj = letter_is_adjoint(l);
        let mut out = Element::zero();
        for k in 1..=3 {
            let a = Element::from_letter(letter(u_index(i, k), adj));
            let b = Element::from_letter(letter(u_index(k, j), adj));
            out.add_assign(&self.square.tensor(&[&a, &b])?);
        }
        Ok(out)
    }

    /// `Δ` extended multiplicatively through the deformed products.
    pub fn coproduct(&self, a: &Element) -> Result<Element> {
        self.base.extend_letter_map(&self.square, a, &|l| self.coproduct_letter(l), false)
    }

    /// `Δ` extended as the classical (undeformed) algebra map on monomials.
    pub fn coproduct_linear(&self, a: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let mut acc = Element::one();
            for l in m.letters() {
                acc = acc.classical_mul(&self.coproduct_letter(l)?);
            }
            out.add_assign(&acc.mul_coefficient(c));
        }
        Ok(out)
    }

    pub fn counit_letter(&self, l: Letter) -> Gauss {
        let (i, j) = u_position(letter_gen(l));
        if i == j {
            Gauss::one()
        } else {
            Gauss::zero()
        }
    }

    /// `ε` extended multiplicatively; only diagonal monomials survive.
    pub fn counit(&self, a: &Element) -> Coefficient {
        let mut out = Coefficient::zero();
        for (m, c) in a.terms() {
            if m.letters().all(|l| !self.counit_letter(l).is_zero()) {
                out = out.add(&c.mul_phase(&self.base.ordering_phase(m).conj()));
            }
        }
        out
    }

    pub fn antipode_letter(&self, l: Letter) -> Letter {
        let (i, j) = u_position(letter_gen(l));
        letter(u_index(j, i), !letter_is_adjoint(l))
    }

    /// `S(u_ij) = u_ji*`, extended anti-multiplicatively.
    pub fn antipode(&self, a: &Element) -> Result<Element> {
        self.base.extend_letter_map(&self.base, a, &|l| Ok(Element::from_letter(self.antipode_letter(l))), true)
    }

    /// Haar state on monomials with at most one `u` and one `u*` factor.
    pub fn haar(&self, a: &Element) -> Result<Coefficient> {
        let mut out = Coefficient::zero();
        for (m, c) in a.terms() {
            let plain: Vec<Letter> = m.letters().filter(|&l| !letter_is_adjoint(l)).collect();
            let adj: Vec<Letter> = m.letters().filter(|&l| letter_is_adjoint(l)).collect();
            if plain.len() > 1 || adj.len() > 1 {
                return Err(Error::DegreeOutOfRange(format!(
                    "Haar state needs degree at most (1,1), got {}",
                    self.base.render_monomial(m)
                )));
            }
            let value = match (plain.first(), adj.first()) {
                (None, None) => Rat::one(),
                (Some(&p), Some(&q)) if letter_gen(p) == letter_gen(q) => Rat::new(1, 3),
                _ => Rat::zero(),
            };
            out = out.add(&c.scale(&Gauss::real(value)));
        }
        Ok(out)
    }

    /// Applies `f` to leg `k` of every term of a square element and places the
    /// result (an element of the square) into the cube next to the other leg.
    fn expand_leg(&self, e: &Element, k: usize, f: &dyn Fn(&Element) -> Result<Element>) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            let parts = self.square.split_monomial(m);
            let image = f(&Element::from_monomial(parts[k].clone()))?;
            for (n, d) in image.terms() {
                let ip = self.square.split_monomial(n);
                let pieces = if k == 0 {
                    [ip[0].clone(), ip[1].clone(), parts[1].clone()]
                } else {
                    [parts[0].clone(), ip[0].clone(), ip[1].clone()]
                };
                out.add_term(self.cube.join_monomials(&pieces), &c.mul(d));
            }
        }
        Ok(out)
    }

    /// Monomials in `u` and `u*` up to the given degree.
    pub fn test_monomials(&self, max_degree: usize) -> Vec<Monomial> {
        monomials_up_to(&self.base.letters(), max_degree)
    }

    /// `(Δ⊗id)Δ = (id⊗Δ)Δ` and `(ε⊗id)Δ = id = (id⊗ε)Δ` on all monomials up to `max_degree`.
    pub fn check_coalgebra(&self, max_degree: usize) -> Result<CheckReport> {
        let mut report = CheckReport::new("coalgebra axioms");
        let mons = self.test_monomials(max_degree);
        let (mut coassoc_fail, mut counit_fail) = (None, None);
        for m in &mons {
            let a = Element::from_monomial(m.clone());
            let d = self.coproduct(&a)?;
            if coassoc_fail.is_none() {
                let left = self.expand_leg(&d, 0, &|x| self.coproduct(x))?;
                let right = self.expand_leg(&d, 1, &|x| self.coproduct(x))?;
                if !self.cube.eq_reduced(&left, &right)? {
                    coassoc_fail = Some(format!("coassociativity fails on {}", self.base.render_monomial(m)));
                }
            }
            if counit_fail.is_none() {
                let (left, right) = self.counit_legs(&d);
                if !self.base.eq_reduced(&left, &a)? || !self.base.eq_reduced(&right, &a)? {
                    counit_fail = Some(format!("counit axiom fails on {}", self.base.render_monomial(m)));
                }
            }
        }
        report.push_cases("coassociativity", mons.len(), coassoc_fail);
        report.push_cases("counit", mons.len(), counit_fail);
        Ok(report)
    }

    /// `((ε⊗id)x, (id⊗ε)x)` for a square element.
    pub fn counit_legs(&self, x: &Element) -> (Element, Element) {
        let (mut left, mut right) = (Element::zero(), Element::zero());
        for (m, c) in x.terms() {
            let parts = self.square.split_monomial(m);
            let e0 = self.counit(&Element::from_monomial(parts[0].clone()));
            let e1 = self.counit(&Element::from_monomial(parts[1].clone()));
            left.add_term(parts[1].clone(), &c.mul(&e0));
            right.add_term(parts[0].clone(), &c.mul(&e1));
        }
        (left, right)
    }

    /// `Σ_k S(u_ik) × u_kj = δ_ij = Σ_k u_ik × S(u_kj)` for all nine `(i, j)`.
    pub fn check_antipode(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new("antipode");
        let (mut left_fail, mut right_fail) = (None, None);
        for i in 1..=3 {
            for j in 1..=3 {
                let (mut left, mut right) = (Element::zero(), Element::zero());
                for k in 1..=3 {
                    let uik = Element::from_letter(self.u(i, k));
                    let ukj = Element::from_letter(self.u(k, j));
                    left.add_assign(&self.base.mul(&self.antipode(&uik)?, &ukj)?);
                    right.add_assign(&self.base.mul(&uik, &self.antipode(&ukj)?)?);
                }
                let delta = if i == j { Element::one() } else { Element::zero() };
                if left_fail.is_none() && !self.base.eq_reduced(&left, &delta)? {
                    left_fail = Some(format!("Σ_k S(u{i}k) uk{j} = {}", self.base.render(&self.base.reduce(&left)?)));
                }
                if right_fail.is_none() && !self.base.eq_reduced(&right, &delta)? {
                    right_fail = Some(format!("Σ_k u{i}k S(uk{j}) = {}", self.base.render(&self.base.reduce(&right)?)));
                }
            }
        }
        report.push_cases("sum_k S(u_ik) u_kj = delta_ij", 9, left_fail);
        report.push_cases("sum_k u_ik S(u_kj) = delta_ij", 9, right_fail);
        Ok(report)
    }

    /// `Δ(g × h) = Δ(g) × Δ(h)` for all ordered letter pairs, products taken in `square`.
    pub fn check_homomorphism_into(&self, square: &AlgebraSpec) -> Result<CheckReport> {
        let mut report = CheckReport::new("coproduct is an algebra map");
        let letters = self.base.letters();
        let mut fail = None;
        let mut count = 0;
        for &g in &letters {
            for &h in &letters {
                count += 1;
                let (eg, eh) = (Element::from_letter(g), Element::from_letter(h));
                let lhs = self.coproduct_linear(&self.base.mul(&eg, &eh)?)?;
                let rhs = square.mul(&self.coproduct_linear(&eg)?, &self.coproduct_linear(&eh)?)?;
                if fail.is_none() && !square.eq_reduced(&lhs, &rhs)? {
                    fail = Some(format!("pair ({}, {})", self.base.letter_name(g), self.base.letter_name(h)));
                }
            }
        }
        report.push_cases("Delta(g h) = Delta(g) Delta(h)", count, fail);
        Ok(report)
    }

    /// The square with the classical product: the negative control.
    pub fn untwisted_square(&self) -> AlgebraSpec {
        self.square.classical()
    }

    /// Balanced monomials `u_ij u_kl*` together with `1`.
    pub fn balanced_monomials(&self) -> Vec<Element> {
        let mut out = vec![Element::one()];
        for i in 1..=3 {
            for j in 1..=3 {
                for k in 1..=3 {
                    for l in 1..=3 {
                        out.push(Element::from_monomial(Monomial::from_letters([self.u(i, j), self.u_adj(k, l)])));
                    }
                }
            }
        }
        out
    }

    /// `(id⊗μ)Δ = μ(·)1 = (μ⊗id)Δ` and `μ∘S = μ` on balanced degree (1,1).
    pub fn check_unimodularity(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new("Haar state");
        let mons = self.balanced_monomials();
        let (mut right_fail, mut left_fail, mut s_fail) = (None, None, None);
        for a in &mons {
            let mu = self.haar(a)?;
            let expected = Element::term(Monomial::one(), mu.clone());
            let d = self.coproduct(a)?;
            let (mut id_mu, mut mu_id) = (Element::zero(), Element::zero());
            for (m, c) in d.terms() {
                let parts = self.square.split_monomial(m);
                let h1 = self.haar(&Element::from_monomial(parts[1].clone()))?;
                let h0 = self.haar(&Element::from_monomial(parts[0].clone()))?;
                id_mu.add_term(parts[0].clone(), &c.mul(&h1));
                mu_id.add_term(parts[1].clone(), &c.mul(&h0));
            }
            let name = || self.base.render(a);
            if right_fail.is_none() && !self.base.eq_reduced(&id_mu, &expected)? {
                right_fail = Some(format!("(id⊗μ)Δ({}) = {}", name(), self.base.render(&self.base.reduce(&id_mu)?)));
            }
            if left_fail.is_none() && !self.base.eq_reduced(&mu_id, &expected)? {
                left_fail = Some(format!("(μ⊗id)Δ({}) = {}", name(), self.base.render(&self.base.reduce(&mu_id)?)));
            }
            if s_fail.is_none() && self.haar(&self.antipode(a)?)? != mu {
                s_fail = Some(format!("μ(S({})) ≠ μ({})", name(), name()));
            }
        }
        report.push_cases("(id⊗μ)Δ = μ(·)1", mons.len(), right_fail);
        report.push_cases("(μ⊗id)Δ = μ(·)1", mons.len(), left_fail);
        report.push_cases("μ∘S = μ", mons.len(), s_fail);
        Ok(report)
    }

    /// The commutation phase of every unordered pair of generators.
    pub fn derive_relation_table(&self) -> Vec<RelationEntry> {
        let mut out = Vec::new();
        for a in 0..9 {
            for b in a + 1..9 {
                let (la, lb) = (letter(a, false), letter(b, false));
                let phase = self.base.commutation_phase(la, lb);
                let negative = phase.form().coeff(&self.theta).is_negative();
                out.push(if negative {
                    RelationEntry { left: u_position(b), right: u_position(a), phase: phase.conj() }
                } else {
                    RelationEntry { left: u_position(a), right: u_position(b), phase }
                });
            }
        }
        out
    }

    /// The full report for the Hopf structure.
    pub fn check_all(&self, max_degree: usize) -> Result<CheckReport> {
        let mut report = CheckReport::new("hopf");
        report.extend(self.check_coalgebra(max_degree)?);
        report.extend(self.check_antipode()?);
        report.extend(self.check_homomorphism_into(&self.square)?);
        let mut deformed_unitarity = CheckReport::new("deformed unitarity");
        let mut fail = None;
        for j in 1..=3 {
            for l in 1..=3 {
                let (mut rows, mut cols) = (Element::zero(), Element::zero());
                for k in 1..=3 {
                    let (ujk, ulk) = (Element::from_letter(self.u(j, k)), Element::from_letter(self.u_adj(l, k)));
                    rows.add_assign(&self.base.mul(&ujk, &ulk)?);
                    let (ukj, ukl) = (Element::from_letter(self.u_adj(k, j)), Element::from_letter(self.u(k, l)));
                    cols.add_assign(&self.base.mul(&ukj, &ukl)?);
                }
                let delta = if j == l { Element::one() } else { Element::zero() };
                if fail.is_none() && (!self.base.eq_reduced(&rows, &delta)? || !self.base.eq_reduced(&cols, &delta)?) {
                    fail = Some(format!("row/column ({j},{l})"));
                }
            }
        }
        deformed_unitarity.push_cases("sum_k u_jk u_lk* = delta_jl and columns", 9, fail);
        report.extend(deformed_unitarity);
        Ok(report)
    }
}

/// `u_left u_right = phase · u_right u_left`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationEntry {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub phase: PhaseExponent,
}

impl RelationEntry {
    /// The phase for the pair in index order `(ij) < (kl)`.
    pub fn ordered_phase(&self) -> PhaseExponent {
        if self.left < self.right {
            self.phase.clone()
        } else {
            self.phase.conj()
        }
    }

    pub fn key(&self) -> ((usize, usize), (usize, usize)) {
        (self.left.min(self.right), self.left.max(self.right))
    }

    /// Parses `u11*u12 = exp(2*pi*i*theta) u12*u11` or `u11*u22 = u22*u11`.
    pub fn parse(line: &str) -> Result<RelationEntry> {
        let bad = || Error::Parse(format!("bad relation line `{line}`"));
        let (lhs, rhs) = line.split_once('=').ok_or_else(bad)?;
        let pair = |s: &str| -> Result<((usize, usize), (usize, usize))> {
            let (a, b) = s.trim().split_once('*').ok_or_else(bad)?;
            Ok((parse_u(a).ok_or_else(bad)?, parse_u(b).ok_or_else(bad)?))
        };
        let (left, right) = pair(lhs)?;
        let rhs = rhs.trim();
        let (phase, tail) = match rhs.rfind(' ') {
            Some(pos) => (rhs[..pos].trim().parse::<PhaseExponent>()?, &rhs[pos + 1..]),
            None => (PhaseExponent::one(), rhs),
        };
        if pair(tail)? != (right, left) {
            return Err(bad());
        }
        Ok(RelationEntry { left, right, phase })
    }
}

fn parse_u(s: &str) -> Option<(usize, usize)> {
    let d = s.trim().strip_prefix('u')?.as_bytes();
    if d.len() != 2 {
        return None;
    }
    let (i, j) = ((d[0] as char).to_digit(10)? as usize, (d[1] as char).to_digit(10)? as usize);
    ((1..=3).contains(&i) && (1..=3).contains(&j)).then_some((i, j))
}

impl fmt::Display for RelationEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.left, self.right);
        if self.phase.is_generically_trivial() {
            write!(f, "u{}{}*u{}{} = u{}{}*u{}{}", a.0, a.1, b.0, b.1, b.0, b.1, a.0, a.1)
        } else {
            write!(f, "u{}{}*u{}{} = {} u{}{}*u{}{}", a.0, a.1, b.0, b.1, self.phase.compact(), b.0, b.1, a.0, a.1)
        }
    }
}
