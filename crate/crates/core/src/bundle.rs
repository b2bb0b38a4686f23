//! The quantum SU(3)-fibration over S⁵×S⁵: the coinvariant `w`, orthonormal
//! frames, the projections `p^(n,m)` and their rank.
//!
//! The normalizing symbol `Q` inverts `1 − ww*`. Frame vectors store their
//! entries without normalizer together with the squared normalizer, so that
//! square roots of `Q` or of binomials never appear.

use crate::algebra::{letter, monomials_up_to, AlgebraSpec, Element};
use crate::coaction::{s5xs5_generic, CoactionSpec};
use crate::error::{Error, Result};
use crate::phase::{Bindings, LinearForm, ParamSymbol, PhaseExponent};
use crate::quantumgroup::HopfSpec;
use crate::rational::{Gauss, Rat};
use crate::report::CheckReport;

/// A column vector `c·(e₁, …, e_k)ᵀ` with `c²` kept symbolically.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameVector {
    pub entries: Vec<Element>,
    pub norm_sq: Element,
}

/// A square matrix over the localized algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionMatrix {
    pub entries: Vec<Vec<Element>>,
}

impl ProjectionMatrix {
    pub fn identity(n: usize) -> ProjectionMatrix {
        let entries = (0..n).map(|i| (0..n).map(|j| Element::from_int(i64::from(i == j))).collect()).collect();
        ProjectionMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn render(&self, spec: &AlgebraSpec) -> Vec<Vec<String>> {
        self.entries.iter().map(|row| row.iter().map(|e| spec.render(e)).collect()).collect()
    }
}

/// How the second frame vector is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalizer {
    /// `N` with `N² = Q`: the pairing of `Z⃗₂` with itself is `Q(1 − ww*) = 1`.
    Corrected,
    /// `Q` itself on each vector, as displayed in the frames: pairing `Q²(1 − ww*) = Q`.
    PaperLiteral,
}

/// `Z⃗₁, Z⃗₂` and their conjugates `W⃗₁, W⃗₂`.
#[derive(Clone, Debug)]
pub struct Frames {
    pub z: [FrameVector; 2],
    pub w: [FrameVector; 2],
}

/// `w = z₁ × z₄* + z₂ × z₅* + z₃ × z₆*`.
pub fn build_w(spec: &AlgebraSpec) -> Result<Element> {
    let mut w = Element::zero();
    for j in 1..=3 {
        w.add_assign(&spec.parse_deformed_word(&format!("z{j}*z{}^", j + 3))?);
    }
    Ok(w)
}

/// `½(n+1)(m+1)(n+m+2)`.
pub fn irrep_dimension(n: u64, m: u64) -> u64 {
    (n + 1) * (m + 1) * (n + m + 2) / 2
}

/// The S⁵×S⁵ coaction with its constraints solved, `θ'₁₄` renamed `lambda1`.
pub fn constrained_s5xs5(hopf: &HopfSpec) -> Result<CoactionSpec> {
    let c = s5xs5_generic(hopf)?;
    let mut b = c.extract_constraints()?.bindings();
    b.insert("tp_14", LinearForm::param("lambda1"));
    c.substitute(&b)
}

/// The localized S⁵×S⁵ algebra with `w`, `w*` and the phase `λ = exp(−2πiλ₁)`.
#[derive(Clone, Debug)]
pub struct Bundle {
    algebra: AlgebraSpec,
    w: Element,
    w_star: Element,
    lambda: PhaseExponent,
}

impl Bundle {
    /// Builds from the constrained S⁵×S⁵ target and the form of `λ₁`.
    pub fn new(target: &AlgebraSpec, lambda1: LinearForm) -> Result<Bundle> {
        let w = build_w(target)?;
        let w_star = target.star(&w);
        let d = Element::one().sub(&target.reduce(&target.mul(&w, &w_star)?)?);
        let mut b = AlgebraSpec::builder(&format!("{}[Q]", target.name()), target.torus_rank())
            .deformation(target.deformation().to_vec());
        for g in target.generators() {
            b = b.generator(&g.name, g.weight.clone());
        }
        for r in target.relations() {
            b = b.relation_element(r.clone());
        }
        let algebra = b.central_symbol_element("Q", d).build()?;
        Ok(Bundle { algebra, w, w_star, lambda: PhaseExponent::new(lambda1.scale_int(-2)) })
    }

    pub fn from_hopf(hopf: &HopfSpec) -> Result<Bundle> {
        Bundle::new(constrained_s5xs5(hopf)?.target(), LinearForm::param("lambda1"))
    }

    /// The undeformed bundle: every parameter zero.
    pub fn classical(hopf: &HopfSpec) -> Result<Bundle> {
        let c = constrained_s5xs5(hopf)?;
        let zero = Bindings::zero_all(&[ParamSymbol::new("lambda1"), hopf.theta().clone()]);
        Bundle::new(&c.target().substitute(&zero)?, LinearForm::zero())
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn w(&self) -> &Element {
        &self.w
    }

    pub fn w_star(&self) -> &Element {
        &self.w_star
    }

    /// `λ = exp(−2πiλ₁)`.
    pub fn lambda(&self) -> &PhaseExponent {
        &self.lambda
    }

    /// The central symbol `Q = (1 − ww*)⁻¹`.
    pub fn q(&self) -> Element {
        Element::from_letter(letter(self.algebra.generators().len() - 1, false))
    }

    fn z(&self, j: usize) -> Element {
        Element::from_letter(letter(j - 1, false))
    }

    fn zs(&self, j: usize) -> Element {
        Element::from_letter(letter(j - 1, true))
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.algebra.mul(a, b)
    }

    fn equal(&self, a: &Element, b: &Element) -> Result<bool> {
        self.algebra.eq_mod_ideal(a, b)
    }

    /// The phase `φ` with `z₁*z₄ + z₂*z₅ + z₃*z₆ = φ·w*`, if it is `λ` or `λ̄`.
    pub fn pairing_phase(&self) -> Result<Option<PhaseExponent>> {
        let mut lhs = Element::zero();
        for j in 1..=3 {
            lhs.add_assign(&self.mul(&self.zs(j), &self.z(j + 3))?);
        }
        for phi in [self.lambda.clone(), self.lambda.conj()] {
            if self.equal(&lhs, &self.w_star.mul_phase(&phi))? {
                return Ok(Some(phi));
            }
        }
        Ok(None)
    }

    /// `z_j w = λ w z_j`, `z_j w* = λ̄ w* z_j` for all six `j`, centrality of
    /// `ww*` to degree 5, and whether `w` itself is central.
    pub fn check_w_relations(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new("w relations");
        let lam = self.lambda.clone();
        for j in 1..=6 {
            let z = self.z(j);
            let lhs = self.mul(&z, &self.w)?;
            let rhs = self.mul(&self.w, &z)?.mul_phase(&lam);
            report.push(&format!("z{j} w = {} w z{j}", lam.compact()), self.equal(&lhs, &rhs)?, self.algebra.render(&lhs));
            let lhs = self.mul(&z, &self.w_star)?;
            let rhs = self.mul(&self.w_star, &z)?.mul_phase(&lam.conj());
            report.push(
                &format!("z{j} w^* = {} w^* z{j}", lam.conj().compact()),
                self.equal(&lhs, &rhs)?,
                self.algebra.render(&lhs),
            );
        }
        let ww = self.algebra.reduce(&self.mul(&self.w, &self.w_star)?)?;
        let wsw = self.algebra.reduce(&self.mul(&self.w_star, &self.w)?)?;
        report.push("w w^* = w^* w", ww == wsw, self.algebra.render(&ww.sub(&wsw)));
        let mons = monomials_up_to(&self.algebra.letters(), 5);
        let mut failure = None;
        for m in &mons {
            let x = Element::from_monomial(m.clone());
            let diff = self.mul(&x, &ww)?.sub(&self.mul(&ww, &x)?);
            if !diff.is_zero() && !self.algebra.reduce(&diff)?.is_zero() {
                failure = Some(format!("fails against {}", self.algebra.render_monomial(m)));
                break;
            }
        }
        report.push_cases("w w^* central to degree 5", mons.len(), failure);
        let q = self.q();
        let q_central = self.algebra.letters().iter().all(|&l| {
            let x = Element::from_letter(l);
            matches!((self.mul(&x, &q), self.mul(&q, &x)), (Ok(a), Ok(b)) if a == b)
        });
        report.push("Q central", q_central, "Q commutes with every letter");
        let w_central = self.algebra.letters().iter().all(|&l| {
            let x = Element::from_letter(l);
            matches!((self.mul(&x, &self.w), self.mul(&self.w, &x)), (Ok(a), Ok(b)) if self.equal(&a, &b).unwrap_or(false))
        });
        if lam.is_generically_trivial() {
            report.push("w central", w_central, "the classical w commutes with every generator");
        } else {
            report.push(
                "w not central",
                !w_central,
                if w_central { "w commutes with every generator" } else { "z1 w differs from w z1 unless lambda1 is an integer" },
            );
        }
        match self.pairing_phase()? {
            Some(phi) => report.note(format!("z1^*z4 + z2^*z5 + z3^*z6 = {} w^*", phi.compact())),
            None => report.note("z1^*z4 + z2^*z5 + z3^*z6 is not a phase multiple of w^*"),
        }
        Ok(report)
    }

    /// `Z⃗₁ = (z₁,z₂,z₃)ᵀ`, `Z⃗₂ = (z₄ − λz₁w*, …)ᵀ·N` and the conjugates.
    pub fn fundamental_frames(&self, normalizer: Normalizer) -> Result<Frames> {
        let norm_sq = match normalizer {
            Normalizer::Corrected => self.q(),
            Normalizer::PaperLiteral => self.mul(&self.q(), &self.q())?,
        };
        let mut z2 = Vec::new();
        for j in 1..=3 {
            let t = self.mul(&self.z(j), &self.w_star)?.mul_phase(&self.lambda);
            z2.push(self.z(j + 3).sub(&t));
        }
        let z1: Vec<Element> = (1..=3).map(|j| self.z(j)).collect();
        let conj = |v: &[Element]| v.iter().map(|e| self.algebra.star(e)).collect::<Vec<_>>();
        let one = Element::one();
        Ok(Frames {
            w: [
                FrameVector { entries: conj(&z1), norm_sq: one.clone() },
                FrameVector { entries: conj(&z2), norm_sq: norm_sq.clone() },
            ],
            z: [FrameVector { entries: z1, norm_sq: one }, FrameVector { entries: z2, norm_sq }],
        })
    }

    /// `U*·V` without normalizers: `Σ_i U_i* × V_i`.
    fn raw_pairing(&self, u: &FrameVector, v: &FrameVector) -> Result<Element> {
        let mut out = Element::zero();
        for (a, b) in u.entries.iter().zip(&v.entries) {
            out.add_assign(&self.mul(&self.algebra.star(a), b)?);
        }
        Ok(out)
    }

    /// `U_j*·U_k = δ_jk` in the localized quotient.
    pub fn check_gram(&self, frames: &[FrameVector]) -> Result<CheckReport> {
        let mut report = CheckReport::new("Gram");
        for (j, u) in frames.iter().enumerate() {
            for (k, v) in frames.iter().enumerate().skip(j) {
                let raw = self.raw_pairing(u, v)?;
                let ok = if j == k {
                    self.equal(&self.mul(&raw, &u.norm_sq)?, &Element::one())?
                } else {
                    self.algebra.eq_mod_ideal(&raw, &Element::zero())?
                };
                let shown = if j == k { self.mul(&raw, &u.norm_sq)? } else { raw };
                let shown = self.algebra.reduce(&shown)?;
                report.push(&format!("U{}* U{}", j + 1, k + 1), ok, self.algebra.render(&shown));
            }
        }
        Ok(report)
    }

    /// `Σ_U U·U*` without checking orthonormality.
    pub fn projection_unchecked(&self, frames: &[FrameVector]) -> Result<ProjectionMatrix> {
        let n = frames.first().map_or(0, |f| f.entries.len());
        let rows: Vec<Result<Vec<Element>>> = std::thread::scope(|s| {
            let hs: Vec<_> = (0..n)
                .map(|a| {
                    s.spawn(move || {
                        (0..n)
                            .map(|b| {
                                let mut e = Element::zero();
                                for f in frames {
                                    let t = self.mul(&f.entries[a], &self.algebra.star(&f.entries[b]))?;
                                    e.add_assign(&self.mul(&t, &f.norm_sq)?);
                                }
                                self.algebra.reduce(&e)
                            })
                            .collect()
                    })
                })
                .collect();
            hs.into_iter().map(|h| h.join().expect("projection entry panicked")).collect()
        });
        Ok(ProjectionMatrix { entries: rows.into_iter().collect::<Result<_>>()? })
    }

    /// `Σ_U U·U*` for frames passing the Gram check.
    pub fn build_projection(&self, frames: &[FrameVector]) -> Result<ProjectionMatrix> {
        let gram = self.check_gram(frames)?;
        if let Some(f) = gram.failures().next() {
            return Err(Error::GramCheckFailed(format!("{}: {}", f.name, f.detail)));
        }
        self.projection_unchecked(frames)
    }

    /// `p^(1,0)` from `Z⃗₁, Z⃗₂`.
    pub fn p10(&self, normalizer: Normalizer) -> Result<ProjectionMatrix> {
        let f = self.fundamental_frames(normalizer)?;
        match normalizer {
            Normalizer::Corrected => self.build_projection(&f.z),
            Normalizer::PaperLiteral => self.projection_unchecked(&f.z),
        }
    }

    /// `p^(0,1)` from `W⃗₁, W⃗₂`.
    pub fn p01(&self, normalizer: Normalizer) -> Result<ProjectionMatrix> {
        let f = self.fundamental_frames(normalizer)?;
        match normalizer {
            Normalizer::Corrected => self.build_projection(&f.w),
            Normalizer::PaperLiteral => self.projection_unchecked(&f.w),
        }
    }

    /// `p² = p` and `p* = p` in the localized quotient.
    pub fn check_projection(&self, p: &ProjectionMatrix) -> Result<CheckReport> {
        let mut report = CheckReport::new("projection");
        let n = p.size();
        let results: Vec<Result<(Option<String>, Option<String>, u16)>> = std::thread::scope(|s| {
            let hs: Vec<_> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| {
                    s.spawn(move || {
                        let mut sq = Element::zero();
                        for c in 0..n {
                            sq.add_assign(&self.mul(&p.entries[a][c], &p.entries[c][b])?);
                        }
                        let cleared = self.algebra.clear_denominators(&sq.sub(&p.entries[a][b]))?;
                        let k = cleared.exponents.iter().copied().max().unwrap_or(0);
                        let idem = (!cleared.element.is_zero()).then(|| format!("entry ({}, {})", a + 1, b + 1));
                        let adj = self.algebra.star(&p.entries[b][a]);
                        let sa = (!self.equal(&adj, &p.entries[a][b])?).then(|| format!("entry ({}, {})", a + 1, b + 1));
                        Ok((idem, sa, k))
                    })
                })
                .collect();
            hs.into_iter().map(|h| h.join().expect("projection check panicked")).collect()
        });
        let (mut idem, mut sa, mut k) = (None, None, 0);
        for r in results {
            let (i, s, kk) = r?;
            idem = idem.or(i);
            sa = sa.or(s);
            k = k.max(kk);
        }
        report.push_cases("p^2 = p", n * n, idem);
        report.push_cases("p^* = p", n * n, sa);
        report.note(format!("clearing exponent K = {k}"));
        Ok(report)
    }

    /// `tr p` in the localized quotient; a scalar when one exists.
    pub fn chern0(&self, p: &ProjectionMatrix) -> Result<Element> {
        let tr = Element::sum(&(0..p.size()).map(|i| p.entries[i][i].clone()).collect::<Vec<_>>());
        Ok(match self.algebra.localized_scalar(&tr)? {
            Some(s) => Element::scalar(s),
            None => self.algebra.reduce(&tr)?,
        })
    }

    /// The vectors `U_{p,s}`, `p = 1..n+1`, `s = 1..m+1`: averaged symmetric
    /// powers with `n−p+1` copies of `Z⃗₁`, `p−1` of `Z⃗₂`, and likewise `W⃗`,
    /// with `c²_{p,s} = C(n,p−1)·C(m,s−1)`.
    pub fn build_sym_frame(&self, n: usize, m: usize) -> Result<Vec<FrameVector>> {
        let f = self.fundamental_frames(Normalizer::Corrected)?;
        let mut out = Vec::new();
        for p in 1..=n + 1 {
            let (zs, zc) = self.sym_power(&f.z, n, p - 1)?;
            for s in 1..=m + 1 {
                let (ws, wc) = self.sym_power(&f.w, m, s - 1)?;
                let mut entries = Vec::with_capacity(zs.len() * ws.len());
                for a in &zs {
                    for b in &ws {
                        entries.push(self.mul(a, b)?);
                    }
                }
                let c2 = Rat::binomial(n as u64, (p - 1) as u64) * Rat::binomial(m as u64, (s - 1) as u64);
                let norm_sq = self.mul(&zc, &wc)?.scale(&Gauss::real(c2));
                out.push(FrameVector { entries, norm_sq });
            }
        }
        Ok(out)
    }

    /// `Sym(X₁^{⊗(k−b)} ⊗ X₂^{⊗b})` averaged over placements, with the
    /// product of the squared normalizers.
    fn sym_power(&self, x: &[FrameVector; 2], k: usize, b: usize) -> Result<(Vec<Element>, Element)> {
        let dim = x[0].entries.len();
        let placements: Vec<Vec<usize>> = (0..1usize << k).filter(|s| s.count_ones() as usize == b).map(|s| {
            (0..k).map(|i| (s >> i) & 1).collect()
        }).collect();
        let weight = Gauss::real(Rat::binomial(k as u64, b as u64).recip());
        let mut entries = Vec::new();
        for idx in 0..dim.pow(k as u32) {
            let digits: Vec<usize> = (0..k).map(|i| idx / dim.pow((k - 1 - i) as u32) % dim).collect();
            let mut e = Element::zero();
            for pl in &placements {
                let mut t = Element::one();
                for (pos, &which) in pl.iter().enumerate() {
                    t = self.mul(&t, &x[which].entries[digits[pos]])?;
                }
                e.add_assign(&t);
            }
            entries.push(e.scale(&weight));
        }
        let mut norm = Element::one();
        for _ in 0..b {
            norm = self.mul(&norm, &x[1].norm_sq)?;
        }
        Ok((entries, norm))
    }

    /// `p^(n,m) = Σ U_{p,s} U_{p,s}*`.
    pub fn p_nm(&self, n: usize, m: usize) -> Result<ProjectionMatrix> {
        self.projection_unchecked(&self.build_sym_frame(n, m)?)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::OnceLock;

    use super::*;
    use crate::quantumgroup::build_su3_theta;

    fn bundle() -> &'static Bundle {
        static B: OnceLock<Bundle> = OnceLock::new();
        B.get_or_init(|| Bundle::from_hopf(&build_su3_theta("theta").unwrap()).unwrap())
    }

    #[test]
    fn dimensions() {
        assert_eq!(irrep_dimension(1, 0), 3);
        assert_eq!(irrep_dimension(0, 0), 1);
        assert_eq!(irrep_dimension(1, 1), 8);
        assert_eq!(irrep_dimension(2, 0), 6);
    }

    #[test]
    fn w_relations() {
        let r = bundle().check_w_relations().unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.notes, vec!["z1^*z4 + z2^*z5 + z3^*z6 = exp(-2*pi*i*lambda1) w^*"]);
    }

    #[test]
    fn classical_w_is_hermitian_pairing() {
        let b = Bundle::classical(&build_su3_theta("theta").unwrap()).unwrap();
        let a = b.algebra();
        assert_eq!(b.w(), &a.parse("z1*z4^* + z2*z5^* + z3*z6^*").unwrap());
    }

    #[test]
    fn frames_are_orthonormal() {
        let b = bundle();
        let f = b.fundamental_frames(Normalizer::Corrected).unwrap();
        assert!(b.check_gram(&f.z).unwrap().passed());
        assert!(b.check_gram(&f.w).unwrap().passed());
        let lit = b.fundamental_frames(Normalizer::PaperLiteral).unwrap();
        let r = b.check_gram(&lit.z).unwrap();
        assert!(!r.item("U2* U2").unwrap().passed);
        assert!(r.item("U1* U2").unwrap().passed);
        assert!(matches!(b.build_projection(&lit.z), Err(Error::GramCheckFailed(_))));
    }

    #[test]
    fn p10_entry_and_trace() {
        let b = bundle();
        let p = b.p10(Normalizer::Corrected).unwrap();
        assert_eq!(b.chern0(&p).unwrap(), Element::from_int(2));
        assert_eq!(b.chern0(&ProjectionMatrix::identity(3)).unwrap(), Element::from_int(3));
    }

    #[test]
    fn identity_is_a_projection() {
        let r = bundle().check_projection(&ProjectionMatrix::identity(3)).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn sym_frame_recovers_p10() {
        let b = bundle();
        assert_eq!(b.p_nm(1, 0).unwrap(), b.p10(Normalizer::Corrected).unwrap());
        assert_eq!(b.p_nm(0, 1).unwrap(), b.p01(Normalizer::Corrected).unwrap());
    }

    #[test]
    fn p10_and_p01_are_projections() {
        let b = bundle();
        for p in [b.p10(Normalizer::Corrected).unwrap(), b.p01(Normalizer::Corrected).unwrap()] {
            let r = b.check_projection(&p).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(b.chern0(&p).unwrap(), Element::from_int(2));
        }
    }

    #[test]
    fn paper_literal_projection_fails() {
        let b = bundle();
        let p = b.p10(Normalizer::PaperLiteral).unwrap();
        let r = b.check_projection(&p).unwrap();
        assert!(!r.item("p^2 = p").unwrap().passed);
        assert!(r.item("p^* = p").unwrap().passed);
    }

    #[test]
    fn sym_frames_are_orthonormal() {
        let b = bundle();
        let frames = b.build_sym_frame(1, 1).unwrap();
        assert_eq!(frames.len(), 4);
        let g = b.check_gram(&frames).unwrap();
        assert!(g.passed(), "{g}");
        let p = b.p_nm(1, 1).unwrap();
        assert_eq!(b.chern0(&p).unwrap(), Element::from_int(4));
    }

    #[test]
    #[ignore = "several minutes in debug builds"]
    fn sym_frames_give_projections() {
        let b = bundle();
        for (n, m) in [(1, 1), (2, 0)] {
            let p = b.p_nm(n, m).unwrap();
            let r = b.check_projection(&p).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(b.chern0(&p).unwrap(), Element::from_int(((n + 1) * (m + 1)) as i64));
        }
    }
}
