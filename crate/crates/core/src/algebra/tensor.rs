use super::element::Element;
use super::monomial::{letter_gen, Letter, Monomial};
use super::rewrite::{RewriteSystem, Rule};
use super::spec::{check_skew, AlgebraSpec, CentralSymbol, GeneratorSpec, Leg};
use crate::error::{Error, Result};
use crate::phase::LinearForm;

fn shift_letter(l: Letter, gen_offset: usize) -> Letter {
    l + 2 * gen_offset as Letter
}

/// The tensor product of `legs` with block-diagonal deformation.
///
/// Generators are renamed `name@k` with `k` counted from 1. The legs use
/// disjoint variables, so the union of their Gröbner bases is one again.
pub fn tensor_spec(name: &str, legs: &[&AlgebraSpec]) -> Result<AlgebraSpec> {
    let rank: usize = legs.iter().map(|s| s.torus_rank()).sum();
    let mut deformation = vec![vec![LinearForm::zero(); rank]; rank];
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    let mut central = Vec::new();
    let mut rules = Vec::new();
    let mut layout = Vec::new();
    let (mut gen_offset, mut weight_offset) = (0usize, 0usize);
    for (k, leg) in legs.iter().enumerate() {
        let r = leg.torus_rank();
        for (j, row) in leg.deformation().iter().enumerate() {
            for (i, f) in row.iter().enumerate() {
                deformation[weight_offset + j][weight_offset + i] = f.clone();
            }
        }
        for g in leg.generators() {
            let mut weight = vec![0; rank];
            weight[weight_offset..weight_offset + r].copy_from_slice(&g.weight);
            generators.push(GeneratorSpec { name: format!("{}@{}", g.name, k + 1), weight, ..g.clone() });
        }
        let shift = |e: &Element| e.map_monomials(|m| m.map_letters(|l| shift_letter(l, gen_offset)));
        relations.extend(leg.relations().iter().map(shift));
        for c in leg.central_symbols() {
            central.push(CentralSymbol { generator: c.generator + gen_offset, denominator: shift(&c.denominator) });
        }
        for rule in leg.rules() {
            rules.push(Rule {
                lhs: rule.lhs.map_letters(|l| shift_letter(l, gen_offset)),
                rhs: rule.rhs.iter().map(|(m, c)| (m.map_letters(|l| shift_letter(l, gen_offset)), c.clone())).collect(),
            });
        }
        layout.push(Leg {
            name: leg.name().to_string(),
            gen_offset,
            gen_count: leg.generators().len(),
            weight_offset,
            weight_len: r,
        });
        gen_offset += leg.generators().len();
        weight_offset += r;
    }
    check_skew(&deformation, rank)?;
    rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
    Ok(AlgebraSpec::from_parts(
        name.to_string(),
        rank,
        generators,
        deformation,
        relations,
        central,
        layout,
        RewriteSystem::from_rules(rules),
    ))
}

impl AlgebraSpec {
    fn leg(&self, k: usize) -> Result<&Leg> {
        self.legs().get(k).ok_or_else(|| Error::Invalid(format!("`{}` has no leg {k}", self.name())))
    }

    /// Which leg a letter belongs to.
    pub fn leg_of(&self, l: Letter) -> Option<usize> {
        let g = letter_gen(l);
        self.legs().iter().position(|leg| g >= leg.gen_offset && g < leg.gen_offset + leg.gen_count)
    }

    /// Places a leg element at position `k`.
    pub fn embed(&self, k: usize, e: &Element) -> Result<Element> {
        let leg = self.leg(k)?;
        if let Some(l) = e.max_letter() {
            if letter_gen(l) >= leg.gen_count {
                return Err(Error::SpecMismatch(leg.name.clone()));
            }
        }
        let off = leg.gen_offset;
        Ok(e.map_monomials(|m| m.map_letters(|l| shift_letter(l, off))))
    }

    /// `a₁ ⊗ a₂ ⊗ …` for one element per leg.
    pub fn tensor(&self, parts: &[&Element]) -> Result<Element> {
        if parts.len() != self.legs().len() {
            return Err(Error::DimensionMismatch { expected: self.legs().len(), got: parts.len() });
        }
        let mut acc = Element::one();
        for (k, p) in parts.iter().enumerate() {
            acc = acc.classical_mul(&self.embed(k, p)?);
        }
        Ok(acc)
    }

    /// Splits a monomial into per-leg monomials in leg-local letters.
    pub fn split_monomial(&self, m: &Monomial) -> Vec<Monomial> {
        self.legs()
            .iter()
            .map(|leg| {
                let (lo, hi) = (leg.gen_offset, leg.gen_offset + leg.gen_count);
                m.filter(|l| (lo..hi).contains(&letter_gen(l)))
                    .map_letters(|l| l - 2 * lo as Letter)
            })
            .collect()
    }

    pub fn join_monomials(&self, parts: &[Monomial]) -> Monomial {
        let mut out = Monomial::one();
        for (leg, m) in self.legs().iter().zip(parts) {
            out = out.mul(&m.map_letters(|l| shift_letter(l, leg.gen_offset)));
        }
        out
    }
}
