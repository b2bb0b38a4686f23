use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use smallvec::SmallVec;

use super::element::Element;
use super::monomial::{letter, letter_gen, letter_is_adjoint, Letter, Monomial};
use super::notation::{parse_element, render_element, render_monomial, Names, RESERVED};
use super::rewrite::{groebner, Poly, RewriteSystem, Rule};
use crate::error::{Error, Result};
use crate::phase::{Bindings, LinearForm, ParamSymbol, PhaseExponent};
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub weight: Vec<i64>,
    /// Commutes with its own adjoint.
    pub normal: bool,
    /// A self-adjoint localization symbol whose denominator commutes with every letter.
    pub central: bool,
}

/// A central generator `s` standing for the inverse of `denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSymbol {
    pub generator: usize,
    pub denominator: Element,
}

/// A block of generators and torus coordinates inside a tensor product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub name: String,
    pub gen_offset: usize,
    pub gen_count: usize,
    pub weight_offset: usize,
    pub weight_len: usize,
}

type WeightKey = SmallVec<[i64; 12]>;

#[derive(Debug, Default)]
struct Bichar {
    constant: Vec<(usize, usize, Rat)>,
    params: Vec<(ParamSymbol, Vec<(usize, usize, Rat)>)>,
    cache: Mutex<HashMap<(WeightKey, WeightKey), PhaseExponent>>,
}

impl Bichar {
    fn new(deformation: &[Vec<LinearForm>]) -> Bichar {
        let mut constant = Vec::new();
        let mut by_param: std::collections::BTreeMap<ParamSymbol, Vec<(usize, usize, Rat)>> = Default::default();
        for (j, row) in deformation.iter().enumerate() {
            for (k, f) in row.iter().enumerate().skip(j + 1) {
                if !f.constant_part().is_zero() {
                    constant.push((j, k, f.constant_part().clone()));
                }
                for (p, c) in f.terms() {
                    by_param.entry(p.clone()).or_default().push((j, k, c.clone()));
                }
            }
        }
        Bichar { constant, params: by_param.into_iter().collect(), cache: Mutex::new(HashMap::new()) }
    }

    fn eval(&self, n: &[i64], m: &[i64]) -> PhaseExponent {
        let key = (WeightKey::from_slice(n), WeightKey::from_slice(m));
        if let Some(p) = self.cache.lock().unwrap().get(&key) {
            return p.clone();
        }
        let pair = |j: usize, k: usize| n[j] * m[k] - n[k] * m[j];
        let sum = |entries: &[(usize, usize, Rat)]| {
            let mut s = Rat::zero();
            for (j, k, c) in entries {
                let w = pair(*j, *k);
                if w != 0 {
                    s += &(c * &Rat::from_int(w));
                }
            }
            s
        };
        let form = LinearForm::from_terms(
            sum(&self.constant),
            self.params.iter().map(|(p, entries)| (p.clone(), sum(entries))),
        );
        let phase = PhaseExponent::new(form);
        self.cache.lock().unwrap().insert(key, phase.clone());
        phase
    }
}

/// A θ-deformed toric *-algebra: generators with torus weights, a skew
/// deformation matrix of linear forms, homogeneous relations and central
/// localization symbols.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    name: String,
    torus_rank: usize,
    generators: Vec<GeneratorSpec>,
    deformation: Vec<Vec<LinearForm>>,
    relations: Vec<Element>,
    central: Vec<CentralSymbol>,
    legs: Vec<Leg>,
    rewrite: RewriteSystem,
    bichar: Arc<Bichar>,
    index: Arc<HashMap<String, usize>>,
}

impl AlgebraSpec {
    pub fn builder(name: &str, torus_rank: usize) -> AlgebraBuilder {
        AlgebraBuilder::new(name, torus_rank)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn deformation(&self) -> &[Vec<LinearForm>] {
        &self.deformation
    }

    /// The relations as declared, each meaning `r = 0`.
    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn central_symbols(&self) -> &[CentralSymbol] {
        &self.central
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.rewrite
    }

    pub fn rules(&self) -> &[Rule] {
        self.rewrite.rules()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn letter(&self, name: &str, adjoint: bool) -> Result<Letter> {
        let g = self.generator_index(name).ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        Ok(letter(g, adjoint && !self.generators[g].central))
    }

    /// The generator `name` as an element.
    pub fn gen(&self, name: &str) -> Result<Element> {
        Ok(Element::from_letter(self.letter(name, false)?))
    }

    /// The adjoint of generator `name`.
    pub fn gen_adj(&self, name: &str) -> Result<Element> {
        Ok(Element::from_letter(self.letter(name, true)?))
    }

    pub fn letter_name(&self, l: Letter) -> String {
        render_monomial(&Monomial::from_letter(l), &self.generators)
    }

    /// All generator and adjoint letters, central symbols excluded.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for (g, spec) in self.generators.iter().enumerate() {
            if !spec.central {
                out.push(letter(g, false));
                out.push(letter(g, true));
            }
        }
        out
    }

    pub fn letter_weight(&self, l: Letter) -> Vec<i64> {
        let w = &self.generators[letter_gen(l)].weight;
        if letter_is_adjoint(l) {
            w.iter().map(|x| -x).collect()
        } else {
            w.clone()
        }
    }

    pub fn weight(&self, m: &Monomial) -> Vec<i64> {
        let mut out = vec![0i64; self.torus_rank];
        for &(l, e) in m.pairs() {
            let w = &self.generators[letter_gen(l)].weight;
            let s = if letter_is_adjoint(l) { -(e as i64) } else { e as i64 };
            for (o, x) in out.iter_mut().zip(w) {
                *o += s * x;
            }
        }
        out
    }

    /// The common weight of all monomials, if there is one.
    pub fn homogeneous_weight(&self, e: &Element) -> Option<Vec<i64>> {
        let mut ws = e.monomials().map(|m| self.weight(m));
        let first = ws.next().unwrap_or_else(|| vec![0; self.torus_rank]);
        ws.all(|w| w == first).then_some(first)
    }

    /// `exp(πi·nᵀΘm)`.
    pub fn bicharacter(&self, n: &[i64], m: &[i64]) -> Result<PhaseExponent> {
        for v in [n, m] {
            if v.len() != self.torus_rank {
                return Err(Error::DimensionMismatch { expected: self.torus_rank, got: v.len() });
            }
        }
        Ok(self.bichar.eval(n, m))
    }

    /// The phase `φ` with `g × h = φ · h × g`.
    pub fn commutation_phase(&self, g: Letter, h: Letter) -> PhaseExponent {
        self.bichar.eval(&self.letter_weight(g), &self.letter_weight(h)).pow(2)
    }

    pub fn check_letters(&self, e: &Element) -> Result<()> {
        match e.max_letter() {
            Some(l) if letter_gen(l) >= self.generators.len() => Err(Error::SpecMismatch(self.name.clone())),
            _ => Ok(()),
        }
    }

    /// The deformed product: `m × n = χ(wt m, wt n)·mn` on monomials.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_letters(a)?;
        self.check_letters(b)?;
        let wb: Vec<(Vec<i64>, &Monomial, _)> = b.terms().map(|(m, c)| (self.weight(m), m, c)).collect();
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let wm = self.weight(m);
            for (wn, n, d) in &wb {
                let phase = self.bichar.eval(&wm, wn);
                out.add_term(m.mul(n), &c.mul(d).mul_phase(&phase));
            }
        }
        Ok(out)
    }

    /// Left-to-right deformed product of all factors.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        let mut acc = Element::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Deformed product of single letters in the given order.
    pub fn word(&self, letters: &[Letter]) -> Result<Element> {
        let els: Vec<Element> = letters.iter().map(|&l| Element::from_letter(l)).collect();
        self.product(&els)
    }

    /// The phase `φ` with `l₁ × l₂ × … × l_k = φ·m`, letters taken in ascending order.
    pub fn ordering_phase(&self, m: &Monomial) -> PhaseExponent {
        let mut prefix = vec![0i64; self.torus_rank];
        let mut phase = PhaseExponent::one();
        for l in m.letters() {
            let w = self.letter_weight(l);
            phase = phase.mul(&self.bichar.eval(&prefix, &w));
            for (p, x) in prefix.iter_mut().zip(&w) {
                *p += x;
            }
        }
        phase
    }

    /// Extends a letter map to an algebra map (`reverse = false`) or an
    /// anti-algebra map (`reverse = true`) from this algebra into `target`.
    pub fn extend_letter_map(
        &self,
        target: &AlgebraSpec,
        a: &Element,
        image: &dyn Fn(Letter) -> Result<Element>,
        reverse: bool,
    ) -> Result<Element> {
        let mut out = Element::zero();
        let mut memo: HashMap<Letter, Element> = HashMap::new();
        for (m, c) in a.terms() {
            let mut letters: Vec<Letter> = m.letters().collect();
            if reverse {
                letters.reverse();
            }
            let mut acc = Element::one();
            for l in letters {
                if !memo.contains_key(&l) {
                    memo.insert(l, image(l)?);
                }
                acc = target.mul(&acc, &memo[&l])?;
            }
            let coeff = c.mul_phase(&self.ordering_phase(m).conj());
            out.add_assign(&acc.mul_coefficient(&coeff));
        }
        Ok(out)
    }

    pub fn star_letter(&self, l: Letter) -> Letter {
        if self.generators[letter_gen(l)].central {
            l
        } else {
            l ^ 1
        }
    }

    /// Pointwise conjugation: letters swap with adjoints, coefficients conjugate.
    pub fn star(&self, a: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            out.add_term(m.map_letters(|l| self.star_letter(l)), &c.conj());
        }
        out
    }

    pub fn reduce(&self, a: &Element) -> Result<Element> {
        self.rewrite.reduce(a)
    }

    /// `a` and `b` agree modulo the relations (no localization).
    pub fn eq_reduced(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.reduce(&a.sub(b))?.is_zero())
    }

    pub fn params(&self) -> BTreeSet<ParamSymbol> {
        self.deformation.iter().flatten().flat_map(|f| f.params().cloned()).collect()
    }

    /// The same algebra with a different deformation matrix.
    pub fn with_deformation(&self, deformation: Vec<Vec<LinearForm>>) -> Result<AlgebraSpec> {
        check_skew(&deformation, self.torus_rank)?;
        let mut out = self.clone();
        out.bichar = Arc::new(Bichar::new(&deformation));
        out.deformation = deformation;
        Ok(out)
    }

    /// Rewrites the deformation parameters through `bindings`.
    pub fn substitute(&self, bindings: &Bindings) -> Result<AlgebraSpec> {
        bindings.resolved()?;
        let mut d = Vec::with_capacity(self.torus_rank);
        for row in &self.deformation {
            d.push(row.iter().map(|f| f.substitute(bindings)).collect::<Result<Vec<_>>>()?);
        }
        self.with_deformation(d)
    }

    /// Every parameter of the deformation set to zero.
    pub fn classical(&self) -> AlgebraSpec {
        let zero = vec![vec![LinearForm::zero(); self.torus_rank]; self.torus_rank];
        self.with_deformation(zero).expect("zero matrix is skew")
    }

    pub fn render(&self, e: &Element) -> String {
        render_element(e, &self.generators)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        render_monomial(m, &self.generators)
    }

    /// Parses the canonical element text; juxtaposed letters multiply classically.
    pub fn parse(&self, src: &str) -> Result<Element> {
        parse_element(src, &Names { gens: &self.generators, index: &self.index })
    }

    /// Parses each letter sequence as a deformed product, e.g. `z1*z4^*` as `z1 × z4*`.
    pub fn parse_deformed_word(&self, src: &str) -> Result<Element> {
        let mut letters = Vec::new();
        for part in src.split('*').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, adj) = match part.strip_suffix('^') {
                Some(n) => (n, true),
                None => (part, false),
            };
            letters.push(self.letter(name, adj)?);
        }
        self.word(&letters)
    }

    pub(crate) fn from_parts(
        name: String,
        torus_rank: usize,
        generators: Vec<GeneratorSpec>,
        deformation: Vec<Vec<LinearForm>>,
        relations: Vec<Element>,
        central: Vec<CentralSymbol>,
        legs: Vec<Leg>,
        rewrite: RewriteSystem,
    ) -> AlgebraSpec {
        let index = generators.iter().enumerate().map(|(i, g)| (g.name.clone(), i)).collect();
        AlgebraSpec {
            name,
            torus_rank,
            bichar: Arc::new(Bichar::new(&deformation)),
            generators,
            deformation,
            relations,
            central,
            legs,
            rewrite,
            index: Arc::new(index),
        }
    }
}

pub(crate) fn check_skew(d: &[Vec<LinearForm>], rank: usize) -> Result<()> {
    if d.len() != rank {
        return Err(Error::DimensionMismatch { expected: rank, got: d.len() });
    }
    for (j, row) in d.iter().enumerate() {
        if row.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, got: row.len() });
        }
        for (k, f) in row.iter().enumerate() {
            if *f != -&d[k][j] {
                return Err(Error::NotSkew(j, k));
            }
        }
    }
    Ok(())
}

pub(crate) fn to_poly(e: &Element) -> Option<Poly> {
    let mut p = Poly::new();
    for (m, c) in e.terms() {
        p.insert(m.clone(), c.as_scalar()?);
    }
    Some(p)
}

enum Source {
    Text(String),
    Elem(Element),
}

/// Incremental construction of an [`AlgebraSpec`]; validation happens in
/// [`AlgebraBuilder::build`].
pub struct AlgebraBuilder {
    name: String,
    torus_rank: usize,
    generators: Vec<GeneratorSpec>,
    deformation: Option<Vec<Vec<LinearForm>>>,
    entries: Vec<(usize, usize, LinearForm)>,
    relations: Vec<Source>,
    rules: Vec<(Source, Source)>,
    central: Vec<(usize, Source)>,
    completed: bool,
}

impl AlgebraBuilder {
    pub fn new(name: &str, torus_rank: usize) -> AlgebraBuilder {
        AlgebraBuilder {
            name: name.into(),
            torus_rank,
            generators: Vec::new(),
            deformation: None,
            entries: Vec::new(),
            relations: Vec::new(),
            rules: Vec::new(),
            central: Vec::new(),
            completed: false,
        }
    }

    pub fn generator(mut self, name: &str, weight: Vec<i64>) -> Self {
        self.generators.push(GeneratorSpec { name: name.into(), weight, normal: true, central: false });
        self
    }

    /// Sets `Θ[j][k] = form` and `Θ[k][j] = -form`.
    pub fn deform(mut self, j: usize, k: usize, form: LinearForm) -> Self {
        self.entries.push((j, k, form));
        self
    }

    pub fn deformation(mut self, matrix: Vec<Vec<LinearForm>>) -> Self {
        self.deformation = Some(matrix);
        self
    }

    /// A relation `text = 0`, written in the canonical element text.
    pub fn relation(mut self, text: &str) -> Self {
        self.relations.push(Source::Text(text.into()));
        self
    }

    pub fn relation_element(mut self, e: Element) -> Self {
        self.relations.push(Source::Elem(e));
        self
    }

    /// An oriented rule `lhs → rhs`; `lhs` must be the leading monomial.
    pub fn rule(mut self, lhs: &str, rhs: &str) -> Self {
        self.rules.push((Source::Text(lhs.into()), Source::Text(rhs.into())));
        self
    }

    /// A central symbol `name` inverting `denominator`.
    pub fn central_symbol(mut self, name: &str, denominator: &str) -> Self {
        self.central.push((self.generators.len(), Source::Text(denominator.into())));
        self.generators.push(GeneratorSpec {
            name: name.into(),
            weight: vec![0; self.torus_rank],
            normal: true,
            central: true,
        });
        self
    }

    pub fn central_symbol_element(mut self, name: &str, denominator: Element) -> Self {
        self.central.push((self.generators.len(), Source::Elem(denominator)));
        self.generators.push(GeneratorSpec {
            name: name.into(),
            weight: vec![0; self.torus_rank],
            normal: true,
            central: true,
        });
        self
    }

    /// Declares that the relations already form a Gröbner basis.
    pub fn completed(mut self) -> Self {
        self.completed = true;
        self
    }

    pub fn build(self) -> Result<AlgebraSpec> {
        let mut index = HashMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if RESERVED.contains(&g.name.as_str()) || g.name.is_empty() {
                return Err(Error::Invalid(format!("reserved generator name `{}`", g.name)));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate generator `{}`", g.name)));
            }
            if g.weight.len() != self.torus_rank {
                return Err(Error::DimensionMismatch { expected: self.torus_rank, got: g.weight.len() });
            }
        }
        let rank = self.torus_rank;
        let mut deformation = self.deformation.unwrap_or_else(|| vec![vec![LinearForm::zero(); rank]; rank]);
        check_skew(&deformation, rank)?;
        for (j, k, f) in self.entries {
            if j >= rank || k >= rank {
                return Err(Error::DimensionMismatch { expected: rank, got: j.max(k) + 1 });
            }
            if j == k && !f.is_zero() {
                return Err(Error::NotSkew(j, k));
            }
            deformation[k][j] = -&f;
            deformation[j][k] = f;
        }

        let names = Names { gens: &self.generators, index: &index };
        let resolve = |s: Source| -> Result<Element> {
            match s {
                Source::Text(t) => parse_element(&t, &names),
                Source::Elem(e) => Ok(e),
            }
        };
        let weight_of = |m: &Monomial| -> Vec<i64> {
            let mut out = vec![0i64; rank];
            for &(l, e) in m.pairs() {
                let g = &self.generators[letter_gen(l)];
                let s = if letter_is_adjoint(l) { -(e as i64) } else { e as i64 };
                for (o, x) in out.iter_mut().zip(&g.weight) {
                    *o += s * x;
                }
            }
            out
        };
        let check = |e: &Element| -> Result<Poly> {
            if let Some(l) = e.max_letter() {
                if letter_gen(l) >= self.generators.len() {
                    return Err(Error::SpecMismatch(self.name.clone()));
                }
            }
            let text = render_element(e, &self.generators);
            let p = to_poly(e).ok_or_else(|| Error::NonScalarRelation(text.clone()))?;
            let mut ws = p.keys().map(weight_of);
            if let Some(w0) = ws.next() {
                if ws.any(|w| w != w0) {
                    return Err(Error::InhomogeneousRelation(text));
                }
            }
            Ok(p)
        };

        let mut relations = Vec::new();
        let mut polys = Vec::new();
        for s in self.relations {
            let e = resolve(s)?;
            polys.push(check(&e)?);
            relations.push(e);
        }
        for (lhs, rhs) in self.rules {
            let l = resolve(lhs)?;
            let r = resolve(rhs)?;
            let e = l.sub(&r);
            let p = check(&e)?;
            let lead_ok = l.len() == 1 && p.keys().next_back() == l.monomials().next();
            if !lead_ok {
                return Err(Error::NonTerminating(format!(
                    "{} -> {}",
                    render_element(&l, &self.generators),
                    render_element(&r, &self.generators)
                )));
            }
            polys.push(p);
            relations.push(e);
        }
        let mut central = Vec::new();
        for (g, s) in self.central {
            central.push(CentralSymbol { generator: g, denominator: resolve(s)? });
        }
        let rules = if self.completed {
            polys.iter().filter_map(Rule::from_poly).collect()
        } else {
            groebner(&polys)
        };
        let rewrite = RewriteSystem::from_rules(rules);
        let spec = AlgebraSpec::from_parts(
            self.name,
            rank,
            self.generators,
            deformation,
            relations,
            central,
            Vec::new(),
            rewrite,
        );
        // A denominator must commute with every letter for its inverse to be central.
        for sym in spec.central_symbols() {
            for l in spec.letters() {
                let x = Element::from_letter(l);
                let d = &sym.denominator;
                if !spec.eq_reduced(&spec.mul(&x, d)?, &spec.mul(d, &x)?)? {
                    return Err(Error::Invalid(format!(
                        "denominator of `{}` does not commute with {}",
                        spec.generators[sym.generator].name,
                        spec.letter_name(l)
                    )));
                }
            }
        }
        Ok(spec)
    }
}
