use crate::error::{internal, Result};
use crate::gralg::{Algebra, Monomial, Poly, Weight};
use serde::Serialize;
use std::collections::BTreeSet;

/// The quotients of the free algebra on `δ(a)`, `φ(a)`, `q(a)`, `u` that are
/// modelled.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// `ℓ(A)`.
    Ell,
    /// `ℓ(A)/I_δ(A)`.
    EllTilde,
    /// `ℓ(A)/uℓ(A)`.
    ScriptL,
    /// `ℓ(A)/(I_δ(A) + uℓ(A))`, isomorphic to `Ω*`.
    OmegaTilde,
    /// The `ℓ(A)`-module on `γ(a)` and `vⁱ`.
    EllPlus,
    /// Generators `φ`, `q` and a Laurent variable `u`.
    EllPer,
}

impl Flavor {
    pub fn has_delta(self) -> bool {
        matches!(self, Flavor::Ell | Flavor::ScriptL | Flavor::EllPlus)
    }

    pub fn has_u(self) -> bool {
        !matches!(self, Flavor::ScriptL | Flavor::OmegaTilde)
    }

    pub fn is_laurent(self) -> bool {
        self == Flavor::EllPer
    }

    pub fn is_module(self) -> bool {
        self == Flavor::EllPlus
    }

    /// The flavor of the coefficients: `ℓ` for the module, itself otherwise.
    pub fn ring(self) -> Flavor {
        if self == Flavor::EllPlus {
            Flavor::Ell
        } else {
            self
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Ell => "ell",
            Flavor::EllTilde => "ell_tilde",
            Flavor::ScriptL => "script_l",
            Flavor::OmegaTilde => "omega_tilde",
            Flavor::EllPlus => "ell_plus",
            Flavor::EllPer => "ell_per",
        }
    }
}

/// A free generator of the module `ℓ⁺(A)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ModuleGen {
    Gamma(Monomial),
    V(u32),
}

/// `uʲ φ(a₁)⋯ q(b₁)⋯ δ(c₁)⋯ [γ(m) | vⁱ]` with all arguments standard
/// monomials different from 1, each of the three argument lists strictly
/// increasing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct EllMonomial {
    pub u: i32,
    pub phi: Vec<Monomial>,
    pub q: Vec<Monomial>,
    pub delta: Vec<Monomial>,
    pub module: Option<ModuleGen>,
}

impl EllMonomial {
    pub fn one() -> Self {
        EllMonomial {
            u: 0,
            phi: Vec::new(),
            q: Vec::new(),
            delta: Vec::new(),
            module: None,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == EllMonomial::one()
    }

    /// Homological degree: `‖δ‖ = ‖q‖ = 1`, `‖u‖ = -2`, `‖vⁱ‖ = 2i`.
    pub fn homological(&self) -> i64 {
        let v = match self.module {
            Some(ModuleGen::V(i)) => 2 * i as i64,
            _ => 0,
        };
        (self.q.len() + self.delta.len()) as i64 - 2 * self.u as i64 + v
    }

    /// Weight: `δ(a) ↦ |a|`, `φ(a), q(a) ↦ 2|a|`, `γ(a) ↦ |a|`.
    pub fn weight(&self, alg: &Algebra) -> Weight {
        let mut w = alg.zero_weight();
        for m in self.phi.iter().chain(&self.q) {
            w = w.add(&alg.weight(m).scale(2));
        }
        for m in &self.delta {
            w = w.add(&alg.weight(m));
        }
        if let Some(ModuleGen::Gamma(m)) = &self.module {
            w = w.add(&alg.weight(m));
        }
        w
    }

    /// The part without the module generator.
    pub fn coefficient(&self) -> EllMonomial {
        EllMonomial {
            module: None,
            ..self.clone()
        }
    }

    pub fn format(&self, alg: &Algebra) -> String {
        let mut parts = Vec::new();
        match self.u {
            0 => {}
            1 => parts.push("u".to_string()),
            j => parts.push(format!("u^{j}")),
        }
        for (name, list) in [("φ", &self.phi), ("q", &self.q), ("δ", &self.delta)] {
            for m in list {
                parts.push(format!("{name}({})", alg.format_monomial(m)));
            }
        }
        match &self.module {
            Some(ModuleGen::Gamma(m)) => parts.push(format!("γ({})", alg.format_monomial(m))),
            Some(ModuleGen::V(i)) => parts.push(format!("v^{i}")),
            None => {}
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// An F₂-combination of normal monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct EllElement {
    terms: BTreeSet<EllMonomial>,
}

impl EllElement {
    pub fn zero() -> Self {
        EllElement::default()
    }

    pub fn from_monomial(m: EllMonomial) -> Self {
        let mut e = EllElement::zero();
        e.terms.insert(m);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &EllMonomial> {
        self.terms.iter()
    }

    pub fn toggle(&mut self, m: EllMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &EllElement) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    pub fn add(&self, other: &EllElement) -> EllElement {
        let mut e = self.clone();
        e.add_assign(other);
        e
    }

    /// `(homological, weight)` of the first term.
    pub fn bidegree(&self, alg: &Algebra) -> Option<(i64, Weight)> {
        self.terms.iter().next().map(|m| (m.homological(), m.weight(alg)))
    }

    pub fn format(&self, alg: &Algebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|m| m.format(alg))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

enum Atom<'m> {
    Phi(&'m Monomial),
    Q(&'m Monomial),
    Delta(&'m Monomial),
}

/// Arithmetic in one flavor. Products are brought to normal form by the
/// rewrites `δ(a)² = q(a)² = 0`, `φ(a)² = φ(a²)`, `uδ(a) = 0`, `φ(1) = 1`,
/// `δ(1) = q(1) = 0`, the substitutions defining the flavor, and for the
/// module `uγ(a) = 0`, `δ(a)vⁱ = 0`, `uvⁱ = vⁱ⁻¹`, `γ(1) = v⁰`. Every
/// rewrite is an identity in the flavor; the remaining relations are imposed
/// by linear algebra.
#[derive(Clone, Copy)]
pub struct EllRing<'a> {
    pub alg: &'a Algebra,
    pub flavor: Flavor,
}

impl<'a> EllRing<'a> {
    pub fn new(alg: &'a Algebra, flavor: Flavor) -> Self {
        EllRing { alg, flavor }
    }

    pub fn one(&self) -> EllElement {
        EllElement::from_monomial(EllMonomial::one())
    }

    pub fn u_power(&self, j: i32) -> EllElement {
        let m = EllMonomial {
            u: j,
            ..EllMonomial::one()
        };
        self.finish(m).map(EllElement::from_monomial).unwrap_or_default()
    }

    /// `φ(p) = Σ φ(m)`.
    pub fn phi(&self, p: &Poly) -> EllElement {
        let mut out = EllElement::zero();
        for m in p.terms() {
            self.insert_phi(EllMonomial::one(), m, &mut out);
        }
        out
    }

    /// `q(Σ mᵢ) = Σ q(mᵢ) + Σ_{i<j} δ(mᵢmⱼ)`.
    pub fn q(&self, p: &Poly) -> EllElement {
        let terms: Vec<&Monomial> = p.terms().collect();
        let mut out = EllElement::zero();
        for (i, m) in terms.iter().enumerate() {
            self.insert_atom(EllMonomial::one(), Atom::Q(m), &mut out);
            for n in &terms[i + 1..] {
                out.add_assign(&self.delta(&self.alg.mul_monomials(m, n)));
            }
        }
        out
    }

    pub fn delta(&self, p: &Poly) -> EllElement {
        let mut out = EllElement::zero();
        for m in p.terms() {
            self.insert_atom(EllMonomial::one(), Atom::Delta(m), &mut out);
        }
        out
    }

    /// `γ(p) = Σ γ(m)`, with `γ(1) = v⁰`.
    pub fn gamma(&self, p: &Poly) -> EllElement {
        let mut out = EllElement::zero();
        for m in p.terms() {
            let g = if m.is_one() {
                ModuleGen::V(0)
            } else {
                ModuleGen::Gamma(m.clone())
            };
            self.push(
                EllMonomial {
                    module: Some(g),
                    ..EllMonomial::one()
                },
                &mut out,
            );
        }
        out
    }

    pub fn v(&self, i: u32) -> EllElement {
        let m = EllMonomial {
            module: Some(ModuleGen::V(i)),
            ..EllMonomial::one()
        };
        self.finish(m).map(EllElement::from_monomial).unwrap_or_default()
    }

    /// Brings an arbitrary monomial (possibly violating the normal form) to
    /// normal form.
    pub fn normalize(&self, m: &EllMonomial) -> Result<EllElement> {
        let mut start = EllMonomial {
            u: m.u,
            module: m.module.clone(),
            ..EllMonomial::one()
        };
        if let Some(ModuleGen::Gamma(g)) = &m.module {
            if g.is_one() {
                start.module = Some(ModuleGen::V(0));
            }
        }
        let mut acc = EllElement::zero();
        self.push(start, &mut acc);
        for p in &m.phi {
            acc = self.times_atom(&acc, Atom::Phi(p));
        }
        for p in &m.q {
            acc = self.times_atom(&acc, Atom::Q(p));
        }
        for p in &m.delta {
            acc = self.times_atom(&acc, Atom::Delta(p));
        }
        Ok(acc)
    }

    pub fn mul(&self, x: &EllElement, y: &EllElement) -> Result<EllElement> {
        let mut out = EllElement::zero();
        for a in x.terms() {
            for b in y.terms() {
                out.add_assign(&self.mul_monomials(a, b)?);
            }
        }
        Ok(out)
    }

    pub fn mul_monomials(&self, a: &EllMonomial, b: &EllMonomial) -> Result<EllElement> {
        let module = match (&a.module, &b.module) {
            (Some(_), Some(_)) => return Err(internal("product of two module elements")),
            (Some(g), None) | (None, Some(g)) => Some(g.clone()),
            (None, None) => None,
        };
        let start = EllMonomial {
            u: a.u + b.u,
            module,
            ..a.clone()
        };
        let mut acc = EllElement::zero();
        self.push(start, &mut acc);
        for p in &b.phi {
            acc = self.times_atom(&acc, Atom::Phi(p));
        }
        for p in &b.q {
            acc = self.times_atom(&acc, Atom::Q(p));
        }
        for p in &b.delta {
            acc = self.times_atom(&acc, Atom::Delta(p));
        }
        Ok(acc)
    }

    fn times_atom(&self, x: &EllElement, atom: Atom) -> EllElement {
        let mut out = EllElement::zero();
        for m in x.terms() {
            match atom {
                Atom::Phi(p) => self.insert_phi(m.clone(), p, &mut out),
                Atom::Q(p) => self.insert_atom(m.clone(), Atom::Q(p), &mut out),
                Atom::Delta(p) => self.insert_atom(m.clone(), Atom::Delta(p), &mut out),
            }
        }
        out
    }

    fn insert_phi(&self, mut m: EllMonomial, p: &Monomial, out: &mut EllElement) {
        if p.is_one() {
            self.push(m, out);
            return;
        }
        match m.phi.binary_search(p) {
            Ok(i) => {
                m.phi.remove(i);
                for t in self.alg.square_monomial(p).terms() {
                    self.insert_phi(m.clone(), t, out);
                }
            }
            Err(i) => {
                m.phi.insert(i, p.clone());
                self.push(m, out);
            }
        }
    }

    fn insert_atom(&self, mut m: EllMonomial, atom: Atom, out: &mut EllElement) {
        let (list, p) = match atom {
            Atom::Q(p) => (&mut m.q, p),
            Atom::Delta(p) => (&mut m.delta, p),
            Atom::Phi(p) => return self.insert_phi(m, p, out),
        };
        if p.is_one() {
            return;
        }
        match list.binary_search(p) {
            Ok(_) => {}
            Err(i) => {
                list.insert(i, p.clone());
                self.push(m, out);
            }
        }
    }

    fn push(&self, m: EllMonomial, out: &mut EllElement) {
        if let Some(m) = self.finish(m) {
            out.toggle(m);
        }
    }

    /// Applies the monomial rewrites; `None` means the monomial vanishes.
    fn finish(&self, mut m: EllMonomial) -> Option<EllMonomial> {
        let f = self.flavor;
        if !f.has_delta() && !m.delta.is_empty() {
            return None;
        }
        if !f.has_u() && m.u != 0 {
            return None;
        }
        if m.u > 0 && !m.delta.is_empty() {
            return None;
        }
        if !f.is_laurent() && m.u < 0 {
            return None;
        }
        match &m.module {
            None => {}
            Some(_) if !f.is_module() => return None,
            Some(ModuleGen::Gamma(_)) => {
                if m.u > 0 {
                    return None;
                }
            }
            Some(ModuleGen::V(i)) => {
                if !m.delta.is_empty() || m.u as u32 > *i {
                    return None;
                }
                m.module = Some(ModuleGen::V(i - m.u as u32));
                m.u = 0;
            }
        }
        Some(m)
    }
}
