//! The maps `ψ: ℓ(A) → HC⁻(A)`, `ψ⁺: ℓ⁺(A) → HC(A)` and
//! `ψ^per: ℓ^per(A) → HC^per(A)`, the squares relating them to the long
//! exact sequences, and per-bidegree isomorphism reports.
//!
//! `ψ` is evaluated on a normal monomial by multiplying the chain-level
//! images of its generators with the product of the towers, and only then
//! projected to homology classes.

mod report;

pub use report::{
    verify_approximation, verify_squares, window_columns, ApproxOptions, ApproxRecord, ApproxReport, Bidegree, SpotCheck,
    SquareResidual, Verdict,
};

use crate::cyclic::{Bounds, HomologyPresentation, HomologyTheory, Towers};
use crate::derham::antisymmetrize;
use crate::ell::{EllContext, EllElement, EllMonomial, EllSpace, Flavor, ModuleGen};
use crate::error::{input, internal, Result};
use crate::f2linalg::{F2Matrix, F2Vec};
use crate::gralg::{Algebra, Monomial, Poly, Weight};
use crate::hochschild::{connes_b, mu_chain, tower_boundary, Chain, Theory, UChain};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// A generator of `ℓ`, `ℓ⁺` or `ℓ^per`, with its argument a standard monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EllGenerator {
    Delta(Monomial),
    Phi(Monomial),
    Q(Monomial),
    U,
    UInverse,
    Gamma(Monomial),
    V(u32),
}

/// The flavor of `ℓ` approximating a homology theory.
pub fn flavor_of(theory: HomologyTheory) -> Result<Flavor> {
    match theory {
        HomologyTheory::HcMinus => Ok(Flavor::Ell),
        HomologyTheory::Hc => Ok(Flavor::EllPlus),
        HomologyTheory::HcPer => Ok(Flavor::EllPer),
        HomologyTheory::Hh => Err(input("Hochschild homology has no ℓ-approximation")),
    }
}

/// The tower whose homology `ψ` of the given flavor lands in.
pub fn target_bounds(flavor: Flavor) -> Result<Bounds> {
    match flavor {
        Flavor::Ell => Ok(Bounds::MINUS),
        Flavor::EllPlus => Ok(Bounds::PLUS),
        Flavor::EllPer => Ok(Bounds::PER),
        f => Err(input(format!("ψ is not defined on {}", f.name()))),
    }
}

/// `ψ` in one bidegree, in class coordinates.
#[derive(Clone, Debug)]
pub struct PsiMap {
    pub flavor: Flavor,
    pub n: i64,
    pub weight: Weight,
    pub source: Arc<EllSpace>,
    pub target: Arc<HomologyPresentation>,
    pub matrix: F2Matrix,
    /// Relation-span vectors whose image is not a boundary; zero when `ψ`
    /// is well defined on the quotient.
    pub relation_failures: usize,
}

type PresentationKey = (Bounds, i64, Weight, i32);

/// Shared state for evaluating `ψ` over one algebra.
pub struct Approximation<'a> {
    alg: &'a Algebra,
    towers: Towers<'a>,
    ell: EllContext<'a>,
    presentations: Mutex<HashMap<PresentationKey, Arc<HomologyPresentation>>>,
}

fn unit_word(head: &Monomial, bars: &[Monomial]) -> Chain {
    let mut c = Chain::zero();
    let bars: Vec<Poly> = bars.iter().map(|m| Poly::from_monomial(m.clone())).collect();
    c.add_expanded(&Poly::from_monomial(head.clone()), &bars);
    c
}

impl<'a> Approximation<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        Approximation {
            alg,
            towers: Towers::new(alg),
            ell: EllContext::new(alg),
            presentations: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    pub fn towers(&self) -> &Towers<'a> {
        &self.towers
    }

    pub fn ell(&self) -> &EllContext<'a> {
        &self.ell
    }

    /// Homology of a tower at `(n, w)`, memoized.
    pub fn homology(&self, bounds: Bounds, n: i64, w: &Weight, columns: i32) -> Result<Arc<HomologyPresentation>> {
        let key = (bounds, n, w.clone(), columns);
        if let Some(h) = self.presentations.lock().unwrap().get(&key) {
            return Ok(h.clone());
        }
        let h = Arc::new(self.towers.homology(bounds, n, w, columns)?);
        self.presentations.lock().unwrap().insert(key, h.clone());
        Ok(h)
    }

    /// The chain-level image of a generator: `δ(a) ↦ 1⊗1[a]`,
    /// `q(a) ↦ 1⊗a[a]`, `φ(a) ↦ 1⊗a²[] + u⊗1[a|a]`, `u^{±1} ↦ u^{±1}⊗1[]`,
    /// `γ(a) ↦ a[]` and `vⁱ ↦ u⁻ⁱ⊗1[]`. Ring generators are tagged with
    /// `theory`; module generators are plus chains. Each image is checked
    /// to be a cycle.
    pub fn generator_image(&self, g: &EllGenerator, theory: Theory) -> Result<UChain> {
        let alg = self.alg;
        let one = alg.one_monomial();
        let x = match g {
            EllGenerator::Delta(a) => UChain::single(theory, 0, unit_word(&one, std::slice::from_ref(a)))?,
            EllGenerator::Q(a) => UChain::single(theory, 0, unit_word(a, std::slice::from_ref(a)))?,
            EllGenerator::Phi(a) => {
                let mut head = Chain::zero();
                head.add_expanded(&alg.square_monomial(a), &[]);
                let mut x = UChain::single(theory, 0, head)?;
                x.add_at(1, &unit_word(&one, &[a.clone(), a.clone()]));
                x
            }
            EllGenerator::U => UChain::single(theory, 1, unit_word(&one, &[]))?,
            EllGenerator::UInverse => UChain::single(theory, -1, unit_word(&one, &[]))?,
            EllGenerator::Gamma(a) => UChain::single(Theory::Plus, 0, unit_word(a, &[]))?,
            EllGenerator::V(i) => UChain::single(Theory::Plus, -(*i as i32), unit_word(&one, &[]))?,
        };
        if !tower_boundary(alg, &x).is_zero() {
            return Err(internal(format!("the image of {g:?} is not a cycle")));
        }
        Ok(x)
    }

    /// `ψ` of a normal monomial of the given flavor, as a chain.
    pub fn psi_chain(&self, flavor: Flavor, m: &EllMonomial) -> Result<UChain> {
        let alg = self.alg;
        let theory = match flavor {
            Flavor::Ell | Flavor::EllPlus => Theory::Minus,
            Flavor::EllPer => Theory::Per,
            f => return Err(input(format!("ψ is not defined on {}", f.name()))),
        };
        let mut acc = UChain::single(theory, m.u, unit_word(&alg.one_monomial(), &[]))?;
        let factors = m
            .phi
            .iter()
            .map(|a| EllGenerator::Phi(a.clone()))
            .chain(m.q.iter().map(|a| EllGenerator::Q(a.clone())))
            .chain(m.delta.iter().map(|a| EllGenerator::Delta(a.clone())));
        for g in factors {
            acc = mu_chain(alg, &acc, &self.generator_image(&g, theory)?)?;
        }
        match (&m.module, flavor) {
            (None, Flavor::EllPlus) => Err(input("ℓ⁺ monomials carry a module generator")),
            (Some(_), f) if f != Flavor::EllPlus => Err(input("module generator outside ℓ⁺")),
            (None, _) => Ok(acc),
            (Some(ModuleGen::Gamma(a)), _) => mu_chain(alg, &acc, &self.generator_image(&EllGenerator::Gamma(a.clone()), theory)?),
            (Some(ModuleGen::V(i)), _) => mu_chain(alg, &acc, &self.generator_image(&EllGenerator::V(*i), theory)?),
        }
    }

    /// `ψ` of an element, as a chain (sum over its monomials).
    pub fn psi_element_chain(&self, flavor: Flavor, x: &EllElement) -> Result<UChain> {
        let mut out = UChain::zero(target_bounds(flavor)?.chain_theory());
        for m in x.terms() {
            out.add_assign(&self.psi_chain(flavor, m)?);
        }
        Ok(out)
    }

    /// The class of `ψ(x)` at `(n, w)`. The class of a second representative,
    /// the reduced form of `x` in the basis, is required to agree.
    pub fn psi_class(&self, flavor: Flavor, x: &EllElement, n: i64, w: &Weight, columns: i32) -> Result<F2Vec> {
        let target = self.homology(target_bounds(flavor)?, n, w, columns)?;
        let space = self.ell.space(flavor, n, w)?;
        let reduced = space.element_of(&space.coordinates(x)?);
        let a = self.psi_element_chain(flavor, x)?;
        let b = self.psi_element_chain(flavor, &reduced)?;
        if !target.is_boundary(&a.add(&b))? {
            return Err(internal("ψ takes different values on two representatives"));
        }
        target.coordinates(&a)
    }

    /// `ψ` at `(n, w)` as a matrix from the basis of the source to class
    /// coordinates of the target, together with the well-definedness check
    /// over a spanning set of the relation subspace.
    pub fn psi_map(&self, flavor: Flavor, n: i64, w: &Weight, columns: i32) -> Result<PsiMap> {
        let target = self.homology(target_bounds(flavor)?, n, w, columns)?;
        let source = self.ell.space(flavor, n, w)?;
        let images: Vec<F2Vec> = source
            .candidates()
            .par_iter()
            .map(|m| {
                let (v, _) = target.basis.vector_of(&self.psi_chain(flavor, m)?)?;
                if !target.cycles().contains(&v) {
                    return Err(internal(format!("ψ({}) is not a cycle", m.format(self.alg))));
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
        let ambient = target.basis.len();
        let combine = |v: &F2Vec| {
            let mut s = F2Vec::zeros(ambient);
            for j in v.ones() {
                s.add_assign(&images[j]);
            }
            s
        };
        let relation_failures = source
            .relation_span()
            .vectors()
            .iter()
            .filter(|r| !target.boundaries().contains(&combine(r)))
            .count();
        let cols: Vec<F2Vec> = (0..source.dim())
            .map(|k| target.quotient.coordinates(&combine(&source.vector_of(&source.basis_element(k))?)))
            .collect::<Result<_>>()?;
        let matrix = F2Matrix::from_columns(target.dim(), &cols);
        Ok(PsiMap {
            flavor,
            n,
            weight: w.clone(),
            source,
            target,
            matrix,
            relation_failures,
        })
    }
}

/// `ε` applied to a form, as a column-zero chain.
pub(crate) fn epsilon_chain(alg: &Algebra, f: &crate::derham::OmegaForm, theory: Theory) -> Result<UChain> {
    UChain::single(theory, 0, antisymmetrize(alg, f))
}

/// The chain-level connecting map `x ↦ 1⊗B(x₀)`, where `x₀` is the
/// `u⁰`-component of `x`.
pub(crate) fn connecting_chain(alg: &Algebra, x: &UChain, theory: Theory) -> Result<UChain> {
    match x.get(0) {
        Some(c) => UChain::single(theory, 0, connes_b(alg, c)),
        None => Ok(UChain::zero(theory)),
    }
}

#[cfg(test)]
mod tests;
