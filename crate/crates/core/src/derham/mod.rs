//! Kähler differentials `Ω*_{A|k}`, the de Rham differential, the Cartier
//! map, de Rham cohomology and the antisymmetrization into Hochschild
//! chains.
//!
//! `Ω^n` in one weight is the free `A`-module on `dg_I` (`|I| = n`) modulo
//! the `A`-multiples of `d(r) ∧ dg_J` for the defining relations `r`.

use crate::error::{input, internal, Result};
use crate::f2linalg::{rank_kernel_image, Echelon, F2Matrix, F2Vec, QuotientMap};
use crate::gralg::{Algebra, Monomial, Poly, Weight};
use crate::hochschild::{Chain, ChainElement};
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

/// A basis form `m · dg_{i₁} ⋯ dg_{iₙ}`: a standard monomial and the bit
/// mask of the differentials.
pub type FormTerm = (Monomial, u64);

/// An F₂-combination of basis forms (not yet reduced modulo the module
/// relations).
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct OmegaForm {
    terms: BTreeSet<FormTerm>,
}

impl OmegaForm {
    pub fn zero() -> Self {
        OmegaForm::default()
    }

    pub fn from_term(m: Monomial, mask: u64) -> Self {
        let mut f = OmegaForm::zero();
        f.terms.insert((m, mask));
        f
    }

    /// `p · dg_I` for a polynomial coefficient.
    pub fn from_poly(p: &Poly, mask: u64) -> Self {
        let mut f = OmegaForm::zero();
        for m in p.terms() {
            f.toggle((m.clone(), mask));
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &FormTerm> {
        self.terms.iter()
    }

    pub fn toggle(&mut self, t: FormTerm) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &OmegaForm) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    pub fn add(&self, other: &OmegaForm) -> OmegaForm {
        let mut f = self.clone();
        f.add_assign(other);
        f
    }

    /// The wedge product (`dg ∧ dg = 0`, no signs in characteristic 2).
    pub fn mul(&self, alg: &Algebra, other: &OmegaForm) -> OmegaForm {
        let mut out = OmegaForm::zero();
        for (a, i) in &self.terms {
            for (b, j) in &other.terms {
                if i & j != 0 {
                    continue;
                }
                for m in alg.mul_monomials(a, b).terms() {
                    out.toggle((m.clone(), i | j));
                }
            }
        }
        out
    }

    /// Form degree, if homogeneous.
    pub fn form_degree(&self) -> Option<usize> {
        let mut it = self.terms.iter().map(|(_, m)| m.count_ones() as usize);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn format(&self, alg: &Algebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = alg.generator_names();
        self.terms
            .iter()
            .map(|(m, mask)| {
                let mut s = alg.format_monomial(m);
                for (i, name) in names.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        s.push_str(" d");
                        s.push_str(name);
                    }
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The weight of the differentials `dg_I`.
pub fn mask_weight(alg: &Algebra, mask: u64) -> Weight {
    let mut w = alg.zero_weight();
    for i in 0..alg.ngens() {
        if mask >> i & 1 == 1 {
            w = w.add(&alg.weight(&generator_monomial(alg, i)));
        }
    }
    w
}

fn generator_monomial(alg: &Algebra, i: usize) -> Monomial {
    let mut e = vec![0u16; alg.ngens()];
    e[i] = 1;
    alg.monomial(&e)
}

fn masks_of_size(ngens: usize, n: usize) -> Vec<u64> {
    (0u64..1 << ngens)
        .filter(|m| m.count_ones() as usize == n)
        .collect()
}

/// The de Rham differential `d(m dg_I) = Σᵢ ∂m/∂gᵢ dgᵢ dg_I`.
pub fn de_rham_d(alg: &Algebra, f: &OmegaForm) -> OmegaForm {
    let mut out = OmegaForm::zero();
    for (m, mask) in f.terms() {
        for (i, &e) in m.exponents().iter().enumerate() {
            if e % 2 == 0 || mask >> i & 1 == 1 {
                continue;
            }
            let q = generator_monomial(alg, i).quotient_of(m);
            out.toggle((q, mask | 1 << i));
        }
    }
    out
}

/// `Ω^n` in one weight, with a canonical basis complementing the relation
/// span.
#[derive(Debug)]
pub struct OmegaSpace {
    pub n: usize,
    pub weight: Weight,
    candidates: Vec<FormTerm>,
    index: HashMap<FormTerm, usize>,
    relations: Echelon,
    basis: Vec<usize>,
    coordinate: HashMap<usize, usize>,
}

impl OmegaSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_terms(&self) -> Vec<FormTerm> {
        self.basis.iter().map(|&i| self.candidates[i].clone()).collect()
    }

    pub fn basis_form(&self, k: usize) -> OmegaForm {
        let (m, mask) = self.candidates[self.basis[k]].clone();
        OmegaForm::from_term(m, mask)
    }

    /// Coordinates of a form of this bidegree in the canonical basis.
    pub fn coordinates(&self, f: &OmegaForm) -> Result<F2Vec> {
        let mut v = F2Vec::zeros(self.candidates.len());
        for t in f.terms() {
            let i = self.index.get(t).ok_or_else(|| {
                input(format!("form term {t:?} is not in Ω^{} of weight {}", self.n, self.weight))
            })?;
            v.flip(*i);
        }
        let r = self.relations.reduce(&v);
        let mut out = F2Vec::zeros(self.dim());
        for i in r.ones() {
            let k = self
                .coordinate
                .get(&i)
                .ok_or_else(|| internal("relation reduction left a pivot entry"))?;
            out.set(*k, true);
        }
        Ok(out)
    }

    pub fn form_of(&self, coords: &F2Vec) -> OmegaForm {
        let mut f = OmegaForm::zero();
        for k in coords.ones() {
            f.toggle(self.candidates[self.basis[k]].clone());
        }
        f
    }

    /// The canonical representative of a form.
    pub fn reduce(&self, f: &OmegaForm) -> Result<OmegaForm> {
        Ok(self.form_of(&self.coordinates(f)?))
    }
}

/// Memoized Kähler-form spaces of one algebra.
pub struct DeRham<'a> {
    alg: &'a Algebra,
    spaces: Mutex<HashMap<(usize, Weight), Arc<OmegaSpace>>>,
}

/// `H^n_DR` in one weight.
#[derive(Debug, Clone)]
pub struct DeRhamCohomology {
    pub n: usize,
    pub weight: Weight,
    pub space: Arc<OmegaSpace>,
    pub quotient: QuotientMap,
}

impl DeRhamCohomology {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn coordinates(&self, f: &OmegaForm) -> Result<F2Vec> {
        self.quotient.coordinates(&self.space.coordinates(f)?)
    }

    pub fn class_form(&self, k: usize) -> OmegaForm {
        self.space.form_of(&self.quotient.representatives()[k])
    }
}

impl<'a> DeRham<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        DeRham {
            alg,
            spaces: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    /// The canonical basis of `Ω^n` in weight `w`.
    pub fn omega_basis(&self, n: usize, w: &Weight) -> Result<Arc<OmegaSpace>> {
        let key = (n, w.clone());
        if let Some(s) = self.spaces.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = Arc::new(self.build_space(n, w)?);
        self.spaces.lock().unwrap().insert(key, s.clone());
        Ok(s)
    }

    fn build_space(&self, n: usize, w: &Weight) -> Result<OmegaSpace> {
        let alg = self.alg;
        if alg.ngens() > 63 {
            return Err(input("at most 63 generators are supported"));
        }
        let mut candidates = Vec::new();
        if n <= alg.ngens() {
            for mask in masks_of_size(alg.ngens(), n) {
                let Some(rest) = w.checked_sub(&mask_weight(alg, mask)) else {
                    continue;
                };
                for m in alg.basis_of_weight(&rest)?.iter() {
                    candidates.push((m.clone(), mask));
                }
            }
        }
        // Large terms first so that they become pivots and the basis keeps
        // the small ones.
        candidates.sort_by(|a, b| b.cmp(a));
        let index: HashMap<FormTerm, usize> =
            candidates.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut relations = Echelon::new(candidates.len(), 0);
        if n >= 1 {
            for r in alg.relations() {
                let dr = self.relation_differential(r);
                for j in masks_of_size(alg.ngens(), n - 1) {
                    for m in self.multipliers(&dr, j, w)? {
                        let mut v = F2Vec::zeros(candidates.len());
                        for (coeff, i) in &dr {
                            if j >> i & 1 == 1 {
                                continue;
                            }
                            let p = alg.normal_form(&coeff.mul_monomial(&m));
                            for t in p.terms() {
                                let key = (t.clone(), j | 1 << i);
                                match index.get(&key) {
                                    Some(&k) => v.flip(k),
                                    None => return Err(internal("relation differential left its weight")),
                                }
                            }
                        }
                        relations.insert(&v);
                    }
                }
            }
        }
        let basis: Vec<usize> = (0..candidates.len()).filter(|&i| !relations.is_pivot(i)).collect();
        let coordinate = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        Ok(OmegaSpace {
            n,
            weight: w.clone(),
            candidates,
            index,
            relations,
            basis,
            coordinate,
        })
    }

    /// `d(r) = Σᵢ (∂r/∂gᵢ) dgᵢ` in the free polynomial ring.
    fn relation_differential(&self, r: &Poly) -> Vec<(Poly, usize)> {
        let alg = self.alg;
        let mut out = Vec::new();
        for i in 0..alg.ngens() {
            let g = generator_monomial(alg, i);
            let mut p = Poly::zero();
            for m in r.terms() {
                if m.exponents()[i] % 2 == 1 {
                    p.toggle(g.quotient_of(m));
                }
            }
            if !p.is_zero() {
                out.push((p, i));
            }
        }
        out
    }

    /// Standard monomials `m` such that `m · d(r) ∧ dg_J` has weight `w`.
    fn multipliers(&self, dr: &[(Poly, usize)], j: u64, w: &Weight) -> Result<Vec<Monomial>> {
        let alg = self.alg;
        let Some((coeff, i)) = dr.iter().find(|(_, i)| j >> i & 1 == 0) else {
            return Ok(Vec::new());
        };
        // Relations are homogeneous for any nontrivial weight, so one term
        // of d(r) ∧ dg_J fixes the weight of the multiplier.
        let base = alg.weight(coeff.terms().next().unwrap()).add(&mask_weight(alg, j | 1 << i));
        match w.checked_sub(&base) {
            Some(rest) => Ok(alg.basis_of_weight(&rest)?.to_vec()),
            None => Ok(Vec::new()),
        }
    }

    /// The matrix of `d: Ω^n → Ω^{n+1}` in weight `w`.
    pub fn d_matrix(&self, n: usize, w: &Weight) -> Result<F2Matrix> {
        let src = self.omega_basis(n, w)?;
        let dst = self.omega_basis(n + 1, w)?;
        let cols: Vec<F2Vec> = (0..src.dim())
            .map(|k| dst.coordinates(&de_rham_d(self.alg, &src.basis_form(k))))
            .collect::<Result<_>>()?;
        Ok(F2Matrix::from_columns(dst.dim(), &cols))
    }

    /// Dimension of `Ker(d)` on `Ω^n` in weight `w`.
    pub fn closed_dim(&self, n: usize, w: &Weight) -> Result<usize> {
        let m = self.d_matrix(n, w)?;
        Ok(m.ncols() - rank_kernel_image(&m).0)
    }

    /// Dimension of `d Ω^{n-1}` inside `Ω^n` in weight `w`.
    pub fn exact_dim(&self, n: usize, w: &Weight) -> Result<usize> {
        if n == 0 {
            return Ok(0);
        }
        Ok(rank_kernel_image(&self.d_matrix(n - 1, w)?).0)
    }

    pub fn de_rham_cohomology(&self, n: usize, w: &Weight) -> Result<DeRhamCohomology> {
        let space = self.omega_basis(n, w)?;
        let (_, cycles, _) = rank_kernel_image(&self.d_matrix(n, w)?);
        let boundaries = if n == 0 {
            crate::f2linalg::SubspaceBasis::zero(space.dim())
        } else {
            rank_kernel_image(&self.d_matrix(n - 1, w)?).2
        };
        Ok(DeRhamCohomology {
            n,
            weight: w.clone(),
            space,
            quotient: QuotientMap::new(cycles, boundaries)?,
        })
    }

    /// A closed representative of `Φ(ω)`: `a ↦ a²`, `dg ↦ g dg`,
    /// multiplicatively.
    pub fn cartier_representative(&self, f: &OmegaForm) -> OmegaForm {
        let alg = self.alg;
        let mut out = OmegaForm::zero();
        for (m, mask) in f.terms() {
            let mut p = alg.square_monomial(m);
            for i in 0..alg.ngens() {
                if mask >> i & 1 == 1 {
                    p = alg.multiply(&p, &Poly::from_monomial(generator_monomial(alg, i)));
                }
            }
            out.add_assign(&OmegaForm::from_poly(&p, *mask));
        }
        out
    }

    /// `Φ(ω)` in class coordinates of `H^n_DR` in weight `2w`.
    pub fn cartier(&self, f: &OmegaForm, n: usize, w: &Weight) -> Result<F2Vec> {
        let rep = self.cartier_representative(f);
        let w2 = w.scale(2);
        let closed = self.omega_basis(n + 1, &w2)?.coordinates(&de_rham_d(self.alg, &rep))?;
        if !closed.is_zero() {
            return Err(internal("Cartier representative is not closed"));
        }
        self.de_rham_cohomology(n, &w2)?.coordinates(&rep)
    }

    /// The matrix of `Φ: Ω^n_w → H^n_DR` in weight `2w`.
    pub fn cartier_matrix(&self, n: usize, w: &Weight) -> Result<F2Matrix> {
        let src = self.omega_basis(n, w)?;
        let h = self.de_rham_cohomology(n, &w.scale(2))?;
        let cols: Vec<F2Vec> = (0..src.dim())
            .map(|k| self.cartier(&src.basis_form(k), n, w))
            .collect::<Result<_>>()?;
        Ok(F2Matrix::from_columns(h.dim(), &cols))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// `ε(a₀ da₁ ⋯ daₙ) = Σ_{σ∈S(n)} σ·a₀[a₁|⋯|aₙ]`.
pub fn antisymmetrize(alg: &Algebra, f: &OmegaForm) -> ChainElement {
    let mut out = Chain::zero();
    for (m, mask) in f.terms() {
        let gens: Vec<Poly> = (0..alg.ngens())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| alg.generator(i))
            .collect();
        let head = Poly::from_monomial(m.clone());
        for p in permutations(gens.len()) {
            let bars: Vec<Poly> = p.iter().map(|&i| gens[i].clone()).collect();
            out.add_expanded(&head, &bars);
        }
    }
    out
}
