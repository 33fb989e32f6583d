use super::monomial::{EllElement, EllMonomial, EllRing, Flavor, ModuleGen};
use super::space::{build_space, EllSpace};
use crate::derham::{de_rham_d, mask_weight, DeRham, OmegaForm};
use crate::error::{internal, Result};
use crate::f2linalg::{rank_kernel_image, F2Matrix, F2Vec};
use crate::gralg::{Algebra, Monomial, Poly, Weight, WeightGrading};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// An element of `Ω*[u]`: forms indexed by the power of `u`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct OmegaU {
    parts: BTreeMap<u32, OmegaForm>,
}

impl OmegaU {
    pub fn zero() -> Self {
        OmegaU::default()
    }

    pub fn from_form(k: u32, f: OmegaForm) -> Self {
        let mut x = OmegaU::zero();
        x.add_at(k, &f);
        x
    }

    pub fn parts(&self) -> &BTreeMap<u32, OmegaForm> {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add_at(&mut self, k: u32, f: &OmegaForm) {
        let e = self.parts.entry(k).or_default();
        e.add_assign(f);
        if e.is_zero() {
            self.parts.remove(&k);
        }
    }

    pub fn add(&self, other: &OmegaU) -> OmegaU {
        let mut x = self.clone();
        for (k, f) in &other.parts {
            x.add_at(*k, f);
        }
        x
    }

    /// The deformed product `a * b = ab + u·da·db`.
    pub fn star(&self, alg: &Algebra, other: &OmegaU) -> OmegaU {
        let mut out = OmegaU::zero();
        for (i, a) in &self.parts {
            for (j, b) in &other.parts {
                out.add_at(i + j, &a.mul(alg, b));
                out.add_at(i + j + 1, &de_rham_d(alg, a).mul(alg, &de_rham_d(alg, b)));
            }
        }
        out
    }
}

fn form_weight(alg: &Algebra, f: &OmegaForm) -> Option<Weight> {
    f.terms()
        .next()
        .map(|(m, mask)| alg.weight(m).add(&mask_weight(alg, *mask)))
}

fn generator_poly(alg: &Algebra, i: usize) -> Poly {
    alg.generator(i)
}

/// Memoized spaces and structural maps of all flavors for one algebra.
pub struct EllContext<'a> {
    alg: &'a Algebra,
    derham: DeRham<'a>,
    spaces: Mutex<HashMap<(Flavor, i64, Weight), Arc<EllSpace>>>,
}

impl<'a> EllContext<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        EllContext {
            alg,
            derham: DeRham::new(alg),
            spaces: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    pub fn derham(&self) -> &DeRham<'a> {
        &self.derham
    }

    pub fn ring(&self, flavor: Flavor) -> EllRing<'a> {
        EllRing::new(self.alg, flavor)
    }

    pub fn space(&self, flavor: Flavor, n: i64, w: &Weight) -> Result<Arc<EllSpace>> {
        let key = (flavor, n, w.clone());
        if let Some(s) = self.spaces.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = Arc::new(build_space(self.alg, flavor, n, w)?);
        self.spaces.lock().unwrap().insert(key, s.clone());
        Ok(s)
    }

    fn omega_coords(&self, n: i64, w: &Weight, f: &OmegaForm) -> Result<F2Vec> {
        if n < 0 {
            return Ok(F2Vec::zeros(0));
        }
        self.derham.omega_basis(n as usize, w)?.coordinates(f)
    }

    fn omega_dim(&self, n: i64, w: &Weight) -> Result<usize> {
        if n < 0 {
            return Ok(0);
        }
        Ok(self.derham.omega_basis(n as usize, w)?.dim())
    }

    fn omega_forms(&self, n: i64, w: &Weight) -> Result<Vec<OmegaForm>> {
        if n < 0 {
            return Ok(Vec::new());
        }
        let s = self.derham.omega_basis(n as usize, w)?;
        Ok((0..s.dim()).map(|k| s.basis_form(k)).collect())
    }

    /// Matrix of a linear map between two spaces of the given flavors,
    /// evaluated on basis monomials.
    fn ell_matrix(
        &self,
        src: &EllSpace,
        dst: &EllSpace,
        f: impl Fn(&EllMonomial) -> Result<EllElement>,
    ) -> Result<F2Matrix> {
        let cols: Vec<F2Vec> = src
            .basis_monomials()
            .iter()
            .map(|m| dst.coordinates(&f(m)?))
            .collect::<Result<_>>()?;
        Ok(F2Matrix::from_columns(dst.dim(), &cols))
    }

    /// Multiplication by `u`, from degree `n` to `n - 2`.
    pub fn u_matrix(&self, flavor: Flavor, n: i64, w: &Weight) -> Result<F2Matrix> {
        let src = self.space(flavor, n, w)?;
        let dst = self.space(flavor, n - 2, w)?;
        let ring = self.ring(flavor);
        let u = EllMonomial {
            u: 1,
            ..EllMonomial::one()
        };
        self.ell_matrix(&src, &dst, |m| ring.mul_monomials(&u, m))
    }

    /// `r(δ(a)) = da`, `r(q(a)) = a da`, `r(φ(a)) = a²`, `r(u) = 0`.
    pub fn r_form(&self, m: &EllMonomial) -> Result<OmegaForm> {
        let alg = self.alg;
        if m.u > 0 {
            return Ok(OmegaForm::zero());
        }
        if m.module.is_some() {
            return Err(internal("r is defined on ℓ, not on the module"));
        }
        let mut acc = OmegaForm::from_term(alg.one_monomial(), 0);
        for p in &m.phi {
            acc = acc.mul(alg, &OmegaForm::from_poly(&alg.square_monomial(p), 0));
        }
        for c in m.q.iter().chain(&m.delta) {
            acc = acc.mul(alg, &differential(alg, c));
        }
        for c in &m.q {
            acc = acc.mul(alg, &OmegaForm::from_term(c.clone(), 0));
        }
        Ok(acc)
    }

    /// `r: ℓ_n → Ω^n` (also on `𝓛`).
    pub fn r_matrix(&self, flavor: Flavor, n: i64, w: &Weight) -> Result<F2Matrix> {
        let src = self.space(flavor, n, w)?;
        let mut cols = Vec::with_capacity(src.dim());
        for m in src.basis_monomials() {
            let f = self.r_form(&m)?;
            if n >= 0 && !self.omega_coords(n + 1, w, &de_rham_d(self.alg, &f))?.is_zero() {
                return Err(internal("r produced a form that is not closed"));
            }
            cols.push(self.omega_coords(n, w, &f)?);
        }
        Ok(F2Matrix::from_columns(self.omega_dim(n, w)?, &cols))
    }

    /// `τ(a₀da₁⋯daₙ) = δ(a₀)δ(a₁)⋯δ(aₙ)`.
    pub fn tau(&self, f: &OmegaForm) -> Result<EllElement> {
        self.delta_product(Flavor::Ell, f, false)
    }

    /// `I(a₀da₁⋯daₙ) = γ(a₀)δ(a₁)⋯δ(aₙ)`.
    pub fn i_map(&self, f: &OmegaForm) -> Result<EllElement> {
        self.delta_product(Flavor::EllPlus, f, true)
    }

    fn delta_product(&self, flavor: Flavor, f: &OmegaForm, gamma: bool) -> Result<EllElement> {
        let ring = self.ring(flavor);
        let alg = self.alg;
        let mut out = EllElement::zero();
        for (m, mask) in f.terms() {
            let head = Poly::from_monomial(m.clone());
            let mut acc = if gamma { ring.gamma(&head) } else { ring.delta(&head) };
            for i in 0..alg.ngens() {
                if mask >> i & 1 == 1 {
                    acc = ring.mul(&acc, &ring.delta(&generator_poly(alg, i)))?;
                }
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// `τ: Ω^n → ℓ_{n+1}`.
    pub fn tau_matrix(&self, n: i64, w: &Weight) -> Result<F2Matrix> {
        let dst = self.space(Flavor::Ell, n + 1, w)?;
        let cols: Vec<F2Vec> = self
            .omega_forms(n, w)?
            .iter()
            .map(|f| dst.coordinates(&self.tau(f)?))
            .collect::<Result<_>>()?;
        Ok(F2Matrix::from_columns(dst.dim(), &cols))
    }

    /// `I: Ω^n → ℓ⁺_n`.
    pub fn i_matrix(&self, n: i64, w: &Weight) -> Result<F2Matrix> {
        let dst = self.space(Flavor::EllPlus, n, w)?;
        let cols: Vec<F2Vec> = self
            .omega_forms(n, w)?
            .iter()
            .map(|f| dst.coordinates(&self.i_map(f)?))
            .collect::<Result<_>>()?;
        Ok(F2Matrix::from_columns(dst.dim(), &cols))
    }

    /// `D(x·γ(a)) = r(x) da`, `D(x·vⁱ) = 0`.
    pub fn d_form(&self, m: &EllMonomial) -> Result<OmegaForm> {
        match &m.module {
            Some(ModuleGen::Gamma(a)) => Ok(self.r_form(&m.coefficient())?.mul(self.alg, &differential(self.alg, a))),
            Some(ModuleGen::V(_)) => Ok(OmegaForm::zero()),
            None => Err(internal("D is defined on the module ℓ⁺")),
        }
    }

    /// `D: ℓ⁺_n → Ω^{n+1}`.
    pub fn d_matrix(&self, n: i64, w: &Weight) -> Result<F2Matrix> {
        let src = self.space(Flavor::EllPlus, n, w)?;
        let cols: Vec<F2Vec> = src
            .basis_monomials()
            .iter()
            .map(|m| self.omega_coords(n + 1, w, &self.d_form(m)?))
            .collect::<Result<_>>()?;
        Ok(F2Matrix::from_columns(self.omega_dim(n + 1, w)?, &cols))
    }

    /// `ι: ℓ_n → ℓ^per_n`, killing `δ`.
    pub fn iota_matrix(&self, n: i64, w: &Weight) -> Result<F2Matrix> {
        let src = self.space(Flavor::Ell, n, w)?;
        let dst = self.space(Flavor::EllPer, n, w)?;
        let ring = self.ring(Flavor::EllPer);
        self.ell_matrix(&src, &dst, |m| ring.normalize(m))
    }

    /// `S(x·u⁻ⁱ) = x·vⁱ⁻¹` for `i ≥ 1`, zero on `x·uʲ` with `j ≥ 0`.
    pub fn s_image(&self, m: &EllMonomial) -> Result<EllElement> {
        if m.u >= 0 {
            return Ok(EllElement::zero());
        }
        let v = EllMonomial {
            u: 0,
            module: Some(ModuleGen::V((-m.u - 1) as u32)),
            ..m.clone()
        };
        self.ring(Flavor::EllPlus).normalize(&v)
    }

    /// `S: ℓ^per_n → ℓ⁺_{n-2}`.
    pub fn s_matrix(&self, n: i64, w: &Weight) -> Result<F2Matrix> {
        let src = self.space(Flavor::EllPer, n, w)?;
        let dst = self.space(Flavor::EllPlus, n - 2, w)?;
        self.ell_matrix(&src, &dst, |m| self.s_image(m))
    }

    /// `∂(x·γ(a)) = x·δ(a)`, `∂(x·vⁱ) = 0`.
    pub fn partial_image(&self, m: &EllMonomial) -> Result<EllElement> {
        let ring = self.ring(Flavor::Ell);
        match &m.module {
            Some(ModuleGen::Gamma(a)) => ring.mul(
                &EllElement::from_monomial(m.coefficient()),
                &ring.delta(&Poly::from_monomial(a.clone())),
            ),
            Some(ModuleGen::V(_)) => Ok(EllElement::zero()),
            None => Err(internal("∂ is defined on the module ℓ⁺")),
        }
    }

    /// `∂: ℓ⁺_n → ℓ_{n+1}`.
    pub fn partial_matrix(&self, n: i64, w: &Weight) -> Result<F2Matrix> {
        let src = self.space(Flavor::EllPlus, n, w)?;
        let dst = self.space(Flavor::Ell, n + 1, w)?;
        self.ell_matrix(&src, &dst, |m| self.partial_image(m))
    }

    /// `f̄: ℓ̃ → (Ω*[u], *)`, `φ(x) ↦ x`, `q(x) ↦ dx`, `u ↦ u`.
    pub fn f_bar(&self, x: &EllElement) -> Result<OmegaU> {
        let alg = self.alg;
        let mut out = OmegaU::zero();
        for m in x.terms() {
            if !m.delta.is_empty() || m.module.is_some() || m.u < 0 {
                return Err(internal("f̄ is defined on ℓ̃"));
            }
            let mut acc = OmegaU::from_form(m.u as u32, OmegaForm::from_term(alg.one_monomial(), 0));
            for p in &m.phi {
                acc = acc.star(alg, &OmegaU::from_form(0, OmegaForm::from_term(p.clone(), 0)));
            }
            for c in &m.q {
                acc = acc.star(alg, &OmegaU::from_form(0, differential(alg, c)));
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// `s̄(uʲ a₀da₁⋯daₙ) = uʲ φ(a₀)q(a₁)⋯q(aₙ)` in `ℓ̃`.
    pub fn s_bar(&self, x: &OmegaU) -> Result<EllElement> {
        let ring = self.ring(Flavor::EllTilde);
        let alg = self.alg;
        let mut out = EllElement::zero();
        for (k, f) in x.parts() {
            for (m, mask) in f.terms() {
                let mut acc = ring.mul(&ring.u_power(*k as i32), &ring.phi(&Poly::from_monomial(m.clone())))?;
                for i in 0..alg.ngens() {
                    if mask >> i & 1 == 1 {
                        acc = ring.mul(&acc, &ring.q(&generator_poly(alg, i)))?;
                    }
                }
                out.add_assign(&acc);
            }
        }
        Ok(out)
    }

    /// Coordinates of an `Ω*[u]` element of homological degree `n` and
    /// `ℓ̃`-weight `w` (so each form has weight `w/2`), stacked by `u` power.
    pub fn omega_u_coordinates(&self, x: &OmegaU, n: i64, w: &Weight) -> Result<F2Vec> {
        let Some(half) = self.half_weight(w) else {
            if x.is_zero() {
                return Ok(F2Vec::zeros(0));
            }
            return Err(internal("Ω*[u] element in a weight that is not even"));
        };
        let mut out = F2Vec::zeros(0);
        for k in 0..=self.u_range(n, &half)? {
            let deg = n + 2 * k as i64;
            let f = x.parts().get(&k).cloned().unwrap_or_default();
            if let Some(fw) = form_weight(self.alg, &f) {
                if fw != half {
                    return Err(internal("Ω*[u] component has the wrong weight"));
                }
            }
            out = out.concat(&self.omega_coords(deg, &half, &f)?);
        }
        Ok(out)
    }

    /// `Σ_k dim Ω^{n+2k}` at half the weight: the size of the deformation
    /// model at `(n, w)`.
    pub fn omega_u_dim(&self, n: i64, w: &Weight) -> Result<usize> {
        let Some(half) = self.half_weight(w) else {
            return Ok(0);
        };
        let mut total = 0;
        for k in 0..=self.u_range(n, &half)? {
            total += self.omega_dim(n + 2 * k as i64, &half)?;
        }
        Ok(total)
    }

    fn half_weight(&self, w: &Weight) -> Option<Weight> {
        if self.alg.grading() == WeightGrading::Trivial {
            Some(w.clone())
        } else {
            w.halve()
        }
    }

    /// Largest `k` with `Ω^{n+2k}` possibly nonzero.
    fn u_range(&self, n: i64, _half: &Weight) -> Result<u32> {
        Ok(((self.alg.ngens() as i64 - n).max(0) / 2) as u32)
    }

    /// Matrix of `f̄` from `ℓ̃` at `(n, w)` to the stacked `Ω*[u]` model.
    pub fn f_bar_matrix(&self, n: i64, w: &Weight) -> Result<F2Matrix> {
        let src = self.space(Flavor::EllTilde, n, w)?;
        let rows = self.omega_u_dim(n, w)?;
        let cols: Vec<F2Vec> = (0..src.dim())
            .map(|k| self.omega_u_coordinates(&self.f_bar(&src.basis_element(k))?, n, w))
            .collect::<Result<_>>()?;
        Ok(F2Matrix::from_columns(rows, &cols))
    }

    /// Dimension of `uⁱℓ` inside `ℓ` at `(n, w)`.
    pub fn u_power_filtration_dim(&self, n: i64, w: &Weight, i: i32) -> Result<usize> {
        let s = self.space(Flavor::Ell, n, w)?;
        let vs: Vec<F2Vec> = s
            .candidates()
            .iter()
            .filter(|m| m.u >= i)
            .map(|m| s.coordinates(&EllElement::from_monomial(m.clone())))
            .collect::<Result<_>>()?;
        Ok(rank_kernel_image(&F2Matrix::from_columns(s.dim(), &vs)).0)
    }

    /// `dim uⁱℓ/uⁱ⁺¹ℓ` at `(n, w)`.
    pub fn gr_ell(&self, n: i64, w: &Weight, i: i32) -> Result<usize> {
        Ok(self.u_power_filtration_dim(n, w, i)? - self.u_power_filtration_dim(n, w, i + 1)?)
    }

    /// The expected `Gr_i` for `i > 0`: `dim Ω^{n+2i}` at half the weight.
    pub fn gr_model(&self, n: i64, w: &Weight, i: i32) -> Result<usize> {
        match self.half_weight(w) {
            Some(h) => self.omega_dim(n + 2 * i as i64, &h),
            None => Ok(0),
        }
    }

    /// `dim F_s ℓ⁺` at `(n, w)`, where `F_s` is generated by `γ(a)` and
    /// `v⁰, …, vˢ`.
    pub fn plus_filtration_dim(&self, n: i64, w: &Weight, s: i64) -> Result<usize> {
        let sp = self.space(Flavor::EllPlus, n, w)?;
        let vs: Vec<F2Vec> = sp
            .candidates()
            .iter()
            .filter(|m| match m.module {
                Some(ModuleGen::V(i)) => (i as i64) <= s,
                _ => s >= 0,
            })
            .map(|m| sp.coordinates(&EllElement::from_monomial(m.clone())))
            .collect::<Result<_>>()?;
        Ok(rank_kernel_image(&F2Matrix::from_columns(sp.dim(), &vs)).0)
    }

    /// `Ω̃ → ℓ⁺`, `x ↦ x·v⁰`, at `(n, w)`.
    pub fn v0_matrix(&self, n: i64, w: &Weight) -> Result<F2Matrix> {
        let src = self.space(Flavor::OmegaTilde, n, w)?;
        let dst = self.space(Flavor::EllPlus, n, w)?;
        let ring = self.ring(Flavor::EllPlus);
        let v0 = EllMonomial {
            module: Some(ModuleGen::V(0)),
            ..EllMonomial::one()
        };
        self.ell_matrix(&src, &dst, |m| ring.mul_monomials(m, &v0))
    }

    /// The weights of weight-degree `d`.
    pub fn weights(&self, d: u32) -> Vec<Weight> {
        self.alg.weights_of_degree(d)
    }

    /// `#A⁰`, the number of elements of the degree-zero part.
    pub fn degree_zero_cardinality(&self) -> Result<u128> {
        let dim = self.alg.degree_basis(0)?.len() as u32;
        Ok(1u128 << dim.min(127))
    }
}

/// `dc` for a standard monomial `c`, as a form.
pub fn differential(alg: &Algebra, c: &Monomial) -> OmegaForm {
    de_rham_d(alg, &OmegaForm::from_term(c.clone(), 0))
}
