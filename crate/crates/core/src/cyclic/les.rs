use super::homology::{chain_matrix, class_matrix, HomologyPresentation, Stability};
use super::tower::{Bounds, Towers};
use crate::error::{internal, Result};
use crate::f2linalg::{rank, rank_kernel_image, F2Matrix, F2Vec, LinearSolver};
use crate::gralg::Weight;
use crate::hochschild::{tower_boundary, Theory, UChain};
use serde::Serialize;

/// The three long exact sequences.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LesKind {
    /// `HC⁻_{n+2} →·u HC⁻_n →h HH_n →∂ HC⁻_{n+1}`.
    MinusLes,
    /// `HH_n →I HC_n →·u HC_{n-2} →∂ HH_{n-1}`.
    Connes,
    /// `HC⁻_n →ι HC^per_n →S HC_{n-2} →∂ HC⁻_{n-1}`.
    PerLes,
}

/// A map between homology groups in class coordinates.
#[derive(Clone, Debug)]
pub struct ClassMap {
    pub name: &'static str,
    pub matrix: F2Matrix,
    pub stability: Stability,
}

impl ClassMap {
    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    pub fn kernel_dim(&self) -> usize {
        self.matrix.ncols() - self.rank()
    }
}

/// Three consecutive maps `X →f Y →g Z →∂ X′` of a long exact sequence.
#[derive(Clone, Debug)]
pub struct LesTriple {
    pub kind: LesKind,
    pub n: i64,
    pub weight: Weight,
    pub first: ClassMap,
    pub second: ClassMap,
    pub connecting: ClassMap,
}

impl LesTriple {
    pub fn stability(&self) -> Stability {
        self.first
            .stability
            .worst(self.second.stability)
            .worst(self.connecting.stability)
    }

    /// Composites `g∘f` and `∂∘g` vanish.
    pub fn composites_vanish(&self) -> bool {
        self.second.matrix.mul(&self.first.matrix).is_zero()
            && self.connecting.matrix.mul(&self.second.matrix).is_zero()
    }

    /// Rank exactness at `Y` and `Z`: `dim Ker g = rank f`, `dim Ker ∂ = rank g`.
    pub fn exact_inside(&self) -> bool {
        self.second.kernel_dim() == self.first.rank()
            && self.connecting.kernel_dim() == self.second.rank()
    }

    /// Rank exactness at `X′`, the joint shared with the triple at `n - 1`.
    pub fn exact_with_next(&self, next: &LesTriple) -> bool {
        next.first.kernel_dim() == self.connecting.rank()
    }
}

fn shift_into(theory: Theory, k: i32) -> impl Fn(&UChain) -> Result<UChain> {
    move |x: &UChain| Ok(x.shift(k).with_theory(theory))
}

fn retag(theory: Theory) -> impl Fn(&UChain) -> Result<UChain> {
    move |x: &UChain| Ok(x.clone().with_theory(theory))
}

impl Towers<'_> {
    /// The maps of one long exact sequence at `(n, w)`, including the
    /// connecting map obtained by lifting, applying `∂`, and solving back
    /// through the inclusion.
    pub fn les_maps(&self, kind: LesKind, n: i64, w: &Weight, columns: i32) -> Result<LesTriple> {
        let h = |b: Bounds, m: i64| self.homology(b, m, w, columns);
        let (first, second, connecting) = match kind {
            LesKind::MinusLes => {
                let m2 = h(Bounds::MINUS, n + 2)?;
                let m0 = h(Bounds::MINUS, n)?;
                let hh = h(Bounds::HH, n)?;
                let m1 = h(Bounds::MINUS, n + 1)?;
                let u = map("u", &m2, &m0, shift_into(Theory::Minus, 1))?;
                let proj = map("h", &m0, &hh, retag(Theory::Minus))?;
                // Lift x ∈ HH_n to the column-0 chain; ∂ lands in
                // T^{-∞,-1}_{n-1} = u·T^{-∞,0}_{n+1}.
                let conn = self.connecting("∂", &hh, Bounds::MINUS, n, &m1, 1, retag(Theory::Minus))?;
                (u, proj, conn)
            }
            LesKind::Connes => {
                let hh = h(Bounds::HH, n)?;
                let hc = h(Bounds::PLUS, n)?;
                let hc2 = h(Bounds::PLUS, n - 2)?;
                let hh1 = h(Bounds::HH, n - 1)?;
                let inc = map("I", &hh, &hc, retag(Theory::Plus))?;
                let u = map("u", &hc, &hc2, shift_into(Theory::Plus, 1))?;
                let conn = self.connecting("∂", &hc2, Bounds::PLUS, n, &hh1, 0, shift_into(Theory::Plus, 1))?;
                (inc, u, conn)
            }
            LesKind::PerLes => {
                let m0 = h(Bounds::MINUS, n)?;
                let per = h(Bounds::PER, n)?;
                let hc2 = h(Bounds::PLUS, n - 2)?;
                let m1 = h(Bounds::MINUS, n - 1)?;
                let iota = map("ι", &m0, &per, retag(Theory::Per))?;
                let s = map("S", &per, &hc2, shift_into(Theory::Plus, 1))?;
                let conn = self.connecting("∂", &hc2, Bounds::PER, n, &m1, 0, shift_into(Theory::Plus, 1))?;
                (iota, s, conn)
            }
        };
        Ok(LesTriple {
            kind,
            n,
            weight: w.clone(),
            first,
            second,
            connecting,
        })
    }

    /// Snake-lemma connecting map `H_n(C) → H(A)` for `0 → A → B → C → 0`,
    /// where `B` is the tower with `bounds` at degree `n`, the quotient map
    /// `B → C` is `proj`, and `A ≅ target` embeds into `B_{n-1}` by `u^k`.
    #[allow(clippy::too_many_arguments)]
    fn connecting(
        &self,
        name: &'static str,
        quotient: &HomologyPresentation,
        bounds: Bounds,
        n: i64,
        target: &HomologyPresentation,
        k: i32,
        proj: impl Fn(&UChain) -> Result<UChain>,
    ) -> Result<ClassMap> {
        let w = quotient.weight().clone();
        let columns = quotient.basis.columns;
        let big = self.tower_basis(bounds, n, &w, columns)?;
        let big_next = self.tower_basis(bounds, n - 1, &w, columns)?;
        let theory = bounds.chain_theory();
        let p = chain_matrix(&big, &quotient.basis, |x| proj(x).expect("projection"))?;
        let i = chain_matrix(&target.basis, &big_next, |x| x.shift(k).with_theory(theory))?;
        let lift = LinearSolver::new(&p);
        let back = LinearSolver::new(&i);
        let mut cols = Vec::with_capacity(quotient.dim());
        for c in 0..quotient.dim() {
            let z = &quotient.quotient.representatives()[c];
            let y = lift
                .solve(z)?
                .ok_or_else(|| internal("projection onto the quotient tower is not surjective"))?;
            let dy = tower_boundary(self.algebra(), &big.chain_of(&y));
            let (dv, _) = big_next.vector_of(&dy)?;
            let x = back
                .solve(&dv)?
                .ok_or_else(|| internal("boundary of a lift does not lie in the subcomplex"))?;
            cols.push(target.quotient.coordinates(&x)?);
        }
        Ok(ClassMap {
            name,
            matrix: F2Matrix::from_columns(target.dim(), &cols),
            stability: quotient.stability.worst(target.stability),
        })
    }
}

fn map(
    name: &'static str,
    src: &HomologyPresentation,
    dst: &HomologyPresentation,
    f: impl Fn(&UChain) -> Result<UChain>,
) -> Result<ClassMap> {
    Ok(ClassMap {
        name,
        matrix: class_matrix(src, dst, f)?,
        stability: src.stability.worst(dst.stability),
    })
}

/// Rank of a family of cycles in homology: `rank(B + span(v)) - rank(B)`.
pub fn class_rank(h: &HomologyPresentation, vectors: &[F2Vec]) -> Result<usize> {
    let coords: Vec<F2Vec> = vectors
        .iter()
        .map(|v| h.quotient.coordinates(v))
        .collect::<Result<_>>()?;
    let m = F2Matrix::from_columns(h.dim(), &coords);
    Ok(rank_kernel_image(&m).0)
}
