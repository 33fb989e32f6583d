use super::tower::{Bounds, TowerBasis, Towers};
use crate::error::{internal, Result};
use crate::f2linalg::{rank_kernel_image, F2Matrix, F2Vec, QuotientMap, SubspaceBasis};
use crate::gralg::Weight;
use crate::hochschild::UChain;
use serde::Serialize;

/// How far a computed homology group can be trusted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    /// No column was dropped: the answer is exact.
    Exact,
    /// Columns were dropped but windows `S` and `S+1` give isomorphic
    /// answers under the projection.
    Stable,
    /// Windows `S` and `S+1` disagree.
    TruncationLimited,
}

impl Stability {
    pub fn is_stable(self) -> bool {
        self != Stability::TruncationLimited
    }

    pub fn label(self) -> &'static str {
        if self.is_stable() {
            "stable"
        } else {
            "truncation_limited"
        }
    }

    pub fn worst(self, other: Stability) -> Stability {
        self.max(other)
    }
}

/// `H_n` of a tower in one weight: cycles, boundaries, and class coordinates.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    pub basis: TowerBasis,
    pub quotient: QuotientMap,
    pub stability: Stability,
}

impl HomologyPresentation {
    pub fn n(&self) -> i64 {
        self.basis.n
    }

    pub fn weight(&self) -> &Weight {
        &self.basis.weight
    }

    pub fn bounds(&self) -> Bounds {
        self.basis.bounds
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn cycles(&self) -> &SubspaceBasis {
        self.quotient.cycles()
    }

    pub fn boundaries(&self) -> &SubspaceBasis {
        self.quotient.boundaries()
    }

    /// Class coordinates of a cycle given as a chain.
    pub fn coordinates(&self, x: &UChain) -> Result<F2Vec> {
        let (v, _) = self.basis.vector_of(x)?;
        self.quotient.coordinates(&v)
    }

    /// Whether the chain is a boundary (its class vanishes).
    pub fn is_boundary(&self, x: &UChain) -> Result<bool> {
        let (v, _) = self.basis.vector_of(x)?;
        Ok(self.quotient.boundaries().contains(&v))
    }

    /// The chosen representative cycle of the `k`-th basis class.
    pub fn class_chain(&self, k: usize) -> UChain {
        self.basis.chain_of(&self.quotient.representatives()[k])
    }

    pub fn representative_of(&self, coords: &F2Vec) -> UChain {
        self.basis.chain_of(&self.quotient.representative(coords))
    }
}

impl Towers<'_> {
    /// Homology of `T^{α,β}` at `(n, w)`. When `α = -∞` and columns were
    /// dropped, the computation is repeated with `columns + 1` and the
    /// projection between the two answers decides the stability flag.
    pub fn homology(&self, bounds: Bounds, n: i64, w: &Weight, columns: i32) -> Result<HomologyPresentation> {
        let h = self.raw_homology(bounds, n, w, columns)?;
        if !h.basis.truncated {
            return Ok(h);
        }
        let wider = self.raw_homology(bounds, n, w, columns + 1)?;
        let mut stability = Stability::TruncationLimited;
        if wider.dim() == h.dim() {
            let m = class_matrix(&wider, &h, |x| Ok(x.clone()))?;
            if crate::f2linalg::rank(&m) == h.dim() {
                stability = Stability::Stable;
            }
        }
        Ok(HomologyPresentation { stability, ..h })
    }

    fn raw_homology(&self, bounds: Bounds, n: i64, w: &Weight, columns: i32) -> Result<HomologyPresentation> {
        let out = self.build_tower(bounds, n, w, columns)?;
        let inc = self.build_tower(bounds, n + 1, w, columns)?;
        let (_, cycles, _) = rank_kernel_image(&out.differential);
        let (_, _, boundaries) = rank_kernel_image(&inc.differential);
        if !out.differential.mul(&inc.differential).is_zero() {
            return Err(internal(format!(
                "tower differential does not square to zero at n = {n}, weight {w}"
            )));
        }
        let quotient = QuotientMap::new(cycles, boundaries)?;
        Ok(HomologyPresentation {
            basis: out.source,
            quotient,
            stability: Stability::Exact,
        })
    }
}

/// The matrix, in class coordinates, of the map induced by a chain map `f`.
pub fn class_matrix(
    src: &HomologyPresentation,
    dst: &HomologyPresentation,
    f: impl Fn(&UChain) -> Result<UChain>,
) -> Result<F2Matrix> {
    let mut cols = Vec::with_capacity(src.dim());
    for k in 0..src.dim() {
        let image = f(&src.class_chain(k))?;
        cols.push(dst.coordinates(&image)?);
    }
    Ok(F2Matrix::from_columns(dst.dim(), &cols))
}

/// The matrix of a chain map between two tower bases.
pub fn chain_matrix(
    src: &TowerBasis,
    dst: &TowerBasis,
    f: impl Fn(&UChain) -> UChain,
) -> Result<F2Matrix> {
    let mut cols = Vec::with_capacity(src.len());
    for j in 0..src.len() {
        cols.push(dst.vector_of(&f(&src.chain_of_index(j)))?.0);
    }
    Ok(F2Matrix::from_columns(dst.len(), &cols))
}
