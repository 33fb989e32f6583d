use super::homology::{class_matrix, HomologyPresentation};
use super::tower::{Bounds, Towers};
use crate::error::Result;
use crate::f2linalg::{rank_kernel_image, F2Matrix, QuotientMap};
use crate::gralg::Weight;
use crate::hochschild::{connes_b, Theory, UChain};
use serde::Serialize;

/// One entry of the column-filtration spectral sequence.
#[derive(Clone, Debug, Serialize)]
pub struct PageEntry {
    pub page: u8,
    pub s: i64,
    pub t: i64,
    pub weight: Weight,
    pub dim: usize,
    /// Representatives as Hochschild chains (column `s` suppressed).
    #[serde(skip)]
    pub representatives: Vec<UChain>,
}

fn in_bounds(b: Bounds, s: i64) -> bool {
    b.lo.is_none_or(|lo| s >= lo as i64) && b.hi.is_none_or(|hi| s <= hi as i64)
}

impl Towers<'_> {
    fn hh(&self, m: i64, w: &Weight) -> Result<HomologyPresentation> {
        self.homology(Bounds::HH, m, w, 0)
    }

    /// `d¹ = B_*: HH_m → HH_{m+1}` in class coordinates.
    pub fn connes_on_hh(&self, m: i64, w: &Weight) -> Result<F2Matrix> {
        let src = self.hh(m, w)?;
        let dst = self.hh(m + 1, w)?;
        let alg = self.algebra();
        class_matrix(&src, &dst, |x| {
            let c = x.get(0).cloned().unwrap_or_default();
            UChain::single(Theory::Minus, 0, connes_b(alg, &c))
        })
    }

    /// `E¹_{s,t} = HH_{t-s}` for `α ≤ s ≤ β`, zero otherwise.
    pub fn e1_page(&self, bounds: Bounds, s: i64, t: i64, w: &Weight) -> Result<PageEntry> {
        let mut e = PageEntry {
            page: 1,
            s,
            t,
            weight: w.clone(),
            dim: 0,
            representatives: Vec::new(),
        };
        if in_bounds(bounds, s) && t - s >= 0 {
            let h = self.hh(t - s, w)?;
            e.dim = h.dim();
            e.representatives = (0..h.dim()).map(|k| h.class_chain(k)).collect();
        }
        Ok(e)
    }

    /// `E²_{s,t}`: homology of `E¹_{s+1,t} → E¹_{s,t} → E¹_{s-1,t}` under `d¹`.
    pub fn e2_page(&self, bounds: Bounds, s: i64, t: i64, w: &Weight) -> Result<PageEntry> {
        let mut e = self.e1_page(bounds, s, t, w)?;
        e.page = 2;
        if e.dim == 0 {
            return Ok(e);
        }
        let m = t - s;
        let h = self.hh(m, w)?;
        let out = if in_bounds(bounds, s - 1) {
            self.connes_on_hh(m, w)?
        } else {
            F2Matrix::zeros(0, h.dim())
        };
        let inc = if in_bounds(bounds, s + 1) && m >= 1 {
            self.connes_on_hh(m - 1, w)?
        } else {
            F2Matrix::zeros(h.dim(), 0)
        };
        let (_, cycles, _) = rank_kernel_image(&out);
        let (_, _, boundaries) = rank_kernel_image(&inc);
        let q = QuotientMap::new(cycles, boundaries)?;
        e.dim = q.dim();
        e.representatives = q
            .representatives()
            .iter()
            .map(|v| h.representative_of(v))
            .collect();
        Ok(e)
    }
}
