//! Truncated towers `T^{α,β}`, the four homology theories, the three long
//! exact sequences and the column-filtration spectral sequence.
//!
//! Everything is split by weight. When the weight grading is nontrivial,
//! every bar carries positive weight, so each `(n, w)` piece of a tower has
//! finitely many nonzero columns and the answer is exact. Otherwise the
//! `-∞` bound is replaced by a window `p ≥ -S` and answers are compared at
//! `S` and `S + 1`.

mod homology;
mod les;
mod spectral;
mod tower;

pub use homology::{chain_matrix, class_matrix, HomologyPresentation, Stability};
pub use les::{class_rank, ClassMap, LesKind, LesTriple};
pub use spectral::PageEntry;
pub use tower::{Bounds, HomologyTheory, TowerBasis, TowerSlice, Towers};

use crate::gralg::{Algebra, Weight, WeightGrading};

/// A window size that provably loses nothing at `(n, w)`, when the weight
/// grading bounds the number of bars: bar length `n - 2p` is at most the
/// weight degree `d`, so `S = ⌊(d - n + 2)/2⌋ + 1` always suffices.
pub fn sufficient_columns(alg: &Algebra, n: i64, w: &Weight) -> Option<i32> {
    if alg.grading() == WeightGrading::Trivial {
        return None;
    }
    let d: i64 = w.0.iter().map(|&x| x as i64).sum();
    Some(((d - n + 2).div_euclid(2) + 1).max(1) as i32)
}

/// The window to use at `(n, w)`: the requested one, widened to the
/// sufficient bound when one exists.
pub fn columns_for(alg: &Algebra, n: i64, w: &Weight, requested: i32) -> i32 {
    sufficient_columns(alg, n, w).map_or(requested, |s| s.max(requested))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gralg::GradingMode;
    use crate::hochschild::{BarWord, Chain, Theory, UChain};

    fn f2() -> Algebra {
        Algebra::polynomial("F2", &[]).unwrap()
    }

    fn fx() -> Algebra {
        Algebra::polynomial("Fx", &[("x", 1)]).unwrap()
    }

    fn dual() -> Algebra {
        Algebra::from_strings("D", GradingMode::Ungraded, &[("x", 0)], &["x^2"]).unwrap()
    }

    fn f4() -> Algebra {
        Algebra::from_strings("F4", GradingMode::Ungraded, &[("x", 0)], &["x^2 + x + 1"]).unwrap()
    }

    fn w(a: &Algebra, d: u32) -> Weight {
        a.weights_of_degree(d).into_iter().next().unwrap()
    }

    #[test]
    fn tower_basis_examples() {
        let a = f2();
        let t = Towers::new(&a);
        let s = t.build_tower(Bounds::MINUS, -2, &a.zero_weight(), 3).unwrap();
        assert_eq!(s.basis().len(), 1);
        assert_eq!(s.basis()[0].0, -1);
        let a = fx();
        let t = Towers::new(&a);
        let s = t.build_tower(Bounds::HH, 2, &w(&a, 2), 0).unwrap();
        let want = BarWord::new(a.one_monomial(), vec![a.monomial(&[1]); 2]).unwrap();
        assert_eq!(s.basis(), &[(0, want)]);
        let s = t.build_tower(Bounds::MINUS, 0, &w(&a, 0), 3).unwrap();
        assert_eq!(s.basis().len(), 1);
    }

    #[test]
    fn hc_minus_of_f2() {
        let a = f2();
        let t = Towers::new(&a);
        for n in -6..=3i64 {
            let h = t.homology(Bounds::MINUS, n, &a.zero_weight(), 4).unwrap();
            let want = usize::from(n <= 0 && n % 2 == 0);
            assert_eq!(h.dim(), want, "n = {n}");
            assert!(h.stability.is_stable());
        }
    }

    #[test]
    fn hh_of_polynomial_ring() {
        let a = fx();
        let t = Towers::new(&a);
        for d in 0..5 {
            for n in 0..5i64 {
                let h = t.homology(Bounds::HH, n, &w(&a, d), 0).unwrap();
                let want = usize::from(n == 0 || (n == 1 && d >= 1));
                assert_eq!(h.dim(), want, "n = {n}, d = {d}");
            }
        }
    }

    #[test]
    fn f4_needs_the_window_protocol() {
        let a = f4();
        let t = Towers::new(&a);
        let h = t.homology(Bounds::MINUS, 0, &a.zero_weight(), 2).unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(h.stability, Stability::Stable);
        let h = t.homology(Bounds::HH, 1, &a.zero_weight(), 0).unwrap();
        assert_eq!(h.dim(), 0);
    }

    #[test]
    fn minus_les_is_exact_for_dual_numbers() {
        let a = dual();
        let t = Towers::new(&a);
        for d in 0..4 {
            let wt = w(&a, d);
            let s = columns_for(&a, -3, &wt, 1) + 1;
            let triples: Vec<_> = (-3..=4)
                .map(|n| t.les_maps(LesKind::MinusLes, n, &wt, s).unwrap())
                .collect();
            for (i, tr) in triples.iter().enumerate() {
                assert!(tr.composites_vanish());
                assert!(tr.exact_inside(), "n = {}, d = {d}", tr.n);
                if i > 0 {
                    assert!(triples[i].exact_with_next(&triples[i - 1]));
                }
            }
        }
    }

    #[test]
    fn connecting_map_sends_a0_to_b_a0() {
        let a = fx();
        let t = Towers::new(&a);
        let wt = w(&a, 1);
        let tr = t.les_maps(LesKind::MinusLes, 0, &wt, 3).unwrap();
        // HH_0 = span{x[]}; ∂ x[] = [1⊗1[x]] is nonzero in HC⁻_1.
        assert_eq!(tr.connecting.matrix.nrows(), 1);
        assert_eq!(tr.connecting.rank(), 1);
        let m1 = t.homology(Bounds::MINUS, 1, &wt, 3).unwrap();
        let c = UChain::single(Theory::Minus, 0, Chain::parse(&a, "1[x]").unwrap()).unwrap();
        assert!(!m1.coordinates(&c).unwrap().is_zero());
    }

    #[test]
    fn connes_les_is_exact() {
        let a = fx();
        let t = Towers::new(&a);
        for d in 0..4 {
            let wt = w(&a, d);
            let triples: Vec<_> = (0..=5)
                .map(|n| t.les_maps(LesKind::Connes, n, &wt, 0).unwrap())
                .collect();
            for (i, tr) in triples.iter().enumerate() {
                assert!(tr.composites_vanish());
                assert!(tr.exact_inside());
                if i > 0 {
                    assert!(triples[i].exact_with_next(&triples[i - 1]));
                }
            }
            // I is injective on HH_0 in weight 0.
            if d == 0 {
                assert_eq!(triples[0].first.kernel_dim(), 0);
            }
        }
    }

    #[test]
    fn per_les_is_exact() {
        let a = fx();
        let t = Towers::new(&a);
        for d in 0..4 {
            let wt = w(&a, d);
            for n in -2..=4 {
                let s = columns_for(&a, n, &wt, 1);
                let tr = t.les_maps(LesKind::PerLes, n, &wt, s).unwrap();
                assert!(tr.composites_vanish());
                assert!(tr.exact_inside(), "n = {n}, d = {d}");
            }
        }
    }

    #[test]
    fn e2_of_polynomial_ring() {
        let a = fx();
        let t = Towers::new(&a);
        // Column 0: Ker d on Ω^t; columns s < 0: H_DR^{t-s}.
        for d in 0..5u32 {
            let wt = w(&a, d);
            let e = t.e2_page(Bounds::MINUS, 0, 0, &wt).unwrap();
            assert_eq!(e.dim, usize::from(d % 2 == 0));
            let e = t.e2_page(Bounds::MINUS, 0, 1, &wt).unwrap();
            assert_eq!(e.dim, usize::from(d >= 1));
            let e = t.e2_page(Bounds::MINUS, -1, -1, &wt).unwrap();
            assert_eq!(e.dim, usize::from(d % 2 == 0));
            let e = t.e2_page(Bounds::MINUS, -1, 0, &wt).unwrap();
            assert_eq!(e.dim, usize::from(d % 2 == 0 && d > 0));
            let e = t.e1_page(Bounds::MINUS, 1, 1, &wt).unwrap();
            assert_eq!(e.dim, 0);
        }
    }
}
