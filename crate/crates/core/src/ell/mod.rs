//! The algebraic models `ℓ`, `ℓ̃`, `𝓛`, `ℓ⁺`, `ℓ^per` as homogeneous
//! quotient spaces with canonical bases, and their structural maps.
//!
//! Each piece `(n, w)` is computed as the span of normal monomials modulo
//! all relation instances over standard-monomial arguments, multiplied by
//! all normal monomials of the complementary bidegree.

mod maps;
mod monomial;
mod space;

pub use maps::{differential, EllContext, OmegaU};
pub use monomial::{EllElement, EllMonomial, EllRing, Flavor, ModuleGen};
pub use space::{build_space, enumerate, relation_instances, EllSpace};

use crate::f2linalg::{rank, F2Matrix};

/// `dim Ker(g) == rank(f)` and `g∘f = 0` for consecutive maps `f`, `g`.
pub fn exact_at(f: &F2Matrix, g: &F2Matrix) -> bool {
    let composite_zero = f.ncols() == 0 || g.nrows() == 0 || g.mul(f).is_zero();
    composite_zero && g.ncols() - rank(g) == rank(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derham::OmegaForm;
    use crate::gralg::{Algebra, GradingMode, Poly, Weight};

    fn f2() -> Algebra {
        Algebra::polynomial("F2", &[]).unwrap()
    }

    fn fx() -> Algebra {
        Algebra::polynomial("Fx", &[("x", 1)]).unwrap()
    }

    fn fxy() -> Algebra {
        Algebra::polynomial("Fxy", &[("x", 1), ("y", 1)]).unwrap()
    }

    fn dual() -> Algebra {
        Algebra::from_strings("D", GradingMode::Ungraded, &[("x", 0)], &["x^2"]).unwrap()
    }

    fn f4() -> Algebra {
        Algebra::from_strings("F4", GradingMode::Ungraded, &[("x", 0)], &["x^2 + x + 1"]).unwrap()
    }

    fn w(a: &Algebra, d: u32) -> Vec<Weight> {
        a.weights_of_degree(d)
    }

    fn p(a: &Algebra, s: &str) -> Poly {
        a.parse(s).unwrap()
    }

    #[test]
    fn ell_of_f2_is_polynomial_in_u() {
        let a = f2();
        let cx = EllContext::new(&a);
        for n in -6..=3 {
            let s = cx.space(Flavor::Ell, n, &a.zero_weight()).unwrap();
            assert_eq!(s.dim(), usize::from(n <= 0 && n % 2 == 0), "n = {n}");
        }
    }

    #[test]
    fn derived_identities_hold() {
        let a = fx();
        let ring = EllRing::new(&a, Flavor::Ell);
        assert!(ring.delta(&a.one()).is_zero());
        assert!(ring.q(&a.one()).is_zero());
        assert_eq!(ring.phi(&a.one()), ring.one());
        // δ(x²) vanishes in the quotient.
        let cx = EllContext::new(&a);
        let s = cx.space(Flavor::Ell, 1, &w(&a, 2)[0]).unwrap();
        assert!(s.is_zero(&ring.delta(&p(&a, "x^2"))).unwrap());
        assert!(!s.is_zero(&ring.q(&p(&a, "x"))).unwrap());
    }

    #[test]
    fn deformation_model_dimensions() {
        for a in [fx(), fxy()] {
            let cx = EllContext::new(&a);
            for d in 0..=6 {
                for wt in w(&a, d) {
                    for n in -2..=3 {
                        let s = cx.space(Flavor::EllTilde, n, &wt).unwrap();
                        assert_eq!(s.dim(), cx.omega_u_dim(n, &wt).unwrap(), "n = {n}, weight {wt}");
                        let m = cx.f_bar_matrix(n, &wt).unwrap();
                        assert_eq!(crate::f2linalg::rank(&m), s.dim());
                    }
                }
            }
        }
    }

    #[test]
    fn script_l_kills_u() {
        let a = fx();
        let cx = EllContext::new(&a);
        for n in -4..0 {
            assert_eq!(cx.space(Flavor::ScriptL, n, &w(&a, 0)[0]).unwrap().dim(), 0);
        }
        assert_eq!(cx.space(Flavor::ScriptL, 0, &w(&a, 0)[0]).unwrap().dim(), 1);
    }

    #[test]
    fn r_and_tau_examples() {
        let a = fx();
        let cx = EllContext::new(&a);
        let ring = cx.ring(Flavor::Ell);
        let dx = OmegaForm::from_term(a.one_monomial(), 1);
        let m = ring.delta(&p(&a, "x"));
        assert_eq!(cx.r_form(m.terms().next().unwrap()).unwrap(), dx);
        let m = ring.phi(&p(&a, "x"));
        assert_eq!(
            cx.r_form(m.terms().next().unwrap()).unwrap(),
            OmegaForm::from_term(a.monomial(&[2]), 0)
        );
        let m = ring.mul(&ring.u_power(1), &ring.phi(&p(&a, "x"))).unwrap();
        assert!(cx.r_form(m.terms().next().unwrap()).unwrap().is_zero());
        let one = OmegaForm::from_term(a.one_monomial(), 0);
        assert!(cx.tau(&one).unwrap().is_zero());
        let xdx = OmegaForm::from_term(a.monomial(&[1]), 1);
        assert!(cx.tau(&xdx).unwrap().is_zero());
        let x = OmegaForm::from_term(a.monomial(&[1]), 0);
        assert_eq!(cx.tau(&x).unwrap(), ring.delta(&p(&a, "x")));
    }

    #[test]
    fn star_product_examples() {
        let a = fxy();
        let x = OmegaU::from_form(0, OmegaForm::from_term(a.monomial(&[1, 0]), 0));
        let y = OmegaU::from_form(0, OmegaForm::from_term(a.monomial(&[0, 1]), 0));
        let mut want = OmegaU::from_form(0, OmegaForm::from_term(a.monomial(&[1, 1]), 0));
        want.add_at(1, &OmegaForm::from_term(a.one_monomial(), 3));
        assert_eq!(x.star(&a, &y), want);
        assert_eq!(x.star(&a, &x), OmegaU::from_form(0, OmegaForm::from_term(a.monomial(&[2, 0]), 0)));
        let one = OmegaU::from_form(0, OmegaForm::from_term(a.one_monomial(), 0));
        assert_eq!(one.star(&a, &y), y);
    }

    #[test]
    fn f_bar_and_s_bar_are_inverse() {
        let a = fxy();
        let cx = EllContext::new(&a);
        for d in 0..=4 {
            for wt in w(&a, d) {
                for n in -2..=2 {
                    let s = cx.space(Flavor::EllTilde, n, &wt).unwrap();
                    for k in 0..s.dim() {
                        let x = s.basis_element(k);
                        let back = cx.s_bar(&cx.f_bar(&x).unwrap()).unwrap();
                        assert_eq!(s.coordinates(&back).unwrap(), s.coordinates(&x).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn module_map_examples() {
        let a = fxy();
        let cx = EllContext::new(&a);
        let plus = cx.ring(Flavor::EllPlus);
        let xdy = OmegaForm::from_term(a.monomial(&[1, 0]), 2);
        let want = plus.mul(&plus.gamma(&p(&a, "x")), &plus.delta(&p(&a, "y"))).unwrap();
        assert_eq!(cx.i_map(&xdy).unwrap(), want);
        let v = plus.v(2);
        assert!(cx.d_form(v.terms().next().unwrap()).unwrap().is_zero());
        let per = cx.ring(Flavor::EllPer);
        let um = per.u_power(-1);
        assert_eq!(cx.s_image(um.terms().next().unwrap()).unwrap(), plus.v(0));
        assert_eq!(plus.gamma(&a.one()), plus.v(0));
    }

    /// Multiplying a relation by a generator gives zero in the target space,
    /// so the spanned relations form an ideal in every bidegree checked.
    #[test]
    fn relation_span_is_an_ideal() {
        for (a, names, max_d) in [(fxy(), vec!["x", "y"], 3), (f4(), vec!["x"], 0)] {
            let cx = EllContext::new(&a);
            let ring = cx.ring(Flavor::Ell);
            let mut checked = 0usize;
            let mut multipliers = vec![ring.u_power(1)];
            for g in &names {
                let g = p(&a, g);
                multipliers.extend([ring.delta(&g), ring.q(&g), ring.phi(&g)]);
            }
            for d in 0..=max_d {
                for wt in w(&a, d) {
                    for n in -2..=2 {
                        let s = cx.space(Flavor::Ell, n, &wt).unwrap();
                        for v in s.relation_span().vectors() {
                            let r = s.element_of_vector(v);
                            for m in &multipliers {
                                let prod = ring.mul(m, &r).unwrap();
                                let Some((n2, w2)) = prod.bidegree(&a) else { continue };
                                let t = cx.space(Flavor::Ell, n2, &w2).unwrap();
                                assert!(t.is_zero(&prod).unwrap(), "{} n = {n}, weight {wt}", a.name());
                                checked += 1;
                            }
                        }
                    }
                }
            }
            assert!(checked > 0, "{}: no nonzero products", a.name());
        }
    }

    #[test]
    fn sequences_are_complexes_and_exact_after_tau() {
        for a in [fx(), dual(), f4()] {
            let cx = EllContext::new(&a);
            let weights: Vec<Weight> = if a.grading() == crate::gralg::WeightGrading::Trivial {
                vec![a.zero_weight()]
            } else {
                (0..=4).flat_map(|d| w(&a, d)).collect()
            };
            for wt in &weights {
                for n in -1..=3 {
                    let tau = cx.tau_matrix(n, wt).unwrap();
                    let u = cx.u_matrix(Flavor::Ell, n + 1, wt).unwrap();
                    assert!(exact_at(&tau, &u), "{} n = {n}, weight {wt}", a.name());
                    let r = cx.r_matrix(Flavor::Ell, n, wt).unwrap();
                    let u_in = cx.u_matrix(Flavor::Ell, n + 2, wt).unwrap();
                    assert!(u_in.ncols() == 0 || r.nrows() == 0 || r.mul(&u_in).is_zero());
                    assert!(r.ncols() == 0 || tau.nrows() == 0 || tau.mul(&r).is_zero());
                }
            }
        }
    }

    #[test]
    fn polynomial_sequences_are_exact() {
        let a = fx();
        let cx = EllContext::new(&a);
        for d in 0..=5 {
            let wt = &w(&a, d)[0];
            for n in -2..=3 {
                let u = cx.u_matrix(Flavor::Ell, n + 2, wt).unwrap();
                let r = cx.r_matrix(Flavor::Ell, n, wt).unwrap();
                let tau = cx.tau_matrix(n, wt).unwrap();
                let u_next = cx.u_matrix(Flavor::Ell, n + 1, wt).unwrap();
                assert!(exact_at(&u, &r), "im u = ker r at n = {n}, d = {d}");
                assert!(exact_at(&r, &tau), "im r = ker τ at n = {n}, d = {d}");
                assert!(exact_at(&tau, &u_next));
                // ℓ⁺: Ω^{n} →I ℓ⁺_n →u ℓ⁺_{n-2} →D Ω^{n-1} →I ℓ⁺_{n-1}.
                let i = cx.i_matrix(n, wt).unwrap();
                let up = cx.u_matrix(Flavor::EllPlus, n, wt).unwrap();
                let dm = cx.d_matrix(n - 2, wt).unwrap();
                let i_next = cx.i_matrix(n - 1, wt).unwrap();
                assert!(exact_at(&i, &up), "ℓ⁺ at I, n = {n}, d = {d}");
                assert!(exact_at(&up, &dm), "ℓ⁺ at u, n = {n}, d = {d}");
                assert!(exact_at(&dm, &i_next), "ℓ⁺ at D, n = {n}, d = {d}");
                // ℓ →ι ℓ^per →S ℓ⁺ →∂ ℓ.
                let iota = cx.iota_matrix(n, wt).unwrap();
                let s = cx.s_matrix(n, wt).unwrap();
                let pa = cx.partial_matrix(n - 2, wt).unwrap();
                let iota_next = cx.iota_matrix(n - 1, wt).unwrap();
                assert!(exact_at(&iota, &s), "per at ι, n = {n}, d = {d}");
                assert!(exact_at(&s, &pa), "per at S, n = {n}, d = {d}");
                assert!(exact_at(&pa, &iota_next), "per at ∂, n = {n}, d = {d}");
            }
        }
    }

    #[test]
    fn associated_graded_matches_the_model() {
        let a = fx();
        let cx = EllContext::new(&a);
        for d in 0..=6 {
            let wt = &w(&a, d)[0];
            for n in -4..=2 {
                assert_eq!(
                    cx.gr_ell(n, wt, 0).unwrap(),
                    cx.space(Flavor::ScriptL, n, wt).unwrap().dim()
                );
                for i in 1..4 {
                    assert_eq!(cx.gr_ell(n, wt, i).unwrap(), cx.gr_model(n, wt, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn plus_filtration_and_v0() {
        let a = fx();
        let cx = EllContext::new(&a);
        for d in 0..=5 {
            let wt = &w(&a, d)[0];
            for n in 0..=5 {
                let i = cx.i_matrix(n, wt).unwrap();
                assert_eq!(cx.plus_filtration_dim(n, wt, 0).unwrap(), crate::f2linalg::rank(&i));
                for s in 1..=3 {
                    let step = cx.plus_filtration_dim(n, wt, s).unwrap()
                        - cx.plus_filtration_dim(n, wt, s - 1).unwrap();
                    let want = cx.space(Flavor::OmegaTilde, n - 2 * s, wt).unwrap().dim();
                    assert_eq!(step, want, "n = {n}, d = {d}, s = {s}");
                }
                let v0 = cx.v0_matrix(n, wt).unwrap();
                assert_eq!(crate::f2linalg::rank(&v0), v0.ncols());
            }
        }
    }
}
