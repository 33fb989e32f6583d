use super::*;
use crate::cyclic::LesKind;
use crate::f2linalg::F2Vec;
use crate::gralg::GradingMode;
use crate::hochschild::{BarWord, Chain};

fn f2() -> Algebra {
    Algebra::polynomial("F2", &[]).unwrap()
}

fn fx() -> Algebra {
    Algebra::polynomial("Fx", &[("x", 1)]).unwrap()
}

fn fxyz() -> Algebra {
    Algebra::polynomial("Fxyz", &[("x", 1), ("y", 1), ("z", 1)]).unwrap()
}

fn dual() -> Algebra {
    Algebra::from_strings("D", GradingMode::Ungraded, &[("x", 0)], &["x^2"]).unwrap()
}

fn chain(alg: &Algebra, text: &str) -> Chain {
    Chain::parse(alg, text).unwrap()
}

fn mono(alg: &Algebra, text: &str) -> Monomial {
    alg.parse(text).unwrap().leading().unwrap().clone()
}

fn opts(d: u32, n: i64) -> ApproxOptions {
    ApproxOptions {
        max_internal: d,
        max_homological: n,
        columns: 3,
        seed: 7,
        samples: 20,
    }
}

#[test]
fn generator_images_match_the_stated_chains() {
    let a = fx();
    let ap = Approximation::new(&a);
    let x = mono(&a, "x");
    let d = ap.generator_image(&EllGenerator::Delta(x.clone()), Theory::Minus).unwrap();
    assert_eq!(d, UChain::single(Theory::Minus, 0, chain(&a, "1[x]")).unwrap());
    let q = ap.generator_image(&EllGenerator::Q(x.clone()), Theory::Minus).unwrap();
    assert_eq!(q, UChain::single(Theory::Minus, 0, chain(&a, "x[x]")).unwrap());
    // The image of φ(a) is the square of 1⊗a[].
    let phi = ap.generator_image(&EllGenerator::Phi(x.clone()), Theory::Minus).unwrap();
    let ax = UChain::single(Theory::Minus, 0, chain(&a, "x[]")).unwrap();
    assert_eq!(phi, mu_chain(&a, &ax, &ax).unwrap());
    let mut expected = UChain::single(Theory::Minus, 0, chain(&a, "x^2[]")).unwrap();
    expected.add_at(1, &chain(&a, "1[x|x]"));
    assert_eq!(phi, expected);
}

#[test]
fn psi_examples() {
    let a = fx();
    let ap = Approximation::new(&a);
    let x = Poly::from_monomial(mono(&a, "x"));
    let w = a.weight(&mono(&a, "x"));
    let ring = ap.ell().ring(Flavor::Ell);
    // ψ(u·δ(x)) = u⊗1[x] is the boundary of 1⊗x[].
    let ud = ring.mul(&ring.u_power(1), &ring.delta(&x)).unwrap();
    assert!(ud.is_zero());
    let raw = EllElement::from_monomial(EllMonomial {
        u: 1,
        delta: vec![mono(&a, "x")],
        ..EllMonomial::one()
    });
    let chain_ud = ap.psi_element_chain(Flavor::Ell, &raw).unwrap();
    let target = ap.homology(Bounds::MINUS, -1, &w, 3).unwrap();
    assert!(target.is_boundary(&chain_ud).unwrap());
    // ψ(φ(1)) is the unit.
    let zero = a.zero_weight();
    let unit = ring.phi(&a.one());
    let h0 = ap.homology(Bounds::MINUS, 0, &zero, 3).unwrap();
    let c = ap.psi_class(Flavor::Ell, &unit, 0, &zero, 3).unwrap();
    assert_eq!(c, h0.coordinates(&UChain::unit(&a, Theory::Minus)).unwrap());
    assert_eq!(c.count_ones(), 1);
    // ψ⁺(v⁰) is the class of 1 in HC₀.
    let plus = ap.ell().ring(Flavor::EllPlus);
    let c = ap.psi_class(Flavor::EllPlus, &plus.v(0), 0, &zero, 3).unwrap();
    let hc0 = ap.homology(Bounds::PLUS, 0, &zero, 3).unwrap();
    assert_eq!(c, hc0.coordinates(&UChain::unit(&a, Theory::Plus)).unwrap());
    assert_eq!(c.count_ones(), 1);
}

/// `∂⁻` of each witness equals the image of the corresponding relation.
#[test]
fn boundary_witnesses() {
    let a = fxyz();
    let ap = Approximation::new(&a);
    let m = |s: &str| mono(&a, s);
    let g = |e: EllGenerator| ap.generator_image(&e, Theory::Minus).unwrap();
    let mul = |x: &UChain, y: &UChain| mu_chain(&a, x, y).unwrap();
    let c0 = |s: &str| UChain::single(Theory::Minus, 0, chain(&a, s)).unwrap();
    let c1 = |s: &str| UChain::single(Theory::Minus, 1, chain(&a, s)).unwrap();
    let del = |x: UChain| tower_boundary(&a, &x);
    let (d, p, q) = (EllGenerator::Delta, EllGenerator::Phi, EllGenerator::Q);

    assert_eq!(del(c0("1[x|y]")), c0("1[x*y] + x[y] + y[x]"));

    let delta_triple = mul(&g(d(m("x*y"))), &g(d(m("z"))))
        .add(&mul(&g(d(m("y*z"))), &g(d(m("x")))))
        .add(&mul(&g(d(m("x*z"))), &g(d(m("y")))));
    assert_eq!(del(c0("1[x|y|z] + 1[y|z|x] + 1[z|x|y]")), delta_triple);

    let u = g(EllGenerator::U);
    let phi_product = g(p(m("x*y")))
        .add(&mul(&g(p(m("x"))), &g(p(m("y")))))
        .add(&mul(&u, &mul(&g(q(m("x"))), &g(q(m("y"))))));
    assert_eq!(del(c1("1[x|y|x*y] + 1[x|x|y^2] + x[y|x|y] + x[x|y|y]")), phi_product);

    let q_product = g(q(m("x*y")))
        .add(&mul(&g(q(m("x"))), &g(p(m("y")))))
        .add(&mul(&g(p(m("x"))), &g(q(m("y")))));
    assert_eq!(
        del(c0("x*y[x|y]").add(&c1("1[x|y|y|x] + 1[y|x|x|y] + 1[y|x|y|x]"))),
        q_product
    );

    let delta_phi = mul(&g(d(m("x"))), &g(p(m("y"))))
        .add(&g(d(m("x*y^2"))));
    assert_eq!(del(c0("1[x|y^2] + x[y|y]")), delta_phi);

    let delta_q = mul(&g(d(m("x"))), &g(q(m("y"))))
        .add(&mul(&g(d(m("x*y"))), &g(d(m("y")))));
    assert_eq!(del(c0("1[y|x|y]")), delta_q);

    assert_eq!(del(c0("x[]")), mul(&u, &g(d(m("x")))));
    assert_eq!(mul(&u, &g(d(m("x")))), c1("1[x]"));
}

#[test]
fn psi_on_polynomial_ring_is_iso() {
    let a = fx();
    for theory in [HomologyTheory::HcMinus, HomologyTheory::Hc, HomologyTheory::HcPer] {
        let r = verify_approximation(&a, theory, &opts(4, 4)).unwrap();
        assert!(r.is_iso_everywhere(), "{theory:?}: {:?}", r.non_iso());
        assert!(r.all_stable());
        assert!(r.well_defined());
        assert!(r.spot_checks_pass());
        assert!(r.squares_vanish(), "{:?}", r.squares.iter().filter(|s| s.residual > 0).collect::<Vec<_>>());
    }
}

#[test]
fn psi_on_ground_field() {
    let a = f2();
    let r = verify_approximation(&a, HomologyTheory::HcMinus, &opts(0, 6)).unwrap();
    assert!(r.is_iso_everywhere());
    for rec in &r.records {
        let expected = usize::from(rec.n <= 0 && rec.n % 2 == 0);
        assert_eq!((rec.source_dim, rec.target_dim), (expected, expected), "n = {}", rec.n);
    }
}

#[test]
fn psi_on_dual_numbers_fails_somewhere() {
    let a = dual();
    let r = verify_approximation(&a, HomologyTheory::HcMinus, &opts(4, 4)).unwrap();
    assert!(r.well_defined());
    let bad = r.non_iso();
    assert!(!bad.is_empty());
    let w2 = Weight::from_slice(&[2]);
    let rec = r.records.iter().find(|x| x.n == 2 && x.weight == w2).unwrap();
    assert_eq!((rec.source_dim, rec.target_dim), (0, 1));
    assert_eq!(rec.verdict, Verdict::NonIso);
}

#[test]
fn chain_connecting_maps_agree_with_snake_lemma() {
    let a = fx();
    let ap = Approximation::new(&a);
    for d in 1..=3u32 {
        for w in a.weights_of_degree(d) {
            let cols = window_columns(&a, &w, -4, 3);
            for n in 0..=3i64 {
                let les = ap.towers().les_maps(LesKind::MinusLes, n, &w, cols).unwrap();
                let hh = ap.homology(Bounds::HH, n, &w, cols).unwrap();
                let m1 = ap.homology(Bounds::MINUS, n + 1, &w, cols).unwrap();
                for k in 0..hh.dim() {
                    let y = connecting_chain(&a, &hh.class_chain(k), Theory::Minus).unwrap();
                    assert_eq!(m1.coordinates(&y).unwrap(), les.connecting.matrix.column(k));
                }
                let les = ap.towers().les_maps(LesKind::Connes, n + 2, &w, cols).unwrap();
                let hc = ap.homology(Bounds::PLUS, n, &w, cols).unwrap();
                let hh1 = ap.homology(Bounds::HH, n + 1, &w, cols).unwrap();
                for k in 0..hc.dim() {
                    let y = connecting_chain(&a, &hc.class_chain(k), Theory::Minus).unwrap();
                    assert_eq!(hh1.coordinates(&y).unwrap(), les.connecting.matrix.column(k));
                }
            }
        }
    }
    let _ = (F2Vec::zeros(0), BarWord::new(a.one_monomial(), vec![]));
}
