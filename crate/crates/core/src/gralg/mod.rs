//! Finitely presented commutative F₂-algebras: Gröbner normal forms, weight
//! gradings, monomial bases and augmentations.

mod algebra;
mod grading;
mod groebner;
mod monomial;
mod parse;
mod poly;

pub use algebra::{Algebra, AlgebraPresentation, Generator, GradingMode};
pub use grading::{Weight, WeightGrading};
pub use groebner::{groebner_basis, reduce};
pub use monomial::{Exponents, Monomial};
pub use parse::{parse_polynomial, PolyParseError};
pub use poly::{AlgebraElement, Poly};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn f4() -> Algebra {
        Algebra::from_strings("F4", GradingMode::Ungraded, &[("x", 0)], &["x^2 + x + 1"]).unwrap()
    }

    fn dual() -> Algebra {
        Algebra::from_strings("D", GradingMode::Ungraded, &[("x", 0)], &["x^2"]).unwrap()
    }

    fn fxy() -> Algebra {
        Algebra::polynomial("Fxy", &[("x", 1), ("y", 1)]).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let a = f4();
        assert_eq!(a.parse("x*x").unwrap(), a.parse("x + 1").unwrap());
        assert!(dual().parse("x*x").unwrap().is_zero());
        assert!(fxy().parse("x*y + y*x").unwrap().is_zero());
        assert!(a.parse("z").is_err());
    }

    #[test]
    fn multiply_examples() {
        let a = f4();
        let x = a.parse("x").unwrap();
        let x1 = a.parse("x + 1").unwrap();
        assert_eq!(a.multiply(&x, &x1), a.one());
        assert_eq!(a.multiply(&x, &a.one()), x);
        let b = fxy();
        assert_eq!(
            b.multiply(&b.parse("x").unwrap(), &b.parse("y").unwrap()),
            b.parse("x*y").unwrap()
        );
    }

    #[test]
    fn degree_basis_examples() {
        let fx = Algebra::polynomial("Fx", &[("x", 1)]).unwrap();
        let b = fx.degree_basis(3).unwrap();
        assert_eq!(b, vec![fx.monomial(&[3])]);
        let b = fxy().degree_basis(2).unwrap();
        assert_eq!(b.len(), 3);
        let b = f4().degree_basis(0).unwrap();
        assert_eq!(b, vec![f4().monomial(&[0]), f4().monomial(&[1])]);
        let inf = Algebra::polynomial("Fu", &[("x", 0)]).unwrap();
        assert!(matches!(inf.degree_basis(0), Err(Error::NotFiniteType(_))));
    }

    #[test]
    fn augmentation_examples() {
        let fx = Algebra::polynomial("Fx", &[("x", 1)]).unwrap();
        assert!(fx.augment(&fx.one()).unwrap());
        assert!(!fx.augment(&fx.parse("x").unwrap()).unwrap());
        assert!(fx.augment(&fx.parse("x^2 + 1").unwrap()).unwrap());
        assert!(matches!(f4().augment(&f4().one()), Err(Error::NotSupplemented(_))));
    }

    #[test]
    fn explicit_inconsistent_augmentation_is_rejected() {
        let mut p = AlgebraPresentation::from_strings("D", GradingMode::Ungraded, &[("x", 0)], &["x^2 + x"])
            .unwrap();
        p.generators[0].augmentation = Some(true);
        assert!(Algebra::new(&p).is_ok());
        let mut p = AlgebraPresentation::from_strings("D", GradingMode::Ungraded, &[("x", 0)], &["x^2 + 1"])
            .unwrap();
        p.generators[0].augmentation = Some(false);
        assert!(matches!(Algebra::new(&p), Err(Error::Presentation(_))));
    }

    #[test]
    fn graded_validation() {
        assert!(matches!(
            Algebra::from_strings("B", GradingMode::Graded, &[("x", 2), ("y", 1)], &["x^2 + y"]),
            Err(Error::Presentation(_))
        ));
        assert!(matches!(
            Algebra::from_strings("B", GradingMode::Graded, &[("x", 0)], &[]),
            Err(Error::DegreeZeroGenerator(_))
        ));
    }

    #[test]
    fn weight_gradings() {
        assert_eq!(fxy().grading(), WeightGrading::PerGenerator);
        assert_eq!(dual().grading(), WeightGrading::PerGenerator);
        assert_eq!(f4().grading(), WeightGrading::Trivial);
        let t = Algebra::from_strings("T", GradingMode::Graded, &[("x", 1), ("y", 2)], &["x^2 + y"])
            .unwrap();
        assert_eq!(t.grading(), WeightGrading::Total);
        assert_eq!(fxy().weights_of_degree(2).len(), 3);
    }

    #[test]
    fn groebner_completion() {
        // x^2 - y, xy - 1 style ideal over F2 in grevlex: the basis is reduced.
        let a = Algebra::from_strings(
            "Q",
            GradingMode::Graded,
            &[("x", 1), ("y", 1), ("z", 1)],
            &["x*y + z^2", "x*z + y^2"],
        )
        .unwrap();
        for d in 0..6 {
            assert_eq!(a.degree_basis(d).unwrap().len(), a.degree_dimension_by_elimination(d));
        }
    }
}
