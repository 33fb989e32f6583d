//! Exact linear algebra over F₂ on packed bit vectors.
//!
//! Elimination always picks the lowest-index available pivot column, so every
//! basis produced here is reproducible bit for bit.

mod echelon;
mod matrix;
mod vector;

pub use echelon::{
    quotient_coordinates, rank, rank_kernel_image, solve, Echelon, LinearSolver, QuotientMap,
    SubspaceBasis,
};
pub use matrix::F2Matrix;
pub use vector::{F2Vec, Ones};

#[cfg(test)]
mod tests {
    use super::*;

    fn v(bits: &[u8]) -> F2Vec {
        F2Vec::from_bools(&bits.iter().map(|&b| b == 1).collect::<Vec<_>>())
    }

    #[test]
    fn empty_matrix() {
        let (r, k, i) = rank_kernel_image(&F2Matrix::zeros(0, 0));
        assert_eq!((r, k.dim(), i.dim()), (0, 0, 0));
    }

    #[test]
    fn identity_matrix() {
        let (r, k, _) = rank_kernel_image(&F2Matrix::identity(3));
        assert_eq!((r, k.dim()), (3, 0));
    }

    #[test]
    fn all_ones_two_by_two() {
        let m = F2Matrix::from_positions(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let (r, k, i) = rank_kernel_image(&m);
        assert_eq!(r, 1);
        assert_eq!(i.dim(), 1);
        assert_eq!(k.vectors(), &[v(&[1, 1])]);
    }

    #[test]
    fn positions_are_validated() {
        assert!(F2Matrix::from_positions(2, 2, [(2, 0)]).is_err());
        assert!(F2Matrix::from_positions(2, 2, [(1, 1), (1, 1)]).is_err());
    }

    #[test]
    fn solve_examples() {
        let id = F2Matrix::identity(3);
        assert_eq!(solve(&id, &F2Vec::unit(3, 0)).unwrap(), Some(F2Vec::unit(3, 0)));
        let z = F2Matrix::zeros(2, 2);
        assert_eq!(solve(&z, &F2Vec::unit(2, 1)).unwrap(), None);
        let m = F2Matrix::from_positions(1, 2, [(0, 0), (0, 1)]).unwrap();
        assert_eq!(solve(&m, &F2Vec::zeros(1)).unwrap(), Some(F2Vec::zeros(2)));
        assert!(solve(&m, &F2Vec::zeros(2)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let amb = 3;
        let z = SubspaceBasis::span(amb, [&v(&[1, 0, 0]), &v(&[0, 1, 0])]);
        let b = SubspaceBasis::span(amb, [&v(&[1, 1, 0])]);
        let c = quotient_coordinates(&z, &b, &v(&[1, 0, 0])).unwrap();
        assert_eq!(c.len(), 1);
        assert!(!c.is_zero());
        assert!(quotient_coordinates(&z, &b, &v(&[1, 1, 0])).unwrap().is_zero());
        assert!(quotient_coordinates(&z, &z, &v(&[0, 1, 0])).unwrap().is_zero());
        let zero = SubspaceBasis::zero(amb);
        let c = quotient_coordinates(&z, &zero, &z.vectors()[1]).unwrap();
        assert_eq!(c, F2Vec::unit(2, 1));
        assert!(quotient_coordinates(&z, &b, &v(&[0, 0, 1])).is_err());
        assert!(matches!(
            QuotientMap::new(b.clone(), z.clone()),
            Err(crate::Error::Internal(_))
        ));
    }

    #[test]
    fn rref_is_canonical() {
        let a = SubspaceBasis::span(4, [&v(&[1, 1, 0, 1]), &v(&[0, 1, 1, 0])]);
        let b = SubspaceBasis::span(4, [&v(&[1, 0, 1, 1]), &v(&[0, 1, 1, 0])]);
        assert_eq!(a, b);
        assert!(a.is_valid());
    }

    #[test]
    fn vector_bit_ops() {
        let mut x = F2Vec::zeros(130);
        x.set(0, true);
        x.set(64, true);
        x.set(129, true);
        assert_eq!(x.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(x.next_one(1), Some(64));
        assert_eq!(x.count_ones(), 3);
        let y = x.concat(&F2Vec::unit(2, 1));
        assert_eq!(y.ones().collect::<Vec<_>>(), vec![0, 64, 129, 131]);
        assert_eq!(y.slice(64, 68).ones().collect::<Vec<_>>(), vec![0, 65, 67]);
    }
}
