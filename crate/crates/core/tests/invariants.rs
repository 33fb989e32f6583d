mod common;

use common::{fixture, naive_rank, random_chain};
use cyclo2::f2linalg::{rank, rank_kernel_image, F2Matrix, F2Vec};
use cyclo2::hochschild::{boundary_b, connes_b, shuffle_product};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ALGEBRAS: [&str; 4] = ["fxy", "dual", "f4", "fxyz"];

fn matrix(nrows: usize, ncols: usize, bits: &[bool]) -> F2Matrix {
    let rows = (0..nrows)
        .map(|r| F2Vec::from_bools(&bits[r * ncols..(r + 1) * ncols]))
        .collect();
    F2Matrix::from_rows(ncols, rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hochschild_operators_square_to_zero_and_anticommute(which in 0..ALGEBRAS.len(), seed in any::<u64>()) {
        let a = fixture(ALGEBRAS[which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_chain(&a, &mut rng);
        let b = boundary_b(&a, &c);
        let bb = connes_b(&a, &c);
        prop_assert!(boundary_b(&a, &b).is_zero());
        prop_assert!(connes_b(&a, &bb).is_zero());
        prop_assert!(boundary_b(&a, &bb).add(&connes_b(&a, &b)).is_zero());
    }

    #[test]
    fn shuffle_product_is_commutative_and_satisfies_leibniz(which in 0..2usize, seed in any::<u64>()) {
        let a = fixture(ALGEBRAS[which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_chain(&a, &mut rng);
        let y = random_chain(&a, &mut rng);
        let xy = shuffle_product(&a, &x, &y);
        prop_assert_eq!(&xy, &shuffle_product(&a, &y, &x));
        let leibniz = shuffle_product(&a, &boundary_b(&a, &x), &y)
            .add(&shuffle_product(&a, &x, &boundary_b(&a, &y)));
        prop_assert_eq!(boundary_b(&a, &xy), leibniz);
    }

    #[test]
    fn rank_matches_plain_elimination(nrows in 0..12usize, ncols in 0..12usize, bits in prop::collection::vec(any::<bool>(), 144)) {
        let m = matrix(nrows, ncols, &bits);
        let rows: Vec<Vec<bool>> = (0..nrows).map(|r| (0..ncols).map(|c| m.get(r, c)).collect()).collect();
        prop_assert_eq!(rank(&m), naive_rank(rows));
    }

    #[test]
    fn rank_nullity_and_kernel_is_killed(nrows in 0..12usize, ncols in 0..12usize, bits in prop::collection::vec(any::<bool>(), 144)) {
        let m = matrix(nrows, ncols, &bits);
        let (r, kernel, image) = rank_kernel_image(&m);
        prop_assert_eq!(r + kernel.dim(), ncols);
        prop_assert_eq!(image.dim(), r);
        prop_assert_eq!(rank(&m.transpose()), r);
        for v in kernel.vectors() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }
}
