mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schubert::linalg::{identity, max_abs_diff, unipotent_deviation, unitary_deviation};
use schubert::matrixlie::{bruhat_elimination, circ, gamma_dot, n_z, split_simple, weyl_permutation};
use schubert::verify::{iwasawa_cholesky, matrix_deviation, random_point, random_sl};
use schubert::{iwasawa, Cell, Error, RootSystem};

use common::sweep_cells;

proptest! {
    #[test]
    fn iwasawa_reconstructs_random_sl4(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_sl(&mut rng, 4);
        let iw = iwasawa(&g).unwrap();
        prop_assert!(unitary_deviation(&iw.k) < 1e-12);
        prop_assert!(unipotent_deviation(&iw.n) < 1e-12);
        prop_assert!(iw.a.iter().all(|&x| x > 0.0));
        prop_assert!((iw.a.iter().product::<f64>() - 1.0).abs() < 1e-10);
        prop_assert!(matrix_deviation(&iw.reconstruct(), &g) < 1e-12);
        // independent route through the Cholesky factor of g^* g
        let ch = iwasawa_cholesky(&g).unwrap();
        prop_assert!(matrix_deviation(&iw.k, &ch.k) < 1e-8);
        prop_assert!(matrix_deviation(&iw.n, &ch.n) < 1e-8);
    }

    #[test]
    fn circ_is_an_action(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = (random_sl(&mut rng, 3), random_sl(&mut rng, 3));
        let k = iwasawa(&random_sl(&mut rng, 3)).unwrap().k;
        let lhs = circ(&(&g * &h), &k).unwrap();
        let rhs = circ(&g, &circ(&h, &k).unwrap()).unwrap();
        prop_assert!(matrix_deviation(&lhs, &rhs) < 1e-9);
        prop_assert!(matrix_deviation(&circ(&identity(3), &k).unwrap(), &k) < 1e-12);
    }

    #[test]
    fn n_z_group_law(x in -5.0..5.0f64, y in -5.0..5.0f64, u in -5.0..5.0f64, v in -5.0..5.0f64, j in 0usize..3) {
        let (a, b) = (Complex64::new(x, y), Complex64::new(u, v));
        let prod = n_z(4, j, a).unwrap() * n_z(4, j, b).unwrap();
        prop_assert!(max_abs_diff(&prod, &n_z(4, j, a + b).unwrap()) < 1e-13);
    }

    #[test]
    fn split_simple_factors(seed in any::<u64>(), j in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = iwasawa(&random_sl(&mut rng, 4)).unwrap().n;
        let (ng, nh) = split_simple(&u, j).unwrap();
        prop_assert!(matrix_deviation(&(&ng * &nh), &u) < 1e-12);
        prop_assert!(nh[(j, j + 1)].norm() < 1e-12);
    }

    #[test]
    fn coordinates_of_inverts(seed in any::<u64>(), pick in 0usize..27) {
        let cells = sweep_cells();
        let cell = &cells[pick % cells.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_point(&mut rng, cell.len(), 5.0);
        let back = cell.coordinates_of(&cell.coordinate_map(&z).unwrap()).unwrap();
        for (a, b) in back.iter().zip(&z) {
            prop_assert!((a - b).norm() < 1e-9 * b.norm().max(1.0));
        }
    }
}

#[test]
fn gamma_dot_squares_to_minus_identity_block() {
    let g = gamma_dot(3, 1).unwrap();
    let sq = &g * &g;
    assert_eq!(sq[(0, 0)], Complex64::new(1.0, 0.0));
    assert_eq!(sq[(1, 1)], Complex64::new(-1.0, 0.0));
    assert_eq!(sq[(2, 2)], Complex64::new(-1.0, 0.0));
    assert!(unitary_deviation(&g) < 1e-15);
    assert!(matches!(gamma_dot(3, 2), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn coordinate_origin_is_identity() {
    for cell in sweep_cells() {
        let z = vec![Complex64::new(0.0, 0.0); cell.len()];
        assert!(max_abs_diff(&cell.coordinate_map(&z).unwrap(), &identity(cell.matrix_size())) < 1e-14);
    }
}

/// Only `z_j` nonzero: the earlier factors cancel against the prefix of `w_dot`
/// and the later ones lie in `K`, leaving `F_w = w1 n_{z_j} w1^{-1}`.
#[test]
fn single_coordinate_slices() {
    for cell in sweep_cells() {
        let size = cell.matrix_size();
        for (l, &j) in cell.word().indices().iter().enumerate() {
            let mut z = vec![Complex64::new(0.0, 0.0); cell.len()];
            z[l] = Complex64::new(0.8, -1.7);
            let w1 = cell.prefix_wdot(l);
            let expect = w1 * n_z(size, j, z[l]).unwrap() * w1.adjoint();
            assert!(matrix_deviation(&cell.coordinate_map(&z).unwrap(), &expect) < 1e-13);
            let (a, b) = cell.positions()[l];
            assert!((expect[(a, b)].norm() - z[l].norm()).abs() < 1e-13);
        }
    }
}

#[test]
fn support_is_exhausted() {
    // every allowed entry is reached at a generic point
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for cell in sweep_cells() {
        let n = cell.coordinate_map(&random_point(&mut rng, cell.len(), 2.0)).unwrap();
        for &(a, b) in cell.positions() {
            assert!(n[(a, b)].norm() > 1e-6, "{} at ({a},{b})", cell.word());
        }
        assert!(cell.cell_deviation(&n) < 1e-12);
    }
}

#[test]
fn bruhat_elimination_recovers_permutation() {
    let sys = RootSystem::type_a(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for w in sys.reduced_words(6) {
        let cell = Cell::from_indices(&sys, &w).unwrap();
        let z = random_point(&mut rng, cell.len(), 3.0);
        let mut k = identity(4);
        for (l, &j) in w.iter().enumerate() {
            k *= circ(&n_z(4, j, z[l]).unwrap(), &gamma_dot(4, j).unwrap()).unwrap();
        }
        let (_, perm) = bruhat_elimination(&k).unwrap();
        assert_eq!(perm, weyl_permutation(4, &w).unwrap(), "{w:?}");
    }
}

/// The map is real-analytic but not holomorphic: `d/dz-bar` of an entry is nonzero.
#[test]
fn coordinate_map_is_not_holomorphic() {
    let sys = RootSystem::type_a(3).unwrap();
    let cell = Cell::from_indices(&sys, &[0, 1, 0]).unwrap();
    let z = [Complex64::new(0.4, 0.2), Complex64::new(-0.3, 0.9), Complex64::new(1.2, -0.5)];
    let h = 1e-6;
    let f = |dz: Complex64| {
        let mut p = z.to_vec();
        p[1] += dz;
        cell.coordinate_map(&p).unwrap()[(1, 2)]
    };
    let dx = (f(Complex64::new(h, 0.0)) - f(Complex64::new(-h, 0.0))) / (2.0 * h);
    let dy = (f(Complex64::new(0.0, h)) - f(Complex64::new(0.0, -h))) / (2.0 * h);
    assert!(((dx + Complex64::i() * dy) * 0.5).norm() > 1e-3);
}

#[test]
fn rejects_points_of_wrong_length() {
    let sys = RootSystem::type_a(3).unwrap();
    let cell = Cell::from_indices(&sys, &[0, 1]).unwrap();
    assert!(matches!(
        cell.coordinate_map(&[Complex64::new(1.0, 0.0)]),
        Err(Error::DimensionMismatch { expected: 2, found: 1 })
    ));
    assert!(cell.coordinates_of(&(identity(3) + schubert::linalg::unit(3, 1, 2))).is_err());
}
