//! The matrix model `SL(n, C) = K A N`: Iwasawa decomposition, the `circ`
//! action of `G` on `K`, the representatives `gamma_dot` and `w_dot`, and the
//! coordinate map of a Schubert cell together with its matrix-level oracle.

use num_complex::Complex64;

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::linalg::{self, identity, inverse_unipotent, max_abs, unipotent_deviation, unit, Matrix, I};
use crate::rootsys::CoWeight;
use crate::tol;

/// `g = k a n` with `k` special unitary, `a` positive diagonal and `n` unit
/// upper triangular. `a` is stored as its diagonal.
#[derive(Clone, Debug)]
pub struct Iwasawa {
    pub k: Matrix,
    pub a: Vec<f64>,
    pub n: Matrix,
}

impl Iwasawa {
    pub fn a_matrix(&self) -> Matrix {
        linalg::diag_real(&self.a)
    }

    /// `log a` in simple-coroot coordinates. With `H^check_{gamma_i} = E_ii - E_{i+1,i+1}`
    /// the coordinates are partial sums of `log a_k`.
    pub fn log_a(&self) -> CoWeight {
        let mut acc = 0.0;
        CoWeight(
            self.a[..self.a.len() - 1]
                .iter()
                .map(|x| {
                    acc += x.ln();
                    acc
                })
                .collect(),
        )
    }

    pub fn reconstruct(&self) -> Matrix {
        &self.k * self.a_matrix() * &self.n
    }
}

pub fn iwasawa(g: &Matrix) -> Result<Iwasawa> {
    iwasawa_with_tol(g, tol::RECONSTRUCTION)
}

/// Iwasawa decomposition by modified Gram-Schmidt with one re-orthogonalization
/// pass. `tol` bounds the reconstruction error relative to `max(1, |g|)`.
pub fn iwasawa_with_tol(g: &Matrix, tol: f64) -> Result<Iwasawa> {
    let n = g.nrows();
    if g.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.ncols(),
        });
    }
    let hadamard: f64 = (0..n).map(|j| g.column(j).norm()).product();
    if hadamard == 0.0 || !hadamard.is_finite() {
        return Err(Error::Singular);
    }
    let det = g.determinant();
    if (det - Complex64::new(1.0, 0.0)).norm() > tol::UNIMODULAR * hadamard.max(1.0) {
        return Err(Error::NotUnimodular {
            re: det.re,
            im: det.im,
        });
    }
    let mut q = Matrix::zeros(n, n);
    let mut r = Matrix::zeros(n, n);
    for j in 0..n {
        let mut v = g.column(j).into_owned();
        let scale = v.norm();
        for _ in 0..2 {
            for i in 0..j {
                let qi = q.column(i);
                let proj = qi.dotc(&v);
                v -= qi * proj;
                r[(i, j)] += proj;
            }
        }
        let norm = v.norm();
        if norm <= 64.0 * f64::EPSILON * scale {
            return Err(Error::Singular);
        }
        r[(j, j)] = Complex64::new(norm, 0.0);
        q.set_column(j, &(v / Complex64::new(norm, 0.0)));
    }
    let a: Vec<f64> = (0..n).map(|i| r[(i, i)].re).collect();
    let mut nn = r;
    for i in 0..n {
        let inv = 1.0 / a[i];
        for j in 0..n {
            nn[(i, j)] = if j < i {
                Complex64::new(0.0, 0.0)
            } else if j == i {
                Complex64::new(1.0, 0.0)
            } else {
                nn[(i, j)] * inv
            };
        }
    }
    let out = Iwasawa { k: q, a, n: nn };
    let err = linalg::max_abs_diff(&out.reconstruct(), g);
    if err > tol * max_abs(g).max(1.0) {
        return Err(Error::Reconstruction(err));
    }
    Ok(out)
}

/// `g o k`: the `K`-component of `g k`.
pub fn circ(g: &Matrix, k: &Matrix) -> Result<Matrix> {
    Ok(iwasawa(&(g * k))?.k)
}

fn check_simple(n: usize, j: usize) -> Result<()> {
    if j + 1 >= n {
        Err(Error::IndexOutOfRange {
            index: j,
            rank: n.saturating_sub(1),
        })
    } else {
        Ok(())
    }
}

/// The representative of `s_{gamma_j}`: identity with the block `[[0, i], [i, 0]]`
/// on rows and columns `j, j+1` (0-based).
pub fn gamma_dot(n: usize, j: usize) -> Result<Matrix> {
    check_simple(n, j)?;
    let mut m = identity(n);
    m[(j, j)] = Complex64::new(0.0, 0.0);
    m[(j + 1, j + 1)] = Complex64::new(0.0, 0.0);
    m[(j, j + 1)] = I;
    m[(j + 1, j)] = I;
    Ok(m)
}

/// `w_dot = gamma_dot_1 ... gamma_dot_l`.
pub fn w_dot(n: usize, word: &[usize]) -> Result<Matrix> {
    word.iter()
        .try_fold(identity(n), |acc, &j| Ok(acc * gamma_dot(n, j)?))
}

/// `exp(z E_{j,j+1}) = 1 + z E_{j,j+1}`.
pub fn n_z(n: usize, j: usize, z: Complex64) -> Result<Matrix> {
    check_simple(n, j)?;
    let mut m = identity(n);
    m[(j, j + 1)] = z;
    Ok(m)
}

/// Splits `u = n_gamma n_hat` along `N = N_gamma N_gamma_hat`.
pub fn split_simple(u: &Matrix, j: usize) -> Result<(Matrix, Matrix)> {
    let n = u.nrows();
    check_simple(n, j)?;
    let dev = unipotent_deviation(u);
    if dev > tol::CELL_SUPPORT * max_abs(u).max(1.0) {
        return Err(Error::NotUnipotent(dev));
    }
    let c = u[(j, j + 1)];
    let n_gamma = n_z(n, j, c)?;
    let n_hat = n_z(n, j, -c)? * u;
    Ok((n_gamma, n_hat))
}

/// The permutation `pi` with `w_dot e_c` proportional to `e_{pi(c)}`.
pub fn weyl_permutation(n: usize, word: &[usize]) -> Result<Vec<usize>> {
    let w = w_dot(n, word)?;
    Ok((0..n)
        .map(|c| {
            (0..n)
                .find(|&r| w[(r, c)].norm() > 0.5)
                .expect("monomial matrix")
        })
        .collect())
}

impl Cell {
    /// The recursive coordinate map. Returns `n` in `N_w` together with the
    /// Bott-Samelson coordinates produced along the way.
    fn recursion(&self, z: &[Complex64]) -> Result<(Matrix, Vec<Complex64>)> {
        self.check_point(z)?;
        let size = self.matrix_size();
        let mut n = identity(size);
        let mut zprime = Vec::with_capacity(self.len());
        for (l, &j) in self.word().indices().iter().enumerate() {
            let w1 = self.prefix_wdot(l);
            let (m, ratio) = if l == 0 {
                (Complex64::new(0.0, 0.0), 1.0)
            } else {
                let iw = iwasawa(&(&n * w1))?;
                let m = inverse_unipotent(&iw.n)[(j, j + 1)];
                (m, iw.a[j + 1] / iw.a[j])
            };
            let zl = m + z[l] * ratio;
            n = &n * w1 * n_z(size, j, zl)? * w1.adjoint();
            zprime.push(zl);
        }
        Ok((n, zprime))
    }

    /// `F_w(z)`: the unique `n` in `N_w` with `n o w_dot = prod_j (n_{z_j} o gamma_dot_j)`.
    pub fn coordinate_map(&self, z: &[Complex64]) -> Result<Matrix> {
        let (n, _) = self.recursion(z)?;
        let dev = self.cell_deviation(&n);
        if dev > tol::CELL_SUPPORT * max_abs(&n).max(1.0) {
            return Err(Error::NotInCell(dev));
        }
        Ok(n)
    }

    /// Computes `F_w(z)` without the recursion: forms the product of the
    /// `n_{z_j} o gamma_dot_j` in `K` and reads `n` off a Bruhat elimination.
    pub fn coordinate_map_oracle(&self, z: &[Complex64]) -> Result<Matrix> {
        self.check_point(z)?;
        let size = self.matrix_size();
        let mut k = identity(size);
        for (l, &j) in self.word().indices().iter().enumerate() {
            k *= circ(&n_z(size, j, z[l])?, self.gamma_dot(l))?;
        }
        let (u, perm) = bruhat_elimination(&k)?;
        let expected = weyl_permutation(size, self.word().indices())?;
        if perm != expected {
            return Err(Error::WrongBruhatCell {
                expected,
                found: perm,
            });
        }
        Ok(u)
    }

    /// Largest entry of `n` violating unit upper triangularity or the support
    /// condition of `N_w`.
    pub fn cell_deviation(&self, n: &Matrix) -> f64 {
        let size = self.matrix_size();
        let mut dev = unipotent_deviation(n);
        for i in 0..size {
            for j in i + 1..size {
                if !self.positions().contains(&(i, j)) {
                    dev = dev.max(n[(i, j)].norm());
                }
            }
        }
        dev
    }

    /// `log a_w(n)` where `a_w(n)` is the `A`-part of `w_dot^{-1} n w_dot`.
    pub fn a_w_numeric(&self, n: &Matrix) -> Result<CoWeight> {
        self.a_w_numeric_with(n, self.wdot())
    }

    /// As [`Cell::a_w_numeric`] with an arbitrary representative of `w` in `N_K(T)`.
    pub fn a_w_numeric_with(&self, n: &Matrix, rep: &Matrix) -> Result<CoWeight> {
        Ok(iwasawa(&(rep.adjoint() * n * rep))?.log_a())
    }

    /// The torus action in coordinates: `z_j -> t^{alpha_j} z_j`, where `t` is
    /// given by its diagonal entries.
    pub fn t_conjugate(&self, t: &[Complex64], z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_point(z)?;
        check_torus(t, self.matrix_size())?;
        Ok(self
            .positions()
            .iter()
            .zip(z)
            .map(|(&(a, b), &zj)| t[a] / t[b] * zj)
            .collect())
    }

    /// `F'_w(z') = n_1 gamma_dot_1 ... n_l gamma_dot_l w_dot^{-1}`.
    pub fn bott_samelson_map(&self, zprime: &[Complex64]) -> Result<Matrix> {
        self.check_point(zprime)?;
        let size = self.matrix_size();
        let mut m = identity(size);
        for (l, &j) in self.word().indices().iter().enumerate() {
            m = m * n_z(size, j, zprime[l])? * self.gamma_dot(l);
        }
        Ok(m * self.wdot().adjoint())
    }

    /// The coordinate change `z -> z'` with `F'_w(z') = F_w(z)`.
    pub fn bott_samelson_change(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(self.recursion(z)?.1)
    }

    /// Inverse of the coordinate map: recovers `z` from `n` in `N_w` by peeling
    /// off the last letter at a time.
    pub fn coordinates_of(&self, n: &Matrix) -> Result<Vec<Complex64>> {
        let size = self.matrix_size();
        let dev = self.cell_deviation(n);
        if dev > tol::CELL_SUPPORT * max_abs(n).max(1.0) {
            return Err(Error::NotInCell(dev));
        }
        let mut z = vec![Complex64::new(0.0, 0.0); self.len()];
        let mut cur = n.clone();
        for l in (0..self.len()).rev() {
            let j = self.word().indices()[l];
            let (a, b) = self.positions()[l];
            let u = cur[(a, b)];
            let step = identity(size) + unit(size, a, b) * u;
            cur = &cur * (identity(size) - unit(size, a, b) * u);
            let w1 = self.prefix_wdot(l);
            let target = (w1.adjoint() * step * w1)[(j, j + 1)];
            let (m, ratio) = if l == 0 {
                (Complex64::new(0.0, 0.0), 1.0)
            } else {
                let iw = iwasawa(&(&cur * w1))?;
                (inverse_unipotent(&iw.n)[(j, j + 1)], iw.a[j + 1] / iw.a[j])
            };
            z[l] = (target - m) / ratio;
        }
        Ok(z)
    }

    /// The unit constants `v_l` with `w_dot_1 E_{j,j+1} w_dot_1^{-1} = v_l E_{alpha_l}`
    /// (matrix units on both sides).
    pub fn translation_phases(&self) -> Vec<Complex64> {
        let size = self.matrix_size();
        self.word()
            .indices()
            .iter()
            .enumerate()
            .map(|(l, &j)| {
                let w1 = self.prefix_wdot(l);
                let (a, b) = self.positions()[l];
                (w1 * unit(size, j, j + 1) * w1.adjoint())[(a, b)]
            })
            .collect()
    }
}

fn check_torus(t: &[Complex64], size: usize) -> Result<()> {
    if t.len() != size {
        return Err(Error::DimensionMismatch {
            expected: size,
            found: t.len(),
        });
    }
    let prod: Complex64 = t.iter().product();
    let dev = t
        .iter()
        .map(|x| (x.norm() - 1.0).abs())
        .fold((prod - 1.0).norm(), f64::max);
    if dev > 1e-12 {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

/// Factors `k = u p b` with `u` unit upper triangular, `p` a permutation pattern
/// and `b` upper triangular, pivoting on the lowest admissible row in each
/// column. Returns `u` and the pivot row of each column. Every row operation
/// adds a lower pivot row to a higher row whose own pivot comes later, so `u`
/// lies in `N_w` for the resulting permutation.
pub fn bruhat_elimination(k: &Matrix) -> Result<(Matrix, Vec<usize>)> {
    let n = k.nrows();
    let mut m = k.clone();
    let mut ops = identity(n);
    let mut is_pivot = vec![false; n];
    let mut perm = Vec::with_capacity(n);
    for col in 0..n {
        let colmax = (0..n)
            .filter(|&r| !is_pivot[r])
            .map(|r| m[(r, col)].norm())
            .fold(0.0, f64::max);
        let p = (0..n)
            .rev()
            .find(|&r| !is_pivot[r] && m[(r, col)].norm() > tol::PIVOT * colmax)
            .filter(|_| colmax > 0.0)
            .ok_or(Error::Singular)?;
        for i in 0..p {
            if is_pivot[i] {
                continue;
            }
            let t = m[(i, col)] / m[(p, col)];
            if t == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..n {
                let mp = m[(p, c)];
                m[(i, c)] -= t * mp;
                let op = ops[(p, c)];
                ops[(i, c)] -= t * op;
            }
        }
        is_pivot[p] = true;
        perm.push(p);
    }
    Ok((inverse_unipotent(&ops), perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs_diff, unitary_deviation};
    use crate::rootsys::RootSystem;

    #[test]
    fn iwasawa_identity() {
        let iw = iwasawa(&identity(3)).unwrap();
        assert!(max_abs_diff(&iw.k, &identity(3)) < 1e-15);
        assert!(iw.a.iter().all(|&x| (x - 1.0).abs() < 1e-15));
        assert!(max_abs_diff(&iw.n, &identity(3)) < 1e-15);
    }

    #[test]
    fn iwasawa_sl2_display() {
        for z in [c(0.3, -1.2), c(2.0, 0.5), c(-4.0, 3.0)] {
            let g = n_z(2, 0, z).unwrap() * gamma_dot(2, 0).unwrap();
            let iw = iwasawa(&g).unwrap();
            let e = (1.0 + z.norm_sqr()).sqrt();
            assert!((iw.a[0] - e).abs() < 1e-13);
            assert!((iw.a[1] - 1.0 / e).abs() < 1e-13);
            assert!(unitary_deviation(&iw.k) < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let mut g = identity(2);
        g[(0, 0)] = c(2.0, 0.0);
        assert!(matches!(iwasawa(&g), Err(Error::NotUnimodular { .. })));
        assert!(matches!(iwasawa(&Matrix::zeros(2, 2)), Err(Error::Singular)));
    }

    #[test]
    fn gamma_dot_shapes() {
        let g = gamma_dot(3, 0).unwrap();
        let mut expect = Matrix::zeros(3, 3);
        expect[(0, 1)] = I;
        expect[(1, 0)] = I;
        expect[(2, 2)] = c(1.0, 0.0);
        assert_eq!(g, expect);
        let g4 = &g * &g * &g * &g;
        assert!(max_abs_diff(&g4, &identity(3)) < 1e-15);
        assert!((g.determinant() - 1.0).norm() < 1e-15);
        assert!(gamma_dot(3, 2).is_err());
    }

    #[test]
    fn longest_wdot_is_antidiagonal() {
        let w = w_dot(3, &[0, 1, 0]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let e = if i + j == 2 { -1.0 } else { 0.0 };
                assert!((w[(i, j)] - e).norm() < 1e-15);
            }
        }
        assert_eq!(w_dot(3, &[]).unwrap(), identity(3));
    }

    #[test]
    fn split_simple_cases() {
        let u = n_z(3, 1, c(1.0, 2.0)).unwrap();
        let (g, h) = split_simple(&u, 1).unwrap();
        assert!(max_abs_diff(&g, &u) < 1e-15 && max_abs_diff(&h, &identity(3)) < 1e-15);
        let (g, h) = split_simple(&u, 0).unwrap();
        assert!(max_abs_diff(&g, &identity(3)) < 1e-15 && max_abs_diff(&h, &u) < 1e-15);
        let mut bad = identity(3);
        bad[(2, 0)] = c(1.0, 0.0);
        assert!(matches!(split_simple(&bad, 0), Err(Error::NotUnipotent(_))));
    }

    #[test]
    fn zero_point_and_length_one() {
        let sys = RootSystem::type_a(3).unwrap();
        let cell = Cell::from_indices(&sys, &[0, 1, 0]).unwrap();
        let zero = vec![c(0.0, 0.0); 3];
        assert!(max_abs_diff(&cell.coordinate_map(&zero).unwrap(), &identity(3)) < 1e-15);
        assert!(max_abs_diff(&cell.coordinate_map_oracle(&zero).unwrap(), &identity(3)) < 1e-12);
        let one = Cell::from_indices(&sys, &[1]).unwrap();
        let z = [c(0.7, -2.0)];
        let expect = n_z(3, 1, z[0]).unwrap();
        assert!(max_abs_diff(&one.coordinate_map(&z).unwrap(), &expect) < 1e-15);
        assert!(max_abs_diff(&one.coordinate_map_oracle(&z).unwrap(), &expect) < 1e-12);
    }

    #[test]
    fn translation_phases_are_units() {
        let sys = RootSystem::type_a(4).unwrap();
        let cell = Cell::from_indices(&sys, &sys.longest_word()).unwrap();
        for v in cell.translation_phases() {
            assert!((v.norm() - 1.0).abs() < 1e-15);
        }
    }
}
