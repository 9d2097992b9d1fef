//! Property suites that compare closed forms with independent matrix-level or
//! numeric routes. Each suite returns one [`Check`] per property, carrying the
//! worst deviation seen and the tolerance it was held to.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cell::Cell;
use crate::cells::{character, su2_bracket};
use crate::error::{Error, Result};
use crate::kostant::ExtAlgebra;
use crate::linalg::{max_abs, max_abs_diff, unitary_deviation, Matrix};
use crate::matrixlie::{circ, iwasawa, Iwasawa};
use crate::quad;
use crate::rootsys::{q, CoWeight, RootSystem, Weight};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            passed: deviation.is_finite() && deviation < tolerance,
            deviation,
            tolerance,
        }
    }

    pub fn boolean(name: impl Into<String>, ok: bool) -> Self {
        Check {
            name: name.into(),
            passed: ok,
            deviation: if ok { 0.0 } else { 1.0 },
            tolerance: 0.5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Iwasawa,
    Equivariance,
    Identities,
    Kostant,
    Integrals,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "iwasawa" => Suite::Iwasawa,
            "equivariance" => Suite::Equivariance,
            "identities" => Suite::Identities,
            "kostant" => Suite::Kostant,
            "integrals" => Suite::Integrals,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

/// Sampling parameters shared by the suites.
#[derive(Clone, Copy, Debug)]
pub struct Sweep {
    pub seed: u64,
    pub points: usize,
    /// Coordinates are drawn uniformly from the disk `|z| <= radius`.
    pub radius: f64,
    /// Overrides every tolerance when set.
    pub tol: Option<f64>,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep {
            seed: 0,
            points: 100,
            radius: 5.0,
            tol: None,
        }
    }
}

impl Sweep {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub fn random_point<R: Rng>(rng: &mut R, l: usize, radius: f64) -> Vec<Complex64> {
    (0..l)
        .map(|_| Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), 2.0 * PI * rng.gen::<f64>()))
        .collect()
}

/// A random element of `SL(n, C)`.
pub fn random_sl<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let g = Matrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let det = g.determinant();
        if det.norm() > 1e-3 {
            return g / det.powf(1.0 / n as f64);
        }
    }
}

/// Random diagonal torus element of `SU(n)`.
pub fn random_torus<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let angles: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-PI..PI)).collect();
    let last = -angles.iter().sum::<f64>();
    angles
        .iter()
        .chain(std::iter::once(&last))
        .map(|&a| Complex64::from_polar(1.0, a))
        .collect()
}

/// Iwasawa decomposition through the Cholesky factor of `g^* g`, independent
/// of Gram-Schmidt.
pub fn iwasawa_cholesky(g: &Matrix) -> Result<Iwasawa> {
    let n = g.nrows();
    let chol = (g.adjoint() * g).cholesky().ok_or(Error::Singular)?;
    let r = chol.l().adjoint();
    let a: Vec<f64> = (0..n).map(|i| r[(i, i)].re).collect();
    let mut nn = r.clone();
    for i in 0..n {
        for j in 0..n {
            nn[(i, j)] /= a[i];
        }
    }
    let rinv = r.try_inverse().ok_or(Error::Singular)?;
    Ok(Iwasawa { k: g * rinv, a, n: nn })
}

/// `max |x - y| / max(1, max |y|)`.
pub fn coweight_deviation(x: &CoWeight, y: &CoWeight) -> f64 {
    x.max_abs_diff(y) / y.max_abs().max(1.0)
}

/// `max |x - y| / max(1, max |y|)` entrywise.
pub fn matrix_deviation(x: &Matrix, y: &Matrix) -> f64 {
    max_abs_diff(x, y) / max_abs(y).max(1.0)
}

pub fn relative(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm()
}

pub fn run(suite: Suite, cell: &Cell, sweep: &Sweep) -> Result<Vec<Check>> {
    match suite {
        Suite::Iwasawa => iwasawa_suite(cell, sweep),
        Suite::Equivariance => equivariance_suite(cell, sweep),
        Suite::Identities => identity_suite(cell, sweep),
        Suite::Kostant => kostant_suite(cell),
        Suite::Integrals => integral_suite(cell, sweep),
    }
}

/// Iwasawa decomposition, the coordinate map against its oracle, `a_w` closed
/// form against the matrix route, and the Bott-Samelson change.
pub fn iwasawa_suite(cell: &Cell, sweep: &Sweep) -> Result<Vec<Check>> {
    let mut rng = sweep.rng();
    let n = cell.matrix_size();
    let (mut recon, mut chol, mut unit) = (0f64, 0f64, 0f64);
    for _ in 0..sweep.points {
        let g = random_sl(&mut rng, n);
        let iw = iwasawa(&g)?;
        let ch = iwasawa_cholesky(&g)?;
        recon = recon.max(matrix_deviation(&iw.reconstruct(), &g));
        unit = unit.max(unitary_deviation(&iw.k));
        let da = iw
            .a
            .iter()
            .zip(&ch.a)
            .map(|(x, y)| (x - y).abs() / y)
            .fold(0.0, f64::max);
        chol = chol
            .max(da)
            .max(matrix_deviation(&iw.k, &ch.k))
            .max(matrix_deviation(&iw.n, &ch.n));
    }
    let (mut aw, mut oracle, mut support, mut bs, mut inv) = (0f64, 0f64, 0f64, 0f64, 0f64);
    for _ in 0..sweep.points {
        let z = random_point(&mut rng, cell.len(), sweep.radius);
        let f = cell.coordinate_map(&z)?;
        let o = cell.coordinate_map_oracle(&z)?;
        oracle = oracle.max(matrix_deviation(&f, &o));
        support = support.max(cell.cell_deviation(&f) / max_abs(&f).max(1.0));
        aw = aw.max(coweight_deviation(&cell.a_w_closed(&z)?, &cell.a_w_numeric(&f)?));
        let zp = cell.bott_samelson_change(&z)?;
        bs = bs.max(matrix_deviation(&cell.bott_samelson_map(&zp)?, &f));
        let back = cell.coordinates_of(&f)?;
        inv = inv.max(
            back.iter()
                .zip(&z)
                .map(|(a, b)| (a - b).norm() / b.norm().max(1.0))
                .fold(0.0, f64::max),
        );
    }
    Ok(vec![
        Check::new("iwasawa reconstruction", recon, sweep.tol(1e-12)),
        Check::new("iwasawa k unitary", unit, sweep.tol(1e-12)),
        Check::new("iwasawa vs cholesky oracle", chol, sweep.tol(1e-10)),
        Check::new("coordinate map vs bruhat oracle", oracle, sweep.tol(1e-10)),
        Check::new("coordinate map support in N_w", support, sweep.tol(1e-10)),
        Check::new("a_w closed form vs matrix", aw, sweep.tol(1e-10)),
        Check::new("bott-samelson map after change", bs, sweep.tol(1e-10)),
        Check::new("coordinates of coordinate map", inv, sweep.tol(1e-9)),
    ])
}

/// Torus equivariance of the coordinate map, the `circ` action law and
/// representative independence of `a_w`.
pub fn equivariance_suite(cell: &Cell, sweep: &Sweep) -> Result<Vec<Check>> {
    let mut rng = sweep.rng();
    let n = cell.matrix_size();
    let (mut eq, mut law, mut rep) = (0f64, 0f64, 0f64);
    for _ in 0..sweep.points {
        let z = random_point(&mut rng, cell.len(), sweep.radius);
        let t = random_torus(&mut rng, n);
        let tm = crate::linalg::diag(&t);
        let lhs = cell.coordinate_map(&cell.t_conjugate(&t, &z)?)?;
        let f = cell.coordinate_map(&z)?;
        let rhs = &tm * &f * tm.adjoint();
        eq = eq.max(matrix_deviation(&lhs, &rhs));

        let (g1, g2) = (random_sl(&mut rng, n), random_sl(&mut rng, n));
        let k = iwasawa(&random_sl(&mut rng, n))?.k;
        let a = circ(&g1, &circ(&g2, &k)?)?;
        let b = circ(&(&g1 * &g2), &k)?;
        law = law.max(matrix_deviation(&a, &b));

        let s = random_torus(&mut rng, n);
        let other = cell.wdot() * crate::linalg::diag(&s);
        rep = rep.max(coweight_deviation(
            &cell.a_w_numeric_with(&f, &other)?,
            &cell.a_w_numeric(&f)?,
        ));
    }
    Ok(vec![
        Check::new("torus action in coordinates", eq, sweep.tol(1e-10)),
        Check::new("circ action law", law, sweep.tol(1e-10)),
        Check::new("a_w independent of representative", rep, sweep.tol(1e-10)),
    ])
}

/// Pointwise identities among the cell densities, using `a_w` from the matrix
/// route, plus the moment-map equation and left invariance of `dn`.
pub fn identity_suite(cell: &Cell, sweep: &Sweep) -> Result<Vec<Check>> {
    let sys = cell.system();
    let mut rng = sweep.rng();
    let rho = sys.rho();
    let dn = cell.haar_density();
    let mu = cell.liouville_density();
    let s = cell.kostant_density();
    let dn1 = cell.dn1_factor().to_complex();
    let w_inv_rho2 = cell.w_inverse_rho().scale(q(2, 1));
    let longest = cell.len() == sys.positive_roots().len();
    let (mut phi, mut liou, mut main_h, mut main_a, mut w0, mut recip) =
        (0f64, 0f64, 0f64, 0f64, 0f64, 0f64);
    let mut pts: Vec<Vec<Complex64>> = vec![vec![Complex64::new(0.0, 0.0); cell.len()]];
    pts.extend((0..sweep.points).map(|_| random_point(&mut rng, cell.len(), sweep.radius)));
    for z in &pts {
        let a = cell.a_w_numeric(&cell.coordinate_map(z)?)?;
        phi = phi.max(coweight_deviation(&cell.moment_map(z)?, &cell.ad_w(&a)));
        let (dnz, muz, sz) = (dn.evaluate(z)?, mu.evaluate(z)?, s.evaluate(z)?);
        liou = liou.max(relative(muz, dn1 * character(sys, &a, &rho.scale(q(-2, 1))) * dnz));
        main_h = main_h.max(relative(sz, cell.modular_hamiltonian(z)?.exp() * muz));
        main_a = main_a.max(relative(sz, character(sys, &a, &w_inv_rho2) * muz));
        if longest {
            let rhs = dn1 * character(sys, &a, &rho.scale(q(-4, 1))) * dnz;
            w0 = w0.max(relative(sz, rhs));
        }
        let om = cell.omega_w(z)?;
        for (alpha, (c, zj)) in cell.alphas().iter().zip(om.coeffs.iter().zip(z)) {
            recip = recip.max((su2_bracket(sys, alpha, *zj) * c - 1.0).norm());
        }
    }
    let mut out = vec![
        Check::new("moment map = Ad_w log a_w", phi, sweep.tol(1e-12)),
        Check::new("liouville = dn1 a_w^(-2 rho) dn", liou, sweep.tol(1e-12)),
        Check::new("kostant = exp(hamiltonian) liouville", main_h, sweep.tol(1e-12)),
        Check::new("kostant = a_w^(2 w^-1 rho) liouville", main_a, sweep.tol(1e-12)),
    ];
    if longest {
        out.push(Check::new("longest element: kostant = dn1 a_w^(-4 rho) dn", w0, sweep.tol(1e-12)));
    }
    out.push(Check::new("bracket times omega = 1", recip, sweep.tol(1e-14)));
    let count = sweep.points.min(20);
    out.push(Check::new(
        "moment map generates torus action",
        moment_map_deviation(cell, &mut rng, count, sweep.radius)?,
        sweep.tol(1e-6),
    ));
    out.push(Check::new(
        "haar density left invariant",
        left_invariance_deviation(cell, &mut rng, count, sweep.radius.min(2.0))?,
        sweep.tol(1e-6),
    ));
    Ok(out)
}

/// Compares `iota_V Omega` with `d <phi_w, i H>` for every simple coroot `H`,
/// where `V` generates `z_j -> exp(i alpha_j(H) s) z_j`. Derivatives of the
/// moment map are central differences; the real form of `Omega` is
/// `sum_j 2 / (<<alpha_j, alpha_j>> (1 + r_j^2)) dx_j ^ dy_j`.
pub fn moment_map_deviation<R: Rng>(cell: &Cell, rng: &mut R, points: usize, radius: f64) -> Result<f64> {
    let sys = cell.system();
    let h = 1e-5;
    let mut worst = 0f64;
    for _ in 0..points {
        let z = random_point(rng, cell.len(), radius);
        let omega = cell.omega_w(&z)?;
        for i in 0..sys.rank() {
            let mut hvec = CoWeight::zero(sys.rank());
            hvec.0[i] = 1.0;
            let f = |p: &[Complex64]| -> Result<f64> {
                Ok(sys.coweight_pairing(&cell.moment_map(p)?, &hvec))
            };
            for (j, alpha) in cell.alphas().iter().enumerate() {
                let ah = sys.evaluate(&alpha.to_weight(), &hvec);
                let c = (omega.coeffs[j] * Complex64::new(0.0, -2.0)).re;
                let (x, y) = (z[j].re, z[j].im);
                // iota_V (c dx ^ dy) = c (V_x dy - V_y dx) with V = ah (-y, x)
                let expect = [-c * ah * x, -c * ah * y];
                for (d, dir) in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)].iter().enumerate() {
                    let mut zp = z.clone();
                    let mut zm = z.clone();
                    zp[j] += dir * h;
                    zm[j] -= dir * h;
                    let got = (f(&zp)? - f(&zm)?) / (2.0 * h);
                    let scale = expect[d].abs().max(1.0);
                    worst = worst.max((got - expect[d]).abs() / scale);
                }
            }
        }
    }
    Ok(worst)
}

fn real_coords(z: &[Complex64]) -> Vec<f64> {
    z.iter().flat_map(|c| [c.re, c.im]).collect()
}

fn complex_coords(x: &[f64]) -> Vec<Complex64> {
    x.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect()
}

/// Left translation by a random `n0` in `N_w` in coordinates; compares
/// `|dn|(Phi(z)) |det D Phi(z)|` with `|dn|(z)`. The Jacobian uses Richardson
/// extrapolated central differences.
pub fn left_invariance_deviation<R: Rng>(cell: &Cell, rng: &mut R, points: usize, radius: f64) -> Result<f64> {
    let l = cell.len();
    if l == 0 {
        return Ok(0.0);
    }
    let dn = cell.haar_density();
    let mut worst = 0f64;
    for _ in 0..points {
        let n0 = cell.coordinate_map(&random_point(rng, l, 1.0))?;
        let phi = |x: &[f64]| -> Result<Vec<f64>> {
            let n = &n0 * cell.coordinate_map(&complex_coords(x))?;
            Ok(real_coords(&cell.coordinates_of(&n)?))
        };
        let x = real_coords(&random_point(rng, l, radius));
        let dim = 2 * l;
        let mut jac = DMatrix::<f64>::zeros(dim, dim);
        for col in 0..dim {
            let diff = |h: f64| -> Result<Vec<f64>> {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[col] += h;
                xm[col] -= h;
                let (p, m) = (phi(&xp)?, phi(&xm)?);
                Ok(p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * h)).collect())
            };
            let (d1, d2) = (diff(2e-3)?, diff(1e-3)?);
            for row in 0..dim {
                jac[(row, col)] = (4.0 * d2[row] - d1[row]) / 3.0;
            }
        }
        let image = complex_coords(&phi(&x)?);
        let lhs = dn.evaluate(&image)?.norm() * jac.determinant().abs();
        let rhs = dn.evaluate(&complex_coords(&x))?.norm();
        worst = worst.max((lhs - rhs).abs() / rhs);
    }
    Ok(worst)
}

/// Grading of `s^w`, nilpotency of `R` and the origin pairing.
pub fn kostant_suite(cell: &Cell) -> Result<Vec<Check>> {
    let sys = cell.system();
    let alg = ExtAlgebra::new(sys)?;
    let h = alg.h_seed(cell);
    let (s, _) = alg.neumann(&h)?;
    let l = cell.len() as u32;
    let mut out = vec![
        Check::boolean("s^w has bidegree (l, l)", s.bidegrees() == vec![(l, l)]),
        Check::boolean(
            "s^w has weight 0",
            alg.weights(&s).iter().all(|w| w.is_zero()),
        ),
        Check::boolean(
            "R nilpotent on the seed",
            alg.nilpotency_index(&h, 4 * sys.positive_roots().len() + 2).is_some(),
        ),
    ];
    let lead = s.sub(&h);
    let seed_mask = *h.terms().next().expect("seed").0;
    out.push(Check::boolean(
        "corrections avoid the leading monomial",
        lead.terms().all(|(&(nm, _), _)| nm != seed_mask.0),
    ));
    if sys.positive_roots().len() <= 3 {
        out.push(Check::boolean("R nilpotent on every basis monomial", all_monomials_nilpotent(&alg)));
    }
    let expected = cell.liouville_constant().to_complex();
    let got = alg.pair_with_origin(cell, &s);
    out.push(Check::new("origin pairing = prod i/<<alpha,alpha>>", relative(got, expected), 1e-10));
    Ok(out)
}

/// Applies `R` to every monomial of the algebra until it vanishes.
pub fn all_monomials_nilpotent(alg: &ExtAlgebra) -> bool {
    let m = alg.roots().len();
    let cap = 2 * 2 * m + 2;
    (0u64..1 << m).all(|neg| {
        (0u64..1 << m).all(|pos| {
            let x = crate::kostant::ExtElement::monomial(neg, pos, Complex64::new(1.0, 0.0));
            alg.nilpotency_index(&x, cap).is_some()
        })
    })
}

/// Sample points `i lambda` for the c-function: positive real multiples of
/// `rho` plus imaginary parts.
pub fn lambda_grid(sys: &RootSystem) -> Vec<Vec<Complex64>> {
    let rho: Vec<f64> = sys.rho().0.iter().map(|x| crate::rootsys::q_to_f64(*x)).collect();
    let alt: Vec<f64> = (0..sys.rank()).map(|i| if i % 2 == 0 { 1.0 } else { -0.5 }).collect();
    [(2.0, 0.0), (1.0, 0.5), (3.0, -1.0), (0.75, 2.0), (5.0, 0.25)]
        .iter()
        .map(|&(a, b)| {
            rho.iter()
                .zip(&alt)
                .map(|(r, s)| Complex64::new(a * r, b * s))
                .collect()
        })
        .collect()
}

/// Normalization of `dn`, the c-function on a grid, the Schubert integral and
/// a Monte Carlo cross-check.
pub fn integral_suite(cell: &Cell, sweep: &Sweep) -> Result<Vec<Check>> {
    let sys = cell.system();
    let norm_density = quad::twisted_haar(cell, &sys.rho().scale(q(4, 1)));
    let exact = quad::integrate(&norm_density)?;
    let quadr = quad::integrate_quadrature(&norm_density)?;
    let mut out = vec![
        Check::boolean("haar normalization exactly 1", exact.exact.is_some_and(|e| e.is_one())),
        Check::new("haar normalization by quadrature", relative(quadr.value, exact.value), sweep.tol(1e-8)),
    ];
    let two_rho = sys.rho().scale(q(2, 1));
    out.push(Check::boolean(
        "c-function at i lambda = 2 rho is exactly 1",
        quad::c_function_exact(cell, &two_rho)?.is_one(),
    ));
    let mut cdev = 0f64;
    for il in lambda_grid(sys) {
        cdev = cdev.max(quad::c_function(cell, &il)?.relative_deviation());
    }
    out.push(Check::new("c-function product vs quadrature", cdev, sweep.tol(1e-6)));
    let (closed, quadrature) = quad::schubert_integral(cell)?;
    let from_density = quad::integrate(&cell.kostant_density())?;
    out.push(Check::boolean(
        "schubert integral of kostant density",
        from_density.exact == closed.exact,
    ));
    out.push(Check::new(
        "schubert integral by quadrature",
        relative(quadrature.value, closed.value),
        sweep.tol(1e-8),
    ));
    let special: Weight = cell.w_inverse_rho().scale(q(-2, 1));
    let via_c = cell.dn1_factor() * quad::c_function_exact(cell, &special)?;
    out.push(Check::boolean(
        "schubert integral = dn1 factor * c(-2 w^-1 rho)",
        Some(via_c) == closed.exact,
    ));
    out.push(Check::boolean(
        "integrals have phase +1",
        [&exact, &from_density]
            .iter()
            .all(|r| r.exact.is_some_and(|e| e.phase() == Complex64::new(1.0, 0.0))),
    ));
    let samples = (sweep.points * 1000).max(1000);
    for (name, d, reference) in [
        ("monte carlo haar normalization (sigma units)", &norm_density, &exact),
        ("monte carlo schubert integral (sigma units)", &cell.kostant_density(), &from_density),
    ] {
        let mc = quad::monte_carlo(d, sweep.seed, samples, 8)?;
        out.push(Check::new(name, mc_sigmas(&mc, reference), 3.0));
    }
    Ok(out)
}

/// Distance from the reference in standard errors. A zero-variance estimator
/// is compared at rounding level instead.
pub fn mc_sigmas(mc: &quad::IntegralResult, reference: &quad::IntegralResult) -> f64 {
    let diff = (mc.value - reference.value).norm();
    let floor = 1e-12 * reference.value.norm();
    if mc.error_estimate <= floor {
        if diff <= floor {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        diff / mc.error_estimate
    }
}
