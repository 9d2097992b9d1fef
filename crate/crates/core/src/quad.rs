//! Integration of product densities over a cell: exact closed forms, adaptive
//! radial quadrature, and Monte Carlo.
//!
//! Measure convention: `dz ^ dz-bar = -2i dx ^ dy`, so a density
//! `c prod_j (1 + |z_j|^2)^{e_j} dz_j ^ dz_j-bar` integrates to
//! `c (-2i)^l prod_j pi / (-1 - e_j)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cell::Cell;
use crate::cells::ProductDensity;
use crate::error::{Error, Result};
use crate::rootsys::{q, q_to_f64, Rational, Weight};
use crate::scalar::ExactScalar;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralResult {
    pub value: Complex64,
    pub method: Method,
    /// Zero for closed forms, the quadrature error bound, or the Monte Carlo
    /// standard error.
    pub error_estimate: f64,
    /// Present for closed forms.
    pub exact: Option<ExactScalar>,
}

impl IntegralResult {
    /// `value / |value|`; `+1` for every correctly normalized positive integral.
    pub fn phase(&self) -> Complex64 {
        self.value / self.value.norm()
    }

    pub fn to_record(&self) -> IntegralRecord {
        IntegralRecord {
            value: [self.value.re, self.value.im],
            method: self.method,
            error_estimate: self.error_estimate,
            exact: self.exact.map(|e| e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralRecord {
    pub value: [f64; 2],
    pub method: Method,
    pub error_estimate: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

/// `(-2i)^l`.
fn measure_factor(l: usize) -> ExactScalar {
    ExactScalar::new(q(-2, 1), 1, 0).powi(l as u32)
}

fn check_exponent(factor: usize, e: f64) -> Result<()> {
    if e < -1.0 {
        Ok(())
    } else {
        Err(Error::Divergent {
            factor: factor + 1,
            exponent: e,
        })
    }
}

/// `int_{R^2} (1 + x^2 + y^2)^e dx dy = pi / (-1 - e)`.
pub fn radial_integral(e: f64) -> Result<f64> {
    check_exponent(0, e)?;
    Ok(PI / (-1.0 - e))
}

pub fn radial_integral_exact(e: Rational) -> Result<ExactScalar> {
    check_exponent(0, q_to_f64(e))?;
    Ok(ExactScalar::new((-q(1, 1) - e).recip(), 0, 1))
}

/// The same integral by adaptive Gauss-Kronrod quadrature, for complex `e` with
/// `Re e < -1`. The range `r > 1` is folded onto `(0, 1)` by `r = 1/t`.
pub fn radial_quadrature(e: Complex64) -> Result<(Complex64, f64)> {
    check_exponent(0, e.re)?;
    let inner = |r: f64| 2.0 * r * ((1.0 + r * r).ln() * e).exp();
    let outer = |t: f64| 2.0 * ((1.0 + t * t).ln() * e + t.ln() * (-2.0 * e - 3.0)).exp();
    let (a, ea) = gauss_kronrod(inner, 0.0, 1.0, tol::QUADRATURE_REL);
    let (b, eb) = gauss_kronrod(outer, 0.0, 1.0, tol::QUADRATURE_REL);
    Ok(((a + b) * PI, (ea + eb) * PI))
}

/// Exact integral of an integrable density.
pub fn integrate(d: &ProductDensity) -> Result<IntegralResult> {
    let mut acc = d.constant * measure_factor(d.len());
    for (j, e) in d.exponents.iter().enumerate() {
        check_exponent(j, q_to_f64(*e))?;
        acc = acc * radial_integral_exact(*e)?;
    }
    Ok(IntegralResult {
        value: acc.to_complex(),
        method: Method::ClosedForm,
        error_estimate: 0.0,
        exact: Some(acc),
    })
}

fn quadrature_product(constant: Complex64, exps: &[Complex64]) -> Result<IntegralResult> {
    let mut value = constant * measure_factor(exps.len()).to_complex();
    let mut rel_err = 0.0;
    for (j, &e) in exps.iter().enumerate() {
        check_exponent(j, e.re)?;
        let (v, err) = radial_quadrature(e)?;
        value *= v;
        rel_err += err / v.norm();
    }
    Ok(IntegralResult {
        value,
        method: Method::Quadrature,
        error_estimate: rel_err * value.norm(),
        exact: None,
    })
}

/// Integral of a density by numeric radial quadrature.
pub fn integrate_quadrature(d: &ProductDensity) -> Result<IntegralResult> {
    let exps: Vec<Complex64> = d
        .exponents
        .iter()
        .map(|e| Complex64::new(q_to_f64(*e), 0.0))
        .collect();
    quadrature_product(d.constant.to_complex(), &exps)
}

/// The two routes to the c-function of a cell.
#[derive(Clone, Debug)]
pub struct CFunction {
    pub closed: IntegralResult,
    pub quadrature: IntegralResult,
}

impl CFunction {
    pub fn relative_deviation(&self) -> f64 {
        (self.closed.value - self.quadrature.value).norm() / self.closed.value.norm()
    }
}

/// `<i lambda, beta_j>` for `i lambda` given by complex coefficients on the simple roots.
fn ilambda_pairings(cell: &Cell, ilambda: &[Complex64]) -> Result<Vec<Complex64>> {
    let sys = cell.system();
    if ilambda.len() != sys.rank() {
        return Err(Error::DimensionMismatch {
            expected: sys.rank(),
            found: ilambda.len(),
        });
    }
    let gram = sys.gram_f64();
    let vals: Vec<Complex64> = cell
        .betas()
        .iter()
        .map(|b| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, li) in ilambda.iter().enumerate() {
                for (k, &bk) in b.0.iter().enumerate() {
                    acc += li * gram[i][k] * bk as f64;
                }
            }
            acc
        })
        .collect();
    for (j, v) in vals.iter().enumerate() {
        if v.re <= 0.0 {
            return Err(Error::Inadmissible {
                factor: j + 1,
                value: v.re,
            });
        }
    }
    Ok(vals)
}

/// `c(lambda) = int a_w^{-(i lambda + 2 rho)} dn = prod_j <<2 rho, beta_j>> / <<i lambda, beta_j>>`,
/// evaluated by the product formula and by radial quadrature.
pub fn c_function(cell: &Cell, ilambda: &[Complex64]) -> Result<CFunction> {
    let sys = cell.system();
    let pairings = ilambda_pairings(cell, ilambda)?;
    let mut closed = Complex64::new(1.0, 0.0);
    let mut exps = Vec::with_capacity(cell.len());
    for (b, p) in cell.betas().iter().zip(&pairings) {
        let rb = q_to_f64(sys.pairing(sys.rho(), &b.to_weight())?);
        let bb = q_to_f64(sys.pair_roots(b, b));
        closed *= 2.0 * rb / p;
        exps.push(-p / bb - 1.0);
    }
    let quadrature = quadrature_product(cell.haar_constant().to_complex(), &exps)?;
    Ok(CFunction {
        closed: IntegralResult {
            value: closed,
            method: Method::ClosedForm,
            error_estimate: 0.0,
            exact: None,
        },
        quadrature,
    })
}

/// The product formula in exact arithmetic for rational `i lambda`.
pub fn c_function_exact(cell: &Cell, ilambda: &Weight) -> Result<ExactScalar> {
    let sys = cell.system();
    let mut acc = ExactScalar::one();
    for (j, b) in cell.betas().iter().enumerate() {
        let p = sys.pairing(ilambda, &b.to_weight())?;
        if p <= q(0, 1) {
            return Err(Error::Inadmissible {
                factor: j + 1,
                value: q_to_f64(p),
            });
        }
        let two_rho_b = q(2, 1) * sys.pairing(sys.rho(), &b.to_weight())?;
        acc = acc * ExactScalar::from_rational(two_rho_b / p);
    }
    Ok(acc)
}

/// The density `a_w^{-mu} dn` for a rational weight `mu`.
pub fn twisted_haar(cell: &Cell, mu: &Weight) -> ProductDensity {
    let sys = cell.system();
    let dn = cell.haar_density();
    let exps = cell
        .betas()
        .iter()
        .zip(&dn.exponents)
        .map(|(b, e)| e - sys.coroot_ratio(mu, b) / q(2, 1))
        .collect();
    ProductDensity::new(dn.constant, exps)
}

/// `int_{Sigma_w} s^w = prod_j pi / <<rho, alpha_j>>`.
pub fn schubert_closed_form(cell: &Cell) -> ExactScalar {
    let sys = cell.system();
    cell.alphas().iter().fold(ExactScalar::one(), |acc, a| {
        let ra = sys.pairing(sys.rho(), &a.to_weight()).expect("rank");
        acc * ExactScalar::new(ra.recip(), 0, 1)
    })
}

/// The Schubert integral by the product formula and by quadrature of the
/// Kostant density.
pub fn schubert_integral(cell: &Cell) -> Result<(IntegralResult, IntegralResult)> {
    let exact = schubert_closed_form(cell);
    let closed = IntegralResult {
        value: exact.to_complex(),
        method: Method::ClosedForm,
        error_estimate: 0.0,
        exact: Some(exact),
    };
    Ok((closed, integrate_quadrature(&cell.kostant_density())?))
}

/// Importance-sampled Monte Carlo integral. Each coordinate is drawn from the
/// radial density `(1/pi)(1 + r^2)^{-2}` through `r^2 = U / (1 - U)`. Samples are
/// split across `workers` streams seeded from `(seed, worker)`, and partial sums
/// are combined in worker order, so the result depends only on the three inputs.
pub fn monte_carlo(
    d: &ProductDensity,
    seed: u64,
    samples: usize,
    workers: usize,
) -> Result<IntegralResult> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    for (j, e) in d.exponents.iter().enumerate() {
        check_exponent(j, q_to_f64(*e))?;
    }
    let shifted: Vec<f64> = d.exponents.iter().map(|e| q_to_f64(*e) + 2.0).collect();
    let workers = workers.clamp(1, samples);
    let partials: Vec<(f64, f64)> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let count = samples / workers + usize::from(w < samples % workers);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(w as u64);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                let mut weight = 1.0;
                for &e in &shifted {
                    let u: f64 = rng.gen();
                    let t = u / (1.0 - u);
                    weight *= PI * (e * t.ln_1p()).exp();
                }
                s += weight;
                s2 += weight * weight;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = partials
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let nf = samples as f64;
    let mean = s / nf;
    let var = (s2 / nf - mean * mean).max(0.0);
    let scale = (d.constant * measure_factor(d.len())).to_complex();
    Ok(IntegralResult {
        value: scale * mean,
        method: Method::MonteCarlo,
        error_estimate: scale.norm() * (var / nf).sqrt(),
        exact: None,
    })
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += s * WGK[i];
        if i % 2 == 1 {
            g += s * WG[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Adaptive G7-K15 quadrature of a complex integrand on `[a, b]`, bisecting the
/// interval with the largest error estimate until the total estimate falls
/// below `rel` times the integral.
pub fn gauss_kronrod<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, rel: f64) -> (Complex64, f64) {
    let (v, e) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value: v, err: e });
    let (mut total, mut err) = (v, e);
    for _ in 0..5000 {
        if err <= rel * total.norm() || err < 1e-300 {
            break;
        }
        let p = heap.pop().expect("nonempty");
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            heap.push(p);
            break;
        }
        let (v1, e1) = gk15(&f, p.a, m);
        let (v2, e2) = gk15(&f, m, p.b);
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.err;
        heap.push(Piece { a: p.a, b: m, value: v1, err: e1 });
        heap.push(Piece { a: m, b: p.b, value: v2, err: e2 });
    }
    // re-sum to shed accumulated cancellation
    let total = heap.iter().map(|p| p.value).sum();
    let err = heap.iter().map(|p| p.err).sum();
    (total, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    #[test]
    fn radial_values() {
        assert!((radial_integral(-2.0).unwrap() - PI).abs() < 1e-15);
        assert!((radial_integral(-3.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(matches!(radial_integral(-1.0), Err(Error::Divergent { .. })));
        for e in [-1.5, -2.0, -3.0, -7.25] {
            let (v, _) = radial_quadrature(Complex64::new(e, 0.0)).unwrap();
            assert!((v.re / radial_integral(e).unwrap() - 1.0).abs() < 1e-10, "e = {e}");
        }
    }

    #[test]
    fn complex_exponent_quadrature() {
        let e = Complex64::new(-1.8, 0.7);
        let (v, _) = radial_quadrature(e).unwrap();
        let exact = PI / (-1.0 - e);
        assert!((v - exact).norm() / exact.norm() < 1e-10);
    }

    #[test]
    fn kronrod_polynomial_exactness() {
        let (v, _) = gauss_kronrod(|x| Complex64::new(x.powi(10), x), 0.0, 2.0, 1e-14);
        assert!((v - Complex64::new(2f64.powi(11) / 11.0, 2.0)).norm() < 1e-11);
    }

    #[test]
    fn empty_word_integrates_to_constant() {
        let d = ProductDensity::new(ExactScalar::new(q(3, 2), 0, 0), vec![]);
        assert_eq!(integrate(&d).unwrap().exact, Some(ExactScalar::new(q(3, 2), 0, 0)));
    }

    #[test]
    fn monte_carlo_contract() {
        let sys = RootSystem::type_a(3).unwrap();
        let cell = Cell::from_indices(&sys, &[0, 1]).unwrap();
        let d = cell.kostant_density();
        assert_eq!(monte_carlo(&d, 1, 0, 4), Err(Error::NoSamples));
        let a = monte_carlo(&d, 7, 10_000, 3).unwrap();
        let b = monte_carlo(&d, 7, 10_000, 3).unwrap();
        assert_eq!(a, b);
        let exact = integrate(&d).unwrap();
        assert!((a.value - exact.value).norm() < 4.0 * a.error_estimate);
    }
}
