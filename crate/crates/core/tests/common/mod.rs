#![allow(dead_code)]

use std::ops::{Add, Div, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schubert::{Cell, RootSystem};

/// Every reduced word of A_2, and 20 reduced words of A_3 drawn with a fixed seed.
pub fn sweep_cells() -> Vec<Cell> {
    let a2 = RootSystem::type_a(3).unwrap();
    let a3 = RootSystem::type_a(4).unwrap();
    let mut cells: Vec<Cell> = a2
        .reduced_words(3)
        .iter()
        .map(|w| Cell::from_indices(&a2, w).unwrap())
        .collect();
    let mut pool: Vec<Vec<usize>> = a3.reduced_words(6).into_iter().filter(|w| !w.is_empty()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    pool.shuffle(&mut rng);
    // keep the longest element in the sample
    pool.retain(|w| w.len() < 6);
    pool.truncate(19);
    pool.push(a3.longest_word());
    cells.extend(pool.iter().map(|w| Cell::from_indices(&a3, w).unwrap()));
    cells
}

pub fn rel(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm().max(1.0)
}

/// Forward-mode dual number `v + d eps`.
#[derive(Clone, Copy, Debug)]
pub struct D {
    pub v: f64,
    pub d: f64,
}

impl D {
    pub fn c(v: f64) -> D {
        D { v, d: 0.0 }
    }
    pub fn sqrt(self) -> D {
        let s = self.v.sqrt();
        D { v: s, d: self.d / (2.0 * s) }
    }
}

impl Add for D {
    type Output = D;
    fn add(self, o: D) -> D {
        D { v: self.v + o.v, d: self.d + o.d }
    }
}
impl Sub for D {
    type Output = D;
    fn sub(self, o: D) -> D {
        D { v: self.v - o.v, d: self.d - o.d }
    }
}
impl Mul for D {
    type Output = D;
    fn mul(self, o: D) -> D {
        D { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}
impl Div for D {
    type Output = D;
    fn div(self, o: D) -> D {
        D { v: self.v / o.v, d: (self.d * o.v - self.v * o.d) / (o.v * o.v) }
    }
}
impl Neg for D {
    type Output = D;
    fn neg(self) -> D {
        D { v: -self.v, d: -self.d }
    }
}

/// Complex number with dual real and imaginary parts.
#[derive(Clone, Copy, Debug)]
pub struct CD {
    pub re: D,
    pub im: D,
}

impl CD {
    pub fn conj(self) -> CD {
        CD { re: self.re, im: -self.im }
    }
    pub fn norm_sqr(self) -> D {
        self.re * self.re + self.im * self.im
    }
    pub fn times_i(self) -> CD {
        CD { re: -self.im, im: self.re }
    }
    pub fn scale(self, s: D) -> CD {
        CD { re: self.re * s, im: self.im * s }
    }
}
impl Add for CD {
    type Output = CD;
    fn add(self, o: CD) -> CD {
        CD { re: self.re + o.re, im: self.im + o.im }
    }
}
impl Sub for CD {
    type Output = CD;
    fn sub(self, o: CD) -> CD {
        CD { re: self.re - o.re, im: self.im - o.im }
    }
}
impl Mul for CD {
    type Output = CD;
    fn mul(self, o: CD) -> CD {
        CD {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

fn eps(z: CD) -> D {
    (D::c(1.0) + z.norm_sqr()).sqrt()
}

/// The closed-form `u(z)` on the longest cell of SL(3).
pub fn sl3_u_dual(z: [CD; 3]) -> [CD; 3] {
    let (e1, e2) = (eps(z[0]), eps(z[1]));
    let inv = D::c(1.0) / e1;
    let u2 = (z[2].scale(e2) - (z[0].conj() * z[1]).times_i()).scale(inv);
    let u3 = ((z[0] * z[2]).scale(e2) + z[1].times_i()).scale(inv);
    [z[0], u2, u3]
}

pub fn sl3_u(z: &[Complex64]) -> [Complex64; 3] {
    let lift = |c: Complex64| CD { re: D::c(c.re), im: D::c(c.im) };
    let u = sl3_u_dual([lift(z[0]), lift(z[1]), lift(z[2])]);
    u.map(|c| Complex64::new(c.re.v, c.im.v))
}

/// `det d(u, u-bar)/d(z, z-bar)` as a real 6x6 Jacobian, by forward-mode
/// differentiation of the closed form.
pub fn sl3_jacobian_det(z: &[Complex64]) -> f64 {
    let x: Vec<f64> = z.iter().flat_map(|c| [c.re, c.im]).collect();
    let mut jac = DMatrix::<f64>::zeros(6, 6);
    for col in 0..6 {
        let seed = |k: usize| D { v: x[k], d: if k == col { 1.0 } else { 0.0 } };
        let zz = [0, 1, 2].map(|j| CD { re: seed(2 * j), im: seed(2 * j + 1) });
        let u = sl3_u_dual(zz);
        for j in 0..3 {
            jac[(2 * j, col)] = u[j].re.d;
            jac[(2 * j + 1, col)] = u[j].im.d;
        }
    }
    jac.determinant()
}

pub fn load_fixture(name: &str) -> serde_json::Value {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn json_c(v: &serde_json::Value) -> Complex64 {
    Complex64::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}
