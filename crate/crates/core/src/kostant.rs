//! Kostant's harmonic forms through the exterior algebra `/\n_- (x) /\n`.
//!
//! Basis vectors are `E_{-alpha}` and `E_alpha` for positive roots `alpha`, indexed
//! by the root order of [`RootSystem::positive_roots`]. A monomial is a pair of
//! bitmasks; within each factor the wedge is taken in increasing index order.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::linalg::{unit, Matrix, I};
use crate::rootsys::{q_to_f64, Rational, Root, RootSystem, Weight};
use crate::tol;

/// A sparse element of `/\n_- (x) /\n`: `(negmask, posmask) -> coefficient`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExtElement {
    terms: BTreeMap<(u64, u64), Complex64>,
}

#[allow(clippy::len_without_is_empty)]
impl ExtElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(neg: u64, pos: u64, coeff: Complex64) -> Self {
        let mut e = Self::zero();
        e.add_term(neg, pos, coeff);
        e
    }

    pub fn add_term(&mut self, neg: u64, pos: u64, coeff: Complex64) {
        let entry = self.terms.entry((neg, pos)).or_insert(Complex64::zero());
        *entry += coeff;
        if entry.norm() < tol::EXT_PRUNE {
            self.terms.remove(&(neg, pos));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u64, u64), &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, neg: u64, pos: u64) -> Complex64 {
        self.terms.get(&(neg, pos)).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (&(n, p), &c) in &other.terms {
            out.add_term(n, p, c);
        }
        out
    }

    pub fn sub(&self, other: &ExtElement) -> ExtElement {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> ExtElement {
        let mut out = ExtElement::zero();
        for (&(n, p), &x) in &self.terms {
            out.add_term(n, p, x * c);
        }
        out
    }

    /// The set of bidegrees `(p, q)` occurring in the element.
    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<_> = self
            .terms
            .keys()
            .map(|(n, p)| (n.count_ones(), p.count_ones()))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn to_record(&self) -> Vec<ExtTermRecord> {
        self.terms
            .iter()
            .map(|(&(n, p), c)| ExtTermRecord {
                neg: bits(n),
                pos: bits(p),
                coeff: [c.re, c.im],
            })
            .collect()
    }

    pub fn from_record(rec: &[ExtTermRecord]) -> Result<Self> {
        let mut out = ExtElement::zero();
        for t in rec {
            out.add_term(mask(&t.neg)?, mask(&t.pos)?, Complex64::new(t.coeff[0], t.coeff[1]));
        }
        Ok(out)
    }
}

fn bits(m: u64) -> Vec<usize> {
    (0..64).filter(|k| m >> k & 1 == 1).collect()
}

fn mask(idx: &[usize]) -> Result<u64> {
    idx.iter().try_fold(0u64, |m, &k| {
        if k >= 64 {
            Err(Error::BasisTooLarge(k + 1))
        } else {
            Ok(m | 1 << k)
        }
    })
}

/// JSON form of one term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtTermRecord {
    pub neg: Vec<usize>,
    pub pos: Vec<usize>,
    pub coeff: [f64; 2],
}

/// `[E_x, E_y] = N E_{x+y}` within one of `n_-`, `n`: `table[x][y] = Some((index, N))`.
type BracketTable = Vec<Vec<Option<(usize, f64)>>>;

/// The operators `E`, `L0`, `R` for one root system, with structure constants
/// read off matrix commutators of `E_alpha = E_{ab} / sqrt(2n)`.
#[derive(Clone, Debug)]
pub struct ExtAlgebra {
    sys: RootSystem,
    roots: Vec<Root>,
    neg: BracketTable,
    pos: BracketTable,
    max_steps: usize,
}

impl ExtAlgebra {
    pub fn new(sys: &RootSystem) -> Result<Self> {
        let roots = sys.positive_roots().to_vec();
        if roots.len() > 64 {
            return Err(Error::BasisTooLarge(roots.len()));
        }
        let n = sys.matrix_size();
        let scale = 1.0 / ((2 * n) as f64).sqrt();
        let vec_of = |r: &Root| {
            let (a, b) = sys.matrix_position(r).expect("root");
            unit(n, a, b) * Complex64::new(scale, 0.0)
        };
        let table = |sign: i64| -> BracketTable {
            roots
                .iter()
                .map(|x| {
                    roots
                        .iter()
                        .map(|y| {
                            let sum = x + y;
                            let k = roots.iter().position(|r| *r == sum)?;
                            let sx = Root(x.0.iter().map(|c| c * sign).collect());
                            let sy = Root(y.0.iter().map(|c| c * sign).collect());
                            let ss = Root(sum.0.iter().map(|c| c * sign).collect());
                            let (ex, ey) = (vec_of(&sx), vec_of(&sy));
                            let br = &ex * &ey - &ey * &ex;
                            let (a, b) = sys.matrix_position(&ss).expect("root");
                            Some((k, br[(a, b)].re / scale))
                        })
                        .collect()
                })
                .collect()
        };
        let dim = 2 * roots.len();
        Ok(ExtAlgebra {
            sys: sys.clone(),
            neg: table(-1),
            pos: table(1),
            roots,
            max_steps: 2 * dim,
        })
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// `N` with `[E_{-x}, E_{-y}] = N E_{-(x+y)}`.
    pub fn neg_constant(&self, x: usize, y: usize) -> Option<(usize, f64)> {
        self.neg[x][y]
    }

    /// `N` with `[E_x, E_y] = N E_{x+y}`.
    pub fn pos_constant(&self, x: usize, y: usize) -> Option<(usize, f64)> {
        self.pos[x][y]
    }

    fn mask_sum(&self, m: u64) -> Weight {
        let mut w = Weight::zero(self.sys.rank());
        for k in bits(m) {
            w = &w + &self.roots[k].to_weight();
        }
        w
    }

    /// `sum(pos) - sum(neg)` of a monomial.
    pub fn weight(&self, neg: u64, pos: u64) -> Weight {
        &self.mask_sum(pos) - &self.mask_sum(neg)
    }

    /// The weights occurring in `x`.
    pub fn weights(&self, x: &ExtElement) -> Vec<Weight> {
        let mut v: Vec<Weight> = Vec::new();
        for (&(n, p), _) in x.terms() {
            let w = self.weight(n, p);
            if !v.contains(&w) {
                v.push(w);
            }
        }
        v
    }

    /// `ad_{E_{+-a}}` as a derivation of one wedge factor.
    fn derive(table: &BracketTable, a: usize, m: u64) -> Vec<(u64, f64)> {
        let mut out = Vec::new();
        for k in bits(m) {
            let Some((t, c)) = table[a][k] else { continue };
            let rest = m & !(1 << k);
            if rest >> t & 1 == 1 {
                continue;
            }
            let (lo, hi) = if t < k { (t, k) } else { (k, t) };
            let between = (rest >> (lo + 1)) & ((1u64 << (hi - lo - 1)) - 1);
            let sign = if between.count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out.push((rest | 1 << t, sign * c));
        }
        out
    }

    /// `E = 2 sum_{alpha > 0} ad_{E_{-alpha}} (x) ad_{E_alpha}`, each acting as a
    /// derivation on its own factor.
    pub fn op_e(&self, x: &ExtElement) -> ExtElement {
        let mut out = ExtElement::zero();
        for (&(nm, pm), &c) in x.terms() {
            for a in 0..self.roots.len() {
                let dn = Self::derive(&self.neg, a, nm);
                if dn.is_empty() {
                    continue;
                }
                let dp = Self::derive(&self.pos, a, pm);
                for &(n2, cn) in &dn {
                    for &(p2, cp) in &dp {
                        out.add_term(n2, p2, c * (2.0 * cn * cp));
                    }
                }
            }
        }
        debug_assert!(self.preserves_grading(x, &out));
        out
    }

    /// `|rho|^2 - |rho - S|^2 = 2<<rho, S>> - <<S, S>>` with `S` the sum of the
    /// `n_-` factor roots.
    pub fn l0_denominator(&self, neg: u64) -> Rational {
        let s = self.mask_sum(neg);
        let two = Rational::from_integer(2);
        two * self.sys.pairing(self.sys.rho(), &s).expect("rank")
            - self.sys.pairing(&s, &s).expect("rank")
    }

    pub fn op_l0(&self, x: &ExtElement) -> ExtElement {
        let mut out = ExtElement::zero();
        for (&(nm, pm), &c) in x.terms() {
            let d = self.l0_denominator(nm);
            if !d.is_zero() {
                out.add_term(nm, pm, c / q_to_f64(d));
            }
        }
        out
    }

    /// `R = -L0 E`.
    pub fn op_r(&self, x: &ExtElement) -> ExtElement {
        self.op_l0(&self.op_e(x)).scale(Complex64::new(-1.0, 0.0))
    }

    fn preserves_grading(&self, before: &ExtElement, after: &ExtElement) -> bool {
        let (b, a) = (before.bidegrees(), after.bidegrees());
        let (wb, wa) = (self.weights(before), self.weights(after));
        a.iter().all(|d| b.contains(d)) && wa.iter().all(|w| wb.contains(w))
    }

    /// `h^{w^{-1}} = (i/2)^l E_{-beta_1} ^ ... ^ E_{-beta_l} (x) E_{beta_1} ^ ... ^ E_{beta_l}`.
    /// Both factors are reordered by the same permutation, so the sign cancels.
    pub fn h_seed(&self, cell: &Cell) -> ExtElement {
        let m = cell.betas().iter().fold(0u64, |m, b| {
            m | 1 << self.roots.iter().position(|r| r == b).expect("positive root")
        });
        ExtElement::monomial(m, m, (I * 0.5).powu(cell.len() as u32))
    }

    /// `s = h + R h + R^2 h + ...`, stopped when an increment vanishes.
    pub fn neumann(&self, h: &ExtElement) -> Result<(ExtElement, usize)> {
        let mut sum = h.clone();
        let mut term = h.clone();
        for step in 1..=self.max_steps {
            term = self.op_r(&term);
            if term.max_coeff() < tol::SERIES_INCREMENT {
                return Ok((sum, step));
            }
            sum = sum.add(&term);
        }
        Err(Error::NonTerminating(self.max_steps))
    }

    /// `s^w = (1 - R)^{-1} h^{w^{-1}}`.
    pub fn s_form(&self, cell: &Cell) -> Result<ExtElement> {
        Ok(self.neumann(&self.h_seed(cell))?.0)
    }

    /// Number of applications of `R` that take `x` to zero, if at most `cap`.
    pub fn nilpotency_index(&self, x: &ExtElement, cap: usize) -> Option<usize> {
        let mut t = x.clone();
        for k in 0..=cap {
            if t.is_zero() {
                return Some(k);
            }
            t = self.op_r(&t);
        }
        None
    }

    fn root_matrix(&self, k: usize, sign: i64) -> Matrix {
        let n = self.sys.matrix_size();
        let r = Root(self.roots[k].0.iter().map(|c| c * sign).collect());
        let (a, b) = self.sys.matrix_position(&r).expect("root");
        unit(n, a, b) * Complex64::new(1.0 / ((2 * n) as f64).sqrt(), 0.0)
    }

    /// The tangent vectors at the origin of the cell, pulled back to the
    /// identity: the `k`-components of `Ad_{w^{-1}} E_{alpha_j}` and
    /// `Ad_{w^{-1}} i E_{alpha_j}`, interleaved.
    pub fn origin_vectors(&self, cell: &Cell) -> Vec<Matrix> {
        let w = cell.wdot();
        let mut out = Vec::with_capacity(2 * cell.len());
        for a in cell.alphas() {
            let k = self.roots.iter().position(|r| r == a).expect("positive root");
            let e = self.root_matrix(k, 1);
            for x in [e.clone(), e * I] {
                let y = w.adjoint() * x * w;
                let lower = y.lower_triangle() - Matrix::from_diagonal(&y.diagonal());
                out.push(&lower - lower.adjoint());
            }
        }
        out
    }

    /// Evaluates the `2l`-form `s` on the origin vectors and multiplies by
    /// `prod_j i / <<alpha_j, alpha_j>>`, the image of `dz_j ^ dz_j-bar` under
    /// the differential of the coordinate map at 0.
    ///
    /// A monomial `x_1 ^ .. ^ x_p (x) y_1 ^ .. ^ y_q` acts as the form
    /// `x_1 ^ .. ^ x_p ^ y_q ^ .. ^ y_1`, each factor a covector through the
    /// Killing form `2n tr`.
    pub fn pair_with_origin(&self, cell: &Cell, s: &ExtElement) -> Complex64 {
        let n = self.sys.matrix_size();
        let kill = (2 * n) as f64;
        let vecs = self.origin_vectors(cell);
        let dim = vecs.len();
        let mut total = Complex64::zero();
        for (&(nm, pm), &c) in s.terms() {
            let rows: Vec<Matrix> = bits(nm)
                .into_iter()
                .map(|k| self.root_matrix(k, -1))
                .chain(bits(pm).into_iter().rev().map(|k| self.root_matrix(k, 1)))
                .collect();
            if rows.len() != dim {
                continue;
            }
            let m = DMatrix::from_fn(dim, dim, |i, j| (&rows[i] * &vecs[j]).trace() * kill);
            total += c * m.determinant();
        }
        let sys = &self.sys;
        let factor = cell.alphas().iter().fold(Complex64::new(1.0, 0.0), |acc, a| {
            acc * I / q_to_f64(sys.pair_roots(a, a))
        });
        total * factor
    }
}
