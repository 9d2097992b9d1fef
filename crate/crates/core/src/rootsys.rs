//! Type-A root systems with Killing-normalized pairings, Weyl words, and the
//! root sequences attached to a reduced decomposition.
//!
//! All combinatorics here is exact: weights live in the simple-root basis with
//! rational coefficients, and the Gram matrix is the Killing form of `sl(n)`,
//! `kappa(X, Y) = 2n tr(XY)`. Floating point enters only through
//! [`CoWeight`], which holds logarithms of torus elements.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Rational64;

pub(crate) fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub(crate) fn q_to_f64(x: Rational) -> f64 {
    x.to_f64().expect("rational fits in f64")
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(q(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A weight in the simple-root basis, `sum_i coeffs[i] * gamma_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rational::zero(); rank])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: Rational) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    /// Returns the root with these coefficients if they are all integers.
    pub fn to_root(&self) -> Option<Root> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Root)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A root in the simple-root basis. Coefficients are integers, all of one sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn to_weight(&self) -> Weight {
        Weight(self.0.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match c {
                1 => format!("a{}", i + 1),
                -1 => format!("-a{}", i + 1),
                c => format!("{c}a{}", i + 1),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+").replace("+-", "-"))
        }
    }
}

/// An element of the real Cartan `a`, in coordinates on the simple coroots
/// `H^check_{gamma_i} = 2 H_{gamma_i} / <<gamma_i, gamma_i>>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoWeight(pub Vec<f64>);

impl CoWeight {
    pub fn zero(rank: usize) -> Self {
        CoWeight(vec![0.0; rank])
    }

    pub fn scale(&self, c: f64) -> CoWeight {
        CoWeight(self.0.iter().map(|x| x * c).collect())
    }

    pub fn max_abs_diff(&self, other: &CoWeight) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }
}

impl Add for &CoWeight {
    type Output = CoWeight;
    fn add(self, rhs: &CoWeight) -> CoWeight {
        CoWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &CoWeight {
    type Output = CoWeight;
    fn sub(self, rhs: &CoWeight) -> CoWeight {
        CoWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &CoWeight {
    type Output = CoWeight;
    fn mul(self, rhs: f64) -> CoWeight {
        self.scale(rhs)
    }
}

/// The root system `A_{n-1}` of `sl(n, C)` with Killing-form pairings.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    n: usize,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<Rational>>,
    positive_roots: Vec<Root>,
    rho: Weight,
}

impl RootSystem {
    /// Builds `A_{n-1}` from `sl(n)`.
    pub fn type_a(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        let rank = n - 1;
        let nn = n as i64;
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut gram = vec![vec![Rational::zero(); rank]; rank];
        for i in 0..rank {
            cartan[i][i] = 2;
            gram[i][i] = q(1, nn);
            if i + 1 < rank {
                cartan[i][i + 1] = -1;
                cartan[i + 1][i] = -1;
                gram[i][i + 1] = q(-1, 2 * nn);
                gram[i + 1][i] = q(-1, 2 * nn);
            }
        }
        // e_i - e_j for i < j has coefficient 1 on gamma_i .. gamma_{j-1}.
        let mut positive_roots = Vec::new();
        for height in 1..=rank {
            for start in 0..=(rank - height) {
                let mut c = vec![0i64; rank];
                c[start..start + height].iter_mut().for_each(|x| *x = 1);
                positive_roots.push(Root(c));
            }
        }
        let mut sum = Weight::zero(rank);
        for r in &positive_roots {
            sum = &sum + &r.to_weight();
        }
        let rho = sum.scale(q(1, 2));
        Ok(RootSystem {
            n,
            cartan,
            gram,
            positive_roots,
            rho,
        })
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// Size of the defining matrix representation.
    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// Positive roots ordered by height, then by position of the first nonzero
    /// coefficient. This order fixes exterior-algebra signs downstream.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn simple_root(&self, i: usize) -> Result<Root> {
        self.check_index(i)?;
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        Ok(Root(c))
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.positive_roots.iter().position(|p| p == r)
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.root_index(r).is_some() || self.root_index(&-r).is_some()
    }

    /// Matrix position `(i, j)` of the root vector `E_alpha` for `alpha = e_i - e_j`.
    pub fn matrix_position(&self, r: &Root) -> Option<(usize, usize)> {
        let (sign_pos, c) = if r.is_positive() {
            (true, r.0.clone())
        } else if r.is_negative() {
            (false, (-r).0)
        } else {
            return None;
        };
        let first = c.iter().position(|&x| x != 0)?;
        let last = c.iter().rposition(|&x| x != 0)?;
        if c[first..=last].iter().any(|&x| x != 1) {
            return None;
        }
        let (i, j) = (first, last + 1);
        Some(if sign_pos { (i, j) } else { (j, i) })
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    fn check_len(&self, x: &Weight) -> Result<()> {
        if x.len() != self.rank() {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: x.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Killing pairing `<<x, y>> = x^T G y`.
    pub fn pairing(&self, x: &Weight, y: &Weight) -> Result<Rational> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.pair_unchecked(x, y))
    }

    fn pair_unchecked(&self, x: &Weight, y: &Weight) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                acc += xi * self.gram[i][j] * yj;
            }
        }
        acc
    }

    /// Pairing of two roots; panics on a rank mismatch.
    pub fn pair_roots(&self, a: &Root, b: &Root) -> Rational {
        self.pair_unchecked(&a.to_weight(), &b.to_weight())
    }

    pub fn norm2(&self, x: &Weight) -> Result<Rational> {
        self.pairing(x, x)
    }

    /// `x - (2<x, r>/<r, r>) r`.
    pub fn reflect(&self, r: &Weight, x: &Weight) -> Result<Weight> {
        self.check_len(r)?;
        self.check_len(x)?;
        if r.is_zero() {
            return Err(Error::ZeroRoot);
        }
        let c = q(2, 1) * self.pair_unchecked(x, r) / self.pair_unchecked(r, r);
        Ok(x - &r.scale(c))
    }

    fn reflect_simple(&self, i: usize, x: &Weight) -> Weight {
        // 2<x, gamma_i>/<gamma_i, gamma_i> is the i-th Cartan-type coefficient.
        let c = q(2, 1) * self.gram_row_dot(i, x) / self.gram[i][i];
        let mut out = x.clone();
        out.0[i] -= c;
        out
    }

    fn gram_row_dot(&self, i: usize, x: &Weight) -> Rational {
        self.gram[i]
            .iter()
            .zip(&x.0)
            .fold(Rational::zero(), |acc, (g, c)| acc + g * c)
    }

    fn reflect_simple_root(&self, i: usize, r: &Root) -> Root {
        self.reflect_simple(i, &r.to_weight())
            .to_root()
            .expect("simple reflections preserve the root lattice")
    }

    /// `w x` for `w = s_{i_1} ... s_{i_l}`: applies the last letter first.
    pub fn weyl_act(&self, word: &[usize], x: &Weight) -> Result<Weight> {
        self.check_len(x)?;
        let mut out = x.clone();
        for &i in word.iter().rev() {
            self.check_index(i)?;
            out = self.reflect_simple(i, &out);
        }
        Ok(out)
    }

    /// `w^{-1} x`: applies the first letter first.
    pub fn weyl_act_inverse(&self, word: &[usize], x: &Weight) -> Result<Weight> {
        self.check_len(x)?;
        let mut out = x.clone();
        for &i in word {
            self.check_index(i)?;
            out = self.reflect_simple(i, &out);
        }
        Ok(out)
    }

    pub fn weyl_act_root(&self, word: &[usize], r: &Root) -> Result<Root> {
        Ok(self
            .weyl_act(word, &r.to_weight())?
            .to_root()
            .expect("Weyl group preserves the root lattice"))
    }

    /// Two words name the same Weyl element iff they agree on every simple root.
    pub fn same_element(&self, a: &[usize], b: &[usize]) -> Result<bool> {
        for i in 0..self.rank() {
            let g = self.simple_root(i)?.to_weight();
            if self.weyl_act(a, &g)? != self.weyl_act(b, &g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `alpha_j = s_{gamma_1} ... s_{gamma_{j-1}} (gamma_j)`.
    pub fn alpha_sequence(&self, word: &[usize]) -> Result<Vec<Root>> {
        let mut alphas: Vec<Root> = Vec::with_capacity(word.len());
        let mut seen = BTreeSet::new();
        for (j, &i) in word.iter().enumerate() {
            self.check_index(i)?;
            let mut a = self.simple_root(i)?;
            for &k in word[..j].iter().rev() {
                a = self.reflect_simple_root(k, &a);
            }
            if !a.is_positive() || !seen.insert(a.clone()) {
                return Err(Error::NotReduced { position: j + 1 });
            }
            alphas.push(a);
        }
        Ok(alphas)
    }

    /// `beta_j = -w^{-1} alpha_j = s_{gamma_l} ... s_{gamma_{j+1}} (gamma_j)`;
    /// in particular `beta_l = gamma_l`.
    pub fn beta_sequence(&self, word: &[usize]) -> Result<Vec<Root>> {
        self.alpha_sequence(word)?;
        word.iter()
            .enumerate()
            .map(|(j, &i)| {
                let mut b = self.simple_root(i)?;
                for &k in &word[j + 1..] {
                    b = self.reflect_simple_root(k, &b);
                }
                Ok(b)
            })
            .collect()
    }

    pub fn is_reduced(&self, word: &[usize]) -> Result<bool> {
        match self.alpha_sequence(word) {
            Ok(_) => Ok(true),
            Err(Error::NotReduced { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Every reduced word of length at most `max_len`, shortest first.
    pub fn reduced_words(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..self.rank() {
                    let mut v: Vec<usize> = w.clone();
                    v.push(i);
                    if self.is_reduced(&v).unwrap_or(false) {
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// A reduced word for the longest element.
    pub fn longest_word(&self) -> Vec<usize> {
        // s_1 (s_2 s_1) (s_3 s_2 s_1) ...
        let mut w = Vec::new();
        for k in 0..self.rank() {
            for i in (0..=k).rev() {
                w.push(i);
            }
        }
        w
    }

    /// The simple coroot expansion of `H^check_beta`.
    pub fn coroot(&self, beta: &Root) -> CoWeight {
        let bb = self.pair_roots(beta, beta);
        CoWeight(
            beta.0
                .iter()
                .enumerate()
                .map(|(i, &c)| q_to_f64(Rational::from_integer(c) * self.gram[i][i] / bb))
                .collect(),
        )
    }

    /// `mu(h)` for a weight `mu` and a coweight `h`; equals the Killing pairing
    /// `<<H_mu, h>>`.
    pub fn evaluate(&self, mu: &Weight, h: &CoWeight) -> f64 {
        (0..self.rank())
            .map(|i| {
                let ratio = q(2, 1) * self.gram_row_dot(i, mu) / self.gram[i][i];
                q_to_f64(ratio) * h.0[i]
            })
            .sum()
    }

    /// Killing form restricted to `a`, in simple-coroot coordinates.
    pub fn coweight_pairing(&self, x: &CoWeight, y: &CoWeight) -> f64 {
        let r = self.rank();
        let mut acc = 0.0;
        for i in 0..r {
            for j in 0..r {
                let kij = q(4, 1) * self.gram[i][j] / (self.gram[i][i] * self.gram[j][j]);
                acc += x.0[i] * q_to_f64(kij) * y.0[j];
            }
        }
        acc
    }

    /// `Ad_w` on `a`, computed on roots: `H^check_{gamma_i} -> H^check_{w gamma_i}`.
    pub fn weyl_act_coweight(&self, word: &[usize], h: &CoWeight) -> Result<CoWeight> {
        let mut out = CoWeight::zero(self.rank());
        for (i, &hi) in h.0.iter().enumerate() {
            let image = self.weyl_act_root(word, &self.simple_root(i)?)?;
            out = &out + &self.coroot(&image).scale(hi);
        }
        Ok(out)
    }

    /// `2<mu, beta>/<beta, beta>`.
    pub fn coroot_ratio(&self, mu: &Weight, beta: &Root) -> Rational {
        q(2, 1) * self.pair_unchecked(mu, &beta.to_weight()) / self.pair_roots(beta, beta)
    }

    pub fn gram_f64(&self) -> Vec<Vec<f64>> {
        self.gram
            .iter()
            .map(|row| row.iter().map(|x| q_to_f64(*x)).collect())
            .collect()
    }

    pub fn to_record(&self) -> RootSystemRecord {
        RootSystemRecord {
            kind: "A".into(),
            rank: self.rank(),
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
            positive_roots: self.positive_roots.iter().map(|r| r.0.clone()).collect(),
            cartan: Some(self.cartan.clone()),
            rho: Some(self.rho.0.iter().map(format_rational).collect()),
        }
    }

    /// Rebuilds a system from its record, rejecting records whose Gram matrix
    /// or root list disagree with the Killing normalization.
    pub fn from_record(rec: &RootSystemRecord) -> Result<Self> {
        if rec.kind != "A" {
            return Err(Error::Parse(format!("unsupported type {:?}", rec.kind)));
        }
        let sys = RootSystem::type_a(rec.rank + 1)?;
        let gram: Vec<Vec<Rational>> = rec
            .gram
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect())
            .collect::<Result<_>>()?;
        if gram != sys.gram {
            return Err(Error::Parse("gram matrix is not Killing-normalized".into()));
        }
        let roots: Vec<Root> = rec.positive_roots.iter().cloned().map(Root).collect();
        if roots != sys.positive_roots {
            return Err(Error::Parse("positive roots do not match".into()));
        }
        Ok(sys)
    }
}

/// JSON form of a root system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSystemRecord {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    pub gram: Vec<Vec<String>>,
    pub positive_roots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<String>>,
}

/// The alpha and beta root sequences of a reduced word.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSequences {
    pub alphas: Vec<Root>,
    pub betas: Vec<Root>,
}

/// A reduced decomposition `w = s_{gamma_1} ... s_{gamma_l}`, stored with
/// 0-based simple-root indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    indices: Vec<usize>,
}

impl ReducedWord {
    pub fn new(sys: &RootSystem, indices: Vec<usize>) -> Result<Self> {
        sys.alpha_sequence(&indices)?;
        Ok(ReducedWord { indices })
    }

    /// Accepts the 1-based numbering used on the command line.
    pub fn from_one_based(sys: &RootSystem, indices: &[usize]) -> Result<Self> {
        let idx = indices
            .iter()
            .map(|&i| {
                i.checked_sub(1).ok_or(Error::IndexOutOfRange {
                    index: 0,
                    rank: sys.rank(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sys, idx)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn prefix(&self, k: usize) -> ReducedWord {
        ReducedWord {
            indices: self.indices[..k].to_vec(),
        }
    }

    pub fn sequences(&self, sys: &RootSystem) -> RootSequences {
        RootSequences {
            alphas: sys.alpha_sequence(&self.indices).expect("validated"),
            betas: sys.beta_sequence(&self.indices).expect("validated"),
        }
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> RootSystem {
        RootSystem::type_a(3).unwrap()
    }

    #[test]
    fn gram_is_killing_normalized() {
        let sys = a2();
        assert_eq!(sys.gram()[0][0], q(1, 3));
        assert_eq!(sys.gram()[0][1], q(-1, 6));
        let sl2 = RootSystem::type_a(2).unwrap();
        assert_eq!(sl2.gram()[0][0], q(1, 2));
        assert_eq!(RootSystem::type_a(1), Err(Error::InvalidRank(1)));
    }

    #[test]
    fn gram_from_trace_form() {
        // kappa(H_a, H_b) with H_gamma_i = (E_ii - E_{i+1,i+1}) / 2n and kappa = 2n tr.
        for n in 2..7usize {
            let sys = RootSystem::type_a(n).unwrap();
            let nn = n as i64;
            for i in 0..n - 1 {
                for j in 0..n - 1 {
                    let mut tr = 0i64;
                    for k in 0..n {
                        let hi = (k == i) as i64 - (k == i + 1) as i64;
                        let hj = (k == j) as i64 - (k == j + 1) as i64;
                        tr += hi * hj;
                    }
                    // 2n * tr / (2n)^2
                    assert_eq!(sys.gram()[i][j], q(tr, 2 * nn));
                }
            }
        }
    }

    #[test]
    fn rho_pairings() {
        let sys = a2();
        let theta = Root(vec![1, 1]).to_weight();
        assert_eq!(sys.pairing(sys.rho(), &theta).unwrap(), q(1, 3));
        for i in 0..sys.rank() {
            let g = sys.simple_root(i).unwrap();
            assert_eq!(sys.coroot_ratio(sys.rho(), &g), q(1, 1));
        }
        let zero = Weight::zero(2);
        assert_eq!(sys.pairing(&zero, &theta).unwrap(), q(0, 1));
        assert!(matches!(
            sys.pairing(&Weight::zero(3), &theta),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn reflections() {
        let sys = a2();
        let a1 = Root(vec![1, 0]).to_weight();
        let a2 = Root(vec![0, 1]).to_weight();
        assert_eq!(sys.reflect(&a1, &a1).unwrap(), -&a1);
        assert_eq!(sys.reflect(&a1, &a2).unwrap(), Root(vec![1, 1]).to_weight());
        assert_eq!(sys.reflect(&Weight::zero(2), &a1), Err(Error::ZeroRoot));
    }

    #[test]
    fn sequences_for_longest_a2() {
        let sys = a2();
        let alphas = sys.alpha_sequence(&[0, 1, 0]).unwrap();
        assert_eq!(alphas, vec![Root(vec![1, 0]), Root(vec![1, 1]), Root(vec![0, 1])]);
        let betas = sys.beta_sequence(&[0, 1, 0]).unwrap();
        assert_eq!(betas, vec![Root(vec![0, 1]), Root(vec![1, 1]), Root(vec![1, 0])]);
        assert_eq!(sys.alpha_sequence(&[1]).unwrap(), vec![Root(vec![0, 1])]);
        assert_eq!(sys.beta_sequence(&[1]).unwrap(), vec![Root(vec![0, 1])]);
        assert_eq!(
            sys.alpha_sequence(&[0, 0]),
            Err(Error::NotReduced { position: 2 })
        );
        assert!(sys.is_reduced(&[]).unwrap());
        assert!(!sys.is_reduced(&[0, 0]).unwrap());
        assert!(matches!(
            sys.is_reduced(&[5]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn reduced_word_counts() {
        // |S_3| = 6 elements with 7 reduced words; S_4 has 24 elements.
        let sys = a2();
        assert_eq!(sys.reduced_words(10).len(), 7);
        let a3 = RootSystem::type_a(4).unwrap();
        let words = a3.reduced_words(10);
        let mut reps: Vec<Vec<usize>> = Vec::new();
        for w in &words {
            if !reps.iter().any(|r| a3.same_element(r, w).unwrap()) {
                reps.push(w.clone());
            }
        }
        assert_eq!(reps.len(), 24);
        // the longest element of A_3 has 16 reduced words
        assert_eq!(words.iter().filter(|w| w.len() == 6).count(), 16);
    }

    #[test]
    fn matrix_positions() {
        let sys = RootSystem::type_a(4).unwrap();
        assert_eq!(sys.matrix_position(&Root(vec![0, 1, 1])), Some((1, 3)));
        assert_eq!(sys.matrix_position(&Root(vec![-1, 0, 0])), Some((1, 0)));
        assert_eq!(sys.matrix_position(&Root(vec![1, 0, 1])), None);
    }

    #[test]
    fn json_record_roundtrip() {
        let sys = a2();
        let json = serde_json::to_string(&sys.to_record()).unwrap();
        assert!(json.contains("\"1/3\""));
        let rec: RootSystemRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(RootSystem::from_record(&rec).unwrap(), sys);
    }

    #[test]
    fn evaluation_matches_killing_pairing() {
        // mu(H^check_gamma) = 2 <<mu, gamma>> / <<gamma, gamma>> and H^check_gamma = 2 H_gamma/<<gamma,gamma>>.
        let sys = RootSystem::type_a(4).unwrap();
        let mu = Weight(vec![q(1, 2), q(-3, 1), q(2, 3)]);
        for i in 0..3 {
            let g = sys.simple_root(i).unwrap();
            let lhs = sys.evaluate(&mu, &sys.coroot(&g));
            let rhs = q_to_f64(q(2, 1) * sys.pairing(&mu, &g.to_weight()).unwrap() / sys.gram()[i][i]);
            assert!((lhs - rhs).abs() < 1e-14);
        }
    }

    fn weight_strategy(rank: usize) -> impl Strategy<Value = Weight> {
        prop::collection::vec((-20i64..20, 1i64..7), rank)
            .prop_map(|v| Weight(v.into_iter().map(|(n, d)| q(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn pairing_is_symmetric_bilinear(x in weight_strategy(3), y in weight_strategy(3), z in weight_strategy(3), c in -5i64..5) {
            let sys = RootSystem::type_a(4).unwrap();
            prop_assert_eq!(sys.pairing(&x, &y).unwrap(), sys.pairing(&y, &x).unwrap());
            let lhs = sys.pairing(&(&x.scale(q(c, 1)) + &z), &y).unwrap();
            let rhs = q(c, 1) * sys.pairing(&x, &y).unwrap() + sys.pairing(&z, &y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reflection_is_an_isometric_involution(x in weight_strategy(3), k in 0usize..6) {
            let sys = RootSystem::type_a(4).unwrap();
            let r = sys.positive_roots()[k].to_weight();
            let once = sys.reflect(&r, &x).unwrap();
            prop_assert_eq!(sys.reflect(&r, &once).unwrap(), x.clone());
            prop_assert_eq!(sys.norm2(&once).unwrap(), sys.norm2(&x).unwrap());
        }
    }
}
