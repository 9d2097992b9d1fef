//! A Schubert cell fixed by a reduced word, with its root data precomputed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matrixlie::{gamma_dot, w_dot};
use crate::rootsys::{ReducedWord, Root, RootSystem};

/// The cell `Sigma_w` together with the data every coordinate computation needs:
/// the alpha/beta sequences, matrix positions of the alphas, and the
/// representatives of all prefixes of the word.
#[derive(Clone, Debug)]
pub struct Cell {
    sys: RootSystem,
    word: ReducedWord,
    alphas: Vec<Root>,
    betas: Vec<Root>,
    positions: Vec<(usize, usize)>,
    prefix_wdots: Vec<Matrix>,
    gamma_dots: Vec<Matrix>,
}

impl Cell {
    pub fn new(sys: &RootSystem, word: &ReducedWord) -> Result<Self> {
        let seq = word.sequences(sys);
        let n = sys.matrix_size();
        let positions = seq
            .alphas
            .iter()
            .map(|a| sys.matrix_position(a).expect("positive roots sit above the diagonal"))
            .collect();
        let prefix_wdots = (0..=word.len())
            .map(|k| w_dot(n, &word.indices()[..k]))
            .collect::<Result<Vec<_>>>()?;
        let gamma_dots = word
            .indices()
            .iter()
            .map(|&j| gamma_dot(n, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cell {
            sys: sys.clone(),
            word: word.clone(),
            alphas: seq.alphas,
            betas: seq.betas,
            positions,
            prefix_wdots,
            gamma_dots,
        })
    }

    /// Convenience constructor from 0-based indices.
    pub fn from_indices(sys: &RootSystem, indices: &[usize]) -> Result<Self> {
        Cell::new(sys, &ReducedWord::new(sys, indices.to_vec())?)
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn matrix_size(&self) -> usize {
        self.sys.matrix_size()
    }

    pub fn alphas(&self) -> &[Root] {
        &self.alphas
    }

    pub fn betas(&self) -> &[Root] {
        &self.betas
    }

    /// Matrix position `(a, b)` of `E_{alpha_j}`, `a < b`.
    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    /// `w_dot` of the first `k` letters.
    pub fn prefix_wdot(&self, k: usize) -> &Matrix {
        &self.prefix_wdots[k]
    }

    pub fn wdot(&self) -> &Matrix {
        &self.prefix_wdots[self.len()]
    }

    pub fn gamma_dot(&self, j: usize) -> &Matrix {
        &self.gamma_dots[j]
    }

    pub(crate) fn check_point(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: z.len(),
            });
        }
        Ok(())
    }
}
