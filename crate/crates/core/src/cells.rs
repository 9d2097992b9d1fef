//! Closed-form geometry of a cell in `z`-coordinates: `a_w`, the Haar, Liouville
//! and Kostant densities, the symplectic form, the moment map and the modular
//! Hamiltonian.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::linalg::I;
use crate::rootsys::{format_rational, q, q_to_f64, CoWeight, Rational, Root, RootSystem, Weight};
use crate::scalar::ExactScalar;

/// `constant * prod_j (1 + |z_j|^2)^{e_j} dz_j ^ dz_j-bar` on a cell.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductDensity {
    pub constant: ExactScalar,
    pub exponents: Vec<Rational>,
}

impl ProductDensity {
    pub fn new(constant: ExactScalar, exponents: Vec<Rational>) -> Self {
        ProductDensity {
            constant,
            exponents,
        }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Coefficient of `dz_1 ^ dz_1-bar ^ ... ^ dz_l ^ dz_l-bar` at `z`.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: z.len(),
            });
        }
        let log: f64 = self
            .exponents
            .iter()
            .zip(z)
            .map(|(e, zj)| q_to_f64(*e) * zj.norm_sqr().ln_1p())
            .sum();
        Ok(self.constant.to_complex() * log.exp())
    }

    /// Pointwise product of two densities over the same word.
    pub fn multiply(&self, other: &ProductDensity) -> Result<ProductDensity> {
        if other.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(ProductDensity {
            constant: self.constant * other.constant,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: ExactScalar) -> ProductDensity {
        ProductDensity {
            constant: self.constant * c,
            exponents: self.exponents.clone(),
        }
    }

    /// True iff every exponent is below -1.
    pub fn is_integrable(&self) -> bool {
        self.exponents.iter().all(|e| *e < q(-1, 1))
    }

    pub fn exponents_display(&self) -> Vec<String> {
        self.exponents.iter().map(format_rational).collect()
    }

    pub fn to_record(&self) -> DensityRecord {
        let c = self.constant.to_complex();
        DensityRecord {
            constant: [c.re, c.im],
            exponents: self.exponents.iter().map(|e| q_to_f64(*e)).collect(),
            constant_exact: Some(self.constant.to_string()),
            exponents_exact: Some(self.exponents_display()),
        }
    }
}

impl fmt::Display for ProductDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (j, e) in self.exponents.iter().enumerate() {
            write!(f, " (1+|z{}|^2)^({})", j + 1, format_rational(e))?;
        }
        Ok(())
    }
}

/// JSON form of a density. The exact fields are informational.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityRecord {
    pub constant: [f64; 2],
    pub exponents: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant_exact: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents_exact: Option<Vec<String>>,
}

/// Coefficients of `dz_j ^ dz_j-bar` of the leaf symplectic form at a point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymplecticFormValue {
    pub coeffs: Vec<Complex64>,
}

/// `a^mu = exp(mu(h))` for `h = log a`.
pub fn character(sys: &RootSystem, h: &CoWeight, mu: &Weight) -> f64 {
    sys.evaluate(mu, h).exp()
}

/// `{z, z-bar} = -i <<gamma, gamma>> (1 + |z|^2)` on the rank-one leaf.
pub fn su2_bracket(sys: &RootSystem, gamma: &Root, z: Complex64) -> Complex64 {
    -I * q_to_f64(sys.pair_roots(gamma, gamma)) * (1.0 + z.norm_sqr())
}

fn half_log_sum(sys: &RootSystem, roots: &[Root], z: &[Complex64], sign: f64) -> CoWeight {
    roots
        .iter()
        .zip(z)
        .fold(CoWeight::zero(sys.rank()), |acc, (r, zj)| {
            &acc + &sys.coroot(r).scale(sign * 0.5 * zj.norm_sqr().ln_1p())
        })
}

impl Cell {
    /// `log a_w = sum_j (1/2) log(1 + |z_j|^2) H^check_{beta_j}`.
    pub fn a_w_closed(&self, z: &[Complex64]) -> Result<CoWeight> {
        self.check_point(z)?;
        Ok(half_log_sum(self.system(), self.betas(), z, 1.0))
    }

    /// `2 <<rho, r>> / <<r, r>>` for each root of `roots`.
    fn rho_ratios(&self, roots: &[Root]) -> Vec<Rational> {
        let sys = self.system();
        roots.iter().map(|r| sys.coroot_ratio(sys.rho(), r)).collect()
    }

    fn product(&self, f: impl Fn(&Root) -> ExactScalar, roots: &[Root]) -> ExactScalar {
        roots.iter().fold(ExactScalar::one(), |acc, r| acc * f(r))
    }

    /// `lambda_w = prod_j i <<rho, beta_j>> / (pi <<beta_j, beta_j>>)`.
    pub fn haar_constant(&self) -> ExactScalar {
        let sys = self.system();
        self.product(
            |b| {
                let rb = sys.pairing(sys.rho(), &b.to_weight()).expect("same rank");
                ExactScalar::new(rb / sys.pair_roots(b, b), 1, -1)
            },
            self.betas(),
        )
    }

    /// The bi-invariant Haar density `dn` of `N_w`.
    pub fn haar_density(&self) -> ProductDensity {
        let exps = self
            .rho_ratios(self.betas())
            .into_iter()
            .map(|r| r - q(1, 1))
            .collect();
        ProductDensity::new(self.haar_constant(), exps)
    }

    /// `prod_j pi / <<rho, beta_j>>`.
    pub fn dn1_factor(&self) -> ExactScalar {
        let sys = self.system();
        self.product(
            |b| {
                let rb = sys.pairing(sys.rho(), &b.to_weight()).expect("same rank");
                ExactScalar::new(rb.recip(), 0, 1)
            },
            self.betas(),
        )
    }

    /// `(dn)_1 = prod_j (pi / <<rho, beta_j>>) dn`.
    pub fn haar_density_dn1(&self) -> ProductDensity {
        self.haar_density().scale(self.dn1_factor())
    }

    /// `prod_j i / <<alpha_j, alpha_j>>`.
    pub fn liouville_constant(&self) -> ExactScalar {
        let sys = self.system();
        self.product(
            |a| ExactScalar::new(sys.pair_roots(a, a).recip(), 1, 0),
            self.alphas(),
        )
    }

    /// `Omega_w = sum_j i / (<<alpha_j, alpha_j>> (1 + |z_j|^2)) dz_j ^ dz_j-bar`.
    pub fn omega_w(&self, z: &[Complex64]) -> Result<SymplecticFormValue> {
        self.check_point(z)?;
        let sys = self.system();
        Ok(SymplecticFormValue {
            coeffs: self
                .alphas()
                .iter()
                .zip(z)
                .map(|(a, zj)| I / (q_to_f64(sys.pair_roots(a, a)) * (1.0 + zj.norm_sqr())))
                .collect(),
        })
    }

    /// The Liouville volume `Omega_w^l / l!`.
    pub fn liouville_density(&self) -> ProductDensity {
        ProductDensity::new(self.liouville_constant(), vec![q(-1, 1); self.len()])
    }

    /// `phi_w = -sum_j (1/2) log(1 + |z_j|^2) H^check_{alpha_j}`.
    pub fn moment_map(&self, z: &[Complex64]) -> Result<CoWeight> {
        self.check_point(z)?;
        Ok(half_log_sum(self.system(), self.alphas(), z, -1.0))
    }

    /// `<phi_w, 2 i H_rho> = -sum_j (2 <<rho, alpha_j>>/<<alpha_j, alpha_j>>) log(1 + |z_j|^2)`.
    pub fn modular_hamiltonian(&self, z: &[Complex64]) -> Result<f64> {
        self.check_point(z)?;
        Ok(self
            .rho_ratios(self.alphas())
            .iter()
            .zip(z)
            .map(|(r, zj)| -q_to_f64(*r) * zj.norm_sqr().ln_1p())
            .sum())
    }

    /// The restriction of the Kostant form `s^w` to its own cell.
    pub fn kostant_density(&self) -> ProductDensity {
        let exps = self
            .rho_ratios(self.alphas())
            .into_iter()
            .map(|r| -r - q(1, 1))
            .collect();
        ProductDensity::new(self.liouville_constant(), exps)
    }

    /// `Ad_w` applied to a coweight, computed on roots.
    pub fn ad_w(&self, h: &CoWeight) -> CoWeight {
        self.system()
            .weyl_act_coweight(self.word().indices(), h)
            .expect("validated word")
    }

    /// `w^{-1} rho`.
    pub fn w_inverse_rho(&self) -> Weight {
        let sys = self.system();
        sys.weyl_act_inverse(self.word().indices(), sys.rho())
            .expect("validated word")
    }
}
