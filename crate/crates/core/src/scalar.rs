//! Exact scalars of the form `q * i^k * pi^m` with `q` rational.
//!
//! Every density constant and every closed-form integral on a cell is such a
//! monomial, so normalization statements ("exactly 1", "108 pi^3") can be
//! decided without rounding.

use std::fmt;
use std::ops::{Div, Mul};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::rootsys::{format_rational, q_to_f64, Rational};

/// `rational * i^i_power * pi^pi_power`, normalized so that `i_power` is 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    pub rational: Rational,
    pub i_power: u8,
    pub pi_power: i32,
}

impl ExactScalar {
    pub fn new(rational: Rational, i_power: u32, pi_power: i32) -> Self {
        let r = if (i_power / 2) % 2 == 1 { -rational } else { rational };
        ExactScalar {
            rational: r,
            i_power: (i_power % 2) as u8,
            pi_power,
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        ExactScalar::new(q, 0, 0)
    }

    pub fn i() -> Self {
        ExactScalar::new(Rational::one(), 1, 0)
    }

    pub fn pi() -> Self {
        ExactScalar::new(Rational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.i_power == 0 && self.pi_power == 0
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        // 1/i = -i
        ExactScalar::new(self.rational.recip(), 3 * self.i_power as u32, -self.pi_power)
    }

    pub fn powi(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc * *self)
    }

    /// The unit `+-1` or `+-i` carrying the sign and the `i` factor.
    pub fn phase(&self) -> Complex64 {
        let s = if self.rational.is_negative() { -1.0 } else { 1.0 };
        if self.i_power == 1 {
            Complex64::new(0.0, s)
        } else {
            Complex64::new(s, 0.0)
        }
    }

    /// `|self|` as an exact scalar.
    pub fn abs(&self) -> Self {
        ExactScalar::new(self.rational.abs(), 0, self.pi_power)
    }

    pub fn to_complex(&self) -> Complex64 {
        self.phase() * (q_to_f64(self.rational.abs()) * std::f64::consts::PI.powi(self.pi_power))
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        ExactScalar::new(
            self.rational * rhs.rational,
            (self.i_power + rhs.i_power) as u32,
            self.pi_power + rhs.pi_power,
        )
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        self * rhs.inv()
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        let r = &self.rational;
        let bare = self.i_power == 1 || self.pi_power != 0;
        if r.is_one() && bare {
        } else if *r == -Rational::one() && bare {
            parts.push("-".to_string());
        } else {
            parts.push(format_rational(r));
        }
        if self.i_power == 1 {
            parts.push("i".into());
        }
        match self.pi_power {
            0 => {}
            1 => parts.push("pi".into()),
            k => parts.push(format!("pi^{k}")),
        }
        let mut s = String::new();
        for p in parts {
            if !s.is_empty() && s != "-" {
                s.push('*');
            }
            s.push_str(&p);
        }
        f.write_str(&s)
    }
}
