//! Explicit coordinates, densities and Kostant forms on the Schubert cells of
//! `SL(n, C) / B`.
//!
//! A cell is fixed by a reduced word for a Weyl group element. Points of the
//! cell are given by complex coordinates `z_1, ..., z_l`, and every density on
//! the cell (Haar, Liouville, Kostant) is a product of factors
//! `(1 + |z_j|^2)^{e_j} dz_j ^ dz_j-bar`.
//!
//! ```
//! use schubert::{Cell, RootSystem};
//!
//! let sys = RootSystem::type_a(3).unwrap();
//! let cell = Cell::from_indices(&sys, &[0, 1, 0]).unwrap();
//! assert_eq!(cell.haar_density().exponents_display(), vec!["0", "1", "0"]);
//! ```

pub mod cell;
pub mod cells;
pub mod error;
pub mod kostant;
pub mod linalg;
pub mod matrixlie;
pub mod quad;
pub mod rootsys;
pub mod scalar;
pub mod tol;
pub mod verify;

pub use cell::Cell;
pub use cells::{ProductDensity, SymplecticFormValue};
pub use error::{Error, Result};
pub use kostant::{ExtAlgebra, ExtElement};
pub use linalg::Matrix;
pub use matrixlie::{iwasawa, Iwasawa};
pub use quad::{IntegralResult, Method};
pub use rootsys::{CoWeight, ReducedWord, Root, RootSequences, RootSystem, Weight};
pub use scalar::ExactScalar;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/coordinates.md")]
    mod coordinates {}
    #[doc = include_str!("../../../book/src/densities.md")]
    mod densities {}
    #[doc = include_str!("../../../book/src/kostant.md")]
    mod kostant {}
    #[doc = include_str!("../../../book/src/integrals.md")]
    mod integrals {}
}
