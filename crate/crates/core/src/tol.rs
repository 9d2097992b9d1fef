//! Default numerical tolerances.

/// Iwasawa reconstruction `|kan - g|`, relative to `max(1, |g|)`.
pub const RECONSTRUCTION: f64 = 1e-12;

/// `|det g - 1|`, relative to the Hadamard bound of `g`.
pub const UNIMODULAR: f64 = 1e-8;

/// Pivot threshold in Bruhat elimination, relative to the column maximum.
pub const PIVOT: f64 = 1e-9;

/// Shape checks on `N_w`: unipotency and support.
pub const CELL_SUPPORT: f64 = 1e-10;

/// Exterior-algebra coefficients below this are dropped.
pub const EXT_PRUNE: f64 = 1e-15;

/// Neumann series stops once the increment's largest coefficient is below this.
pub const SERIES_INCREMENT: f64 = 1e-14;

/// Relative error target of the adaptive quadrature.
pub const QUADRATURE_REL: f64 = 1e-12;
