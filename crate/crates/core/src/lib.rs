//! Permanents, their higher-order Fréchet derivatives, and the derivatives of
//! characteristic-polynomial coefficients, with norms, perturbation bounds,
//! and formula-independent reference computations.
//!
//! Work is spread over a rayon pool unless the `parallel` feature is off or
//! [`parallel::set_sequential`] is in effect. Reductions always run in a
//! fixed order, so floating results do not depend on the thread count.

pub mod bounds;
pub mod charpoly;
pub mod derivatives;
pub mod error;
pub mod matrix;
pub mod multiindex;
pub mod oracle;
pub mod parallel;
pub mod permanent;
pub mod random;
pub mod scalar;
pub mod svd;
pub mod tensor;
pub mod verify;

pub use bounds::{
    dk_gr_norm_exact, dkper_norm_bound, elementary_symmetric, gr_perturb_bound, gr_perturb_bound_weak,
    per_perturb_bound, BoundKind, BoundReport, BoundWitness,
};
pub use charpoly::{charpoly_all, dk_gr, dk_gr_columns, dk_gr_minors, dk_gr_tensor, g_r, CharPolyCoefficients};
pub use derivatives::{dkper, dkper_columns, dkper_minors, dkper_tensor, dper, DerivativeRequest, Formula};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, GaussianMatrix, Matrix};
pub use multiindex::{MultiIndex, Permutation};
pub use oracle::{faddeev_leverrier, finite_diff, mixed_partial_interp, Functional, ScalarField};
pub use permanent::{padj, per};
pub use scalar::{GaussianInt, Scalar};
pub use svd::{operator_norm, svd, trace_norm, SingularSpectrum};
pub use verify::{run_suite, VerifyConfig, VerifyReport};
