//! Spectral computations for the Jacobi differential operator
//!
//! ```text
//! tau_{a,b} = -(1-x)^{-a} (1+x)^{-b} d/dx [(1-x)^{a+1}(1+x)^{b+1}] d/dx,   x in (-1,1),
//! ```
//!
//! acting in the weighted space `L^2((-1,1); (1-x)^a (1+x)^b dx)`. The crate
//! evaluates closed-form fundamental systems built from the Gauss
//! hypergeometric function, generalized boundary values at the singular
//! endpoints, Weyl-Titchmarsh m-functions for every limit-point regime, and
//! Donoghue m-functions for all self-adjoint extensions (separated, coupled,
//! Krein-von Neumann, and the one-limit-circle scalar case). An independent
//! oracle layer (adaptive Runge-Kutta transport, Gauss-Jacobi quadrature,
//! recessive-solution extraction, pole search) cross-checks every closed form.
//!
//! Modules:
//!
//! | module      | contents |
//! |-------------|----------|
//! | [`specfun`]   | complex Gamma, digamma, Pochhammer, 2F1 and its logarithmic companion |
//! | [`expr`]      | coefficients, endpoint classification, sigma, quasi-derivatives, Wronskians |
//! | [`solutions`] | endpoint fundamental systems, Jacobi polynomials, quasi-rational eigensolutions |
//! | [`boundary`]  | connection matrices, boundary-value tables, numeric boundary-value extraction |
//! | [`mweyl`]     | Weyl-Titchmarsh solutions and m-functions, Friedrichs spectra |
//! | [`donoghue`]  | defect basis, extension matrices, Donoghue m-functions |
//! | [`oracle`]    | ODE transport, Gauss-Jacobi quadrature, m-extraction, pole search |
//! | [`verify`]    | cross-module verification suites (also driven by the CLI) |

pub mod boundary;
pub mod donoghue;
pub mod expr;
pub mod linalg;
pub mod mweyl;
pub mod oracle;
pub mod solutions;
pub mod specfun;
pub mod verify;

use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument outside the operator's interval or parameter domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Parameter combination not admissible for the requested object.
    #[error("parameter error: {0}")]
    Param(String),
    /// A Gamma/digamma argument hit a non-positive integer.
    #[error("pole: {0}")]
    Pole(String),
    /// The spectral parameter coincides with an eigenvalue of the relevant extension.
    #[error("spectrum pole: {0}")]
    SpectrumPole(String),
    /// Degenerate connection parameters (integer exponent differences).
    #[error("degenerate case: {0}")]
    Degenerate(String),
    /// A series or extrapolation failed to meet its tail bound.
    #[error("no convergence: {0}")]
    NonConvergence(String),
    /// The extension's K matrix (or scalar denominator) is singular at this z.
    #[error("K matrix singular: {0}")]
    KMatrixSingular(String),
    /// A root/pole scan found a different count than requested.
    #[error("count mismatch: expected {expected}, found {found}")]
    CountMismatch { expected: usize, found: usize },
    /// The ODE integrator could not complete a step.
    #[error("step failure: {0}")]
    StepFailure(String),
    /// The minimal operator is not strictly positive for these parameters.
    #[error("not strictly positive: {0}")]
    NotStrictlyPositive(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use expr::{EndpointClass, JacobiParams, SolutionValue};
