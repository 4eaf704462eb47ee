//! Exact matrix roots over ℤ and small prime fields, with brute-force
//! oracles and a relation checker for the extended special linear group
//! ESL₃(ℤ) of integer 3×3 matrices with determinant ±1.
//!
//! - [`arith`]: integers and 𝔽ₚ scalars, polynomials, root finding.
//! - [`matrix`]: square matrices over one ring and their invariants.
//! - [`sympoly`]: two-variable symmetric polynomial recurrences.
//! - [`roots`]: cube, n-th and SL₃ square-root solvers.
//! - [`esl3`]: generator catalog, word identities, bounded word search.
//! - [`oracle`]: exhaustive enumeration used as ground truth.

pub mod arith;
pub mod esl3;
pub mod matrix;
pub mod oracle;
pub mod report;
pub mod roots;
pub mod sympoly;
pub mod wire;

pub use arith::{ArithError, ExactScalar, Prime, Ring, UnivariatePolynomial};
pub use matrix::{CharPolyInvariants, MatrixError, SquareMatrix};
pub use report::{Expectation, ReportEntry, Summary, Verdict, VerificationReport};
pub use roots::{RootCandidate, RootError, RootSolution, SqrtPair};
