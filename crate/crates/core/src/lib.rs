//! Gleason decompositions `f = f1 (z1 - p1) + f2 (z2 - p2)` for bounded Laurent
//! polynomials on the cusp domains `Ω_{k,l} = {|z1|^k < |z2|^l < 1}` and on cusp strips
//! `{a < |z1^k / z2^l| < b}`.
//!
//! The algebra is generic over the coefficient field ([`Scalar`]); [`C64`], [`C32`] and
//! the exact Gaussian rationals [`ExactComplex`] are provided.
//!
//! ```
//! use gleason_core::{parse_poly, solve, CuspDomain, ExactComplex, GleasonProblem, Scalar, SolveOptions};
//!
//! let f = parse_poly::<ExactComplex>("z1").unwrap();
//! let p = (ExactComplex::from_i64(0), ExactComplex::from_literals("0.5", "0").unwrap());
//! let problem = GleasonProblem::new(CuspDomain::hartogs(1, 1).unwrap(), f, p);
//! let sol = solve(&problem, &SolveOptions::default()).unwrap();
//! assert_eq!(gleason_core::format_poly(&sol.f1), "2z2");
//! assert_eq!(gleason_core::format_poly(&sol.f2), "-2z1");
//! assert!(sol.report.passed());
//! ```

pub mod corpus;
pub mod division;
pub mod domain;
pub mod error;
pub mod expr;
pub mod laurent;
pub mod scalar;
pub mod solver;
pub mod symmetrize;
pub mod verify;

use num_complex::Complex;
use num_rational::BigRational;

pub use division::{deelbdd_split, solfrac, solpol, to_wx, WCone, WxForm, WxParams};
pub use domain::{CuspDomain, DomainKind, LogBoundary, Point, SplitLine, StripParams};
pub use error::{Error, Result};
pub use expr::{emit_report, format_poly, parse_complex, parse_poly, ReportFormat};
pub use laurent::{ExponentPair, LaurentPolynomial, Var};
pub use scalar::Scalar;
pub use solver::{solve, GleasonProblem, GleasonSolution, SolveMode, SolveOptions};
pub use symmetrize::{correction_polynomial, symmetric_decompose, SymmetricSystem};
pub use verify::{VerificationReport, VerifyOptions};

pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;
pub type ExactComplex = Complex<BigRational>;

pub type Laurent64 = LaurentPolynomial<C64>;
pub type Laurent32 = LaurentPolynomial<C32>;
pub type LaurentExact = LaurentPolynomial<ExactComplex>;
