use num_complex::Complex64;
use thiserror::Error;

use crate::laurent::{ExponentPair, Var};

/// Errors produced by the algebra, geometry and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot evaluate a negative power of {var} at {var} = 0")]
    ZeroCoordinate { var: Var },

    #[error("not divisible: value at the root is {}", fmt_c64(*.residual))]
    NotDivisible { residual: Complex64 },

    #[error("roots of unity of order {order} are not representable in this scalar type")]
    RootOrderUnavailable { order: u32 },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("exponent {value} at offset {offset} exceeds the limit of 1000000 in magnitude")]
    ExponentOverflow { offset: usize, value: String },

    #[error("invalid literal {text:?}: {message}")]
    Literal { text: String, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("f(p) = {} ≠ 0", fmt_c64(*.value))]
    NonVanishing { value: Complex64 },

    #[error("f is not bounded on the domain: unbounded monomials {}", fmt_exponents(.violations))]
    Unbounded { violations: Vec<ExponentPair> },

    #[error("exponent {exponent} is not in the w-polynomial cone (negative power of w)")]
    NotInWCone { exponent: ExponentPair },

    #[error("internal contract violated: {0}")]
    Contract(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Renders a complex number as `re`, `re+imi` or `re-imi` using shortest round-trip decimals.
pub fn fmt_c64(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im == 0.0 {
        format!("{re}")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

fn fmt_exponents(list: &[ExponentPair]) -> String {
    list.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
