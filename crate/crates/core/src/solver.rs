//! The Gleason decomposition pipeline.
//!
//! For `p1 != 0` (and on cusp strips) the function is corrected by an interpolating
//! polynomial, split into `N^2` rotation-invariant components, each component is divided
//! in the `(w, x)` coordinates, and the pieces are recombined through the explicit
//! decompositions of `w - c_p` and `x - x_p`. For `p1 = 0` on `Ω_{k,l}` a closed formula
//! in `(f - f(0, z2)) / z1` is used instead.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::division::{
    deelbdd_split_within, solfrac, solpol, solpol_within, wx_generators, ProjectionData, WCone, WxParams,
};
use crate::domain::{CuspDomain, DomainKind};
use crate::error::{Error, Result};
use crate::laurent::{ExponentPair, LaurentPolynomial, Var};
use crate::scalar::Scalar;
use crate::symmetrize::{correction_polynomial, symmetric_decompose};
use crate::verify::{build_report, VerificationReport, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    P1Nonzero,
    P1Zero,
    Omega2Local,
    /// A user-supplied pair that was only checked.
    Verify,
}

impl fmt::Display for SolveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveMode::P1Nonzero => "p1_nonzero",
            SolveMode::P1Zero => "p1_zero",
            SolveMode::Omega2Local => "omega2_local",
            SolveMode::Verify => "verify",
        })
    }
}

impl FromStr for SolveMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p1_nonzero" => Ok(SolveMode::P1Nonzero),
            "p1_zero" => Ok(SolveMode::P1Zero),
            "omega2_local" => Ok(SolveMode::Omega2Local),
            "verify" => Ok(SolveMode::Verify),
            other => Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GleasonProblem<S> {
    pub domain: CuspDomain,
    pub f: LaurentPolynomial<S>,
    pub p: (S, S),
}

impl<S: Scalar> GleasonProblem<S> {
    pub fn new(domain: CuspDomain, f: LaurentPolynomial<S>, p: (S, S)) -> Self {
        Self { domain, f, p }
    }

    pub fn p_c64(&self) -> [Complex64; 2] {
        [self.p.0.to_c64(), self.p.1.to_c64()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolveOptions {
    /// Solve for `f - f(p)` instead of rejecting a nonvanishing `f`.
    pub subtract_value: bool,
    pub verify: VerifyOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GleasonSolution<S> {
    /// The function that was decomposed (after any subtraction of `f(p)`).
    pub f: LaurentPolynomial<S>,
    pub f1: LaurentPolynomial<S>,
    pub f2: LaurentPolynomial<S>,
    pub mode: SolveMode,
    pub report: VerificationReport,
    pub k: u32,
    pub l: u32,
    pub p: (Complex64, Complex64),
    pub subtracted: Option<Complex64>,
}

/// Validates the problem, dispatches on the domain and `p1`, and attaches a report.
pub fn solve<S: Scalar>(problem: &GleasonProblem<S>, opts: &SolveOptions) -> Result<GleasonSolution<S>> {
    let (f, subtracted) = validate(problem, opts)?;
    let p = (&problem.p.0, &problem.p.1);
    let domain = &problem.domain;
    let (k, l) = (domain.k(), domain.l());
    let (mode, (f1, f2), bound_rhs) = match domain.kind() {
        DomainKind::HartogsFull if p.0.is_zero() => {
            let rhs = p1_zero_bound(&f, p.1, l);
            (SolveMode::P1Zero, p1_zero_pair(&f, p.1, l)?, Some(rhs))
        }
        DomainKind::HartogsFull => (SolveMode::P1Nonzero, p1_nonzero_pair(&f, p, k, l)?, None),
        DomainKind::StripOmega2(s) => {
            let params = WxParams::new(k, l, s.m, s.n)?;
            (SolveMode::Omega2Local, omega2_local_pair(&f, p, params)?, None)
        }
    };
    let report = build_report(&f, p, &f1, &f2, domain, bound_rhs, &opts.verify)?;
    Ok(GleasonSolution {
        f,
        f1,
        f2,
        mode,
        report,
        k,
        l,
        p: (p.0.to_c64(), p.1.to_c64()),
        subtracted,
    })
}

/// [`solve`] restricted to `Ω_{k,l}` with `p1 != 0`.
pub fn solve_p1_nonzero<S: Scalar>(
    problem: &GleasonProblem<S>,
    opts: &SolveOptions,
) -> Result<GleasonSolution<S>> {
    if !matches!(problem.domain.kind(), DomainKind::HartogsFull) || problem.p.0.is_zero() {
        return Err(Error::Precondition(
            "solve_p1_nonzero needs Ω_{k,l} and p1 != 0".into(),
        ));
    }
    solve(problem, opts)
}

/// [`solve`] restricted to `Ω_{k,l}` with `p1 = 0`.
pub fn solve_p1_zero<S: Scalar>(
    problem: &GleasonProblem<S>,
    opts: &SolveOptions,
) -> Result<GleasonSolution<S>> {
    if !matches!(problem.domain.kind(), DomainKind::HartogsFull) || !problem.p.0.is_zero() {
        return Err(Error::Precondition("solve_p1_zero needs Ω_{k,l} and p1 = 0".into()));
    }
    solve(problem, opts)
}

/// [`solve`] restricted to a cusp strip.
pub fn solve_omega2_local<S: Scalar>(
    problem: &GleasonProblem<S>,
    opts: &SolveOptions,
) -> Result<GleasonSolution<S>> {
    if !matches!(problem.domain.kind(), DomainKind::StripOmega2(_)) {
        return Err(Error::Precondition(
            "solve_omega2_local needs a strip domain".into(),
        ));
    }
    solve(problem, opts)
}

fn validate<S: Scalar>(
    problem: &GleasonProblem<S>,
    opts: &SolveOptions,
) -> Result<(LaurentPolynomial<S>, Option<Complex64>)> {
    if !problem.domain.contains(&problem.p_c64()) {
        return Err(Error::InvalidInput(format!(
            "p = ({}, {}) is not in the domain",
            crate::error::fmt_c64(problem.p.0.to_c64()),
            crate::error::fmt_c64(problem.p.1.to_c64())
        )));
    }
    let cert = problem.domain.poly_bounded(&problem.f);
    if !cert.bounded {
        return Err(Error::Unbounded {
            violations: cert.violations,
        });
    }
    let value = problem.f.eval(&problem.p.0, &problem.p.1)?;
    if value.is_negligible(S::DIVISIBILITY_TOL * problem.f.abs_sum()) {
        return Ok((problem.f.clone(), None));
    }
    if !opts.subtract_value {
        return Err(Error::NonVanishing {
            value: value.to_c64(),
        });
    }
    let shifted = &problem.f - &LaurentPolynomial::constant(value.clone());
    Ok((shifted, Some(value.to_c64())))
}

/// `2^(l+1) sum |c_f| / |p2|^l`.
pub fn p1_zero_bound<S: Scalar>(f: &LaurentPolynomial<S>, p2: &S, l: u32) -> f64 {
    2f64.powi(l as i32 + 1) * f.abs_sum() / p2.modulus().powi(l as i32)
}

/// The `p1 = 0` decomposition on `Ω_{k,l}`:
///
/// `f1 = (z2^l / p2^l) (f - f0) / z1`,
/// `f2 = -(sum_{j<l} z2^j p2^(l-1-j)) (f - f0) / p2^l + f0 / (z2 - p2)`, with `f0 = f(0, z2)`.
pub fn p1_zero_pair<S: Scalar>(
    f: &LaurentPolynomial<S>,
    p2: &S,
    l: u32,
) -> Result<(LaurentPolynomial<S>, LaurentPolynomial<S>)> {
    if p2.is_zero() {
        return Err(Error::Precondition("the p1 = 0 branch needs p2 != 0".into()));
    }
    let f0 = f.restrict(Var::Z1, &S::zero())?;
    let inv = S::one() / p2.pow_i64(l as i64)?;
    let f1 = f
        .shift_divide_z1(&S::zero())?
        .shift(ExponentPair::new(0, l as i64))
        .scale(&inv);
    let l = l as i64;
    let mut geometric = Vec::with_capacity(l as usize);
    for j in 0..l {
        geometric.push((ExponentPair::new(0, j), -(inv.clone() * p2.pow_i64(l - 1 - j)?)));
    }
    let geometric = LaurentPolynomial::from_terms(geometric);
    let tail = f0
        .divide_univariate_within(Var::Z2, p2, f.abs_sum())
        .map_err(|err| match err {
        Error::NotDivisible { residual } => Error::Contract(format!(
            "f(0, p2) = {} ≠ 0",
            crate::error::fmt_c64(residual)
        )),
        other => other,
    })?;
    let f2 = &(&geometric * &(f - &f0)) + &tail;
    Ok((f1, f2))
}

/// The `p1 != 0` decomposition on `Ω_{k,l}` (`N = k`, `x = z2`).
pub fn p1_nonzero_pair<S: Scalar>(
    f: &LaurentPolynomial<S>,
    p: (&S, &S),
    k: u32,
    l: u32,
) -> Result<(LaurentPolynomial<S>, LaurentPolynomial<S>)> {
    local_pair(f, p, WxParams::hartogs(k, l)?, WCone::Polynomial)
}

/// The local decomposition on a cusp strip cut along `z1^m z2^n = const`.
pub fn omega2_local_pair<S: Scalar>(
    f: &LaurentPolynomial<S>,
    p: (&S, &S),
    params: WxParams,
) -> Result<(LaurentPolynomial<S>, LaurentPolynomial<S>)> {
    local_pair(f, p, params, WCone::Laurent)
}

fn local_pair<S: Scalar>(
    f: &LaurentPolynomial<S>,
    p: (&S, &S),
    params: WxParams,
    cone: WCone,
) -> Result<(LaurentPolynomial<S>, LaurentPolynomial<S>)> {
    if p.0.is_zero() || p.1.is_zero() {
        return Err(Error::Precondition("the local construction needs p1, p2 != 0".into()));
    }
    let order = params.order();
    let correction = correction_polynomial(f, p, order)?;
    // Floating round-off in the pieces is measured against the scale at which f(p) = 0
    // was accepted, not against the (possibly cancelling) pieces themselves.
    let value_scale =
        f.abs_sum().max(f.abs_eval(p.0, p.1)?) + correction.abs_eval(p.0, p.1)?;
    let (c1, c2) = solpol_within(&correction, p, value_scale)?;
    let system = symmetric_decompose(&(f - &correction), order)?;

    let mut w_parts = Vec::new();
    let mut x_parts = Vec::new();
    for ((i, j), component) in system.iter() {
        if component.is_zero() {
            continue;
        }
        let shift_scale = p.0.modulus().powi(i as i32) * p.1.modulus().powi(j as i32);
        let (g1, g2) =
            deelbdd_split_within(i, j, component, params, p, cone, value_scale / shift_scale)?;
        w_parts.push(g1);
        x_parts.push(g2);
    }
    let w_sum: LaurentPolynomial<S> = w_parts.into_iter().sum();
    let x_sum: LaurentPolynomial<S> = x_parts.into_iter().sum();

    let (r1, r2) = solfrac(params.k, params.l, p)?;
    let (_, x_gen) = wx_generators(params, &ProjectionData::new(params, p)?);
    let (x1, x2) = solpol(&x_gen, p)?;

    let mut f1 = &c1 + &(&w_sum * &r1);
    if !x1.is_zero() {
        f1 = &f1 + &(&x_sum * &x1);
    }
    let mut f2 = &c2 + &(&w_sum * &r2);
    f2 = if x2.is_one() {
        &f2 + &x_sum
    } else {
        &f2 + &(&x_sum * &x2)
    };
    Ok((f1, f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use num_rational::BigRational;

    type Q = Complex<BigRational>;
    type P = LaurentPolynomial<Q>;

    fn q(re: &str) -> Q {
        Q::from_literals(re, "0").unwrap()
    }

    fn quick() -> SolveOptions {
        SolveOptions {
            subtract_value: false,
            verify: VerifyOptions {
                samples: 200,
                ..VerifyOptions::default()
            },
        }
    }

    #[test]
    fn translated_coordinate_is_trivial() {
        for (k, l) in [(1, 1), (2, 1), (1, 2), (2, 3)] {
            let d = CuspDomain::hartogs(k, l).unwrap();
            for p in [(q("0"), q("0.5")), (q("0.1"), q("0.9"))] {
                let f = P::linear(Var::Z2, &p.1);
                let sol = solve(&GleasonProblem::new(d.clone(), f, p), &quick()).unwrap();
                assert!(sol.f1.is_zero(), "{k} {l}");
                assert!(sol.f2.is_one());
            }
        }
    }

    #[test]
    fn hartogs_fraction_example() {
        let d = CuspDomain::hartogs(1, 1).unwrap();
        let (p1, p2) = (q("0.5"), q("0.8"));
        let f = &P::monomial(q("1"), 1, -1) - &P::constant(p1.clone() / p2.clone());
        let sol = solve(&GleasonProblem::new(d, f, (p1, p2)), &quick()).unwrap();
        assert_eq!(sol.mode, SolveMode::P1Nonzero);
        assert_eq!(sol.f1, P::constant(q("1.25")));
        assert_eq!(sol.f2, P::monomial(q("-1.25"), 1, -1));
        assert!(sol.report.symbolic_residual_zero);
        assert!(sol.report.passed());
    }

    #[test]
    fn product_example_recombines() {
        let d = CuspDomain::hartogs(1, 1).unwrap();
        let (p1, p2) = (q("0.5"), q("0.8"));
        let c_p = p1.clone() / p2.clone();
        let wgen = &P::monomial(q("1"), 1, -1) - &P::constant(c_p);
        let xgen = P::linear(Var::Z2, &p2);
        let f = &wgen * &xgen;
        let sol = solve(&GleasonProblem::new(d, f, (p1, p2)), &quick()).unwrap();
        assert_eq!(sol.f1, xgen.scale(&q("1.25")));
        assert_eq!(sol.f2, (&P::monomial(q("-1.25"), 1, -1) * &xgen));
    }

    #[test]
    fn p1_zero_example() {
        let d = CuspDomain::hartogs(1, 1).unwrap();
        let f = P::var(Var::Z1);
        let sol = solve(&GleasonProblem::new(d, f, (q("0"), q("0.5"))), &quick()).unwrap();
        assert_eq!(sol.mode, SolveMode::P1Zero);
        assert_eq!(sol.f1, P::monomial(q("2"), 0, 1));
        assert_eq!(sol.f2, P::monomial(q("-2"), 1, 0));
        assert_eq!(sol.report.bound_rhs, Some(8.0));
        assert!(sol.report.sup_f1_sampled <= 2.0);
        assert!(sol.report.passed());
    }

    #[test]
    fn rejections() {
        let d = CuspDomain::hartogs(1, 1).unwrap();
        let p = (q("0.5"), q("0.8"));
        let err = solve(&GleasonProblem::new(d.clone(), P::var(Var::Z2), p.clone()), &quick()).unwrap_err();
        assert!(matches!(err, Error::NonVanishing { value } if value.re == 0.8));

        let unbounded = &P::monomial(q("1"), 0, -1) - &P::constant(q("1.25"));
        let err = solve(&GleasonProblem::new(d.clone(), unbounded, p.clone()), &quick()).unwrap_err();
        assert!(matches!(err, Error::Unbounded { .. }));

        let outside = (q("0.9"), q("0.5"));
        let err = solve(&GleasonProblem::new(d.clone(), P::zero(), outside), &quick()).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));

        let mut opts = quick();
        opts.subtract_value = true;
        let sol = solve(&GleasonProblem::new(d, P::var(Var::Z2), p), &opts).unwrap();
        assert_eq!(sol.subtracted.unwrap().re, 0.8);
        assert!(sol.f2.is_one());
    }

    #[test]
    fn exact_order_three_is_reported() {
        let d = CuspDomain::hartogs(3, 1).unwrap();
        let p = (q("0.2"), q("0.5"));
        let f = P::linear(Var::Z2, &p.1);
        let err = solve(&GleasonProblem::new(d, f, p), &quick()).unwrap_err();
        assert_eq!(err, Error::RootOrderUnavailable { order: 3 });
    }
}
