//! Independent checks on a decomposition `f = f1 (z1 - p1) + f2 (z2 - p2)`.
//!
//! Sampled quantities are estimates over a deterministic, cusp-biased point set; they are
//! lower bounds for the true suprema, not certified values.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::domain::{CuspDomain, Point};
use crate::error::Result;
use crate::laurent::{ExponentPair, LaurentPolynomial, Var};
use crate::scalar::{RootTable, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub cusp_bias: f64,
    /// Residual tolerance relative to `1 + sup_upper(f)`, which is `1 + sum |c_f|` on `Ω_{k,l}`.
    pub tol_rel: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            samples: 2000,
            seed: 42,
            cusp_bias: 0.5,
            tol_rel: 1e-9,
        }
    }
}

/// `f - f1 (z1 - p1) - f2 (z2 - p2)`.
pub fn residual_polynomial<S: Scalar>(
    f: &LaurentPolynomial<S>,
    p: (&S, &S),
    f1: &LaurentPolynomial<S>,
    f2: &LaurentPolynomial<S>,
) -> LaurentPolynomial<S> {
    let lin1 = LaurentPolynomial::linear(Var::Z1, p.0);
    let lin2 = LaurentPolynomial::linear(Var::Z2, p.1);
    &(f - &(f1 * &lin1)) - &(f2 * &lin2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    /// Largest coefficient modulus of the residual polynomial.
    pub residual_coeff_max: f64,
    pub symbolic_residual_zero: bool,
    /// Largest `|residual(q)|` over the samples.
    pub residual_max: f64,
    pub residual_argmax: Option<Point>,
    /// Largest `|f(q) - f1(q)(q1 - p1) - f2(q)(q2 - p2)|`, each factor evaluated separately.
    pub residual_pointwise_max: f64,
}

pub fn check_identity<S: Scalar>(
    f: &LaurentPolynomial<S>,
    p: (&S, &S),
    f1: &LaurentPolynomial<S>,
    f2: &LaurentPolynomial<S>,
    domain: &CuspDomain,
    opts: &VerifyOptions,
) -> Result<IdentityCheck> {
    let points = domain.sample(opts.samples, opts.seed, opts.cusp_bias);
    check_identity_at(f, p, f1, f2, &points)
}

pub fn check_identity_at<S: Scalar>(
    f: &LaurentPolynomial<S>,
    p: (&S, &S),
    f1: &LaurentPolynomial<S>,
    f2: &LaurentPolynomial<S>,
    points: &[Point],
) -> Result<IdentityCheck> {
    let residual = residual_polynomial(f, p, f1, f2);
    // Floating residuals are taken before pruning, so round-off cannot hide in the canonical form.
    let raw: Vec<(ExponentPair, Complex64)> = if S::EXACT {
        residual.terms().map(|(e, c)| (*e, c.to_c64())).collect()
    } else {
        raw_residual(f, p, f1, f2)
    };
    let (fc, f1c, f2c) = (f.to_c64(), f1.to_c64(), f2.to_c64());
    let (p1, p2) = (p.0.to_c64(), p.1.to_c64());
    let mut residual_max = 0.0f64;
    let mut residual_argmax = None;
    let mut pointwise = 0.0f64;
    for q in points {
        let r = eval_terms(&raw, q)?.norm();
        if residual_argmax.is_none() || r > residual_max {
            residual_max = r;
            residual_argmax = Some(*q);
        }
        let direct = fc.eval(&q[0], &q[1])?
            - f1c.eval(&q[0], &q[1])? * (q[0] - p1)
            - f2c.eval(&q[0], &q[1])? * (q[1] - p2);
        pointwise = pointwise.max(direct.norm());
    }
    let residual_coeff_max = raw.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    Ok(IdentityCheck {
        residual_coeff_max,
        symbolic_residual_zero: if S::EXACT {
            residual.is_zero()
        } else {
            residual_coeff_max == 0.0
        },
        residual_max,
        residual_argmax,
        residual_pointwise_max: pointwise,
    })
}

/// `f - f1 (z1 - p1) - f2 (z2 - p2)` accumulated term by term in `Complex64`, zeros dropped.
fn raw_residual<S: Scalar>(
    f: &LaurentPolynomial<S>,
    p: (&S, &S),
    f1: &LaurentPolynomial<S>,
    f2: &LaurentPolynomial<S>,
) -> Vec<(ExponentPair, Complex64)> {
    let mut acc: BTreeMap<ExponentPair, Complex64> = BTreeMap::new();
    for (e, c) in f.terms() {
        *acc.entry(*e).or_default() += c.to_c64();
    }
    for (g, shift, root) in [
        (f1, ExponentPair::new(1, 0), p.0.to_c64()),
        (f2, ExponentPair::new(0, 1), p.1.to_c64()),
    ] {
        for (e, c) in g.terms() {
            let c = c.to_c64();
            *acc.entry(*e + shift).or_default() -= c;
            *acc.entry(*e).or_default() += c * root;
        }
    }
    acc.into_iter().filter(|(_, c)| *c != Complex64::new(0.0, 0.0)).collect()
}

fn eval_terms(terms: &[(ExponentPair, Complex64)], q: &Point) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (e, c) in terms {
        if (q[0] == Complex64::new(0.0, 0.0) && e.a < 0) || (q[1] == Complex64::new(0.0, 0.0) && e.b < 0) {
            return Err(crate::error::Error::ZeroCoordinate {
                var: if e.a < 0 { Var::Z1 } else { Var::Z2 },
            });
        }
        acc += c * q[0].powi(e.a as i32) * q[1].powi(e.b as i32);
    }
    Ok(acc)
}

/// `max |g(q)|` over `samples` cusp-biased points (bias 0.5).
pub fn sampled_sup<S: Scalar>(
    g: &LaurentPolynomial<S>,
    domain: &CuspDomain,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    sup_over(&g.to_c64(), &domain.sample(samples, seed, 0.5))
}

pub fn sup_over(g: &LaurentPolynomial<Complex64>, points: &[Point]) -> Result<f64> {
    let mut best = 0.0f64;
    for q in points {
        best = best.max(g.eval(&q[0], &q[1])?.norm());
    }
    Ok(best)
}

/// The averaging formula for the symmetrization components at `q`:
/// `f_ij(q) = 1/(N^2 q1^i q2^j) sum_{s,t=1..N} zeta^(-is-jt) f(zeta^s q1, zeta^t q2)`.
///
/// Entry `i * N + j` holds `f_ij(q)`.
pub fn oracle_averaging<S: Scalar>(
    f: &LaurentPolynomial<S>,
    order: u32,
    q: Point,
) -> Result<Vec<Complex64>> {
    let table = RootTable::<Complex64>::new(order)?;
    let fc = f.to_c64();
    let n = order as i64;
    let mut values = vec![Complex64::new(0.0, 0.0); (n * n) as usize];
    for s in 1..=n {
        for t in 1..=n {
            values[((s - 1) * n + (t - 1)) as usize] =
                fc.eval(&(table.pow(s) * q[0]), &(table.pow(t) * q[1]))?;
        }
    }
    let mut out = Vec::with_capacity((n * n) as usize);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for s in 1..=n {
                for t in 1..=n {
                    acc += table.pow(-i * s - j * t) * values[((s - 1) * n + (t - 1)) as usize];
                }
            }
            out.push(acc / ((n * n) as f64 * q[0].powi(i as i32) * q[1].powi(j as i32)));
        }
    }
    Ok(out)
}

/// Everything the solver certifies about a decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub residual_max: f64,
    pub residual_argmax: Option<Point>,
    pub residual_coeff_max: f64,
    pub residual_pointwise_max: f64,
    pub symbolic_residual_zero: bool,
    pub bounded_f1: bool,
    pub bounded_f2: bool,
    pub cone_violations: Vec<ExponentPair>,
    pub sup_f_upper: f64,
    pub sup_f1_sampled: f64,
    pub sup_f2_sampled: f64,
    /// `2^(l+1) sum |c_f| / |p2|^l`, only on the `p1 = 0` branch.
    pub bound_rhs: Option<f64>,
    pub samples_used: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.residual_coeff_max <= self.tolerance
            && self.residual_max <= self.tolerance
            && self.bounded_f1
            && self.bounded_f2
            && self.bound_rhs.is_none_or(|b| self.sup_f1_sampled <= b)
    }
}

pub fn build_report<S: Scalar>(
    f: &LaurentPolynomial<S>,
    p: (&S, &S),
    f1: &LaurentPolynomial<S>,
    f2: &LaurentPolynomial<S>,
    domain: &CuspDomain,
    bound_rhs: Option<f64>,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let points = domain.sample(opts.samples, opts.seed, opts.cusp_bias);
    let identity = check_identity_at(f, p, f1, f2, &points)?;
    let cert_f = domain.poly_bounded(f);
    let cert1 = domain.poly_bounded(f1);
    let cert2 = domain.poly_bounded(f2);
    let mut cone_violations = cert1.violations.clone();
    for e in &cert2.violations {
        if !cone_violations.contains(e) {
            cone_violations.push(*e);
        }
    }
    Ok(VerificationReport {
        residual_max: identity.residual_max,
        residual_argmax: identity.residual_argmax,
        residual_coeff_max: identity.residual_coeff_max,
        residual_pointwise_max: identity.residual_pointwise_max,
        symbolic_residual_zero: identity.symbolic_residual_zero,
        bounded_f1: cert1.bounded,
        bounded_f2: cert2.bounded,
        cone_violations,
        sup_f_upper: cert_f.sup_upper,
        sup_f1_sampled: sup_over(&f1.to_c64(), &points)?,
        sup_f2_sampled: sup_over(&f2.to_c64(), &points)?,
        bound_rhs,
        samples_used: points.len(),
        seed: opts.seed,
        tolerance: opts.tol_rel * (1.0 + cert_f.sup_upper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = LaurentPolynomial<Complex64>;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn averaging_single_variable() {
        let vals = oracle_averaging(&F::var(Var::Z1), 2, [c(1.0), c(1.0)]).unwrap();
        assert!((vals[2] - c(1.0)).norm() < 1e-15);
        for (idx, v) in vals.iter().enumerate() {
            if idx != 2 {
                assert!(v.norm() < 1e-15);
            }
        }
    }

    #[test]
    fn averaging_constant() {
        let q = [Complex64::new(0.3, 0.4), Complex64::new(-0.2, 0.7)];
        let vals = oracle_averaging(&F::constant(c(2.5)), 3, q).unwrap();
        assert!((vals[0] - c(2.5)).norm() < 1e-14);
        assert!(vals[1..].iter().all(|v| v.norm() < 1e-14));
    }

    #[test]
    fn sampled_sup_examples() {
        let d = CuspDomain::hartogs(1, 1).unwrap();
        assert_eq!(sampled_sup(&F::constant(c(3.0)), &d, 100, 1).unwrap(), 3.0);
        let s = sampled_sup(&F::var(Var::Z2), &d, 2000, 42).unwrap();
        assert!(s > 0.95 && s < 1.0, "{s}");
        let s = sampled_sup(&F::monomial(c(1.0), 1, -1), &d, 2000, 42).unwrap();
        assert!(s <= 1.0 + 1e-9);
    }

    #[test]
    fn sampled_sup_is_monotone_in_count() {
        let d = CuspDomain::hartogs(2, 1).unwrap();
        let g = &F::monomial(c(1.0), 1, 0) + &F::monomial(c(-0.5), 2, 1);
        let mut last = 0.0;
        for count in [10, 50, 200, 1000] {
            let s = sampled_sup(&g, &d, count, 9).unwrap();
            assert!(s >= last);
            last = s;
        }
    }

    #[test]
    fn identity_on_exact_pair_and_zero() {
        let d = CuspDomain::hartogs(1, 1).unwrap();
        let p = (c(0.0), c(0.5));
        let f = F::var(Var::Z1);
        let f1 = F::monomial(c(2.0), 0, 1);
        let f2 = F::monomial(c(-2.0), 1, 0);
        let opts = VerifyOptions::default();
        let chk = check_identity(&f, (&p.0, &p.1), &f1, &f2, &d, &opts).unwrap();
        assert!(chk.symbolic_residual_zero);
        assert_eq!(chk.residual_max, 0.0);
        assert!(chk.residual_pointwise_max <= 1e-12 * 3.0);

        let zero = F::zero();
        let chk = check_identity(&zero, (&p.0, &p.1), &zero, &zero, &d, &opts).unwrap();
        assert_eq!(chk.residual_max, 0.0);
        assert_eq!(chk.residual_coeff_max, 0.0);
        assert_eq!(chk.residual_pointwise_max, 0.0);
    }

    #[test]
    fn perturbation_is_detected() {
        let d = CuspDomain::hartogs(1, 1).unwrap();
        let p = (c(0.0), c(0.5));
        let f = F::var(Var::Z1);
        let delta = 1e-3;
        let f1 = &F::monomial(c(2.0), 0, 1) + &F::monomial(c(delta), 1, 0);
        let f2 = F::monomial(c(-2.0), 1, 0);
        let points = d.sample(2000, 42, 0.5);
        let chk = check_identity_at(&f, (&p.0, &p.1), &f1, &f2, &points).unwrap();
        // residual = -delta z1^2 exactly
        let lower = points
            .iter()
            .map(|q| delta * q[0].norm() * q[0].norm())
            .fold(0.0, f64::max);
        assert!(chk.residual_max >= lower * (1.0 - 1e-12));
        assert!(chk.residual_max > 0.0);
        assert!(!chk.symbolic_residual_zero);
    }
}
