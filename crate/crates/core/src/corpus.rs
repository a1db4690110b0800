//! Seeded random problem instances for property tests and benchmarks.
//!
//! Coefficients and base points are Gaussian rationals with small denominators so the same
//! instance can be realised exactly or in floating point.

use rand::Rng;

use crate::domain::{CuspDomain, DomainKind};
use crate::laurent::{ExponentPair, LaurentPolynomial};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusSpec {
    pub max_terms: usize,
    pub max_exponent: i64,
    /// Denominator of point coordinates.
    pub point_den: i64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            max_terms: 30,
            max_exponent: 12,
            point_den: 100,
        }
    }
}

fn ratio<S: Scalar>(num: i64, den: i64) -> S {
    S::from_i64(num) / S::from_i64(den)
}

fn imag<S: Scalar>() -> S {
    S::root_of_unity(4, 1).expect("i is representable in every scalar type")
}

/// A nonzero coefficient `n/d + i n'/d` with a finite decimal expansion.
pub fn random_coeff<S: Scalar>(rng: &mut impl Rng) -> S {
    const DENS: [i64; 6] = [1, 2, 4, 5, 8, 10];
    loop {
        let d = DENS[rng.gen_range(0..DENS.len())];
        let re = rng.gen_range(-20..=20);
        let im = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-20..=20) };
        if re != 0 || im != 0 {
            return ratio::<S>(re, d) + imag::<S>() * ratio::<S>(im, d);
        }
    }
}

/// An exponent pair inside the bounded-monomial cone of `domain`.
pub fn random_exponent(domain: &CuspDomain, max_exponent: i64, rng: &mut impl Rng) -> ExponentPair {
    loop {
        let e = ExponentPair::new(
            rng.gen_range(-max_exponent..=max_exponent),
            rng.gen_range(-max_exponent..=max_exponent),
        );
        if domain.monomial_bounded(e) {
            return e;
        }
    }
}

pub fn random_bounded_poly<S: Scalar>(
    domain: &CuspDomain,
    spec: &CorpusSpec,
    rng: &mut impl Rng,
) -> LaurentPolynomial<S> {
    let count = rng.gen_range(1..=spec.max_terms);
    LaurentPolynomial::from_terms(
        (0..count).map(|_| (random_exponent(domain, spec.max_exponent, rng), random_coeff(rng))),
    )
}

fn gaussian<S: Scalar>(modulus: f64, den: i64, rng: &mut impl Rng) -> (S, f64) {
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    let x = (modulus * angle.cos() * den as f64).round() as i64;
    let y = (modulus * angle.sin() * den as f64).round() as i64;
    let value = ratio::<S>(x, den) + imag::<S>() * ratio::<S>(y, den);
    (value, ((x * x + y * y) as f64).sqrt() / den as f64)
}

/// A base point in `domain` with `0.05 <= |p2| <= 0.95`.
///
/// On `Ω_{k,l}` with `p1_zero = false`, `|p1|^k / |p2|^l` lies in `[0.05, 0.95]`; on a strip
/// it lies strictly between the strip bounds.
pub fn random_point<S: Scalar>(
    domain: &CuspDomain,
    p1_zero: bool,
    spec: &CorpusSpec,
    rng: &mut impl Rng,
) -> (S, S) {
    let (k, l) = (domain.k() as f64, domain.l() as f64);
    let (lo, hi) = match domain.kind() {
        DomainKind::HartogsFull => (0.05, 0.95),
        DomainKind::StripOmega2(s) => (s.lower, s.upper),
    };
    loop {
        let (p2, r2) = gaussian::<S>(rng.gen_range(0.05..=0.95), spec.point_den, rng);
        if !(0.05..=0.95).contains(&r2) {
            continue;
        }
        let p1 = if p1_zero {
            S::zero()
        } else {
            let ratio = lo + (hi - lo) * rng.gen_range(0.02..0.98);
            let (p1, r1) = gaussian::<S>((ratio * r2.powf(l)).powf(1.0 / k), spec.point_den, rng);
            if r1 == 0.0 {
                continue;
            }
            p1
        };
        if domain.contains(&[p1.to_c64(), p2.to_c64()]) {
            return (p1, p2);
        }
    }
}

/// A bounded `f` and a point `p` with `f(p) = 0` (the value at `p` is subtracted).
pub fn vanishing_instance<S: Scalar>(
    domain: &CuspDomain,
    p1_zero: bool,
    spec: &CorpusSpec,
    rng: &mut impl Rng,
) -> (LaurentPolynomial<S>, (S, S)) {
    let p = random_point::<S>(domain, p1_zero, spec, rng);
    let f = random_bounded_poly::<S>(domain, spec, rng);
    let value = f.eval(&p.0, &p.1).expect("p has nonzero coordinates where needed");
    (&f - &LaurentPolynomial::constant(value), p)
}
