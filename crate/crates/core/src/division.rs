//! Explicit division identities.
//!
//! * [`solfrac`]: `z1^k z2^-l - p1^k/p2^l = R1 (z1 - p1) + R2 (z2 - p2)`.
//! * [`solpol`]: the same for a Laurent polynomial `P` vanishing at `p`.
//! * [`to_wx`] / [`project_pi`] / [`deelbdd_split`]: a component with exponents in `N Z^2`
//!   is rewritten in `w = z1^k z2^-l` and `x = z1^m z2^n` (`N = kn + lm`), where the
//!   removable-singularity quotients become exact polynomial divisions:
//!
//!   `z1^i z2^j g(w, x) = z1^i z2^j [g(w,x) - g(c_p,x)]/(w - c_p) · (w - c_p)
//!                      + z1^i z2^j g(c_p,x)/(x - x_p) · (x - x_p)`.


use crate::error::{fmt_c64, Error, Result};
use crate::laurent::{ExponentPair, LaurentPolynomial, Var};
use crate::scalar::Scalar;

/// `(R1, R2)` with `R1 (z1 - p1) + R2 (z2 - p2) = z1^k z2^-l - p1^k / p2^l`.
pub fn solfrac<S: Scalar>(
    k: u32,
    l: u32,
    p: (&S, &S),
) -> Result<(LaurentPolynomial<S>, LaurentPolynomial<S>)> {
    if k == 0 || l == 0 {
        return Err(Error::Precondition("solfrac needs k, l >= 1".into()));
    }
    if p.1.is_zero() {
        return Err(Error::Precondition("solfrac needs p2 != 0".into()));
    }
    let inv = S::one() / p.1.pow_i64(l as i64)?;
    let (k, l) = (k as i64, l as i64);
    let mut r1 = Vec::with_capacity(k as usize);
    for j in 0..k {
        r1.push((ExponentPair::new(j, 0), inv.clone() * p.0.pow_i64(k - 1 - j)?));
    }
    let mut r2 = Vec::with_capacity(l as usize);
    for j in 0..l {
        r2.push((ExponentPair::new(k, j - l), -(inv.clone() * p.1.pow_i64(l - 1 - j)?)));
    }
    Ok((
        LaurentPolynomial::from_terms(r1),
        LaurentPolynomial::from_terms(r2),
    ))
}

/// `(P1, P2)` with `P = P1 (z1 - p1) + P2 (z2 - p2)` for `P` vanishing at `p`.
///
/// `P1 = (P - P|_{z1=p1}) / (z1 - p1)` and `P2 = (P|_{z1=p1} - P(p)) / (z2 - p2)`.
pub fn solpol<S: Scalar>(
    poly: &LaurentPolynomial<S>,
    p: (&S, &S),
) -> Result<(LaurentPolynomial<S>, LaurentPolynomial<S>)> {
    solpol_within(poly, p, 0.0)
}

/// [`solpol`] with the vanishing tolerance widened to `S::DIVISIBILITY_TOL * value_scale`.
pub fn solpol_within<S: Scalar>(
    poly: &LaurentPolynomial<S>,
    p: (&S, &S),
    value_scale: f64,
) -> Result<(LaurentPolynomial<S>, LaurentPolynomial<S>)> {
    let value = poly.eval(p.0, p.1)?;
    let bound = S::DIVISIBILITY_TOL * poly.abs_eval(p.0, p.1)?.max(value_scale);
    if !value.is_negligible(bound) {
        return Err(Error::Precondition(format!(
            "P(p) = {} ≠ 0",
            fmt_c64(value.to_c64())
        )));
    }
    let p1_part = poly.shift_divide_z1(p.0)?;
    let rest = &poly.restrict(Var::Z1, p.0)? - &LaurentPolynomial::constant(value);
    let p2_part = if p.1.is_zero() {
        if let Some(e) = rest.exponents().find(|e| e.b < 0) {
            return Err(Error::Domain(format!(
                "term {e} has a negative power of z2 at p2 = 0"
            )));
        }
        LaurentPolynomial::from_terms(
            rest.terms()
                .filter(|(e, _)| e.b > 0)
                .map(|(e, c)| (ExponentPair::new(0, e.b - 1), c.clone())),
        )
    } else {
        rest.divide_univariate_within(Var::Z2, p.1, value_scale)?
    };
    Ok((p1_part, p2_part))
}

/// Exponent data of the `(w, x)` change of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WxParams {
    pub k: u32,
    pub l: u32,
    pub m: u32,
    pub n: u32,
}

impl WxParams {
    pub fn new(k: u32, l: u32, m: u32, n: u32) -> Result<Self> {
        if k == 0 || l == 0 || n == 0 {
            return Err(Error::InvalidInput("need k, l, n >= 1".into()));
        }
        Ok(Self { k, l, m, n })
    }

    /// `m = 0`, `n = 1`: the cut used for `Ω_{k,l}`, where `x = z2`.
    pub fn hartogs(k: u32, l: u32) -> Result<Self> {
        Self::new(k, l, 0, 1)
    }

    /// `N = kn + lm`.
    pub fn order(&self) -> u32 {
        self.k * self.n + self.l * self.m
    }

    /// `w^alpha x^beta = z1^(alpha k + beta m) z2^(-alpha l + beta n)`.
    pub fn wx_to_z(&self, alpha: i64, beta: i64) -> ExponentPair {
        let (k, l, m, n) = (self.k as i64, self.l as i64, self.m as i64, self.n as i64);
        ExponentPair::new(alpha * k + beta * m, -alpha * l + beta * n)
    }

    /// Inverse of [`Self::wx_to_z`] on `N Z^2`.
    pub fn z_to_wx(&self, e: ExponentPair) -> Option<(i64, i64)> {
        let order = self.order() as i64;
        if e.a % order != 0 || e.b % order != 0 {
            return None;
        }
        let (k, l, m, n) = (self.k as i64, self.l as i64, self.m as i64, self.n as i64);
        Some(((e.a * n - e.b * m) / order, (e.a * l + e.b * k) / order))
    }
}

/// Whether negative powers of `w` are admissible.
///
/// On `Ω_{k,l}` only `w^alpha` with `alpha >= 0` is bounded; on a cusp strip `|w|` is
/// pinned between two positive constants, so Laurent powers of `w` are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WCone {
    Polynomial,
    Laurent,
}

/// A polynomial in `w` (the first exponent slot) and `x` (the second slot).
#[derive(Debug, Clone, PartialEq)]
pub struct WxForm<S> {
    params: WxParams,
    poly: LaurentPolynomial<S>,
}

impl<S: Scalar> WxForm<S> {
    pub fn params(&self) -> WxParams {
        self.params
    }

    /// Exponents `(alpha, beta)` are stored as `(a, b)`.
    pub fn poly(&self) -> &LaurentPolynomial<S> {
        &self.poly
    }

    pub fn to_z(&self) -> LaurentPolynomial<S> {
        let params = self.params;
        self.poly.map_exponents(|e| params.wx_to_z(e.a, e.b))
    }
}

pub fn to_wx<S: Scalar>(
    f: &LaurentPolynomial<S>,
    params: WxParams,
    cone: WCone,
) -> Result<WxForm<S>> {
    let mut terms = Vec::with_capacity(f.len());
    for (e, c) in f.terms() {
        let (alpha, beta) = params.z_to_wx(*e).ok_or_else(|| {
            Error::Contract(format!(
                "exponent {e} is not divisible by N = {}",
                params.order()
            ))
        })?;
        if alpha < 0 && cone == WCone::Polynomial {
            return Err(Error::NotInWCone { exponent: *e });
        }
        terms.push((ExponentPair::new(alpha, beta), c.clone()));
    }
    Ok(WxForm {
        params,
        poly: LaurentPolynomial::from_terms(terms),
    })
}

/// `c_p = p1^k / p2^l` and `x_p = p1^m p2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionData<S> {
    pub c_p: S,
    pub x_p: S,
}

impl<S: Scalar> ProjectionData<S> {
    pub fn new(params: WxParams, p: (&S, &S)) -> Result<Self> {
        if p.1.is_zero() {
            return Err(Error::Precondition("projection needs p2 != 0".into()));
        }
        let c_p = p.0.pow_i64(params.k as i64)? / p.1.pow_i64(params.l as i64)?;
        let x_p = p.0.pow_i64(params.m as i64)? * p.1.pow_i64(params.n as i64)?;
        Ok(Self { c_p, x_p })
    }
}

/// `g(c_p, x)` as a Laurent polynomial in `x`, stored in the second exponent slot.
pub fn project_pi<S: Scalar>(
    g: &WxForm<S>,
    proj: &ProjectionData<S>,
) -> Result<LaurentPolynomial<S>> {
    g.poly.restrict(Var::Z1, &proj.c_p)
}

/// `(F1, F2)` with `z1^i z2^j f_ij = F1 (z1^k z2^-l - c_p) + F2 (z1^m z2^n - x_p)`.
///
/// `f_ij` must have all exponents in `N Z^2` and vanish at `p`.
pub fn deelbdd_split<S: Scalar>(
    i: u32,
    j: u32,
    component: &LaurentPolynomial<S>,
    params: WxParams,
    p: (&S, &S),
    cone: WCone,
) -> Result<(LaurentPolynomial<S>, LaurentPolynomial<S>)> {
    deelbdd_split_within(i, j, component, params, p, cone, 0.0)
}

/// [`deelbdd_split`] with the vanishing test at `x_p` widened to
/// `S::DIVISIBILITY_TOL * value_scale`.
pub fn deelbdd_split_within<S: Scalar>(
    i: u32,
    j: u32,
    component: &LaurentPolynomial<S>,
    params: WxParams,
    p: (&S, &S),
    cone: WCone,
    value_scale: f64,
) -> Result<(LaurentPolynomial<S>, LaurentPolynomial<S>)> {
    if p.0.is_zero() {
        return Err(Error::Precondition("the w-division needs p1 != 0".into()));
    }
    let proj = ProjectionData::new(params, p)?;
    let g = to_wx(component, params, cone)?;
    let shift = ExponentPair::new(i as i64, j as i64);

    let w_quotient = WxForm {
        params,
        poly: g.poly.shift_divide_z1(&proj.c_p)?,
    };
    let projected = project_pi(&g, &proj)?;
    let x_quotient = projected
        .divide_univariate_within(Var::Z2, &proj.x_p, value_scale)
        .map_err(|err| match err {
            Error::NotDivisible { residual } => Error::Contract(format!(
                "component ({i},{j}) does not vanish at p: projected remainder {}",
                fmt_c64(residual)
            )),
            other => other,
        })?;
    let x_quotient = WxForm {
        params,
        poly: x_quotient,
    };
    Ok((
        w_quotient.to_z().shift(shift),
        x_quotient.to_z().shift(shift),
    ))
}

/// `z1^k z2^-l - c_p` and `z1^m z2^n - x_p`, the two "coordinates" the split is written in.
pub fn wx_generators<S: Scalar>(
    params: WxParams,
    proj: &ProjectionData<S>,
) -> (LaurentPolynomial<S>, LaurentPolynomial<S>) {
    let w = LaurentPolynomial::from_terms([
        (params.wx_to_z(1, 0), S::one()),
        (ExponentPair::ZERO, -proj.c_p.clone()),
    ]);
    let x = LaurentPolynomial::from_terms([
        (params.wx_to_z(0, 1), S::one()),
        (ExponentPair::ZERO, -proj.x_p.clone()),
    ]);
    (w, x)
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

    fn mono(c: &str, a: i64, b: i64) -> P {
        P::monomial(q(c), a, b)
    }

    #[test]
    fn solfrac_small_cases() {
        let (p1, p2) = (q("0.5"), q("0.8"));
        let (r1, r2) = solfrac(1, 1, (&p1, &p2)).unwrap();
        assert_eq!(r1, P::constant(q("1.25")));
        assert_eq!(r2, mono("-1.25", 1, -1));

        let (r1, r2) = solfrac(2, 1, (&p1, &p2)).unwrap();
        assert_eq!(r1, &mono("1.25", 1, 0) + &P::constant(q("0.625")));
        assert_eq!(r2, mono("-1.25", 2, -1));

        for (k, l) in [(1, 1), (2, 1), (3, 2), (2, 5)] {
            let (r1, r2) = solfrac(k, l, (&p1, &p2)).unwrap();
            let lhs = &(&r1 * &P::linear(Var::Z1, &p1)) + &(&r2 * &P::linear(Var::Z2, &p2));
            let target = &mono("1", k as i64, -(l as i64))
                - &P::constant(p1.pow_i64(k as i64).unwrap() / p2.pow_i64(l as i64).unwrap());
            assert_eq!(lhs, target);
        }
        assert!(solfrac(1, 1, (&p1, &q("0"))).is_err());
    }

    #[test]
    fn solpol_examples() {
        let (p1, p2) = (q("0.5"), q("0.8"));
        let (a, b) = solpol(&P::linear(Var::Z2, &p2), (&p1, &p2)).unwrap();
        assert!(a.is_zero() && b.is_one());
        let (a, b) = solpol(&P::linear(Var::Z1, &p1), (&p1, &p2)).unwrap();
        assert!(a.is_one() && b.is_zero());
        let f = &mono("1", 1, 1) - &P::constant(p1.clone() * p2.clone());
        let (a, b) = solpol(&f, (&p1, &p2)).unwrap();
        assert_eq!(a, P::var(Var::Z2));
        assert_eq!(b, P::constant(p1.clone()));
        assert!(matches!(
            solpol(&P::var(Var::Z1), (&p1, &p2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn wx_conversion_examples() {
        let params = WxParams::new(1, 1, 0, 1).unwrap();
        let g = to_wx(&mono("1", 1, -1), params, WCone::Polynomial).unwrap();
        assert_eq!(g.poly(), &mono("1", 1, 0));
        let g = to_wx(&mono("1", 1, 1), params, WCone::Polynomial).unwrap();
        assert_eq!(g.poly(), &mono("1", 1, 2));
        assert_eq!(g.to_z(), mono("1", 1, 1));
        let g = to_wx(&P::constant(q("3")), params, WCone::Polynomial).unwrap();
        assert_eq!(g.poly(), &P::constant(q("3")));
        assert!(matches!(
            to_wx(&mono("1", -1, 0), params, WCone::Polynomial),
            Err(Error::NotInWCone { .. })
        ));
        let params = WxParams::new(2, 1, 0, 1).unwrap();
        assert!(matches!(
            to_wx(&mono("1", 1, 0), params, WCone::Polynomial),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn project_examples() {
        let params = WxParams::hartogs(1, 1).unwrap();
        let (p1, p2) = (q("0.5"), q("0.8"));
        let proj = ProjectionData::new(params, (&p1, &p2)).unwrap();
        let w = to_wx(&mono("1", 1, -1), params, WCone::Polynomial).unwrap();
        assert_eq!(project_pi(&w, &proj).unwrap(), P::constant(q("0.625")));
        let wx = to_wx(&mono("1", 1, 0), params, WCone::Polynomial).unwrap();
        assert_eq!(wx.poly(), &mono("1", 1, 1));
        assert_eq!(project_pi(&wx, &proj).unwrap(), mono("0.625", 0, 1));
    }

    #[test]
    fn deelbdd_examples() {
        let params = WxParams::hartogs(1, 1).unwrap();
        let (p1, p2) = (q("0.5"), q("0.8"));
        let c_p = q("0.625");
        let wgen = &mono("1", 1, -1) - &P::constant(c_p.clone());
        let (f1, f2) = deelbdd_split(0, 0, &wgen, params, (&p1, &p2), WCone::Polynomial).unwrap();
        assert!(f1.is_one() && f2.is_zero());

        let xgen = P::linear(Var::Z2, &p2);
        let (f1, f2) = deelbdd_split(0, 0, &xgen, params, (&p1, &p2), WCone::Polynomial).unwrap();
        assert!(f1.is_zero() && f2.is_one());

        let prod = &wgen * &xgen;
        let (f1, f2) = deelbdd_split(0, 0, &prod, params, (&p1, &p2), WCone::Polynomial).unwrap();
        assert_eq!(f1, xgen);
        assert!(f2.is_zero());

        let bad = &xgen + &P::one();
        assert!(matches!(
            deelbdd_split(0, 0, &bad, params, (&p1, &p2), WCone::Polynomial),
            Err(Error::Contract(_))
        ));
    }
}
