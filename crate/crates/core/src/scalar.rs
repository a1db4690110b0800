//! Complex coefficient fields.
//!
//! Every algebraic routine in the crate is generic over [`Scalar`]. Two families are
//! provided: floating complex numbers (`Complex<f64>`, `Complex<f32>`) whose comparisons
//! always go through an explicit tolerance, and exact Gaussian rationals
//! (`Complex<BigRational>`) whose arithmetic is closed and whose zero test is exact.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{NumAssign, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A complex coefficient field usable by the Laurent polynomial engine.
pub trait Scalar:
    Clone + Debug + PartialEq + Send + Sync + NumAssign + Neg<Output = Self> + 'static
{
    /// `true` when arithmetic is exact and zero tests need no tolerance.
    const EXACT: bool;

    /// Coefficients with modulus `<= PRUNE_REL * scale` are dropped (floating types only).
    const PRUNE_REL: f64;

    /// Relative tolerance for "this value is zero" decisions in divisions and vanishing checks.
    const DIVISIBILITY_TOL: f64;

    fn from_i64(n: i64) -> Self;

    /// Builds a scalar from two literal strings in the coefficient grammar
    /// (`[-]digits[.digits][/digits]`).
    fn from_literals(re: &str, im: &str) -> Result<Self>;

    fn to_c64(&self) -> Complex64;

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    /// `zeta^power` for `zeta = exp(2 pi i / order)`, or `None` when the value is not
    /// representable in this field.
    fn root_of_unity(order: u32, power: i64) -> Option<Self>;

    /// Exact types: `self == 0`. Floating types: `|self| <= bound`.
    fn is_negligible(&self, bound: f64) -> bool;

    /// Canonical literal text of the real and imaginary parts.
    fn literal_parts(&self) -> (String, String);

    /// `self^exp` by repeated squaring; negative exponents invert first.
    fn pow_i64(&self, exp: i64) -> Result<Self> {
        if exp == 0 {
            return Ok(Self::one());
        }
        let mut base = if exp < 0 {
            if self.is_zero() {
                return Err(Error::Domain("negative power of zero".into()));
            }
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        Ok(acc)
    }
}

/// `base^e` for every `e` in `lo..=hi`, built by repeated multiplication.
#[derive(Debug, Clone)]
pub(crate) struct PowerTable<S> {
    lo: i64,
    powers: Vec<S>,
}

impl<S: Scalar> PowerTable<S> {
    /// Callers guarantee `base != 0` whenever `lo < 0`.
    pub(crate) fn new(base: &S, lo: i64, hi: i64) -> Result<Self> {
        let (lo, hi) = (lo.min(0), hi.max(0));
        let mut powers = vec![S::one(); (hi - lo + 1) as usize];
        let origin = (-lo) as usize;
        for idx in origin + 1..powers.len() {
            powers[idx] = powers[idx - 1].clone() * base.clone();
        }
        if lo < 0 {
            let inv = S::one() / base.clone();
            for idx in (0..origin).rev() {
                powers[idx] = powers[idx + 1].clone() * inv.clone();
            }
        }
        Ok(Self { lo, powers })
    }

    pub(crate) fn get(&self, e: i64) -> &S {
        &self.powers[(e - self.lo) as usize]
    }
}

/// Powers of a primitive root of unity, precomputed once per order.
#[derive(Debug, Clone)]
pub struct RootTable<S> {
    order: u32,
    powers: Vec<S>,
}

impl<S: Scalar> RootTable<S> {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::Precondition("root of unity order must be >= 1".into()));
        }
        let powers = (0..order as i64)
            .map(|m| S::root_of_unity(order, m).ok_or(Error::RootOrderUnavailable { order }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { order, powers })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `zeta^m` for any integer `m`.
    pub fn pow(&self, m: i64) -> &S {
        &self.powers[m.rem_euclid(self.order as i64) as usize]
    }
}

fn quarter_turn(order: u32, power: i64) -> Option<u8> {
    let r = power.rem_euclid(order as i64);
    let q = 4 * r;
    (q % order as i64 == 0).then(|| (q / order as i64) as u8)
}

/// Checks the literal grammar and splits it into (negative, integer part, fraction part, denominator).
fn split_literal(text: &str) -> Result<(bool, &str, &str, Option<&str>)> {
    let bad = |message: &str| Error::Literal {
        text: text.to_string(),
        message: message.to_string(),
    };
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (number, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let (int, frac) = match number.split_once('.') {
        Some((i, f)) => (i, f),
        None => (number, ""),
    };
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int.is_empty() || !digits(int) || !digits(frac) || (number.contains('.') && frac.is_empty())
    {
        return Err(bad("expected digits with an optional decimal part"));
    }
    if let Some(d) = den {
        if d.is_empty() || !digits(d) {
            return Err(bad("expected a digit-only denominator"));
        }
        if d.bytes().all(|b| b == b'0') {
            return Err(bad("zero denominator"));
        }
    }
    Ok((neg, int, frac, den))
}

/// Parses `[-]digits[.digits][/digits]` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let (neg, int, frac, den) = split_literal(text)?;
    let mantissa: BigInt = format!("{int}{frac}").parse().expect("validated digits");
    let mut denom = num_traits::pow(BigInt::from(10), frac.len());
    if let Some(d) = den {
        denom *= d.parse::<BigInt>().expect("validated digits");
    }
    let value = BigRational::new(mantissa, denom);
    Ok(if neg { -value } else { value })
}

fn parse_float_literal(text: &str) -> Result<f64> {
    let (neg, int, frac, den) = split_literal(text)?;
    let number = if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    };
    let mut value: f64 = number.parse().expect("validated digits");
    if let Some(d) = den {
        value /= d.parse::<f64>().expect("validated digits");
    }
    Ok(if neg { -value } else { value })
}

/// Decimal text when the denominator is of the form 2^a 5^b, otherwise `n/d`.
pub fn rational_text(r: &BigRational) -> String {
    let (numer, denom) = (r.numer(), r.denom());
    let mut d = denom.clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{numer}/{denom}");
    }
    let places = twos.max(fives);
    let scaled = numer.abs() * num_traits::pow(BigInt::from(10), places) / denom;
    let digits = scaled.to_string();
    let sign = if numer.is_negative() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    format!("{sign}{int}.{frac}")
}

macro_rules! float_scalar {
    ($t:ty, $prune:expr, $tol:expr) => {
        impl Scalar for Complex<$t> {
            const EXACT: bool = false;
            const PRUNE_REL: f64 = $prune;
            const DIVISIBILITY_TOL: f64 = $tol;

            fn from_i64(n: i64) -> Self {
                Complex::new(n as $t, 0.0)
            }

            fn from_literals(re: &str, im: &str) -> Result<Self> {
                Ok(Complex::new(
                    parse_float_literal(re)? as $t,
                    parse_float_literal(im)? as $t,
                ))
            }

            fn to_c64(&self) -> Complex64 {
                Complex64::new(self.re as f64, self.im as f64)
            }

            fn root_of_unity(order: u32, power: i64) -> Option<Self> {
                if order == 0 {
                    return None;
                }
                Some(match quarter_turn(order, power) {
                    Some(0) => Complex::new(1.0, 0.0),
                    Some(1) => Complex::new(0.0, 1.0),
                    Some(2) => Complex::new(-1.0, 0.0),
                    Some(_) => Complex::new(0.0, -1.0),
                    None => {
                        let r = power.rem_euclid(order as i64) as f64;
                        let angle = std::f64::consts::TAU * r / order as f64;
                        Complex::new(angle.cos() as $t, angle.sin() as $t)
                    }
                })
            }

            fn is_negligible(&self, bound: f64) -> bool {
                (self.norm() as f64) <= bound
            }

            fn literal_parts(&self) -> (String, String) {
                // `+ 0.0` folds negative zero into zero.
                (format!("{}", self.re + 0.0), format!("{}", self.im + 0.0))
            }
        }
    };
}

float_scalar!(f64, 1e-14, 1e-9);
float_scalar!(f32, 1e-6, 1e-4);

impl Scalar for Complex<BigRational> {
    const EXACT: bool = true;
    const PRUNE_REL: f64 = 0.0;
    const DIVISIBILITY_TOL: f64 = 0.0;

    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    fn from_literals(re: &str, im: &str) -> Result<Self> {
        Ok(Complex::new(parse_rational(re)?, parse_rational(im)?))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn root_of_unity(order: u32, power: i64) -> Option<Self> {
        if order == 0 {
            return None;
        }
        let one = BigRational::one();
        let zero = BigRational::zero();
        match quarter_turn(order, power)? {
            0 => Some(Complex::new(one, zero)),
            1 => Some(Complex::new(zero, one)),
            2 => Some(Complex::new(-one, zero)),
            _ => Some(Complex::new(zero, -one)),
        }
    }

    fn is_negligible(&self, _bound: f64) -> bool {
        self.is_zero()
    }

    fn literal_parts(&self) -> (String, String) {
        (rational_text(&self.re), rational_text(&self.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Complex<BigRational>;

    #[test]
    fn rational_text_forms() {
        let r = |s: &str| parse_rational(s).unwrap();
        assert_eq!(rational_text(&r("1.25")), "1.25");
        assert_eq!(rational_text(&r("-0.05")), "-0.05");
        assert_eq!(rational_text(&r("10/3")), "10/3");
        assert_eq!(rational_text(&r("3/20")), "0.15");
        assert_eq!(rational_text(&r("40")), "40");
        assert_eq!(rational_text(&r("0.0")), "0");
    }

    #[test]
    fn literal_rejects_malformed() {
        for bad in ["", "1.", ".5", "1e5", "1/0", "abc", "1/", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
            assert!(parse_float_literal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_roots_only_for_gaussian_orders() {
        for order in [1, 2, 4] {
            let table = RootTable::<Q>::new(order).unwrap();
            let z = table.pow(1).clone();
            assert_eq!(z.pow_i64(order as i64).unwrap(), Q::one());
        }
        assert_eq!(
            RootTable::<Q>::new(3).unwrap_err(),
            Error::RootOrderUnavailable { order: 3 }
        );
    }

    #[test]
    fn float_quarter_turns_are_exact() {
        let z = Complex64::root_of_unity(4, 1).unwrap();
        assert_eq!(z, Complex64::new(0.0, 1.0));
        let z = Complex64::root_of_unity(8, 6).unwrap();
        assert_eq!(z, Complex64::new(0.0, -1.0));
        let w = Complex64::root_of_unity(3, 1).unwrap();
        assert!((w.pow_i64(3).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn powi_negative_and_zero() {
        let half = Q::from_literals("0.5", "0").unwrap();
        assert_eq!(half.pow_i64(-3).unwrap(), Q::from_i64(8));
        assert!(Q::zero().pow_i64(-1).is_err());
        assert_eq!(Q::zero().pow_i64(0).unwrap(), Q::one());
    }

    #[test]
    fn float_literal_round_trip() {
        for x in [0.1f64, -2.5, 1.0 / 3.0, 1e-20, 123456.789] {
            let c = Complex64::new(x, -x);
            let (re, im) = c.literal_parts();
            assert_eq!(Complex64::from_literals(&re, &im).unwrap(), c);
        }
    }
}
