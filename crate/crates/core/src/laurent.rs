//! Sparse Laurent polynomials in two variables.
//!
//! A [`LaurentPolynomial`] is a finite map from exponent pairs to nonzero coefficients.
//! The map is kept canonical after every operation: exact scalars never store a zero,
//! floating scalars drop coefficients at or below `S::PRUNE_REL` times the largest
//! operand coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;


use crate::error::{Error, Result};
use crate::scalar::{PowerTable, RootTable, Scalar};

/// Exponents of `z1^a z2^b`. Ordered lexicographically, `a` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentPair {
    pub a: i64,
    pub b: i64,
}

impl ExponentPair {
    pub const ZERO: Self = Self { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn get(self, var: Var) -> i64 {
        match var {
            Var::Z1 => self.a,
            Var::Z2 => self.b,
        }
    }
}

impl Add for ExponentPair {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z1,
    Z2,
}

impl Var {
    pub fn other(self) -> Self {
        match self {
            Var::Z1 => Var::Z2,
            Var::Z2 => Var::Z1,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::Z1 => "z1",
            Var::Z2 => "z2",
        })
    }
}

/// `sum c_ab z1^a z2^b` with finitely many terms.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial<S> {
    terms: BTreeMap<ExponentPair, S>,
}

impl<S: Scalar> Default for LaurentPolynomial<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> LaurentPolynomial<S> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: S, a: i64, b: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ExponentPair::new(a, b), c);
        }
        Self { terms }
    }

    /// The coordinate function `z1` or `z2`.
    pub fn var(v: Var) -> Self {
        match v {
            Var::Z1 => Self::monomial(S::one(), 1, 0),
            Var::Z2 => Self::monomial(S::one(), 0, 1),
        }
    }

    /// `var - value`, the translated coordinate function.
    pub fn linear(v: Var, value: &S) -> Self {
        Self::from_terms([
            (
                match v {
                    Var::Z1 => ExponentPair::new(1, 0),
                    Var::Z2 => ExponentPair::new(0, 1),
                },
                S::one(),
            ),
            (ExponentPair::ZERO, -value.clone()),
        ])
    }

    /// Merges like terms and canonicalizes. The pruning scale is the largest input modulus.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentPair, S)>,
    {
        let mut map: BTreeMap<ExponentPair, S> = BTreeMap::new();
        let mut scale = 0.0f64;
        for (e, c) in terms {
            if !S::EXACT {
                scale = scale.max(c.modulus());
            }
            match map.get_mut(&e) {
                Some(slot) => *slot = slot.clone() + c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        Self::canonical(map, scale)
    }

    fn canonical(mut terms: BTreeMap<ExponentPair, S>, scale: f64) -> Self {
        let bound = S::PRUNE_REL * scale;
        terms.retain(|_, c| !c.is_zero() && !(!S::EXACT && c.is_negligible(bound)));
        Self { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentPair, &S)> + ExactSizeIterator + '_ {
        self.terms.iter()
    }

    pub fn exponents(&self) -> impl Iterator<Item = ExponentPair> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, e: ExponentPair) -> Option<&S> {
        self.terms.get(&e)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient modulus (0 for the zero polynomial).
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(S::modulus).fold(0.0, f64::max)
    }

    /// `sum |c|`, the coefficient l1 norm.
    pub fn abs_sum(&self) -> f64 {
        self.terms.values().map(S::modulus).sum()
    }

    pub fn min_exponent(&self, var: Var) -> Option<i64> {
        self.terms.keys().map(|e| e.get(var)).min()
    }

    pub fn max_exponent(&self, var: Var) -> Option<i64> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    /// `true` when no stored term carries a nonzero power of `var`.
    pub fn is_free_of(&self, var: Var) -> bool {
        self.terms.keys().all(|e| e.get(var) == 0)
    }

    fn operand_scale(&self, other: &Self) -> f64 {
        if S::EXACT {
            0.0
        } else {
            self.max_abs().max(other.max_abs())
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let scale = if S::EXACT {
            0.0
        } else {
            self.max_abs() * c.modulus()
        };
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (*e, v.clone() * c.clone()))
            .collect();
        Self::canonical(terms, scale)
    }

    /// Multiplies by the monomial `z1^e.a z2^e.b`.
    pub fn shift(&self, e: ExponentPair) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k + e, v.clone())).collect(),
        }
    }

    /// Applies an exponent map and merges collisions.
    pub fn map_exponents(&self, f: impl Fn(ExponentPair) -> ExponentPair) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    /// Coefficient-wise conversion into another scalar field.
    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LaurentPolynomial<T> {
        LaurentPolynomial::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn to_c64(&self) -> LaurentPolynomial<Complex64> {
        self.convert(S::to_c64)
    }

    fn check_point(&self, z1: &S, z2: &S) -> Result<()> {
        if z1.is_zero() && self.min_exponent(Var::Z1).is_some_and(|a| a < 0) {
            return Err(Error::ZeroCoordinate { var: Var::Z1 });
        }
        if z2.is_zero() && self.min_exponent(Var::Z2).is_some_and(|b| b < 0) {
            return Err(Error::ZeroCoordinate { var: Var::Z2 });
        }
        Ok(())
    }

    /// `sum c_ab z1^a z2^b`.
    pub fn eval(&self, z1: &S, z2: &S) -> Result<S> {
        self.check_point(z1, z2)?;
        let (Some(a0), Some(a1), Some(b0), Some(b1)) = (
            self.min_exponent(Var::Z1),
            self.max_exponent(Var::Z1),
            self.min_exponent(Var::Z2),
            self.max_exponent(Var::Z2),
        ) else {
            return Ok(S::zero());
        };
        let pow1 = self.powers_of(z1, a0, a1)?;
        let pow2 = self.powers_of(z2, b0, b1)?;
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            acc += c.clone() * pow1.get(e.a)?.into_owned() * pow2.get(e.b)?.into_owned();
        }
        Ok(acc)
    }

    /// Power lookup for `base^e`, `lo <= e <= hi`; tabulated unless the range is much
    /// wider than the number of terms.
    fn powers_of(&self, base: &S, lo: i64, hi: i64) -> Result<Powers<S>> {
        if hi.max(0) - lo.min(0) <= 64 + 4 * self.terms.len() as i64 {
            Ok(Powers::Table(PowerTable::new(base, lo, hi)?))
        } else {
            Ok(Powers::Direct(base.clone()))
        }
    }

    /// `sum |c_ab| |z1|^a |z2|^b`, the natural rounding-error scale of [`Self::eval`] at a point.
    pub fn abs_eval(&self, z1: &S, z2: &S) -> Result<f64> {
        self.check_point(z1, z2)?;
        let (r1, r2) = (z1.modulus(), z2.modulus());
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| c.modulus() * r1.powi(e.a as i32) * r2.powi(e.b as i32))
            .sum())
    }

    /// Substitutes `var := value`; the result only involves the other variable.
    pub fn restrict(&self, var: Var, value: &S) -> Result<Self> {
        if value.is_zero() && self.min_exponent(var).is_some_and(|x| x < 0) {
            return Err(Error::ZeroCoordinate { var });
        }
        let (Some(lo), Some(hi)) = (self.min_exponent(var), self.max_exponent(var)) else {
            return Ok(Self::zero());
        };
        let powers = self.powers_of(value, lo, hi)?;
        let mut out = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let kept = match var {
                Var::Z1 => ExponentPair::new(0, e.b),
                Var::Z2 => ExponentPair::new(e.a, 0),
            };
            out.push((kept, c.clone() * powers.get(e.get(var))?.into_owned()));
        }
        Ok(Self::from_terms(out))
    }

    /// The substitution `f(zeta^s z1, zeta^t z2)` with `zeta = exp(2 pi i / order)`.
    pub fn rotate(&self, s: i64, t: i64, order: u32) -> Result<Self> {
        let table = RootTable::<S>::new(order)?;
        Ok(self.rotate_with(&table, s, t))
    }

    pub fn rotate_with(&self, table: &RootTable<S>, s: i64, t: i64) -> Self {
        let n = table.order() as i64;
        let scale = if S::EXACT { 0.0 } else { self.max_abs() };
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let m = (e.a.rem_euclid(n) * s + e.b.rem_euclid(n) * t).rem_euclid(n);
                (*e, c.clone() * table.pow(m).clone())
            })
            .collect();
        Self::canonical(terms, scale)
    }

    /// Exact quotient by `(var - root)` of a polynomial that only involves `var`.
    ///
    /// The value at the root must vanish: exactly for exact scalars, and within
    /// `S::DIVISIBILITY_TOL * sum |c| |root|^e` for floating scalars.
    pub fn divide_univariate(&self, var: Var, root: &S) -> Result<Self> {
        self.divide_univariate_within(var, root, 0.0)
    }

    /// [`Self::divide_univariate`] with the floating tolerance widened to
    /// `S::DIVISIBILITY_TOL * max(value_scale, sum |c| |root|^e)`.
    ///
    /// Callers pass the magnitude of the values the polynomial was derived from when
    /// cancellation makes its own coefficients a poor scale.
    pub fn divide_univariate_within(&self, var: Var, root: &S, value_scale: f64) -> Result<Self> {
        if !self.is_free_of(var.other()) {
            return Err(Error::Precondition(format!(
                "divide_univariate expects a polynomial in {var} only"
            )));
        }
        if root.is_zero() {
            return Err(Error::Precondition("division root must be nonzero".into()));
        }
        let (z1, z2) = match var {
            Var::Z1 => (root.clone(), S::one()),
            Var::Z2 => (S::one(), root.clone()),
        };
        let value = self.eval(&z1, &z2)?;
        let bound = S::DIVISIBILITY_TOL * self.abs_eval(&z1, &z2)?.max(value_scale);
        if !value.is_negligible(bound) {
            return Err(Error::NotDivisible {
                residual: value.to_c64(),
            });
        }
        let h: BTreeMap<i64, S> = self
            .terms
            .iter()
            .map(|(e, c)| (e.get(var), c.clone()))
            .collect();
        let (q, _rem) = divide_linear(&h, root);
        let scale = if S::EXACT { 0.0 } else { self.max_abs() };
        let terms = q
            .into_iter()
            .map(|(x, c)| {
                let e = match var {
                    Var::Z1 => ExponentPair::new(x, 0),
                    Var::Z2 => ExponentPair::new(0, x),
                };
                (e, c)
            })
            .collect();
        Ok(Self::canonical(terms, scale))
    }

    /// `q` with `q (z1 - p1) = f - f|_{z1 = p1}`, computed coefficient-wise in `z2`.
    ///
    /// For `p1 = 0` this is `(f - f(0, z2)) / z1` and requires every `z1` exponent to be
    /// nonnegative; for `p1 != 0` Laurent powers of `z1` are allowed.
    pub fn shift_divide_z1(&self, p1: &S) -> Result<Self> {
        if p1.is_zero() {
            if let Some(e) = self.terms.keys().find(|e| e.a < 0) {
                return Err(Error::Domain(format!(
                    "term {e} has a negative power of z1; f(0, z2) is undefined"
                )));
            }
            return Ok(Self {
                terms: self
                    .terms
                    .iter()
                    .filter(|(e, _)| e.a > 0)
                    .map(|(e, c)| (ExponentPair::new(e.a - 1, e.b), c.clone()))
                    .collect(),
            });
        }
        let mut rows: BTreeMap<i64, BTreeMap<i64, S>> = BTreeMap::new();
        for (e, c) in &self.terms {
            rows.entry(e.b).or_default().insert(e.a, c.clone());
        }
        let (lo, hi) = (
            self.min_exponent(Var::Z1).unwrap_or(0),
            self.max_exponent(Var::Z1).unwrap_or(0),
        );
        let powers = self.powers_of(p1, lo, hi)?;
        let mut out = Vec::new();
        for (b, mut row) in rows {
            let mut value = S::zero();
            for (a, c) in &row {
                value += c.clone() * powers.get(*a)?.into_owned();
            }
            let slot = row.entry(0).or_insert_with(S::zero);
            *slot = slot.clone() - value;
            let (q, _rem) = divide_linear(&row, p1);
            out.extend(q.into_iter().map(|(a, c)| (ExponentPair::new(a, b), c)));
        }
        let scale = if S::EXACT { 0.0 } else { self.max_abs() };
        Ok(Self::canonical(out.into_iter().collect(), scale))
    }
}

enum Powers<S> {
    Table(PowerTable<S>),
    Direct(S),
}

impl<S: Scalar> Powers<S> {
    fn get(&self, e: i64) -> Result<std::borrow::Cow<'_, S>> {
        match self {
            Powers::Table(t) => Ok(std::borrow::Cow::Borrowed(t.get(e))),
            Powers::Direct(base) => Ok(std::borrow::Cow::Owned(base.pow_i64(e)?)),
        }
    }
}

/// Synthetic division of `h(x) = sum h_e x^e` by `(x - root)`.
///
/// Returns the quotient and the remainder of the cleared polynomial `x^{-emin} h(x)` with
/// `emin = min(0, lowest exponent)`; the remainder is `root^{-emin} h(root)` and the
/// quotient is exact iff it is zero. Clearing never starts above `x^0`, so a floating
/// remainder is always left on the constant slot, where its value is smallest.
pub(crate) fn divide_linear<S: Scalar>(h: &BTreeMap<i64, S>, root: &S) -> (BTreeMap<i64, S>, S) {
    let (Some(&low), Some(&emax)) = (h.keys().next(), h.keys().next_back()) else {
        return (BTreeMap::new(), S::zero());
    };
    let emin = low.min(0);
    let emax = emax.max(0);
    let degree = (emax - emin) as usize;
    let mut dense = vec![S::zero(); degree + 1];
    for (e, c) in h {
        dense[(e - emin) as usize] = c.clone();
    }
    let mut quotient = BTreeMap::new();
    let mut carry = S::zero();
    for j in (1..=degree).rev() {
        carry = dense[j].clone() + root.clone() * carry;
        if !carry.is_zero() {
            quotient.insert(j as i64 - 1 + emin, carry.clone());
        }
    }
    let rem = dense[0].clone() + root.clone() * carry;
    (quotient, rem)
}

impl<S: Scalar> Neg for &LaurentPolynomial<S> {
    type Output = LaurentPolynomial<S>;
    fn neg(self) -> LaurentPolynomial<S> {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<S: Scalar> Neg for LaurentPolynomial<S> {
    type Output = LaurentPolynomial<S>;
    fn neg(self) -> LaurentPolynomial<S> {
        -&self
    }
}

impl<S: Scalar> Add<&LaurentPolynomial<S>> for &LaurentPolynomial<S> {
    type Output = LaurentPolynomial<S>;
    fn add(self, rhs: &LaurentPolynomial<S>) -> LaurentPolynomial<S> {
        let scale = self.operand_scale(rhs);
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            match terms.get_mut(e) {
                Some(slot) => *slot += c.clone(),
                None => {
                    terms.insert(*e, c.clone());
                }
            }
        }
        LaurentPolynomial::canonical(terms, scale)
    }
}

impl<S: Scalar> Sub<&LaurentPolynomial<S>> for &LaurentPolynomial<S> {
    type Output = LaurentPolynomial<S>;
    fn sub(self, rhs: &LaurentPolynomial<S>) -> LaurentPolynomial<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Mul<&LaurentPolynomial<S>> for &LaurentPolynomial<S> {
    type Output = LaurentPolynomial<S>;
    fn mul(self, rhs: &LaurentPolynomial<S>) -> LaurentPolynomial<S> {
        let scale = if S::EXACT {
            0.0
        } else {
            self.max_abs() * rhs.max_abs()
        };
        let mut terms: BTreeMap<ExponentPair, S> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let prod = c1.clone() * c2.clone();
                match terms.get_mut(&(*e1 + *e2)) {
                    Some(slot) => *slot += prod,
                    None => {
                        terms.insert(*e1 + *e2, prod);
                    }
                }
            }
        }
        LaurentPolynomial::canonical(terms, scale)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<S: Scalar> $tr<LaurentPolynomial<S>> for LaurentPolynomial<S> {
            type Output = LaurentPolynomial<S>;
            fn $method(self, rhs: LaurentPolynomial<S>) -> LaurentPolynomial<S> {
                (&self).$method(&rhs)
            }
        }
        impl<S: Scalar> $tr<&LaurentPolynomial<S>> for LaurentPolynomial<S> {
            type Output = LaurentPolynomial<S>;
            fn $method(self, rhs: &LaurentPolynomial<S>) -> LaurentPolynomial<S> {
                (&self).$method(rhs)
            }
        }
        impl<S: Scalar> $tr<LaurentPolynomial<S>> for &LaurentPolynomial<S> {
            type Output = LaurentPolynomial<S>;
            fn $method(self, rhs: LaurentPolynomial<S>) -> LaurentPolynomial<S> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> std::iter::Sum for LaurentPolynomial<S> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

impl<S: Scalar> LaurentPolynomial<S> {
    /// `true` when the polynomial is the constant 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&ExponentPair::ZERO).is_some_and(|c| c.is_one())
    }
}
