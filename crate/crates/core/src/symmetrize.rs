//! Decomposition of a Laurent polynomial into `N^2` pieces invariant under independent
//! `N`-th root of unity rotations, and the interpolating correction polynomial that
//! makes every piece vanish at the base point.


use crate::error::{Error, Result};
use crate::laurent::{ExponentPair, LaurentPolynomial};
use crate::scalar::{RootTable, Scalar};

/// The components `f_ij` with `f = sum z1^i z2^j f_ij`, `0 <= i, j < N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSystem<S> {
    order: u32,
    components: Vec<LaurentPolynomial<S>>,
}

impl<S: Scalar> SymmetricSystem<S> {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn component(&self, i: u32, j: u32) -> &LaurentPolynomial<S> {
        &self.components[(i * self.order + j) as usize]
    }

    /// `((i, j), f_ij)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &LaurentPolynomial<S>)> + '_ {
        let n = self.order;
        self.components
            .iter()
            .enumerate()
            .map(move |(idx, c)| ((idx as u32 / n, idx as u32 % n), c))
    }

    /// `sum z1^i z2^j f_ij`.
    pub fn reconstruct(&self) -> LaurentPolynomial<S> {
        self.iter()
            .map(|((i, j), c)| c.shift(ExponentPair::new(i as i64, j as i64)))
            .sum()
    }
}

/// Routes each term `c z1^a z2^b` to component `(a mod N, b mod N)` with the remaining
/// exponent `(a - a mod N, b - b mod N)`.
pub fn symmetric_decompose<S: Scalar>(
    f: &LaurentPolynomial<S>,
    order: u32,
) -> Result<SymmetricSystem<S>> {
    if order == 0 {
        return Err(Error::Precondition("symmetrization order must be >= 1".into()));
    }
    let n = order as i64;
    let mut buckets: Vec<Vec<(ExponentPair, S)>> = vec![Vec::new(); (order * order) as usize];
    for (e, c) in f.terms() {
        let (i, j) = (e.a.rem_euclid(n), e.b.rem_euclid(n));
        buckets[(i * n + j) as usize].push((ExponentPair::new(e.a - i, e.b - j), c.clone()));
    }
    Ok(SymmetricSystem {
        order,
        components: buckets.into_iter().map(LaurentPolynomial::from_terms).collect(),
    })
}

/// Coefficients (ascending powers) of the Lagrange basis on `nodes`.
fn lagrange_basis<S: Scalar>(nodes: &[S]) -> Vec<Vec<S>> {
    let n = nodes.len();
    (0..n)
        .map(|s| {
            let mut poly = vec![S::one()];
            let mut denom = S::one();
            for (r, node) in nodes.iter().enumerate() {
                if r == s {
                    continue;
                }
                let mut next = vec![S::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] = next[d + 1].clone() + c.clone();
                    next[d] = next[d].clone() - c.clone() * node.clone();
                }
                poly = next;
                denom = denom * (nodes[s].clone() - node.clone());
            }
            poly.into_iter().map(|c| c / denom.clone()).collect()
        })
        .collect()
}

/// The polynomial `P` of degree `<= N - 1` in each variable that agrees with `f` on the
/// grid `{zeta^s p1} x {zeta^t p2}`, built from two univariate Lagrange bases.
pub fn correction_polynomial<S: Scalar>(
    f: &LaurentPolynomial<S>,
    p: (&S, &S),
    order: u32,
) -> Result<LaurentPolynomial<S>> {
    if p.0.is_zero() || p.1.is_zero() {
        return Err(Error::Precondition(
            "the interpolation grid needs p1 != 0 and p2 != 0".into(),
        ));
    }
    let table = RootTable::<S>::new(order)?;
    let n = order as usize;
    let nodes1: Vec<S> = (0..n).map(|s| table.pow(s as i64).clone() * p.0.clone()).collect();
    let nodes2: Vec<S> = (0..n).map(|t| table.pow(t as i64).clone() * p.1.clone()).collect();
    let mut values = vec![vec![S::zero(); n]; n];
    for (s, u) in nodes1.iter().enumerate() {
        for (t, v) in nodes2.iter().enumerate() {
            values[s][t] = f.eval(u, v)?;
        }
    }
    let basis1 = lagrange_basis(&nodes1);
    let basis2 = lagrange_basis(&nodes2);
    // C[i][j] = sum_{s,t} F[s][t] L_s[i] M_t[j]
    let mut row_mix = vec![vec![S::zero(); n]; n]; // [s][j]
    for s in 0..n {
        for j in 0..n {
            let mut acc = S::zero();
            for t in 0..n {
                acc = acc + values[s][t].clone() * basis2[t][j].clone();
            }
            row_mix[s][j] = acc;
        }
    }
    let mut terms = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = S::zero();
            for s in 0..n {
                acc = acc + basis1[s][i].clone() * row_mix[s][j].clone();
            }
            terms.push((ExponentPair::new(i as i64, j as i64), acc));
        }
    }
    let mut out = LaurentPolynomial::from_terms(terms);
    if !S::EXACT {
        // Interpolation round-off relative to the sampled values, not to the output.
        let scale = values.iter().flatten().map(S::modulus).fold(0.0, f64::max);
        out = LaurentPolynomial::from_terms(out.terms().filter_map(|(e, c)| {
            let bound = S::PRUNE_REL * scale / (p.0.modulus().powi(e.a as i32) * p.1.modulus().powi(e.b as i32));
            (!c.is_negligible(bound)).then(|| (*e, c.clone()))
        }));
    }
    Ok(out)
}

/// `true` when every exponent of `f` is a multiple of `order` in both variables.
pub fn is_symmetric<S: Scalar>(f: &LaurentPolynomial<S>, order: u32) -> bool {
    let n = order as i64;
    f.exponents().all(|e| e.a % n == 0 && e.b % n == 0)
}

/// Convenience: `f - correction_polynomial(f, p, N)` decomposed.
pub fn corrected_decomposition<S: Scalar>(
    f: &LaurentPolynomial<S>,
    p: (&S, &S),
    order: u32,
) -> Result<(LaurentPolynomial<S>, SymmetricSystem<S>)> {
    let correction = correction_polynomial(f, p, order)?;
    let system = symmetric_decompose(&(f - &correction), order)?;
    Ok((correction, system))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Var;
    use num_traits::Zero;
    use num_complex::{Complex, Complex64};
    use num_rational::BigRational;

    type Q = Complex<BigRational>;
    type P = LaurentPolynomial<Q>;

    fn q(re: &str) -> Q {
        Q::from_literals(re, "0").unwrap()
    }

    #[test]
    fn single_variable_routing() {
        let sys = symmetric_decompose(&P::var(Var::Z1), 2).unwrap();
        assert_eq!(sys.component(1, 0), &P::one());
        for (ij, c) in sys.iter() {
            if ij != (1, 0) {
                assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn constant_lands_in_origin_component() {
        for order in 1..=4 {
            let sys = symmetric_decompose(&P::constant(q("2.5")), order).unwrap();
            assert_eq!(sys.component(0, 0), &P::constant(q("2.5")));
        }
    }

    #[test]
    fn negative_exponent_routing() {
        let sys = symmetric_decompose(&P::monomial(q("1"), 1, -1), 2).unwrap();
        assert_eq!(sys.component(1, 1), &P::monomial(q("1"), 0, -2));
        assert_eq!(sys.reconstruct(), P::monomial(q("1"), 1, -1));
    }

    #[test]
    fn correction_examples() {
        let p = (q("0.5"), q("0.8"));
        let f = &P::monomial(q("3"), 2, -1) + &P::var(Var::Z1);
        let c = correction_polynomial(&f, (&p.0, &p.1), 1).unwrap();
        assert_eq!(c, P::constant(f.eval(&p.0, &p.1).unwrap()));

        let z1 = P::var(Var::Z1);
        assert_eq!(correction_polynomial(&z1, (&p.0, &p.1), 2).unwrap(), z1);

        // z1^2 - p1^2 vanishes on {±p1} x {±p2}
        let g = &P::monomial(q("1"), 2, 0) - &P::constant(p.0.clone() * p.0.clone());
        assert!(correction_polynomial(&g, (&p.0, &p.1), 2).unwrap().is_zero());

        assert!(matches!(
            correction_polynomial(&z1, (&q("0"), &p.1), 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn corrected_components_vanish_exactly() {
        let p = (Q::new(q("0.3").re, q("0.1").re), q("0.7"));
        let f = &(&P::monomial(q("1"), 3, -1) + &P::monomial(q("-2"), 5, 2)) + &P::monomial(q("0.25"), 1, 1);
        for order in [1, 2, 4] {
            let (_, sys) = corrected_decomposition(&f, (&p.0, &p.1), order).unwrap();
            for (_, c) in sys.iter() {
                assert!(c.eval(&p.0, &p.1).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn float_order_three_correction() {
        type F = LaurentPolynomial<Complex64>;
        let p = (Complex64::new(0.4, 0.2), Complex64::new(0.6, -0.1));
        let f = &F::monomial(Complex64::new(1.0, 0.0), 4, -2) + &F::monomial(Complex64::new(0.0, 2.0), 2, 5);
        let (_, sys) = corrected_decomposition(&f, (&p.0, &p.1), 3).unwrap();
        for (_, c) in sys.iter() {
            assert!(c.eval(&p.0, &p.1).unwrap().norm() < 1e-12);
        }
    }
}
