use gleason_core::corpus::{random_bounded_poly, random_point, vanishing_instance, CorpusSpec};
use gleason_core::solver::{omega2_local_pair, p1_nonzero_pair, p1_zero_pair};
use gleason_core::verify::residual_polynomial;
use gleason_core::{
    solve, CuspDomain, ExactComplex, GleasonProblem, LaurentPolynomial, Scalar, SolveMode,
    SolveOptions, StripParams, VerifyOptions, WxParams, C64,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXACT_SHAPES: [(u32, u32); 4] = [(1, 1), (2, 1), (1, 2), (2, 3)];

fn quick(samples: usize) -> SolveOptions {
    SolveOptions {
        subtract_value: false,
        verify: VerifyOptions {
            samples,
            ..VerifyOptions::default()
        },
    }
}

fn assert_in_cone<S: Scalar>(d: &CuspDomain, f: &LaurentPolynomial<S>) {
    let cert = d.poly_bounded(f);
    assert!(cert.bounded, "violations {:?}", cert.violations);
}

#[test]
fn exact_p1_nonzero_residual_is_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let spec = CorpusSpec { max_terms: 12, ..CorpusSpec::default() };
    for (k, l) in EXACT_SHAPES {
        let d = CuspDomain::hartogs(k, l).unwrap();
        for _ in 0..15 {
            let (f, p) = vanishing_instance::<ExactComplex>(&d, false, &spec, &mut rng);
            let (f1, f2) = p1_nonzero_pair(&f, (&p.0, &p.1), k, l).unwrap();
            assert!(residual_polynomial(&f, (&p.0, &p.1), &f1, &f2).is_zero());
            assert_in_cone(&d, &f1);
            assert_in_cone(&d, &f2);
        }
    }
}

#[test]
fn floating_p1_nonzero_within_tolerance() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let spec = CorpusSpec::default();
    for (k, l) in [(1, 1), (2, 1), (1, 2), (3, 2), (2, 3)] {
        let d = CuspDomain::hartogs(k, l).unwrap();
        for _ in 0..20 {
            let (f, p) = vanishing_instance::<C64>(&d, false, &spec, &mut rng);
            let sol = solve(&GleasonProblem::new(d.clone(), f, p), &quick(300)).unwrap();
            assert_eq!(sol.mode, SolveMode::P1Nonzero);
            assert!(sol.report.passed(), "{k} {l}: {:?}", sol.report);
        }
    }
}

#[test]
fn exact_p1_zero_residual_and_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let spec = CorpusSpec { max_terms: 12, ..CorpusSpec::default() };
    for (k, l) in [(1, 1), (2, 1), (1, 2), (3, 2), (2, 3)] {
        let d = CuspDomain::hartogs(k, l).unwrap();
        for _ in 0..10 {
            let (f, p) = vanishing_instance::<ExactComplex>(&d, true, &spec, &mut rng);
            let sol = solve(&GleasonProblem::new(d.clone(), f, p), &quick(500)).unwrap();
            assert_eq!(sol.mode, SolveMode::P1Zero);
            assert!(sol.report.symbolic_residual_zero);
            assert!(sol.report.passed(), "{:?}", sol.report);
        }
    }
}

#[test]
fn solve_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let spec = CorpusSpec { max_terms: 8, ..CorpusSpec::default() };
    for (k, l) in EXACT_SHAPES {
        let d = CuspDomain::hartogs(k, l).unwrap();
        for p1_zero in [false, true] {
            let p = random_point::<ExactComplex>(&d, p1_zero, &spec, &mut rng);
            let mut vanish = || {
                let f = random_bounded_poly::<ExactComplex>(&d, &spec, &mut rng);
                let v = f.eval(&p.0, &p.1).unwrap();
                &f - &LaurentPolynomial::constant(v)
            };
            let (f, g) = (vanish(), vanish());
            let pair = |h: &LaurentPolynomial<ExactComplex>| {
                if p1_zero {
                    p1_zero_pair(h, &p.1, l).unwrap()
                } else {
                    p1_nonzero_pair(h, (&p.0, &p.1), k, l).unwrap()
                }
            };
            let (a1, a2) = pair(&f);
            let (b1, b2) = pair(&g);
            let (s1, s2) = pair(&(&f + &g));
            assert_eq!(s1, &a1 + &b1);
            assert_eq!(s2, &a2 + &b2);
        }
    }
}

fn strip(k: u32, l: u32, m: u32, n: u32) -> CuspDomain {
    CuspDomain::strip(
        k,
        l,
        StripParams { lower: 0.2, upper: 0.8, m, n, r: -0.1 },
    )
    .unwrap()
}

#[test]
fn strip_with_vertical_cut_matches_hartogs_pipeline() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let spec = CorpusSpec { max_terms: 10, ..CorpusSpec::default() };
    for (k, l) in EXACT_SHAPES {
        let d = strip(k, l, 0, 1);
        let h = CuspDomain::hartogs(k, l).unwrap();
        for _ in 0..12 {
            let p = random_point::<ExactComplex>(&d, false, &spec, &mut rng);
            // polynomial in z1 so both pipelines accept it
            let f = random_bounded_poly::<ExactComplex>(&h, &spec, &mut rng);
            let f = &f - &LaurentPolynomial::constant(f.eval(&p.0, &p.1).unwrap());
            let local = omega2_local_pair(&f, (&p.0, &p.1), WxParams::new(k, l, 0, 1).unwrap()).unwrap();
            assert_eq!(local, p1_nonzero_pair(&f, (&p.0, &p.1), k, l).unwrap());
        }
    }
}

#[test]
fn strip_diagonal_cut_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let spec = CorpusSpec { max_terms: 12, ..CorpusSpec::default() };
    for (k, l, m, n) in [(1, 1, 1, 1), (1, 1, 1, 3), (2, 1, 0, 1), (1, 3, 1, 1)] {
        let d = strip(k, l, m, n);
        for _ in 0..10 {
            let (f, p) = vanishing_instance::<ExactComplex>(&d, false, &spec, &mut rng);
            let sol = solve(&GleasonProblem::new(d.clone(), f, p), &quick(300)).unwrap();
            assert_eq!(sol.mode, SolveMode::Omega2Local);
            assert!(sol.report.symbolic_residual_zero);
            assert!(sol.report.passed(), "{:?}", sol.report);
        }
    }
}

#[test]
fn strip_floating_order_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spec = CorpusSpec { max_terms: 12, ..CorpusSpec::default() };
    let d = strip(1, 1, 1, 2);
    for _ in 0..10 {
        let (f, p) = vanishing_instance::<C64>(&d, false, &spec, &mut rng);
        let sol = solve(&GleasonProblem::new(d.clone(), f, p), &quick(300)).unwrap();
        assert!(sol.report.passed(), "{:?}", sol.report);
    }
}

#[test]
fn cut_generator_gives_solpol_pair() {
    let d = strip(1, 1, 1, 1);
    let p = (
        ExactComplex::from_literals("0.3", "0.1").unwrap(),
        ExactComplex::from_literals("0.6", "0").unwrap(),
    );
    let x = LaurentPolynomial::monomial(ExactComplex::from_i64(1), 1, 1);
    let f = &x - &LaurentPolynomial::constant(p.0.clone() * p.1.clone());
    let sol = solve(&GleasonProblem::new(d, f.clone(), p.clone()), &quick(100)).unwrap();
    let expected = gleason_core::solpol(&f, (&p.0, &p.1)).unwrap();
    assert_eq!((sol.f1, sol.f2), expected);
}
