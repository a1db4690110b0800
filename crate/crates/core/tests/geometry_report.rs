use gleason_core::corpus::{vanishing_instance, CorpusSpec};
use gleason_core::domain::{log_image, split_line, LogBoundary};
use gleason_core::expr::{parse_machine_report, ReportRecord};
use gleason_core::{
    emit_report, solve, CuspDomain, ExponentPair, GleasonProblem, ReportFormat, SolveOptions,
    StripParams, VerifyOptions, C64,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ellipse(cx: f64, cy: f64, rx: f64, ry: f64, count: usize) -> Vec<(f64, f64)> {
    (0..count)
        .map(|i| {
            let t = std::f64::consts::PI * (1.0 - i as f64 / (count - 1) as f64);
            (cx + rx * t.cos(), cy + ry * t.sin())
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn contains_agrees_with_log_image(k in 1u32..=4, l in 1u32..=4, x in -6.0f64..0.5, y in -6.0f64..0.5, t1 in 0.0f64..6.3, t2 in 0.0f64..6.3) {
        let d = CuspDomain::hartogs(k, l).unwrap();
        let q = [C64::from_polar(x.exp(), t1), C64::from_polar(y.exp(), t2)];
        let (lx, ly) = log_image(&q).unwrap();
        let inside = ly < 0.0 && (k as f64) * lx < (l as f64) * ly;
        prop_assert_eq!(d.contains(&q), inside);
    }

    #[test]
    fn bounded_monomials_are_at_most_one(k in 1u32..=4, l in 1u32..=4, a in -12i64..=12, b in -12i64..=12) {
        let d = CuspDomain::hartogs(k, l).unwrap();
        let e = ExponentPair::new(a, b);
        let inside_cone = a >= 0 && a * l as i64 + b * k as i64 >= 0;
        prop_assert_eq!(d.monomial_bounded(e), inside_cone);
        if inside_cone {
            let sup = d
                .sample(300, 9, 0.5)
                .iter()
                .map(|q| q[0].norm().powi(a as i32) * q[1].norm().powi(b as i32))
                .fold(0.0, f64::max);
            prop_assert!(sup <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn split_line_is_translation_equivariant(
        cx in -2.0f64..0.0, cy in -2.0f64..0.0, rx in 0.5f64..2.0, ry in 0.5f64..2.0,
        count in 12usize..60, k in 1u32..=3, l in 1u32..=3,
        u in -0.3f64..0.3, v in 0.0f64..0.3, dx in -3.0f64..3.0, dy in -3.0f64..3.0,
    ) {
        let vs = ellipse(cx, cy, rx, ry, count);
        let boundary = LogBoundary::new(vs, vec![true; count]).unwrap();
        let lp = (cx + u * rx, cy + v * ry);
        let line = split_line(&boundary, (k, l), lp).unwrap();
        let moved = split_line(&boundary.translate(dx, dy), (k, l), (lp.0 + dx, lp.1 + dy)).unwrap();
        prop_assert_eq!((line.m, line.n), (moved.m, moved.n));
        let shift = dy + line.m as f64 / line.n as f64 * dx;
        prop_assert!((moved.r - line.r - shift).abs() <= 1e-9 * (1.0 + line.r.abs()));
        prop_assert!((moved.delta - line.delta).abs() <= 1e-9 * (1.0 + line.delta));
    }
}

#[test]
fn boundary_csv_feeds_split_line() {
    let vs = ellipse(0.0, 0.0, 1.0, 1.0, 33);
    let boundary = LogBoundary::new(vs, vec![true; 33]).unwrap();
    let parsed = LogBoundary::from_csv(&boundary.to_csv()).unwrap();
    assert_eq!(
        split_line(&parsed, (1, 1), (0.0, 0.0)).unwrap(),
        split_line(&boundary, (1, 1), (0.0, 0.0)).unwrap()
    );
}

#[test]
fn machine_report_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let spec = CorpusSpec { max_terms: 10, ..CorpusSpec::default() };
    let opts = SolveOptions {
        subtract_value: false,
        verify: VerifyOptions { samples: 200, ..VerifyOptions::default() },
    };
    let strip = CuspDomain::strip(1, 1, StripParams { lower: 0.2, upper: 0.8, m: 1, n: 1, r: -0.1 }).unwrap();
    let domains = [
        CuspDomain::hartogs(1, 1).unwrap(),
        CuspDomain::hartogs(3, 2).unwrap(),
        strip,
    ];
    for d in &domains {
        for p1_zero in [false, true] {
            if p1_zero && d != &domains[0] && d != &domains[1] {
                continue;
            }
            let (f, p) = vanishing_instance::<C64>(d, p1_zero, &spec, &mut rng);
            let sol = solve(&GleasonProblem::new(d.clone(), f, p), &opts).unwrap();
            let text = emit_report(&sol, ReportFormat::Machine);
            assert_eq!(text.contains("bound_rhs="), p1_zero);
            let record = parse_machine_report(&text).unwrap();
            assert_eq!(record, ReportRecord::from_solution(&sol));
            assert_eq!(record.to_machine(), text);
        }
    }
}

#[test]
fn machine_report_key_order() {
    let d = CuspDomain::hartogs(1, 1).unwrap();
    let f = gleason_core::parse_poly::<C64>("z1").unwrap();
    let sol = solve(
        &GleasonProblem::new(d, f, (C64::new(0.0, 0.0), C64::new(0.5, 0.0))),
        &SolveOptions::default(),
    )
    .unwrap();
    let text = emit_report(&sol, ReportFormat::Machine);
    let keys: Vec<&str> = text.lines().map(|line| line.split_once('=').unwrap().0).collect();
    assert_eq!(
        &keys[..15],
        [
            "residual_max",
            "residual_argmax",
            "bounded_f1",
            "bounded_f2",
            "cone_violations",
            "sup_f_upper",
            "sup_f1_sampled",
            "sup_f2_sampled",
            "bound_rhs",
            "mode",
            "k",
            "l",
            "p1",
            "p2",
            "residual_coeff_max",
        ]
    );
}
