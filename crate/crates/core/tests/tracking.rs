use hciter::homotopy::Homotopy;
use hciter::lazy::{solve_iter, StartKind};
use hciter::linalg::{distance, norm2};
use hciter::startsys::{total_degree_start_iter, total_degree_system};
use hciter::tracker::path_map;
use hciter::{track, PathStatus, PolySystem, TrackOptions, C64};
use proptest::prelude::*;

fn intro() -> PolySystem {
    PolySystem::parse(
        r#"{"variables":["x","y"],"polynomials":[
            [{"c":[1,0],"e":[2,0]},{"c":[1,0],"e":[0,1]},{"c":[-1,0],"e":[0,0]}],
            [{"c":[1,0],"e":[2,0]},{"c":[1,0],"e":[0,2]},{"c":[-4,0],"e":[0,0]}]
        ]}"#,
    )
    .unwrap()
}

fn quadratics(coeffs: &[f64]) -> PolySystem {
    let monomials = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
    let polys: Vec<String> = coeffs
        .chunks(12)
        .map(|cs| {
            let terms: Vec<String> = monomials
                .iter()
                .zip(cs.chunks(2))
                .map(|(e, c)| format!(r#"{{"c":[{:?},{:?}],"e":[{},{}]}}"#, c[0], c[1], e[0], e[1]))
                .collect();
            format!("[{}]", terms.join(","))
        })
        .collect();
    PolySystem::parse(&format!(
        r#"{{"variables":["x","y"],"polynomials":[{}]}}"#,
        polys.join(",")
    ))
    .unwrap()
}

#[test]
fn simple_zero_is_well_conditioned() {
    let f = PolySystem::parse(
        r#"{"variables":["x"],"polynomials":[[{"c":[1,0],"e":[2]},{"c":[-4,0],"e":[0]}]]}"#,
    )
    .unwrap();
    let g = total_degree_system(&[2], C64::new(1.0, 0.0)).unwrap();
    let h = Homotopy::straight_line(f, g, C64::from_polar(1.0, 0.4)).unwrap();
    let opts = TrackOptions::default();
    for start in total_degree_start_iter(&[2]).unwrap() {
        let r = track(&h, &start, &opts);
        assert_eq!(r.status, PathStatus::Success);
        assert!((r.solution[0].norm() - 2.0).abs() < 1e-10);
        assert!(r.condition_estimate < 1e3);
    }
}

#[test]
fn path_map_composes_over_concatenation() {
    let f = PolySystem::parse(
        r#"{"variables":["x","y"],"parameters":["p"],"polynomials":[
            [{"c":[1,0],"e":[0,1]},{"c":[-1,0],"e":[2,0]},{"c":[1,0],"e":[0,0],"pe":[1]}],
            [{"c":[1,0],"e":[0,1]},{"c":[-1,0],"e":[3,0]},{"c":[-1,0],"e":[0,0],"pe":[1]}]
        ]}"#,
    )
    .unwrap();
    let p = |v: f64| vec![C64::new(v, 0.0)];
    let h1 = Homotopy::parameter(f.clone(), p(0.0), p(-1.0)).unwrap();
    let h2 = Homotopy::parameter(f, p(-1.0), p(-2.0)).unwrap();
    let both = Homotopy::concatenate(h1.clone(), h2.clone()).unwrap();
    let opts = TrackOptions::default();
    let (m1, m2, m12) = (
        path_map(&h1, &opts),
        path_map(&h2, &opts),
        path_map(&both, &opts),
    );
    let start = vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
    let staged = m2(&m1(&start).solution);
    let direct = m12(&start);
    assert!(staged.is_success() && direct.is_success());
    assert!(distance(&staged.solution, &direct.solution) < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn intro_endpoints_are_distinct_and_accurate(angle in 0.0..std::f64::consts::TAU) {
        let f = intro();
        let opts = TrackOptions::default();
        let it = solve_iter(&f, StartKind::TotalDegree { gamma: C64::from_polar(1.0, angle) }, opts.clone()).unwrap();
        let results: Vec<_> = it.iter().collect();
        prop_assert_eq!(results.len(), 4);
        for (i, r) in results.iter().enumerate() {
            prop_assert!(r.is_nonsingular());
            let res = norm2(&f.evaluate(&r.solution, None).unwrap());
            prop_assert!(res <= 100.0 * opts.newton_tol * (1.0 + norm2(&r.solution)));
            for s in &results[i + 1..] {
                prop_assert!(distance(&r.solution, &s.solution) > 1e-4);
            }
        }
    }

    #[test]
    fn success_endpoints_meet_the_residual_bound(
        coeffs in proptest::collection::vec(-1.0f64..1.0, 24),
        angle in 0.0..std::f64::consts::TAU,
    ) {
        let f = quadratics(&coeffs);
        prop_assume!(f.degrees() == vec![2, 2]);
        let opts = TrackOptions::default();
        let it = solve_iter(&f, StartKind::TotalDegree { gamma: C64::from_polar(1.0, angle) }, opts.clone()).unwrap();
        for r in &it {
            if r.is_success() {
                let res = norm2(&f.evaluate(&r.solution, None).unwrap());
                prop_assert!(res <= 100.0 * opts.newton_tol * (1.0 + norm2(&r.solution)), "residual {}", res);
            }
        }
    }

    #[test]
    fn tracking_is_a_pure_function(angle in 0.0..std::f64::consts::TAU) {
        let f = intro();
        let g = total_degree_system(&[2, 2], C64::new(1.0, 0.0)).unwrap();
        let h = Homotopy::straight_line(f, g, C64::from_polar(1.0, angle)).unwrap();
        let opts = TrackOptions::default();
        for s in total_degree_start_iter(&[2, 2]).unwrap() {
            prop_assert_eq!(track(&h, &s, &opts), track(&h, &s, &opts));
        }
    }
}
