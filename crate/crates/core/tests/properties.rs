use gsws::scattering::{closed_form_rt, reflection_transmission_from, reflection_transmission_with, Incidence};
use gsws::spectrum::bound_residual_with;
use gsws::{Method, Parity, PotentialParams, ThetaBranch};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = PotentialParams> {
    (10.0..150.0f64, 0.0..400.0f64, 0.7..2.0f64, 4.0..9.0f64)
        .prop_filter("a·L well above one", |(_, _, a, l)| a * l >= 5.0)
        .prop_map(|(v0, w0, a, l)| PotentialParams::new(v0, w0, a, l).unwrap())
}

fn methods() -> [Method; 2] {
    [Method::default(), Method::exact()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn potential_is_mirror_symmetric(p in params(), x in 0.0..30.0f64) {
        prop_assert_eq!(p.potential(x), p.potential(-x));
    }

    #[test]
    fn unitarity(p in params(), e in 0.1..100.0f64) {
        for m in methods() {
            let r = reflection_transmission_with(&p, e, m).unwrap();
            prop_assert!(r.unitarity_defect <= 1e-10, "{:?} {:?}", m.matching, r);
            prop_assert!(r.r >= 0.0 && r.t >= 0.0);
        }
    }

    #[test]
    fn theta_branch_is_irrelevant_for_scattering(p in params(), e in 0.1..100.0f64) {
        for m in methods() {
            let a = reflection_transmission_with(&p, e, m).unwrap();
            let b = reflection_transmission_with(&p, e, m.with_branch(ThetaBranch::Minus)).unwrap();
            prop_assert!((a.t - b.t).abs() <= 1e-10 && (a.r - b.r).abs() <= 1e-10);
        }
    }

    #[test]
    fn theta_branch_keeps_bound_residual_sign(p in params(), s in 0.05..0.95f64) {
        let e = -p.v0 * s;
        for m in methods() {
            for parity in [Parity::Even, Parity::Odd] {
                let a = bound_residual_with(&p, e, parity, m).unwrap();
                let b = bound_residual_with(&p, e, parity, m.with_branch(ThetaBranch::Minus)).unwrap();
                prop_assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn incidence_side_does_not_change_transmission(p in params(), e in 0.1..100.0f64) {
        for m in methods() {
            let l = reflection_transmission_from(&p, e, m, Incidence::Left).unwrap();
            let r = reflection_transmission_from(&p, e, m, Incidence::Right).unwrap();
            prop_assert!((l.t - r.t).abs() <= 1e-10, "{:?}: {} vs {}", m.matching, l.t, r.t);
        }
    }

    #[test]
    fn closed_form_agrees_with_amplitudes(p in params(), e in 0.1..100.0f64) {
        if let Some((r, t)) = closed_form_rt(&p, e).unwrap() {
            let a = reflection_transmission_with(&p, e, Method::default()).unwrap();
            prop_assert!((a.t - t).abs() <= 1e-9 && (a.r - r).abs() <= 1e-9);
        }
    }
}
