use std::f64::consts::PI;

use buresgeo::closedform::{fidelity_trace, thermal_fidelity};
use buresgeo::geometry::{metric_closed, scalar_curvature_closed};
use buresgeo::states::{beta_from_u, canonicalize, u_coordinate};
use buresgeo::StateParams;
use proptest::prelude::*;

fn state() -> impl Strategy<Value = StateParams> {
    (0.05f64..40.0, 0.0f64..2.0, 0.0f64..PI)
        .prop_map(|(b, r, t)| StateParams::new(b, r, t).unwrap())
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent(b in 0.01f64..100.0, r in -3.0f64..3.0, t in -10.0f64..10.0) {
        let s = canonicalize(b, r, t).unwrap();
        prop_assert!(s.r() >= 0.0);
        prop_assert!((0.0..PI).contains(&s.theta()));
        prop_assert_eq!(canonicalize(s.beta(), s.r(), s.theta()).unwrap(), s);
    }

    #[test]
    fn fidelity_is_symmetric_and_bounded(a in state(), b in state()) {
        let ab = fidelity_trace(&a, &b).unwrap().fidelity_trace;
        let ba = fidelity_trace(&b, &a).unwrap().fidelity_trace;
        prop_assert!((ab - ba).abs() <= 1e-14);
        prop_assert!(ab > 0.0 && ab <= 1.0);
    }

    #[test]
    fn fidelity_of_a_state_with_itself_is_one(a in state()) {
        prop_assert_eq!(fidelity_trace(&a, &a).unwrap().fidelity_trace, 1.0);
    }

    #[test]
    fn fidelity_depends_on_phase_difference_only(a in state(), b in state(), shift in -3.0f64..3.0) {
        let f = fidelity_trace(&a, &b).unwrap().fidelity_trace;
        let a2 = StateParams::new(a.beta(), a.r(), a.theta() + shift).unwrap();
        let b2 = StateParams::new(b.beta(), b.r(), b.theta() + shift).unwrap();
        let g = fidelity_trace(&a2, &b2).unwrap().fidelity_trace;
        prop_assert!((f - g).abs() <= 1e-12, "{} vs {}", f, g);
    }

    #[test]
    fn common_squeeze_reduces_to_thermal(b1 in 0.05f64..40.0, b2 in 0.05f64..40.0, r in 0.0f64..2.0, t in 0.0f64..PI) {
        let f = fidelity_trace(&StateParams::new(b1, r, t).unwrap(), &StateParams::new(b2, r, t).unwrap()).unwrap();
        prop_assert!((f.fidelity_trace - thermal_fidelity(b1, b2).unwrap()).abs() <= 1e-13);
    }

    #[test]
    fn u_chart_round_trips(b in 1e-4f64..500.0) {
        let back = beta_from_u(u_coordinate(b).unwrap()).unwrap();
        prop_assert!(((back - b) / b).abs() <= 1e-11);
    }

    #[test]
    fn metric_is_positive(s in state()) {
        let g = metric_closed(&s).unwrap();
        prop_assert!(g.g_bb > 0.0 && g.g_rr > 0.5 - 1e-15 && g.g_rr <= 1.0 && g.g_tt >= 0.0);
    }

    #[test]
    fn curvature_stays_between_limits(b in 1e-3f64..700.0) {
        let r = scalar_curvature_closed(b).unwrap().r_scalar;
        prop_assert!((-24.0..=-47.0 / 7.0 + 1e-12).contains(&r));
    }
}
