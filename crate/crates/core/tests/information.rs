use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

use proptest::prelude::*;
use qdl_core::entanglement::{
    entropy_closed_form, info_threshold, mutual_information, ppt_check, InfoThreshold,
};
use qdl_core::nonlocality::{exceeds_local_bound, horodecki_bmax};
use qdl_core::scenario::ab_state;
use qdl_core::{Scenario, ScenarioParams};

fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

fn params(sc: Scenario, d: f64, r: f64) -> ScenarioParams {
    match sc {
        Scenario::SystemDecoherence => ScenarioParams::system(d, r).unwrap(),
        Scenario::MeterDecoherence => ScenarioParams::meter(d, r).unwrap(),
        _ => unreachable!(),
    }
}

const SINGLE: [Scenario; 2] = [Scenario::SystemDecoherence, Scenario::MeterDecoherence];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn information_is_bounded(d in 0.0f64..=1.0, r_s in 0.0f64..=1.0, r_m in 0.0f64..=1.0) {
        let rho = ab_state(&ScenarioParams::combined(d, r_s, r_m).unwrap(), Scenario::Combined).unwrap();
        let info = mutual_information(&rho).unwrap();
        prop_assert!(info.i_ab >= -1e-10);
        prop_assert!(info.i_ab <= 2.0 * LN_2 + 1e-10);
        prop_assert!((info.i_ab - (info.s_a + info.s_b - info.s_ab)).abs() < 1e-15);
    }

    #[test]
    fn negativity_matches_separability(d in 0.0f64..=1.0, r_s in 0.0f64..=1.0, r_m in 0.0f64..=1.0) {
        let rho = ab_state(&ScenarioParams::combined(d, r_s, r_m).unwrap(), Scenario::Combined).unwrap();
        let rep = ppt_check(&rho).unwrap();
        prop_assert_eq!(rep.separable, rep.negativity <= 1e-10);
        prop_assert!(rep.ppt_spectrum.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!((rep.ppt_spectrum.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn violation_implies_entanglement(d in 0.0f64..=1.0, r_s in 0.0f64..=1.0, r_m in 0.0f64..=1.0) {
        let rho = ab_state(&ScenarioParams::combined(d, r_s, r_m).unwrap(), Scenario::Combined).unwrap();
        if exceeds_local_bound(horodecki_bmax(&rho).unwrap()) {
            prop_assert!(!ppt_check(&rho).unwrap().separable);
        }
    }
}

#[test]
fn entanglement_region_of_single_environments() {
    for sc in SINGLE {
        for &d in &grid(21) {
            for &r in &grid(21) {
                let rep = ppt_check(&ab_state(&params(sc, d, r), sc).unwrap()).unwrap();
                let expected = d > 1e-6 && r > 1e-6;
                assert_eq!(rep.negativity > 1e-10, expected, "{sc} d={d} r={r} {rep:?}");
                if expected {
                    assert_eq!(rep.negative_eigenvalues(), 1, "{sc} d={d} r={r}");
                }
            }
        }
    }
}

#[test]
fn meter_decoherence_hides_entanglement_from_chsh() {
    let mut gap = 0;
    for &d in &grid(21) {
        for &r in &grid(21) {
            let rho = ab_state(
                &ScenarioParams::meter(d, r).unwrap(),
                Scenario::MeterDecoherence,
            )
            .unwrap();
            if ppt_check(&rho).unwrap().negativity > 1e-10 && horodecki_bmax(&rho).unwrap() <= 2.0 {
                gap += 1;
            }
        }
    }
    assert!(gap > 0);
    let rho = ab_state(
        &ScenarioParams::meter(0.5, 0.2).unwrap(),
        Scenario::MeterDecoherence,
    )
    .unwrap();
    assert!(!ppt_check(&rho).unwrap().separable);
    assert!(horodecki_bmax(&rho).unwrap() < 2.0);
}

#[test]
fn closed_form_entropies_on_grid() {
    for sc in SINGLE {
        for &d in &grid(21) {
            for &r in &grid(21) {
                let p = params(sc, d, r);
                let numeric = mutual_information(&ab_state(&p, sc).unwrap()).unwrap();
                let closed = entropy_closed_form(sc, &p).unwrap();
                let diff = numeric.max_abs_diff(&closed);
                assert!(diff < 1e-9, "{sc} d={d} r={r}: {diff:e}");
            }
        }
    }
}

#[test]
fn information_is_continuous() {
    let g = grid(21);
    for sc in SINGLE {
        let table: Vec<Vec<f64>> = g
            .iter()
            .map(|&d| {
                g.iter()
                    .map(|&r| {
                        mutual_information(&ab_state(&params(sc, d, r), sc).unwrap())
                            .unwrap()
                            .i_ab
                    })
                    .collect()
            })
            .collect();
        for i in 0..g.len() {
            for j in 0..g.len() {
                if i + 1 < g.len() {
                    assert!((table[i + 1][j] - table[i][j]).abs() < 0.2);
                }
                if j + 1 < g.len() {
                    assert!((table[i][j + 1] - table[i][j]).abs() < 0.2);
                }
            }
        }
    }
}

#[test]
fn system_threshold_tracks_violation() {
    for &r in &grid(21) {
        let t = info_threshold(Scenario::SystemDecoherence, r)
            .unwrap()
            .value()
            .unwrap();
        for &d in &grid(41) {
            if (d * d + r * r - 1.0).abs() < 1e-6 {
                continue;
            }
            let rho = ab_state(
                &ScenarioParams::system(d, r).unwrap(),
                Scenario::SystemDecoherence,
            )
            .unwrap();
            let i = mutual_information(&rho).unwrap().i_ab;
            let violates = exceeds_local_bound(horodecki_bmax(&rho).unwrap());
            assert_eq!(d * d + r * r > 1.0, violates, "r={r} d={d}");
            if (i - t).abs() > 1e-9 {
                assert_eq!(i > t, violates, "r={r} d={d} I={i} Ī={t}");
            }
        }
    }
}

#[test]
fn system_threshold_closed_form_matches_boundary() {
    for &r in &grid(21) {
        match info_threshold(Scenario::SystemDecoherence, r).unwrap() {
            InfoThreshold::Finite {
                value,
                boundary_information,
                ..
            } => {
                assert!((value - boundary_information).abs() < 1e-9, "r={r}");
            }
            InfoThreshold::NoThreshold => panic!("r={r}"),
        }
    }
}

#[test]
fn meter_threshold_exists_only_below_critical_robustness() {
    for &r in &grid(21) {
        let t = info_threshold(Scenario::MeterDecoherence, r).unwrap();
        assert_eq!(t == InfoThreshold::NoThreshold, r >= FRAC_1_SQRT_2, "r={r}");
    }
}
