use proptest::prelude::*;
use qdl_core::scenario::{ab_state, build_joint_state, interference_rotation, phase_shift};
use qdl_core::{DensityMatrix, Factor, Scenario, ScenarioParams};

fn unit() -> impl Strategy<Value = f64> {
    0.0f64..=1.0
}

fn max_diff(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    a.matrix().max_abs_diff(b.matrix())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn joint_states_stay_normalized(r in unit(), d in unit(), r_s in unit(), r_m in unit()) {
        let free = ScenarioParams::free(r, d).unwrap();
        prop_assert!((build_joint_state(&free, Scenario::Free).unwrap().norm() - 1.0).abs() < 1e-12);
        let p = ScenarioParams::combined(d, r_s, r_m).unwrap();
        for sc in [Scenario::SystemDecoherence, Scenario::MeterDecoherence, Scenario::Combined] {
            let s = build_joint_state(&p, sc).unwrap();
            prop_assert!((s.norm() - 1.0).abs() < 1e-12);
            let rho = ab_state(&p, sc).unwrap();
            prop_assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
            prop_assert!(rho.eigenvalues().unwrap()[3] > -1e-10);
        }
    }

    #[test]
    fn combined_reduces_to_single_environments(d in unit(), r in unit()) {
        let sys = ab_state(&ScenarioParams::system(d, r).unwrap(), Scenario::SystemDecoherence).unwrap();
        let as_sys = ab_state(&ScenarioParams::combined(d, r, 1.0).unwrap(), Scenario::Combined).unwrap();
        prop_assert!(max_diff(&sys, &as_sys) < 1e-12);

        let met = ab_state(&ScenarioParams::meter(d, r).unwrap(), Scenario::MeterDecoherence).unwrap();
        let as_met = ab_state(&ScenarioParams::combined(d, 1.0, r).unwrap(), Scenario::Combined).unwrap();
        prop_assert!(max_diff(&met, &as_met) < 1e-12);
    }

    #[test]
    fn unit_robustness_is_the_free_state(d in unit()) {
        let free = ab_state(&ScenarioParams::free(0.5, d).unwrap(), Scenario::Free).unwrap();
        for sc in [Scenario::SystemDecoherence, Scenario::MeterDecoherence, Scenario::Combined] {
            let rho = ab_state(&ScenarioParams::combined(d, 1.0, 1.0).unwrap(), sc).unwrap();
            prop_assert!(max_diff(&free, &rho) < 1e-12);
        }
    }

    #[test]
    fn free_state_is_pure(r in unit(), d in unit()) {
        let rho = ab_state(&ScenarioParams::free(r, d).unwrap(), Scenario::Free).unwrap();
        prop_assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phase_shift_leaves_path_populations(d in unit(), r in unit(), phi in 0.0f64..6.3) {
        let rho = ab_state(&ScenarioParams::system(d, r).unwrap(), Scenario::SystemDecoherence).unwrap();
        let shifted = phase_shift(&rho, phi).unwrap();
        let (a0, a1) = (rho.reduce_to(Factor::A).unwrap(), shifted.reduce_to(Factor::A).unwrap());
        prop_assert!((a0.get(0, 0) - a1.get(0, 0)).norm() < 1e-12);
        prop_assert!((a0.get(0, 1).norm() - a1.get(0, 1).norm()).abs() < 1e-12);
        // the meter is untouched by local operations on the system
        let b0 = rho.reduce_to(Factor::B).unwrap();
        let b1 = interference_rotation(&shifted).unwrap().reduce_to(Factor::B).unwrap();
        prop_assert!(max_diff(&b0, &b1) < 1e-12);
    }

    #[test]
    fn meter_marginal_ignores_system_environment(d in unit(), r_s in unit()) {
        // decohering A cannot change what B holds
        let free = ab_state(&ScenarioParams::free(0.5, d).unwrap(), Scenario::Free).unwrap();
        let sys = ab_state(&ScenarioParams::system(d, r_s).unwrap(), Scenario::SystemDecoherence).unwrap();
        prop_assert!(max_diff(&free.reduce_to(Factor::B).unwrap(), &sys.reduce_to(Factor::B).unwrap()) < 1e-12);
    }
}

#[test]
fn general_path_weight_is_free_only() {
    let p = ScenarioParams::new(0.3, 0.5, 1.0, 1.0).unwrap();
    assert!(ab_state(&p, Scenario::Free).is_ok());
    for sc in [
        Scenario::SystemDecoherence,
        Scenario::MeterDecoherence,
        Scenario::Combined,
    ] {
        assert!(ab_state(&p, sc).is_err());
    }
}

#[test]
fn out_of_range_parameters_are_rejected() {
    assert!(ScenarioParams::system(1.1, 0.5).is_err());
    assert!(ScenarioParams::meter(0.5, -0.1).is_err());
    assert!(ScenarioParams::free(f64::NAN, 0.5).is_err());
}
