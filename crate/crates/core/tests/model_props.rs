//! Grid and property checks for the DCE model and the correlation measures.

use std::f64::consts::PI;

use approx::assert_relative_eq;
use dce_gauss::correlations::{
    ip_exact, ip_perturbative, report, steering_exact, steering_onset_amplitude,
    steering_perturbative, steering_threshold_occupation, Direction, Probe,
};
use dce_gauss::dce::{
    exact_tms_cm, occupations, output_cm, scattered_cm, small_parameter, thermal_occupation,
    DceParams, ThermalOccupations,
};
use proptest::prelude::*;

fn grid(lo: f64, hi: f64, steps: usize) -> impl Iterator<Item = f64> + Clone {
    (0..steps).map(move |i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
}

fn dce(f: f64, n: f64) -> dce_gauss::gaussian::CovarianceMatrix {
    output_cm(f, &ThermalOccupations::symmetric(n)).unwrap()
}

#[test]
fn scattering_congruence_reproduces_closed_form() {
    for f in grid(0.0, 0.2, 10) {
        for n_minus in grid(0.0, 0.05, 10) {
            for n_plus in grid(0.0, 0.05, 10) {
                let occ = ThermalOccupations { n_minus, n_plus };
                let closed = output_cm(f, &occ).unwrap();
                let scattered = scattered_cm(f, &occ).unwrap();
                for i in 0..4 {
                    for j in 0..4 {
                        assert!((closed.get(i, j) - scattered.get(i, j)).abs() <= 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn output_is_swap_symmetric_for_equal_occupations() {
    for f in grid(0.0, 0.2, 7) {
        for n in grid(0.0, 0.05, 7) {
            let cm = dce(f, n);
            assert_eq!(cm.swap_modes(), cm);
        }
    }
    let asym = output_cm(0.1, &ThermalOccupations { n_minus: 0.0, n_plus: 0.01 }).unwrap();
    assert_ne!(asym.swap_modes(), asym);
}

#[test]
fn thermal_occupation_monotone() {
    // 10 mK at 20 GHz is still above the f64 underflow of n
    let temps: Vec<f64> = grid(0.01, 1.0, 60).collect();
    let freqs: Vec<f64> = grid(2.0 * PI * 1e9, 2.0 * PI * 2e10, 60).collect();
    for &t in &temps {
        for w in freqs.windows(2) {
            assert!(thermal_occupation(w[1], t) < thermal_occupation(w[0], t));
        }
    }
    for &w in &freqs {
        for t in temps.windows(2) {
            assert!(thermal_occupation(w, t[1]) > thermal_occupation(w, t[0]));
        }
    }
}

#[test]
fn tms_states_are_physical() {
    for r in grid(0.0, 1.0, 21) {
        for n in grid(0.0, 0.2, 21) {
            let cm = exact_tms_cm(r, &ThermalOccupations::symmetric(n)).unwrap();
            assert!(cm.check_physicality(0.0).unwrap().is_physical(), "r={r} n={n}");
        }
    }
    // unequal occupations stay physical too
    for r in grid(0.0, 1.0, 11) {
        let occ = ThermalOccupations { n_minus: 0.2, n_plus: 0.0 };
        assert!(exact_tms_cm(r, &occ).unwrap().check_physicality(0.0).unwrap().is_physical());
    }
}

#[test]
fn steering_matches_leading_order() {
    for f in grid(0.0, 0.05, 30) {
        for n in grid(0.0, 0.01, 30) {
            let exact = steering_exact(&dce(f, n), Direction::AToB).unwrap();
            let pert = steering_perturbative(f, n);
            if exact > 0.0 && pert > 0.0 {
                let bound = 10.0 * (f.powi(4) + n * f * f + n * n);
                assert!((exact - pert).abs() <= bound, "f={f} n={n}");
            }
        }
    }
}

#[test]
fn ip_matches_leading_order_where_physical() {
    let mut checked = 0;
    for f in grid(0.0, 0.05, 30) {
        for n in grid(0.0, 0.01, 30) {
            if n < f * f {
                continue;
            }
            let cm = dce(f, n);
            let Ok(exact) = ip_exact(&cm, Probe::A) else {
                // f = n = 0 is the vacuum
                assert_eq!((f, n), (0.0, 0.0));
                continue;
            };
            let bound = 10.0 * (f.powi(4) + n * n * f * f);
            assert!((exact - ip_perturbative(f, n)).abs() <= bound, "f={f} n={n}");
            checked += 1;
        }
    }
    assert!(checked > 800);
}

#[test]
fn steering_non_increasing_in_noise() {
    for f in grid(0.0, 0.05, 30) {
        let values: Vec<f64> = grid(0.0, 0.01, 60)
            .map(|n| steering_exact(&dce(f, n), Direction::AToB).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[1] <= w[0]));
    }
}

#[test]
fn ip_perturbative_increasing_in_noise() {
    for f in grid(0.001, 0.05, 20) {
        let values: Vec<f64> = grid(0.0, 0.01, 40).map(|n| ip_perturbative(f, n)).collect();
        assert!(values.windows(2).all(|w| w[1] > w[0]));
    }
}

#[test]
fn steering_threshold_is_exact_zero() {
    for f in grid(0.002, 0.05, 25) {
        let n_star = steering_threshold_occupation(f);
        assert!(steering_exact(&dce(f, n_star * (1.0 + 1e-9)), Direction::AToB).unwrap() == 0.0);
        assert!(steering_exact(&dce(f, n_star * (1.0 - 1e-6)), Direction::AToB).unwrap() > 0.0);
        // 3f²/2 + O(f⁴)
        assert!((n_star - 1.5 * f * f).abs() <= 3.0 * f.powi(4));
    }
}

#[test]
fn onset_amplitude_brackets_perturbative_steering() {
    let base = DceParams::standard();
    for t in grid(0.005, 0.06, 12) {
        let p = base.with_temperature(t);
        let eps0 = steering_onset_amplitude(&p).unwrap();
        let n = occupations(&p).mean();
        let f_at = |eps: f64| eps * p.coupling_per_amplitude();
        assert!(steering_perturbative(f_at(eps0 * (1.0 + 1e-6)), n) > 0.0);
        assert_eq!(steering_perturbative(f_at(eps0 * (1.0 - 1e-6)), n), 0.0);
    }
}

#[test]
fn steerable_implies_entangled() {
    let mut steerable = 0;
    for f in grid(0.0, 0.05, 30) {
        for n in grid(0.0, 0.01, 30) {
            let cm = dce(f, n);
            if steering_exact(&cm, Direction::AToB).unwrap() > 0.0 {
                steerable += 1;
                assert!(cm.log_negativity().unwrap() > 0.0, "f={f} n={n}");
            }
        }
    }
    assert!(steerable > 0);
}

#[test]
fn symmetric_reports_at_zero_detuning() {
    let base = DceParams::standard();
    for eps in grid(0.0, 0.9, 10) {
        for t in grid(0.0, 0.08, 9) {
            let p = base.with_amplitude(eps).with_temperature(t);
            let r = report(small_parameter(&p).unwrap(), &occupations(&p)).unwrap();
            assert!((r.steering_a_to_b - r.steering_b_to_a).abs() <= 1e-10);
            assert!((r.ip_probe_a - r.ip_probe_b).abs() <= 1e-10);
            for v in [r.steering_a_to_b, r.ip_probe_a, r.ip_perturbative, r.log_negativity] {
                assert!(v >= 0.0);
            }
        }
    }
}

#[test]
fn detuned_state_is_asymmetric() {
    let p = DceParams {
        detuning: 2.0 * PI * 2e9,
        temperature: 0.02,
        amplitude: 0.5,
        ..DceParams::standard()
    };
    let occ = occupations(&p);
    assert!(occ.n_minus > occ.n_plus);
    let cm = output_cm(small_parameter(&p).unwrap(), &occ).unwrap();
    let ab = steering_exact(&cm, Direction::AToB).unwrap();
    let ba = steering_exact(&cm, Direction::BToA).unwrap();
    assert!(ab > ba && ba > 0.0);

}

#[test]
fn ip_probe_b_is_probe_a_of_swapped_state() {
    use dce_gauss::gaussian::{Convention, CovarianceMatrix};
    // standard form with c₊ ≠ −c₋, ν₋ ≈ 1.312
    let cm = CovarianceMatrix::from_blocks(
        [[2.0, 0.0], [0.0, 2.0]],
        [[1.5, 0.0], [0.0, 1.5]],
        [[0.5, 0.0], [0.0, 0.2]],
        Convention::UnitVacuum,
    )
    .unwrap();
    let a = ip_exact(&cm, Probe::A).unwrap();
    let b = ip_exact(&cm, Probe::B).unwrap();
    assert_relative_eq!(a, 0.036_336_498_996_159_81, max_relative = 1e-10);
    assert_relative_eq!(b, 0.036_270_837_852_037_83, max_relative = 1e-10);
    assert_relative_eq!(b, ip_exact(&cm.swap_modes(), Probe::A).unwrap(), max_relative = 1e-14);
}

proptest! {
    #[test]
    fn small_parameter_is_linear(eps in 0.0..0.9_f64, k in 0.1..1.0_f64, len in 1e-4..1e-3_f64) {
        let p = DceParams { effective_length: len, ..DceParams::standard() };
        let f1 = small_parameter(&p.with_amplitude(eps)).unwrap();
        let fk = small_parameter(&p.with_amplitude(eps * k)).unwrap();
        prop_assert!((fk - k * f1).abs() <= 1e-12 * f1.max(1e-300));
        let q = DceParams { effective_length: len * k, ..p };
        let fl = small_parameter(&q.with_amplitude(eps)).unwrap();
        prop_assert!((fl - k * f1).abs() <= 1e-12 * f1.max(1e-300));
    }

    #[test]
    fn steering_perturbative_nonnegative(f in 0.0..0.5_f64, n in 0.0..1.0_f64) {
        prop_assert!(steering_perturbative(f, n) >= 0.0);
    }
}

#[test]
fn ip_exact_is_zero_for_product_states() {
    for n in grid(0.001, 0.2, 10) {
        let cm = exact_tms_cm(0.0, &ThermalOccupations::symmetric(n)).unwrap();
        assert_relative_eq!(ip_exact(&cm, Probe::A).unwrap(), 0.0);
    }
}
