//! Finite-difference verification on small grids (the full-size runs
//! live in the acceptance suite).

mod common;

use common::*;
use refsusy::builders::{self, Sign};
use refsusy::spectral::{self, GridSpec};

fn harmonic_one_fold() -> refsusy::SusyModel {
    builders::build_one_fold(&rf(&[0, 1]), &rf(&[0]), &no_constants()).unwrap()
}

#[test]
fn harmonic_spectrum_and_pairing() {
    let model = harmonic_one_fold();
    let grid = GridSpec::new(8.0, 400, 4);
    let pairing = spectral::pair_spectra(&model, &grid, 5, 1e-3).unwrap();
    for (k, &lam) in pairing.minus.iter().enumerate() {
        assert!(
            (lam - k as f64).abs() < 1e-4,
            "H- level {k}: {lam}"
        );
    }
    for (k, &lam) in pairing.plus.iter().enumerate() {
        assert!(
            (lam - (k + 1) as f64).abs() < 1e-4,
            "H+ level {k}: {lam}"
        );
    }
    // Only the H- ground state (and the top H+ level, which has no
    // in-window partner) are unmatched.
    assert_eq!(pairing.unmatched_minus, 1);
    assert_eq!(pairing.unmatched_plus, 1);
}

#[test]
fn gaussian_kernel_invariance() {
    let model = harmonic_one_fold();
    let grid = GridSpec::new(8.0, 400, 4);
    let k = spectral::kernel_invariance(&model, &grid).unwrap();
    assert!(k.p_residual < 1e-4, "P- residual {}", k.p_residual);
    assert!(k.h_residual < 1e-4, "H- residual {}", k.h_residual);
    assert!(k.ph_residual < 1e-4, "P- H- residual {}", k.ph_residual);
}

#[test]
fn intertwining_residual_second_order_convergence() {
    let model = harmonic_one_fold();
    let coarse = spectral::intertwining_residual(&model, &GridSpec::new(8.0, 250, 2)).unwrap();
    let fine = spectral::intertwining_residual(&model, &GridSpec::new(8.0, 500, 2)).unwrap();
    let ratio = coarse / fine;
    assert!(
        (ratio - 4.0).abs() < 1.2,
        "expected ~4x reduction per halving, got {ratio} ({coarse} -> {fine})"
    );
}

#[test]
fn intertwining_residual_exact_for_constant_coefficients() {
    let zero = rf(&[0]);
    let c = consts(rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1));
    let model = builders::build_two_fold(
        &zero, &zero, &zero, &zero, &zero, &zero, &zero, &c,
    )
    .unwrap();
    let r = spectral::intertwining_residual(&model, &GridSpec::new(6.0, 200, 2)).unwrap();
    assert!(r <= 1e-12, "constant-coefficient residual {r}");
}

#[test]
fn representation_agreement_is_exact_to_rounding() {
    let c01 = consts(rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1));
    let model = builders::solve_case4(&rf(&[0, 1]), &rf(&[0]), &c01).unwrap();
    let dev = spectral::representation_agreement(&model, &GridSpec::new(6.0, 64, 2)).unwrap();
    assert!(dev <= 1e-10, "deviation {dev}");

    // Also for a family with a genuinely odd reflection coefficient.
    let model5 = builders::solve_case5(&rf(&[0, 1]), Sign::Plus, &rf(&[0]), &c01).unwrap();
    let dev5 = spectral::representation_agreement(&model5, &GridSpec::new(6.0, 64, 4)).unwrap();
    assert!(dev5 <= 1e-10, "deviation {dev5}");
}

#[test]
fn pole_handling_on_the_grid() {
    // Midpoint grids never contain q = 0, so families with a pole only
    // at the origin discretize fine.
    let model = builders::solve_case1(&rf(&[0]), &rf(&[0, 1]), &rf(&[0]), &no_constants()).unwrap();
    assert!(spectral::discretize(&model.h_minus, &GridSpec::new(2.0, 8, 2)).is_ok());

    // With L = 4 and n = 8 the nodes are ±1/2, ±3/2, ..., so a
    // coefficient with poles at ±1/2 is reported.
    let op = refsusy::RefOp::mul_by(refsusy::SplitFunction::from_total(&rfq(
        &[4],
        &[-1, 0, 4],
    )));
    assert!(matches!(
        spectral::discretize(&op, &GridSpec::new(4.0, 8, 2)),
        Err(refsusy::Error::PoleOnGrid { .. })
    ));
}
