use dirac_susy::expr::parse;
use dirac_susy::riccati::{
    deformed_dirac_solutions, deformed_potential, seed_zero_mode, FamilyParameter,
};
use dirac_susy::susy::{dirac_spectrum, Superpotential};
use dirac_susy::witten::{index_limit, IndexLimit};
use dirac_susy::{presets, Error, Grid};

#[test]
fn expression_matches_preset_end_to_end() {
    let g = Grid::production();
    let from_text = Superpotential::from_expr(&parse("2*tanh(x)").unwrap(), g).unwrap();
    let preset = presets::kink(g).unwrap();
    assert_eq!(from_text.f_minus(), preset.f_minus());
    assert_eq!(index_limit(&from_text), IndexLimit::Value(1));

    let a = dirac_spectrum(&from_text, 6).unwrap().omegas();
    let b = dirac_spectrum(&preset, 6).unwrap().omegas();
    assert_eq!(a.len(), 3);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-4, "{x} vs {y}");
    }

    let psi0 = seed_zero_mode(&from_text).unwrap();
    let member = deformed_potential(&from_text, &psi0, FamilyParameter::new(0.5).unwrap()).unwrap();
    let deformed = deformed_dirac_solutions(&member, &from_text, 6).unwrap();
    for (x, y) in deformed.spectrum.omegas().iter().zip(&b) {
        assert!((x - y).abs() < 1e-3);
    }
}

#[test]
fn wider_ladder_through_the_family() {
    let sp = presets::ell_tanh(3, Grid::production()).unwrap();
    let psi0 = seed_zero_mode(&sp).unwrap();
    let member = deformed_potential(&sp, &psi0, FamilyParameter::new(-2.0).unwrap()).unwrap();
    let d = deformed_dirac_solutions(&member, &sp, 8).unwrap();
    let expected = [-8f64.sqrt(), -5f64.sqrt(), 0.0, 5f64.sqrt(), 8f64.sqrt()];
    let omegas = d.spectrum.omegas();
    assert_eq!(omegas.len(), expected.len());
    for (x, y) in omegas.iter().zip(expected) {
        assert!((x - y).abs() < 1e-3, "{x} vs {y}");
    }
}

#[test]
fn no_zero_mode_means_no_family() {
    let g = Grid::production();
    let sp = Superpotential::from_expr(&parse("1 + 0.5*tanh(x)").unwrap(), g).unwrap();
    assert!(matches!(seed_zero_mode(&sp), Err(Error::NoZeroMode)));
    assert!(!dirac_spectrum(&sp, 4).unwrap().has_zero_mode());
}
