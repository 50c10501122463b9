//! Acceptance suite: one pass/fail line per criterion.
//!
//! Run with `cargo test -p dirac-susy-core --test acceptance`. The process
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use dirac_susy::numerics::{discrete_residual, eigen_solve, integrate, normalize};
use dirac_susy::pt::{
    cs_from_params, ell_minus_strengths, ladder_spectra, params_from_cs, pt_bound_states,
    pt_bound_wavefunction, pt_to_partner_energy, singularity_regime, SingularityRegime,
};
use dirac_susy::riccati::{
    annihilation_check, deformed_dirac_solutions, deformed_potential, member_spectrum,
    riccati_residual, seed_zero_mode, FamilyParameter,
};
use dirac_susy::susy::{
    apply_a, dirac_spectrum, partner_potentials, partner_spectrum, zero_mode, Superpotential,
    ZeroMode,
};
use dirac_susy::witten::{
    index_analytic, index_deficit, index_limit, index_numeric, index_ode_rhs, log_sweep, IndexLimit,
};
use dirac_susy::{presets, Grid, SampledFunction};

const LAMBDAS: [f64; 5] = [-3.0, -1.5, 0.5, 1.0, 10.0];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

fn kink() -> Superpotential {
    presets::kink(Grid::production()).expect("kink preset")
}

fn sample(g: Grid, f: impl Fn(f64) -> f64) -> SampledFunction {
    SampledFunction::from_fn(g, f).expect("finite samples")
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn partner_potentials_of_kink() -> Outcome {
    let sp = kink();
    let pair = partner_potentials(&sp);
    let g = *sp.grid();
    let vm = sample(g, |x| 4.0 - 6.0 * sech(x).powi(2));
    let vp = sample(g, |x| 4.0 - 2.0 * sech(x).powi(2));
    let dm = pair.v_minus.sup_distance(&vm).unwrap();
    let dp = pair.v_plus.sup_distance(&vp).unwrap();
    let mid = g.nearest_index(0.0);
    let at0 = (pair.v_minus[mid] + 2.0)
        .abs()
        .max((pair.v_plus[mid] - 2.0).abs());
    check(
        dm <= 1e-10 && dp <= 1e-10 && at0 <= 1e-10,
        format!("sup|V- - 4 + 6sech^2| = {dm:.2e}, sup|V+ - 4 + 2sech^2| = {dp:.2e}, |V(0) error| = {at0:.2e}"),
    )
}

fn zero_mode_of_kink() -> Outcome {
    let sp = kink();
    let ZeroMode::Minus(psi0) = zero_mode(&sp) else {
        return Err("no H- zero mode".into());
    };
    let mid = sp.grid().nearest_index(0.0);
    let peak = (psi0[mid] - 3f64.sqrt() / 2.0).abs();
    let norm = (integrate(&psi0.map(|v| v * v).unwrap()) - 1.0).abs();
    check(
        peak <= 1e-8 && norm <= 1e-6,
        format!("|psi0(0) - sqrt(3)/2| = {peak:.2e}, |int psi0^2 - 1| = {norm:.2e}"),
    )
}

fn spectrum_ladder() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    let mut ok = true;
    for ell in 1..=4u32 {
        let sp = presets::ell_tanh(ell, Grid::production()).unwrap();
        let pair = partner_potentials(&sp);
        let k = ell as usize + 3;
        let minus = partner_spectrum(&pair.v_minus, &sp, k)
            .unwrap()
            .bound_eigenvalues();
        let plus = partner_spectrum(&pair.v_plus, &sp, k)
            .unwrap()
            .bound_eigenvalues();
        let exact = ladder_spectra(ell);
        let gm = max_gap(&minus, &exact.e_minus);
        let gp = max_gap(&plus, &exact.e_plus);
        let gs = max_gap(&plus, minus.get(1..).unwrap_or(&[]));
        let zero_first = minus.first().is_some_and(|e| e.abs() <= 1e-3);
        ok &= gm <= 1e-3 && gp <= 1e-3 && gs <= 1e-3 && zero_first;
        worst = worst.max(gm).max(gp).max(gs);
        notes.push(format!(
            "l={ell}: {} H- / {} H+ levels",
            minus.len(),
            plus.len()
        ));
    }
    check(ok, format!("max error {worst:.2e} ({})", notes.join(", ")))
}

fn isospectral_family() -> Outcome {
    let sp = kink();
    let psi0 = seed_zero_mode(&sp).unwrap();
    let pair = partner_potentials(&sp);
    let reference = partner_spectrum(&pair.v_minus, &sp, 6)
        .unwrap()
        .bound_eigenvalues();
    let (mut level_gap, mut ric, mut expr): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for lambda in LAMBDAS {
        let member = deformed_potential(&sp, &psi0, FamilyParameter::new(lambda).unwrap())
            .map_err(|e| format!("lambda = {lambda}: {e}"))?;
        let levels = member_spectrum(&member, &sp, 6)
            .unwrap()
            .bound_eigenvalues();
        level_gap = level_gap.max(max_gap(&levels, &reference));
        ric = ric.max(riccati_residual(&member.big_f, &pair.v_plus).unwrap());
        expr = expr.max(member.expression_gap);
    }
    check(
        level_gap <= 1e-3 && ric <= 1e-4 && expr <= 1e-4,
        format!(
            "spectrum gap {level_gap:.2e}, Riccati residual {ric:.2e}, cross-expression gap {expr:.2e}"
        ),
    )
}

fn closed_form_member() -> Outcome {
    let sp = kink();
    let psi0 = seed_zero_mode(&sp).unwrap();
    let lambda = 1.0;
    let member = deformed_potential(&sp, &psi0, FamilyParameter::new(lambda).unwrap()).unwrap();
    let g = *sp.grid();
    let den = |x: f64| {
        let t = x.tanh();
        4.0 * lambda + 3.0 * t - t.powi(3) + 2.0
    };
    let big_f = sample(g, |x| 2.0 * x.tanh() + 3.0 * sech(x).powi(4) / den(x));
    let c = 2.0 * 3f64.sqrt() * (lambda * (lambda + 1.0)).sqrt();
    let mode = sample(g, |x| c * sech(x).powi(2) / den(x));
    let df = member.big_f.sup_distance(&big_f).unwrap();
    let dm = member.psi0_tilde.sup_distance(&mode).unwrap();
    check(
        df <= 1e-6 && dm <= 1e-6,
        format!("sup|F - closed form| = {df:.2e}, sup|psi0~ - closed form| = {dm:.2e}"),
    )
}

fn renormalized_zero_modes() -> Outcome {
    let sp = kink();
    let psi0 = seed_zero_mode(&sp).unwrap();
    let (mut norm, mut ann): (f64, f64) = (0.0, 0.0);
    for lambda in LAMBDAS {
        let member = deformed_potential(&sp, &psi0, FamilyParameter::new(lambda).unwrap())
            .map_err(|e| format!("lambda = {lambda}: {e}"))?;
        let p = &member.psi0_tilde;
        norm = norm.max((integrate(&p.map(|v| v * v).unwrap()) - 1.0).abs());
        ann = ann.max(annihilation_check(&member.big_f, p).unwrap());
    }
    check(
        norm <= 1e-6 && ann <= 1e-4,
        format!("max |int psi0~^2 - 1| = {norm:.2e}, max ||(d/dx + F) psi0~|| = {ann:.2e}"),
    )
}

fn witten_index() -> Outcome {
    // Δ = lim - deficit, so dΔ/dβ = -d(deficit)/dβ; differencing the deficit
    // avoids cancellation once Δ has saturated.
    let values: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
    let mut worst_rel: f64 = 0.0;
    let mut worst_abs: f64 = 0.0;
    for &p in &values {
        for &m in &values {
            let fmax = p.abs().max(m.abs());
            for beta in log_sweep(1e-2, 1e2, 41) {
                let d = 1e-4 * beta.min(1.0 / (fmax * fmax));
                let fd =
                    -(index_deficit(p, m, beta + d) - index_deficit(p, m, beta - d)) / (2.0 * d);
                let rhs = index_ode_rhs(p, m, beta);
                let scale = (p.abs() * (-beta * p * p).exp() + m.abs() * (-beta * m * m).exp())
                    / (4.0 * std::f64::consts::PI * beta).sqrt();
                if p == m {
                    worst_abs = worst_abs.max((fd - rhs).abs());
                } else {
                    worst_rel = worst_rel.max((fd - rhs).abs() / scale);
                }
            }
        }
    }
    let kink_sp = kink();
    let one = Superpotential::new(sample(Grid::production(), |_| 1.0)).unwrap();
    let limits_ok = index_limit(&kink_sp) == IndexLimit::Value(1)
        && index_limit(&one) == IndexLimit::Value(0)
        && (index_analytic(2.0, -2.0, 1e3) - 1.0).abs() < 1e-12
        && index_analytic(1.0, 1.0, 1e3) == 0.0;
    let numeric = index_numeric(&kink_sp, 10.0, 40).unwrap();
    let gap = (numeric.value - index_analytic(2.0, -2.0, 10.0)).abs();
    check(
        worst_rel <= 1e-6 && worst_abs <= 1e-12 && limits_ok && gap <= 1e-2,
        format!(
            "ODE relative error {worst_rel:.2e} (equal asymptotes {worst_abs:.1e}), limits {}, |numeric - analytic| at beta=10 = {gap:.2e}",
            if limits_ok { "+1/0" } else { "WRONG" }
        ),
    )
}

fn intertwining_and_dirac() -> Outcome {
    let fine = presets::kink(Grid::new(-20.0, 20.0, 8001).unwrap()).unwrap();
    let pair = partner_potentials(&fine);
    let s = eigen_solve(&pair.v_minus, 2).unwrap();
    let image = normalize(&apply_a(&fine, &s.eigenvectors()[1]).unwrap()).unwrap();
    let residual = discrete_residual(&pair.v_plus, &image, s.eigenvalues()[1]);

    let sp = kink();
    let expected = [-3f64.sqrt(), 0.0, 3f64.sqrt()];
    let base = dirac_spectrum(&sp, 6).unwrap().omegas();
    let mut worst = max_gap(&base, &expected);
    let psi0 = seed_zero_mode(&sp).unwrap();
    for lambda in LAMBDAS {
        let member = deformed_potential(&sp, &psi0, FamilyParameter::new(lambda).unwrap()).unwrap();
        let deformed = deformed_dirac_solutions(&member, &sp, 6)
            .map_err(|e| format!("lambda = {lambda}: {e}"))?;
        let omegas = deformed.spectrum.omegas();
        worst = worst
            .max(max_gap(&omegas, &expected))
            .max(max_gap(&omegas, &base));
    }
    check(
        residual <= 1e-4 && worst <= 1e-3,
        format!("relative residual of A psi(E=3) in H+ = {residual:.2e} (n = 8001), omega-list error {worst:.2e} over all lambda"),
    )
}

fn poschl_teller() -> Outcome {
    let mut trip: f64 = 0.0;
    for &(k1, k2) in &[(1.75, 0.75), (2.5, 0.25), (3.1, 1.7), (0.9, 0.6)] {
        let (c, s) = cs_from_params(k1, k2);
        let p = params_from_cs(c, s).unwrap();
        // 2k - 1 < 0 selects the alternate root
        let back1 = if k1 >= 0.5 { p.k1 } else { p.k1_alt };
        let back2 = if k2 >= 0.5 { p.k2 } else { p.k2_alt };
        trip = trip.max((back1 - k1).abs()).max((back2 - k2).abs());
        let (c2, s2) = cs_from_params(p.k1, p.k2);
        trip = trip.max((c2 - c).abs()).max((s2 - s).abs());
    }
    for &(c, s) in &[(-3.0, 0.0), (0.1, 0.2), (-10.5, 5.0), (0.125, -0.125)] {
        let p = params_from_cs(c, s).unwrap();
        let (c2, s2) = cs_from_params(p.k1, p.k2);
        trip = trip.max((c2 - c).abs()).max((s2 - s).abs());
    }

    let g = Grid::production();
    let mut wave: f64 = 0.0;
    let mut states = 0;
    for ell in 1..=4u32 {
        let sp = presets::ell_tanh(ell, g).unwrap();
        let pair = partner_potentials(&sp);
        let (c, s) = ell_minus_strengths(ell);
        let p = params_from_cs(c, s).unwrap();
        let analytic = pt_bound_states(p.k1, p.k2);
        let numeric = eigen_solve(&pair.v_minus, analytic.len()).unwrap();
        for (i, st) in analytic.iter().enumerate() {
            let raw = SampledFunction::from_fn(g, |x| {
                pt_bound_wavefunction(p.k1, st.k2, st.k, x).expect("terminating series")
            })
            .unwrap();
            let psi = normalize(&raw).unwrap();
            let v = &numeric.eigenvectors()[i];
            let overlap: f64 = psi
                .values()
                .iter()
                .zip(v.values())
                .map(|(a, b)| a * b)
                .sum();
            let psi = if overlap < 0.0 { psi.scale(-1.0) } else { psi };
            wave = wave.max(psi.sup_distance(v).unwrap());
            let de = (pt_to_partner_energy(st.energy, ell) - numeric.eigenvalues()[i]).abs();
            if de > 1e-3 {
                return Err(format!("l={ell} level {i}: energy mismatch {de:.2e}"));
            }
            states += 1;
        }
    }

    use SingularityRegime::*;
    let table = [
        (-1.0, UnboundedBelow, false),
        (-0.2, UnboundedBelow, false),
        (-0.125, NeedsSelfAdjointExtension, true),
        (-0.1, NeedsSelfAdjointExtension, false),
        (0.0, Regular, false),
        (0.2, NeedsSelfAdjointExtension, false),
        (0.375, NeedsSelfAdjointExtension, true),
        (0.5, ImpenetrableBarrier, false),
        (1.0, ImpenetrableBarrier, false),
    ];
    let regimes_ok = table.iter().all(|&(s, regime, boundary)| {
        let r = singularity_regime(s);
        r.regime == regime && r.on_boundary == boundary
    });
    check(
        trip <= 1e-12 && wave <= 1e-3 && regimes_ok,
        format!(
            "round trip {trip:.1e}, {states} hypergeometric states max pointwise gap {wave:.2e}, regimes {}",
            if regimes_ok { "exact" } else { "WRONG" }
        ),
    )
}

fn grid_convergence() -> Outcome {
    let error = |n: usize| {
        let sp = presets::kink(Grid::new(-20.0, 20.0, n).unwrap()).unwrap();
        let s = eigen_solve(&partner_potentials(&sp).v_minus, 2).unwrap();
        (s.eigenvalues()[1] - 3.0).abs()
    };
    let (coarse, fine) = (error(4001), error(8001));
    let ratio = coarse / fine;
    check(
        ratio >= 3.0,
        format!("E=3 error {coarse:.3e} -> {fine:.3e}, ratio {ratio:.2}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("kink partner potentials", partner_potentials_of_kink),
        ("kink zero mode", zero_mode_of_kink),
        ("spectrum ladder", spectrum_ladder),
        ("isospectral family", isospectral_family),
        ("closed-form family member", closed_form_member),
        ("renormalized zero mode", renormalized_zero_modes),
        ("Witten index", witten_index),
        ("intertwining and Dirac assembly", intertwining_and_dirac),
        ("Poschl-Teller oracle", poschl_teller),
        ("grid convergence", grid_convergence),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
