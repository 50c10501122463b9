//! The five subcommands. Each writes its files plus a summary JSON and
//! returns the names written.

use rayon::prelude::*;
use serde_json::{json, Value};

use dirac_susy::expr::parse;
use dirac_susy::numerics::{integrate, SampledFunction};
use dirac_susy::pt::{
    ell_minus_strengths, ell_plus_strengths, ladder_spectra, params_from_cs, pt_bound_energies,
    pt_to_partner_energy, singularity_regime,
};
use dirac_susy::riccati::{
    annihilation_check, deformed_dirac_solutions, deformed_potential, member_spectrum,
    riccati_residual, FamilyParameter, IsospectralMember,
};
use dirac_susy::susy::{
    dirac_spectrum, partner_potentials, partner_spectrum, zero_mode, DiracSpectrum, Superpotential,
    ZeroMode,
};
use dirac_susy::witten::{index_analytic, index_limit, index_ode_rhs, IndexLimit, PartnerSpectra};
use dirac_susy::{presets, Spectrum};

use crate::config::{RunConfig, Source};
use crate::error::CliError;
use crate::output::{float, json_float, lambda_label, OutputDir};

type Outcome = Result<Vec<String>, CliError>;

fn superpotential(cfg: &RunConfig) -> Result<Superpotential, CliError> {
    let grid = cfg.grid();
    Ok(match &cfg.source {
        Source::Kink => presets::kink(grid)?,
        Source::PtEll { ell } => presets::ell_tanh(*ell, grid)?,
        Source::Expression { text } => {
            let ast = parse(text).map_err(|e| CliError::Config(e.to_string()))?;
            Superpotential::from_expr(&ast, grid)?
        }
    })
}

fn floats(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| json_float(x)).collect())
}

fn limit_json(limit: IndexLimit) -> Value {
    match limit {
        IndexLimit::Value(v) => json!(v),
        IndexLimit::Indeterminate => json!("indeterminate"),
    }
}

fn sector_name(z: &ZeroMode) -> &'static str {
    match z {
        ZeroMode::Minus(_) => "minus",
        ZeroMode::Plus(_) => "plus",
        ZeroMode::Absent => "absent",
        ZeroMode::Indeterminate => "indeterminate",
    }
}

fn x_values(f: &SampledFunction) -> Vec<f64> {
    f.grid().points().collect()
}

pub fn partners(cfg: &RunConfig) -> Outcome {
    let sp = superpotential(cfg)?;
    let pair = partner_potentials(&sp);
    let mut out = OutputDir::create(&cfg.out)?;
    let x = x_values(sp.f());
    out.columns(
        "partners.csv",
        &["x", "f", "v_minus", "v_plus"],
        &[
            &x,
            sp.f().values(),
            pair.v_minus.values(),
            pair.v_plus.values(),
        ],
    )?;
    let zm = zero_mode(&sp);
    let note = match zm.mode() {
        Some(mode) => {
            out.columns("zero_mode.csv", &["x", "psi0"], &[&x, mode.values()])?;
            Value::Null
        }
        None if matches!(zm, ZeroMode::Indeterminate) => {
            json!("an asymptote vanishes; zero-mode existence is indeterminate")
        }
        None => json!("no normalizable zero mode"),
    };
    let peak = zm.mode().map_or(Value::Null, |m| json_float(m.max_abs()));
    out.finish(
        "partners",
        cfg,
        json!({
            "f_minus": json_float(sp.f_minus()),
            "f_plus": json_float(sp.f_plus()),
            "continuum_edge": json_float(sp.continuum_edge()),
            "zero_mode": { "sector": sector_name(&zm), "peak": peak },
            "note": note,
        }),
    )
}

struct FamilyRun {
    member: IsospectralMember,
    levels: Spectrum,
}

fn family_member(
    sp: &Superpotential,
    psi0: &SampledFunction,
    lambda: f64,
    levels: usize,
) -> Result<FamilyRun, dirac_susy::Error> {
    let member = deformed_potential(sp, psi0, FamilyParameter::new(lambda)?)?;
    let levels = member_spectrum(&member, sp, levels)?;
    Ok(FamilyRun { member, levels })
}

fn minus_zero_mode(sp: &Superpotential) -> Result<SampledFunction, CliError> {
    match zero_mode(sp) {
        ZeroMode::Minus(m) => Ok(m),
        _ => Err(dirac_susy::Error::NoZeroMode.into()),
    }
}

pub fn family(cfg: &RunConfig) -> Outcome {
    if cfg.lambdas.is_empty() {
        return Err(CliError::Config("lambda list is empty".into()));
    }
    let sp = superpotential(cfg)?;
    let psi0 = minus_zero_mode(&sp)?;
    let pair = partner_potentials(&sp);
    let reference = partner_spectrum(&pair.v_minus, &sp, cfg.levels)?.bound_eigenvalues();
    let runs: Vec<_> = cfg
        .lambdas
        .par_iter()
        .map(|&l| family_member(&sp, &psi0, l, cfg.levels))
        .collect();

    let mut out = OutputDir::create(&cfg.out)?;
    let x = x_values(sp.f());
    let mut members = Vec::with_capacity(runs.len());
    let mut failed = 0;
    for (&lambda, run) in cfg.lambdas.iter().zip(runs) {
        match run {
            Ok(FamilyRun { member, levels }) => {
                let name = format!("family_{}.csv", lambda_label(lambda));
                out.columns(
                    &name,
                    &["x", "F", "v_tilde", "psi0_tilde"],
                    &[
                        &x,
                        member.big_f.values(),
                        member.v_tilde.values(),
                        member.psi0_tilde.values(),
                    ],
                )?;
                let bound = levels.bound_eigenvalues();
                let spectrum_gap = if bound.len() == reference.len() {
                    json_float(
                        bound
                            .iter()
                            .zip(&reference)
                            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs())),
                    )
                } else {
                    Value::Null
                };
                let norm = integrate(&member.psi0_tilde.map(|v| v * v)?);
                members.push(json!({
                    "lambda": lambda,
                    "status": "ok",
                    "file": name,
                    "riccati_residual": json_float(riccati_residual(&member.big_f, &pair.v_plus)?),
                    "expression_gap": json_float(member.expression_gap),
                    "psi0_tilde_norm_error": json_float((norm - 1.0).abs()),
                    "annihilation_residual": json_float(annihilation_check(&member.big_f, &member.psi0_tilde)?),
                    "max_abs_v_tilde_minus_v_minus": json_float(member.v_tilde.sup_distance(&pair.v_minus)?),
                    "bound_spectrum": floats(&bound),
                    "spectrum_gap": spectrum_gap,
                }));
            }
            Err(e) => {
                failed += 1;
                eprintln!("lambda = {lambda}: {e}");
                members
                    .push(json!({ "lambda": lambda, "status": "failed", "error": e.to_string() }));
            }
        }
    }
    let total = cfg.lambdas.len();
    let files = out.finish(
        "family",
        cfg,
        json!({ "reference_bound_spectrum": floats(&reference), "members": members }),
    )?;
    if failed > 0 {
        return Err(CliError::Partial { failed, total });
    }
    Ok(files)
}

fn write_system(
    out: &mut OutputDir,
    label: &str,
    spectrum: &DiracSpectrum,
    rows: &mut Vec<Vec<String>>,
    lambda: Option<f64>,
) -> Result<Value, CliError> {
    for (j, level) in spectrum.levels.iter().enumerate() {
        let name = format!("dirac_{label}_level{j}.csv");
        let x = x_values(&level.upper);
        out.columns(
            &name,
            &["x", "upper", "lower"],
            &[&x, level.upper.values(), level.lower.values()],
        )?;
        rows.push(vec![
            label.to_string(),
            lambda.map(float).unwrap_or_default(),
            j.to_string(),
            float(level.omega),
            name,
        ]);
    }
    Ok(json!({
        "system": label,
        "lambda": lambda,
        "omegas": floats(&spectrum.omegas()),
        "zero_mode": sector_name(&spectrum.zero_mode),
    }))
}

pub fn dirac(cfg: &RunConfig) -> Outcome {
    let sp = superpotential(cfg)?;
    let base = dirac_spectrum(&sp, cfg.levels)?;
    let psi0 = zero_mode(&sp).minus().cloned();
    let deformed: Vec<_> = match &psi0 {
        Some(psi0) => cfg
            .lambdas
            .par_iter()
            .map(|&l| {
                let member = deformed_potential(&sp, psi0, FamilyParameter::new(l)?)?;
                deformed_dirac_solutions(&member, &sp, cfg.levels)
            })
            .collect(),
        None => Vec::new(),
    };

    let mut out = OutputDir::create(&cfg.out)?;
    let mut rows = Vec::new();
    let mut systems = vec![write_system(&mut out, "base", &base, &mut rows, None)?];
    let mut failed = 0;
    let base_omegas = base.omegas();
    let mut max_gap: f64 = 0.0;
    for (&lambda, result) in cfg.lambdas.iter().zip(deformed) {
        match result {
            Ok(d) => {
                let omegas = d.spectrum.omegas();
                if omegas.len() == base_omegas.len() {
                    max_gap = omegas
                        .iter()
                        .zip(&base_omegas)
                        .fold(max_gap, |m, (a, b)| m.max((a - b).abs()));
                } else {
                    max_gap = f64::INFINITY;
                }
                let label = format!("lambda_{}", lambda_label(lambda));
                systems.push(write_system(
                    &mut out,
                    &label,
                    &d.spectrum,
                    &mut rows,
                    Some(lambda),
                )?);
            }
            Err(e) => {
                failed += 1;
                eprintln!("lambda = {lambda}: {e}");
                systems
                    .push(json!({ "lambda": lambda, "status": "failed", "error": e.to_string() }));
            }
        }
    }
    out.csv(
        "dirac.csv",
        &["system", "lambda", "level", "omega", "components"],
        &rows,
    )?;
    let note = if psi0.is_none() && !cfg.lambdas.is_empty() {
        json!("no H- zero mode; the lambda family is not defined and was skipped")
    } else {
        Value::Null
    };
    let files = out.finish(
        "dirac",
        cfg,
        json!({
            "systems": systems,
            "max_omega_shift_across_lambda": json_float(max_gap),
            "continuum_edge": json_float(base.continuum_edge),
            "note": note,
        }),
    )?;
    if failed > 0 {
        return Err(CliError::Partial {
            failed,
            total: cfg.lambdas.len(),
        });
    }
    Ok(files)
}

pub fn index(cfg: &RunConfig) -> Outcome {
    let sp = superpotential(cfg)?;
    let (fp, fm) = (sp.f_plus(), sp.f_minus());
    let spectra = PartnerSpectra::solve(&sp, cfg.levels);
    let numeric_note = spectra.as_ref().err().map(|e| e.to_string());
    let mut rows = Vec::with_capacity(cfg.betas.len());
    let mut contaminated = Vec::new();
    for &beta in &cfg.betas {
        let numeric = spectra.as_ref().ok().map(|s| s.index(beta));
        if numeric.is_some_and(|n| n.continuum_contaminated) {
            contaminated.push(beta);
        }
        rows.push(vec![
            float(beta),
            float(index_analytic(fp, fm, beta)),
            numeric.map(|n| float(n.value)).unwrap_or_default(),
            float(index_ode_rhs(fp, fm, beta)),
        ]);
    }
    let mut out = OutputDir::create(&cfg.out)?;
    out.csv(
        "index.csv",
        &["beta", "delta_analytic", "delta_numeric", "rhs"],
        &rows,
    )?;
    out.finish(
        "index",
        cfg,
        json!({
            "f_minus": json_float(fm),
            "f_plus": json_float(fp),
            "limit": limit_json(index_limit(&sp)),
            "continuum_contaminated_betas": floats(&contaminated),
            "numeric_error": numeric_note,
        }),
    )
}

fn ladder_rows(
    partner: &str,
    analytic: &[f64],
    from_pt: &[f64],
    numeric: &[f64],
    rows: &mut Vec<Vec<String>>,
) -> f64 {
    let mut worst: f64 = 0.0;
    for (j, &e) in analytic.iter().enumerate() {
        let num = numeric.get(j).copied();
        if let Some(v) = num {
            worst = worst.max((v - e).abs());
        } else {
            worst = f64::INFINITY;
        }
        rows.push(vec![
            partner.to_string(),
            j.to_string(),
            float(e),
            from_pt.get(j).map(|&v| float(v)).unwrap_or_default(),
            num.map(float).unwrap_or_default(),
        ]);
    }
    worst
}

pub fn pt(cfg: &RunConfig) -> Outcome {
    let ell = match cfg.source {
        Source::Kink => 2,
        Source::PtEll { ell } => ell,
        Source::Expression { .. } => {
            return Err(CliError::Config(
                "the pt command needs the kink or pt preset".into(),
            ))
        }
    };
    let sp = presets::ell_tanh(ell, cfg.grid())?;
    let pair = partner_potentials(&sp);
    let k = cfg.levels.max(ell as usize + 2).min(cfg.grid().len() - 3);
    let minus = partner_spectrum(&pair.v_minus, &sp, k)?.bound_eigenvalues();
    let plus = partner_spectrum(&pair.v_plus, &sp, k)?.bound_eigenvalues();
    let ladder = ladder_spectra(ell);

    let mapped = |(c, s): (f64, f64)| -> Result<Vec<f64>, CliError> {
        let p = params_from_cs(c, s)?;
        Ok(pt_bound_energies(p.k1, p.k2)
            .into_iter()
            .map(|e| pt_to_partner_energy(e, ell))
            .collect())
    };
    let from_pt_minus = mapped(ell_minus_strengths(ell))?;
    let from_pt_plus = mapped(ell_plus_strengths(ell))?;

    let mut rows = Vec::new();
    let err_minus = ladder_rows("minus", &ladder.e_minus, &from_pt_minus, &minus, &mut rows);
    let err_plus = ladder_rows("plus", &ladder.e_plus, &from_pt_plus, &plus, &mut rows);

    let regimes: Vec<Vec<String>> = cfg
        .s_values
        .iter()
        .map(|&s| {
            let r = singularity_regime(s);
            vec![
                float(s),
                r.regime.name().to_string(),
                r.on_boundary.to_string(),
            ]
        })
        .collect();

    let mut out = OutputDir::create(&cfg.out)?;
    out.csv(
        "pt.csv",
        &["partner", "j", "analytic", "from_pt", "numeric"],
        &rows,
    )?;
    out.csv("regimes.csv", &["s", "regime", "on_boundary"], &regimes)?;
    let (c, s) = ell_minus_strengths(ell);
    let p = params_from_cs(c, s)?;
    out.finish(
        "pt",
        cfg,
        json!({
            "ell": ell,
            "continuum_edge": ladder.continuum_edge,
            "strengths_minus": { "c": c, "s": s, "k1": p.k1, "k2": p.k2 },
            "e_minus": floats(&ladder.e_minus),
            "e_plus": floats(&ladder.e_plus),
            "numeric_minus": floats(&minus),
            "numeric_plus": floats(&plus),
            "max_abs_error_minus": json_float(err_minus),
            "max_abs_error_plus": json_float(err_plus),
        }),
    )
}
