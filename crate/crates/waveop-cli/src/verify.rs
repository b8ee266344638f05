//! The cross-module verification suite behind `waveop verify`.
//!
//! Every invariant the crate promises is measured here and compared against
//! its tolerance: residual-style checks pass below an upper bound,
//! convergence-order checks pass above a lower bound. All randomized
//! ensembles are driven by the run seed, so a given seed produces
//! byte-identical reports.

use waveop::deep::{
    assemble_problem, band_spectrum, e2_coeff_closed_form, e3_coeff_closed_form,
    rotational_band_report, BandSpectrum, DeepPotentialModel,
};
use waveop::oracle::{
    diagonalize_symmetric, fit_series_coefficients, log_log_slope, sum_over_states_corrections,
};
use waveop::random::{random_problem, random_symmetric, SplitMix64};
use waveop::su11::{
    build_a_operators, build_f_analytic, build_ladders, casimir_matrix, casimir_value, Su11Basis,
};
use waveop::{
    apply_wave_operator, build_f_operator, commutator, eigenvalue_residual, split_diagonal,
    EnergyExpansion, Error, OperatorMatrix, PerturbationProblem, Spectrum, WaveOperator,
};

use crate::config::RunConfig;
use crate::output::{fmt_float, CheckResult, Report, Table};

const LAMBDAS: [f64; 4] = [1e-3, 3e-3, 1e-2, 3e-2];
const K_VALUES: [f64; 4] = [0.75, 1.25, 1.75, 2.3];
const D: usize = 40;

fn with_lambda(p: &PerturbationProblem, lambda: f64) -> PerturbationProblem {
    PerturbationProblem::new(p.h0().clone(), p.h().clone(), lambda).unwrap()
}

fn rel_to_unit(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn interior_rel_deviation(a: &OperatorMatrix, b: &OperatorMatrix, basis: &Su11Basis) -> f64 {
    let scale = a.max_norm().max(b.max_norm()).max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for i in basis.interior() {
        for j in basis.interior() {
            worst = worst.max((a.get(i, j) - b.get(i, j)).abs());
        }
    }
    worst / scale
}

fn model_from_delta(delta: f64, beta_over_alpha2: f64, l: u32) -> DeepPotentialModel {
    let alpha = delta * delta;
    DeepPotentialModel::new(1.0, alpha, beta_over_alpha2 * alpha * alpha, 1.0, 1.0, l).unwrap()
}

fn commutator_condition(seed: u64) -> CheckResult {
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let dim = rng.uniform_usize(4, 11);
        let p = random_problem(&mut rng, dim, 0.5, 0.01);
        let f = build_f_operator(&p).unwrap();
        let (_, h_nd) = split_diagonal(p.h());
        let defect = commutator(&f, &p.h0().to_diagonal_matrix())
            .unwrap()
            .sub(&h_nd);
        worst = worst.max(defect.max_norm() / p.h().max_norm());
    }
    CheckResult::upper("f-commutator-condition", worst, 1e-12)
}

fn f_antisymmetry(seed: u64) -> CheckResult {
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let dim = rng.uniform_usize(4, 11);
        let p = random_problem(&mut rng, dim, 0.5, 0.01);
        let f = build_f_operator(&p).unwrap();
        worst = worst.max(f.add(&f.transpose()).max_norm());
    }
    CheckResult::upper("f-antisymmetry", worst, 1e-14)
}

fn sum_over_states_equivalence(seed: u64) -> Vec<CheckResult> {
    let mut rng = SplitMix64::new(seed);
    let mut worst = [0.0f64; 3];
    for _ in 0..100 {
        let dim = rng.uniform_usize(4, 11);
        let p = random_problem(&mut rng, dim, 0.5, 0.01);
        let f = build_f_operator(&p).unwrap();
        let ours = [
            waveop::first_order_corrections(&p),
            waveop::second_order_corrections(&p, &f),
            waveop::third_order_corrections(&p, &f),
        ];
        let (o1, o2, o3) = sum_over_states_corrections(&p).unwrap();
        for n in 0..dim {
            worst[0] = worst[0].max(rel_to_unit(ours[0][n], o1[n]));
            worst[1] = worst[1].max(rel_to_unit(ours[1][n], o2[n]));
            worst[2] = worst[2].max(rel_to_unit(ours[2][n], o3[n]));
        }
    }
    vec![
        CheckResult::upper("sum-over-states-eps1", worst[0], 1e-12),
        CheckResult::upper("sum-over-states-eps2", worst[1], 1e-10),
        CheckResult::upper("sum-over-states-eps3", worst[2], 1e-9),
    ]
}

fn series_fit_consistency(seed: u64) -> CheckResult {
    // eight geometric magnitudes sampled at both signs: the even/odd split
    // keeps the high-order tail out of the lambda^1..3 coefficients for
    // every instance, not just the mild ones
    let ratio = (3e-2f64 / 1e-3).powf(1.0 / 7.0);
    let mut grid: Vec<f64> = (0..8).map(|i| 1e-3 * ratio.powi(i)).collect();
    let mirrored: Vec<f64> = grid.iter().map(|x| -x).collect();
    grid.extend(mirrored);
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let dim = rng.uniform_usize(4, 11);
        let base = random_problem(&mut rng, dim, 0.5, 0.0);
        let n = rng.uniform_usize(0, dim);
        let e = EnergyExpansion::build(&base).unwrap();
        let samples: Vec<(f64, f64)> = grid
            .iter()
            .map(|&lambda| {
                let p = with_lambda(&base, lambda);
                let exact = diagonalize_symmetric(&p.full_hamiltonian()).unwrap();
                (lambda, exact.values()[n] - e.eps0().value(n))
            })
            .collect();
        let coeffs = fit_series_coefficients(&samples, 7).unwrap();
        for (order, target) in [e.eps1()[n], e.eps2()[n], e.eps3()[n]].iter().enumerate() {
            worst = worst.max(rel_to_unit(coeffs[order + 1], *target));
        }
    }
    CheckResult::upper("series-fit-coefficients", worst, 1e-5)
}

fn sign_align(reference: &[f64], candidate: &mut [f64]) {
    let i0 = reference
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    if reference[i0] * candidate[i0] < 0.0 {
        for x in candidate.iter_mut() {
            *x = -*x;
        }
    }
}

fn scaling_orders(seed: u64) -> Vec<CheckResult> {
    // worst error over all states at each lambda; a single state can show a
    // freak cancellation between consecutive orders at the top of the sweep,
    // but the state-wise maximum keeps the leading power visible
    let mut rng = SplitMix64::new(seed);
    let mut min_residual_slope = f64::INFINITY;
    let mut min_energy_slope = f64::INFINITY;
    let mut min_state_slope = f64::INFINITY;
    for _ in 0..20 {
        let dim = rng.uniform_usize(4, 11);
        let base = random_problem(&mut rng, dim, 0.5, 0.0);
        let w = WaveOperator::build(&base).unwrap();
        let e = EnergyExpansion::build(&base).unwrap();
        let mut residual_pts = Vec::new();
        let mut energy_pts = Vec::new();
        let mut state_pts = Vec::new();
        for &lambda in &LAMBDAS {
            let p = with_lambda(&base, lambda);
            let exact = diagonalize_symmetric(&p.full_hamiltonian()).unwrap();
            let mut worst_residual = 0.0f64;
            let mut worst_energy = 0.0f64;
            let mut worst_state = 0.0f64;
            for n in 0..dim {
                worst_residual = worst_residual.max(eigenvalue_residual(&p, &w, &e, n));
                worst_energy = worst_energy.max((exact.values()[n] - e.evaluate(n, lambda)).abs());
                let mut psi = apply_wave_operator(&w, lambda, n);
                let norm = psi.iter().map(|x| x * x).sum::<f64>().sqrt();
                for x in psi.iter_mut() {
                    *x /= norm;
                }
                let mut reference = exact.vector(n);
                sign_align(&psi, &mut reference);
                let err = psi
                    .iter()
                    .zip(&reference)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                worst_state = worst_state.max(err);
            }
            residual_pts.push((lambda, worst_residual));
            energy_pts.push((lambda, worst_energy));
            state_pts.push((lambda, worst_state));
        }
        min_residual_slope = min_residual_slope.min(log_log_slope(&residual_pts));
        min_energy_slope = min_energy_slope.min(log_log_slope(&energy_pts));
        min_state_slope = min_state_slope.min(log_log_slope(&state_pts));
    }
    vec![
        CheckResult::lower("wave-residual-order", min_residual_slope, 2.7),
        CheckResult::lower("energy-convergence-order", min_energy_slope, 3.5),
        CheckResult::lower("state-accuracy-order", min_state_slope, 2.7),
    ]
}

fn lambda_zero_identity(seed: u64) -> CheckResult {
    let mut rng = SplitMix64::new(seed);
    let p = random_problem(&mut rng, 8, 0.5, 0.0);
    let w = WaveOperator::build(&p).unwrap();
    let mut worst = 0.0f64;
    for n in 0..8 {
        let psi = apply_wave_operator(&w, 0.0, n);
        for (i, x) in psi.iter().enumerate() {
            let expected = if i == n { 1.0 } else { 0.0 };
            worst = worst.max((x - expected).abs());
        }
    }
    CheckResult::upper("lambda-zero-identity", worst, 0.0)
}

fn su11_identity_checks() -> Vec<CheckResult> {
    let mut worst_commutators = 0.0f64;
    let mut worst_casimir = 0.0f64;
    let mut worst_central = 0.0f64;
    let mut worst_composite = 0.0f64;
    let mut worst_expansion = 0.0f64;
    for &k in &K_VALUES {
        let basis = Su11Basis::new(k, D).unwrap();
        let lm = build_ladders(&basis);
        let zero = OperatorMatrix::zeros(D);

        let pairs = [
            (commutator(lm.k0(), lm.kplus()).unwrap(), lm.kplus().clone()),
            (
                commutator(lm.k0(), lm.kminus()).unwrap(),
                lm.kminus().scaled(-1.0),
            ),
            (
                commutator(lm.kplus(), lm.kminus()).unwrap(),
                lm.k0().scaled(-2.0),
            ),
        ];
        for (lhs, rhs) in &pairs {
            worst_commutators = worst_commutators.max(interior_rel_deviation(lhs, rhs, &basis));
        }

        let c2 = casimir_matrix(&lm);
        let expected = OperatorMatrix::identity(D).scaled(casimir_value(&basis));
        worst_casimir = worst_casimir.max(interior_rel_deviation(&c2, &expected, &basis));
        for gen in [lm.k0(), lm.kplus(), lm.kminus()] {
            let comm = commutator(&c2, gen).unwrap();
            worst_central = worst_central.max(interior_rel_deviation(&comm, &zero, &basis));
        }

        let (aplus, aminus) = build_a_operators(&lm);
        let k0 = lm.k0();
        let k0cubed = k0.matmul(k0).matmul(k0);
        let cv = casimir_value(&basis);
        let lhs = commutator(&aplus, &aminus).unwrap();
        let rhs = k0cubed.scaled(-16.0).add(&k0.scaled(8.0 * cv - 2.0));
        worst_composite = worst_composite.max(interior_rel_deviation(&lhs, &rhs, &basis));
        let kp2 = lm.kplus().matmul(lm.kplus());
        let km2 = lm.kminus().matmul(lm.kminus());
        let lhs2 = commutator(&kp2, &km2).unwrap();
        let rhs2 = k0cubed.scaled(-8.0).add(&k0.scaled(8.0 * cv - 4.0));
        worst_composite = worst_composite.max(interior_rel_deviation(&lhs2, &rhs2, &basis));

        let shape = lm.kplus().add(lm.kminus()).add(&k0.scaled(2.0));
        let squared = shape.matmul(&shape);
        let expanded = k0
            .matmul(k0)
            .scaled(6.0)
            .sub(&OperatorMatrix::identity(D).scaled(2.0 * cv))
            .add(&aplus.scaled(2.0))
            .add(&aminus.scaled(2.0))
            .add(&kp2)
            .add(&km2);
        worst_expansion = worst_expansion.max(interior_rel_deviation(&squared, &expanded, &basis));
    }
    vec![
        CheckResult::upper("su11-commutators", worst_commutators, 1e-11),
        CheckResult::upper("su11-casimir-value", worst_casimir, 1e-11),
        CheckResult::upper("su11-casimir-centrality", worst_central, 1e-11),
        CheckResult::upper("su11-composite-commutators", worst_composite, 1e-11),
        CheckResult::upper("su11-expansion-equivalence", worst_expansion, 1e-11),
    ]
}

fn f_analytic_equivalence() -> CheckResult {
    let mut worst = 0.0f64;
    for l in 0..3u32 {
        let model = DeepPotentialModel::new(1.0, 1.0, 0.1, 1.0, 1.0, l).unwrap();
        let basis = Su11Basis::from_angular_momentum(l, D).unwrap();
        let lm = build_ladders(&basis);
        let analytic = build_f_analytic(&lm, &model).unwrap();
        let problem = assemble_problem(&model, D).unwrap();
        let generic = build_f_operator(&problem).unwrap();
        worst = worst.max(interior_rel_deviation(&analytic, &generic, &basis));
    }
    CheckResult::upper("f-analytic-equivalence", worst, 1e-10)
}

fn coefficient_closed_forms() -> Vec<CheckResult> {
    let mut worst_e2 = 0.0f64;
    let mut worst_e3 = 0.0f64;
    for l in 0..3u32 {
        let model = model_from_delta(0.02, 0.1, l);
        let band = band_spectrum(&model, 6).unwrap();
        for entry in band.entries() {
            let closed2 = e2_coeff_closed_form(&model, entry.m);
            let closed3 = e3_coeff_closed_form(&model, entry.m);
            worst_e2 = worst_e2.max((entry.e2_coeff - closed2).abs() / closed2.abs());
            worst_e3 = worst_e3.max((entry.e3_coeff - closed3).abs() / closed3.abs());
        }
    }
    vec![
        CheckResult::upper("deep-e2-closed-form", worst_e2, 1e-8),
        CheckResult::upper("deep-e3-closed-form", worst_e3, 1e-8),
    ]
}

fn deep_convergence_order() -> CheckResult {
    let mut pts = Vec::new();
    for &delta in &[0.01, 0.02, 0.03, 0.05] {
        let model = model_from_delta(delta, 0.1, 0);
        let problem = assemble_problem(&model, D).unwrap();
        let expansion = EnergyExpansion::build(&problem).unwrap();
        let exact = diagonalize_symmetric(&problem.full_hamiltonian()).unwrap();
        let worst = (0..6)
            .map(|n| {
                let order3 = expansion.eps0().value(n)
                    + expansion.eps1()[n]
                    + expansion.eps2()[n]
                    + expansion.eps3()[n];
                (exact.values()[n] - order3).abs() / model.v0()
            })
            .fold(0.0, f64::max);
        pts.push((delta, worst));
    }
    CheckResult::lower("deep-convergence-order", log_log_slope(&pts), 3.5)
}

fn delta_scaling_collapse() -> CheckResult {
    let a = DeepPotentialModel::new(1.0, 4e-4, 0.1 * 16e-8, 1.0, 1.0, 1).unwrap();
    let (v0_b, alpha_b, mu_b) = (4.0f64, 2e-3f64, 3.0f64);
    let hbar_b = a.delta() / (alpha_b / (mu_b * v0_b)).sqrt();
    let b =
        DeepPotentialModel::new(v0_b, alpha_b, 0.1 * alpha_b * alpha_b, mu_b, hbar_b, 1).unwrap();
    let band_a = band_spectrum(&a, 6).unwrap();
    let band_b = band_spectrum(&b, 6).unwrap();
    let delta = a.delta();
    let mut worst = 0.0f64;
    for i in 0..6 {
        worst =
            worst.max((band_a.energy_over_v0(i, delta) - band_b.energy_over_v0(i, delta)).abs());
    }
    CheckResult::upper("delta-scaling-collapse", worst, 1e-12)
}

fn band_regression() -> CheckResult {
    let beta_over_alpha2 = 0.1;
    let spectra: Vec<BandSpectrum> = (0..3u32)
        .map(|l| band_spectrum(&model_from_delta(0.02, beta_over_alpha2, l), 6).unwrap())
        .collect();
    let report = rotational_band_report(&spectra).unwrap();
    let mut worst = 0.0f64;
    for band in &report.bands {
        worst = worst.max((band.c2_slope - beta_over_alpha2).abs());
        worst = worst.max(band.residual);
    }
    CheckResult::upper("band-regression", worst, 1e-10)
}

fn eigensolver_checks(seed: u64) -> Vec<CheckResult> {
    let mut rng = SplitMix64::new(seed);
    let mut worst_reconstruction = 0.0f64;
    let mut worst_orthonormality = 0.0f64;
    for &dim in &[2usize, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64] {
        let a = random_symmetric(&mut rng, dim);
        let e = diagonalize_symmetric(&a).unwrap();
        let v = e.vectors();
        let rebuilt = v
            .matmul(&OperatorMatrix::from_diagonal(e.values()))
            .matmul(&v.transpose());
        worst_reconstruction = worst_reconstruction.max(rebuilt.sub(&a).max_norm() / a.max_norm());
        let gram = v.transpose().matmul(v);
        worst_orthonormality =
            worst_orthonormality.max(gram.sub(&OperatorMatrix::identity(dim)).max_norm());
    }
    vec![
        CheckResult::upper("eigensolver-reconstruction", worst_reconstruction, 1e-10),
        CheckResult::upper("eigensolver-orthonormality", worst_orthonormality, 1e-10),
    ]
}

fn float_round_trip() -> CheckResult {
    // the serialization contract: 17 significant digits reproduce every
    // double bit-for-bit
    let model = model_from_delta(0.02, 0.1, 0);
    let band = band_spectrum(&model, 6).unwrap();
    let mut mismatches = 0usize;
    for (i, entry) in band.entries().iter().enumerate() {
        for x in [
            entry.m,
            entry.e1_coeff,
            entry.e2_coeff,
            entry.e3_coeff,
            band.energy_over_v0(i, model.delta()),
        ] {
            let parsed: f64 = fmt_float(x).parse().unwrap();
            if parsed.to_bits() != x.to_bits() {
                mismatches += 1;
            }
        }
    }
    CheckResult::upper("float-round-trip", mismatches as f64, 0.0)
}

fn degenerate_detection() -> CheckResult {
    let h0 = Spectrum::new(vec![0.0, 1.0, 1.0, 2.0]).unwrap();
    let h = OperatorMatrix::zeros(4).into_symmetric().unwrap();
    let p = PerturbationProblem::new(h0, h, 0.1).unwrap();
    match build_f_operator(&p) {
        Err(Error::DegenerateSpectrum { i, j, gap }) => {
            CheckResult::lower("degenerate-detection", 1.0, 1.0).with_detail(format!(
                "surfaced degenerate pair ({}, {}) with gap {:e}",
                i, j, gap
            ))
        }
        _ => CheckResult::lower("degenerate-detection", 0.0, 1.0)
            .with_detail("degenerate spectrum was not rejected"),
    }
}

fn injected_degenerate(seed: u64) -> CheckResult {
    // deliberately push a degenerate spectrum through the full pipeline and
    // report the surfaced error; this check is meant to fail visibly
    let mut rng = SplitMix64::new(seed);
    let h = random_symmetric(&mut rng, 4);
    let h0 = Spectrum::new(vec![0.0, 0.5, 0.5, 1.5]).unwrap();
    let p = PerturbationProblem::new(h0, h, 0.01).unwrap();
    match EnergyExpansion::build(&p) {
        Err(e) => {
            CheckResult::lower("injected-degenerate-spectrum", 0.0, 1.0).with_detail(e.to_string())
        }
        Ok(_) => CheckResult::lower("injected-degenerate-spectrum", 0.0, 1.0)
            .with_detail("injection failed to trigger an error"),
    }
}

/// Run the whole suite and package it as a report.
pub fn cmd_verify(cfg: &RunConfig) -> Report {
    let seed = cfg.seed;
    let mut checks = Vec::new();
    checks.push(commutator_condition(seed));
    checks.push(f_antisymmetry(seed.wrapping_add(1)));
    checks.extend(sum_over_states_equivalence(seed.wrapping_add(2)));
    checks.push(series_fit_consistency(seed.wrapping_add(3)));
    checks.extend(scaling_orders(seed.wrapping_add(4)));
    checks.push(lambda_zero_identity(seed.wrapping_add(5)));
    checks.extend(su11_identity_checks());
    checks.push(f_analytic_equivalence());
    checks.extend(coefficient_closed_forms());
    checks.push(deep_convergence_order());
    checks.push(delta_scaling_collapse());
    checks.push(band_regression());
    checks.extend(eigensolver_checks(seed.wrapping_add(6)));
    checks.push(float_round_trip());
    checks.push(degenerate_detection());
    if cfg.inject_degenerate {
        checks.push(injected_degenerate(seed.wrapping_add(7)));
    }
    Report {
        config: cfg.clone(),
        table: Table::default(),
        checks,
    }
}
