//! Table assembly for the spectrum, compare, and bands commands.

use waveop::deep::{
    band_spectrum_in_dim, rotational_band_report, BandSpectrum, DeepPotentialModel,
};
use waveop::oracle::diagonalize_symmetric;
use waveop::{eigenvalue_residual, EnergyExpansion, WaveOperator};

use crate::config::RunConfig;
use crate::output::{Report, Table, Value};

fn model_for(cfg: &RunConfig, l: u32) -> Result<DeepPotentialModel, waveop::Error> {
    DeepPotentialModel::new(cfg.v0, cfg.alpha, cfg.beta, cfg.mu, cfg.hbar, l)
}

/// Band-spectrum coefficient table: one row per reported state.
pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Report, waveop::Error> {
    let model = model_for(cfg, cfg.l)?;
    let band = band_spectrum_in_dim(&model, cfg.n_states, cfg.dim)?;
    let delta = model.delta();
    let c2 = model.casimir();
    let mut table = Table {
        columns: vec![
            "l",
            "n_r",
            "m",
            "C2",
            "E0_coeff",
            "E1_coeff",
            "E2_coeff",
            "E3_coeff",
            "E_over_V0_at_delta",
        ],
        rows: Vec::new(),
    };
    for (n_r, entry) in band.entries().iter().enumerate() {
        table.rows.push(vec![
            Value::Int(cfg.l as i64),
            Value::Int(n_r as i64),
            Value::Float(entry.m),
            Value::Float(c2),
            Value::Float(entry.e0),
            Value::Float(entry.e1_coeff),
            Value::Float(entry.e2_coeff),
            Value::Float(entry.e3_coeff),
            Value::Float(band.energy_over_v0(n_r, delta)),
        ]);
    }
    Ok(Report {
        config: cfg.clone(),
        table,
        checks: Vec::new(),
    })
}

/// Exact-diagonalization comparison: cumulative perturbation orders, their
/// error, and the wave-operator eigenpair residual, one row per state.
pub fn cmd_compare(cfg: &RunConfig) -> Result<Report, waveop::Error> {
    let model = model_for(cfg, cfg.l)?;
    let problem = waveop::deep::assemble_problem(&model, cfg.dim)?;
    let expansion = EnergyExpansion::build(&problem)?;
    let wave = WaveOperator::build(&problem)?;
    let exact = diagonalize_symmetric(&problem.full_hamiltonian())?;

    let mut table = Table {
        columns: vec![
            "state",
            "E_exact",
            "E_order1",
            "E_order2",
            "E_order3",
            "abs_err_order3",
            "residual_norm",
        ],
        rows: Vec::new(),
    };
    for n in 0..cfg.n_states {
        let e0 = expansion.eps0().value(n);
        let order1 = e0 + expansion.eps1()[n];
        let order2 = order1 + expansion.eps2()[n];
        let order3 = order2 + expansion.eps3()[n];
        let exact_e = exact.values()[n];
        table.rows.push(vec![
            Value::Int(n as i64),
            Value::Float(exact_e),
            Value::Float(order1),
            Value::Float(order2),
            Value::Float(order3),
            Value::Float((exact_e - order3).abs()),
            Value::Float(eigenvalue_residual(&problem, &wave, &expansion, n)),
        ]);
    }
    Ok(Report {
        config: cfg.clone(),
        table,
        checks: Vec::new(),
    })
}

/// Rotational-band report over the angular-momentum range `l ..= l_max`.
pub fn cmd_bands(cfg: &RunConfig) -> Result<Report, waveop::Error> {
    let l_max = cfg.l_max.expect("validated by config resolution");
    let spectra: Vec<BandSpectrum> = (cfg.l..=l_max)
        .map(|l| {
            let model = model_for(cfg, l)?;
            band_spectrum_in_dim(&model, cfg.n_states, cfg.dim)
        })
        .collect::<Result<_, _>>()?;
    let report = rotational_band_report(&spectra)?;

    let mut table = Table {
        columns: vec!["n_r", "c2_slope", "m2_slope", "residual"],
        rows: Vec::new(),
    };
    for band in &report.bands {
        table.rows.push(vec![
            Value::Int(band.n_r as i64),
            Value::Float(band.c2_slope),
            Value::Float(band.m2_slope),
            Value::Float(band.residual),
        ]);
    }
    Ok(Report {
        config: cfg.clone(),
        table,
        checks: Vec::new(),
    })
}
