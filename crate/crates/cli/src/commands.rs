use diraccomb::bands::{band_structure, theta_grid};
use diraccomb::energy::{comb_energy, plate_energy_theta, small_w0_ratio};
use diraccomb::verify::{run_all, VerifyConfig};
use diraccomb::{CombParams, DeltaPrimeComb, EnergyResult};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{grid, Command, CouplingArgs, OutputArgs, QuadArgs, ThetaArgs};
use crate::error::CliError;
use crate::output::Report;

#[derive(Debug, Serialize)]
struct EnergyRow {
    a: f64,
    omega: f64,
    gamma: f64,
    energy: f64,
    abs_err: f64,
    truncation_k: f64,
    tail_bound: f64,
    evaluations: usize,
}

impl EnergyRow {
    fn new(p: &CombParams, e: &EnergyResult) -> Self {
        Self {
            a: p.a,
            omega: p.omega,
            gamma: p.gamma,
            energy: e.value,
            abs_err: e.abs_err,
            truncation_k: e.truncation_k,
            tail_bound: e.tail_bound,
            evaluations: e.evaluations,
        }
    }
}

#[derive(Debug, Serialize)]
struct PlateRow {
    theta: f64,
    energy: f64,
    abs_err: f64,
    truncation_k: f64,
    tail_bound: f64,
}

#[derive(Debug, Serialize)]
struct BandRow {
    band: usize,
    theta: f64,
    q: f64,
    k: f64,
    k_min: f64,
    k_max: f64,
}

#[derive(Debug, Serialize)]
struct CouplingRow {
    gamma: f64,
    omega: f64,
    energy: f64,
    abs_err: f64,
    sign: i8,
}

#[derive(Debug, Serialize)]
struct RatioRow {
    w0: f64,
    energy: f64,
    abs_err: f64,
    ratio: f64,
}

/// Sign of `energy`, or 0 when it is not resolved by the error estimate.
fn sign(energy: f64, abs_err: f64) -> i8 {
    if energy.abs() <= abs_err {
        0
    } else if energy > 0.0 {
        1
    } else {
        -1
    }
}

/// Evaluates `f` on every grid point in parallel and returns the rows in
/// grid order, or the error of the first failing point.
fn par_rows<T, R, F>(points: &[T], f: F) -> Result<Vec<R>, CliError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R, CliError> + Sync + Send,
{
    let results: Vec<Result<R, CliError>> = points.par_iter().map(f).collect();
    results.into_iter().collect()
}

fn coupling_json(c: &CouplingArgs, p: &CombParams) -> Value {
    json!({
        "w0": c.w0,
        "w1": c.w1,
        "omega": p.omega,
        "gamma": p.gamma,
    })
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Energy {
            couplings,
            a,
            out,
            quad,
        } => energy(couplings, a, &out, quad),
        Command::Plate {
            couplings,
            a,
            theta,
            out,
            quad,
        } => plate(couplings, a, theta, &out, quad),
        Command::Bands {
            couplings,
            a,
            n_bands,
            theta_points,
            out,
            quad,
        } => bands(couplings, a, n_bands, theta_points, &out, quad),
        Command::ScanA {
            couplings,
            a_min,
            a_max,
            a_count,
            log,
            out,
            quad,
        } => scan_a(couplings, (a_min, a_max, a_count), log, &out, quad),
        Command::ScanCouplings {
            a,
            gamma_min,
            gamma_max,
            gamma_count,
            omega_min,
            omega_max,
            omega_count,
            out,
            quad,
        } => scan_couplings(
            a,
            (gamma_min, gamma_max, gamma_count),
            (omega_min, omega_max, omega_count),
            &out,
            quad,
        ),
        Command::RatioW0 {
            a,
            w0_min,
            w0_max,
            w0_count,
            out,
            quad,
        } => ratio_w0(a, (w0_min, w0_max, w0_count), &out, quad),
        Command::Verify { seed, out, quad } => verify(seed, &out, quad),
    }
}

fn energy(c: CouplingArgs, a: f64, out: &OutputArgs, quad: QuadArgs) -> Result<(), CliError> {
    let cfg = quad.config()?;
    let p = c.params(a)?;
    let e = comb_energy(&p, &cfg)?;
    Report {
        command: "energy",
        parameters: coupling_json(&c, &p),
        tolerances: cfg,
        rows: &[EnergyRow::new(&p, &e)],
        extra: None,
    }
    .write(out)
}

fn plate(
    c: CouplingArgs,
    a: f64,
    theta: ThetaArgs,
    out: &OutputArgs,
    quad: QuadArgs,
) -> Result<(), CliError> {
    let cfg = quad.config()?;
    let p = c.params(a)?;
    let thetas = match (theta.theta, theta.theta_points) {
        (Some(t), None) => vec![t],
        (None, Some(n)) => theta_grid(n)?,
        (None, None) => vec![0.0],
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give --theta or --theta-points, not both".into(),
            ))
        }
    };
    let rows = par_rows(&thetas, |&theta| {
        let e = plate_energy_theta(theta, &p, &cfg)?;
        Ok(PlateRow {
            theta,
            energy: e.value,
            abs_err: e.abs_err,
            truncation_k: e.truncation_k,
            tail_bound: e.tail_bound,
        })
    })?;
    Report {
        command: "plate",
        parameters: coupling_json(&c, &p),
        tolerances: cfg,
        rows: &rows,
        extra: None,
    }
    .write(out)
}

fn bands(
    c: CouplingArgs,
    a: f64,
    n_bands: usize,
    theta_points: usize,
    out: &OutputArgs,
    quad: QuadArgs,
) -> Result<(), CliError> {
    let cfg = quad.config()?;
    let p = c.params(a)?;
    let structure = band_structure(&DeltaPrimeComb::from_params(p), n_bands, theta_points, &cfg)?;
    let rows: Vec<BandRow> = structure
        .bands
        .iter()
        .flat_map(|b| {
            b.samples.iter().map(move |s| BandRow {
                band: b.index,
                theta: s.theta,
                q: s.q,
                k: s.k,
                k_min: b.k_min,
                k_max: b.k_max,
            })
        })
        .collect();
    let edges: Vec<Value> = structure
        .bands
        .iter()
        .map(|b| json!({ "index": b.index, "k_min": b.k_min, "k_max": b.k_max }))
        .collect();
    Report {
        command: "bands",
        parameters: coupling_json(&c, &p),
        tolerances: cfg,
        rows: &rows,
        extra: Some(("band_edges", Value::from(edges))),
    }
    .write(out)
}

fn scan_a(
    c: CouplingArgs,
    (lo, hi, count): (f64, f64, usize),
    log: bool,
    out: &OutputArgs,
    quad: QuadArgs,
) -> Result<(), CliError> {
    let cfg = quad.config()?;
    let spacings = grid(lo, hi, count, log, "a")?;
    let reference = c.params(spacings[0])?;
    let rows = par_rows(&spacings, |&a| {
        let p = c.params(a)?;
        Ok(EnergyRow::new(&p, &comb_energy(&p, &cfg)?))
    })?;
    Report {
        command: "scan-a",
        parameters: coupling_json(&c, &reference),
        tolerances: cfg,
        rows: &rows,
        extra: None,
    }
    .write(out)
}

fn scan_couplings(
    a: f64,
    gammas: (f64, f64, usize),
    omegas: (f64, f64, usize),
    out: &OutputArgs,
    quad: QuadArgs,
) -> Result<(), CliError> {
    let cfg = quad.config()?;
    let gs = grid(gammas.0, gammas.1, gammas.2, false, "gamma")?;
    let os = grid(omegas.0, omegas.1, omegas.2, false, "omega")?;
    let points: Vec<(f64, f64)> = gs
        .iter()
        .flat_map(|&g| os.iter().map(move |&o| (g, o)))
        .collect();
    let rows = par_rows(&points, |&(gamma, omega)| {
        let p = CombParams::new(omega, gamma, a)?;
        let e = comb_energy(&p, &cfg)?;
        Ok(CouplingRow {
            gamma,
            omega,
            energy: e.value,
            abs_err: e.abs_err,
            sign: sign(e.value, e.abs_err),
        })
    })?;
    Report {
        command: "scan-couplings",
        parameters: json!({ "a": a, "gamma": gammas, "omega": omegas }),
        tolerances: cfg,
        rows: &rows,
        extra: None,
    }
    .write(out)
}

fn ratio_w0(
    a: f64,
    (lo, hi, count): (f64, f64, usize),
    out: &OutputArgs,
    quad: QuadArgs,
) -> Result<(), CliError> {
    let cfg = quad.config()?;
    let w0s = grid(lo, hi, count, true, "w0")?;
    let rows = par_rows(&w0s, |&w0| {
        let (e, ratio) = small_w0_ratio(w0, a, &cfg)?;
        Ok(RatioRow {
            w0,
            energy: e.value,
            abs_err: e.abs_err,
            ratio,
        })
    })?;
    Report {
        command: "ratio-w0",
        parameters: json!({ "a": a, "w1": 0.0, "w0": (lo, hi, count) }),
        tolerances: cfg,
        rows: &rows,
        extra: None,
    }
    .write(out)
}

fn verify(seed: Option<u64>, out: &OutputArgs, quad: QuadArgs) -> Result<(), CliError> {
    let base = VerifyConfig::default();
    let cfg = VerifyConfig {
        quad: quad.config()?,
        seed: seed.unwrap_or(base.seed),
        ..base
    };
    let reports = run_all(&cfg);
    for r in &reports {
        eprintln!("{r}");
    }
    Report {
        command: "verify",
        parameters: json!({ "seed": cfg.seed, "theta_draws": cfg.theta_draws, "unitarity_draws": cfg.unitarity_draws }),
        tolerances: cfg.quad,
        rows: &reports,
        extra: None,
    }
    .write(out)?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::ChecksFailed {
            failed,
            total: reports.len(),
        });
    }
    Ok(())
}
