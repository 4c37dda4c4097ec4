//! Implementations behind the subcommands. Every emitter builds the whole
//! output in memory and writes it in one shot, so identical inputs produce
//! byte-identical files.

use anyhow::{bail, Context, Result};
use num_complex::Complex;
use rayon::prelude::*;
use rotmode_core::asymptotics::{self, ApproxRegime};
use rotmode_core::model::{ModelParams, Regime};
use rotmode_core::normal_modes::{decompose, hamiltonian_signature, EnergeticSignature};
use rotmode_core::observables::{
    anomalous_moment, default_figure_grid, sample_series, squeezing_ratios, symplectic_eigenvalue,
    vacuum_occupation,
};
use rotmode_core::oracle::integrate_propagator;
use rotmode_core::propagator::{symplectic_defect_normalized, Propagator};
use serde_json::json;
use std::path::Path;

pub const EVOLVE_HEADER: &str =
    "t,n1,n2,re_a1sq,im_a1sq,re_a2sq,im_a2sq,rq1,rp1,rq2,rp2,dq1,dp1,dq2,dp2,f,S";
pub const VALIDATE_HEADER: &str =
    "t,max_abs_diff,symplectic_defect_analytic,symplectic_defect_oracle";
pub const APPROX_HEADER: &str = "t,n1_exact,n1_approx,n2_exact,n2_approx,\
     re_a1sq_exact,re_a1sq_approx,im_a1sq_exact,im_a1sq_approx,\
     re_a2sq_exact,re_a2sq_approx,im_a2sq_exact,im_a2sq_approx,max_rel_dev";

/// Full double precision: 17 significant digits survive a parse round trip.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Uniform grid over [0, tmax], endpoints included; a single point sits at 0.
fn uniform_grid(tmax: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        bail!("points must be at least 1");
    }
    if !(tmax >= 0.0) || !tmax.is_finite() {
        bail!("tmax must be finite and nonnegative, got {tmax}");
    }
    if n == 1 {
        return Ok(vec![0.0]);
    }
    Ok((0..n)
        .map(|k| tmax * k as f64 / (n - 1) as f64)
        .collect())
}

/// The time grid for series-like commands: an explicit tmax wins; without
/// one the grid spans one slow beat period, which only exists while the
/// lower eigenfrequency is real and nonzero.
fn series_grid(p: &ModelParams<f64>, tmax: Option<f64>, n: usize) -> Result<Vec<f64>> {
    match tmax {
        Some(tmax) => uniform_grid(tmax, n),
        None => default_figure_grid(p, n).context(
            "no default time window in this regime (the slow period is not finite); pass --tmax",
        ),
    }
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::Free => "Free",
        Regime::StableI => "StableI",
        Regime::StableII => "StableII",
        Regime::Unstable => "Unstable",
        Regime::Critical => "Critical",
        Regime::Landau => "Landau",
    }
}

pub fn stability_point(p: &ModelParams<f64>, out: Option<&Path>) -> Result<()> {
    let s = p.spectrum();
    let c = p.couplings();
    let doc = json!({
        "omega2": p.omega2(),
        "omega": p.omega(),
        "regime": regime_name(s.regime),
        "omega_plus_sq": s.omega_plus_sq,
        "omega_minus_sq": s.omega_minus_sq,
        "lambda_plus": c.lambda_plus,
        "lambda_minus": c.lambda_minus,
    });
    write_output(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SweepQuantity {
    Regime,
    OmegaMinusSq,
    MaxF,
    MaxSqueeze,
}

pub struct SweepSpec {
    pub omega2: (f64, f64, f64),
    pub omega: (f64, f64, f64),
    pub quantity: SweepQuantity,
    /// Time window for the max-f / max-squeeze quantities.
    pub tmax: f64,
}

fn sweep_axis(name: &str, (min, max, step): (f64, f64, f64)) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        bail!("{name} step must be positive, got {step}");
    }
    if !(max >= min) {
        bail!("{name} range is empty: [{min}, {max}]");
    }
    let n = ((max - min) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|k| min + step * k as f64).collect())
}

/// Most entangled and most squeezed values seen over the time window.
fn window_extrema(p: &ModelParams<f64>, tmax: f64) -> Result<(f64, f64)> {
    let mut max_f = 0.0f64;
    let mut deepest = f64::INFINITY;
    for t in uniform_grid(tmax, 256)? {
        let prop = Propagator::at(p, t);
        max_f = max_f.max(symplectic_eigenvalue(&prop)?);
        let r = squeezing_ratios(&prop)?;
        deepest = deepest
            .min(r.rq1 - 1.0)
            .min(r.rp1 - 1.0)
            .min(r.rq2 - 1.0)
            .min(r.rp2 - 1.0);
    }
    Ok((max_f, deepest))
}

pub fn stability_sweep(spec: &SweepSpec, out: Option<&Path>) -> Result<()> {
    let omega2s = sweep_axis("omega2", spec.omega2)?;
    let omegas = sweep_axis("omega", spec.omega)?;
    let grid: Vec<(f64, f64)> = omega2s
        .iter()
        .flat_map(|&w2| omegas.iter().map(move |&w| (w2, w)))
        .collect();
    let header = match spec.quantity {
        SweepQuantity::MaxF => "omega2,omega,regime,omega_plus_sq,omega_minus_sq,max_f",
        SweepQuantity::MaxSqueeze => "omega2,omega,regime,omega_plus_sq,omega_minus_sq,max_squeeze",
        _ => "omega2,omega,regime,omega_plus_sq,omega_minus_sq",
    };
    let rows: Result<Vec<String>> = grid
        .par_iter()
        .map(|&(w2, w)| -> Result<String> {
            let p = ModelParams::new(1.0, w2, w)?;
            let s = p.spectrum();
            let base = format!(
                "{},{},{},{},{}",
                fmt(w2),
                fmt(w),
                regime_name(s.regime),
                fmt(s.omega_plus_sq),
                fmt(s.omega_minus_sq)
            );
            Ok(match spec.quantity {
                SweepQuantity::MaxF => {
                    let (max_f, _) = window_extrema(&p, spec.tmax)?;
                    format!("{base},{}", fmt(max_f))
                }
                SweepQuantity::MaxSqueeze => {
                    let (_, deepest) = window_extrema(&p, spec.tmax)?;
                    format!("{base},{}", fmt(deepest))
                }
                _ => base,
            })
        })
        .collect();
    let mut content = String::from(header);
    content.push('\n');
    for row in rows? {
        content.push_str(&row);
        content.push('\n');
    }
    write_output(out, &content)
}

pub struct EvolveSpec {
    pub tmax: Option<f64>,
    pub points: usize,
    pub alpha1: Complex<f64>,
    pub alpha2: Complex<f64>,
    pub json: bool,
}

pub fn evolve(p: &ModelParams<f64>, spec: &EvolveSpec, out: Option<&Path>) -> Result<()> {
    let grid = series_grid(p, spec.tmax, spec.points)?;
    let series = sample_series(p, &grid)?;
    let content = if spec.json {
        let rows: Vec<serde_json::Value> = series
            .iter()
            .map(|s| {
                json!({
                    "t": s.t,
                    "n1": s.n1, "n2": s.n2,
                    "re_a1sq": s.a1sq.re, "im_a1sq": s.a1sq.im,
                    "re_a2sq": s.a2sq.re, "im_a2sq": s.a2sq.im,
                    "rq1": s.rq1, "rp1": s.rp1, "rq2": s.rq2, "rp2": s.rp2,
                    "dq1": s.rq1 - 1.0, "dp1": s.rp1 - 1.0,
                    "dq2": s.rq2 - 1.0, "dp2": s.rp2 - 1.0,
                    "f": s.f, "S": s.s,
                })
            })
            .collect();
        // the tabulated observables are referenced to the vacuum and do not
        // depend on the initial displacement; the amplitudes are recorded
        // for provenance
        let doc = json!({
            "omega2": p.omega2(),
            "omega": p.omega(),
            "alpha1": [spec.alpha1.re, spec.alpha1.im],
            "alpha2": [spec.alpha2.re, spec.alpha2.im],
            "series": rows,
        });
        format!("{}\n", serde_json::to_string_pretty(&doc)?)
    } else {
        let mut csv = String::with_capacity(series.len() * 430 + 160);
        csv.push_str(EVOLVE_HEADER);
        csv.push('\n');
        for s in &series {
            let row = [
                s.t,
                s.n1,
                s.n2,
                s.a1sq.re,
                s.a1sq.im,
                s.a2sq.re,
                s.a2sq.im,
                s.rq1,
                s.rp1,
                s.rq2,
                s.rp2,
                s.rq1 - 1.0,
                s.rp1 - 1.0,
                s.rq2 - 1.0,
                s.rp2 - 1.0,
                s.f,
                s.s,
            ];
            csv.push_str(&row.map(fmt).join(","));
            csv.push('\n');
        }
        csv
    };
    write_output(out, &content)
}

pub struct ValidateSpec {
    pub tmax: f64,
    pub points: usize,
    pub dt: f64,
    pub threshold: f64,
}

/// Returns true when every deviation stays under the threshold. The CSV
/// records raw absolute deviations; the pass decision divides by the entry
/// scale so exponentially growing regimes are judged relatively.
pub fn validate(p: &ModelParams<f64>, spec: &ValidateSpec, out: Option<&Path>) -> Result<bool> {
    if !(spec.dt > 0.0) {
        bail!("dt must be positive, got {}", spec.dt);
    }
    let rows: Result<Vec<(String, f64)>> = uniform_grid(spec.tmax, spec.points)?
        .par_iter()
        .map(|&t| -> Result<(String, f64)> {
            let analytic = Propagator::at(p, t);
            let oracle = integrate_propagator(p, t, spec.dt)?;
            let diff = (analytic.u - oracle.u)
                .max_abs()
                .max((analytic.v - oracle.v).max_abs());
            let scale = 1f64.max(analytic.u.max_abs()).max(analytic.v.max_abs());
            let row = format!(
                "{},{},{},{}",
                fmt(t),
                fmt(diff),
                fmt(symplectic_defect_normalized(&analytic)),
                fmt(symplectic_defect_normalized(&oracle))
            );
            Ok((row, diff / scale))
        })
        .collect();
    let rows = rows?;
    let worst = rows.iter().fold(0.0f64, |acc, (_, d)| acc.max(*d));
    let pass = worst <= spec.threshold;
    let mut content = String::from(VALIDATE_HEADER);
    content.push('\n');
    for (row, _) in &rows {
        content.push_str(row);
        content.push('\n');
    }
    write_output(out, &content)?;
    eprintln!(
        "validate: worst scaled deviation {} against threshold {} -> {}",
        fmt(worst),
        fmt(spec.threshold),
        if pass { "pass" } else { "FAIL" }
    );
    Ok(pass)
}

pub struct ApproxSpec {
    pub kind: ApproxRegime,
    pub tmax: Option<f64>,
    pub points: usize,
}

pub fn approx(p: &ModelParams<f64>, spec: &ApproxSpec, out: Option<&Path>) -> Result<()> {
    let grid = series_grid(p, spec.tmax, spec.points)?;
    struct Row {
        t: f64,
        exact: [f64; 6],
        approx: [f64; 6],
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &t in &grid {
        let prop = Propagator::at(p, t);
        let a1 = anomalous_moment(&prop, 1)?;
        let a2 = anomalous_moment(&prop, 2)?;
        let ap = asymptotics::approx_at(p, t, spec.kind);
        rows.push(Row {
            t,
            exact: [
                vacuum_occupation(&prop, 1)?,
                vacuum_occupation(&prop, 2)?,
                a1.re,
                a1.im,
                a2.re,
                a2.im,
            ],
            approx: [
                ap.n1, ap.n2, ap.a1sq.re, ap.a1sq.im, ap.a2sq.re, ap.a2sq.im,
            ],
        });
    }
    // deviations are judged against the largest exact magnitude each
    // quantity reaches on the grid, complex moments by modulus
    let floor = 1e-12f64;
    let scale_n1 = rows.iter().fold(floor, |m, r| m.max(r.exact[0].abs()));
    let scale_n2 = rows.iter().fold(floor, |m, r| m.max(r.exact[1].abs()));
    let scale_a1 = rows
        .iter()
        .fold(floor, |m, r| m.max(r.exact[2].hypot(r.exact[3])));
    let scale_a2 = rows
        .iter()
        .fold(floor, |m, r| m.max(r.exact[4].hypot(r.exact[5])));
    let mut content = String::from(APPROX_HEADER);
    content.push('\n');
    let mut worst = 0.0f64;
    for r in &rows {
        let dev = (r.approx[0] - r.exact[0]).abs() / scale_n1;
        let dev = dev.max((r.approx[1] - r.exact[1]).abs() / scale_n2);
        let dev = dev.max(
            (r.approx[2] - r.exact[2]).hypot(r.approx[3] - r.exact[3]) / scale_a1,
        );
        let dev = dev.max(
            (r.approx[4] - r.exact[4]).hypot(r.approx[5] - r.exact[5]) / scale_a2,
        );
        worst = worst.max(dev);
        let cells = [
            r.t,
            r.exact[0],
            r.approx[0],
            r.exact[1],
            r.approx[1],
            r.exact[2],
            r.approx[2],
            r.exact[3],
            r.approx[3],
            r.exact[4],
            r.approx[4],
            r.exact[5],
            r.approx[5],
            dev,
        ];
        content.push_str(&cells.map(fmt).join(","));
        content.push('\n');
    }
    write_output(out, &content)?;
    eprintln!("approx: max_rel_dev = {}", fmt(worst));
    Ok(())
}

pub fn normalmodes(p: &ModelParams<f64>, out: Option<&Path>) -> Result<()> {
    let d = decompose(p).context("the decomposition needs a nonzero rotation frequency")?;
    let signature = match hamiltonian_signature(p) {
        Ok(EnergeticSignature::PositiveDefinite) => json!("positive-definite"),
        Ok(EnergeticSignature::IndefiniteStable) => json!("indefinite-stable"),
        _ => json!(null),
    };
    let doc = json!({
        "omega2": p.omega2(),
        "omega": p.omega(),
        "gamma": d.gamma,
        "eta": d.eta,
        "alpha1": d.alpha1,
        "beta1": d.beta1,
        "alpha2": d.alpha2,
        "beta2": d.beta2,
        "omega_nm_plus": d.omega_nm_plus,
        "omega_nm_minus": d.omega_nm_minus,
        "signature": signature,
    });
    write_output(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

pub fn propagator(p: &ModelParams<f64>, t: f64, out: Option<&Path>) -> Result<()> {
    if !t.is_finite() {
        bail!("t must be finite, got {t}");
    }
    let prop = Propagator::at(p, t);
    let part = |re: bool, m: &[[Complex<f64>; 2]; 2]| -> Vec<Vec<f64>> {
        m.iter()
            .map(|row| row.iter().map(|z| if re { z.re } else { z.im }).collect())
            .collect()
    };
    let doc = json!({
        "t": t,
        "u_re": part(true, &prop.u.m),
        "u_im": part(false, &prop.u.m),
        "v_re": part(true, &prop.v.m),
        "v_im": part(false, &prop.v.m),
    });
    write_output(out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))
}
