//! Backward index path of the half-flat system started from N = nu t at
//! time t. Along the path, N(tau t) should stay within t^{2/3+eps} of
//! (nu - (1 - tau)/4) t, and the particle it points at within
//! 3 t^{2/3+eps} of (-2 nu + 1/2) t.
//!
//! Escape is counted when the band is left at some tau on the grid. The
//! centre of the position band is reported twice: fixed, and following the
//! centre of the index band (-2 N_c(tau) + tau t / 2). Both are the same
//! number because the characteristic through the half-flat region is
//! vertical.

use std::time::Instant;

use particle_engine::diagnostics::backward_index_path;
use particle_engine::{ClockField, InitialKind, derive_seed, make_initial, sweep};

use crate::config::Config;
use crate::error::{ExperimentError, Result};
use crate::plot::{Plot, Style};
use crate::report::{Report, Table};
use crate::stats::{Proportion, linear_fit, non_increasing};
use crate::trials::run_trials;

struct Sample {
    n_dev: f64,
    x_dev_fixed: f64,
    x_dev_moving: f64,
    top_ok: bool,
    path: Vec<(f64, f64)>,
}

fn simulate(nu: f64, t: f64, tau_points: usize, keep_paths: usize, trials: usize, seed: u64, threads: usize) -> Result<Vec<Sample>> {
    let top = (nu * t).round() as i64;
    run_trials(threads, trials, |i| {
        let clocks = ClockField::new(derive_seed(seed, i as u64), t)?;
        let run = sweep(&make_initial(InitialKind::HalfFlatA, top, t)?, &clocks, t)?;
        let path = backward_index_path(&run, top, t)?;
        let mut taus: Vec<f64> = (0..tau_points).map(|k| k as f64 / (tau_points - 1) as f64).collect();
        taus.extend(path.drops.iter().map(|d| d / t));
        let mut s = Sample { n_dev: 0.0, x_dev_fixed: 0.0, x_dev_moving: 0.0, top_ok: path.value(t) == top, path: Vec::new() };
        for &tau in &taus {
            let label = path.value(tau * t);
            let n_centre = (nu - (1.0 - tau) / 4.0) * t;
            if label < run.first_label {
                s.n_dev = f64::INFINITY;
                continue;
            }
            let x = run.position_at(label, tau * t) as f64;
            s.n_dev = s.n_dev.max((label as f64 - n_centre).abs());
            s.x_dev_fixed = s.x_dev_fixed.max((x - (0.5 - 2.0 * nu) * t).abs());
            s.x_dev_moving = s.x_dev_moving.max((x - (-2.0 * n_centre + tau * t / 2.0)).abs());
        }
        if i < keep_paths {
            s.path = (0..tau_points)
                .map(|k| {
                    let tau = k as f64 / (tau_points - 1) as f64;
                    (tau, path.value(tau * t) as f64 - (nu - (1.0 - tau) / 4.0) * t)
                })
                .collect();
        }
        Ok(s)
    })
}

pub fn run(config: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("localization", config);
    let nu = config.ranged("nu", None, |v| v > 1.0, "greater than 1")?;
    let eps = config.ranged("eps", None, |v| v > 0.0 && v < 1.0 / 3.0, "in (0, 1/3)")?;
    let t_grid: Vec<f64> = config.list("t_grid")?;
    let trials: usize = config.get("trials")?;
    let tau_points: usize = config.get_or("tau_points", 64)?;
    let threshold: f64 = config.get_or("escape_threshold", 0.05)?;
    let seed = config.seed()?;
    let threads = config.threads()?;
    if tau_points < 2 {
        return Err(ExperimentError::Config("tau_points must be at least 2".into()));
    }
    for &t in &t_grid {
        let band = t.powf(2.0 / 3.0 + eps);
        if band >= 0.5 * t {
            return Err(ExperimentError::Refused(format!(
                "t = {t} is too small: the band t^(2/3+eps) = {band:.1} is not small against t/2"
            )));
        }
    }
    report.note("escape means leaving the band at some tau on the grid (64 equispaced points plus every breakpoint of N)");
    report.note("the fixed and the moving position-band centres coincide; both are tabulated");

    let mut table = Table::new(
        "escape",
        &["t", "n_band", "x_band", "n_escape", "n_wilson_hi", "x_escape_fixed", "x_wilson_hi", "x_escape_moving", "max_n_dev_over_t23", "max_x_dev_over_t23"],
    );
    let mut tail_table = Table::new("scaled_deviation_tail", &["t", "k", "p_n_dev_above", "p_x_dev_above"]);
    let mut n_esc = Vec::new();
    let mut x_esc = Vec::new();
    let mut plot = Plot::new("index_paths", "N(tau t) - (nu - (1 - tau)/4) t", "tau", "deviation");
    for (k, &t) in t_grid.iter().enumerate() {
        let s = simulate(nu, t, tau_points, if k + 1 == t_grid.len() { 8 } else { 0 }, trials, derive_seed(seed, k as u64), threads)?;
        let band = t.powf(2.0 / 3.0 + eps);
        let pn = Proportion::count(&s, |x| x.n_dev > band);
        let px = Proportion::count(&s, |x| x.x_dev_fixed > 3.0 * band);
        let pxm = Proportion::count(&s, |x| x.x_dev_moving > 3.0 * band);
        let t23 = t.powf(2.0 / 3.0);
        let max_n = s.iter().map(|x| x.n_dev).fold(0.0, f64::max) / t23;
        let max_x = s.iter().map(|x| x.x_dev_fixed).fold(0.0, f64::max) / t23;
        table.push([t, band, 3.0 * band, pn.estimate, pn.hi, px.estimate, px.hi, pxm.estimate, max_n, max_x].map(|v| v.to_string()));
        report.check(&format!("t={t}: top of the path is N"), s.iter().all(|x| x.top_ok), 0.0, 0.0, "N(t) = N in every trial");

        // Decay of P(max deviation > k t^{2/3}) in k: the bound behind the
        // escape estimate is exponential in a power of the band width.
        let ks: Vec<f64> = (0..12).map(|j| 0.25 * j as f64).collect();
        let (mut lk, mut lp) = (Vec::new(), Vec::new());
        for &kk in &ks {
            let a = Proportion::count(&s, |x| x.n_dev > kk * t23);
            let b = Proportion::count(&s, |x| x.x_dev_fixed > kk * t23);
            tail_table.push([t, kk, a.estimate, b.estimate].map(|v| v.to_string()));
            if a.hits >= 5 {
                lk.push(kk);
                lp.push(a.estimate.ln());
            }
        }
        if let Some(fit) = linear_fit(&lk, &lp) {
            report.stat(format!("t={t}.n_dev_decay_rate"), -fit.slope);
            report.stat(format!("t={t}.n_dev_decay_r2"), fit.r2);
        }
        report.stat(format!("t={t}.n_escape"), pn.estimate);
        report.stat(format!("t={t}.x_escape"), px.estimate);
        if k + 1 == t_grid.len() {
            for (j, x) in s.iter().filter(|x| !x.path.is_empty()).enumerate() {
                plot = plot.series(&format!("trial {j}"), Style::Line, x.path.clone());
            }
            plot = plot
                .series("+band", Style::Line, vec![(0.0, band), (1.0, band)])
                .series("-band", Style::Line, vec![(0.0, -band), (1.0, -band)]);
        }
        n_esc.push(pn);
        x_esc.push(px);
    }
    let last_n = n_esc.last().unwrap();
    let last_x = x_esc.last().unwrap();
    report.check("N-path escape fraction", last_n.hi <= threshold, last_n.estimate, threshold, format!("Wilson upper edge {:.4}", last_n.hi));
    report.check("position-band escape fraction", last_x.hi <= threshold, last_x.estimate, threshold, format!("Wilson upper edge {:.4}", last_x.hi));
    let en: Vec<f64> = n_esc.iter().map(|p| p.estimate).collect();
    let ex: Vec<f64> = x_esc.iter().map(|p| p.estimate).collect();
    report.check("N-path escape non-increasing in t", non_increasing(&en), *en.last().unwrap(), f64::NAN, format!("{en:?}"));
    report.check("position-band escape non-increasing in t", non_increasing(&ex), *ex.last().unwrap(), f64::NAN, format!("{ex:?}"));
    report.plot(plot);
    report.table(table);
    report.table(tail_table);
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
