//! Half-flat particle (1-alpha)t/2 at time t against particle
//! (1-alpha)t/2 - t^nu/4 at time t - t^nu, both in the t^{1/3} scale.
//!
//! Sandwich: pack labels m..n densely behind x_m(u) at u = t - t^nu and run
//! them to t on the same clocks. Particle n of the packed system can only
//! be ahead of the real one, x_n(t) <= x~_n(t), which in rescaled variables
//! is X >= X~ + t^{(nu-1)/3} X^step.

use std::time::Instant;

use particle_engine::{ClockField, InitialKind, SystemState, derive_seed, make_initial, sweep_final, sweep_observe};

use crate::config::Config;
use crate::error::{ExperimentError, Result};
use crate::plot::{Plot, Style};
use crate::report::{Report, Table};
use crate::stats::{Proportion, non_increasing};
use crate::trials::run_trials;

struct Sample {
    x: f64,
    x_tilde: f64,
    x_step: f64,
    sandwich_holds: bool,
}

fn simulate(alpha: f64, nu: f64, t: f64, trials: usize, seed: u64, threads: usize) -> Result<Vec<Sample>> {
    let n = ((1.0 - alpha) * t / 2.0).floor() as i64;
    let lag = t.powf(nu);
    let m = n - (lag / 4.0).floor() as i64;
    let u = t - lag;
    if m < 1 || u <= 0.0 {
        return Err(ExperimentError::Refused(format!("grid too coarse: t = {t} leaves no room for a lag of t^nu = {lag:.1}")));
    }
    let centre = (alpha - 0.5) * t;
    let scale = t.powf(1.0 / 3.0);
    run_trials(threads, trials, |i| {
        let clocks = ClockField::new(derive_seed(seed, i as u64), t)?;
        let init = make_initial(InitialKind::HalfFlatA, n, t)?;
        let obs = sweep_observe(&[&init], &clocks, t, &[u])?.pop().unwrap();
        let xm_u = obs.position(0, m);
        let xn_t = obs.final_position(n);
        let k = (n - m + 1) as usize;
        let mut packed = SystemState::from_parts(m, (0..k as i64).map(|j| xm_u - j).collect(), vec![1.0; k])?;
        packed.time = u;
        let xn_packed = *sweep_final(&packed, &clocks, t)?.last().unwrap();
        Ok(Sample {
            x: -(xn_t as f64 - centre) / scale,
            x_tilde: -(xm_u as f64 - centre) / scale,
            x_step: -((xn_packed - xm_u) as f64) / lag.powf(1.0 / 3.0),
            sandwich_holds: xn_t <= xn_packed,
        })
    })
}

pub fn run(config: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("slow-decorrelation", config);
    let alpha = config.ranged("alpha", None, |a| a > 0.0 && a < 0.5, "in (0, 1/2)")?;
    let nu = config.ranged("nu", None, |v| v > 0.0 && v < 1.0, "in (0, 1)")?;
    let eps = config.ranged("eps", None, |v| v > 0.0, "positive")?;
    let t_grid: Vec<f64> = config.list("t_grid")?;
    if t_grid.len() < 2 || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ExperimentError::Config("t_grid needs at least two increasing times".into()));
    }
    let trials: usize = config.get("trials")?;
    let seed = config.seed()?;
    let threads = config.threads()?;
    let bound: f64 = config.get_or("final_bound", crate::common::expectation("slow_decorrelation.final_bound"))?;

    let mut table = Table::new("decorrelation", &["t", "nu", "eps", "estimate", "wilson_lo", "wilson_hi", "sandwich_violations", "mean_abs_gap"]);
    let mut estimates = Vec::new();
    let mut violations = 0;
    for (k, &t) in t_grid.iter().enumerate() {
        let s = simulate(alpha, nu, t, trials, derive_seed(seed, k as u64), threads)?;
        let p = Proportion::count(&s, |x| (x.x_tilde - x.x).abs() >= eps);
        let bad = s.iter().filter(|x| !x.sandwich_holds).count();
        // Same inequality through the rescaled variables, as a cross-check
        // of the bookkeeping.
        let bad_rescaled = s.iter().filter(|x| x.x < x.x_tilde + t.powf((nu - 1.0) / 3.0) * x.x_step - 1e-9).count();
        violations += bad + bad_rescaled;
        let gap = s.iter().map(|x| (x.x_tilde - x.x).abs()).sum::<f64>() / s.len() as f64;
        table.push([t, nu, eps, p.estimate, p.lo, p.hi, bad as f64, gap].map(|v| v.to_string()));
        report.stat(format!("t={t}.estimate"), p.estimate);
        estimates.push(p);
    }
    let est: Vec<f64> = estimates.iter().map(|p| p.estimate).collect();
    report.check("estimate non-increasing in t", non_increasing(&est), *est.last().unwrap(), f64::NAN, format!("{est:?}"));
    let last = estimates.last().unwrap();
    report.check(
        "final estimate below the frozen bound",
        last.hi <= bound,
        last.estimate,
        bound,
        format!("Wilson [{:.4}, {:.4}]", last.lo, last.hi),
    );
    report.check("pathwise sandwich", violations == 0, violations as f64, 0.0, format!("{} trials per t", trials));

    // With the lag close to t the two observations are nearly independent,
    // with a short lag they nearly coincide.
    if let (Ok(t_s), Ok(nus)) = (config.get::<f64>("sanity_t"), config.list::<f64>("sanity_nu")) {
        let sanity_trials: usize = config.get_or("sanity_trials", trials)?;
        let mut vals = Vec::new();
        for (k, &v) in nus.iter().enumerate() {
            let s = simulate(alpha, v, t_s, sanity_trials, derive_seed(seed, 1000 + k as u64), threads)?;
            let p = Proportion::count(&s, |x| (x.x_tilde - x.x).abs() >= eps);
            table.push([t_s, v, eps, p.estimate, p.lo, p.hi, s.iter().filter(|x| !x.sandwich_holds).count() as f64, f64::NAN].map(|v| v.to_string()));
            vals.push(p.estimate);
        }
        let ordered = vals.windows(2).all(|w| w[1] > w[0]);
        report.check("longer lag decorrelates more", ordered, *vals.last().unwrap(), vals[0], format!("nu = {nus:?} at t = {t_s}: {vals:?}"));
    }

    report.plot(
        Plot::new("decorrelation", "P(|X~ - X| >= eps) against t", "t", "probability")
            .series("estimate", Style::Points, t_grid.iter().zip(&est).map(|(&a, &b)| (a, b)).collect())
            .series("bound", Style::Line, vec![(t_grid[0], bound), (*t_grid.last().unwrap(), bound)]),
    );
    report.table(table);
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
