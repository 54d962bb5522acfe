//! Coupled shock, half-flat and slow-step systems on one clock field: the
//! shock particle must sit at the minimum of the other two at every
//! checkpoint.

use std::time::Instant;

use particle_engine::diagnostics::min_identity_violations;
use particle_engine::{ClockField, InitialKind, derive_seed, make_initial, sweep_observe};

use crate::config::Config;
use crate::error::{ExperimentError, Result};
use crate::report::{Report, Table};
use crate::trials::run_trials;

/// Violations over all trials for one (alpha, M). With `broken` set, the
/// slow-step system reads an independent clock field.
fn count(alpha: f64, m: usize, t: f64, times: &[f64], trials: usize, seed: u64, threads: usize, broken: bool) -> Result<(usize, usize)> {
    let top = ((1.0 - alpha) * t / 2.0 + 3.0 * t.sqrt()).ceil() as i64;
    let per_trial = run_trials(threads, trials, |i| {
        let clocks = ClockField::new(derive_seed(seed, i as u64), t)?;
        let s = make_initial(InitialKind::Shock { m, alpha }, top, t)?;
        let a = make_initial(InitialKind::HalfFlatA, top, t)?;
        let b = make_initial(InitialKind::SlowStepB { m, alpha }, top, t)?;
        if broken {
            let o = sweep_observe(&[&s, &a], &clocks, t, times)?;
            let ob = sweep_observe(&[&b], &clocks.salted(0x5eed), t, times)?.pop().unwrap();
            Ok(min_identity_violations(&o[0], &o[1], &ob))
        } else {
            let o = sweep_observe(&[&s, &a, &b], &clocks, t, times)?;
            Ok(min_identity_violations(&o[0], &o[1], &o[2]))
        }
    })?;
    let checked = (top as usize) * (times.len() + 1) * trials;
    Ok((per_trial.iter().sum(), checked))
}

pub fn run(config: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("min-identity", config);
    let alphas: Vec<f64> = config.list("alpha")?;
    let ms: Vec<usize> = config.list("m")?;
    if let Some(a) = alphas.iter().find(|a| !(**a > 0.0 && **a < 0.5)) {
        return Err(ExperimentError::Config(format!("alpha = {a} must be in (0, 1/2)")));
    }
    if ms.contains(&0) {
        return Err(ExperimentError::Config("m must be at least 1".into()));
    }
    let t: f64 = config.ranged("t", None, |t| t > 0.0, "positive")?;
    let step: f64 = config.ranged("checkpoint_step", Some(20.0), |s| s > 0.0, "positive")?;
    let trials: usize = config.get("trials")?;
    let canary_trials: usize = config.get_or("canary_trials", 20)?;
    let seed = config.seed()?;
    let threads = config.threads()?;
    let mut times = Vec::new();
    let mut s = 0.0;
    while s <= t + 1e-9 {
        times.push(s.min(t));
        s += step;
    }

    let mut table = Table::new("violations", &["alpha", "m", "t", "trials", "checked", "violations", "coupling"]);
    let mut total = 0;
    for (ai, &alpha) in alphas.iter().enumerate() {
        for (mi, &m) in ms.iter().enumerate() {
            let key = derive_seed(seed, (100 * ai + mi) as u64);
            let (v, checked) = count(alpha, m, t, &times, trials, key, threads, false)?;
            total += v;
            table.push([alpha.to_string(), m.to_string(), t.to_string(), trials.to_string(), checked.to_string(), v.to_string(), "shared".into()]);
            report.stat(format!("alpha={alpha},M={m}.violations"), v as f64);
        }
    }
    report.check("zero violations under the basic coupling", total == 0, total as f64, 0.0, format!("checkpoints {times:?} and the final time"));

    if canary_trials > 0 {
        let (v, checked) = count(alphas[0], ms[0], t, &times, canary_trials, derive_seed(seed, 0xca7a), threads, true)?;
        table.push([alphas[0].to_string(), ms[0].to_string(), t.to_string(), canary_trials.to_string(), checked.to_string(), v.to_string(), "independent".into()]);
        report.check(
            "broken coupling is detected",
            v > 0,
            v as f64,
            1.0,
            "slow-step system driven by an independent clock field must produce violations",
        );
    }
    report.table(table);
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
