//! Tails of step, flat and half-flat particles at time t in the t^{1/3}
//! scale, and the comparison inequalities between them.
//!
//! Shapes fitted:
//!   step, x >= (1 - 2 sqrt(nu)) t + r t^{1/3}:  C e^{-c r^{3/2}}
//!   step, x <= (1 - 2 sqrt(nu)) t - s t^{1/3}:  C e^{-c s}
//!   flat (label t/4), x <= -s t^{1/3}:          C e^{-c s}
//! and for half-flat label nu t with centre (1/2 - 2 nu) t
//!   P(x^hf <= centre - s t^{1/3}) <= P(x^flat <= -s t^{1/3})
//!   P(x^hf >= centre - s t^{1/3}) <= P(x^step_{t/4} >= -s t^{1/3})   (nu >= 1/4)

use std::time::Instant;

use particle_engine::{ClockField, InitialKind, derive_seed, make_initial, sweep_observe};

use crate::common::grid;
use crate::config::Config;
use crate::error::{ExperimentError, Result};
use crate::plot::{Plot, Style};
use crate::report::{Report, Table};
use crate::stats::{LinearFit, linear_fit};
use crate::trials::run_trials;

struct Sample {
    step: Vec<i64>,
    flat: i64,
    half_flat: Vec<i64>,
}

fn tail(values: &[f64], pred: impl Fn(f64) -> bool) -> (f64, f64, usize) {
    let hits = values.iter().filter(|&&v| pred(v)).count();
    let n = values.len() as f64;
    let p = hits as f64 / n;
    (p, (p * (1.0 - p) / n).sqrt(), hits)
}

struct TailFit {
    fit: Option<LinearFit>,
    envelope: f64,
    used: usize,
}

/// Fits log P against g(s) over the points with enough hits and returns the
/// smallest C with P <= C e^{slope g} at every such point.
fn fit_tail(points: &[(f64, f64, usize)], g: impl Fn(f64) -> f64, min_hits: usize) -> TailFit {
    let used: Vec<&(f64, f64, usize)> = points.iter().filter(|p| p.2 >= min_hits).collect();
    let xs: Vec<f64> = used.iter().map(|p| g(p.0)).collect();
    let ys: Vec<f64> = used.iter().map(|p| p.1.ln()).collect();
    let fit = linear_fit(&xs, &ys);
    let envelope = fit.map_or(f64::NAN, |f| xs.iter().zip(&ys).map(|(x, y)| (y - f.slope * x).exp()).fold(0.0, f64::max));
    TailFit { fit, envelope, used: used.len() }
}

pub fn run(config: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("tails", config);
    let t = config.ranged("t", Some(500.0), |t| t >= 16.0, "at least 16")?;
    let trials: usize = config.get("trials")?;
    let min_trials: usize = config.get_or("min_trials", 10_000)?;
    if trials < min_trials {
        return Err(ExperimentError::Config(format!("tail estimates need at least {min_trials} trials, got {trials}")));
    }
    let step_nus: Vec<f64> = config.list_or("step_nu", vec![0.25])?;
    let hf_nus: Vec<f64> = config.list_or("half_flat_nu", vec![0.25, 0.5])?;
    if step_nus.iter().chain(&hf_nus).any(|&v| !(v > 0.0 && v < 1.0)) {
        return Err(ExperimentError::Config("label fractions must lie in (0, 1)".into()));
    }
    let min_hits: usize = config.get_or("min_hits", 10)?;
    let r2_min: f64 = config.get_or("r2_min", crate::common::expectation("tails.r2_min"))?;
    let sigmas: f64 = config.get_or("se_multiple", 3.0)?;
    let seed = config.seed()?;
    let threads = config.threads()?;

    let t13 = t.powf(1.0 / 3.0);
    let quarter = (t / 4.0).round() as i64;
    let step_labels: Vec<i64> = step_nus.iter().map(|v| (v * t).round() as i64).collect();
    let hf_labels: Vec<i64> = hf_nus.iter().map(|v| (v * t).round() as i64).collect();
    let step_top = *step_labels.iter().chain([&quarter]).max().unwrap();
    let hf_top = *hf_labels.iter().max().unwrap();
    let samples = run_trials(threads, trials, |i| {
        let clocks = ClockField::new(derive_seed(seed, i as u64), t)?;
        let step = make_initial(InitialKind::Step, step_top, t)?;
        let flat = make_initial(InitialKind::Flat, quarter, t)?;
        let hf = make_initial(InitialKind::HalfFlatA, hf_top, t)?;
        let o = sweep_observe(&[&step, &flat, &hf], &clocks, t, &[])?;
        Ok(Sample {
            step: step_labels.iter().chain([&quarter]).map(|&l| o[0].final_position(l)).collect(),
            flat: o[1].final_position(quarter),
            half_flat: hf_labels.iter().map(|&l| o[2].final_position(l)).collect(),
        })
    })?;

    let s_grid = grid(0.0, 4.0, 17);
    let mut tails = Table::new("tails", &["family", "nu", "side", "s", "probability", "standard_error", "hits"]);
    let mut fits = Table::new("tail_fits", &["family", "nu", "side", "shape", "rate", "envelope", "r2", "points"]);
    let mut plot = Plot::new("tails", "empirical tails", "s", "log10 P");
    let mut record = |report: &mut Report, family: &str, nu: f64, side: &str, shape: &str, pts: Vec<(f64, f64, usize)>| -> Option<LinearFit> {
        for p in &pts {
            tails.push([family.into(), nu.to_string(), side.into(), p.0.to_string(), p.1.to_string(), (p.1 * (1.0 - p.1) / trials as f64).sqrt().to_string(), p.2.to_string()]);
        }
        plot.series.push(crate::plot::Series {
            label: format!("{family} nu={nu} {side}"),
            style: Style::Line,
            points: pts.iter().filter(|p| p.2 > 0).map(|p| (p.0, p.1.log10())).collect(),
        });
        let g: fn(f64) -> f64 = if shape == "exp(-c s^1.5)" { |s| s.powf(1.5) } else { |s| s };
        let f = fit_tail(&pts, g, min_hits);
        let (rate, r2) = f.fit.map_or((f64::NAN, f64::NAN), |x| (-x.slope, x.r2));
        fits.push([family.into(), nu.to_string(), side.into(), shape.into(), rate.to_string(), f.envelope.to_string(), r2.to_string(), f.used.to_string()]);
        if f.used < pts.len() {
            report.note(format!("{family} nu={nu} {side}: {} of {} grid points have fewer than {min_hits} hits and are left out of the fit", pts.len() - f.used, pts.len()));
        }
        report.stat(format!("{family}.nu={nu}.{side}.rate"), rate);
        report.stat(format!("{family}.nu={nu}.{side}.r2"), r2);
        f.fit
    };

    for (k, &nu) in step_nus.iter().enumerate() {
        let centre = (1.0 - 2.0 * nu.sqrt()) * t;
        let xs: Vec<f64> = samples.iter().map(|s| s.step[k] as f64).collect();
        let right: Vec<_> = s_grid.iter().map(|&r| { let (p, _, h) = tail(&xs, |x| x >= centre + r * t13); (r, p, h) }).collect();
        let left: Vec<_> = s_grid.iter().map(|&s| { let (p, _, h) = tail(&xs, |x| x <= centre - s * t13); (s, p, h) }).collect();
        let fr = record(&mut report, "step", nu, "right", "exp(-c s^1.5)", right);
        let fl = record(&mut report, "step", nu, "left", "exp(-c s)", left);
        let ok_r = fr.is_some_and(|f| f.slope < 0.0 && f.r2 >= r2_min);
        report.check(&format!("step nu={nu}: right tail decays like s^(3/2)"), ok_r, fr.map_or(f64::NAN, |f| f.r2), r2_min, "R^2 of log P against s^(3/2)");
        report.check(&format!("step nu={nu}: left tail decays exponentially"), fl.is_some_and(|f| f.slope < 0.0), fl.map_or(f64::NAN, |f| -f.slope), 0.0, "fitted rate");
    }
    let flat: Vec<f64> = samples.iter().map(|s| s.flat as f64).collect();
    let flat_left: Vec<_> = s_grid.iter().map(|&s| { let (p, _, h) = tail(&flat, |x| x <= -s * t13); (s, p, h) }).collect();
    let ff = record(&mut report, "flat", 0.25, "left", "exp(-c s)", flat_left);
    report.check("flat: left tail decays exponentially", ff.is_some_and(|f| f.slope < 0.0), ff.map_or(f64::NAN, |f| -f.slope), 0.0, "fitted rate");

    let quarter_step: Vec<f64> = samples.iter().map(|s| *s.step.last().unwrap() as f64).collect();
    let mut comparisons = Table::new("comparisons", &["nu", "inequality", "s", "lhs", "rhs", "excess_in_se"]);
    let cmp_grid = grid(-4.0, 4.0, 33);
    for (k, &nu) in hf_nus.iter().enumerate() {
        let centre = (0.5 - 2.0 * nu) * t;
        let xs: Vec<f64> = samples.iter().map(|s| s.half_flat[k] as f64).collect();
        let mut worst_a = f64::NEG_INFINITY;
        let mut worst_b = f64::NEG_INFINITY;
        for &s in &cmp_grid {
            let (l, le, _) = tail(&xs, |x| x <= centre - s * t13);
            let (r, re, _) = tail(&flat, |x| x <= -s * t13);
            let z = (l - r) / (le * le + re * re).sqrt().max(1.0 / trials as f64);
            worst_a = worst_a.max(z);
            comparisons.push([nu.to_string(), "half-flat below <= flat below".into(), s.to_string(), l.to_string(), r.to_string(), z.to_string()]);
            if nu >= 0.25 {
                let (l, le, _) = tail(&xs, |x| x >= centre - s * t13);
                let (r, re, _) = tail(&quarter_step, |x| x >= -s * t13);
                let z = (l - r) / (le * le + re * re).sqrt().max(1.0 / trials as f64);
                worst_b = worst_b.max(z);
                comparisons.push([nu.to_string(), "half-flat above <= step above".into(), s.to_string(), l.to_string(), r.to_string(), z.to_string()]);
            }
        }
        report.check(&format!("half-flat nu={nu} below is dominated by flat"), worst_a <= sigmas, worst_a, sigmas, "largest excess in standard errors over the s grid");
        if nu >= 0.25 {
            report.check(&format!("half-flat nu={nu} above is dominated by step"), worst_b <= sigmas, worst_b, sigmas, "largest excess in standard errors over the s grid");
        }
    }

    report.stat("step.quarter.centre", (1.0 - 2.0 * 0.25f64.sqrt()) * t);
    report.stat("flat.quarter.centre", (0.5 - 2.0 * 0.25) * t);
    report.plot(plot);
    report.table(tails);
    report.table(fits);
    report.table(comparisons);
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
