//! Half-flat particle (1-alpha)t/2 + eta t^{1/2} at time t. In the t^{1/3}
//! scale, 2s follows GOE Tracy-Widom; in the t^{1/2} scale the law
//! collapses onto xi <= 0.

use std::time::Instant;

use particle_engine::{ClockField, InitialKind, derive_seed, make_initial, sweep_final};
use rmt_reference::{Beta, Method, SpectralCdf, tracy_widom_cdf, tracy_widom_estimate};

use crate::common::{cdf_table, ecdf_overlay, ecdf_table, grid};
use crate::config::Config;
use crate::error::Result;
use crate::report::{Report, Table};
use crate::stats::{Ecdf, Proportion, ks_distance};
use crate::trials::run_trials;

pub fn goe_table(step: f64) -> Result<SpectralCdf> {
    let n = (14.0 / step).round() as usize + 1;
    Ok(SpectralCdf::tabulate(Method::AiryFredholm, "beta=1", &grid(-8.0, 6.0, n), |s| Ok((tracy_widom_cdf(s, 1)?, 0.0)))?)
}

pub fn run(config: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("system-a-limit", config);
    let alpha = config.ranged("alpha", None, |a| a > 0.0 && a < 0.5, "in (0, 1/2)")?;
    let eta: f64 = config.get_or("eta", 0.0)?;
    let t = config.ranged("t", None, |t| t > 0.0, "positive")?;
    let trials: usize = config.get("trials")?;
    let ks_max: f64 = config.get_or("ks_threshold", crate::common::expectation("system_a.ks_bound"))?;
    let y_level: f64 = config.get_or("collapse_level", 0.3)?;
    let y_max: f64 = config.get_or("collapse_threshold", 0.02)?;
    let table_step: f64 = config.get_or("table_step", 0.05)?;
    let seed = config.seed()?;
    let threads = config.threads()?;

    let n = ((1.0 - alpha) * t / 2.0 + eta * t.sqrt()).floor() as i64;
    let centre = (alpha - 0.5) * t - 2.0 * eta * t.sqrt();
    let positions = run_trials(threads, trials, |i| {
        let clocks = ClockField::new(derive_seed(seed, i as u64), t)?;
        Ok(*sweep_final(&make_initial(InitialKind::HalfFlatA, n, t)?, &clocks, t)?.last().unwrap())
    })?;
    let s: Vec<f64> = positions.iter().map(|&x| -(x as f64 - centre) / t.powf(1.0 / 3.0)).collect();
    let y: Vec<f64> = positions.iter().map(|&x| -(x as f64 - centre) / t.sqrt()).collect();

    let goe = goe_table(table_step)?;
    report.check("GOE table monotone and in [0, 1]", goe.is_monotone() && goe.in_unit_interval(), 0.0, 0.0, format!("{} points", goe.evaluations.len()));
    let mut doubling = 0.0f64;
    let mut check = Table::new("goe_node_doubling", &["s", "F_128", "difference_64_128"]);
    for s0 in grid(-6.0, 4.0, 11) {
        let est = tracy_widom_estimate(s0, Beta::Goe, 64, 1.0)?;
        doubling = doubling.max(est.error);
        check.push([s0, est.value, est.error].map(|v| v.to_string()));
    }
    report.check("GOE node doubling", doubling <= 1e-6, doubling, 1e-6, "64 against 128 Gauss-Legendre nodes");

    let ecdf = Ecdf::new(s.clone())?;
    let target = |x: f64| goe.interpolate(2.0 * x);
    let ks = ks_distance(&ecdf, target);
    report.stat("ks", ks);
    report.check("KS against F_GOE(2s)", ks <= ks_max, ks, ks_max, format!("{trials} trials at t = {t}"));

    let collapse = Proportion::count(&y, |&v| v > y_level);
    report.stat("collapse_estimate", collapse.estimate);
    report.check(
        &format!("P(Y > {y_level})"),
        collapse.hi <= y_max,
        collapse.estimate,
        y_max,
        format!("Wilson [{:.4}, {:.4}]", collapse.lo, collapse.hi),
    );

    // Median of F_GOE(2 .) from the table.
    let e = &goe.evaluations;
    let i = e.partition_point(|v| v.f < 0.5).max(1);
    let goe_median = e[i - 1].s + (0.5 - e[i - 1].f) * (e[i].s - e[i - 1].s) / (e[i].f - e[i - 1].f);
    let median = ecdf.median();
    report.stat("median_s", median);
    report.stat("reference_median_s", goe_median / 2.0);
    report.check("median sign", median.signum() == (goe_median / 2.0).signum(), median, goe_median / 2.0, "empirical median of s against median(F_GOE)/2");
    report.stat("mean_y", y.iter().sum::<f64>() / y.len() as f64);

    report.plot(ecdf_overlay("s_ecdf", &format!("rescaled half-flat particle, t = {t}"), &ecdf, target, "F_GOE(2s)"));
    report.table(ecdf_table("s_ecdf", &ecdf, &format!("t={t},alpha={alpha},eta={eta}")));
    report.table(cdf_table("goe_cdf", &[&goe]));
    report.table(check);
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
