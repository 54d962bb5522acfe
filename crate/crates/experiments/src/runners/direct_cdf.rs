//! The M = 1 shock probability P(x_n(t) >= x) straight from the kernel of
//! the step part with a rank-one correction, against simulation. The
//! resolvent of that kernel becomes ill-conditioned as t grows, which is
//! tabulated alongside.

use std::time::Instant;

use fredholm::{FredholmError, ShockParams, shock_direct_cdf, shock_direct_parts, shock_scalar_term};
use particle_engine::{ClockField, InitialKind, derive_seed, make_initial, shock_constants, sweep_final};

use crate::config::Config;
use crate::error::Result;
use crate::plot::{Plot, Style};
use crate::report::{Report, Table};
use crate::stats::Proportion;
use crate::trials::run_trials;

fn normal_tail(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

pub fn run(config: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("direct-cdf", config);
    let alpha = config.ranged("alpha", None, |a| a > 0.0 && a < 0.5, "in (0, 1/2)")?;
    let n: u32 = config.get("n")?;
    let t = config.ranged("t", None, |t| t > 0.0, "positive")?;
    let xs: Vec<i64> = config.list("x")?;
    let trials: usize = config.get("trials")?;
    let nodes: usize = config.get_or("nodes", 256)?;
    let max_condition: f64 = config.get_or("max_condition", 1e12)?;
    let sigmas: f64 = config.get_or("se_multiple", 3.0)?;
    let cond_ts: Vec<f64> = config.list_or("condition_t", vec![25.0, 50.0, 100.0, 200.0])?;
    let cond_xi: f64 = config.get_or("condition_xi", 1.0)?;
    let x_table_from: i64 = config.get_or("x_table_from", -40)?;
    let x_table_to: i64 = config.get_or("x_table_to", -4)?;
    let scalar_t: f64 = config.get_or("scalar_t", 400.0)?;
    let scalar_xi: f64 = config.get_or("scalar_xi", 1.0)?;
    let scalar_tol: f64 = config.get_or("scalar_tolerance", 0.05)?;
    let seed = config.seed()?;
    let threads = config.threads()?;
    let p = ShockParams { n, t, alpha };

    let finals = run_trials(threads, trials, |i| {
        let clocks = ClockField::new(derive_seed(seed, i as u64), t)?;
        Ok(*sweep_final(&make_initial(InitialKind::Shock { m: 1, alpha }, n as i64, t)?, &clocks, t)?.last().unwrap())
    })?;

    let mut mc = Table::new("direct_vs_mc", &["n", "t", "alpha", "x", "value", "error_estimate", "condition_number", "mc_estimate", "mc_standard_error", "z"]);
    let mut worst_z = 0.0f64;
    let mut worst_nodes = 0.0f64;
    for &x in &xs {
        let v = shock_direct_cdf(x, &p, nodes, max_condition)?;
        let v2 = shock_direct_cdf(x, &p, 2 * nodes, max_condition)?;
        let est = Proportion::count(&finals, |&y| y >= x);
        let se = (v.value * (1.0 - v.value) / trials as f64).sqrt();
        let z = if se > 0.0 { (est.estimate - v.value) / se } else if est.estimate == v.value { 0.0 } else { f64::INFINITY };
        worst_z = worst_z.max(z.abs());
        worst_nodes = worst_nodes.max((v.value - v2.value).abs() / se);
        mc.push([n as f64, t, alpha, x as f64, v.value, (v.value - v2.value).abs(), v.condition, est.estimate, se, z].map(|c| c.to_string()));
    }
    report.check("direct formula against simulation", worst_z <= sigmas, worst_z, sigmas, format!("largest |z| over x = {xs:?}, {trials} trials"));
    report.check(
        "quadrature error below the sampling error",
        worst_nodes <= 1.0,
        worst_nodes,
        1.0,
        format!("largest change from {nodes} to {} nodes, in Monte Carlo standard errors", 2 * nodes),
    );

    // Where along x the evaluation stays usable at this (n, t).
    let mut xt = Table::new("direct_x_scan", &["n", "t", "alpha", "x", "value", "error_estimate", "condition_number", "det", "scalar", "resolvent"]);
    let mut first_det = f64::NAN;
    let mut last_usable = x_table_from;
    for x in x_table_from..=x_table_to {
        let a = shock_direct_parts(x, &p, nodes)?;
        let b = shock_direct_parts(x, &p, 2 * nodes)?;
        if first_det.is_nan() {
            first_det = a.det;
        }
        if a.condition <= max_condition {
            last_usable = x;
        }
        xt.push([n as f64, t, alpha, x as f64, a.value, (a.value - b.value).abs(), a.condition, a.det, a.scalar, a.resolvent].map(|c| c.to_string()));
    }
    report.stat("last_x_within_condition_limit", last_usable as f64);
    report.check("determinant near 1 far to the left", first_det >= 1.0 - 1e-4, first_det, 1.0 - 1e-4, format!("det(I - K) at x = {x_table_from}"));

    // Conditioning at fixed xi as t grows.
    let mut ct = Table::new("condition_growth", &["n", "t", "alpha", "x", "value", "error_estimate", "condition_number"]);
    let mut conds = Vec::new();
    for &tt in &cond_ts {
        let sc = shock_constants(alpha, 1, 0.0, tt)?;
        let pp = ShockParams { n: sc.n_of_t() as u32, t: tt, alpha };
        let x = sc.x_of_xi(cond_xi).round() as i64;
        let a = shock_direct_parts(x, &pp, nodes)?;
        let b = shock_direct_parts(x, &pp, 2 * nodes)?;
        ct.push([pp.n as f64, tt, alpha, x as f64, a.value, (a.value - b.value).abs(), a.condition].map(|c| c.to_string()));
        conds.push(a.condition);
        match shock_direct_cdf(x, &pp, nodes, max_condition) {
            Err(FredholmError::IllConditioned { condition, .. }) => {
                report.note(format!("t = {tt}: refused at condition {condition:.3e}"));
            }
            Err(e) => return Err(e.into()),
            Ok(_) => {}
        }
    }
    let growth = conds.last().unwrap() / conds[0];
    report.stat("condition_growth_factor", growth);
    report.check(
        "resolvent condition number grows with t",
        conds.windows(2).all(|w| w[1] > w[0]),
        growth,
        1.0,
        format!("{:?} at xi = {cond_xi} over t = {cond_ts:?}", conds.iter().map(|c| format!("{c:.3e}")).collect::<Vec<_>>()),
    );
    report.plot(
        Plot::new("condition_growth", "condition number of I - K at fixed xi", "t", "log10 condition")
            .series("condition", Style::Points, cond_ts.iter().zip(&conds).map(|(t, c)| (*t, c.log10())).collect()),
    );

    let sc = shock_constants(alpha, 1, 0.0, scalar_t)?;
    let x = sc.x_of_xi(scalar_xi).round() as i64;
    let scalar = shock_scalar_term(x, &ShockParams { n: sc.n_of_t() as u32, t: scalar_t, alpha }, nodes)?;
    let reference = normal_tail(scalar_xi);
    report.stat("scalar_term", scalar);
    report.check("scalar term near the Gaussian tail", (scalar - reference).abs() <= scalar_tol, (scalar - reference).abs(), scalar_tol, format!("t = {scalar_t}, x = {x}, 1 - Phi({scalar_xi}) = {reference:.6}"));

    report.table(mc);
    report.table(xt);
    report.table(ct);
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
