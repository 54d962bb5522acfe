//! The finite-time kernel in shock scaling against K_GUE(M)(s1 + xi_c,
//! s2 + xi_c) on a grid, for increasing t.

use std::time::Instant;

use fredholm::{RescaledParams, RescaledQuadrature, rescaled_kernel};
use nalgebra::DMatrix;
use num_complex::Complex64;
use particle_engine::shock_constants;
use rmt_reference::{ContourQuadrature, gue_kernel};

use crate::common::grid;
use crate::config::Config;
use crate::error::{ExperimentError, Result};
use crate::plot::{Plot, Style};
use crate::report::{Report, Table};
use crate::stats::strictly_decreasing;

/// 2-norm condition number of I - K on the grid with trapezoid weights.
fn grid_condition(k: &DMatrix<Complex64>, h: f64) -> f64 {
    let n = k.nrows();
    let a = DMatrix::from_fn(n, n, |i, j| {
        let w = if j == 0 || j + 1 == n { h / 2.0 } else { h };
        Complex64::new((i == j) as u8 as f64, 0.0) - k[(i, j)] * w
    });
    let sv = a.singular_values();
    sv.max() / sv.min()
}

pub fn run(config: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("kernel-limit", config);
    let alpha = config.ranged("alpha", None, |a| a > 0.0 && a < 0.5, "in (0, 1/2)")?;
    let m: u32 = config.get("m")?;
    if m == 0 {
        return Err(ExperimentError::Config("m must be at least 1".into()));
    }
    let eta: f64 = config.get_or("eta", 0.0)?;
    let t_grid: Vec<f64> = config.list("t_grid")?;
    let points: usize = config.get_or("grid_points", 9)?;
    let s_lo: f64 = config.get_or("s_min", -2.0)?;
    let s_hi: f64 = config.get_or("s_max", 2.0)?;
    let bound: f64 = config.get_or("final_gap_bound", crate::common::expectation("kernel_limit.final_gap_bound"))?;
    let w_nodes: usize = config.get_or("w_nodes", 400)?;
    let z_nodes: usize = config.get_or("z_nodes", 200)?;

    let s = grid(s_lo, s_hi, points);
    let h = (s_hi - s_lo) / (points - 1).max(1) as f64;
    let q = RescaledQuadrature { w_nodes, z_nodes, ..Default::default() };
    let q2 = RescaledQuadrature { w_nodes: 2 * w_nodes, ..q };
    let gq = ContourQuadrature::default();
    let mut table = Table::new("kernel", &["t", "alpha", "m", "eta", "s1", "s2", "value", "target", "error_estimate", "condition_number"]);
    let mut gaps = Vec::new();
    for &t in &t_grid {
        let xi_c = shock_constants(alpha, m as usize, eta, t)?.xi_c;
        let p = RescaledParams { t, alpha, eta, m };
        let k = rescaled_kernel(&s, &s, &p, &q)?;
        let k2 = rescaled_kernel(&s, &s, &p, &q2)?;
        let cond = grid_condition(&k.values, h);
        let mut gap = 0.0f64;
        let mut err = 0.0f64;
        for (i, &a) in k.s1.iter().enumerate() {
            for (j, &b) in k.s2.iter().enumerate() {
                let target = gue_kernel(a + xi_c, b + xi_c, m as usize, &gq).re;
                let v = k.values[(i, j)];
                let e = (v - k2.values[(i, j)]).norm();
                gap = gap.max((v - target).norm());
                err = err.max(e);
                table.push([t, alpha, m as f64, eta, a, b, v.re, target, e, cond].map(|x| x.to_string()));
            }
        }
        report.stat(format!("t={t}.gap"), gap);
        report.stat(format!("t={t}.quadrature_error"), err);
        report.stat(format!("t={t}.condition"), cond);
        if err > 0.1 * gap {
            report.note(format!("t={t}: quadrature error {err:.2e} is not small against the gap {gap:.2e}"));
        }
        gaps.push(gap);
    }
    report.check("sup gap strictly decreasing in t", strictly_decreasing(&gaps), *gaps.last().unwrap(), f64::NAN, format!("{gaps:?}"));
    report.check("final gap below the frozen bound", *gaps.last().unwrap() <= bound, *gaps.last().unwrap(), bound, "");
    report.plot(
        Plot::new("kernel_gap", "sup |K_t - K_GUE| against t", "log10 t", "log10 gap")
            .series("gap", Style::Points, t_grid.iter().zip(&gaps).map(|(t, g)| (t.log10(), g.log10())).collect()),
    );
    report.table(table);
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
