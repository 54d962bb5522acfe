//! Largest eigenvalue of an M x M GUE matrix three ways: Hermite
//! projection, the contour-integral kernel, and sampling.

use std::time::Instant;

use particle_engine::derive_seed;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rmt_reference::{ContourQuadrature, Method, SpectralCdf, gue_m_cdf_contour, gue_m_cdf_estimate, sample_gue_max};

use crate::common::{cdf_table, ecdf_overlay, grid};
use crate::config::Config;
use crate::error::{ExperimentError, Result};
use crate::report::{Report, Table};
use crate::stats::{Ecdf, ks_distance};
use crate::trials::run_trials;

const CHUNK: usize = 1000;

pub fn hermite_table(m: usize, points: usize) -> Result<SpectralCdf> {
    let g = grid(-6.0, 2.0 * (m as f64).sqrt() + 6.0, points);
    Ok(SpectralCdf::tabulate(Method::HermiteProjection, format!("M={m}"), &g, |s| {
        let e = gue_m_cdf_estimate(s, m)?;
        Ok((e.value, e.error))
    })?)
}

pub fn run(config: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("gue-cdf", config);
    let ms: Vec<usize> = config.list("m")?;
    if ms.contains(&0) {
        return Err(ExperimentError::Config("m must be at least 1".into()));
    }
    let s_min: f64 = config.get_or("s_min", -4.0)?;
    let s_max: f64 = config.get_or("s_max", 4.0)?;
    let s_points: usize = config.get_or("s_points", 17)?;
    let samples: usize = config.get("samples")?;
    let method_tol: f64 = config.get_or("method_tolerance", 1e-6)?;
    let ks_max: f64 = config.get_or("ks_threshold", 0.01)?;
    let eps_list: Vec<f64> = config.list_or("eps", vec![0.5, 1.0, 2.0])?;
    let seed = config.seed()?;
    let threads = config.threads()?;

    let s_grid = grid(s_min, s_max, s_points);
    let mut diffs = Table::new("method_difference", &["m", "s", "hermite", "contour", "difference", "contour_error"]);
    let mut cdfs = Vec::new();
    for (k, &m) in ms.iter().enumerate() {
        let herm = SpectralCdf::tabulate(Method::HermiteProjection, format!("M={m}"), &s_grid, |s| {
            let e = gue_m_cdf_estimate(s, m)?;
            Ok((e.value, e.error))
        })?;
        let q = ContourQuadrature::default();
        let cont = SpectralCdf::tabulate(Method::ContourFredholm, format!("M={m},eps={}", q.eps), &s_grid, |s| {
            let e = gue_m_cdf_contour(s, m, &q)?;
            Ok((e.value, e.error))
        })?;
        let mut worst = 0.0f64;
        for (h, c) in herm.evaluations.iter().zip(&cont.evaluations) {
            worst = worst.max((h.f - c.f).abs());
            diffs.push([m as f64, h.s, h.f, c.f, (h.f - c.f).abs(), c.error].map(|v| v.to_string()));
        }
        report.check(&format!("M={m}: hermite against contour"), worst <= method_tol, worst, method_tol, format!("{s_points} points on [{s_min}, {s_max}]"));

        let mut eps_worst = 0.0f64;
        for &eps in &eps_list {
            let qe = ContourQuadrature::default().with_eps(eps);
            for s in [s_min, 0.0, s_max] {
                let a = gue_m_cdf_contour(s, m, &qe)?.value;
                let b = gue_m_cdf_contour(s, m, &q)?.value;
                eps_worst = eps_worst.max((a - b).abs());
            }
        }
        report.check(&format!("M={m}: contour does not depend on its offset"), eps_worst <= 1e-8, eps_worst, 1e-8, format!("eps in {eps_list:?}"));

        let chunks = samples.div_ceil(CHUNK);
        let base = derive_seed(seed, k as u64);
        let draws: Vec<Vec<f64>> = run_trials(threads, chunks, |c| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(base, c as u64));
            let len = CHUNK.min(samples - c * CHUNK);
            Ok((0..len).map(|_| sample_gue_max(m, &mut rng)).collect())
        })?;
        let ecdf = Ecdf::new(draws.into_iter().flatten().collect())?;
        let table = hermite_table(m, 4001)?;
        let ks = ks_distance(&ecdf, |s| table.interpolate(s));
        report.stat(format!("M={m}.ks"), ks);
        report.check(&format!("M={m}: sampled largest eigenvalue"), ks <= ks_max, ks, ks_max, format!("{samples} samples"));
        report.plot(ecdf_overlay(&format!("gue_m{m}"), &format!("largest eigenvalue, M = {m}"), &ecdf, |s| table.interpolate(s), "hermite projection"));
        let mc = SpectralCdf::tabulate(Method::McSampling, format!("M={m},n={samples}"), &s_grid, |s| {
            let f = ecdf.eval(s);
            Ok((f, (f * (1.0 - f) / samples as f64).sqrt()))
        })?;
        cdfs.push(herm);
        cdfs.push(cont);
        cdfs.push(mc);
    }
    let refs: Vec<&SpectralCdf> = cdfs.iter().collect();
    report.table(cdf_table("gue_cdf", &refs));
    report.table(diffs);
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
