use std::sync::OnceLock;

use rmt_reference::SpectralCdf;

use crate::config::Config;
use crate::plot::{Plot, Style};
use crate::report::Table;
use crate::stats::Ecdf;

pub fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Frozen regression bounds shipped with the crate.
pub fn expectation(key: &str) -> f64 {
    static TABLE: OnceLock<Config> = OnceLock::new();
    TABLE
        .get_or_init(|| Config::parse(include_str!("../expectations.conf")).expect("expectations file parses"))
        .get(key)
        .unwrap_or_else(|_| panic!("no frozen expectation {key}"))
}

pub fn cdf_table(name: &str, cdfs: &[&SpectralCdf]) -> Table {
    let mut t = Table::new(name, &["s", "F", "method", "params", "error_estimate"]);
    for c in cdfs {
        for e in &c.evaluations {
            t.push([e.s.to_string(), e.f.to_string(), c.method.as_str().into(), c.params.clone(), e.error.to_string()]);
        }
    }
    t
}

/// ECDF as a CDF table with the method column set to `mc_sampling`.
pub fn ecdf_table(name: &str, ecdf: &Ecdf, params: &str) -> Table {
    let mut t = Table::new(name, &["s", "F", "method", "params", "error_estimate"]);
    let n = ecdf.len() as f64;
    for (i, &v) in ecdf.values().iter().enumerate() {
        if i + 1 < ecdf.len() && ecdf.values()[i + 1] == v {
            continue;
        }
        let f = (i + 1) as f64 / n;
        t.push([v.to_string(), f.to_string(), "mc_sampling".into(), params.into(), (f * (1.0 - f) / n).sqrt().to_string()]);
    }
    t
}

pub fn ecdf_points(ecdf: &Ecdf) -> Vec<(f64, f64)> {
    let n = ecdf.len() as f64;
    let mut out = Vec::new();
    for (i, &v) in ecdf.values().iter().enumerate() {
        if i + 1 < ecdf.len() && ecdf.values()[i + 1] == v {
            continue;
        }
        out.push((v, (i + 1) as f64 / n));
    }
    out
}

pub fn ecdf_overlay(name: &str, title: &str, ecdf: &Ecdf, reference: impl Fn(f64) -> f64, label: &str) -> Plot {
    let lo = ecdf.quantile(0.001);
    let hi = ecdf.quantile(0.999);
    let pad = 0.1 * (hi - lo).max(1e-9);
    let xs = grid(lo - pad, hi + pad, 200);
    Plot::new(name, title, "s", "F(s)")
        .series("empirical", Style::Step, ecdf_points(ecdf))
        .series(label, Style::Line, xs.iter().map(|&x| (x, reference(x))).collect())
}
