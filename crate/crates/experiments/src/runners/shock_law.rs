//! Particle n(t) of the shock system in the diffusive window. In the limit
//! its law is F_GUE(M)(xi + xi_c) for xi >= 0 and nothing below 0, so there
//! is an atom of mass F_GUE(M)(xi_c) at the origin.

use std::time::Instant;

use particle_engine::{ClockField, InitialKind, ShockScaling, Trajectory, derive_seed, make_initial, shock_constants, sweep, sweep_observe};
use rmt_reference::{ContourQuadrature, Method, SpectralCdf, gue_m_cdf, gue_m_cdf_contour};

use crate::common::{cdf_table, ecdf_overlay, grid};
use crate::runners::system_a::goe_table;
use crate::config::Config;
use crate::error::{ExperimentError, Result};
use crate::plot::{Plot, Style};
use crate::report::{Report, Table};
use crate::stats::{Ecdf, Proportion, ks_band, ks_distance, non_increasing};
use crate::trials::run_trials;

struct Sample {
    xi: f64,
    a_ahead: bool,
}

fn simulate(sc: &ShockScaling, trials: usize, seed: u64, threads: usize) -> Result<Vec<Sample>> {
    let (t, n) = (sc.t, sc.n_of_t());
    let kind = InitialKind::Shock { m: sc.m, alpha: sc.alpha };
    let b_kind = InitialKind::SlowStepB { m: sc.m, alpha: sc.alpha };
    run_trials(threads, trials, |i| {
        let clocks = ClockField::new(derive_seed(seed, i as u64), t)?;
        let s = make_initial(kind, n, t)?;
        let a = make_initial(InitialKind::HalfFlatA, n, t)?;
        let b = make_initial(b_kind, n, t)?;
        let obs = sweep_observe(&[&s, &a, &b], &clocks, t, &[])?;
        let (xa, xb) = (obs[1].final_position(n), obs[2].final_position(n));
        Ok(Sample { xi: sc.xi_of_x(obs[0].final_position(n) as f64), a_ahead: xa <= xb })
    })
}

pub fn trajectory_table(name: &str, run: &Trajectory) -> Result<Table> {
    let mut buf = Vec::new();
    particle_engine::export::write_trajectory_csv(run, &mut buf)?;
    let mut r = csv::Reader::from_reader(buf.as_slice());
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    let refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut t = Table::new(name, &refs);
    for rec in r.records() {
        t.push(rec?.iter());
    }
    Ok(t)
}

pub fn run(config: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("shock-law", config);
    let alpha = config.ranged("alpha", None, |a| a > 0.0 && a < 0.5, "in (0, 1/2)")?;
    let m: usize = config.get("m")?;
    if m == 0 {
        return Err(ExperimentError::Config("m must be at least 1".into()));
    }
    let etas: Vec<f64> = config.list("eta")?;
    let t: f64 = config.get("t")?;
    let t_grid: Vec<f64> = config.list_or("t_grid", vec![t])?;
    let trials: usize = config.get("trials")?;
    let seed = config.seed()?;
    let threads = config.threads()?;
    let delta: f64 = config.ranged("delta", Some(0.2), |d| d > 0.0, "positive")?;
    let deltas: Vec<f64> = config.list_or("delta_sweep", vec![0.1, 0.2, 0.4])?;
    let atom_tol: f64 = config.get_or("atom_tolerance", 0.05)?;
    let ks_max: f64 = config.get_or("ks_threshold", 0.08)?;
    let left_max: f64 = config.get_or("left_mass_threshold", 0.03)?;
    let checks: Vec<String> = config.list_or("checks", vec!["atom".into(), "ks".into(), "left_mass".into()])?;
    let wants = |c: &str| checks.iter().any(|x| x == c);

    let hermite = |s: f64| gue_m_cdf(s, m);
    let table_grid = grid(-6.0, 2.0 * (m as f64).sqrt() + 8.0, 1401);
    let f_table = SpectralCdf::tabulate(Method::HermiteProjection, format!("M={m}"), &table_grid, |s| Ok((hermite(s)?, 0.0)))?;
    let f = |s: f64| f_table.interpolate(s);
    let goe = goe_table(0.05)?;

    let mut atoms = Table::new("atom", &["eta", "t", "delta", "estimate", "wilson_lo", "wilson_hi", "target", "a_ahead_estimate"]);
    let mut left = Table::new("left_mass", &["eta", "t", "delta", "estimate", "wilson_lo", "wilson_hi"]);
    for (ei, &eta) in etas.iter().enumerate() {
        let sc = shock_constants(alpha, m, eta, t)?;
        let target = hermite(sc.xi_c)?;
        let contour = gue_m_cdf_contour(sc.xi_c, m, &ContourQuadrature::default())?;
        let tag = format!("eta={eta}");
        report.stat(format!("{tag}.xi_c"), sc.xi_c);
        report.stat(format!("{tag}.sigma"), sc.sigma);
        report.stat(format!("{tag}.target_hermite"), target);
        report.stat(format!("{tag}.target_contour"), contour.value);
        report.check(
            &format!("{tag}: atom target by two methods"),
            (target - contour.value).abs() <= 1e-6,
            (target - contour.value).abs(),
            1e-6,
            "hermite_projection vs contour_fredholm at xi_c",
        );

        let beyond_expected = trials as f64 * (1.0 - f(sc.xi_c + delta));
        if wants("ks") && ks_band(beyond_expected.max(1.0) as usize) > ks_max {
            return Err(ExperimentError::Refused(format!(
                "trial count too small for the requested KS band: about {beyond_expected:.0} samples beyond delta give a band of {:.3} > {ks_max}",
                ks_band(beyond_expected.max(1.0) as usize)
            )));
        }

        let mut left_estimates = Vec::new();
        for (ti, &tt) in t_grid.iter().enumerate() {
            let sct = shock_constants(alpha, m, eta, tt)?;
            let s = simulate(&sct, trials, derive_seed(seed, (1000 * ei + ti) as u64), threads)?;
            let lm = Proportion::count(&s, |x| x.xi < -delta);
            left.push([eta.to_string(), tt.to_string(), delta.to_string(), lm.estimate.to_string(), lm.lo.to_string(), lm.hi.to_string()]);
            left_estimates.push(lm);
            if tt != t {
                continue;
            }

            // The limit laws taken at finite t without letting t go to
            // infinity: xi^A = t^{-1/6} xi_GOE / (2 sigma) from the half-flat
            // part, xi^B with law F_GUE(M)(. + xi_c), independent. The shock
            // particle is the larger of the two in xi units.
            let scale_a = 2.0 * sct.sigma * tt.powf(1.0 / 6.0);
            let fa = |a: f64| goe.interpolate(scale_a * a);
            let fb = |b: f64| f(b + sct.xi_c);
            let pts = grid(-12.0 / scale_a, 12.0 / scale_a, 4001);
            let ahead_pred: f64 = pts.windows(2).map(|w| (fa(w[1]) - fa(w[0])) * fb(0.5 * (w[0] + w[1]))).sum();
            let atom_pred = fa(delta) * fb(delta) - fa(-delta) * fb(-delta);
            let left_pred = fa(-delta) * fb(-delta);
            report.stat(format!("{tag}.finite_t_prediction.a_ahead"), ahead_pred);
            report.stat(format!("{tag}.finite_t_prediction.atom"), atom_pred);
            report.stat(format!("{tag}.finite_t_prediction.left_mass"), left_pred);
            report.note(format!(
                "{tag}: at t = {tt} the limit laws without the t -> infinity step predict atom {atom_pred:.4}, left mass {left_pred:.4}, P(x^A <= x^B) {ahead_pred:.4}"
            ));
            let ahead = Proportion::count(&s, |x| x.a_ahead);
            for &d in &deltas {
                let p = Proportion::count(&s, |x| x.xi.abs() < d);
                atoms.push([eta, tt, d, p.estimate, p.lo, p.hi, target, ahead.estimate].map(|v| v.to_string()));
            }
            let atom = Proportion::count(&s, |x| x.xi.abs() < delta);
            report.stat(format!("{tag}.atom_estimate"), atom.estimate);
            report.stat(format!("{tag}.a_ahead_estimate"), ahead.estimate);
            report.stat(format!("{tag}.median_xi"), Ecdf::new(s.iter().map(|x| x.xi).collect())?.median());
            report.note(format!(
                "{tag}: P(x^A <= x^B) = {:.4} [{:.4}, {:.4}] is the fraction of trials in which particle n had not felt the slow particles",
                ahead.estimate, ahead.lo, ahead.hi
            ));
            if wants("atom") {
                report.check(
                    &format!("{tag}: atom P(|xi| < {delta})"),
                    atom.within(target, atom_tol),
                    atom.estimate,
                    atom_tol,
                    format!("Wilson [{:.4}, {:.4}] against {target:.6} +- {atom_tol}", atom.lo, atom.hi),
                );
            }

            let ecdf = Ecdf::new(s.iter().map(|x| x.xi).collect())?;
            let limit = |x: f64| if x < 0.0 { 0.0 } else { f(x + sc.xi_c) };
            report.plot(ecdf_overlay(&format!("xi_ecdf_eta{ei}"), &format!("rescaled position, t = {tt}, M = {m}, eta = {eta}"), &ecdf, limit, "limit law"));

            let beyond: Vec<f64> = s.iter().map(|x| x.xi).filter(|&x| x > delta).collect();
            let base = f(delta + sc.xi_c);
            let cond = |x: f64| ((f(x + sc.xi_c) - base) / (1.0 - base)).clamp(0.0, 1.0);
            let ks = if beyond.is_empty() { 1.0 } else { ks_distance(&Ecdf::new(beyond.clone())?, cond) };
            report.stat(format!("{tag}.ks_conditional"), ks);
            report.stat(format!("{tag}.samples_beyond_delta"), beyond.len() as f64);
            if wants("ks") {
                report.check(
                    &format!("{tag}: conditional KS beyond delta"),
                    ks <= ks_max,
                    ks,
                    ks_max,
                    format!("{} samples above {delta}", beyond.len()),
                );
            }
        }
        if wants("left_mass") {
            let last = *left_estimates.last().unwrap();
            report.check(
                &format!("{tag}: left mass P(xi < -{delta}) at t = {}", t_grid.last().unwrap()),
                last.hi <= left_max,
                last.estimate,
                left_max,
                format!("Wilson upper edge {:.4}", last.hi),
            );
            let est: Vec<f64> = left_estimates.iter().map(|p| p.estimate).collect();
            report.check(
                &format!("{tag}: left mass non-increasing in t"),
                non_increasing(&est),
                est.last().copied().unwrap_or(f64::NAN),
                f64::NAN,
                format!("{est:?} over t = {t_grid:?}"),
            );
            report.plot(
                Plot::new(&format!("left_mass_eta{ei}"), "P(xi < -delta) against t", "t", "probability")
                    .series("estimate", Style::Points, t_grid.iter().zip(&est).map(|(&a, &b)| (a, b)).collect())
                    .series("threshold", Style::Line, vec![(t_grid[0], left_max), (*t_grid.last().unwrap(), left_max)]),
            );
        }
    }

    // One sample history at the smallest time for inspection.
    let t0 = t_grid.iter().copied().fold(t, f64::min);
    let sc0 = shock_constants(alpha, m, etas[0], t0)?;
    let clocks = ClockField::new(derive_seed(seed, u64::MAX), t0)?;
    let run = sweep(&make_initial(InitialKind::Shock { m, alpha }, sc0.n_of_t(), t0)?, &clocks, t0)?;
    report.table(trajectory_table("trajectory", &run)?);

    report.table(atoms);
    report.table(left);
    report.table(cdf_table("reference_cdf", &[&f_table]));
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
