//! M = 1 shock probability from the kernel of the step part plus a rank-one
//! perturbation:
//!
//!   P(x_n(t) >= x) = det(I - K) (1 - <g, f> - <g, (I - K)^{-1} K f>)
//!
//! on the sites {x-1, ..., -2n}. Below, np = n + 1 counts the slow particle.
//!
//!   K(x, y) = \oint_v \oint_w A(w; x) B(v; y) / ((w + v)(w - v - 1))
//!   A(w; x) = e^{t w} (w - 1)^{np-1} w^{-(x+np)}
//!   B(v; y) = (1 + v)^{y+np-1} e^{-t(v+1)} v^{-(np-1)} (1 + 2v)
//!   f(x)    = \oint_0 A(w; x)
//!   g(y)    = \oint (1+u)^{y+np-1} e^{-t(u+1)} u^{-(np-1)} (1+2u) / ((u+1-alpha)(u+alpha))
//!
//! where the g contour surrounds -1 and alpha-1 but not -alpha or 0. Each
//! radius is picked to minimise the peak modulus of its integrand; when the
//! w circle for a row ends up on the wrong side of -v or v+1, the residue
//! there is added back by hand.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::FredholmError;
use crate::quadrature::ContourRule;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockParams {
    pub n: u32,
    pub t: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockPieces {
    pub det: f64,
    pub scalar: f64,
    pub resolvent: f64,
    pub value: f64,
    pub condition: f64,
}

const C1: Complex64 = Complex64::new(1.0, 0.0);

fn max_log_on_circle(f: &impl Fn(Complex64) -> f64, center: f64, r: f64) -> f64 {
    (0..64)
        .map(|k| f(Complex64::new(center, 0.0) + Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / 64.0)))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn best_radius(f: impl Fn(Complex64) -> f64, lo: f64, hi: f64, avoid: &[(f64, f64)]) -> f64 {
    let steps = 60;
    let mut best = (f64::INFINITY, lo);
    for i in 0..steps {
        let r = (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (steps - 1) as f64).exp();
        if avoid.iter().any(|&(a, b)| a < r && r < b) {
            continue;
        }
        let v = max_log_on_circle(&f, 0.0, r);
        if v < best.0 {
            best = (v, r);
        }
    }
    best.1
}

fn check(p: &ShockParams) -> Result<(), FredholmError> {
    if p.n == 0 || !(p.t > 0.0) || !(p.alpha > 0.0 && p.alpha < 0.5) {
        return Err(FredholmError::InvalidParameter(format!(
            "need n >= 1, t > 0, alpha in (0, 1/2); got n={}, t={}, alpha={}",
            p.n, p.t, p.alpha
        )));
    }
    Ok(())
}

fn sites(x: i64, p: &ShockParams) -> Vec<i64> {
    (-2 * p.n as i64..x).rev().collect()
}

fn log_a(w: Complex64, x: i64, np: f64, t: f64) -> Complex64 {
    t * w + (np - 1.0) * (w - 1.0).ln() - (x as f64 + np) * w.ln()
}

fn f_vector(sites: &[i64], p: &ShockParams, nodes: usize) -> DVector<Complex64> {
    let np = p.n as f64 + 1.0;
    DVector::from_iterator(
        sites.len(),
        sites.iter().map(|&x| {
            let r = best_radius(|w| log_a(w, x, np, p.t).re, 0.01, 3.0, &[]);
            let c = ContourRule::circle(Complex64::new(0.0, 0.0), r, nodes);
            c.nodes.iter().zip(&c.weights).map(|(&w, &wt)| wt * log_a(w, x, np, p.t).exp()).sum()
        }),
    )
}

fn g_vector(sites: &[i64], p: &ShockParams, nodes: usize) -> DVector<Complex64> {
    let (a, t, np) = (p.alpha, p.t, p.n as f64 + 1.0);
    DVector::from_iterator(
        sites.len(),
        sites.iter().map(|&y| {
            let lg = |u: Complex64| {
                (y as f64 + np - 1.0) * (u + 1.0).ln() - t * (u + 1.0) - (np - 1.0) * u.ln() - ((u + 1.0 - a) * (u + a)).ln()
            };
            // Left crossing below -1, right crossing between alpha-1 and -alpha.
            let mut best = (f64::INFINITY, 0.0, 0.0);
            for i in 0..15 {
                let right = (a - 1.0 + 0.02) + (1.0 - 2.0 * a - 0.04) * i as f64 / 14.0;
                for j in 0..15 {
                    let left = -1.0 - (0.02f64.ln() + (2.0f64.ln() - 0.02f64.ln()) * j as f64 / 14.0).exp();
                    let (c, r) = (0.5 * (right + left), 0.5 * (right - left));
                    let v = max_log_on_circle(&|u| lg(u).re, c, r);
                    if v < best.0 {
                        best = (v, c, r);
                    }
                }
            }
            let c = ContourRule::circle(Complex64::new(best.1, 0.0), best.2, nodes);
            c.nodes.iter().zip(&c.weights).map(|(&u, &wt)| wt * (lg(u).exp() * (1.0 + 2.0 * u))).sum()
        }),
    )
}

fn kernel_matrix(sites: &[i64], p: &ShockParams, nodes: usize) -> DMatrix<Complex64> {
    let (t, np) = (p.t, p.n as f64 + 1.0);
    let s = sites.len();
    let log_b = |v: Complex64, y: i64| (y as f64 + np - 1.0) * (v + 1.0).ln() - t * (v + 1.0) - (np - 1.0) * v.ln();
    let ymid = sites[s / 2];
    let rv = best_radius(|v| log_b(v, ymid).re, 0.01, 0.75, &[]);
    let vc = ContourRule::circle(Complex64::new(0.0, 0.0), rv, nodes);
    let b_mat = DMatrix::from_fn(nodes, s, |k, j| {
        let v = vc.nodes[k];
        vc.weights[k] * log_b(v, sites[j]).exp() * (1.0 + 2.0 * v)
    });

    let mut inner = DMatrix::<Complex64>::zeros(s, nodes);
    let avoid = [(0.9 * rv, 1.1 * rv), ((1.0 - rv) * 0.93, (1.0 + rv) * 1.07)];
    for (i, &x) in sites.iter().enumerate() {
        let rw = best_radius(|w| log_a(w, x, np, t).re, 0.01, 3.0, &avoid);
        let wc = ContourRule::circle(Complex64::new(0.0, 0.0), rw, nodes);
        let a_row: Vec<Complex64> = wc.nodes.iter().zip(&wc.weights).map(|(&w, &wt)| wt * log_a(w, x, np, t).exp()).collect();
        let xe = x as f64 + np;
        for k in 0..nodes {
            let v = vc.nodes[k];
            let mut acc: Complex64 = wc.nodes.iter().zip(&a_row).map(|(&w, &aw)| aw / ((w + v) * (w - v - 1.0))).sum();
            if rw < v.norm() {
                acc -= (-t * v).exp() * (-C1 - v).powf(np - 1.0) * (-v).powf(-xe) / (1.0 + 2.0 * v);
            }
            if (v + 1.0).norm() < rw {
                acc -= (t * (v + 1.0)).exp() * v.powf(np - 1.0) * (v + 1.0).powf(-xe) / (1.0 + 2.0 * v);
            }
            inner[(i, k)] = acc;
        }
    }
    inner * b_mat
}

fn condition_number(m: &DMatrix<Complex64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    max / min
}

/// The three factors and their product, without any conditioning check.
pub fn shock_direct_parts(x: i64, p: &ShockParams, nodes: usize) -> Result<ShockPieces, FredholmError> {
    check(p)?;
    let s = sites(x, p);
    if s.is_empty() {
        return Ok(ShockPieces { det: 1.0, scalar: 0.0, resolvent: 0.0, value: 1.0, condition: 1.0 });
    }
    let k = kernel_matrix(&s, p, nodes);
    let f = f_vector(&s, p, nodes);
    let g = g_vector(&s, p, nodes);
    let mut ik = -k.clone();
    for i in 0..s.len() {
        ik[(i, i)] += 1.0;
    }
    let condition = condition_number(&ik);
    let lu = ik.lu();
    let det = lu.determinant().re;
    let kf = &k * &f;
    let sol = lu.solve(&kf).ok_or(FredholmError::IllConditioned { condition: f64::INFINITY, threshold: 0.0 })?;
    let scalar = g.transpose() * &f;
    let resolvent = g.transpose() * sol;
    let scalar = scalar[(0, 0)].re;
    let resolvent = resolvent[(0, 0)].re;
    if !det.is_finite() || !scalar.is_finite() || !resolvent.is_finite() {
        return Err(FredholmError::NonFinite);
    }
    Ok(ShockPieces { det, scalar, resolvent, value: det * (1.0 - scalar - resolvent), condition })
}

/// P(x_n(t) >= x). Fails when the resolvent solve is too ill-conditioned
/// to trust.
pub fn shock_direct_cdf(x: i64, p: &ShockParams, nodes: usize, max_condition: f64) -> Result<ShockPieces, FredholmError> {
    let pieces = shock_direct_parts(x, p, nodes)?;
    if pieces.condition > max_condition {
        return Err(FredholmError::IllConditioned { condition: pieces.condition, threshold: max_condition });
    }
    Ok(pieces)
}

/// Only <g, f>, which stays computable long after the kernel part does not.
pub fn shock_scalar_term(x: i64, p: &ShockParams, nodes: usize) -> Result<f64, FredholmError> {
    check(p)?;
    let s = sites(x, p);
    if s.is_empty() {
        return Ok(0.0);
    }
    let f = f_vector(&s, p, nodes);
    let g = g_vector(&s, p, nodes);
    Ok((g.transpose() * f)[(0, 0)].re)
}
