//! Largest eigenvalue of GUE(M), density proportional to exp(-Tr H^2 / 2).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand_core::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

/// Dense Hermitian sample: N(0,1) diagonal, off-diagonal real and imaginary
/// parts N(0,1/2).
pub fn sample_gue_matrix<R: Rng + ?Sized>(m: usize, rng: &mut R) -> DMatrix<Complex64> {
    let mut h = DMatrix::<Complex64>::zeros(m, m);
    let half = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..m {
        let d: f64 = StandardNormal.sample(rng);
        h[(i, i)] = Complex64::new(d, 0.0);
        for j in 0..i {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            let v = Complex64::new(re * half, im * half);
            h[(i, j)] = v;
            h[(j, i)] = v.conj();
        }
    }
    h
}

pub fn sample_gue_max<R: Rng + ?Sized>(m: usize, rng: &mut R) -> f64 {
    assert!(m >= 1, "GUE(M) needs M >= 1");
    if m == 1 {
        return StandardNormal.sample(rng);
    }
    sample_gue_matrix(m, rng).symmetric_eigenvalues().iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Same law through the tridiagonal model: N(0,1) diagonal and
/// off-diagonal entries sqrt(Gamma(k, 1)) for k = M-1, ..., 1.
pub fn sample_gue_max_tridiagonal<R: Rng + ?Sized>(m: usize, rng: &mut R) -> f64 {
    assert!(m >= 1, "GUE(M) needs M >= 1");
    let diag: Vec<f64> = (0..m).map(|_| StandardNormal.sample(rng)).collect();
    let off: Vec<f64> = (1..m)
        .rev()
        .map(|k| Gamma::new(k as f64, 1.0).expect("positive shape").sample(rng).sqrt())
        .collect();
    largest_tridiagonal_eigenvalue(&diag, &off)
}

/// Number of eigenvalues below x (Sturm sequence).
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let denom = if q == 0.0 { f64::EPSILON * (off[i - 1].abs() + 1.0) } else { q };
        q = diag[i] - x - off[i - 1] * off[i - 1] / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

pub fn largest_tridiagonal_eigenvalue(diag: &[f64], off: &[f64]) -> f64 {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    while hi - lo > 1e-12 * (1.0 + hi.abs()) {
        let mid = 0.5 * (lo + hi);
        if count_below(diag, off, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
