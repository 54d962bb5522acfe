use fredholm::composite_gauss_legendre;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rmt_reference::*;

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn ks_to(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    d
}

fn hermite_table(m: usize) -> SpectralCdf {
    let g = grid(-6.0, 2.0 * (m as f64).sqrt() + 6.0, 4001);
    SpectralCdf::tabulate(Method::HermiteProjection, format!("M={m}"), &g, |s| Ok((gue_m_cdf(s, m)?, 0.0))).unwrap()
}

#[test]
fn hermite_and_contour_agree() {
    let q = ContourQuadrature::default();
    let mut worst = 0.0f64;
    for m in [1, 2, 3, 5] {
        for s in grid(-4.0, 4.0, 17) {
            let h = gue_m_cdf(s, m).unwrap();
            let c = gue_m_cdf_contour(s, m, &q).unwrap();
            worst = worst.max((h - c.value).abs());
        }
    }
    assert!(worst <= 1e-6, "max difference {worst:e}");
}

#[test]
fn contour_value_does_not_depend_on_eps() {
    let a = gue_m_cdf_contour(0.0, 2, &ContourQuadrature::default().with_eps(0.5)).unwrap();
    let b = gue_m_cdf_contour(0.0, 2, &ContourQuadrature::default().with_eps(1.0)).unwrap();
    assert!((a.value - b.value).abs() <= 1e-8, "{a:?} {b:?}");
}

#[test]
fn cdfs_are_monotone_on_grids() {
    let g = grid(-6.0, 4.0, 41);
    for beta in [1, 2] {
        let t = SpectralCdf::tabulate(Method::AiryFredholm, format!("beta={beta}"), &g, |s| {
            let e = tracy_widom_estimate(s, Beta::from_index(beta)?, 64, 1e-8)?;
            Ok((e.value, e.error))
        })
        .unwrap();
        assert!(t.is_monotone() && t.in_unit_interval());
    }
    for m in [1, 2, 5] {
        let t = SpectralCdf::tabulate(Method::HermiteProjection, format!("M={m}"), &grid(-6.0, 8.0, 57), |s| {
            let e = gue_m_cdf_estimate(s, m)?;
            Ok((e.value, e.error))
        })
        .unwrap();
        assert!(t.is_monotone() && t.in_unit_interval());
    }
}

#[test]
fn tracy_widom_moments() {
    // Known means and variances of the GUE and GOE edge laws.
    for (beta, mean, var) in [(2, -1.771086807411, 0.8131947928329), (1, -1.2065335745820, 1.607781034581)] {
        let (xs, ws) = composite_gauss_legendre(-9.0, 10.0, 38, 12);
        let b = Beta::from_index(beta).unwrap();
        let (mut m1, mut m2) = (0.0, 0.0);
        // E X = \int_0^oo (1 - F) - \int_-oo^0 F, E X^2 = \int 2|x| (1 - F or F).
        for (&x, &w) in xs.iter().zip(&ws) {
            let f = tracy_widom_estimate(x, b, 64, 1e-8).unwrap().value;
            if x >= 0.0 {
                m1 += w * (1.0 - f);
                m2 += w * 2.0 * x * (1.0 - f);
            } else {
                m1 -= w * f;
                m2 += w * 2.0 * -x * f;
            }
        }
        assert!((m1 - mean).abs() < 1e-7, "beta={beta}: mean {m1}");
        assert!((m2 - m1 * m1 - var).abs() < 1e-7, "beta={beta}: variance {}", m2 - m1 * m1);
    }
}

#[test]
fn airy_node_doubling_is_stable() {
    for beta in [Beta::Goe, Beta::Gue] {
        for s in grid(-6.0, 4.0, 11) {
            assert!(tracy_widom_estimate(s, beta, 64, 1e-6).unwrap().error <= 1e-6);
        }
    }
}

#[test]
fn one_by_one_sample_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 200_000;
    let pos = (0..n).filter(|_| sample_gue_max(1, &mut rng) > 0.0).count();
    let p = pos as f64 / n as f64;
    assert!((p - 0.5).abs() <= 3.0 / (n as f64).sqrt());
}

#[test]
fn two_by_two_samples_match_projection() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut xs: Vec<f64> = (0..1_000_000).map(|_| sample_gue_max(2, &mut rng)).collect();
    let table = hermite_table(2);
    let d = ks_to(&mut xs, |s| table.interpolate(s));
    assert!(d <= 0.002, "KS {d}");
}

#[test]
fn small_samples_match_projection() {
    for m in [3, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + m as u64);
        let n = 100_000;
        let mut xs: Vec<f64> = (0..n).map(|_| sample_gue_max(m, &mut rng)).collect();
        let table = hermite_table(m);
        let d = ks_to(&mut xs, |s| table.interpolate(s));
        assert!(d <= 1.63 / (n as f64).sqrt(), "M={m}: KS {d}");
        let mut ys: Vec<f64> = (0..n).map(|_| sample_gue_max_tridiagonal(m, &mut rng)).collect();
        let d = ks_to(&mut ys, |s| table.interpolate(s));
        assert!(d <= 1.63 / (n as f64).sqrt(), "M={m} tridiagonal: KS {d}");
    }
}

#[test]
fn large_gue_edge_is_tracy_widom() {
    let m = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let scale = (m as f64).powf(1.0 / 6.0);
    let mut xs: Vec<f64> = (0..100_000)
        .map(|_| scale * (sample_gue_max_tridiagonal(m, &mut rng) - 2.0 * (m as f64).sqrt()))
        .collect();
    let table = SpectralCdf::tabulate(Method::AiryFredholm, "beta=2", &grid(-8.0, 6.0, 1401), |s| Ok((tracy_widom_cdf(s, 2)?, 0.0))).unwrap();
    let d = ks_to(&mut xs, |s| table.interpolate(s));
    assert!(d <= 0.02, "KS {d}");
}

