//! Ai and Ai'. Maclaurin series for |x| <= 7 and the large-argument
//! expansions beyond; at |x| = 7 the series loses about five digits to
//! cancellation and the asymptotic series is already good to ~1e-11.

use std::f64::consts::PI;

use crate::error::RmtError;

pub const CROSSOVER: f64 = 7.0;

const C1: f64 = 0.355_028_053_887_817_239;
const C2: f64 = 0.258_819_403_792_806_798;

pub fn airy_ai(x: f64) -> Result<f64, RmtError> {
    airy(x).map(|v| v.0)
}

pub fn airy_ai_prime(x: f64) -> Result<f64, RmtError> {
    airy(x).map(|v| v.1)
}

/// (Ai(x), Ai'(x)) for x in [-40, 40].
pub fn airy(x: f64) -> Result<(f64, f64), RmtError> {
    if !(-40.0..=40.0).contains(&x) {
        return Err(RmtError::AiryDomain(x));
    }
    Ok(airy_unchecked(x))
}

/// Like `airy`, but returns 0 to the right of the table instead of failing;
/// there Ai is below 1e-74 and only ever multiplies into kernels.
pub(crate) fn airy_unchecked(x: f64) -> (f64, f64) {
    if x > 40.0 {
        (0.0, 0.0)
    } else if x.abs() <= CROSSOVER {
        series(x)
    } else if x > 0.0 {
        decaying(x)
    } else {
        oscillating(-x)
    }
}

fn series(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    let (mut f, mut g, mut fp, mut gp) = (0.0, 0.0, 0.0, 0.0);
    let (mut a, mut b, mut p, mut q) = (1.0, x, 0.5 * x * x, 1.0);
    for k in 0..200 {
        let kf = k as f64;
        f += a;
        g += b;
        fp += p;
        gp += q;
        a *= x3 / ((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        b *= x3 / ((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        p *= x3 / ((3.0 * kf + 3.0) * (3.0 * kf + 5.0));
        q *= x3 / ((3.0 * kf + 1.0) * (3.0 * kf + 3.0));
        if a.abs() + b.abs() + p.abs() + q.abs() < 1e-18 * (f.abs() + g.abs() + 1e-300) {
            break;
        }
    }
    (C1 * f - C2 * g, C1 * fp - C2 * gp)
}

/// u_k and v_k of the large-argument expansions.
fn coefficients(count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    for k in 1..count {
        let kf = k as f64;
        let next = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        u.push(next);
        v.push(-(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * next);
    }
    (u, v)
}

/// Partial sums of sum_k c_k (sign)^k z^{-k} stopped at the smallest term.
fn truncated(c: &[f64], zeta: f64, sign: f64) -> f64 {
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    let mut power = 1.0;
    for &ck in c {
        let term = ck * power;
        if term.abs() > last {
            break;
        }
        sum += term;
        last = term.abs();
        power *= sign / zeta;
    }
    sum
}

fn decaying(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (u, v) = coefficients(40);
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    (e / q * truncated(&u, zeta, -1.0), -e * q * truncated(&v, zeta, -1.0))
}

fn oscillating(y: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * y.powf(1.5);
    let (u, v) = coefficients(40);
    // Split into even and odd parts, each alternating in k.
    let split = |c: &[f64]| -> (f64, f64) {
        let even: Vec<f64> = c.iter().step_by(2).copied().collect();
        let odd: Vec<f64> = c.iter().skip(1).step_by(2).copied().collect();
        let z2 = zeta * zeta;
        (truncated(&even, z2, -1.0), truncated(&odd, z2, -1.0) / zeta)
    };
    let (ue, uo) = split(&u);
    let (ve, vo) = split(&v);
    let phase = zeta - PI / 4.0;
    let (s, c) = phase.sin_cos();
    let q = y.powf(0.25);
    let ai = (c * ue + s * uo) / (PI.sqrt() * q);
    let aip = q / PI.sqrt() * (s * ve - c * vo);
    (ai, aip)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed at 30 digits.
    const TABLE: &[(f64, f64, f64)] = &[
        (-40.0, -0.0459339234379572496, -1.38909087526071838),
        (-25.0, 0.163526578830429469, 0.96237885138769741),
        (-10.0, 0.0402412384864431907, 0.996265044132790056),
        (-7.5, 0.321775716380647875, 0.318809506698554596),
        (-7.0, 0.184280835250505637, -0.771008168410126548),
        (-6.9, 0.101687997739764825, -0.871031058686387409),
        (-3.0, -0.378814293677658074, 0.314583769216598814),
        (-1.0, 0.535560883292352119, -0.0101605671166452094),
        (0.0, 0.355028053887817239, -0.258819403792806798),
        (0.5, 0.23169360648083349, -0.224910532664683893),
        (2.0, 0.0349241304232743791, -0.0530903844336536317),
        (5.0, 0.000108344428136074417, -0.000247413890868462476),
        (6.99, 7.69558851518973454e-7, -2.06126667054970334e-6),
        (7.01, 7.29391397547368989e-7, -1.95636596778446994e-6),
        (10.0, 1.10475325528986859e-10, -3.52063367673892364e-10),
        (20.0, 1.69167286867054031e-27, -7.58639162574835496e-27),
        (40.0, 6.36574265855291491e-75, -4.03001797760067804e-74),
    ];

    #[test]
    fn matches_reference_table() {
        for &(x, ai, aip) in TABLE {
            let (a, b) = airy(x).unwrap();
            assert!((a - ai).abs() <= 1e-10, "Ai({x}) = {a}, want {ai}");
            assert!((b - aip).abs() <= 1e-10, "Ai'({x}) = {b}, want {aip}");
        }
    }

    #[test]
    fn value_at_zero() {
        assert!((airy_ai(0.0).unwrap() - 0.3550280539).abs() < 1e-10);
    }

    #[test]
    fn ode_residual() {
        // Ai'' from a sixth-order central difference of Ai'.
        let h = 1e-2;
        let d = |x: f64| airy_ai_prime(x).unwrap();
        for i in 0..=200 {
            let x = -10.0 + 0.1 * i as f64;
            let d2 = (d(x + 3.0 * h) - 9.0 * d(x + 2.0 * h) + 45.0 * d(x + h) - 45.0 * d(x - h) + 9.0 * d(x - 2.0 * h)
                - d(x - 3.0 * h))
                / (60.0 * h);
            let r = (d2 - x * airy_ai(x).unwrap()).abs();
            assert!(r <= 1e-8, "x = {x}: residual {r:e}");
        }
    }

    #[test]
    fn positive_and_decreasing_on_the_right() {
        assert!(airy_ai(5.0).unwrap() > 0.0);
        let mut prev = airy_ai(0.0).unwrap();
        for i in 1..=500 {
            let v = airy_ai(i as f64 * 0.01).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn domain() {
        assert_eq!(airy(40.5), Err(RmtError::AiryDomain(40.5)));
        assert!(airy(-41.0).is_err());
    }
}
