//! Bracketed root finding for monotone functions.

use crate::error::{Error, Result};

/// Brent's method on `[a, b]`, which must bracket a sign change of `f`.
/// Converges to within `xtol + 4·eps·|x|`.
pub fn brent<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NumericFailure {
            what: "root bracketing".into(),
            estimate: f64::NAN,
            error_bound: (b - a).abs(),
        });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(Error::NumericFailure {
        what: "Brent root search".into(),
        estimate: b,
        error_bound: (c - b).abs(),
    })
}

/// Finds `[lo, hi]` with `g(lo) < 0 <= g(hi)` for a non-decreasing `g`,
/// stepping outward from `start` by doubling steps and never leaving
/// `[min, max]`.
pub fn bracket_increasing<F: Fn(f64) -> f64>(
    g: F,
    start: f64,
    min: f64,
    max: f64,
    max_doublings: usize,
) -> Result<(f64, f64)> {
    let start = start.clamp(min, max);
    let fail = || Error::NumericFailure {
        what: "quantile bracketing".into(),
        estimate: start,
        error_bound: f64::INFINITY,
    };
    if g(start) >= 0.0 {
        let mut hi = start;
        let mut step = 1.0_f64.max(start.abs() * 1e-3);
        for _ in 0..max_doublings {
            let lo = (hi - step).max(min);
            if g(lo) < 0.0 {
                return Ok((lo, hi));
            }
            if lo == min {
                return Ok((min, min));
            }
            hi = lo;
            step *= 2.0;
        }
        Err(fail())
    } else {
        let mut lo = start;
        let mut step = 1.0_f64.max(start.abs() * 1e-3);
        for _ in 0..max_doublings {
            let hi = (lo + step).min(max);
            if g(hi) >= 0.0 {
                return Ok((lo, hi));
            }
            if hi == max {
                return Err(fail());
            }
            lo = hi;
            step *= 2.0;
        }
        Err(fail())
    }
}
