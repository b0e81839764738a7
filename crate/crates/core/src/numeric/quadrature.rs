//! Globally adaptive Gauss–Kronrod (7/15) quadrature with bisection of the
//! worst interval, plus variable transforms for semi-infinite ranges.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Outcome of an integration: estimate, error bound and number of bisections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdiv: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod rule on `[a, b]` with the QUADPACK error estimate.
fn kronrod15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();
    let fc = f(centre);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..3 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_g += WG[j] * (f1 + f2);
        res_k += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_k += WGK[jtwm1] * (f1 + f2);
        res_abs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, error)
}

fn adaptive_finite<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    s: QuadSettings,
) -> Result<Quadrature, Quadrature> {
    let (value, error) = kronrod15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    let mut subdivisions = 0;
    loop {
        let tol = s.abs_tol.max(s.rel_tol * total.abs());
        if total_err <= tol {
            break;
        }
        if subdivisions >= s.max_subdiv || !total.is_finite() {
            return Err(Quadrature {
                value: total,
                error: total_err,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine precision
            heap.push(worst);
            return Err(Quadrature {
                value: total,
                error: total_err,
                subdivisions,
            });
        }
        let (v1, e1) = kronrod15(f, worst.a, mid);
        let (v2, e2) = kronrod15(f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        subdivisions += 1;
    }
    // re-sum to shed accumulated cancellation in the running totals
    let value: f64 = heap.iter().map(|seg| seg.value).sum();
    let error: f64 = heap.iter().map(|seg| seg.error).sum();
    Ok(Quadrature {
        value,
        error,
        subdivisions,
    })
}

/// Integrates `f` over `[a, b]`; either bound may be infinite. `Err` carries
/// the best estimate when the tolerance was not met.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    settings: QuadSettings,
) -> Result<Quadrature, Quadrature> {
    integrate_dyn(&f, a, b, settings)
}

fn integrate_dyn(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    settings: QuadSettings,
) -> Result<Quadrature, Quadrature> {
    if a.is_nan() || b.is_nan() {
        return Err(Quadrature {
            value: f64::NAN,
            error: f64::INFINITY,
            subdivisions: 0,
        });
    }
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            subdivisions: 0,
        });
    }
    if a > b {
        let flip = |q: Quadrature| Quadrature {
            value: -q.value,
            ..q
        };
        return integrate_dyn(f, b, a, settings).map(flip).map_err(flip);
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => {
            // x = a + (b - a)(3t^2 - 2t^3) flattens integrable endpoint
            // singularities such as 1/sqrt(x - a)
            let w = b - a;
            let g = |t: f64| {
                let x = a + w * t * t * (3.0 - 2.0 * t);
                let v = f(x.clamp(a, b)) * 6.0 * w * t * (1.0 - t);
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            };
            adaptive_finite(&g, 0.0, 1.0, settings)
        }
        (true, false) => {
            let g = |t: f64| {
                let u = 1.0 - t;
                guarded(f, a + t / u) / (u * u)
            };
            adaptive_finite(&g, 0.0, 1.0, settings)
        }
        (false, true) => {
            let g = |t: f64| guarded(f, b - (1.0 - t) / t) / (t * t);
            adaptive_finite(&g, 0.0, 1.0, settings)
        }
        (false, false) => {
            let split = QuadSettings {
                abs_tol: 0.5 * settings.abs_tol,
                ..settings
            };
            let left = integrate_dyn(f, f64::NEG_INFINITY, 0.0, split);
            let right = integrate_dyn(f, 0.0, f64::INFINITY, split);
            let combine = |l: Quadrature, r: Quadrature| Quadrature {
                value: l.value + r.value,
                error: l.error + r.error,
                subdivisions: l.subdivisions + r.subdivisions,
            };
            match (left, right) {
                (Ok(l), Ok(r)) => Ok(combine(l, r)),
                (Ok(l) | Err(l), Ok(r) | Err(r)) => Err(combine(l, r)),
            }
        }
    }
}

/// Far tails of a transformed integrand: an infinite abscissa or a 0·∞
/// product contributes nothing.
fn guarded(f: &dyn Fn(f64) -> f64, x: f64) -> f64 {
    if !x.is_finite() {
        return 0.0;
    }
    let v = f(x);
    if v.is_nan() {
        0.0
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const S: QuadSettings = QuadSettings {
        rel_tol: 1e-10,
        abs_tol: 1e-13,
        max_subdiv: 200,
    };

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, S).unwrap();
        assert_abs_diff_eq!(q.value, 0.0, epsilon = 1e-13);
        let q = integrate(|x| x.powi(4), -1.0, 1.0, S).unwrap();
        assert_abs_diff_eq!(q.value, 0.4, epsilon = 1e-14);
    }

    #[test]
    fn gaussian_over_real_line() {
        let pdf = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let q = integrate(pdf, f64::NEG_INFINITY, f64::INFINITY, S).unwrap();
        assert_abs_diff_eq!(q.value, 1.0, epsilon = 1e-10);
        let q = integrate(|x| x * x * pdf(x), f64::NEG_INFINITY, f64::INFINITY, S).unwrap();
        assert_abs_diff_eq!(q.value, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn endpoint_singularity() {
        let arcsine = |x: f64| 1.0 / (std::f64::consts::PI * (x * (1.0 - x)).sqrt());
        let q = integrate(arcsine, 0.0, 1.0, S).unwrap();
        assert_abs_diff_eq!(q.value, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn reversed_and_empty_ranges() {
        let q = integrate(|_| 1.0, 3.0, 1.0, S).unwrap();
        assert_abs_diff_eq!(q.value, -2.0, epsilon = 1e-14);
        assert_eq!(integrate(|_| 1.0, 1.0, 1.0, S).unwrap().value, 0.0);
    }

    #[test]
    fn divergent_integral_reports_failure() {
        let out = integrate(|x: f64| 1.0 / x, 1.0, f64::INFINITY, S);
        assert!(out.is_err());
    }
}
