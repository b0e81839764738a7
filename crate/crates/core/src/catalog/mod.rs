//! Analytic distributions.
//!
//! Each constructor takes named arguments, checked against the parameter
//! supports and parameterisation groups:
//!
//! ```
//! use compdist::catalog;
//!
//! let g = catalog::gamma(&[("shape", 2.0.into()), ("scale", 0.5.into())]).unwrap();
//! assert_eq!(g.get_parameter("rate").unwrap().as_f64(), Some(2.0));
//! assert!(catalog::gamma(&[("rate", 1.0.into()), ("scale", 2.0.into())]).is_err());
//! ```

use serde::Serialize;

use crate::distribution::{Distribution, Traits, ValueSupport, VariateForm};
use crate::error::{Error, Result};
use crate::params::{Args, ParamRow};

mod continuous;
mod discrete;
mod empirical;
mod kernels;

pub use continuous::{arcsine, exponential, gamma, normal, student_t, uniform};
pub use discrete::{binomial, degenerate, discrete_uniform, poisson};
pub use empirical::{empirical, empirical_mv, empirical_mv_columns, weighted_discrete};
pub use kernels::{epanechnikov, triangular};

/// Generates the boilerplate part of a `Model` impl for a struct with a
/// `params: ParameterSet` field.
macro_rules! model_common {
    () => {
        fn clone_box(&self) -> Box<dyn $crate::distribution::Model> {
            Box::new(self.clone())
        }
        fn params(&self) -> Option<&$crate::params::ParameterSet> {
            Some(&self.params)
        }
        fn params_mut(&mut self) -> Option<&mut $crate::params::ParameterSet> {
            Some(&mut self.params)
        }
    };
}
pub(crate) use model_common;

pub type Constructor = fn(&Args) -> Result<Distribution>;

/// One catalog row.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub short_name: String,
    pub class: &'static str,
    pub traits: Traits,
    pub parameters: Vec<ParamRow>,
    #[serde(skip)]
    pub constructor: Constructor,
}

/// Filter for [`list_catalog`]; `None` fields match everything.
#[derive(Debug, Clone, Copy, Default)]
pub struct CatalogFilter {
    pub value_support: Option<ValueSupport>,
    pub variate_form: Option<VariateForm>,
}

const CLASSES: [(&str, Constructor); 15] = [
    ("Normal", normal),
    ("Binomial", binomial),
    ("Exponential", exponential),
    ("Gamma", gamma),
    ("StudentT", student_t),
    ("Uniform", uniform),
    ("DiscreteUniform", discrete_uniform),
    ("Degenerate", degenerate),
    ("Arcsine", arcsine),
    ("Poisson", poisson),
    ("Empirical", empirical),
    ("EmpiricalMV", empirical_mv),
    ("WeightedDiscrete", weighted_discrete),
    ("Epanechnikov", epanechnikov),
    ("Triangular", triangular),
];

/// Catalog entries in a fixed order, optionally filtered by traits.
pub fn list_catalog(filter: CatalogFilter) -> Vec<CatalogEntry> {
    CLASSES
        .iter()
        .map(|(class, ctor)| {
            let d = ctor(&[]).expect("catalog defaults are valid");
            CatalogEntry {
                name: d.name().to_string(),
                short_name: d.short_name().to_string(),
                class,
                traits: d.traits(),
                parameters: d.parameters().map(|p| p.rows()).unwrap_or_default(),
                constructor: *ctor,
            }
        })
        .filter(|e| {
            filter
                .value_support
                .is_none_or(|v| e.traits.value_support == v)
                && filter
                    .variate_form
                    .is_none_or(|v| e.traits.variate_form == v)
        })
        .collect()
}

/// Constructor for a class name or short name (case-insensitive).
pub fn lookup(class: &str) -> Option<Constructor> {
    CLASSES
        .iter()
        .find(|(c, _)| c.eq_ignore_ascii_case(class))
        .map(|(_, ctor)| *ctor)
        .or_else(|| {
            list_catalog(CatalogFilter::default())
                .into_iter()
                .find(|e| e.short_name.eq_ignore_ascii_case(class))
                .map(|e| e.constructor)
        })
}

/// Builds a catalog distribution by class name.
pub fn build(class: &str, args: &Args) -> Result<Distribution> {
    let ctor = lookup(class)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown distribution '{class}'")))?;
    ctor(args)
}

/// Parameter ids of a class, in definition order.
pub fn parameter_ids(class: &str) -> Result<Vec<String>> {
    let d = build(class, &[])?;
    Ok(d.parameters()?.ids())
}

/// Smallest integer `k` in `[lo, hi]` with `cdf(k) >= p`, found by
/// galloping from `guess` and then bisecting.
pub(crate) fn integer_quantile(
    cdf: impl Fn(f64) -> f64,
    p: f64,
    lo: f64,
    hi: f64,
    guess: f64,
) -> f64 {
    let start = if guess.is_finite() {
        guess.round().clamp(lo, hi)
    } else {
        lo
    };
    let bisect = |mut a: f64, mut b: f64| {
        // cdf(a) < p <= cdf(b)
        while b - a > 1.0 {
            let m = (0.5 * (a + b)).floor();
            if cdf(m) >= p {
                b = m;
            } else {
                a = m;
            }
        }
        b
    };
    let mut step = 1.0;
    if cdf(start) >= p {
        let mut b = start;
        loop {
            if b <= lo {
                return lo;
            }
            let a = (b - step).max(lo);
            if cdf(a) < p {
                return bisect(a, b);
            }
            b = a;
            step *= 2.0;
        }
    } else {
        let mut a = start;
        loop {
            let b = (a + step).min(hi);
            if cdf(b) >= p {
                return bisect(a, b);
            }
            if b >= hi {
                return hi;
            }
            a = b;
            step *= 2.0;
        }
    }
}

/// (r e^{iθ})^n for a complex base given as (re, im).
pub(crate) fn complex_pow(re: f64, im: f64, n: f64) -> (f64, f64) {
    let r = re.hypot(im).powf(n);
    let theta = im.atan2(re) * n;
    (r * theta.cos(), r * theta.sin())
}

/// One or two Newton steps on F(x) = p, kept only when they reduce the
/// residual.
pub(crate) fn polish_quantile(
    x0: f64,
    p: f64,
    cdf: impl Fn(f64) -> f64,
    pdf: impl Fn(f64) -> f64,
) -> f64 {
    let mut x = x0;
    for _ in 0..2 {
        let r = cdf(x) - p;
        let d = pdf(x);
        if !(d > 0.0) || !r.is_finite() {
            break;
        }
        let next = x - r / d;
        if next.is_finite() && (cdf(next) - p).abs() < r.abs() {
            x = next;
        } else {
            break;
        }
    }
    x
}
