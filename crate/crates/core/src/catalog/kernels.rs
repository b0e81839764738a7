use rand::RngCore;

use crate::distribution::{Distribution, Kernel, Model, ValueSupport};
use crate::error::Result;
use crate::params::{Args, ParameterSet};
use crate::sets::MathSet;

use super::model_common;

macro_rules! kernel_common {
    () => {
        model_common!();

        fn type_set(&self) -> MathSet {
            MathSet::Reals
        }
        fn support(&self) -> MathSet {
            MathSet::closed(-1.0, 1.0)
        }
        fn value_support(&self) -> ValueSupport {
            ValueSupport::Continuous
        }
        fn symmetric(&self) -> bool {
            true
        }
        fn provides(&self, k: Kernel) -> bool {
            k != Kernel::Rand
        }
        fn rand(&self, _rng: &mut dyn RngCore) -> Result<f64> {
            Err(crate::error::Error::Unsupported("rand kernel".into()))
        }
        fn mean(&self) -> Option<f64> {
            Some(0.0)
        }
        fn skewness(&self) -> Option<f64> {
            Some(0.0)
        }
    };
}

fn empty_params(args: &Args) -> Result<ParameterSet> {
    ParameterSet::build(vec![], vec![], None, args)
}

// ---------------------------------------------------------- Epanechnikov

#[derive(Debug, Clone)]
struct EpanechnikovModel {
    params: ParameterSet,
}

impl Model for EpanechnikovModel {
    kernel_common!();

    fn pdf(&self, x: f64) -> Result<f64> {
        Ok(if x.abs() <= 1.0 {
            0.75 * (1.0 - x * x)
        } else {
            0.0
        })
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        let x = x.clamp(-1.0, 1.0);
        Ok((0.75 * x - 0.25 * x.powi(3) + 0.5).clamp(0.0, 1.0))
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        Ok(2.0 * ((2.0 * p - 1.0).asin() / 3.0).sin())
    }
    fn variance(&self) -> Option<f64> {
        Some(0.2)
    }
    fn kurtosis(&self) -> Option<f64> {
        Some(-6.0 / 7.0)
    }
    fn mgf(&self, t: f64) -> Option<f64> {
        if t.abs() < 1e-4 {
            return Some(1.0 + 0.1 * t * t);
        }
        Some(3.0 * (t * t.cosh() - t.sinh()) / t.powi(3))
    }
    fn cf(&self, t: f64) -> Option<(f64, f64)> {
        if t.abs() < 1e-4 {
            return Some((1.0 - 0.1 * t * t, 0.0));
        }
        Some((3.0 * (t.sin() - t * t.cos()) / t.powi(3), 0.0))
    }
}

/// Epanechnikov kernel on [-1, 1]. Takes no parameters.
pub fn epanechnikov(args: &Args) -> Result<Distribution> {
    Ok(Distribution::new(
        "Epanechnikov Kernel",
        "Epan",
        "Epanechnikov Kernel.",
        EpanechnikovModel {
            params: empty_params(args)?,
        },
    ))
}

// ------------------------------------------------------------ Triangular

#[derive(Debug, Clone)]
struct TriangularModel {
    params: ParameterSet,
}

impl Model for TriangularModel {
    kernel_common!();

    fn pdf(&self, x: f64) -> Result<f64> {
        Ok((1.0 - x.abs()).max(0.0))
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        let x = x.clamp(-1.0, 1.0);
        Ok(if x < 0.0 {
            0.5 * (1.0 + x).powi(2)
        } else {
            1.0 - 0.5 * (1.0 - x).powi(2)
        })
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        Ok(if p < 0.5 {
            (2.0 * p).sqrt() - 1.0
        } else {
            1.0 - (2.0 * (1.0 - p)).sqrt()
        })
    }
    fn variance(&self) -> Option<f64> {
        Some(1.0 / 6.0)
    }
    fn kurtosis(&self) -> Option<f64> {
        Some(-0.6)
    }
    fn entropy(&self, base: f64) -> Option<f64> {
        Some(0.5 / base.ln())
    }
    fn mgf(&self, t: f64) -> Option<f64> {
        if t.abs() < 1e-4 {
            return Some(1.0 + t * t / 12.0);
        }
        Some(2.0 * (t.cosh() - 1.0) / (t * t))
    }
    fn cf(&self, t: f64) -> Option<(f64, f64)> {
        if t.abs() < 1e-4 {
            return Some((1.0 - t * t / 12.0, 0.0));
        }
        Some((2.0 * (1.0 - t.cos()) / (t * t), 0.0))
    }
}

/// Triangular kernel on [-1, 1]. Takes no parameters.
pub fn triangular(args: &Args) -> Result<Distribution> {
    Ok(Distribution::new(
        "Triangular Kernel",
        "Tri",
        "Triangular Kernel.",
        TriangularModel {
            params: empty_params(args)?,
        },
    ))
}
