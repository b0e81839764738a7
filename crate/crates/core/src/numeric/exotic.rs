//! Survival-type functions, p-norms and anti-derivatives.

use std::fmt;
use std::str::FromStr;

use crate::distribution::{Distribution, Kernel, ValueSupport};
use crate::error::{Error, Result};

use super::DecoratorKind;

/// Functions accepted by [`Distribution::p_norm`] and
/// [`Distribution::anti_deriv`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormFun {
    Pdf,
    Cdf,
    Survival,
}

impl FromStr for NormFun {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pdf" => Ok(NormFun::Pdf),
            "cdf" => Ok(NormFun::Cdf),
            "survival" => Ok(NormFun::Survival),
            _ => Err(Error::InvalidArgument(format!("unknown function '{s}'"))),
        }
    }
}

impl fmt::Display for NormFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormFun::Pdf => "pdf",
            NormFun::Cdf => "cdf",
            NormFun::Survival => "survival",
        })
    }
}

fn maybe_log(v: f64, log: bool) -> f64 {
    if log {
        v.ln()
    } else {
        v
    }
}

impl Distribution {
    fn check_exotic(&self, method: &str, xs: &[f64]) -> Result<()> {
        self.require(DecoratorKind::ExoticStatistics, method)?;
        if !self.is_univariate() {
            return Err(Error::Unsupported(format!(
                "{method} is only defined for univariate distributions"
            )));
        }
        // reuse the pdf/cdf domain check
        self.cdf_domain_check(xs)
    }

    fn cdf_domain_check(&self, xs: &[f64]) -> Result<()> {
        let t = self.type_set();
        let bad: Vec<String> = xs
            .iter()
            .filter(|x| !t.contains_num(**x))
            .map(|x| crate::sets::format_number(*x))
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Domain {
                points: format!("{{{}}}", bad.join(", ")),
                domain: t.to_string(),
            })
        }
    }

    /// S(x) = 1 - F(x).
    pub fn survival(&self, xs: &[f64], log: bool) -> Result<Vec<f64>> {
        self.check_exotic("survival", xs)?;
        xs.iter()
            .map(|x| Ok(maybe_log(self.survival_at(*x)?, log)))
            .collect()
    }

    /// h(x) = f(x) / S(x); +∞ where S(x) = 0.
    pub fn hazard(&self, xs: &[f64], log: bool) -> Result<Vec<f64>> {
        self.check_exotic("hazard", xs)?;
        xs.iter()
            .map(|x| Ok(maybe_log(self.hazard_at(*x)?, log)))
            .collect()
    }

    /// H(x) = -ln S(x).
    pub fn cum_hazard(&self, xs: &[f64], log: bool) -> Result<Vec<f64>> {
        self.check_exotic("cumHazard", xs)?;
        xs.iter()
            .map(|x| Ok(maybe_log(-self.survival_at(*x)?.ln(), log)))
            .collect()
    }

    /// Survival from the analytic cdf when there is one, else by summing or
    /// integrating the pdf above `x`.
    pub(crate) fn survival_at(&self, x: f64) -> Result<f64> {
        if self.has_kernel(Kernel::Cdf) || !self.can_pdf() {
            return Ok(self.ccdf_at(x)?.clamp(0.0, 1.0));
        }
        if self.is_enumerable() {
            let (points, masses) = self.support_masses()?;
            let finite = self.support().finite_values().is_some();
            let s = if finite {
                points
                    .iter()
                    .zip(&masses)
                    .filter(|(p, _)| **p > x)
                    .map(|(_, m)| m)
                    .sum::<f64>()
            } else {
                1.0 - points
                    .iter()
                    .zip(&masses)
                    .filter(|(p, _)| **p <= x)
                    .map(|(_, m)| m)
                    .sum::<f64>()
            };
            return Ok(s.clamp(0.0, 1.0));
        }
        if self.value_support() != ValueSupport::Continuous {
            return Ok(self.ccdf_at(x)?.clamp(0.0, 1.0));
        }
        let hi = self.support().upper();
        if x >= hi {
            return Ok(0.0);
        }
        let lo = self.support().lower().max(x);
        let v = self.integrate_checked("survival", |t| self.pdf_at(t), lo, hi)?;
        Ok(v.clamp(0.0, 1.0))
    }

    pub(crate) fn hazard_at(&self, x: f64) -> Result<f64> {
        let s = self.survival_at(x)?;
        if s <= 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok(self.pdf_at(x)? / s)
    }

    fn norm_value(&self, fun: NormFun, x: f64) -> Result<f64> {
        match fun {
            NormFun::Pdf => self.pdf_at(x),
            NormFun::Cdf => self.cdf_at(x),
            NormFun::Survival => self.survival_at(x),
        }
    }

    /// Finite evaluation range: the given bounds, else the support bounds
    /// with infinite ends cut at extreme quantiles.
    fn eval_range(&self, lower: Option<f64>, upper: Option<f64>) -> Result<(f64, f64)> {
        let s = self.support();
        let eps = self.options.infinite_cutoff_prob;
        let lo = match lower {
            Some(a) => a,
            None if s.lower().is_finite() => s.lower(),
            None => self.quantile_at(eps)?,
        };
        let hi = match upper {
            Some(b) => b,
            None if s.upper().is_finite() => s.upper(),
            None => self.quantile_at(1.0 - eps)?,
        };
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "evaluation range [{lo}, {hi}] must be finite"
            )));
        }
        Ok((lo, hi))
    }

    /// (∫ |fun(x)|^p dx)^(1/p) over a finite range. For discrete
    /// distributions the pdf norm is a sum over support points and cdf or
    /// survival norms integrate the step function exactly.
    pub fn p_norm(&self, fun: NormFun, p: f64, range: Option<(f64, f64)>) -> Result<f64> {
        self.require(DecoratorKind::ExoticStatistics, "pNorm")?;
        if !(p >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "p must be at least 1, got {p}"
            )));
        }
        let (lo, hi) = self.eval_range(range.map(|r| r.0), range.map(|r| r.1))?;
        let total = if self.is_enumerable() {
            if fun == NormFun::Pdf {
                let (points, masses) = self.support_masses()?;
                points
                    .iter()
                    .zip(&masses)
                    .filter(|(x, _)| **x >= lo && **x <= hi)
                    .map(|(_, m)| m.abs().powf(p))
                    .sum()
            } else {
                self.step_integral(fun, lo, hi, |v| v.abs().powf(p))?
            }
        } else {
            self.integrate_checked(
                "pNorm",
                |x| Ok(self.norm_value(fun, x)?.abs().powf(p)),
                lo,
                hi,
            )?
        };
        Ok(total.powf(1.0 / p))
    }

    /// ∫ₐᵇ fun(x) dx for the cdf or survival function; missing bounds default
    /// to the (cut) support bounds.
    pub fn anti_deriv(&self, fun: NormFun, lower: Option<f64>, upper: Option<f64>) -> Result<f64> {
        self.require(DecoratorKind::ExoticStatistics, "antiDeriv")?;
        if fun == NormFun::Pdf {
            return Err(Error::InvalidArgument(
                "anti-derivatives are taken of the cdf or survival function".into(),
            ));
        }
        let (lo, hi) = self.eval_range(lower, upper)?;
        if self.is_enumerable() {
            self.step_integral(fun, lo, hi, |v| v)
        } else {
            self.integrate_checked("antiDeriv", |x| self.norm_value(fun, x), lo, hi)
        }
    }

    /// Exact integral of a right-continuous step function that only jumps at
    /// support points.
    fn step_integral(&self, fun: NormFun, lo: f64, hi: f64, h: impl Fn(f64) -> f64) -> Result<f64> {
        if hi <= lo {
            return Ok(0.0);
        }
        let points = self.support_points()?;
        let mut cuts = vec![lo];
        cuts.extend(points.iter().copied().filter(|x| *x > lo && *x < hi));
        cuts.push(hi);
        let mut total = 0.0;
        for w in cuts.windows(2) {
            total += h(self.norm_value(fun, w[0])?) * (w[1] - w[0]);
        }
        Ok(total)
    }
}
