//! Generalised expectation and the CoreStatistics quantities built on it.

use std::fmt;
use std::str::FromStr;

use crate::distribution::{Distribution, ValueSupport};
use crate::error::{Error, Result};

use super::DecoratorKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentType {
    Raw,
    Central,
    Standardised,
}

impl FromStr for MomentType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "raw" | "crude" => Ok(MomentType::Raw),
            "central" => Ok(MomentType::Central),
            "standardised" | "standardized" | "standard" => Ok(MomentType::Standardised),
            _ => Err(Error::InvalidArgument(format!("unknown moment type '{s}'"))),
        }
    }
}

impl fmt::Display for MomentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MomentType::Raw => "raw",
            MomentType::Central => "central",
            MomentType::Standardised => "standardised",
        })
    }
}

impl Distribution {
    /// E[f(X)].
    pub fn gen_exp(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        self.require(DecoratorKind::CoreStatistics, "genExp")?;
        self.expectation(&f)
    }

    /// k-th moment about zero, about the mean, or about the mean scaled by
    /// the k-th power of the standard deviation.
    pub fn kth_moment(&self, k: u32, kind: MomentType) -> Result<f64> {
        self.require(DecoratorKind::CoreStatistics, "kthmoment")?;
        if k == 0 {
            return Err(Error::InvalidArgument(
                "moment order must be positive".into(),
            ));
        }
        let k = k as i32;
        match kind {
            MomentType::Raw => self.expectation(&|x| x.powi(k)),
            MomentType::Central => {
                let mu = self.mean()?;
                self.expectation(&|x| (x - mu).powi(k))
            }
            MomentType::Standardised => {
                let mu = self.mean()?;
                let m2 = self.expectation(&|x| (x - mu).powi(2))?;
                let mk = self.expectation(&|x| (x - mu).powi(k))?;
                Ok(mk / m2.powf(f64::from(k) / 2.0))
            }
        }
    }

    /// E[g(X)] by summation or quadrature, with no decorator check.
    pub(crate) fn expectation(&self, g: &dyn Fn(f64) -> f64) -> Result<f64> {
        if !self.is_univariate() {
            return Err(Error::Unsupported(
                "expectations are only computed for univariate distributions".into(),
            ));
        }
        if self.is_enumerable() {
            let (points, masses) = self.support_masses()?;
            return Ok(points
                .iter()
                .zip(&masses)
                .filter(|(_, m)| **m != 0.0)
                .map(|(x, m)| g(*x) * m)
                .sum());
        }
        match self.value_support() {
            ValueSupport::Continuous if self.can_pdf() => self.integrate_density("expectation", g),
            _ => {
                // E[g(X)] = ∫₀¹ g(Q(u)) du
                if !self.can_quantile() {
                    return Err(self.missing("expectation", "needs a pdf or a quantile function"));
                }
                self.integrate_checked("expectation", |u| Ok(g(self.quantile_at(u)?)), 0.0, 1.0)
            }
        }
    }

    pub(crate) fn numeric_mean(&self) -> Result<f64> {
        self.expectation(&|x| x)
    }

    pub(crate) fn numeric_variance(&self) -> Result<f64> {
        let mu = self.mean()?;
        self.expectation(&|x| (x - mu).powi(2))
    }

    pub(crate) fn numeric_skewness(&self) -> Result<f64> {
        let mu = self.mean()?;
        let m2 = self.expectation(&|x| (x - mu).powi(2))?;
        let m3 = self.expectation(&|x| (x - mu).powi(3))?;
        Ok(m3 / m2.powf(1.5))
    }

    pub(crate) fn numeric_kurtosis(&self) -> Result<f64> {
        let mu = self.mean()?;
        let m2 = self.expectation(&|x| (x - mu).powi(2))?;
        let m4 = self.expectation(&|x| (x - mu).powi(4))?;
        Ok(m4 / (m2 * m2) - 3.0)
    }

    pub(crate) fn numeric_entropy(&self, base: f64) -> Result<f64> {
        let ln_b = base.ln();
        if self.is_enumerable() {
            let (_, masses) = self.support_masses()?;
            return Ok(masses
                .iter()
                .filter(|m| **m > 0.0)
                .map(|m| -m * m.ln())
                .sum::<f64>()
                / ln_b);
        }
        if self.value_support() != ValueSupport::Continuous || !self.can_pdf() {
            return Err(self.missing("entropy", "needs a density or a mass function"));
        }
        let breaks = self.density_breaks();
        let mut total = 0.0;
        for w in breaks.windows(2) {
            total += self.integrate_checked(
                "entropy",
                |x| {
                    let d = self.pdf_at(x)?;
                    Ok(if d > 0.0 { -d * d.ln() } else { 0.0 })
                },
                w[0],
                w[1],
            )?;
        }
        Ok(total / ln_b)
    }

    pub(crate) fn numeric_mgf(&self, t: f64) -> Result<f64> {
        self.expectation(&|x| (t * x).exp())
    }

    pub(crate) fn numeric_cf(&self, t: f64) -> Result<(f64, f64)> {
        Ok((
            self.expectation(&|x| (t * x).cos())?,
            self.expectation(&|x| (t * x).sin())?,
        ))
    }

    pub(crate) fn numeric_pgf(&self, z: f64) -> Result<f64> {
        if self.value_support() != ValueSupport::Discrete {
            return Err(Error::Unsupported(
                "the pgf is only defined for discrete distributions".into(),
            ));
        }
        self.expectation(&|x| z.powf(x))
    }
}
