//! Decorators and the numerical engine behind them.
//!
//! * CoreStatistics: moments, entropy and generating functions by
//!   generalised expectation.
//! * ExoticStatistics: survival, hazard, cumulative hazard, p-norms and
//!   anti-derivatives.
//! * FunctionImputation: pdf, cdf, quantile and sampling from whichever
//!   kernels the distribution does have.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::distribution::Distribution;
use crate::error::{Error, Result};

mod exotic;
mod expectation;
mod impute;
pub mod quadrature;
pub mod roots;
mod support;

pub use exotic::NormFun;
pub use expectation::MomentType;
pub(crate) use impute::Imputed;

use quadrature::QuadSettings;

/// Tolerances and limits for every numerical method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericOptions {
    pub quad_rel_tol: f64,
    pub quad_abs_tol: f64,
    pub quad_max_subdiv: usize,
    /// Tail mass ignored when an infinite support has to be cut.
    pub infinite_cutoff_prob: f64,
    /// Largest number of support points enumerated.
    pub discrete_cutoff: usize,
    pub root_tol: f64,
    pub root_max_iter: usize,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            quad_rel_tol: 1e-8,
            quad_abs_tol: 1e-12,
            quad_max_subdiv: 200,
            infinite_cutoff_prob: 1e-10,
            discrete_cutoff: 1_000_000,
            root_tol: 1e-10,
            root_max_iter: 200,
        }
    }
}

impl NumericOptions {
    pub fn validate(&self) -> Result<()> {
        let ok = self.quad_rel_tol > 0.0
            && self.quad_abs_tol > 0.0
            && self.quad_max_subdiv > 0
            && self.infinite_cutoff_prob > 0.0
            && self.infinite_cutoff_prob < 0.5
            && self.discrete_cutoff > 0
            && self.root_tol > 0.0
            && self.root_max_iter > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "numeric options must all be positive: {self:?}"
            )))
        }
    }

    /// Sets one option by name; snake_case and camelCase keys are accepted.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::InvalidArgument(format!("invalid value '{value}' for option '{key}'"));
        let num = || value.trim().parse::<f64>().map_err(|_| bad());
        let int = || -> Result<usize> {
            let v = num()?;
            if v >= 1.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(bad())
            }
        };
        let norm: String = key
            .trim()
            .chars()
            .filter(|c| *c != '_' && *c != '-')
            .collect();
        match norm.to_ascii_lowercase().as_str() {
            "quadreltol" | "quadtol" => self.quad_rel_tol = num()?,
            "quadabstol" => self.quad_abs_tol = num()?,
            "quadmaxsubdiv" => self.quad_max_subdiv = int()?,
            "infinitecutoffprob" => self.infinite_cutoff_prob = num()?,
            "discretecutoff" => self.discrete_cutoff = int()?,
            "roottol" => self.root_tol = num()?,
            "rootmaxiter" => self.root_max_iter = int()?,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown numeric option '{key}'"
                )))
            }
        }
        self.validate()
    }

    /// Reads `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse_config(text: &str) -> Result<Self> {
        let mut opts = NumericOptions::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("expected key=value, got '{line}'"))
            })?;
            opts.set(k, v)?;
        }
        Ok(opts)
    }

    pub(crate) fn quad(&self) -> QuadSettings {
        QuadSettings {
            rel_tol: self.quad_rel_tol,
            abs_tol: self.quad_abs_tol,
            max_subdiv: self.quad_max_subdiv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DecoratorKind {
    CoreStatistics,
    ExoticStatistics,
    FunctionImputation,
}

impl DecoratorKind {
    pub const ALL: [DecoratorKind; 3] = [
        DecoratorKind::CoreStatistics,
        DecoratorKind::ExoticStatistics,
        DecoratorKind::FunctionImputation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DecoratorKind::CoreStatistics => "CoreStatistics",
            DecoratorKind::ExoticStatistics => "ExoticStatistics",
            DecoratorKind::FunctionImputation => "FunctionImputation",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            DecoratorKind::CoreStatistics => "numeric moments, entropy and generating functions",
            DecoratorKind::ExoticStatistics => {
                "survival, hazard, cumulative hazard, p-norms, anti-derivatives"
            }
            DecoratorKind::FunctionImputation => "numeric pdf, cdf, quantile and rand",
        }
    }
}

impl fmt::Display for DecoratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "DistributionDecorator" {
            return Err(Error::Unsupported(
                "DistributionDecorator is abstract and cannot be applied".into(),
            ));
        }
        DecoratorKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown decorator '{s}'; expected CoreStatistics, ExoticStatistics or FunctionImputation"
                ))
            })
    }
}

impl Distribution {
    /// Adds capabilities. Analytic methods keep priority over added numerics;
    /// a kind that is already applied is skipped with a warning.
    pub fn decorate(&mut self, kinds: &[DecoratorKind]) -> Result<()> {
        let mut imputation_added = false;
        for k in kinds {
            if self.decorators.contains(k) {
                log::warn!("{} is already decorated with {k}", self.short_name());
                continue;
            }
            self.decorators.push(*k);
            imputation_added |= *k == DecoratorKind::FunctionImputation;
        }
        if imputation_added {
            self.refresh_imputation()?;
        }
        Ok(())
    }

    pub fn decorated(mut self, kinds: &[DecoratorKind]) -> Result<Self> {
        self.decorate(kinds)?;
        Ok(self)
    }

    pub(crate) fn require(&self, kind: DecoratorKind, method: &str) -> Result<()> {
        if self.is_decorated(kind) {
            Ok(())
        } else {
            Err(self.missing(method, &format!("decorate with {kind}")))
        }
    }

    /// Rebuilds cached imputation tables; the build itself only uses the
    /// kernels that are present.
    pub(crate) fn refresh_imputation(&mut self) -> Result<()> {
        self.imputed = None;
        if self.is_decorated(DecoratorKind::FunctionImputation) {
            self.imputed = Imputed::build(self)?.map(Arc::new);
        }
        Ok(())
    }
}

/// Maps a quadrature outcome into the crate's error type.
pub(crate) fn quad_result(
    what: &str,
    out: std::result::Result<quadrature::Quadrature, quadrature::Quadrature>,
) -> Result<f64> {
    match out {
        Ok(q) => Ok(q.value),
        Err(q) => Err(Error::NumericFailure {
            what: what.to_string(),
            estimate: q.value,
            error_bound: q.error,
        }),
    }
}
