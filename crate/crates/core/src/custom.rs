//! User-defined distributions from a type, a support and pdf and/or cdf
//! closures.
//!
//! ```
//! use compdist::custom::CustomBuilder;
//! use compdist::{DecoratorKind, MathSet};
//!
//! let u = CustomBuilder::new("Discrete Uniform")
//!     .type_set(MathSet::Integers)
//!     .support(MathSet::int_range(1, 10))
//!     .pdf(|_, _| 0.1)
//!     .decorators(&[DecoratorKind::FunctionImputation])
//!     .build()
//!     .unwrap();
//! assert!((u.cdf(&[3.0]).unwrap()[0] - 0.3).abs() < 1e-12);
//! ```

use std::fmt;
use std::sync::Arc;

use crate::distribution::{Distribution, Kernel, Model, ValueSupport};
use crate::error::{Error, Result};
use crate::numeric::DecoratorKind;
use crate::params::ParameterSet;
use crate::sets::MathSet;

/// A user kernel: evaluated at a point with the current parameters.
pub type UserFn = Arc<dyn Fn(&[f64], &ParameterSet) -> f64 + Send + Sync>;

#[derive(Clone)]
struct CustomModel {
    type_set: MathSet,
    support: MathSet,
    value_support: ValueSupport,
    symmetric: bool,
    pdf: Option<UserFn>,
    cdf: Option<UserFn>,
    quantile: Option<UserFn>,
    params: ParameterSet,
}

impl fmt::Debug for CustomModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomModel")
            .field("type_set", &self.type_set)
            .field("support", &self.support)
            .field("value_support", &self.value_support)
            .field("pdf", &self.pdf.is_some())
            .field("cdf", &self.cdf.is_some())
            .field("quantile", &self.quantile.is_some())
            .finish()
    }
}

impl CustomModel {
    fn in_support(&self, x: &[f64]) -> bool {
        if x.len() == 1 {
            self.support.contains_num(x[0])
        } else {
            self.support.contains_point(x).unwrap_or(false)
        }
    }
}

impl Model for CustomModel {
    fn clone_box(&self) -> Box<dyn Model> {
        Box::new(self.clone())
    }
    fn type_set(&self) -> MathSet {
        self.type_set.clone()
    }
    fn support(&self) -> MathSet {
        self.support.clone()
    }
    fn value_support(&self) -> ValueSupport {
        self.value_support
    }
    fn symmetric(&self) -> bool {
        self.symmetric
    }
    fn provides(&self, kernel: Kernel) -> bool {
        match kernel {
            Kernel::Pdf => self.pdf.is_some(),
            Kernel::Cdf => self.cdf.is_some(),
            Kernel::Quantile => self.quantile.is_some(),
            Kernel::Rand => false,
        }
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        self.pdf_point(&[x])
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        self.cdf_point(&[x])
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        let q = self
            .quantile
            .as_ref()
            .ok_or_else(|| Error::Unsupported("quantile kernel".into()))?;
        Ok(q(&[p], &self.params))
    }
    fn pdf_point(&self, x: &[f64]) -> Result<f64> {
        let f = self
            .pdf
            .as_ref()
            .ok_or_else(|| Error::Unsupported("pdf kernel".into()))?;
        if !self.in_support(x) {
            return Ok(0.0);
        }
        Ok(f(x, &self.params).max(0.0))
    }
    fn cdf_point(&self, x: &[f64]) -> Result<f64> {
        let f = self
            .cdf
            .as_ref()
            .ok_or_else(|| Error::Unsupported("cdf kernel".into()))?;
        Ok(f(x, &self.params).clamp(0.0, 1.0))
    }
    fn params(&self) -> Option<&ParameterSet> {
        Some(&self.params)
    }
    fn params_mut(&mut self) -> Option<&mut ParameterSet> {
        Some(&mut self.params)
    }
}

/// Builder for a custom distribution. Name, type and one of pdf/cdf are
/// required; the support defaults to the type.
#[derive(Clone, Default)]
pub struct CustomBuilder {
    name: String,
    short_name: Option<String>,
    description: String,
    type_set: Option<MathSet>,
    support: Option<MathSet>,
    value_support: Option<ValueSupport>,
    symmetric: bool,
    pdf: Option<UserFn>,
    cdf: Option<UserFn>,
    quantile: Option<UserFn>,
    params: Option<ParameterSet>,
    decorators: Vec<DecoratorKind>,
}

impl CustomBuilder {
    pub fn new(name: &str) -> Self {
        CustomBuilder {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn short_name(mut self, s: &str) -> Self {
        self.short_name = Some(s.to_string());
        self
    }

    pub fn description(mut self, s: &str) -> Self {
        self.description = s.to_string();
        self
    }

    pub fn type_set(mut self, t: MathSet) -> Self {
        self.type_set = Some(t);
        self
    }

    pub fn support(mut self, s: MathSet) -> Self {
        self.support = Some(s);
        self
    }

    pub fn value_support(mut self, v: ValueSupport) -> Self {
        self.value_support = Some(v);
        self
    }

    pub fn symmetric(mut self, s: bool) -> Self {
        self.symmetric = s;
        self
    }

    pub fn pdf(mut self, f: impl Fn(&[f64], &ParameterSet) -> f64 + Send + Sync + 'static) -> Self {
        self.pdf = Some(Arc::new(f));
        self
    }

    pub fn cdf(mut self, f: impl Fn(&[f64], &ParameterSet) -> f64 + Send + Sync + 'static) -> Self {
        self.cdf = Some(Arc::new(f));
        self
    }

    /// The closure receives the probability as its single coordinate.
    pub fn quantile(
        mut self,
        f: impl Fn(&[f64], &ParameterSet) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.quantile = Some(Arc::new(f));
        self
    }

    pub fn params(mut self, p: ParameterSet) -> Self {
        self.params = Some(p);
        self
    }

    pub fn decorators(mut self, kinds: &[DecoratorKind]) -> Self {
        self.decorators = kinds.to_vec();
        self
    }

    pub fn build(self) -> Result<Distribution> {
        if self.name.trim().is_empty() {
            return Err(Error::Construction(
                "a custom distribution needs a name".into(),
            ));
        }
        let type_set = self
            .type_set
            .ok_or_else(|| Error::Construction("a custom distribution needs a type".into()))?;
        if self.pdf.is_none() && self.cdf.is_none() {
            return Err(Error::Construction(
                "a custom distribution needs a pdf or a cdf".into(),
            ));
        }
        let support = self.support.unwrap_or_else(|| type_set.clone());
        if support.dimension() != type_set.dimension() {
            return Err(Error::Construction(format!(
                "support {support} and type {type_set} differ in dimension"
            )));
        }
        if let Some(vals) = support.finite_values() {
            if let Some(v) = vals.iter().find(|v| !type_set.contains_num(**v)) {
                return Err(Error::Construction(format!(
                    "support point {v} does not lie in the type {type_set}"
                )));
            }
        }
        let value_support = self.value_support.unwrap_or(
            if support.is_countable() || type_set.is_integer_valued() {
                ValueSupport::Discrete
            } else {
                ValueSupport::Continuous
            },
        );
        let model = CustomModel {
            type_set,
            support,
            value_support,
            symmetric: self.symmetric,
            pdf: self.pdf,
            cdf: self.cdf,
            quantile: self.quantile,
            params: self.params.unwrap_or_default(),
        };
        let short = self.short_name.unwrap_or_else(|| self.name.clone());
        let d = Distribution::new(&self.name, &short, &self.description, model);
        d.decorated(&self.decorators)
    }
}
