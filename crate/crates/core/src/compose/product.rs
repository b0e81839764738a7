use rand::RngCore;

use crate::distribution::{Distribution, Fun, Kernel, Model, ValueSupport};
use crate::error::{Error, Result};
use crate::params::ParameterSet;
use crate::sets::MathSet;

#[derive(Debug, Clone)]
struct ProductModel {
    inner: Vec<Distribution>,
}

impl ProductModel {
    fn fold(&self, x: &[f64], f: impl Fn(&Distribution, f64) -> Result<f64>) -> Result<f64> {
        if x.len() != self.inner.len() {
            return Err(Error::Dimension {
                expected: self.inner.len(),
                got: x.len(),
            });
        }
        let mut acc = 1.0;
        for (d, xi) in self.inner.iter().zip(x) {
            acc *= f(d, *xi)?;
        }
        Ok(acc)
    }
}

impl ProductModel {
    fn power(&self, base: MathSet) -> MathSet {
        match self.inner.len() {
            1 => base,
            n => MathSet::Power(Box::new(base), n),
        }
    }
}

impl Model for ProductModel {
    fn clone_box(&self) -> Box<dyn Model> {
        Box::new(self.clone())
    }
    fn type_set(&self) -> MathSet {
        let first = self.inner[0].type_set();
        let base = if self.inner.iter().all(|d| d.type_set() == first) {
            first
        } else {
            MathSet::Reals
        };
        self.power(base)
    }
    fn support(&self) -> MathSet {
        let first = self.inner[0].support();
        let base = if self.inner.iter().all(|d| d.support() == first) {
            first
        } else {
            MathSet::Reals
        };
        self.power(base)
    }
    fn value_support(&self) -> ValueSupport {
        let first = self.inner[0].value_support();
        if self.inner.iter().all(|d| d.value_support() == first) {
            first
        } else {
            ValueSupport::Mixed
        }
    }
    fn provides(&self, kernel: Kernel) -> bool {
        match kernel {
            Kernel::Pdf => self.inner.iter().all(|d| d.can_pdf()),
            Kernel::Cdf => self.inner.iter().all(|d| d.can_cdf()),
            Kernel::Quantile => self.inner.len() == 1 && self.inner[0].can_quantile(),
            Kernel::Rand => self
                .inner
                .iter()
                .all(|d| d.has_kernel(Kernel::Rand) || d.can_quantile()),
        }
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        self.pdf_point(&vec![x; self.inner.len()])
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        self.cdf_point(&vec![x; self.inner.len()])
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        self.inner[0].quantile_at(p)
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        self.inner[0].draw(rng)
    }
    fn pdf_point(&self, x: &[f64]) -> Result<f64> {
        self.fold(x, |d, xi| d.pdf_at(xi))
    }
    fn cdf_point(&self, x: &[f64]) -> Result<f64> {
        self.fold(x, |d, xi| d.cdf_at(xi))
    }
    fn rand_point(&self, rng: &mut dyn RngCore) -> Result<Vec<f64>> {
        self.inner.iter().map(|d| d.draw(rng)).collect()
    }
    fn outer_prefix(&self) -> &str {
        "prod"
    }
    fn params(&self) -> Option<&ParameterSet> {
        None
    }
    fn components(&self) -> &[Distribution] {
        &self.inner
    }
    fn components_mut(&mut self) -> &mut [Distribution] {
        &mut self.inner
    }
    fn row_reduce(&self, fun: Fun, row: &[f64]) -> Option<f64> {
        match fun {
            Fun::Pdf | Fun::Cdf => Some(row.iter().product()),
            _ => None,
        }
    }
}

/// Joint distribution of independent univariate components. Scalar
/// arguments are applied to every coordinate.
pub fn product(components: Vec<Distribution>) -> Result<Distribution> {
    if components.is_empty() {
        return Err(Error::Construction(
            "a product needs at least one component".into(),
        ));
    }
    if let Some(d) = components.iter().find(|d| !d.is_univariate()) {
        return Err(Error::Construction(format!(
            "product components must be univariate, got {}",
            d.short_name()
        )));
    }
    Ok(Distribution::new(
        "Product",
        "Prod",
        "Product of independent distributions.",
        ProductModel { inner: components },
    ))
}
