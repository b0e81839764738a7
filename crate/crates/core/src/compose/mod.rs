//! Distributions built from other distributions.
//!
//! Components are copied in, so later changes to the originals do not
//! reach the composite; parameters are reached through the composite's
//! prefixed collection instead.
//!
//! ```
//! use compdist::{catalog, compose};
//!
//! let n = catalog::normal(&[]).unwrap();
//! let t = compose::truncate(n, Some(-1.0), Some(1.0)).unwrap();
//! let f = t.cdf(&[-2.0, 0.0, 1.0]).unwrap();
//! assert_eq!((f[0], f[2]), (0.0, 1.0));
//! assert!((f[1] - 0.5).abs() < 1e-15);
//! assert!(t.parameters().unwrap().ids().contains(&"trunc_lower".to_string()));
//! ```

use crate::distribution::{Distribution, Fun};
use crate::error::{Error, Result};
use crate::params::ParamValue;
use crate::sets::MathSet;

mod huberize;
mod mixture;
mod product;
mod truncate;
mod vector;

pub use huberize::huberize;
pub use mixture::{mixture, Weights};
pub use product::product;
pub use truncate::truncate;
pub use vector::{VectorDistribution, VectorMode};

/// The compositors in listing order.
pub const COMPOSITORS: [&str; 5] = ["truncate", "huberize", "mix", "product", "vector"];

/// Builds `n` components of one catalog class from a table of parameter
/// columns. Columns of length one are recycled.
pub fn parametric(class: &str, table: &[(&str, Vec<ParamValue>)]) -> Result<Vec<Distribution>> {
    let n = table.iter().map(|(_, c)| c.len()).max().unwrap_or(1).max(1);
    if let Some((id, c)) = table.iter().find(|(_, c)| c.len() != n && c.len() != 1) {
        return Err(Error::InvalidArgument(format!(
            "parameter column '{id}' has {} values, expected 1 or {n}",
            c.len()
        )));
    }
    (0..n)
        .map(|i| {
            let args: Vec<(&str, ParamValue)> = table
                .iter()
                .map(|(id, c)| (*id, c[if c.len() == 1 { 0 } else { i }].clone()))
                .collect();
            crate::catalog::build(class, &args)
        })
        .collect()
}

fn require_univariate(d: &Distribution, op: &str) -> Result<()> {
    if d.is_univariate() {
        Ok(())
    } else {
        Err(Error::Construction(format!(
            "{op} needs a univariate component, got {}",
            d.short_name()
        )))
    }
}

fn require_cdf(d: &Distribution, op: &str) -> Result<()> {
    if d.can_cdf() {
        Ok(())
    } else {
        Err(Error::CapabilityMissing {
            method: format!("cdf (needed by {op})"),
            distribution: d.short_name().to_string(),
            hint: "decorate with FunctionImputation first".into(),
        })
    }
}

fn extended_reals() -> MathSet {
    MathSet::Reals.extended_union()
}

impl Distribution {
    /// Evaluates a mixture or product through its components: one argument
    /// vector evaluates every component at the same points, one vector per
    /// component pairs them up. Each row is then combined.
    pub fn eval_vectorised(&self, fun: Fun, args: &[Vec<f64>]) -> Result<Vec<f64>> {
        let comps = self.components();
        if comps.is_empty() || self.model.row_reduce(fun, &[]).is_none() {
            return Err(Error::Unsupported(format!(
                "{} of {} cannot be evaluated component-wise",
                fun.name(),
                self.short_name()
            )));
        }
        let v = VectorDistribution::new(comps.to_vec())?;
        let m = v.eval(fun, args)?;
        m.rows()
            .iter()
            .map(|row| {
                self.model
                    .row_reduce(fun, row)
                    .ok_or_else(|| Error::Unsupported(format!("{} reduction", fun.name())))
            })
            .collect()
    }
}
