use rand::RngCore;

use crate::distribution::{Distribution, Kernel, Model, ValueSupport};
use crate::error::Result;
use crate::params::{ParameterDef, ParameterSet};
use crate::sets::MathSet;

use super::{extended_reals, require_cdf, require_univariate};

#[derive(Debug, Clone)]
struct HuberizedModel {
    inner: Vec<Distribution>,
    params: ParameterSet,
}

impl HuberizedModel {
    fn comp(&self) -> &Distribution {
        &self.inner[0]
    }
    fn bounds(&self) -> (f64, f64) {
        (self.params.num("lower"), self.params.num("upper"))
    }
}

impl Model for HuberizedModel {
    fn clone_box(&self) -> Box<dyn Model> {
        Box::new(self.clone())
    }
    fn type_set(&self) -> MathSet {
        self.comp().type_set()
    }
    fn support(&self) -> MathSet {
        let (a, b) = self.bounds();
        self.comp().support().restrict(a, b, true, true)
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Mixed
    }
    fn provides(&self, kernel: Kernel) -> bool {
        let d = self.comp();
        match kernel {
            Kernel::Pdf => false,
            Kernel::Cdf => true,
            Kernel::Quantile => d.can_quantile(),
            Kernel::Rand => d.can_quantile() || d.has_kernel(Kernel::Rand),
        }
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        if x < a {
            Ok(0.0)
        } else if x >= b {
            Ok(1.0)
        } else {
            self.comp().cdf_at(x)
        }
    }
    fn survival(&self, x: f64) -> Option<f64> {
        let (a, b) = self.bounds();
        if x < a {
            Some(1.0)
        } else if x >= b {
            Some(0.0)
        } else {
            self.comp().ccdf_at(x).ok()
        }
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(self.comp().quantile_at(p)?.clamp(a, b))
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(self.comp().draw(rng)?.clamp(a, b))
    }
    fn params(&self) -> Option<&ParameterSet> {
        Some(&self.params)
    }
    fn params_mut(&mut self) -> Option<&mut ParameterSet> {
        Some(&mut self.params)
    }
    fn param_prefix(&self) -> &str {
        "hub"
    }
    fn components(&self) -> &[Distribution] {
        &self.inner
    }
    fn components_mut(&mut self) -> &mut [Distribution] {
        &mut self.inner
    }
}

fn ordered(set: &ParameterSet) -> std::result::Result<(), String> {
    if set.num("lower") < set.num("upper") {
        Ok(())
    } else {
        Err("huberization needs lower < upper".into())
    }
}

/// Clamps realisations of `d` to `[lower, upper]`, moving the tail mass onto
/// the bounds. Missing bounds default to the extremes of the support.
pub fn huberize(d: Distribution, lower: Option<f64>, upper: Option<f64>) -> Result<Distribution> {
    require_univariate(&d, "huberization")?;
    require_cdf(&d, "huberization")?;
    let support = d.support();
    let ext = extended_reals();
    let params = ParameterSet::build(
        vec![
            ParameterDef::new(
                "lower",
                support.lower(),
                ext.clone(),
                "Lower limit of huberization",
            ),
            ParameterDef::new("upper", support.upper(), ext, "Upper limit of huberization"),
        ],
        vec![],
        Some(ordered),
        &[
            ("lower", lower.unwrap_or(support.lower()).into()),
            ("upper", upper.unwrap_or(support.upper()).into()),
        ],
    )?;
    let name = format!("Huberized {}", d.name());
    let short = format!("Hub{}", d.short_name());
    let description = format!("{} huberized to an interval.", d.name());
    Ok(Distribution::new(
        &name,
        &short,
        &description,
        HuberizedModel {
            inner: vec![d],
            params,
        },
    ))
}
