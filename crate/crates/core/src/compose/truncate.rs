use rand::RngCore;

use crate::distribution::{open_unit, Distribution, Kernel, Model, ValueSupport};
use crate::error::{Error, Result};
use crate::params::{ParameterDef, ParameterSet};
use crate::sets::MathSet;

use super::{extended_reals, require_cdf, require_univariate};

const MAX_REJECTIONS: usize = 1_000_000;

#[derive(Debug, Clone)]
struct TruncatedModel {
    inner: Vec<Distribution>,
    params: ParameterSet,
    lower_cdf: f64,
    upper_cdf: f64,
    mass: f64,
    // measure the mass from the upper tail when the interval sits there
    from_upper: bool,
}

impl TruncatedModel {
    fn comp(&self) -> &Distribution {
        &self.inner[0]
    }
    fn bounds(&self) -> (f64, f64) {
        (self.params.num("lower"), self.params.num("upper"))
    }

    fn tabulate(&mut self) -> Result<()> {
        let (a, b) = self.bounds();
        let d = &self.inner[0];
        let fa = if a == f64::NEG_INFINITY {
            0.0
        } else {
            d.cdf_at(a)?
        };
        let fb = if b == f64::INFINITY {
            1.0
        } else {
            d.cdf_at(b)?
        };
        self.lower_cdf = fa;
        self.upper_cdf = fb;
        self.from_upper = fa > 0.5;
        self.mass = if self.from_upper {
            let sa = d.ccdf_at(a)?;
            let sb = if b == f64::INFINITY {
                0.0
            } else {
                d.ccdf_at(b)?
            };
            sa - sb
        } else {
            fb - fa
        };
        if !(self.mass > 0.0) {
            return Err(Error::DegenerateTruncation { lower: a, upper: b });
        }
        Ok(())
    }

    fn in_range(&self, x: f64) -> bool {
        let (a, b) = self.bounds();
        x > a && x <= b
    }
}

impl Model for TruncatedModel {
    fn clone_box(&self) -> Box<dyn Model> {
        Box::new(self.clone())
    }
    fn type_set(&self) -> MathSet {
        self.comp().type_set()
    }
    fn support(&self) -> MathSet {
        let (a, b) = self.bounds();
        self.comp().support().restrict(a, b, false, true)
    }
    fn value_support(&self) -> ValueSupport {
        self.comp().value_support()
    }
    fn provides(&self, kernel: Kernel) -> bool {
        let d = self.comp();
        match kernel {
            Kernel::Pdf => d.can_pdf(),
            Kernel::Cdf => true,
            Kernel::Quantile => d.can_quantile(),
            Kernel::Rand => d.can_quantile() || d.has_kernel(Kernel::Rand),
        }
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        if !self.in_range(x) {
            return Ok(0.0);
        }
        Ok(self.comp().pdf_at(x)? / self.mass)
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        if x <= a {
            return Ok(0.0);
        }
        if x >= b {
            return Ok(1.0);
        }
        let v = if self.from_upper {
            (self.comp().ccdf_at(a)? - self.comp().ccdf_at(x)?) / self.mass
        } else {
            (self.comp().cdf_at(x)? - self.lower_cdf) / self.mass
        };
        Ok(v.clamp(0.0, 1.0))
    }
    fn survival(&self, x: f64) -> Option<f64> {
        let (a, b) = self.bounds();
        if x <= a {
            return Some(1.0);
        }
        if x >= b {
            return Some(0.0);
        }
        let d = self.comp();
        let sb = if b == f64::INFINITY {
            0.0
        } else {
            d.ccdf_at(b).ok()?
        };
        Some(((d.ccdf_at(x).ok()? - sb) / self.mass).clamp(0.0, 1.0))
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        let d = self.comp();
        let discrete = d.value_support() != ValueSupport::Continuous;
        if p >= 1.0 {
            return Ok(if b.is_finite() {
                d.quantile_at(self.upper_cdf)?.min(b)
            } else {
                d.quantile_at(1.0)?
            });
        }
        let mut target = self.lower_cdf + p * self.mass;
        if discrete && p <= 0.0 {
            target = self.lower_cdf + self.mass * 1e-12;
        }
        let q = d.quantile_at(target.clamp(0.0, 1.0))?;
        Ok(q.clamp(a, b))
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let d = self.comp();
        if d.can_quantile() {
            return self.quantile(open_unit(rng));
        }
        for _ in 0..MAX_REJECTIONS {
            let x = d.draw(rng)?;
            if self.in_range(x) {
                return Ok(x);
            }
        }
        Err(Error::NumericFailure {
            what: "rejection sampling from the truncated range".into(),
            estimate: self.mass,
            error_bound: f64::INFINITY,
        })
    }
    fn params(&self) -> Option<&ParameterSet> {
        Some(&self.params)
    }
    fn params_mut(&mut self) -> Option<&mut ParameterSet> {
        Some(&mut self.params)
    }
    fn param_prefix(&self) -> &str {
        "trunc"
    }
    fn refresh(&mut self) -> Result<()> {
        self.tabulate()
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
        Err("truncation needs lower < upper".into())
    }
}

/// Restricts `d` to the left-open interval `(lower, upper]`. Missing bounds
/// are infinite.
pub fn truncate(d: Distribution, lower: Option<f64>, upper: Option<f64>) -> Result<Distribution> {
    require_univariate(&d, "truncation")?;
    require_cdf(&d, "truncation")?;
    let ext = extended_reals();
    let params = ParameterSet::build(
        vec![
            ParameterDef::new(
                "lower",
                f64::NEG_INFINITY,
                ext.clone(),
                "Lower limit of truncation",
            ),
            ParameterDef::new("upper", f64::INFINITY, ext, "Upper limit of truncation"),
        ],
        vec![],
        Some(ordered),
        &[
            ("lower", lower.unwrap_or(f64::NEG_INFINITY).into()),
            ("upper", upper.unwrap_or(f64::INFINITY).into()),
        ],
    )?;
    let name = format!("Truncated {}", d.name());
    let short = format!("Trunc{}", d.short_name());
    let description = format!("{} truncated to an interval.", d.name());
    let mut model = TruncatedModel {
        inner: vec![d],
        params,
        lower_cdf: 0.0,
        upper_cdf: 1.0,
        mass: 1.0,
        from_upper: false,
    };
    model.tabulate()?;
    Ok(Distribution::new(&name, &short, &description, model))
}
