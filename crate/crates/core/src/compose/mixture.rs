use rand::{Rng, RngCore};

use crate::catalog::integer_quantile;
use crate::distribution::{Distribution, Fun, Kernel, Model, ValueSupport};
use crate::error::{Error, Result};
use crate::numeric::roots::{bracket_increasing, brent};
use crate::params::{ParamValue, ParameterDef, ParameterSet};
use crate::sets::{Element, MathSet};

/// Mixing weights.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Weights {
    #[default]
    Uniform,
    Given(Vec<f64>),
}

impl From<Weights> for ParamValue {
    fn from(w: Weights) -> Self {
        match w {
            Weights::Uniform => ParamValue::Token("uniform".into()),
            Weights::Given(v) => ParamValue::Vector(v),
        }
    }
}

#[derive(Debug, Clone)]
struct MixtureModel {
    inner: Vec<Distribution>,
    params: ParameterSet,
    weights: Vec<f64>,
}

impl MixtureModel {
    fn tabulate(&mut self) -> Result<()> {
        let n = self.inner.len();
        self.weights = match self.params.get("weights")? {
            ParamValue::Token(_) => vec![1.0 / n as f64; n],
            ParamValue::Vector(w) if w.len() == n => w.clone(),
            ParamValue::Num(w) if n == 1 => vec![*w],
            other => {
                return Err(Error::InvalidArgument(format!(
                    "{n} components but weights {other}"
                )))
            }
        };
        Ok(())
    }

    fn weighted(&self, f: impl Fn(&Distribution) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (d, w) in self.inner.iter().zip(&self.weights) {
            if *w > 0.0 {
                acc += w * f(d)?;
            }
        }
        Ok(acc)
    }

    fn weighted_opt(&self, f: impl Fn(&Distribution) -> Option<f64>) -> Option<f64> {
        self.weighted(|d| f(d).ok_or(Error::Unsupported(String::new())))
            .ok()
    }

    fn shared_value_support(&self) -> Option<ValueSupport> {
        let first = self.inner[0].value_support();
        self.inner
            .iter()
            .all(|d| d.value_support() == first)
            .then_some(first)
    }

    fn discrete_quantile(&self, p: f64) -> Result<f64> {
        let support = self.support();
        if let Some(points) = support.finite_values() {
            let mut lo = 0;
            let mut hi = points.len() - 1;
            if self.cdf(points[hi])? < p {
                return Ok(points[hi]);
            }
            while lo < hi {
                let mid = (lo + hi) / 2;
                if self.cdf(points[mid])? >= p {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            return Ok(points[lo]);
        }
        let guess = self
            .weighted(|d| d.quantile_at(p))
            .unwrap_or(support.lower());
        Ok(integer_quantile(
            |k| self.cdf(k).unwrap_or(1.0),
            p,
            support.lower(),
            support.upper(),
            guess,
        ))
    }

    fn continuous_quantile(&self, p: f64) -> Result<f64> {
        let support = self.support();
        let tol = self.inner[0].options().root_tol;
        let g = |x: f64| self.cdf(x).unwrap_or(f64::NAN) - p;
        let (lo, hi) = if self.inner.iter().all(|d| d.can_quantile()) {
            let qs = self
                .inner
                .iter()
                .map(|d| d.quantile_at(p))
                .collect::<Result<Vec<f64>>>()?;
            let lo = qs.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = qs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (lo, hi)
        } else {
            let start = self.weighted(|d| d.quantile_at(0.5)).unwrap_or(0.0);
            bracket_increasing(g, start, support.lower(), support.upper(), 1100)?
        };
        if p <= 0.0 || p >= 1.0 || lo == hi || g(lo) >= 0.0 {
            return Ok(lo);
        }
        if g(hi) < 0.0 {
            return Ok(hi);
        }
        brent(g, lo, hi, tol, 200)
    }
}

impl Model for MixtureModel {
    fn clone_box(&self) -> Box<dyn Model> {
        Box::new(self.clone())
    }
    fn type_set(&self) -> MathSet {
        let first = self.inner[0].type_set();
        if self.inner.iter().all(|d| d.type_set() == first) {
            first
        } else {
            MathSet::Reals
        }
    }
    fn support(&self) -> MathSet {
        let parts: Vec<MathSet> = self.inner.iter().map(Distribution::support).collect();
        if parts.iter().all(|s| s == &parts[0]) {
            return parts[0].clone();
        }
        if parts.iter().all(|s| s.finite_values().is_some()) {
            return MathSet::finite_nums(parts.iter().flat_map(|s| s.finite_values().unwrap()));
        }
        let mut members = Vec::new();
        for s in parts {
            match s {
                MathSet::Finite(e) if e.iter().all(|x| matches!(x, Element::Num(_))) => {
                    members.push(MathSet::Finite(e))
                }
                other => members.push(other),
            }
        }
        MathSet::Union(members)
    }
    fn value_support(&self) -> ValueSupport {
        self.shared_value_support().unwrap_or(ValueSupport::Mixed)
    }
    fn provides(&self, kernel: Kernel) -> bool {
        match kernel {
            Kernel::Pdf => {
                self.shared_value_support().is_some() && self.inner.iter().all(|d| d.can_pdf())
            }
            Kernel::Cdf | Kernel::Quantile => self.inner.iter().all(|d| d.can_cdf()),
            Kernel::Rand => self
                .inner
                .iter()
                .all(|d| d.has_kernel(Kernel::Rand) || d.can_quantile()),
        }
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        self.weighted(|d| d.pdf_at(x))
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        Ok(self.weighted(|d| d.cdf_at(x))?.clamp(0.0, 1.0))
    }
    fn survival(&self, x: f64) -> Option<f64> {
        self.weighted(|d| d.ccdf_at(x))
            .ok()
            .map(|s| s.clamp(0.0, 1.0))
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        match self.value_support() {
            ValueSupport::Discrete => self.discrete_quantile(p),
            _ => self.continuous_quantile(p),
        }
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut pick = self.inner.len() - 1;
        for (i, w) in self.weights.iter().enumerate() {
            acc += w;
            if u < acc {
                pick = i;
                break;
            }
        }
        self.inner[pick].draw(rng)
    }
    fn mean(&self) -> Option<f64> {
        self.weighted_opt(|d| d.mean().ok())
    }
    fn variance(&self) -> Option<f64> {
        let mu = self.mean()?;
        let second = self.weighted_opt(|d| {
            let m = d.mean().ok()?;
            Some(d.variance().ok()? + m * m)
        })?;
        Some(second - mu * mu)
    }
    fn mgf(&self, t: f64) -> Option<f64> {
        self.weighted_opt(|d| d.mgf(t).ok())
    }
    fn cf(&self, t: f64) -> Option<(f64, f64)> {
        let re = self.weighted_opt(|d| d.cf(t).ok().map(|c| c.0))?;
        let im = self.weighted_opt(|d| d.cf(t).ok().map(|c| c.1))?;
        Some((re, im))
    }
    fn pgf(&self, z: f64) -> Option<f64> {
        self.weighted_opt(|d| d.pgf(z).ok())
    }
    fn params(&self) -> Option<&ParameterSet> {
        Some(&self.params)
    }
    fn params_mut(&mut self) -> Option<&mut ParameterSet> {
        Some(&mut self.params)
    }
    fn outer_prefix(&self) -> &str {
        "mix"
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
    fn row_reduce(&self, fun: Fun, row: &[f64]) -> Option<f64> {
        match fun {
            Fun::Pdf | Fun::Cdf | Fun::Survival => {
                Some(row.iter().zip(&self.weights).map(|(v, w)| v * w).sum())
            }
            _ => None,
        }
    }
}

fn normalised(v: ParamValue) -> std::result::Result<ParamValue, String> {
    let w = match v {
        ParamValue::Token(t) if t == "uniform" => return Ok(ParamValue::Token(t)),
        ParamValue::Token(t) => return Err(t),
        ParamValue::Num(x) => vec![x],
        ParamValue::Vector(w) => w,
    };
    if w.is_empty() || w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
        return Err(ParamValue::Vector(w).to_string());
    }
    let total: f64 = w.iter().sum();
    if !(total > 0.0) {
        return Err("weights sum to zero".into());
    }
    if (total - 1.0).abs() > 1e-9 {
        log::warn!("mixture weights sum to {total}; renormalising");
        return Ok(ParamValue::Vector(w.iter().map(|x| x / total).collect()));
    }
    Ok(ParamValue::Vector(w))
}

/// Mixture of `components` with the given weights.
pub fn mixture(components: Vec<Distribution>, weights: Weights) -> Result<Distribution> {
    let Some(first) = components.first() else {
        return Err(Error::Construction(
            "a mixture needs at least one component".into(),
        ));
    };
    let dim = first.dimension();
    if components
        .iter()
        .any(|d| d.dimension() != dim || !d.is_univariate())
    {
        return Err(Error::Construction(
            "mixture components must all be univariate".into(),
        ));
    }
    let weight_support = MathSet::Union(vec![
        MathSet::finite(vec![Element::from("uniform")])?,
        MathSet::closed(0.0, 1.0),
    ]);
    let params = ParameterSet::build(
        vec![ParameterDef::new(
            "weights",
            ParamValue::Token("uniform".into()),
            weight_support,
            "Mixture weights",
        )
        .with_transform(normalised)],
        vec![],
        None,
        &[("weights", weights.into())],
    )?;
    let mut model = MixtureModel {
        inner: components,
        params,
        weights: Vec::new(),
    };
    model.tabulate()?;
    Ok(Distribution::new(
        "Mixture",
        "Mix",
        "Mixture of distributions.",
        model,
    ))
}
