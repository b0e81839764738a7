use std::fmt;

use crate::distribution::{
    component_entries, component_labels, find_component, make_rng, owned_args, Distribution,
    EvalOptions, Fun,
};
use crate::error::{Error, Result};
use crate::matrix::EvaluationMatrix;
use crate::numeric::NumericOptions;
use crate::params::{Args, ParamValue, ParameterSetCollection};

/// How a vector distribution was built.
#[derive(Debug, Clone, PartialEq)]
pub enum VectorMode {
    /// Arbitrary, possibly heterogeneous components.
    Distlist,
    /// Components of one catalog class from a parameter table.
    Parametric(String),
}

/// A collection of distributions evaluated together.
///
/// One argument vector evaluates every component at the same points (one
/// row per point); one vector per component pairs vector `i` with
/// component `i`.
///
/// ```
/// use compdist::compose::VectorDistribution;
/// use compdist::Fun;
///
/// let v = VectorDistribution::parametric("Normal", &[("mean", vec![1.0.into(), 2.0.into()])]).unwrap();
/// let m = v.eval(Fun::Cdf, &[vec![1.0, 2.0]]).unwrap();
/// assert_eq!(m.labels(), &["Norm1", "Norm2"]);
/// assert_eq!(m.get(0, 0), 0.5);
/// ```
#[derive(Debug, Clone)]
pub struct VectorDistribution {
    components: Vec<Distribution>,
    mode: VectorMode,
}

impl VectorDistribution {
    pub fn new(components: Vec<Distribution>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Construction(
                "a vector distribution needs at least one component".into(),
            ));
        }
        Ok(VectorDistribution {
            components,
            mode: VectorMode::Distlist,
        })
    }

    pub fn parametric(class: &str, table: &[(&str, Vec<ParamValue>)]) -> Result<Self> {
        let components = super::parametric(class, table)?;
        let mut v = VectorDistribution::new(components)?;
        v.mode = VectorMode::Parametric(class.to_string());
        Ok(v)
    }

    pub fn mode(&self) -> &VectorMode {
        &self.mode
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Column labels: short names with ordinals where they repeat.
    pub fn labels(&self) -> Vec<String> {
        component_labels(&self.components)
    }

    pub fn components(&self) -> &[Distribution] {
        &self.components
    }

    pub fn wrapped_models(&self, name: Option<&str>) -> Result<Vec<&Distribution>> {
        match name {
            None => Ok(self.components.iter().collect()),
            Some(n) => find_component(&self.components, n).map(|c| vec![c]),
        }
    }

    pub fn eval(&self, fun: Fun, args: &[Vec<f64>]) -> Result<EvaluationMatrix> {
        self.eval_with(fun, args, EvalOptions::default())
    }

    pub fn eval_with(
        &self,
        fun: Fun,
        args: &[Vec<f64>],
        opts: EvalOptions,
    ) -> Result<EvaluationMatrix> {
        let n = self.components.len();
        let opts = EvalOptions {
            simplify: true,
            ..opts
        };
        let columns = if args.len() == 1 {
            self.components
                .iter()
                .map(|d| d.evaluate(fun, &args[0], opts).map(|e| e.into_values()))
                .collect::<Result<Vec<_>>>()?
        } else if args.len() == n {
            let m = args[0].len();
            if let Some(bad) = args.iter().find(|a| a.len() != m) {
                return Err(Error::InvalidArgument(format!(
                    "paired evaluation needs vectors of equal length, got {m} and {}",
                    bad.len()
                )));
            }
            self.components
                .iter()
                .zip(args)
                .map(|(d, xs)| d.evaluate(fun, xs, opts).map(|e| e.into_values()))
                .collect::<Result<Vec<_>>>()?
        } else {
            return Err(Error::InvalidArgument(format!(
                "expected 1 or {n} argument vectors, got {}",
                args.len()
            )));
        };
        EvaluationMatrix::from_columns(self.labels(), columns)
    }

    pub fn set_options(&mut self, options: NumericOptions) -> Result<()> {
        for c in &mut self.components {
            c.set_options(options)?;
        }
        Ok(())
    }

    /// `n` draws from every component, one column each.
    pub fn rand(&self, n: usize, seed: Option<u64>) -> Result<EvaluationMatrix> {
        let mut rng = make_rng(seed);
        let columns = self
            .components
            .iter()
            .map(|d| d.rand_with(n, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        EvaluationMatrix::from_columns(self.labels(), columns)
    }

    pub fn parameters(&self) -> Result<ParameterSetCollection> {
        ParameterSetCollection::from_entries(component_entries(&self.components))
    }

    pub fn get_parameter(&self, id: &str) -> Result<ParamValue> {
        Ok(self.parameters()?.get(id)?.clone())
    }

    /// Updates component parameters by prefixed id; all or nothing.
    pub fn set_parameters(&mut self, args: &Args) -> Result<()> {
        let coll = self.parameters()?;
        let routed = coll.route(args)?;
        let mut next = self.components.clone();
        for (idx, inner) in routed {
            let path = &coll.entries()[idx].path;
            next[path[0]].set_at(&path[1..], &owned_args(&inner))?;
        }
        self.components = next;
        Ok(())
    }
}

impl fmt::Display for VectorDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|d| d.to_string()).collect();
        write!(f, "Vector({})", parts.join(", "))
    }
}
