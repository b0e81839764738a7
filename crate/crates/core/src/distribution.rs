//! The distribution object shared by catalog, custom, decorated and composite
//! distributions.
//!
//! A [`Distribution`] wraps a [`Model`], which supplies raw kernels and any
//! closed-form statistics. The wrapper validates inputs against the model's
//! mathematical type, falls back to decorator-provided numerics where the
//! model is silent, and exposes one method surface for every kind of
//! distribution.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::EvaluationMatrix;
use crate::numeric::{DecoratorKind, Imputed, NumericOptions};
use crate::params::{
    prefixed, Args, CollectionEntry, ParamRow, ParamValue, ParameterSet, ParameterSetCollection,
};
use crate::sets::{format_number, MathSet};

/// Tolerance used when classifying skewness and kurtosis by sign.
pub const SHAPE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueSupport {
    Discrete,
    Continuous,
    Mixed,
}

impl fmt::Display for ValueSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValueSupport::Discrete => "discrete",
            ValueSupport::Continuous => "continuous",
            ValueSupport::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VariateForm {
    Univariate,
    Multivariate,
}

impl fmt::Display for VariateForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariateForm::Univariate => "univariate",
            VariateForm::Multivariate => "multivariate",
        })
    }
}

/// Parameter-independent facts about a distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Traits {
    pub value_support: ValueSupport,
    pub variate_form: VariateForm,
    #[serde(rename = "type")]
    pub type_set: MathSet,
}

impl fmt::Display for Traits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}", self.value_support, self.variate_form)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Asymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KurtosisClass {
    Platykurtic,
    Mesokurtic,
    Leptokurtic,
}

impl KurtosisClass {
    pub fn from_excess(k: f64) -> Self {
        if k < -SHAPE_TOL {
            KurtosisClass::Platykurtic
        } else if k > SHAPE_TOL {
            KurtosisClass::Leptokurtic
        } else {
            KurtosisClass::Mesokurtic
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SkewnessClass {
    #[serde(rename = "negative skew")]
    Negative,
    #[serde(rename = "no skew")]
    None,
    #[serde(rename = "positive skew")]
    Positive,
}

impl SkewnessClass {
    pub fn from_skewness(s: f64) -> Self {
        if s < -SHAPE_TOL {
            SkewnessClass::Negative
        } else if s > SHAPE_TOL {
            SkewnessClass::Positive
        } else {
            SkewnessClass::None
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Asymmetric => "asymmetric",
        })
    }
}

impl fmt::Display for KurtosisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KurtosisClass::Platykurtic => "platykurtic",
            KurtosisClass::Mesokurtic => "mesokurtic",
            KurtosisClass::Leptokurtic => "leptokurtic",
        })
    }
}

impl fmt::Display for SkewnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkewnessClass::Negative => "negative skew",
            SkewnessClass::None => "no skew",
            SkewnessClass::Positive => "positive skew",
        })
    }
}

/// Parameter-dependent facts about a distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Properties {
    pub support: MathSet,
    pub symmetry: Symmetry,
    pub kurtosis: Option<KurtosisClass>,
    pub skewness: Option<SkewnessClass>,
}

impl fmt::Display for Properties {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetry)?;
        if let Some(k) = self.kurtosis {
            write!(f, "; {k}")?;
        }
        if let Some(s) = self.skewness {
            write!(f, "; {s}")?;
        }
        Ok(())
    }
}

/// The four raw evaluation kernels a model may supply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    Pdf,
    Cdf,
    Quantile,
    Rand,
}

impl Kernel {
    pub const ALL: [Kernel; 4] = [Kernel::Pdf, Kernel::Cdf, Kernel::Quantile, Kernel::Rand];
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::Pdf => "pdf",
            Kernel::Cdf => "cdf",
            Kernel::Quantile => "quantile",
            Kernel::Rand => "rand",
        })
    }
}

/// Point-wise functions that can be evaluated on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Fun {
    Pdf,
    Cdf,
    Quantile,
    Survival,
    Hazard,
    CumHazard,
}

impl Fun {
    pub const ALL: [Fun; 6] = [
        Fun::Pdf,
        Fun::Cdf,
        Fun::Quantile,
        Fun::Survival,
        Fun::Hazard,
        Fun::CumHazard,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fun::Pdf => "pdf",
            Fun::Cdf => "cdf",
            Fun::Quantile => "quantile",
            Fun::Survival => "survival",
            Fun::Hazard => "hazard",
            Fun::CumHazard => "cumhazard",
        }
    }
}

impl fmt::Display for Fun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fun {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Fun::ALL
            .into_iter()
            .find(|f| f.name() == lower || (lower == "cumhaz" && *f == Fun::CumHazard))
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown function '{s}'; expected one of pdf, cdf, quantile, survival, hazard, cumhazard"
                ))
            })
    }
}

/// Options shared by the evaluation methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    pub lower_tail: bool,
    pub log: bool,
    pub simplify: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            lower_tail: true,
            log: false,
            simplify: true,
        }
    }
}

/// Result of [`Distribution::evaluate`]: a flat vector, or a labelled table
/// when `simplify` is off.
#[derive(Debug, Clone, PartialEq)]
pub enum Evaluation {
    Values(Vec<f64>),
    Table(EvaluationMatrix),
}

impl Evaluation {
    pub fn into_values(self) -> Vec<f64> {
        match self {
            Evaluation::Values(v) => v,
            Evaluation::Table(t) => t.column(0),
        }
    }
}

/// Raw kernels and closed-form results behind a [`Distribution`].
///
/// Kernels are called without any validation; the wrapper checks inputs
/// first. Statistic methods return `None` when no closed form is known and
/// `Some(NaN)` when the quantity is undefined.
pub trait Model: Send + Sync + fmt::Debug {
    fn clone_box(&self) -> Box<dyn Model>;

    /// Mathematical type: the set every valid input must lie in.
    fn type_set(&self) -> MathSet;
    fn support(&self) -> MathSet;
    fn value_support(&self) -> ValueSupport;
    fn symmetric(&self) -> bool {
        false
    }

    fn provides(&self, kernel: Kernel) -> bool;

    fn pdf(&self, _x: f64) -> Result<f64> {
        Err(Error::Unsupported("pdf kernel".into()))
    }
    fn cdf(&self, _x: f64) -> Result<f64> {
        Err(Error::Unsupported("cdf kernel".into()))
    }
    /// Upper tail `1 - F(x)` when it can be computed without cancellation.
    fn survival(&self, _x: f64) -> Option<f64> {
        None
    }
    fn quantile(&self, _p: f64) -> Result<f64> {
        Err(Error::Unsupported("quantile kernel".into()))
    }
    fn rand(&self, _rng: &mut dyn RngCore) -> Result<f64> {
        Err(Error::Unsupported("rand kernel".into()))
    }

    fn pdf_point(&self, x: &[f64]) -> Result<f64> {
        self.pdf(x[0])
    }
    fn cdf_point(&self, x: &[f64]) -> Result<f64> {
        self.cdf(x[0])
    }
    fn rand_point(&self, rng: &mut dyn RngCore) -> Result<Vec<f64>> {
        Ok(vec![self.rand(rng)?])
    }

    fn mean(&self) -> Option<f64> {
        None
    }
    fn variance(&self) -> Option<f64> {
        None
    }
    fn skewness(&self) -> Option<f64> {
        None
    }
    /// Excess kurtosis.
    fn kurtosis(&self) -> Option<f64> {
        None
    }
    fn entropy(&self, _base: f64) -> Option<f64> {
        None
    }
    fn mgf(&self, _t: f64) -> Option<f64> {
        None
    }
    fn cf(&self, _t: f64) -> Option<(f64, f64)> {
        None
    }
    fn pgf(&self, _z: f64) -> Option<f64> {
        None
    }

    fn params(&self) -> Option<&ParameterSet> {
        None
    }
    fn params_mut(&mut self) -> Option<&mut ParameterSet> {
        None
    }
    /// Prefix of the model's own parameters inside a composite.
    fn param_prefix(&self) -> &str {
        ""
    }
    /// Prefix applied to every parameter id the model exposes.
    fn outer_prefix(&self) -> &str {
        ""
    }
    /// Re-derives cached state after a parameter change.
    fn refresh(&mut self) -> Result<()> {
        Ok(())
    }

    fn components(&self) -> &[Distribution] {
        &[]
    }
    /// Combines one row of component values (a mixture's weighted sum, a
    /// product's product) when the model supports vectorised evaluation.
    fn row_reduce(&self, _fun: Fun, _row: &[f64]) -> Option<f64> {
        None
    }
    fn components_mut(&mut self) -> &mut [Distribution] {
        &mut []
    }
}

impl Clone for Box<dyn Model> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

#[derive(Debug, Clone)]
pub struct Distribution {
    name: String,
    short_name: String,
    description: String,
    pub(crate) model: Box<dyn Model>,
    pub(crate) decorators: Vec<DecoratorKind>,
    pub(crate) hidden: Vec<Kernel>,
    pub(crate) options: NumericOptions,
    pub(crate) imputed: Option<Arc<Imputed>>,
}

/// Component labels: short names, with 1-based ordinals appended to names
/// that occur more than once.
pub fn component_labels(components: &[Distribution]) -> Vec<String> {
    let names: Vec<&str> = components.iter().map(Distribution::short_name).collect();
    let mut seen = std::collections::HashMap::new();
    names
        .iter()
        .map(|n| {
            if names.iter().filter(|m| *m == n).count() > 1 {
                let k = seen.entry(*n).or_insert(0);
                *k += 1;
                format!("{n}{k}")
            } else {
                n.to_string()
            }
        })
        .collect()
}

/// Flattened parameter entries of a component list. Simple components are
/// prefixed by their label; composites pass their ids through unless two
/// components would then share an id.
pub(crate) fn component_entries(components: &[Distribution]) -> Vec<CollectionEntry> {
    let labels = component_labels(components);
    let build = |force: bool| -> Vec<CollectionEntry> {
        let mut out = Vec::new();
        for (i, c) in components.iter().enumerate() {
            let simple = c.model.components().is_empty();
            for mut e in c.param_entries() {
                e.path.insert(0, i);
                if simple || force {
                    e.prefix = prefixed(&labels[i], &e.prefix);
                }
                out.push(e);
            }
        }
        out
    };
    let first = build(false);
    let mut ids: Vec<String> = first
        .iter()
        .flat_map(|e| {
            e.set
                .ids()
                .map(|id| prefixed(&e.prefix, id))
                .collect::<Vec<_>>()
        })
        .collect();
    let n = ids.len();
    ids.sort();
    ids.dedup();
    if ids.len() < n {
        build(true)
    } else {
        first
    }
}

/// Converts borrowed routing output back into argument slices.
pub(crate) fn owned_args(args: &[(String, ParamValue)]) -> Vec<(&str, ParamValue)> {
    args.iter().map(|(k, v)| (k.as_str(), v.clone())).collect()
}

pub(crate) fn make_rng(seed: Option<u64>) -> ChaCha8Rng {
    match seed {
        Some(s) => ChaCha8Rng::seed_from_u64(s),
        None => ChaCha8Rng::from_os_rng(),
    }
}

/// A uniform draw on the open interval (0, 1).
pub(crate) fn open_unit(rng: &mut dyn RngCore) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

fn format_points(points: &[Vec<f64>]) -> String {
    let parts: Vec<String> = points
        .iter()
        .map(|p| {
            if p.len() == 1 {
                format_number(p[0])
            } else {
                let inner: Vec<String> = p.iter().map(|v| format_number(*v)).collect();
                format!("({})", inner.join(", "))
            }
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

impl Distribution {
    pub fn new(
        name: &str,
        short_name: &str,
        description: &str,
        model: impl Model + 'static,
    ) -> Self {
        Distribution::from_box(name, short_name, description, Box::new(model))
    }

    pub fn from_box(
        name: &str,
        short_name: &str,
        description: &str,
        model: Box<dyn Model>,
    ) -> Self {
        let short: String = short_name.chars().filter(|c| !c.is_whitespace()).collect();
        Distribution {
            name: name.to_string(),
            short_name: short,
            description: description.to_string(),
            model,
            decorators: Vec::new(),
            hidden: Vec::new(),
            options: NumericOptions::default(),
            imputed: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn short_name(&self) -> &str {
        &self.short_name
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn model(&self) -> &dyn Model {
        self.model.as_ref()
    }

    pub fn traits(&self) -> Traits {
        let type_set = self.model.type_set();
        Traits {
            value_support: self.model.value_support(),
            variate_form: if type_set.dimension() > 1 {
                VariateForm::Multivariate
            } else {
                VariateForm::Univariate
            },
            type_set,
        }
    }

    pub fn type_set(&self) -> MathSet {
        self.model.type_set()
    }

    pub fn support(&self) -> MathSet {
        self.model.support()
    }

    pub fn value_support(&self) -> ValueSupport {
        self.model.value_support()
    }

    pub fn dimension(&self) -> usize {
        self.model.type_set().dimension()
    }

    pub fn is_univariate(&self) -> bool {
        self.dimension() == 1
    }

    pub fn symmetry(&self) -> Symmetry {
        if self.model.symmetric() {
            Symmetry::Symmetric
        } else {
            Symmetry::Asymmetric
        }
    }

    /// Support, symmetry and the shape classes that can be computed.
    pub fn properties(&self) -> Properties {
        let finite = |r: Result<f64>| r.ok().filter(|v| v.is_finite());
        Properties {
            support: self.support(),
            symmetry: self.symmetry(),
            kurtosis: finite(self.kurtosis(true)).map(KurtosisClass::from_excess),
            skewness: finite(self.skewness()).map(SkewnessClass::from_skewness),
        }
    }

    pub fn decorators(&self) -> &[DecoratorKind] {
        &self.decorators
    }

    pub fn is_decorated(&self, kind: DecoratorKind) -> bool {
        self.decorators.contains(&kind)
    }

    pub fn options(&self) -> &NumericOptions {
        &self.options
    }

    /// Replaces the numeric options here and in every component.
    pub fn set_options(&mut self, options: NumericOptions) -> Result<()> {
        options.validate()?;
        for c in self.model.components_mut() {
            c.set_options(options)?;
        }
        self.options = options;
        self.refresh_imputation()
    }

    pub fn with_options(mut self, options: NumericOptions) -> Result<Self> {
        self.set_options(options)?;
        Ok(self)
    }

    /// Whether the model supplies `kernel` and it has not been hidden.
    pub fn has_kernel(&self, kernel: Kernel) -> bool {
        self.model.provides(kernel) && !self.hidden.contains(&kernel)
    }

    /// A copy with the given analytic kernels masked, so that imputed or
    /// fallback paths are used in their place.
    pub fn without_kernels(&self, kernels: &[Kernel]) -> Result<Distribution> {
        let mut d = self.clone();
        for k in kernels {
            if !d.hidden.contains(k) {
                d.hidden.push(*k);
            }
        }
        d.refresh_imputation()?;
        Ok(d)
    }

    pub(crate) fn missing(&self, method: &str, hint: &str) -> Error {
        Error::CapabilityMissing {
            method: method.to_string(),
            distribution: self.short_name.clone(),
            hint: hint.to_string(),
        }
    }

    // ---- parameters ----

    pub(crate) fn param_entries(&self) -> Vec<CollectionEntry> {
        let mut out = component_entries(self.model.components());
        if let Some(set) = self.model.params() {
            if !set.is_empty() {
                out.push(CollectionEntry {
                    prefix: self.model.param_prefix().to_string(),
                    path: Vec::new(),
                    set: set.clone(),
                });
            }
        }
        let outer = self.model.outer_prefix();
        if !outer.is_empty() {
            for e in &mut out {
                e.prefix = prefixed(outer, &e.prefix);
            }
        }
        out
    }

    /// All parameters, including prefixed component parameters of composites.
    pub fn parameters(&self) -> Result<ParameterSetCollection> {
        ParameterSetCollection::from_entries(self.param_entries())
    }

    pub fn get_parameter(&self, id: &str) -> Result<ParamValue> {
        Ok(self.parameters()?.get(id)?.clone())
    }

    /// Updates parameters by id. Nothing changes if any update is rejected.
    pub fn set_parameters(&mut self, args: &Args) -> Result<()> {
        let coll = self.parameters()?;
        let routed = coll.route(args)?;
        let mut next = self.clone();
        for (idx, inner) in routed {
            let path = coll.entries()[idx].path.clone();
            next.set_at(&path, &owned_args(&inner))?;
        }
        *self = next;
        Ok(())
    }

    pub(crate) fn set_at(&mut self, path: &[usize], args: &Args) -> Result<()> {
        match path.split_first() {
            None => self
                .model
                .params_mut()
                .ok_or_else(|| {
                    Error::UnknownParameter(
                        args.first().map(|a| a.0.to_string()).unwrap_or_default(),
                    )
                })?
                .set_values(args)?,
            Some((i, rest)) => self.model.components_mut()[*i].set_at(rest, args)?,
        }
        self.model.refresh()?;
        self.refresh_imputation()
    }

    // ---- composites ----

    pub fn components(&self) -> &[Distribution] {
        self.model.components()
    }

    /// Components of a composite, all of them or the one with the given label.
    pub fn wrapped_models(&self, name: Option<&str>) -> Result<Vec<&Distribution>> {
        let comps = self.model.components();
        if comps.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "{} does not wrap other distributions",
                self.short_name
            )));
        }
        match name {
            None => Ok(comps.iter().collect()),
            Some(n) => find_component(comps, n).map(|c| vec![c]),
        }
    }

    // ---- unchecked kernel access ----

    /// Density or mass at `x` without domain validation.
    pub fn pdf_at(&self, x: f64) -> Result<f64> {
        if self.has_kernel(Kernel::Pdf) {
            self.model.pdf(x)
        } else if self.is_decorated(DecoratorKind::FunctionImputation) {
            self.imputed_pdf(x)
        } else {
            Err(self.missing("pdf", "decorate with FunctionImputation to impute it"))
        }
    }

    /// Distribution function at `x` without domain validation.
    pub fn cdf_at(&self, x: f64) -> Result<f64> {
        if self.has_kernel(Kernel::Cdf) {
            self.model.cdf(x)
        } else if self.is_decorated(DecoratorKind::FunctionImputation) {
            self.imputed_cdf(x)
        } else {
            Err(self.missing("cdf", "decorate with FunctionImputation to impute it"))
        }
    }

    /// `1 - F(x)`, using a tail-accurate kernel where the model has one.
    pub fn ccdf_at(&self, x: f64) -> Result<f64> {
        if self.has_kernel(Kernel::Cdf) {
            if let Some(s) = self.model.survival(x) {
                return Ok(s);
            }
        }
        Ok(1.0 - self.cdf_at(x)?)
    }

    /// Generalised inverse of the cdf without domain validation.
    pub fn quantile_at(&self, p: f64) -> Result<f64> {
        if self.has_kernel(Kernel::Quantile) {
            let x = self.model.quantile(p)?;
            if self.value_support() == ValueSupport::Continuous && self.has_kernel(Kernel::Cdf) {
                return self.settle_quantile(x, p);
            }
            Ok(x)
        } else if self.is_decorated(DecoratorKind::FunctionImputation) {
            self.imputed_quantile(p)
        } else {
            Err(self.missing("quantile", "decorate with FunctionImputation to impute it"))
        }
    }

    /// Moves a closed-form quantile up by a few ulps where rounding left
    /// `F(x)` just below `p`.
    fn settle_quantile(&self, x: f64, p: f64) -> Result<f64> {
        if !x.is_finite() || p <= 0.0 || p >= 1.0 {
            return Ok(x);
        }
        let mut y = x;
        let mut step = f64::EPSILON * x.abs().max(f64::MIN_POSITIVE);
        for _ in 0..64 {
            if self.model.cdf(y)? >= p {
                return Ok(y);
            }
            y = (y + step).max(y.next_up());
            step *= 2.0;
        }
        Ok(x)
    }

    pub(crate) fn can_quantile(&self) -> bool {
        self.has_kernel(Kernel::Quantile) || self.is_decorated(DecoratorKind::FunctionImputation)
    }

    pub(crate) fn can_cdf(&self) -> bool {
        self.has_kernel(Kernel::Cdf)
            || (self.is_decorated(DecoratorKind::FunctionImputation)
                && self.has_kernel(Kernel::Pdf))
    }

    pub(crate) fn can_pdf(&self) -> bool {
        self.has_kernel(Kernel::Pdf)
            || (self.is_decorated(DecoratorKind::FunctionImputation)
                && self.has_kernel(Kernel::Cdf))
    }

    /// One draw: the rand kernel, else inverse transform through the quantile.
    pub fn draw(&self, rng: &mut dyn RngCore) -> Result<f64> {
        if self.has_kernel(Kernel::Rand) {
            return self.model.rand(rng);
        }
        if !self.can_quantile() {
            return Err(self.missing(
                "rand",
                "decorate with FunctionImputation to sample by inversion",
            ));
        }
        let u = open_unit(rng);
        self.quantile_at(u)
    }

    pub fn pdf_point_at(&self, x: &[f64]) -> Result<f64> {
        if self.is_univariate() {
            return self.pdf_at(x[0]);
        }
        if self.has_kernel(Kernel::Pdf) {
            self.model.pdf_point(x)
        } else {
            Err(self.missing("pdf", "no density is defined for this distribution"))
        }
    }

    pub fn cdf_point_at(&self, x: &[f64]) -> Result<f64> {
        if self.is_univariate() {
            return self.cdf_at(x[0]);
        }
        if self.has_kernel(Kernel::Cdf) {
            self.model.cdf_point(x)
        } else {
            Err(self.missing(
                "cdf",
                "no distribution function is defined for this distribution",
            ))
        }
    }

    pub fn draw_point(&self, rng: &mut dyn RngCore) -> Result<Vec<f64>> {
        if self.is_univariate() {
            return Ok(vec![self.draw(rng)?]);
        }
        if self.has_kernel(Kernel::Rand) {
            self.model.rand_point(rng)
        } else {
            Err(self.missing("rand", "no sampler is defined for this distribution"))
        }
    }

    // ---- validated public evaluation ----

    fn check_values(&self, xs: &[f64]) -> Result<()> {
        let t = self.type_set();
        let dim = t.dimension();
        let bad: Vec<Vec<f64>> = xs
            .iter()
            .filter(|x| {
                if dim == 1 {
                    !t.contains_num(**x)
                } else {
                    !t.contains_point(&vec![**x; dim]).unwrap_or(false)
                }
            })
            .map(|x| vec![*x])
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Domain {
                points: format_points(&bad),
                domain: t.to_string(),
            })
        }
    }

    fn check_points(&self, points: &[Vec<f64>]) -> Result<()> {
        let t = self.type_set();
        let mut bad = Vec::new();
        for p in points {
            if !t.contains_point(p)? {
                bad.push(p.clone());
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Domain {
                points: format_points(&bad),
                domain: t.to_string(),
            })
        }
    }

    fn broadcast(&self, x: f64) -> Vec<f64> {
        vec![x; self.dimension()]
    }

    pub fn pdf(&self, xs: &[f64]) -> Result<Vec<f64>> {
        self.pdf_with(xs, EvalOptions::default())
    }

    pub fn cdf(&self, xs: &[f64]) -> Result<Vec<f64>> {
        self.cdf_with(xs, EvalOptions::default())
    }

    pub fn quantile(&self, ps: &[f64]) -> Result<Vec<f64>> {
        self.quantile_with(ps, EvalOptions::default())
    }

    /// Density or mass; `log` gives the natural log, `lower_tail` is ignored.
    pub fn pdf_with(&self, xs: &[f64], opts: EvalOptions) -> Result<Vec<f64>> {
        self.check_values(xs)?;
        xs.iter()
            .map(|x| {
                let v = self.pdf_point_at(&self.broadcast(*x))?;
                Ok(if opts.log { v.ln() } else { v })
            })
            .collect()
    }

    pub fn cdf_with(&self, xs: &[f64], opts: EvalOptions) -> Result<Vec<f64>> {
        self.check_values(xs)?;
        xs.iter()
            .map(|x| {
                let v = if !self.is_univariate() {
                    let f = self.cdf_point_at(&self.broadcast(*x))?;
                    if opts.lower_tail {
                        f
                    } else {
                        1.0 - f
                    }
                } else if opts.lower_tail {
                    self.cdf_at(*x)?
                } else {
                    self.ccdf_at(*x)?
                };
                Ok(if opts.log { v.ln() } else { v })
            })
            .collect()
    }

    /// Quantiles; `log` means the inputs are log-probabilities and
    /// `lower_tail = false` means they are upper-tail probabilities.
    pub fn quantile_with(&self, ps: &[f64], opts: EvalOptions) -> Result<Vec<f64>> {
        if !self.is_univariate() {
            return Err(Error::Unsupported(
                "quantiles are only defined for univariate distributions".into(),
            ));
        }
        let probs: Vec<f64> = ps
            .iter()
            .map(|p| {
                let p = if opts.log { p.exp() } else { *p };
                if opts.lower_tail {
                    p
                } else {
                    1.0 - p
                }
            })
            .collect();
        let bad: Vec<Vec<f64>> = probs
            .iter()
            .zip(ps)
            .filter(|(p, _)| !(0.0..=1.0).contains(*p))
            .map(|(_, raw)| vec![*raw])
            .collect();
        if !bad.is_empty() {
            return Err(Error::Domain {
                points: format_points(&bad),
                domain: "[0,1]".into(),
            });
        }
        probs.iter().map(|p| self.quantile_at(*p)).collect()
    }

    /// Evaluates any point-wise function. Exotic functions need the
    /// ExoticStatistics decorator.
    pub fn evaluate(&self, fun: Fun, xs: &[f64], opts: EvalOptions) -> Result<Evaluation> {
        let values = match fun {
            Fun::Pdf => self.pdf_with(xs, opts)?,
            Fun::Cdf => self.cdf_with(xs, opts)?,
            Fun::Quantile => self.quantile_with(xs, opts)?,
            Fun::Survival => self.survival(xs, opts.log)?,
            Fun::Hazard => self.hazard(xs, opts.log)?,
            Fun::CumHazard => self.cum_hazard(xs, opts.log)?,
        };
        if opts.simplify {
            Ok(Evaluation::Values(values))
        } else {
            Ok(Evaluation::Table(EvaluationMatrix::from_columns(
                vec![self.short_name.clone()],
                vec![values],
            )?))
        }
    }

    pub fn pdf_points(&self, points: &[Vec<f64>]) -> Result<Vec<f64>> {
        self.check_points(points)?;
        points.iter().map(|p| self.pdf_point_at(p)).collect()
    }

    pub fn cdf_points(&self, points: &[Vec<f64>]) -> Result<Vec<f64>> {
        self.check_points(points)?;
        points.iter().map(|p| self.cdf_point_at(p)).collect()
    }

    /// `n` draws; a seed makes the sequence reproducible.
    pub fn rand(&self, n: usize, seed: Option<u64>) -> Result<Vec<f64>> {
        let mut rng = make_rng(seed);
        self.rand_with(n, &mut rng)
    }

    pub fn rand_with(&self, n: usize, rng: &mut dyn RngCore) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "the number of draws must be at least 1".into(),
            ));
        }
        if !self.is_univariate() {
            return Err(Error::Unsupported(
                "use rand_points for multivariate distributions".into(),
            ));
        }
        (0..n).map(|_| self.draw(rng)).collect()
    }

    pub fn rand_points(&self, n: usize, seed: Option<u64>) -> Result<Vec<Vec<f64>>> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "the number of draws must be at least 1".into(),
            ));
        }
        let mut rng = make_rng(seed);
        (0..n).map(|_| self.draw_point(&mut rng)).collect()
    }

    /// P((a, b]) = F(b) - F(a), clamped to [0, 1].
    pub fn prob_interval(&self, a: f64, b: f64) -> Result<f64> {
        if a.is_nan() || b.is_nan() || a > b {
            return Err(Error::InvalidArgument(format!(
                "interval bounds must satisfy a <= b, got ({a}, {b}]"
            )));
        }
        if a == b {
            return Ok(0.0);
        }
        let fb = if b == f64::INFINITY {
            1.0
        } else {
            self.cdf_at(b)?
        };
        let fa = if a == f64::NEG_INFINITY {
            0.0
        } else {
            self.cdf_at(a)?
        };
        Ok((fb - fa).clamp(0.0, 1.0))
    }

    // ---- statistics ----

    fn statistic(
        &self,
        name: &str,
        analytic: Option<f64>,
        numeric: impl FnOnce(&Self) -> Result<f64>,
    ) -> Result<f64> {
        if let Some(v) = analytic {
            return Ok(v);
        }
        if self.is_decorated(DecoratorKind::CoreStatistics) {
            return numeric(self);
        }
        Err(self.missing(name, "no closed form; decorate with CoreStatistics"))
    }

    pub fn mean(&self) -> Result<f64> {
        self.statistic("mean", self.model.mean(), Self::numeric_mean)
    }

    pub fn variance(&self) -> Result<f64> {
        self.statistic("variance", self.model.variance(), Self::numeric_variance)
    }

    pub fn stdev(&self) -> Result<f64> {
        Ok(self.variance()?.sqrt())
    }

    pub fn skewness(&self) -> Result<f64> {
        self.statistic("skewness", self.model.skewness(), Self::numeric_skewness)
    }

    /// Kurtosis, excess by default.
    pub fn kurtosis(&self, excess: bool) -> Result<f64> {
        let k = self.statistic("kurtosis", self.model.kurtosis(), Self::numeric_kurtosis)?;
        Ok(if excess { k } else { k + 3.0 })
    }

    /// Entropy in the given base (2 is the usual default).
    pub fn entropy(&self, base: f64) -> Result<f64> {
        if !(base > 0.0 && base != 1.0) {
            return Err(Error::InvalidArgument(format!(
                "invalid logarithm base {base}"
            )));
        }
        self.statistic("entropy", self.model.entropy(base), |d| {
            d.numeric_entropy(base)
        })
    }

    pub fn mgf(&self, t: f64) -> Result<f64> {
        self.statistic("mgf", self.model.mgf(t), |d| d.numeric_mgf(t))
    }

    /// Characteristic function as (real, imaginary) parts.
    pub fn cf(&self, t: f64) -> Result<(f64, f64)> {
        if let Some(v) = self.model.cf(t) {
            return Ok(v);
        }
        if self.is_decorated(DecoratorKind::CoreStatistics) {
            return self.numeric_cf(t);
        }
        Err(self.missing("cf", "no closed form; decorate with CoreStatistics"))
    }

    pub fn pgf(&self, z: f64) -> Result<f64> {
        self.statistic("pgf", self.model.pgf(z), |d| d.numeric_pgf(z))
    }

    pub fn median(&self) -> Result<f64> {
        if !self.is_univariate() {
            return Err(Error::Unsupported(
                "median of a multivariate distribution".into(),
            ));
        }
        self.quantile_at(0.5)
    }

    /// Structured summary; its `Display` gives the printed block.
    pub fn describe(&self) -> Summary {
        let stats = match self.mean() {
            Ok(mean) => Some(QuickStatistics {
                mean,
                variance: self.variance().ok(),
                skewness: self.skewness().ok(),
                excess_kurtosis: self.kurtosis(true).ok(),
            }),
            Err(_) => None,
        };
        Summary {
            name: self.name.clone(),
            short_name: self.short_name.clone(),
            description: self.description.clone(),
            parameters: self.parameters().map(|p| p.rows()).unwrap_or_default(),
            traits: self.traits(),
            properties: self.properties(),
            statistics: stats,
            decorators: self.decorators.iter().map(|d| d.to_string()).collect(),
        }
    }
}

pub(crate) fn find_component<'a>(
    comps: &'a [Distribution],
    name: &str,
) -> Result<&'a Distribution> {
    let labels = component_labels(comps);
    if let Some(i) = labels.iter().position(|l| l == name) {
        return Ok(&comps[i]);
    }
    // short name with an ordinal among equal short names, e.g. "Norm1"
    for (i, c) in comps.iter().enumerate() {
        let sn = c.short_name();
        if let Some(rest) = name.strip_prefix(sn) {
            if let Ok(k) = rest.parse::<usize>() {
                let same: Vec<usize> = comps
                    .iter()
                    .enumerate()
                    .filter(|(_, o)| o.short_name() == sn)
                    .map(|(j, _)| j)
                    .collect();
                if k >= 1 && k <= same.len() && same[k - 1] == i {
                    return Ok(c);
                }
            }
        }
    }
    Err(Error::InvalidArgument(format!(
        "no wrapped model named '{name}'; available: {}",
        labels.join(", ")
    )))
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.parameters().map(|p| p.rows()).unwrap_or_default();
        let inner: Vec<String> = rows
            .iter()
            .map(|r| format!("{} = {}", r.id, r.value))
            .collect();
        write!(f, "{}({})", self.short_name, inner.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuickStatistics {
    pub mean: f64,
    pub variance: Option<f64>,
    pub skewness: Option<f64>,
    pub excess_kurtosis: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub name: String,
    pub short_name: String,
    pub description: String,
    pub parameters: Vec<ParamRow>,
    pub traits: Traits,
    pub properties: Properties,
    pub statistics: Option<QuickStatistics>,
    pub decorators: Vec<String>,
}

/// Rounds to `digits` significant digits and prints the shortest form;
/// magnitudes below 1e-10 print as 0.
pub fn format_significant(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return format_number(v);
    }
    if v.abs() < 1e-10 {
        return "0".into();
    }
    let digits = digits.max(1);
    let rounded: f64 = format!("{:.*e}", digits - 1, v).parse().unwrap_or(v);
    let s = format!("{rounded}");
    // very large or small values read better in exponent form
    if rounded.abs() >= 1e15 || rounded.abs() < 1e-5 {
        format!("{rounded:e}")
    } else {
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        if let Some(s) = &self.statistics {
            let opt = |v: Option<f64>| v.map_or("NA".to_string(), |x| format_significant(x, 7));
            writeln!(f)?;
            writeln!(f, "  Quick Statistics")?;
            writeln!(f, "\tMean:\t\t{}", format_significant(s.mean, 7))?;
            writeln!(f, "\tVariance:\t{}", opt(s.variance))?;
            writeln!(f, "\tSkewness:\t{}", opt(s.skewness))?;
            writeln!(f, "\tEx. Kurtosis:\t{}", opt(s.excess_kurtosis))?;
        }
        writeln!(f)?;
        writeln!(
            f,
            " Support: {} \tScientific Type: {}",
            self.properties.support, self.traits.type_set
        )?;
        writeln!(f)?;
        writeln!(f, " Traits:\t{}", self.traits)?;
        writeln!(f, " Properties:\t{}", self.properties)?;
        if !self.decorators.is_empty() {
            writeln!(f)?;
            writeln!(f, " Decorated with:  {}", self.decorators.join(", "))?;
        }
        Ok(())
    }
}
