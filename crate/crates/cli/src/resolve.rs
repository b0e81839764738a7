//! Turns parsed expressions into distributions.

use std::path::Path;

use compdist::compose::{self, VectorDistribution, Weights};
use compdist::custom::CustomBuilder;
use compdist::{catalog, DecoratorKind, Distribution, MathSet, NumericOptions, ParamValue};

use crate::error::CliError;
use crate::parser::{Arg, Expr};

/// A resolved expression: a single distribution or a vector of them.
#[derive(Debug, Clone)]
pub enum Resolved {
    Dist(Distribution),
    Vector(VectorDistribution),
}

impl Resolved {
    pub fn into_dist(self) -> Result<Distribution, CliError> {
        match self {
            Resolved::Dist(d) => Ok(d),
            Resolved::Vector(_) => Err(CliError::Usage(
                "this command needs a single distribution, not a vector".into(),
            )),
        }
    }
}

/// Constructor argument order for positional arguments, per class.
const POSITIONAL: [(&str, &[&str]); 15] = [
    ("Normal", &["mean", "var"]),
    ("Binomial", &["size", "prob"]),
    ("Exponential", &["rate"]),
    ("Gamma", &["shape", "rate"]),
    ("StudentT", &["df"]),
    ("Uniform", &["lower", "upper"]),
    ("DiscreteUniform", &["lower", "upper"]),
    ("Degenerate", &["mean"]),
    ("Arcsine", &["lower", "upper"]),
    ("Poisson", &["rate"]),
    ("Empirical", &["samples"]),
    ("EmpiricalMV", &["data", "cols"]),
    ("WeightedDiscrete", &["x", "pdf"]),
    ("Epanechnikov", &[]),
    ("Triangular", &[]),
];

/// Canonical class name for a class or short name.
fn class_of(name: &str) -> Option<&'static str> {
    catalog::list_catalog(Default::default())
        .into_iter()
        .find(|e| e.class.eq_ignore_ascii_case(name) || e.short_name.eq_ignore_ascii_case(name))
        .map(|e| e.class)
}

/// Reads numbers separated by whitespace or commas.
pub fn read_numbers(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read '{}': {e}", path.display())))?;
    parse_numbers(&text)
        .map_err(|bad| CliError::Usage(format!("'{}': '{bad}' is not a number", path.display())))
}

/// Parses a whitespace- or comma-separated list of numbers; the error is the
/// first offending token.
pub fn parse_numbers(text: &str) -> Result<Vec<f64>, String> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_number(t).ok_or_else(|| t.to_string()))
        .collect()
}

fn parse_number(t: &str) -> Option<f64> {
    match t.to_ascii_lowercase().as_str() {
        "inf" | "+inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        s => s.parse().ok().filter(|v: &f64| !v.is_nan()),
    }
}

pub struct Resolver {
    pub options: NumericOptions,
}

impl Resolver {
    pub fn new(options: NumericOptions) -> Self {
        Resolver { options }
    }

    pub fn resolve(&self, e: &Expr) -> Result<Resolved, CliError> {
        let Expr::Call { name, args, .. } = e else {
            return Err(CliError::Usage(format!(
                "expected a distribution expression, found '{e}'"
            )));
        };
        let lname = name.to_ascii_lowercase();
        let out = match lname.as_str() {
            "truncate" | "huberize" => {
                let (comp, rest) = self.split_component(name, args)?;
                let (lower, upper) = bounds(name, rest)?;
                let d = if lname == "truncate" {
                    compose::truncate(comp, lower, upper)?
                } else {
                    compose::huberize(comp, lower, upper)?
                };
                Resolved::Dist(d)
            }
            "mix" | "mixture" => {
                let mut weights = Weights::Uniform;
                let mut rest = Vec::new();
                for a in args {
                    if a.name.as_deref() == Some("weights") {
                        weights = match number_list(&a.value)? {
                            Some(w) => Weights::Given(w),
                            None => match &a.value {
                                Expr::Str(s) | Expr::Ident(s) if s == "uniform" => Weights::Uniform,
                                v => return Err(CliError::Usage(format!("invalid weights '{v}'"))),
                            },
                        };
                    } else {
                        rest.push(a.clone());
                    }
                }
                Resolved::Dist(compose::mixture(self.components(name, &rest)?, weights)?)
            }
            "product" => Resolved::Dist(compose::product(self.components(name, args)?)?),
            "vector" => Resolved::Vector(match parametric_class(args) {
                Some(class) => {
                    let table = self.table(&args[1..])?;
                    let table: Vec<(&str, Vec<ParamValue>)> =
                        table.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
                    VectorDistribution::parametric(class, &table)?
                }
                None => VectorDistribution::new(self.components(name, args)?)?,
            }),
            "decorate" => {
                let (mut d, rest) = self.split_component(name, args)?;
                let mut kinds = Vec::new();
                for a in rest {
                    let text = match &a.value {
                        Expr::Ident(s) | Expr::Str(s) => s.as_str(),
                        v => {
                            return Err(CliError::Usage(format!(
                                "expected a decorator name, found '{v}'"
                            )))
                        }
                    };
                    kinds.push(text.parse::<DecoratorKind>()?);
                }
                d.decorate(&kinds)?;
                Resolved::Dist(d)
            }
            "custom" => Resolved::Dist(self.custom(args)?),
            _ => {
                let class = class_of(name)
                    .ok_or_else(|| CliError::Usage(format!("unknown distribution '{name}'")))?;
                let params = self.catalog_args(class, args)?;
                let params: Vec<(&str, ParamValue)> = params
                    .iter()
                    .map(|(k, v)| (k.as_str(), v.clone()))
                    .collect();
                Resolved::Dist(catalog::build(class, &params)?)
            }
        };
        Ok(match out {
            Resolved::Dist(d) => Resolved::Dist(d.with_options(self.options)?),
            Resolved::Vector(mut v) => {
                v.set_options(self.options)?;
                Resolved::Vector(v)
            }
        })
    }

    pub fn resolve_dist(&self, e: &Expr) -> Result<Distribution, CliError> {
        self.resolve(e)?.into_dist()
    }

    fn split_component<'a>(
        &self,
        op: &str,
        args: &'a [Arg],
    ) -> Result<(Distribution, &'a [Arg]), CliError> {
        match args.first() {
            Some(Arg {
                name: None,
                value: v @ Expr::Call { .. },
            }) => Ok((self.resolve_dist(v)?, &args[1..])),
            _ => Err(CliError::Usage(format!(
                "{op} needs a distribution as its first argument"
            ))),
        }
    }

    /// Components for mix/product/vector: either a list of expressions or a
    /// class name followed by parameter columns.
    fn components(&self, op: &str, args: &[Arg]) -> Result<Vec<Distribution>, CliError> {
        if let Some(class) = parametric_class(args) {
            let table = self.table(&args[1..])?;
            let table: Vec<(&str, Vec<ParamValue>)> =
                table.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
            return Ok(compose::parametric(class, &table)?);
        }
        if args.is_empty() {
            return Err(CliError::Usage(format!(
                "{op} needs at least one component"
            )));
        }
        if let [Arg {
            name: None,
            value: v @ Expr::Call { name, .. },
        }] = args
        {
            if name == "vector" && op != "vector" {
                if let Resolved::Vector(vd) = self.resolve(v)? {
                    return Ok(vd.components().to_vec());
                }
            }
        }
        args.iter()
            .map(|a| match a {
                Arg {
                    name: None,
                    value: v @ Expr::Call { .. },
                } => self.resolve_dist(v),
                Arg { name: Some(n), .. } => Err(CliError::Usage(format!(
                    "unexpected argument '{n}' to {op}"
                ))),
                Arg { value, .. } => Err(CliError::Usage(format!(
                    "{op} expects distributions, found '{value}'"
                ))),
            })
            .collect()
    }

    /// Parameter columns for parametric construction; list entries are one
    /// value per component.
    fn table(&self, args: &[Arg]) -> Result<Vec<(String, Vec<ParamValue>)>, CliError> {
        args.iter()
            .map(|a| {
                let id = a.name.clone().ok_or_else(|| {
                    CliError::Usage(format!(
                        "parameter columns must be named, found '{}'",
                        a.value
                    ))
                })?;
                let column = match &a.value {
                    Expr::List(items) => items
                        .iter()
                        .map(|v| self.value(v))
                        .collect::<Result<Vec<_>, _>>()?,
                    Expr::File(p) => read_numbers(Path::new(p))?
                        .into_iter()
                        .map(ParamValue::Num)
                        .collect(),
                    v => vec![self.value(v)?],
                };
                Ok((id, column))
            })
            .collect()
    }

    fn catalog_args(
        &self,
        class: &str,
        args: &[Arg],
    ) -> Result<Vec<(String, ParamValue)>, CliError> {
        let order = POSITIONAL
            .iter()
            .find(|(c, _)| *c == class)
            .map(|(_, o)| *o)
            .unwrap_or(&[]);
        let mut out = Vec::new();
        let mut next = 0;
        for a in args {
            let id = match &a.name {
                Some(n) => n.clone(),
                None => {
                    let id = order.get(next).ok_or_else(|| {
                        CliError::Usage(format!(
                            "{class} takes at most {} positional arguments",
                            order.len()
                        ))
                    })?;
                    next += 1;
                    id.to_string()
                }
            };
            out.push((id, self.value(&a.value)?));
        }
        Ok(out)
    }

    fn value(&self, v: &Expr) -> Result<ParamValue, CliError> {
        if let Some(xs) = number_list(v)? {
            return Ok(ParamValue::Vector(xs));
        }
        match v {
            Expr::Number(x) => Ok(ParamValue::Num(*x)),
            Expr::Infinity(neg) => Ok(ParamValue::Num(if *neg {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            })),
            Expr::Str(s) | Expr::Ident(s) => Ok(ParamValue::Token(s.clone())),
            other => Err(CliError::Usage(format!(
                "'{other}' is not a parameter value"
            ))),
        }
    }

    /// `custom(name=..., support=[...], pdf=...)` for a finite support, or
    /// `custom(name=..., lower=a, upper=b, pdf=c)` for a constant density on
    /// an interval.
    fn custom(&self, args: &[Arg]) -> Result<Distribution, CliError> {
        let mut name = None;
        let mut short = None;
        let mut support = None;
        let mut lower = None;
        let mut upper = None;
        let mut pdf = None;
        let mut decorators = Vec::new();
        for a in args {
            let key = a.name.as_deref().ok_or_else(|| {
                CliError::Usage(format!(
                    "custom arguments must be named, found '{}'",
                    a.value
                ))
            })?;
            match key {
                "name" => name = Some(text(&a.value)?),
                "short" => short = Some(text(&a.value)?),
                "support" => support = number_list(&a.value)?,
                "lower" => lower = Some(scalar(&a.value)?),
                "upper" => upper = Some(scalar(&a.value)?),
                "pdf" => {
                    pdf = Some(match number_list(&a.value)? {
                        Some(xs) => xs,
                        None => vec![scalar(&a.value)?],
                    })
                }
                "decorators" => {
                    let items = match &a.value {
                        Expr::List(items) => items.clone(),
                        v => vec![v.clone()],
                    };
                    for i in items {
                        decorators.push(text(&i)?.parse::<DecoratorKind>()?);
                    }
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown custom argument '{other}'"
                    )))
                }
            }
        }
        let name = name.ok_or_else(|| CliError::Usage("custom needs a name".into()))?;
        let pdf = pdf.ok_or_else(|| CliError::Usage("custom needs a pdf".into()))?;
        let mut b = CustomBuilder::new(&name).decorators(&decorators);
        if let Some(s) = short {
            b = b.short_name(&s);
        }
        b = match (support, lower, upper) {
            (Some(points), None, None) => {
                if pdf.len() != 1 && pdf.len() != points.len() {
                    return Err(CliError::Usage(format!(
                        "custom pdf has {} values for {} support points",
                        pdf.len(),
                        points.len()
                    )));
                }
                let integer = points.iter().all(|x| x.fract() == 0.0);
                let table: Vec<(f64, f64)> = points
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (*x, pdf[if pdf.len() == 1 { 0 } else { i }]))
                    .collect();
                b.type_set(if integer {
                    MathSet::Integers
                } else {
                    MathSet::Reals
                })
                .support(MathSet::finite_nums(points))
                .pdf(move |x, _| {
                    table
                        .iter()
                        .find(|(p, _)| *p == x[0])
                        .map_or(0.0, |(_, m)| *m)
                })
            }
            (None, Some(lo), Some(hi)) => {
                let density = pdf[0];
                let interval = MathSet::interval(lo, hi, compdist::sets::Closure::Closed)?;
                b.type_set(MathSet::Reals)
                    .support(interval)
                    .pdf(move |_, _| density)
            }
            _ => {
                return Err(CliError::Usage(
                    "custom needs either support=[...] or lower= and upper=".into(),
                ))
            }
        };
        Ok(b.build()?)
    }
}

fn parametric_class(args: &[Arg]) -> Option<&'static str> {
    match args.first() {
        Some(Arg {
            name: None,
            value: Expr::Ident(s),
        }) => class_of(s),
        _ => None,
    }
}

fn bounds(op: &str, args: &[Arg]) -> Result<(Option<f64>, Option<f64>), CliError> {
    let (mut lower, mut upper) = (None, None);
    let mut positional = 0;
    for a in args {
        let slot = match a.name.as_deref() {
            Some("lower") => &mut lower,
            Some("upper") => &mut upper,
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "unknown argument '{other}' to {op}"
                )))
            }
            None => {
                positional += 1;
                match positional {
                    1 => &mut lower,
                    2 => &mut upper,
                    _ => {
                        return Err(CliError::Usage(format!(
                            "{op} takes a distribution and two bounds"
                        )))
                    }
                }
            }
        };
        *slot = Some(scalar(&a.value)?);
    }
    Ok((lower, upper))
}

fn scalar(v: &Expr) -> Result<f64, CliError> {
    match v {
        Expr::Number(x) => Ok(*x),
        Expr::Infinity(neg) => Ok(if *neg {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }),
        other => Err(CliError::Usage(format!(
            "expected a number, found '{other}'"
        ))),
    }
}

fn text(v: &Expr) -> Result<String, CliError> {
    match v {
        Expr::Str(s) | Expr::Ident(s) => Ok(s.clone()),
        other => Err(CliError::Usage(format!("expected a name, found '{other}'"))),
    }
}

/// A list of numbers or an `@file`; `None` for anything else.
fn number_list(v: &Expr) -> Result<Option<Vec<f64>>, CliError> {
    match v {
        Expr::List(items) => items
            .iter()
            .map(scalar)
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
        Expr::File(p) => read_numbers(Path::new(p)).map(Some),
        _ => Ok(None),
    }
}
