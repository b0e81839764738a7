use rand::{Rng, RngCore};

use crate::distribution::{Distribution, Kernel, Model, ValueSupport};
use crate::error::{Error, Result};
use crate::params::{Args, ParamValue, ParameterDef, ParameterSet};
use crate::sets::MathSet;

use super::model_common;

/// Sorted distinct values with their probabilities and running totals.
#[derive(Debug, Clone, Default)]
struct Table {
    x: Vec<f64>,
    mass: Vec<f64>,
    cum: Vec<f64>,
}

impl Table {
    fn from_pairs(mut pairs: Vec<(f64, f64)>) -> Table {
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut t = Table::default();
        for (x, m) in pairs {
            if t.x.last() == Some(&x) {
                *t.mass.last_mut().unwrap() += m;
            } else {
                t.x.push(x);
                t.mass.push(m);
            }
        }
        let mut acc = 0.0;
        for m in &t.mass {
            acc += m;
            t.cum.push(acc);
        }
        t
    }

    fn pdf(&self, x: f64) -> f64 {
        match self.x.binary_search_by(|v| v.total_cmp(&x)) {
            Ok(i) => self.mass[i],
            Err(_) => 0.0,
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        let i = self.x.partition_point(|v| *v <= x);
        if i == 0 {
            0.0
        } else if i == self.x.len() {
            1.0
        } else {
            self.cum[i - 1].min(1.0)
        }
    }

    fn survival(&self, x: f64) -> f64 {
        let i = self.x.partition_point(|v| *v <= x);
        self.mass[i..].iter().sum::<f64>().clamp(0.0, 1.0)
    }

    fn quantile(&self, p: f64) -> f64 {
        let i = self.cum.partition_point(|c| *c < p);
        self.x[i.min(self.x.len() - 1)]
    }

    fn draw(&self, rng: &mut dyn RngCore) -> f64 {
        let u: f64 = rng.random();
        self.quantile(u.max(f64::MIN_POSITIVE))
    }

    fn expect(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.x.iter().zip(&self.mass).map(|(x, m)| m * g(*x)).sum()
    }

    fn central(&self, k: i32) -> f64 {
        let mu = self.expect(|x| x);
        self.expect(|x| (x - mu).powi(k))
    }

    fn skewness(&self) -> f64 {
        self.central(3) / self.central(2).powf(1.5)
    }

    fn kurtosis(&self) -> f64 {
        self.central(4) / self.central(2).powi(2) - 3.0
    }

    fn entropy(&self, base: f64) -> f64 {
        let h: f64 = self
            .mass
            .iter()
            .filter(|m| **m > 0.0)
            .map(|m| -m * m.ln())
            .sum();
        h / base.ln()
    }

    fn cf(&self, t: f64) -> (f64, f64) {
        (
            self.expect(|x| (t * x).cos()),
            self.expect(|x| (t * x).sin()),
        )
    }

    fn symmetric(&self) -> bool {
        let n = self.x.len();
        let centre = 0.5 * (self.x[0] + self.x[n - 1]);
        (0..n / 2 + 1).all(|i| {
            let j = n - 1 - i;
            (self.x[i] - centre + self.x[j] - centre).abs() < 1e-12
                && (self.mass[i] - self.mass[j]).abs() < 1e-12
        })
    }
}

macro_rules! table_model {
    ($t:ident) => {
        impl Model for $t {
            model_common!();

            fn type_set(&self) -> MathSet {
                MathSet::Reals
            }
            fn support(&self) -> MathSet {
                MathSet::finite_nums(self.table.x.iter().copied())
            }
            fn value_support(&self) -> ValueSupport {
                ValueSupport::Discrete
            }
            fn symmetric(&self) -> bool {
                self.table.symmetric()
            }
            fn provides(&self, _: Kernel) -> bool {
                true
            }
            fn pdf(&self, x: f64) -> Result<f64> {
                Ok(self.table.pdf(x))
            }
            fn cdf(&self, x: f64) -> Result<f64> {
                Ok(self.table.cdf(x))
            }
            fn survival(&self, x: f64) -> Option<f64> {
                Some(self.table.survival(x))
            }
            fn quantile(&self, p: f64) -> Result<f64> {
                Ok(self.table.quantile(p))
            }
            fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
                Ok(self.table.draw(rng))
            }
            fn mean(&self) -> Option<f64> {
                Some(self.table.expect(|x| x))
            }
            fn variance(&self) -> Option<f64> {
                Some(self.table.central(2))
            }
            fn skewness(&self) -> Option<f64> {
                Some(self.table.skewness())
            }
            fn kurtosis(&self) -> Option<f64> {
                Some(self.table.kurtosis())
            }
            fn entropy(&self, base: f64) -> Option<f64> {
                Some(self.table.entropy(base))
            }
            fn mgf(&self, t: f64) -> Option<f64> {
                Some(self.table.expect(|x| (t * x).exp()))
            }
            fn cf(&self, t: f64) -> Option<(f64, f64)> {
                Some(self.table.cf(t))
            }
            fn pgf(&self, z: f64) -> Option<f64> {
                Some(self.table.expect(|x| z.powf(x)))
            }
            fn refresh(&mut self) -> Result<()> {
                self.table = Self::tabulate(&self.params);
                Ok(())
            }
        }
    };
}

// ------------------------------------------------------------- Empirical

#[derive(Debug, Clone)]
struct EmpiricalModel {
    params: ParameterSet,
    table: Table,
}

impl EmpiricalModel {
    fn tabulate(params: &ParameterSet) -> Table {
        let s = params.vector("samples");
        let w = 1.0 / s.len() as f64;
        Table::from_pairs(s.iter().map(|x| (*x, w)).collect())
    }
}

table_model!(EmpiricalModel);

fn non_empty(v: ParamValue) -> std::result::Result<ParamValue, String> {
    match v {
        ParamValue::Num(x) => Ok(ParamValue::Vector(vec![x])),
        ParamValue::Vector(xs) if xs.is_empty() => Err("empty data".into()),
        ParamValue::Vector(xs) if xs.iter().any(|x| !x.is_finite()) => {
            Err("data must be finite".into())
        }
        other => Ok(other),
    }
}

/// Empirical distribution of a sample: relative frequencies of the
/// observed values. Default sample `[0]`.
pub fn empirical(args: &Args) -> Result<Distribution> {
    if let Some((_, v)) = args.iter().find(|(id, _)| *id == "samples") {
        if v.as_slice().is_some_and(|s| s.is_empty()) {
            return Err(Error::Construction(
                "Empirical needs at least one sample".into(),
            ));
        }
    }
    let params = ParameterSet::build(
        vec![
            ParameterDef::new("samples", vec![0.0], MathSet::Reals, "Data")
                .fixed()
                .with_transform(non_empty),
        ],
        vec![],
        None,
        args,
    )?;
    let table = EmpiricalModel::tabulate(&params);
    Ok(Distribution::new(
        "Empirical",
        "Emp",
        "Empirical Probability Distribution.",
        EmpiricalModel { params, table },
    ))
}

// ------------------------------------------------------ WeightedDiscrete

#[derive(Debug, Clone)]
struct WeightedDiscreteModel {
    params: ParameterSet,
    table: Table,
}

impl WeightedDiscreteModel {
    fn tabulate(params: &ParameterSet) -> Table {
        let x = params.vector("x");
        let w = params.vector("pdf");
        Table::from_pairs(x.iter().copied().zip(w.iter().copied()).collect())
    }
}

table_model!(WeightedDiscreteModel);

fn normalised(v: ParamValue) -> std::result::Result<ParamValue, String> {
    let w = match v {
        ParamValue::Num(x) => vec![x],
        ParamValue::Vector(w) => w,
        ParamValue::Token(t) => return Err(t),
    };
    if w.is_empty() {
        return Err("empty weights".into());
    }
    if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
        return Err(format!("{w:?}"));
    }
    let total: f64 = w.iter().sum();
    if !(total > 0.0) {
        return Err("weights sum to zero".into());
    }
    if (total - 1.0).abs() > 1e-9 {
        log::warn!("weights sum to {total}; renormalising");
        return Ok(ParamValue::Vector(w.iter().map(|x| x / total).collect()));
    }
    Ok(ParamValue::Vector(w))
}

fn as_vector(v: ParamValue) -> std::result::Result<ParamValue, String> {
    match v {
        ParamValue::Num(x) => Ok(ParamValue::Vector(vec![x])),
        ParamValue::Vector(xs) if xs.is_empty() => Err("empty support".into()),
        other => Ok(other),
    }
}

fn paired(set: &ParameterSet) -> std::result::Result<(), String> {
    let x = set.vector("x");
    if x.len() != set.vector("pdf").len() {
        return Err(format!(
            "x has {} values but pdf has {}",
            x.len(),
            set.vector("pdf").len()
        ));
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err("x values must be distinct".into());
    }
    Ok(())
}

/// Finite distribution on the points `x` with probabilities `pdf`.
/// Weights not summing to one are renormalised with a warning.
pub fn weighted_discrete(args: &Args) -> Result<Distribution> {
    let params = ParameterSet::build(
        vec![
            ParameterDef::new("x", vec![1.0], MathSet::Reals, "Support points")
                .with_transform(as_vector),
            ParameterDef::new(
                "pdf",
                vec![1.0],
                MathSet::closed(0.0, 1.0),
                "Probability weights",
            )
            .with_transform(normalised),
        ],
        vec![],
        Some(paired),
        args,
    )?;
    let table = WeightedDiscreteModel::tabulate(&params);
    Ok(Distribution::new(
        "Weighted Discrete",
        "WeightDisc",
        "Weighted Discrete Probability Distribution.",
        WeightedDiscreteModel { params, table },
    ))
}

// ----------------------------------------------------------- EmpiricalMV

#[derive(Debug, Clone)]
struct EmpiricalMvModel {
    params: ParameterSet,
    columns: Vec<Vec<f64>>,
}

impl EmpiricalMvModel {
    fn split(params: &ParameterSet) -> Vec<Vec<f64>> {
        let k = params.num("cols") as usize;
        let data = params.vector("data");
        let n = data.len() / k;
        (0..k).map(|j| data[j * n..(j + 1) * n].to_vec()).collect()
    }

    fn rows(&self) -> usize {
        self.columns[0].len()
    }

    fn fraction(&self, keep: impl Fn(usize, f64) -> bool) -> f64 {
        let n = self.rows();
        let hits = (0..n)
            .filter(|&i| self.columns.iter().enumerate().all(|(j, c)| keep(j, c[i])))
            .count();
        hits as f64 / n as f64
    }
}

impl Model for EmpiricalMvModel {
    model_common!();

    fn type_set(&self) -> MathSet {
        MathSet::Power(Box::new(MathSet::Reals), self.columns.len())
    }
    fn support(&self) -> MathSet {
        self.type_set()
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Discrete
    }
    fn provides(&self, k: Kernel) -> bool {
        k != Kernel::Quantile
    }
    fn pdf_point(&self, x: &[f64]) -> Result<f64> {
        Ok(self.fraction(|j, v| v == x[j]))
    }
    fn cdf_point(&self, x: &[f64]) -> Result<f64> {
        Ok(self.fraction(|j, v| v <= x[j]))
    }
    fn rand_point(&self, rng: &mut dyn RngCore) -> Result<Vec<f64>> {
        let i = rng.random_range(0..self.rows());
        Ok(self.columns.iter().map(|c| c[i]).collect())
    }
    fn refresh(&mut self) -> Result<()> {
        self.columns = Self::split(&self.params);
        Ok(())
    }
}

fn rectangular(set: &ParameterSet) -> std::result::Result<(), String> {
    let k = set.num("cols") as usize;
    let n = set.vector("data").len();
    if k == 0 || n == 0 || n % k != 0 {
        return Err(format!("{n} data values do not form {k} equal columns"));
    }
    Ok(())
}

/// Multivariate empirical distribution. `data` holds the columns one after
/// another; `cols` gives their number. Defaults to a single point at the
/// origin of the plane.
pub fn empirical_mv(args: &Args) -> Result<Distribution> {
    let params = ParameterSet::build(
        vec![
            ParameterDef::new(
                "data",
                vec![0.0, 0.0],
                MathSet::Reals,
                "Data, column by column",
            )
            .fixed()
            .with_transform(non_empty),
            ParameterDef::new("cols", 2.0, MathSet::Naturals, "Number of columns").fixed(),
        ],
        vec![],
        Some(rectangular),
        args,
    )?;
    let columns = EmpiricalMvModel::split(&params);
    Ok(Distribution::new(
        "Empirical Multivariate",
        "EmpMV",
        "Multivariate Empirical Probability Distribution.",
        EmpiricalMvModel { params, columns },
    ))
}

/// Builds an [`empirical_mv`] distribution from equal-length columns.
pub fn empirical_mv_columns(columns: &[Vec<f64>]) -> Result<Distribution> {
    let n = columns.first().map_or(0, Vec::len);
    if n == 0 || columns.iter().any(|c| c.len() != n) {
        return Err(Error::Construction(
            "EmpiricalMV needs non-empty columns of equal length".into(),
        ));
    }
    let data: Vec<f64> = columns.concat();
    empirical_mv(&[
        ("data", data.into()),
        ("cols", (columns.len() as f64).into()),
    ])
}
