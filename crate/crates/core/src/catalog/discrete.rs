use rand::{Rng, RngCore};
use rand_distr::Distribution as _;
use statrs::function::{factorial, gamma as gammafn};

use crate::distribution::{Distribution, Kernel, Model, ValueSupport};
use crate::error::{Error, Result};
use crate::params::{Args, ParameterDef, ParameterSet, ParameterizationGroup};
use crate::sets::MathSet;

use super::{complex_pow, integer_quantile, model_common};

fn sample_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("cannot sample: {e}"))
}

fn is_whole(x: f64) -> bool {
    x.is_finite() && x.fract() == 0.0
}

// -------------------------------------------------------------- Binomial

#[derive(Debug, Clone)]
struct BinomialModel {
    params: ParameterSet,
}

impl BinomialModel {
    fn n(&self) -> f64 {
        self.params.num("size")
    }
    fn p(&self) -> f64 {
        self.params.num("prob")
    }
    fn ln_pmf(&self, k: f64) -> f64 {
        let (n, p) = (self.n(), self.p());
        let ln_choose = factorial::ln_binomial(n as u64, k as u64);
        let a = if k == 0.0 { 0.0 } else { k * p.ln() };
        let b = if k == n { 0.0 } else { (n - k) * (-p).ln_1p() };
        ln_choose + a + b
    }
    /// P(X <= k) by direct summation from the nearer tail.
    fn lower(&self, x: f64) -> f64 {
        let n = self.n();
        if x < 0.0 {
            return 0.0;
        }
        if x >= n {
            return 1.0;
        }
        let k = x.floor();
        if k <= 0.5 * n {
            (0..=k as u64)
                .map(|i| self.ln_pmf(i as f64).exp())
                .sum::<f64>()
                .min(1.0)
        } else {
            (1.0 - self.upper(x)).max(0.0)
        }
    }
    /// P(X > k).
    fn upper(&self, x: f64) -> f64 {
        let n = self.n();
        if x < 0.0 {
            return 1.0;
        }
        if x >= n {
            return 0.0;
        }
        let k = x.floor();
        if k > 0.5 * n {
            ((k as u64 + 1)..=n as u64)
                .map(|i| self.ln_pmf(i as f64).exp())
                .sum::<f64>()
                .min(1.0)
        } else {
            (1.0 - self.lower(x)).max(0.0)
        }
    }
}

impl Model for BinomialModel {
    model_common!();

    fn type_set(&self) -> MathSet {
        MathSet::Naturals0
    }
    fn support(&self) -> MathSet {
        MathSet::int_range(0, self.n() as i64)
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Discrete
    }
    fn symmetric(&self) -> bool {
        self.p() == 0.5
    }
    fn provides(&self, _: Kernel) -> bool {
        true
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        let (n, p) = (self.n(), self.p());
        if !is_whole(x) || x < 0.0 || x > n {
            return Ok(0.0);
        }
        if p == 0.0 || p == 1.0 {
            let atom = if p == 0.0 { 0.0 } else { n };
            return Ok(if x == atom { 1.0 } else { 0.0 });
        }
        Ok(self.ln_pmf(x).exp())
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        let p = self.p();
        if p == 0.0 || p == 1.0 {
            let atom = if p == 0.0 { 0.0 } else { self.n() };
            return Ok(if x >= atom { 1.0 } else { 0.0 });
        }
        Ok(self.lower(x))
    }
    fn survival(&self, x: f64) -> Option<f64> {
        let p = self.p();
        if p == 0.0 || p == 1.0 {
            return None;
        }
        Some(self.upper(x))
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        let (n, pr) = (self.n(), self.p());
        let guess = n * pr + (n * pr * (1.0 - pr)).sqrt() * statrs_normal_z(p);
        Ok(integer_quantile(
            |k| self.cdf(k).unwrap_or(1.0),
            p,
            0.0,
            n,
            guess,
        ))
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let b = rand_distr::Binomial::new(self.n() as u64, self.p()).map_err(sample_err)?;
        Ok(b.sample(rng) as f64)
    }
    fn mean(&self) -> Option<f64> {
        Some(self.n() * self.p())
    }
    fn variance(&self) -> Option<f64> {
        Some(self.n() * self.p() * (1.0 - self.p()))
    }
    fn skewness(&self) -> Option<f64> {
        let (n, p) = (self.n(), self.p());
        Some((1.0 - 2.0 * p) / (n * p * (1.0 - p)).sqrt())
    }
    fn kurtosis(&self) -> Option<f64> {
        let (n, p) = (self.n(), self.p());
        Some((1.0 - 6.0 * p * (1.0 - p)) / (n * p * (1.0 - p)))
    }
    fn entropy(&self, base: f64) -> Option<f64> {
        let h: f64 = (0..=self.n() as u64)
            .map(|k| self.pdf(k as f64).unwrap_or(0.0))
            .filter(|m| *m > 0.0)
            .map(|m| -m * m.ln())
            .sum();
        Some(h / base.ln())
    }
    fn mgf(&self, t: f64) -> Option<f64> {
        let p = self.p();
        Some((1.0 - p + p * t.exp()).powf(self.n()))
    }
    fn cf(&self, t: f64) -> Option<(f64, f64)> {
        let p = self.p();
        Some(complex_pow(1.0 - p + p * t.cos(), p * t.sin(), self.n()))
    }
    fn pgf(&self, z: f64) -> Option<f64> {
        let p = self.p();
        Some((1.0 - p + p * z).powf(self.n()))
    }
}

/// Standard normal quantile, used for starting guesses only.
fn statrs_normal_z(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -std::f64::consts::SQRT_2 * statrs::function::erf::erfc_inv(2.0 * p)
}

/// Binomial distribution with `size` and the `prob`/`qprob` group.
/// Defaults: size 10, prob 0.5.
pub fn binomial(args: &Args) -> Result<Distribution> {
    let unit = MathSet::closed(0.0, 1.0);
    let params = ParameterSet::build(
        vec![
            ParameterDef::new("prob", 0.5, unit.clone(), "Probability of Success"),
            ParameterDef::new("qprob", 0.5, unit, "Probability of failure"),
            ParameterDef::new("size", 10.0, MathSet::Naturals0, "Number of trials"),
        ],
        vec![ParameterizationGroup::new(
            "prob",
            &[("qprob", |q| 1.0 - q, |p| 1.0 - p)],
        )],
        None,
        args,
    )?;
    Ok(Distribution::new(
        "Binomial",
        "Binom",
        "Binomial Probability Distribution.",
        BinomialModel { params },
    ))
}

// ------------------------------------------------------- DiscreteUniform

#[derive(Debug, Clone)]
struct DiscreteUniformModel {
    params: ParameterSet,
}

impl DiscreteUniformModel {
    fn bounds(&self) -> (f64, f64) {
        (self.params.num("lower"), self.params.num("upper"))
    }
    fn count(&self) -> f64 {
        let (a, b) = self.bounds();
        b - a + 1.0
    }
}

impl Model for DiscreteUniformModel {
    model_common!();

    fn type_set(&self) -> MathSet {
        MathSet::Integers
    }
    fn support(&self) -> MathSet {
        let (a, b) = self.bounds();
        MathSet::int_range(a as i64, b as i64)
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Discrete
    }
    fn symmetric(&self) -> bool {
        true
    }
    fn provides(&self, _: Kernel) -> bool {
        true
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(if is_whole(x) && x >= a && x <= b {
            1.0 / self.count()
        } else {
            0.0
        })
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(if x < a {
            0.0
        } else if x >= b {
            1.0
        } else {
            (x.floor() - a + 1.0) / self.count()
        })
    }
    fn survival(&self, x: f64) -> Option<f64> {
        let (a, b) = self.bounds();
        Some(if x < a {
            1.0
        } else if x >= b {
            0.0
        } else {
            (b - x.floor()) / self.count()
        })
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        let guess = a + (p * self.count()).ceil() - 1.0;
        Ok(integer_quantile(
            |k| self.cdf(k).unwrap_or(1.0),
            p,
            a,
            b,
            guess,
        ))
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(rng.random_range(a as i64..=b as i64) as f64)
    }
    fn mean(&self) -> Option<f64> {
        let (a, b) = self.bounds();
        Some(0.5 * (a + b))
    }
    fn variance(&self) -> Option<f64> {
        let n = self.count();
        Some((n * n - 1.0) / 12.0)
    }
    fn skewness(&self) -> Option<f64> {
        Some(if self.count() > 1.0 { 0.0 } else { f64::NAN })
    }
    fn kurtosis(&self) -> Option<f64> {
        let n = self.count();
        Some(-6.0 * (n * n + 1.0) / (5.0 * (n * n - 1.0)))
    }
    fn entropy(&self, base: f64) -> Option<f64> {
        Some(self.count().ln() / base.ln())
    }
    fn mgf(&self, t: f64) -> Option<f64> {
        let (a, b) = self.bounds();
        if t == 0.0 {
            return Some(1.0);
        }
        Some(((a * t).exp() - ((b + 1.0) * t).exp()) / (self.count() * (1.0 - t.exp())))
    }
    fn cf(&self, t: f64) -> Option<(f64, f64)> {
        let (a, b) = self.bounds();
        let n = self.count();
        let (mut re, mut im) = (0.0, 0.0);
        let mut k = a;
        while k <= b {
            re += (t * k).cos();
            im += (t * k).sin();
            k += 1.0;
        }
        Some((re / n, im / n))
    }
    fn pgf(&self, z: f64) -> Option<f64> {
        let (a, b) = self.bounds();
        let mut s = 0.0;
        let mut k = a;
        while k <= b {
            s += z.powf(k);
            k += 1.0;
        }
        Some(s / self.count())
    }
}

fn du_order(set: &ParameterSet) -> std::result::Result<(), String> {
    if set.num("lower") <= set.num("upper") {
        Ok(())
    } else {
        Err("lower must not exceed upper".into())
    }
}

/// Discrete uniform on the integers `lower..=upper`. Defaults: 0, 1.
pub fn discrete_uniform(args: &Args) -> Result<Distribution> {
    let params = ParameterSet::build(
        vec![
            ParameterDef::new("lower", 0.0, MathSet::Integers, "Lower distribution limit"),
            ParameterDef::new("upper", 1.0, MathSet::Integers, "Upper distribution limit"),
        ],
        vec![],
        Some(du_order),
        args,
    )?;
    Ok(Distribution::new(
        "Discrete Uniform",
        "DUnif",
        "Discrete Uniform Probability Distribution.",
        DiscreteUniformModel { params },
    ))
}

// ------------------------------------------------------------ Degenerate

#[derive(Debug, Clone)]
struct DegenerateModel {
    params: ParameterSet,
}

impl DegenerateModel {
    fn atom(&self) -> f64 {
        self.params.num("mean")
    }
}

impl Model for DegenerateModel {
    model_common!();

    fn type_set(&self) -> MathSet {
        MathSet::Reals
    }
    fn support(&self) -> MathSet {
        MathSet::finite_nums([self.atom()])
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Discrete
    }
    fn symmetric(&self) -> bool {
        true
    }
    fn provides(&self, _: Kernel) -> bool {
        true
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        Ok(if x == self.atom() { 1.0 } else { 0.0 })
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        Ok(if x >= self.atom() { 1.0 } else { 0.0 })
    }
    fn quantile(&self, _p: f64) -> Result<f64> {
        Ok(self.atom())
    }
    fn rand(&self, _rng: &mut dyn RngCore) -> Result<f64> {
        Ok(self.atom())
    }
    fn mean(&self) -> Option<f64> {
        Some(self.atom())
    }
    fn variance(&self) -> Option<f64> {
        Some(0.0)
    }
    fn skewness(&self) -> Option<f64> {
        Some(f64::NAN)
    }
    fn kurtosis(&self) -> Option<f64> {
        Some(f64::NAN)
    }
    fn entropy(&self, _base: f64) -> Option<f64> {
        Some(0.0)
    }
    fn mgf(&self, t: f64) -> Option<f64> {
        Some((t * self.atom()).exp())
    }
    fn cf(&self, t: f64) -> Option<(f64, f64)> {
        Some(((t * self.atom()).cos(), (t * self.atom()).sin()))
    }
    fn pgf(&self, z: f64) -> Option<f64> {
        Some(z.powf(self.atom()))
    }
}

/// Point mass at `mean`. Default 0.
pub fn degenerate(args: &Args) -> Result<Distribution> {
    let params = ParameterSet::build(
        vec![ParameterDef::new(
            "mean",
            0.0,
            MathSet::Reals,
            "Location of the point mass",
        )],
        vec![],
        None,
        args,
    )?;
    Ok(Distribution::new(
        "Degenerate",
        "Degen",
        "Degenerate Probability Distribution.",
        DegenerateModel { params },
    ))
}

// --------------------------------------------------------------- Poisson

#[derive(Debug, Clone)]
struct PoissonModel {
    params: ParameterSet,
}

impl PoissonModel {
    fn rate(&self) -> f64 {
        self.params.num("rate")
    }
}

impl Model for PoissonModel {
    model_common!();

    fn type_set(&self) -> MathSet {
        MathSet::Naturals0
    }
    fn support(&self) -> MathSet {
        MathSet::Naturals0
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Discrete
    }
    fn provides(&self, _: Kernel) -> bool {
        true
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        if !is_whole(x) || x < 0.0 {
            return Ok(0.0);
        }
        let l = self.rate();
        Ok((x * l.ln() - l - gammafn::ln_gamma(x + 1.0)).exp())
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Ok(0.0);
        }
        if x.is_infinite() {
            return Ok(1.0);
        }
        Ok(gammafn::gamma_ur(x.floor() + 1.0, self.rate()))
    }
    fn survival(&self, x: f64) -> Option<f64> {
        if x < 0.0 {
            return Some(1.0);
        }
        if x.is_infinite() {
            return Some(0.0);
        }
        Some(gammafn::gamma_lr(x.floor() + 1.0, self.rate()))
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        if p >= 1.0 {
            return Ok(f64::INFINITY);
        }
        let l = self.rate();
        let guess = l + l.sqrt() * statrs_normal_z(p);
        Ok(integer_quantile(
            |k| self.cdf(k).unwrap_or(1.0),
            p,
            0.0,
            f64::INFINITY,
            guess.max(0.0),
        ))
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let d = rand_distr::Poisson::new(self.rate()).map_err(sample_err)?;
        Ok(d.sample(rng))
    }
    fn mean(&self) -> Option<f64> {
        Some(self.rate())
    }
    fn variance(&self) -> Option<f64> {
        Some(self.rate())
    }
    fn skewness(&self) -> Option<f64> {
        Some(1.0 / self.rate().sqrt())
    }
    fn kurtosis(&self) -> Option<f64> {
        Some(1.0 / self.rate())
    }
    fn mgf(&self, t: f64) -> Option<f64> {
        Some((self.rate() * t.exp_m1()).exp())
    }
    fn cf(&self, t: f64) -> Option<(f64, f64)> {
        let l = self.rate();
        let r = (l * (t.cos() - 1.0)).exp();
        Some((r * (l * t.sin()).cos(), r * (l * t.sin()).sin()))
    }
    fn pgf(&self, z: f64) -> Option<f64> {
        Some((self.rate() * (z - 1.0)).exp())
    }
}

/// Poisson distribution. Default rate 1.
pub fn poisson(args: &Args) -> Result<Distribution> {
    let params = ParameterSet::build(
        vec![ParameterDef::new(
            "rate",
            1.0,
            MathSet::PositiveReals { zero: false },
            "Arrival Rate",
        )],
        vec![],
        None,
        args,
    )?;
    Ok(Distribution::new(
        "Poisson",
        "Pois",
        "Poisson Probability Distribution.",
        PoissonModel { params },
    ))
}
