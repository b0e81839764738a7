use std::f64::consts::{PI, SQRT_2};

use rand::RngCore;
use rand_distr::Distribution as _;
use statrs::distribution::{Continuous, ContinuousCDF};
use statrs::function::{beta, erf, gamma as gammafn};

use crate::distribution::{open_unit, Distribution, Kernel, Model, ValueSupport};
use crate::error::{Error, Result};
use crate::params::{Args, ParameterDef, ParameterSet, ParameterizationGroup};
use crate::sets::MathSet;

use super::{complex_pow, model_common, polish_quantile};

const POS: MathSet = MathSet::PositiveReals { zero: false };

fn sample_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("cannot sample: {e}"))
}

fn lower_below_upper(set: &ParameterSet) -> std::result::Result<(), String> {
    if set.num("lower") < set.num("upper") {
        Ok(())
    } else {
        Err("lower must be strictly less than upper".into())
    }
}

// ---------------------------------------------------------------- Normal

#[derive(Debug, Clone)]
struct NormalModel {
    params: ParameterSet,
}

impl NormalModel {
    fn mu(&self) -> f64 {
        self.params.num("mean")
    }
    fn sigma(&self) -> f64 {
        self.params.num("sd")
    }
    fn var(&self) -> f64 {
        self.params.num("var")
    }
}

impl Model for NormalModel {
    model_common!();

    fn type_set(&self) -> MathSet {
        MathSet::Reals
    }
    fn support(&self) -> MathSet {
        MathSet::Reals
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }
    fn symmetric(&self) -> bool {
        true
    }
    fn provides(&self, _: Kernel) -> bool {
        true
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        let z = (x - self.mu()) / self.sigma();
        Ok((-0.5 * z * z).exp() / (self.sigma() * (2.0 * PI).sqrt()))
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        let z = (x - self.mu()) / self.sigma();
        Ok(0.5 * erf::erfc(-z / SQRT_2))
    }
    fn survival(&self, x: f64) -> Option<f64> {
        let z = (x - self.mu()) / self.sigma();
        Some(0.5 * erf::erfc(z / SQRT_2))
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        if p <= 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        if p >= 1.0 {
            return Ok(f64::INFINITY);
        }
        Ok(self.mu() - self.sigma() * SQRT_2 * erf::erfc_inv(2.0 * p))
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let n = rand_distr::Normal::new(self.mu(), self.sigma()).map_err(sample_err)?;
        Ok(n.sample(rng))
    }
    fn mean(&self) -> Option<f64> {
        Some(self.mu())
    }
    fn variance(&self) -> Option<f64> {
        Some(self.var())
    }
    fn skewness(&self) -> Option<f64> {
        Some(0.0)
    }
    fn kurtosis(&self) -> Option<f64> {
        Some(0.0)
    }
    fn entropy(&self, base: f64) -> Option<f64> {
        Some(0.5 * (2.0 * PI * std::f64::consts::E * self.var()).ln() / base.ln())
    }
    fn mgf(&self, t: f64) -> Option<f64> {
        Some((self.mu() * t + 0.5 * self.var() * t * t).exp())
    }
    fn cf(&self, t: f64) -> Option<(f64, f64)> {
        let r = (-0.5 * self.var() * t * t).exp();
        Some((r * (self.mu() * t).cos(), r * (self.mu() * t).sin()))
    }
}

/// Normal distribution; `var`, `sd` and `prec` are one parameterisation
/// group with variance canonical. Defaults: mean 0, var 1.
pub fn normal(args: &Args) -> Result<Distribution> {
    let params = ParameterSet::build(
        vec![
            ParameterDef::new("mean", 0.0, MathSet::Reals, "Mean - Location Parameter"),
            ParameterDef::new("var", 1.0, POS, "Variance - Squared Scale Parameter"),
            ParameterDef::new("sd", 1.0, POS, "Standard Deviation - Scale Parameter"),
            ParameterDef::new(
                "prec",
                1.0,
                POS,
                "Precision - Inverse Squared Scale Parameter",
            ),
        ],
        vec![ParameterizationGroup::new(
            "var",
            &[
                ("sd", |sd| sd * sd, f64::sqrt),
                ("prec", |p| 1.0 / p, |v| 1.0 / v),
            ],
        )],
        None,
        args,
    )?;
    Ok(Distribution::new(
        "Normal",
        "Norm",
        "Normal Probability Distribution.",
        NormalModel { params },
    ))
}

// ----------------------------------------------------------- Exponential

#[derive(Debug, Clone)]
struct ExponentialModel {
    params: ParameterSet,
}

impl ExponentialModel {
    fn rate(&self) -> f64 {
        self.params.num("rate")
    }
}

impl Model for ExponentialModel {
    model_common!();

    fn type_set(&self) -> MathSet {
        MathSet::PositiveReals { zero: true }
    }
    fn support(&self) -> MathSet {
        MathSet::PositiveReals { zero: true }
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }
    fn provides(&self, _: Kernel) -> bool {
        true
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        Ok(if x < 0.0 {
            0.0
        } else {
            self.rate() * (-self.rate() * x).exp()
        })
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        Ok(if x <= 0.0 {
            0.0
        } else {
            -(-self.rate() * x).exp_m1()
        })
    }
    fn survival(&self, x: f64) -> Option<f64> {
        Some(if x <= 0.0 {
            1.0
        } else {
            (-self.rate() * x).exp()
        })
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        if p >= 1.0 {
            return Ok(f64::INFINITY);
        }
        Ok(-(-p).ln_1p() / self.rate())
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let e = rand_distr::Exp::new(self.rate()).map_err(sample_err)?;
        Ok(e.sample(rng))
    }
    fn mean(&self) -> Option<f64> {
        Some(1.0 / self.rate())
    }
    fn variance(&self) -> Option<f64> {
        Some(1.0 / (self.rate() * self.rate()))
    }
    fn skewness(&self) -> Option<f64> {
        Some(2.0)
    }
    fn kurtosis(&self) -> Option<f64> {
        Some(6.0)
    }
    fn entropy(&self, base: f64) -> Option<f64> {
        Some((1.0 - self.rate().ln()) / base.ln())
    }
    fn mgf(&self, t: f64) -> Option<f64> {
        let l = self.rate();
        Some(if t < l { l / (l - t) } else { f64::NAN })
    }
    fn cf(&self, t: f64) -> Option<(f64, f64)> {
        let l = self.rate();
        let d = l * l + t * t;
        Some((l * l / d, l * t / d))
    }
}

/// Exponential distribution; `rate` and `scale` are one group. Default rate 1.
pub fn exponential(args: &Args) -> Result<Distribution> {
    let params = ParameterSet::build(
        vec![
            ParameterDef::new("rate", 1.0, POS, "Arrival Rate"),
            ParameterDef::new("scale", 1.0, POS, "Scale"),
        ],
        vec![ParameterizationGroup::new(
            "rate",
            &[("scale", |s| 1.0 / s, |r| 1.0 / r)],
        )],
        None,
        args,
    )?;
    Ok(Distribution::new(
        "Exponential",
        "Exp",
        "Exponential Probability Distribution.",
        ExponentialModel { params },
    ))
}

// ----------------------------------------------------------------- Gamma

#[derive(Debug, Clone)]
struct GammaModel {
    params: ParameterSet,
}

impl GammaModel {
    fn shape(&self) -> f64 {
        self.params.num("shape")
    }
    fn rate(&self) -> f64 {
        self.params.num("rate")
    }
}

impl Model for GammaModel {
    model_common!();

    fn type_set(&self) -> MathSet {
        MathSet::PositiveReals { zero: true }
    }
    fn support(&self) -> MathSet {
        MathSet::PositiveReals { zero: false }
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }
    fn provides(&self, _: Kernel) -> bool {
        true
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Ok(0.0);
        }
        let (k, l) = (self.shape(), self.rate());
        if x == 0.0 {
            return Ok(match k.partial_cmp(&1.0) {
                Some(std::cmp::Ordering::Less) => f64::INFINITY,
                Some(std::cmp::Ordering::Equal) => l,
                _ => 0.0,
            });
        }
        Ok((k * l.ln() + (k - 1.0) * x.ln() - l * x - gammafn::ln_gamma(k)).exp())
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        if x.is_infinite() {
            return Ok(1.0);
        }
        Ok(gammafn::gamma_lr(self.shape(), self.rate() * x))
    }
    fn survival(&self, x: f64) -> Option<f64> {
        if x <= 0.0 {
            return Some(1.0);
        }
        if x.is_infinite() {
            return Some(0.0);
        }
        Some(gammafn::gamma_ur(self.shape(), self.rate() * x))
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        if p <= 0.0 {
            return Ok(0.0);
        }
        if p >= 1.0 {
            return Ok(f64::INFINITY);
        }
        let g = statrs::distribution::Gamma::new(self.shape(), self.rate())
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let x0 = g.inverse_cdf(p);
        Ok(polish_quantile(
            x0,
            p,
            |x| self.cdf(x).unwrap_or(f64::NAN),
            |x| g.pdf(x),
        ))
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let g = rand_distr::Gamma::new(self.shape(), 1.0 / self.rate()).map_err(sample_err)?;
        Ok(g.sample(rng))
    }
    fn mean(&self) -> Option<f64> {
        Some(self.shape() / self.rate())
    }
    fn variance(&self) -> Option<f64> {
        Some(self.shape() / (self.rate() * self.rate()))
    }
    fn skewness(&self) -> Option<f64> {
        Some(2.0 / self.shape().sqrt())
    }
    fn kurtosis(&self) -> Option<f64> {
        Some(6.0 / self.shape())
    }
    fn entropy(&self, base: f64) -> Option<f64> {
        let k = self.shape();
        let h = k - self.rate().ln() + gammafn::ln_gamma(k) + (1.0 - k) * gammafn::digamma(k);
        Some(h / base.ln())
    }
    fn mgf(&self, t: f64) -> Option<f64> {
        let l = self.rate();
        Some(if t < l {
            (1.0 - t / l).powf(-self.shape())
        } else {
            f64::NAN
        })
    }
    fn cf(&self, t: f64) -> Option<(f64, f64)> {
        Some(complex_pow(1.0, -t / self.rate(), -self.shape()))
    }
}

/// Gamma distribution with `shape` and the `rate`/`scale` group.
/// Defaults: shape 1, rate 1.
pub fn gamma(args: &Args) -> Result<Distribution> {
    let params = ParameterSet::build(
        vec![
            ParameterDef::new("shape", 1.0, POS, "Shape - Shape Parameter"),
            ParameterDef::new("rate", 1.0, POS, "Rate - Inverse Scale Parameter"),
            ParameterDef::new("scale", 1.0, POS, "Scale - Scale Parameter"),
        ],
        vec![ParameterizationGroup::new(
            "rate",
            &[("scale", |s| 1.0 / s, |r| 1.0 / r)],
        )],
        None,
        args,
    )?;
    Ok(Distribution::new(
        "Gamma",
        "Gamma",
        "Gamma Probability Distribution.",
        GammaModel { params },
    ))
}

// -------------------------------------------------------------- StudentT

#[derive(Debug, Clone)]
struct StudentTModel {
    params: ParameterSet,
}

impl StudentTModel {
    fn df(&self) -> f64 {
        self.params.num("df")
    }
    /// P(T > |t|)
    fn upper_abs(&self, t: f64) -> f64 {
        let nu = self.df();
        if t.is_infinite() {
            return 0.0;
        }
        0.5 * beta::beta_reg(0.5 * nu, 0.5, nu / (nu + t * t))
    }
}

impl Model for StudentTModel {
    model_common!();

    fn type_set(&self) -> MathSet {
        MathSet::Reals
    }
    fn support(&self) -> MathSet {
        MathSet::Reals
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }
    fn symmetric(&self) -> bool {
        true
    }
    fn provides(&self, _: Kernel) -> bool {
        true
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        let nu = self.df();
        let ln_c = gammafn::ln_gamma(0.5 * (nu + 1.0))
            - gammafn::ln_gamma(0.5 * nu)
            - 0.5 * (nu * PI).ln();
        Ok((ln_c - 0.5 * (nu + 1.0) * (x * x / nu).ln_1p()).exp())
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        let u = self.upper_abs(x);
        Ok(if x > 0.0 { 1.0 - u } else { u })
    }
    fn survival(&self, x: f64) -> Option<f64> {
        let u = self.upper_abs(x);
        Some(if x > 0.0 { u } else { 1.0 - u })
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        if p <= 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        if p >= 1.0 {
            return Ok(f64::INFINITY);
        }
        if p == 0.5 {
            return Ok(0.0);
        }
        let t = statrs::distribution::StudentsT::new(0.0, 1.0, self.df())
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let x0 = t.inverse_cdf(p);
        Ok(polish_quantile(
            x0,
            p,
            |x| self.cdf(x).unwrap_or(f64::NAN),
            |x| self.pdf(x).unwrap_or(f64::NAN),
        ))
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let t = rand_distr::StudentT::new(self.df()).map_err(sample_err)?;
        Ok(t.sample(rng))
    }
    fn mean(&self) -> Option<f64> {
        Some(if self.df() > 1.0 { 0.0 } else { f64::NAN })
    }
    fn variance(&self) -> Option<f64> {
        let nu = self.df();
        Some(if nu > 2.0 {
            nu / (nu - 2.0)
        } else if nu > 1.0 {
            f64::INFINITY
        } else {
            f64::NAN
        })
    }
    fn skewness(&self) -> Option<f64> {
        Some(if self.df() > 3.0 { 0.0 } else { f64::NAN })
    }
    fn kurtosis(&self) -> Option<f64> {
        let nu = self.df();
        Some(if nu > 4.0 {
            6.0 / (nu - 4.0)
        } else if nu > 2.0 {
            f64::INFINITY
        } else {
            f64::NAN
        })
    }
    fn entropy(&self, base: f64) -> Option<f64> {
        let nu = self.df();
        let h =
            0.5 * (nu + 1.0) * (gammafn::digamma(0.5 * (nu + 1.0)) - gammafn::digamma(0.5 * nu))
                + (nu.sqrt()).ln()
                + beta::ln_beta(0.5 * nu, 0.5);
        Some(h / base.ln())
    }
    fn mgf(&self, _t: f64) -> Option<f64> {
        Some(f64::NAN)
    }
}

/// Student's t distribution. Default df 1.
pub fn student_t(args: &Args) -> Result<Distribution> {
    let params = ParameterSet::build(
        vec![ParameterDef::new("df", 1.0, POS, "Degrees of Freedom")],
        vec![],
        None,
        args,
    )?;
    Ok(Distribution::new(
        "Student's T",
        "T",
        "Student's T Probability Distribution.",
        StudentTModel { params },
    ))
}

// --------------------------------------------------------------- Uniform

#[derive(Debug, Clone)]
struct UniformModel {
    params: ParameterSet,
}

impl UniformModel {
    fn bounds(&self) -> (f64, f64) {
        (self.params.num("lower"), self.params.num("upper"))
    }
}

impl Model for UniformModel {
    model_common!();

    fn type_set(&self) -> MathSet {
        MathSet::Reals
    }
    fn support(&self) -> MathSet {
        let (a, b) = self.bounds();
        MathSet::closed(a, b)
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }
    fn symmetric(&self) -> bool {
        true
    }
    fn provides(&self, _: Kernel) -> bool {
        true
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(if x >= a && x <= b { 1.0 / (b - a) } else { 0.0 })
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(((x - a) / (b - a)).clamp(0.0, 1.0))
    }
    fn survival(&self, x: f64) -> Option<f64> {
        let (a, b) = self.bounds();
        Some(((b - x) / (b - a)).clamp(0.0, 1.0))
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(a + p * (b - a))
    }
    fn rand(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(a + open_unit(rng) * (b - a))
    }
    fn mean(&self) -> Option<f64> {
        let (a, b) = self.bounds();
        Some(0.5 * (a + b))
    }
    fn variance(&self) -> Option<f64> {
        let (a, b) = self.bounds();
        Some((b - a).powi(2) / 12.0)
    }
    fn skewness(&self) -> Option<f64> {
        Some(0.0)
    }
    fn kurtosis(&self) -> Option<f64> {
        Some(-1.2)
    }
    fn entropy(&self, base: f64) -> Option<f64> {
        let (a, b) = self.bounds();
        Some((b - a).ln() / base.ln())
    }
    fn mgf(&self, t: f64) -> Option<f64> {
        let (a, b) = self.bounds();
        Some(if t == 0.0 {
            1.0
        } else {
            ((t * b).exp() - (t * a).exp()) / (t * (b - a))
        })
    }
    fn cf(&self, t: f64) -> Option<(f64, f64)> {
        let (a, b) = self.bounds();
        if t == 0.0 {
            return Some((1.0, 0.0));
        }
        let d = t * (b - a);
        Some((
            ((t * b).sin() - (t * a).sin()) / d,
            ((t * a).cos() - (t * b).cos()) / d,
        ))
    }
}

/// Continuous uniform on `[lower, upper]`. Defaults: 0, 1.
pub fn uniform(args: &Args) -> Result<Distribution> {
    let params = ParameterSet::build(
        vec![
            ParameterDef::new("lower", 0.0, MathSet::Reals, "Lower distribution limit"),
            ParameterDef::new("upper", 1.0, MathSet::Reals, "Upper distribution limit"),
        ],
        vec![],
        Some(lower_below_upper),
        args,
    )?;
    Ok(Distribution::new(
        "Uniform",
        "Unif",
        "Uniform Probability Distribution.",
        UniformModel { params },
    ))
}

// --------------------------------------------------------------- Arcsine

#[derive(Debug, Clone)]
struct ArcsineModel {
    params: ParameterSet,
}

impl ArcsineModel {
    fn bounds(&self) -> (f64, f64) {
        (self.params.num("lower"), self.params.num("upper"))
    }
}

impl Model for ArcsineModel {
    model_common!();

    fn type_set(&self) -> MathSet {
        MathSet::Reals
    }
    fn support(&self) -> MathSet {
        let (a, b) = self.bounds();
        MathSet::closed(a, b)
    }
    fn value_support(&self) -> ValueSupport {
        ValueSupport::Continuous
    }
    fn symmetric(&self) -> bool {
        true
    }
    fn provides(&self, k: Kernel) -> bool {
        k != Kernel::Rand
    }
    fn pdf(&self, x: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(if x < a || x > b {
            0.0
        } else if x == a || x == b {
            f64::INFINITY
        } else {
            1.0 / (PI * ((x - a) * (b - x)).sqrt())
        })
    }
    fn cdf(&self, x: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        let u = ((x - a) / (b - a)).clamp(0.0, 1.0);
        Ok(2.0 / PI * u.sqrt().asin())
    }
    fn survival(&self, x: f64) -> Option<f64> {
        let (a, b) = self.bounds();
        let u = ((b - x) / (b - a)).clamp(0.0, 1.0);
        Some(2.0 / PI * u.sqrt().asin())
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(a + (b - a) * (0.5 * PI * p).sin().powi(2))
    }
    fn mean(&self) -> Option<f64> {
        let (a, b) = self.bounds();
        Some(0.5 * (a + b))
    }
    fn variance(&self) -> Option<f64> {
        let (a, b) = self.bounds();
        Some((b - a).powi(2) / 8.0)
    }
    fn skewness(&self) -> Option<f64> {
        Some(0.0)
    }
    fn kurtosis(&self) -> Option<f64> {
        Some(-1.5)
    }
    fn entropy(&self, base: f64) -> Option<f64> {
        let (a, b) = self.bounds();
        Some((0.25 * PI * (b - a)).ln() / base.ln())
    }
}

/// Arcsine distribution on `[lower, upper]`. Defaults: 0, 1.
pub fn arcsine(args: &Args) -> Result<Distribution> {
    let params = ParameterSet::build(
        vec![
            ParameterDef::new("lower", 0.0, MathSet::Reals, "Lower distribution limit"),
            ParameterDef::new("upper", 1.0, MathSet::Reals, "Upper distribution limit"),
        ],
        vec![],
        Some(lower_below_upper),
        args,
    )?;
    Ok(Distribution::new(
        "Arcsine",
        "Arc",
        "Arcsine Probability Distribution.",
        ArcsineModel { params },
    ))
}
