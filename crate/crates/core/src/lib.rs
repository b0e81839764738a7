//! Composable probability distributions.
//!
//! Every distribution, whether from the [`catalog`], user-defined through
//! [`custom`], decorated with numeric capabilities or built by a
//! [`compose`] operation, is a [`Distribution`] with the same method surface:
//! validated `pdf`/`cdf`/`quantile`/`rand`, statistics, traits, properties
//! and a prefixed parameter collection.
//!
//! ```
//! use compdist::catalog;
//!
//! let n = catalog::normal(&[("mean", 1.0.into()), ("sd", 1.0.into())]).unwrap();
//! let d = n.pdf(&[1.0, 2.0]).unwrap();
//! assert!((d[0] - 0.398942280).abs() < 1e-9);
//! ```

pub mod catalog;
pub mod compose;
pub mod custom;
pub mod distribution;
pub mod error;
pub mod matrix;
pub mod numeric;
pub mod params;
pub mod sets;

pub use distribution::{
    Distribution, EvalOptions, Evaluation, Fun, Kernel, Model, Properties, Summary, Traits,
    ValueSupport, VariateForm,
};
pub use error::{Error, Result};
pub use matrix::EvaluationMatrix;
pub use numeric::{DecoratorKind, MomentType, NormFun, NumericOptions};
pub use params::{ParamValue, ParameterSet, ParameterSetCollection};
pub use sets::MathSet;
