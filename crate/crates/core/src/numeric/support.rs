//! Support enumeration and integration over a distribution's support.

use std::cell::RefCell;

use crate::distribution::{Distribution, Kernel, ValueSupport};
use crate::error::{Error, Result};

use super::quad_result;
use super::quadrature::integrate;

impl Distribution {
    /// True when expectations are sums over support points.
    pub(crate) fn is_enumerable(&self) -> bool {
        match self.value_support() {
            ValueSupport::Discrete => true,
            ValueSupport::Mixed => self.support().is_countable(),
            ValueSupport::Continuous => false,
        }
    }

    /// Mass at a single support point: the pdf when there is one, else a
    /// difference of the cdf.
    pub(crate) fn point_mass(&self, x: f64, previous: Option<f64>) -> Result<f64> {
        if self.has_kernel(Kernel::Pdf) && self.value_support() == ValueSupport::Discrete {
            return self.pdf_at(x);
        }
        let below = match previous {
            Some(p) => self.cdf_at(p)?,
            None => {
                let s = self.support();
                if s.lower().is_finite() && x <= s.lower() {
                    0.0
                } else {
                    self.cdf_at(x - 1.0)?
                }
            }
        };
        Ok((self.cdf_at(x)? - below).max(0.0))
    }

    /// Sorted support points. Unbounded integer supports are walked until the
    /// enumerated mass reaches `1 - infinite_cutoff_prob` and the point masses
    /// have dropped below rounding level, or the point cap.
    pub(crate) fn support_points(&self) -> Result<Vec<f64>> {
        let s = self.support();
        let cap = self.options.discrete_cutoff;
        if let Some(v) = s.finite_values() {
            if v.len() > cap {
                return Err(Error::Unsupported(format!(
                    "support has {} points, more than the enumeration limit {cap}",
                    v.len()
                )));
            }
            return Ok(v);
        }
        if !s.is_integer_valued() {
            return Err(Error::Unsupported(format!(
                "the support {s} of {} cannot be enumerated",
                self.short_name()
            )));
        }
        let eps = self.options.infinite_cutoff_prob;
        let (lo, hi) = (s.lower(), s.upper());
        let mut start = lo;
        if self.has_kernel(Kernel::Quantile) {
            let q = self.quantile_at(eps)?;
            if q.is_finite() {
                start = start.max(q.floor() - 1.0);
            }
        }
        if !start.is_finite() {
            return Err(Error::Unsupported(format!(
                "cannot enumerate the doubly infinite support of {} without a quantile",
                self.short_name()
            )));
        }
        let mut cum = if start > lo && self.has_kernel(Kernel::Cdf) {
            self.cdf_at(start - 1.0)?
        } else {
            0.0
        };
        let mut points = Vec::new();
        let mut k = start;
        let mut previous = None;
        while k <= hi && points.len() < cap {
            if s.contains_num(k) {
                let m = self.point_mass(k, previous)?;
                points.push(k);
                previous = Some(k);
                cum += m;
                if cum >= 1.0 - eps && m <= f64::EPSILON * cum {
                    break;
                }
            }
            k += 1.0;
        }
        if points.len() >= cap {
            log::warn!(
                "support enumeration of {} stopped at {cap} points with mass {cum}",
                self.short_name()
            );
        }
        Ok(points)
    }

    /// Support points and their masses.
    pub(crate) fn support_masses(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let points = self.support_points()?;
        let mut masses = Vec::with_capacity(points.len());
        for (i, x) in points.iter().enumerate() {
            let prev = if i > 0 { Some(points[i - 1]) } else { None };
            masses.push(self.point_mass(*x, prev)?);
        }
        Ok((points, masses))
    }

    /// Integrates a fallible integrand; the first kernel error wins over any
    /// quadrature outcome.
    pub(crate) fn integrate_checked(
        &self,
        what: &str,
        f: impl Fn(f64) -> Result<f64>,
        a: f64,
        b: f64,
    ) -> Result<f64> {
        let failure: RefCell<Option<Error>> = RefCell::new(None);
        let g = |x: f64| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        };
        let out = integrate(g, a, b, self.options.quad());
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        quad_result(what, out)
    }

    /// Break points for integrating against the density: support bounds plus
    /// extreme and central quantiles when a quantile is available.
    pub(crate) fn density_breaks(&self) -> Vec<f64> {
        let s = self.support();
        let (lo, hi) = (s.lower(), s.upper());
        let mut pts = vec![lo];
        if self.can_quantile() {
            let eps = self.options.infinite_cutoff_prob;
            for p in [eps, 0.5, 1.0 - eps] {
                if let Ok(q) = self.quantile_at(p) {
                    if q.is_finite() && q > lo && q < hi {
                        pts.push(q);
                    }
                }
            }
        } else if lo < 0.0 && hi > 0.0 {
            pts.push(0.0);
        }
        pts.push(hi);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// ∫ g(x) f(x) dx over the support of a continuous distribution.
    pub(crate) fn integrate_density(&self, what: &str, g: &dyn Fn(f64) -> f64) -> Result<f64> {
        let breaks = self.density_breaks();
        let mut total = 0.0;
        for w in breaks.windows(2) {
            total += self.integrate_checked(
                what,
                |x| {
                    let d = self.pdf_at(x)?;
                    Ok(if d == 0.0 { 0.0 } else { g(x) * d })
                },
                w[0],
                w[1],
            )?;
        }
        Ok(total)
    }
}
