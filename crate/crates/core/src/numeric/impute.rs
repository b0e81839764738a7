//! FunctionImputation: kernels recovered from whichever kernels exist.

use crate::distribution::{Distribution, Kernel};
use crate::error::{Error, Result};

use super::roots::{bracket_increasing, brent};

/// Cached tables built when the decorator is applied.
#[derive(Debug)]
pub(crate) enum Imputed {
    /// Enumerated support with cumulative probabilities at each point.
    Points { points: Vec<f64>, cum: Vec<f64> },
    /// Knots with the cdf integrated from the density up to each knot.
    Knots { knots: Vec<f64>, cum: Vec<f64> },
}

fn knot_grid(lo: f64, hi: f64) -> Vec<f64> {
    let mut knots = Vec::new();
    if lo.is_finite() && hi.is_finite() {
        let n = 64;
        knots.extend((0..=n).map(|i| lo + (hi - lo) * f64::from(i) / f64::from(n)));
    } else {
        let anchor = if lo.is_finite() {
            lo
        } else if hi.is_finite() {
            hi
        } else {
            0.0
        };
        let mut offsets = vec![0.0];
        offsets.extend((1..=16).map(|j| 0.25 * f64::from(j)));
        offsets.extend((3..=40).map(|k| 2f64.powi(k)));
        for o in offsets {
            for x in [anchor - o, anchor + o] {
                if x >= lo && x <= hi {
                    knots.push(x);
                }
            }
        }
    }
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    knots
}

impl Imputed {
    pub(crate) fn build(d: &Distribution) -> Result<Option<Imputed>> {
        if !d.is_univariate() {
            return Ok(None);
        }
        if d.is_enumerable() {
            if !d.has_kernel(Kernel::Pdf) && !d.has_kernel(Kernel::Cdf) {
                return Ok(None);
            }
            let points = match d.support_points() {
                Ok(p) => p,
                Err(e) => {
                    log::warn!("no support table for {}: {e}", d.short_name());
                    return Ok(None);
                }
            };
            let cum = if d.has_kernel(Kernel::Cdf) {
                points
                    .iter()
                    .map(|x| d.cdf_at(*x))
                    .collect::<Result<Vec<_>>>()?
            } else {
                let mut acc = 0.0;
                let mut cum = Vec::with_capacity(points.len());
                for x in &points {
                    acc += d.pdf_at(*x)?;
                    cum.push(acc);
                }
                cum
            };
            return Ok(Some(Imputed::Points { points, cum }));
        }
        if d.has_kernel(Kernel::Cdf) || !d.has_kernel(Kernel::Pdf) {
            return Ok(None);
        }
        let s = d.support();
        let (lo, hi) = (s.lower(), s.upper());
        let knots = knot_grid(lo, hi);
        let mut cum = Vec::with_capacity(knots.len());
        let first = if knots[0] <= lo {
            0.0
        } else {
            d.integrate_checked("cdf imputation", |x| d.pdf_at(x), lo, knots[0])?
        };
        cum.push(first);
        for w in knots.windows(2) {
            let piece = d.integrate_checked("cdf imputation", |x| d.pdf_at(x), w[0], w[1])?;
            cum.push(cum.last().copied().unwrap_or(0.0) + piece);
        }
        let total = cum.last().copied().unwrap_or(0.0);
        if (total - 1.0).abs() > 1e-6 && hi.is_finite() {
            log::warn!("density of {} integrates to {total}", d.short_name());
        }
        Ok(Some(Imputed::Knots { knots, cum }))
    }
}

/// Index of the last entry `<= x`, if any.
fn last_at_or_below(values: &[f64], x: f64) -> Option<usize> {
    values.partition_point(|v| *v <= x).checked_sub(1)
}

impl Distribution {
    fn imputation_missing(&self, method: &str) -> Error {
        self.missing(method, "imputation needs a pdf or a cdf kernel")
    }

    pub(crate) fn imputed_cdf(&self, x: f64) -> Result<f64> {
        match self.imputed.as_deref() {
            Some(Imputed::Points { points, cum }) => {
                let Some(i) = last_at_or_below(points, x) else {
                    return Ok(0.0);
                };
                let mut f = cum[i];
                let s = self.support();
                if i + 1 == points.len() && s.upper() > points[i] && self.has_kernel(Kernel::Pdf) {
                    // beyond the enumerated table of an unbounded support
                    let mut k = points[i] + 1.0;
                    let mut steps = 0;
                    while k <= x && steps < self.options.discrete_cutoff {
                        if s.contains_num(k) {
                            f += self.pdf_at(k)?;
                        }
                        k += 1.0;
                        steps += 1;
                    }
                }
                Ok(f.clamp(0.0, 1.0))
            }
            Some(Imputed::Knots { knots, cum }) => {
                let s = self.support();
                if x <= s.lower() {
                    return Ok(0.0);
                }
                if x >= s.upper() {
                    return Ok(cum.last().copied().unwrap_or(1.0).min(1.0));
                }
                let v = match last_at_or_below(knots, x) {
                    Some(i) => {
                        cum[i]
                            + self.integrate_checked(
                                "cdf imputation",
                                |t| self.pdf_at(t),
                                knots[i],
                                x,
                            )?
                    }
                    None => {
                        self.integrate_checked("cdf imputation", |t| self.pdf_at(t), s.lower(), x)?
                    }
                };
                Ok(v.clamp(0.0, 1.0))
            }
            None => Err(self.imputation_missing("cdf")),
        }
    }

    pub(crate) fn imputed_pdf(&self, x: f64) -> Result<f64> {
        if !self.has_kernel(Kernel::Cdf) {
            return Err(self.imputation_missing("pdf"));
        }
        if self.is_enumerable() {
            let s = self.support();
            if !s.contains_num(x) {
                return Ok(0.0);
            }
            if let Some(Imputed::Points { points, cum }) = self.imputed.as_deref() {
                if let Some(i) = last_at_or_below(points, x) {
                    if points[i] == x {
                        let below = if i > 0 {
                            cum[i - 1]
                        } else if s.lower().is_finite() {
                            0.0
                        } else {
                            self.cdf_at(x - 1.0)?
                        };
                        return Ok((cum[i] - below).max(0.0));
                    }
                }
            }
            return self.point_mass(x, None);
        }
        let s = self.support();
        let (lo, hi) = (s.lower(), s.upper());
        if x < lo || x > hi {
            return Ok(0.0);
        }
        let h = 1e-6_f64.max(x.abs() * 1e-8);
        let (a, b) = if x - h < lo {
            (x, x + h)
        } else if x + h > hi {
            (x - h, x)
        } else {
            (x - h, x + h)
        };
        Ok(((self.cdf_at(b)? - self.cdf_at(a)?) / (b - a)).max(0.0))
    }

    pub(crate) fn imputed_quantile(&self, p: f64) -> Result<f64> {
        if !self.has_kernel(Kernel::Cdf) && self.imputed.is_none() {
            return Err(self.imputation_missing("quantile"));
        }
        let s = self.support();
        if self.is_enumerable() {
            return self.discrete_quantile(p);
        }
        let (lo, hi) = (s.lower(), s.upper());
        if p <= 0.0 {
            return Ok(lo);
        }
        if p >= 1.0 {
            return Ok(hi);
        }
        let g = |x: f64| self.cdf_at(x).map_or(f64::NAN, |f| f - p);
        let (a, b) = match self.imputed.as_deref() {
            Some(Imputed::Knots { knots, cum }) => {
                let j = cum.partition_point(|c| *c < p);
                if j == 0 {
                    bracket_increasing(g, knots[0], lo, hi, 1100)?
                } else if j >= knots.len() {
                    bracket_increasing(g, knots[knots.len() - 1], lo, hi, 1100)?
                } else {
                    (knots[j - 1], knots[j])
                }
            }
            _ => {
                let start = if lo.is_finite() && hi.is_finite() {
                    0.5 * (lo + hi)
                } else if lo.is_finite() {
                    lo
                } else if hi.is_finite() {
                    hi
                } else {
                    0.0
                };
                bracket_increasing(g, start, lo, hi, 1100)?
            }
        };
        if a == b {
            return Ok(a);
        }
        let tol = self.options.root_tol;
        brent(g, a, b, tol, self.options.root_max_iter)
    }

    /// Smallest support point with F(x) >= p.
    fn discrete_quantile(&self, p: f64) -> Result<f64> {
        let Some(Imputed::Points { points, cum }) = self.imputed.as_deref() else {
            return Err(self.imputation_missing("quantile"));
        };
        if points.is_empty() {
            return Err(Error::Unsupported(format!(
                "{} has an empty support",
                self.short_name()
            )));
        }
        let use_cdf = self.has_kernel(Kernel::Cdf);
        let j = cum.partition_point(|c| *c < p);
        if j < points.len() {
            return Ok(points[j]);
        }
        let s = self.support();
        let last = points[points.len() - 1];
        if s.upper() <= last || !s.is_integer_valued() {
            return Ok(last);
        }
        // walk past the table for unbounded supports
        let mut f = cum[cum.len() - 1];
        let mut k = last;
        for _ in 0..self.options.discrete_cutoff {
            k += 1.0;
            if !s.contains_num(k) {
                continue;
            }
            f = if use_cdf {
                self.cdf_at(k)?
            } else {
                f + self.pdf_at(k)?
            };
            if f >= p {
                return Ok(k);
            }
        }
        Ok(k)
    }
}
