//! Symbolic mathematical sets.
//!
//! Sets describe the mathematical type of a distribution, its support and the
//! support of each parameter. They answer membership queries and render to the
//! short canonical strings used throughout the printed output (`R`, `N0`,
//! `[0,1]`, `R U {-Inf, +Inf}`, ...).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance used when deciding whether a floating point value is a whole number.
pub const INTEGER_TOL: f64 = 1e-12;

/// Closure of an interval's end points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Closed,
    Open,
    LeftOpen,
    RightOpen,
}

impl Closure {
    fn from_flags(lower_closed: bool, upper_closed: bool) -> Self {
        match (lower_closed, upper_closed) {
            (true, true) => Closure::Closed,
            (false, false) => Closure::Open,
            (false, true) => Closure::LeftOpen,
            (true, false) => Closure::RightOpen,
        }
    }

    pub fn lower_closed(self) -> bool {
        matches!(self, Closure::Closed | Closure::RightOpen)
    }

    pub fn upper_closed(self) -> bool {
        matches!(self, Closure::Closed | Closure::LeftOpen)
    }
}

/// An element of a finite set: a number or a symbolic token such as `uniform`.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Num(f64),
    Sym(String),
}

impl From<f64> for Element {
    fn from(v: f64) -> Self {
        Element::Num(v)
    }
}

impl From<&str> for Element {
    fn from(s: &str) -> Self {
        Element::Sym(s.to_string())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Num(v) => f.write_str(&format_number(*v)),
            Element::Sym(s) => f.write_str(s),
        }
    }
}

/// A symbolic set.
#[derive(Debug, Clone, PartialEq)]
pub enum MathSet {
    Reals,
    /// `[0, +Inf)` when `zero` is set, `(0, +Inf)` otherwise.
    PositiveReals {
        zero: bool,
    },
    /// `(-Inf, 0]` when `zero` is set, `(-Inf, 0)` otherwise.
    NegativeReals {
        zero: bool,
    },
    Integers,
    /// Whole numbers from 1.
    Naturals,
    /// Whole numbers from 0.
    Naturals0,
    Interval {
        lower: f64,
        upper: f64,
        closure: Closure,
    },
    Finite(Vec<Element>),
    Union(Vec<MathSet>),
    Power(Box<MathSet>, usize),
}

impl MathSet {
    /// Checked interval constructor.
    pub fn interval(lower: f64, upper: f64, closure: Closure) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower > upper {
            return Err(Error::InvalidArgument(format!(
                "interval bounds out of order: {lower} > {upper}"
            )));
        }
        if lower == upper && closure != Closure::Closed {
            return Err(Error::InvalidArgument(
                "an interval with equal bounds must be closed".into(),
            ));
        }
        Ok(MathSet::Interval {
            lower,
            upper,
            closure,
        })
    }

    /// Closed interval `[lower, upper]`; panics on reversed bounds.
    pub fn closed(lower: f64, upper: f64) -> Self {
        Self::interval(lower, upper, Closure::Closed).expect("valid closed interval")
    }

    /// Finite set of numbers, de-duplicated, order of first appearance kept.
    pub fn finite_nums<I: IntoIterator<Item = f64>>(values: I) -> Self {
        let mut out: Vec<Element> = Vec::new();
        for v in values {
            if !out.iter().any(|e| matches!(e, Element::Num(u) if *u == v)) {
                out.push(Element::Num(v));
            }
        }
        MathSet::Finite(out)
    }

    /// Finite set of arbitrary elements; rejects duplicates.
    pub fn finite(elements: Vec<Element>) -> Result<Self> {
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate element {e} in finite set"
                )));
            }
        }
        Ok(MathSet::Finite(elements))
    }

    /// The integers `lower..=upper` as a finite set.
    pub fn int_range(lower: i64, upper: i64) -> Self {
        MathSet::Finite((lower..=upper).map(|k| Element::Num(k as f64)).collect())
    }

    pub fn power(base: MathSet, exponent: usize) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::InvalidArgument(
                "set power exponent must be at least 1".into(),
            ));
        }
        Ok(MathSet::Power(Box::new(base), exponent))
    }

    /// The set joined with `{-Inf, +Inf}`.
    pub fn extended_union(&self) -> MathSet {
        MathSet::Union(vec![
            self.clone(),
            MathSet::Finite(vec![
                Element::Num(f64::NEG_INFINITY),
                Element::Num(f64::INFINITY),
            ]),
        ])
    }

    /// Number of coordinates of a member point.
    pub fn dimension(&self) -> usize {
        match self {
            MathSet::Power(base, k) => base.dimension() * k,
            MathSet::Union(members) => members.first().map_or(1, MathSet::dimension),
            _ => 1,
        }
    }

    /// Membership test for a single real number (one-dimensional sets).
    pub fn contains_num(&self, x: f64) -> bool {
        if x.is_nan() {
            return false;
        }
        match self {
            MathSet::Reals => x.is_finite(),
            MathSet::PositiveReals { zero } => x.is_finite() && (x > 0.0 || (*zero && x == 0.0)),
            MathSet::NegativeReals { zero } => x.is_finite() && (x < 0.0 || (*zero && x == 0.0)),
            MathSet::Integers => is_whole(x),
            MathSet::Naturals => is_whole(x) && x >= 1.0 - INTEGER_TOL,
            MathSet::Naturals0 => is_whole(x) && x >= -INTEGER_TOL,
            MathSet::Interval {
                lower,
                upper,
                closure,
            } => {
                let above = if closure.lower_closed() {
                    x >= *lower
                } else {
                    x > *lower
                };
                let below = if closure.upper_closed() {
                    x <= *upper
                } else {
                    x < *upper
                };
                above && below
            }
            MathSet::Finite(elems) => elems
                .iter()
                .any(|e| matches!(e, Element::Num(v) if *v == x)),
            MathSet::Union(members) => members.iter().any(|m| m.contains_num(x)),
            MathSet::Power(base, 1) => base.contains_num(x),
            MathSet::Power(..) => false,
        }
    }

    /// Membership test for a symbolic token.
    pub fn contains_token(&self, token: &str) -> bool {
        match self {
            MathSet::Finite(elems) => elems
                .iter()
                .any(|e| matches!(e, Element::Sym(s) if s == token)),
            MathSet::Union(members) => members.iter().any(|m| m.contains_token(token)),
            MathSet::Power(base, 1) => base.contains_token(token),
            _ => false,
        }
    }

    /// Membership test for a point whose length must equal the set dimension.
    pub fn contains_point(&self, point: &[f64]) -> Result<bool> {
        let dim = self.dimension();
        if point.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: point.len(),
            });
        }
        Ok(self.contains_point_unchecked(point))
    }

    fn contains_point_unchecked(&self, point: &[f64]) -> bool {
        match self {
            MathSet::Power(base, _) => {
                let d = base.dimension();
                point
                    .chunks(d)
                    .all(|chunk| base.contains_point_unchecked(chunk))
            }
            MathSet::Union(members) => members
                .iter()
                .any(|m| m.dimension() == point.len() && m.contains_point_unchecked(point)),
            _ => point.len() == 1 && self.contains_num(point[0]),
        }
    }

    /// Element-wise membership of a batch of points.
    pub fn contains(&self, points: &[Vec<f64>]) -> Result<Vec<bool>> {
        points.iter().map(|p| self.contains_point(p)).collect()
    }

    /// True when every member is a whole number.
    pub fn is_integer_valued(&self) -> bool {
        match self {
            MathSet::Integers | MathSet::Naturals | MathSet::Naturals0 => true,
            MathSet::Finite(elems) => elems
                .iter()
                .all(|e| matches!(e, Element::Num(v) if is_whole(*v))),
            MathSet::Union(members) => members.iter().all(MathSet::is_integer_valued),
            MathSet::Power(base, _) => base.is_integer_valued(),
            MathSet::Interval { lower, upper, .. } => lower == upper && is_whole(*lower),
            _ => false,
        }
    }

    /// True for sets with countably many members (finite or integer-like).
    pub fn is_countable(&self) -> bool {
        match self {
            MathSet::Integers | MathSet::Naturals | MathSet::Naturals0 | MathSet::Finite(_) => true,
            MathSet::Interval { lower, upper, .. } => lower == upper,
            MathSet::Union(members) => members.iter().all(MathSet::is_countable),
            MathSet::Power(base, _) => base.is_countable(),
            _ => false,
        }
    }

    /// Numeric members of a finite set, sorted ascending.
    pub fn finite_values(&self) -> Option<Vec<f64>> {
        let mut vals = match self {
            MathSet::Finite(elems) => elems
                .iter()
                .filter_map(|e| match e {
                    Element::Num(v) if v.is_finite() => Some(*v),
                    _ => None,
                })
                .collect::<Vec<_>>(),
            MathSet::Interval { lower, upper, .. } if lower == upper => vec![*lower],
            MathSet::Union(members) => {
                let mut all = Vec::new();
                for m in members {
                    all.extend(m.finite_values()?);
                }
                all
            }
            _ => return None,
        };
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        Some(vals)
    }

    /// Infimum of a one-dimensional numeric set.
    pub fn lower(&self) -> f64 {
        match self {
            MathSet::Reals | MathSet::Integers | MathSet::NegativeReals { .. } => f64::NEG_INFINITY,
            MathSet::PositiveReals { .. } | MathSet::Naturals0 => 0.0,
            MathSet::Naturals => 1.0,
            MathSet::Interval { lower, .. } => *lower,
            MathSet::Finite(elems) => elems
                .iter()
                .filter_map(|e| match e {
                    Element::Num(v) => Some(*v),
                    Element::Sym(_) => None,
                })
                .fold(f64::INFINITY, f64::min),
            MathSet::Union(members) => members
                .iter()
                .map(MathSet::lower)
                .fold(f64::INFINITY, f64::min),
            MathSet::Power(base, _) => base.lower(),
        }
    }

    /// Supremum of a one-dimensional numeric set.
    pub fn upper(&self) -> f64 {
        match self {
            MathSet::Reals
            | MathSet::Integers
            | MathSet::Naturals
            | MathSet::Naturals0
            | MathSet::PositiveReals { .. } => f64::INFINITY,
            MathSet::NegativeReals { .. } => 0.0,
            MathSet::Interval { upper, .. } => *upper,
            MathSet::Finite(elems) => elems
                .iter()
                .filter_map(|e| match e {
                    Element::Num(v) => Some(*v),
                    Element::Sym(_) => None,
                })
                .fold(f64::NEG_INFINITY, f64::max),
            MathSet::Union(members) => members
                .iter()
                .map(MathSet::upper)
                .fold(f64::NEG_INFINITY, f64::max),
            MathSet::Power(base, _) => base.upper(),
        }
    }

    /// Intersection with the interval between `lower` and `upper`, with the
    /// given end point inclusion. Integer-like sets with finite bounds become
    /// finite sets; other unbounded cases keep their structure.
    pub fn restrict(
        &self,
        lower: f64,
        upper: f64,
        lower_closed: bool,
        upper_closed: bool,
    ) -> MathSet {
        let keep = |v: f64| {
            let above = if lower_closed { v >= lower } else { v > lower };
            let below = if upper_closed { v <= upper } else { v < upper };
            above && below
        };
        match self {
            MathSet::Finite(elems) => MathSet::Finite(
                elems
                    .iter()
                    .filter(|e| matches!(e, Element::Num(v) if keep(*v)))
                    .cloned()
                    .collect(),
            ),
            MathSet::Integers | MathSet::Naturals | MathSet::Naturals0 => {
                let lo = lower.max(self.lower());
                if lo.is_finite() && upper.is_finite() && upper - lo < 1e6 {
                    let start = lo.ceil() as i64;
                    let end = upper.floor() as i64;
                    MathSet::Finite(
                        (start..=end)
                            .map(|k| k as f64)
                            .filter(|v| keep(*v))
                            .map(Element::Num)
                            .collect(),
                    )
                } else {
                    self.clone()
                }
            }
            MathSet::Union(members) => MathSet::Union(
                members
                    .iter()
                    .map(|m| m.restrict(lower, upper, lower_closed, upper_closed))
                    .collect(),
            ),
            MathSet::Power(..) => self.clone(),
            _ => {
                let (own_lo, own_hi) = (self.lower(), self.upper());
                let (own_lo_closed, own_hi_closed) = match self {
                    MathSet::Interval { closure, .. } => {
                        (closure.lower_closed(), closure.upper_closed())
                    }
                    MathSet::PositiveReals { zero } => (*zero, false),
                    MathSet::NegativeReals { zero } => (false, *zero),
                    _ => (false, false),
                };
                let (lo, lo_closed) = if lower > own_lo {
                    (lower, lower_closed)
                } else if lower < own_lo {
                    (own_lo, own_lo_closed)
                } else {
                    (lower, lower_closed && own_lo_closed)
                };
                let (hi, hi_closed) = if upper < own_hi {
                    (upper, upper_closed)
                } else if upper > own_hi {
                    (own_hi, own_hi_closed)
                } else {
                    (upper, upper_closed && own_hi_closed)
                };
                let lo_closed = lo_closed && lo.is_finite();
                let hi_closed = hi_closed && hi.is_finite();
                if lo == f64::NEG_INFINITY && hi == f64::INFINITY {
                    MathSet::Reals
                } else if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
                    MathSet::Finite(Vec::new())
                } else {
                    MathSet::Interval {
                        lower: lo,
                        upper: hi,
                        closure: Closure::from_flags(lo_closed, hi_closed),
                    }
                }
            }
        }
    }
}

fn is_whole(x: f64) -> bool {
    x.is_finite() && (x - x.round()).abs() <= INTEGER_TOL
}

/// Compact number rendering used by set and parameter printing.
pub fn format_number(v: f64) -> String {
    if v == f64::INFINITY {
        "+Inf".into()
    } else if v == f64::NEG_INFINITY {
        "-Inf".into()
    } else if v.is_nan() {
        "NaN".into()
    } else if v == v.trunc() && v.abs() < 1e15 {
        format!("{v:.0}")
    } else {
        format!("{v}")
    }
}

fn format_bound(v: f64) -> String {
    if v == f64::INFINITY {
        "+Inf".into()
    } else if v == f64::NEG_INFINITY {
        "-Inf".into()
    } else {
        format_number(v)
    }
}

impl fmt::Display for MathSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MathSet::Reals => f.write_str("R"),
            MathSet::PositiveReals { zero: false } => f.write_str("R+"),
            MathSet::PositiveReals { zero: true } => f.write_str("R0+"),
            MathSet::NegativeReals { zero: false } => f.write_str("R-"),
            MathSet::NegativeReals { zero: true } => f.write_str("R0-"),
            MathSet::Integers => f.write_str("Z"),
            MathSet::Naturals => f.write_str("N"),
            MathSet::Naturals0 => f.write_str("N0"),
            MathSet::Interval {
                lower,
                upper,
                closure,
            } => {
                let open = if closure.lower_closed() { "[" } else { "(" };
                let close = if closure.upper_closed() { "]" } else { ")" };
                write!(
                    f,
                    "{open}{},{}{close}",
                    format_bound(*lower),
                    format_bound(*upper)
                )
            }
            MathSet::Finite(elems) => {
                let items: Vec<String> = elems.iter().map(Element::to_string).collect();
                if items.len() > 4 {
                    let n = items.len();
                    write!(
                        f,
                        "{{{}, {},...,{}, {}}}",
                        items[0],
                        items[1],
                        items[n - 2],
                        items[n - 1]
                    )
                } else {
                    write!(f, "{{{}}}", items.join(", "))
                }
            }
            MathSet::Union(members) => {
                let parts: Vec<String> = members.iter().map(MathSet::to_string).collect();
                f.write_str(&parts.join(" U "))
            }
            MathSet::Power(base, k) => match **base {
                MathSet::Union(_) | MathSet::Interval { .. } => write!(f, "({base})^{k}"),
                _ => write!(f, "{base}^{k}"),
            },
        }
    }
}

impl Serialize for MathSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn naturals0_rejects_negative() {
        assert!(!MathSet::Naturals0.contains_num(-1.0));
        assert!(MathSet::Naturals0.contains_num(0.0));
        assert!(MathSet::Naturals0.contains_num(3.0));
        assert!(!MathSet::Naturals0.contains_num(2.5));
    }

    #[test]
    fn closed_interval_endpoints() {
        let s = MathSet::closed(0.0, 1.0);
        let got = s
            .contains(&[vec![0.0], vec![0.5], vec![1.0], vec![1.5]])
            .unwrap();
        assert_eq!(got, vec![true, true, true, false]);
    }

    #[test]
    fn weights_support_accepts_token() {
        let s = MathSet::Union(vec![
            MathSet::Finite(vec![Element::from("uniform")]),
            MathSet::closed(0.0, 1.0),
        ]);
        assert!(s.contains_token("uniform"));
        assert!(!s.contains_token("other"));
        assert!(s.contains_num(0.3));
        assert_eq!(s.to_string(), "{uniform} U [0,1]");
    }

    #[test]
    fn display_strings() {
        assert_eq!(MathSet::closed(0.0, 1.0).to_string(), "[0,1]");
        assert_eq!(MathSet::Reals.to_string(), "R");
        assert_eq!(MathSet::int_range(1, 10).to_string(), "{1, 2,...,9, 10}");
        assert_eq!(MathSet::int_range(1, 3).to_string(), "{1, 2, 3}");
        assert_eq!(MathSet::PositiveReals { zero: false }.to_string(), "R+");
        assert_eq!(
            MathSet::interval(-1.0, 1.0, Closure::LeftOpen)
                .unwrap()
                .to_string(),
            "(-1,1]"
        );
        assert_eq!(
            MathSet::power(MathSet::Reals, 2).unwrap().to_string(),
            "R^2"
        );
    }

    #[test]
    fn extended_union_members() {
        let r = MathSet::Reals.extended_union();
        assert_eq!(r.to_string(), "R U {-Inf, +Inf}");
        assert!(r.contains_num(f64::INFINITY));
        assert!(r.contains_num(f64::NEG_INFINITY));
        assert!(r.contains_num(2.0));
        let unit = MathSet::closed(0.0, 1.0).extended_union();
        assert!(unit.contains_num(f64::NEG_INFINITY));
        assert!(!unit.contains_num(2.0));
    }

    #[test]
    fn infinities_never_in_open_ends() {
        assert!(!MathSet::Reals.contains_num(f64::INFINITY));
        let half = MathSet::interval(0.0, f64::INFINITY, Closure::RightOpen).unwrap();
        assert!(!half.contains_num(f64::INFINITY));
        assert!(half.contains_num(0.0));
    }

    #[test]
    fn dimension_checked() {
        let r2 = MathSet::power(MathSet::Reals, 2).unwrap();
        assert!(r2.contains_point(&[1.0, 2.0]).unwrap());
        assert!(matches!(
            r2.contains_point(&[1.0]),
            Err(Error::Dimension {
                expected: 2,
                got: 1
            })
        ));
        let r1 = MathSet::power(MathSet::Naturals0, 1).unwrap();
        assert_eq!(r1.contains_num(2.0), MathSet::Naturals0.contains_num(2.0));
    }

    #[test]
    fn invalid_sets_rejected() {
        assert!(MathSet::interval(2.0, 1.0, Closure::Closed).is_err());
        assert!(MathSet::interval(1.0, 1.0, Closure::Open).is_err());
        assert!(MathSet::interval(1.0, 1.0, Closure::Closed).is_ok());
        assert!(MathSet::finite(vec![1.0.into(), 1.0.into()]).is_err());
        assert!(MathSet::power(MathSet::Reals, 0).is_err());
    }

    #[test]
    fn restrict_sets() {
        let trunc = MathSet::Reals.restrict(-1.0, 1.0, false, true);
        assert_eq!(trunc.to_string(), "(-1,1]");
        let binom = MathSet::int_range(0, 20).restrict(1.0, 5.0, false, true);
        assert_eq!(binom.finite_values().unwrap(), vec![2.0, 3.0, 4.0, 5.0]);
        let n0 = MathSet::Naturals0.restrict(1.0, 5.0, true, true);
        assert_eq!(n0.finite_values().unwrap(), vec![1.0, 2.0, 3.0, 4.0, 5.0]);
    }

    fn arb_set() -> impl Strategy<Value = MathSet> {
        prop_oneof![
            Just(MathSet::Reals),
            Just(MathSet::Integers),
            Just(MathSet::Naturals0),
            Just(MathSet::Naturals),
            any::<bool>().prop_map(|zero| MathSet::PositiveReals { zero }),
            (-10.0..10.0f64, 0.0..10.0f64, 0usize..4).prop_map(|(a, w, c)| {
                let closure = [
                    Closure::Closed,
                    Closure::Open,
                    Closure::LeftOpen,
                    Closure::RightOpen,
                ][c];
                MathSet::Interval {
                    lower: a,
                    upper: a + w + 1e-3,
                    closure,
                }
            }),
            proptest::collection::vec(-5i32..5, 1..6)
                .prop_map(|v| MathSet::finite_nums(v.into_iter().map(f64::from))),
        ]
    }

    proptest! {
        #[test]
        fn union_is_or_of_members(members in proptest::collection::vec(arb_set(), 1..4), x in -12.0..12.0f64) {
            let u = MathSet::Union(members.clone());
            let expected = members.iter().any(|m| m.contains_num(x));
            prop_assert_eq!(u.contains_num(x), expected);
            let xr = x.round();
            prop_assert_eq!(u.contains_num(xr), members.iter().any(|m| m.contains_num(xr)));
        }

        #[test]
        fn integer_membership_matches_fraction(x in -1e6..1e6f64) {
            prop_assert!(MathSet::Reals.contains_num(x));
            let whole = x.fract() == 0.0;
            prop_assert_eq!(MathSet::Integers.contains_num(x), whole);
            prop_assert_eq!(MathSet::Naturals0.contains_num(x), whole && x >= 0.0);
            let r = x.round();
            prop_assert!(MathSet::Integers.contains_num(r));
        }

        #[test]
        fn interval_interior_and_exterior(a in -100.0..100.0f64, w in 0.01..50.0f64, t in 0.001..0.999f64, c in 0usize..4) {
            let closure = [Closure::Closed, Closure::Open, Closure::LeftOpen, Closure::RightOpen][c];
            let s = MathSet::interval(a, a + w, closure).unwrap();
            prop_assert!(s.contains_num(a + t * w));
            prop_assert!(!s.contains_num(a - w * t - 1e-9));
            prop_assert!(!s.contains_num(a + w + w * t + 1e-9));
            let shown = s.to_string();
            prop_assert_eq!(s.contains_num(a), shown.starts_with('['));
            prop_assert_eq!(s.contains_num(a + w), shown.ends_with(']'));
        }
    }
}
