//! Parameter sets with supports, linked parameterisations and prefixed
//! aggregation for composite distributions.
//!
//! A [`ParameterSet`] holds the parameters of one distribution. Parameters that
//! describe the same quantity in different ways (variance, standard deviation
//! and precision of a Normal) form a [`ParameterizationGroup`]: one member is
//! canonical and every other member is a pure function of it, so setting any
//! member updates the rest.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sets::{format_number, MathSet};

/// Named construction or update arguments, in call order.
pub type Args<'a> = [(&'a str, ParamValue)];

/// The value of a single parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Num(f64),
    Vector(Vec<f64>),
    Token(String),
}

impl ParamValue {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            ParamValue::Num(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_slice(&self) -> Option<&[f64]> {
        match self {
            ParamValue::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_token(&self) -> Option<&str> {
        match self {
            ParamValue::Token(s) => Some(s),
            _ => None,
        }
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Num(v)
    }
}

impl From<i32> for ParamValue {
    fn from(v: i32) -> Self {
        ParamValue::Num(f64::from(v))
    }
}

impl From<Vec<f64>> for ParamValue {
    fn from(v: Vec<f64>) -> Self {
        ParamValue::Vector(v)
    }
}

impl From<&[f64]> for ParamValue {
    fn from(v: &[f64]) -> Self {
        ParamValue::Vector(v.to_vec())
    }
}

impl From<&str> for ParamValue {
    fn from(s: &str) -> Self {
        ParamValue::Token(s.to_string())
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Num(v) => f.write_str(&format_number(*v)),
            ParamValue::Token(s) => f.write_str(s),
            ParamValue::Vector(v) if v.len() > 6 => write!(
                f,
                "({}, {}, {},...,{}) [n={}]",
                format_number(v[0]),
                format_number(v[1]),
                format_number(v[2]),
                format_number(v[v.len() - 1]),
                v.len()
            ),
            ParamValue::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| format_number(*x)).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ParamValue::Num(v) => serializer.serialize_f64(*v),
            ParamValue::Vector(v) => v.serialize(serializer),
            ParamValue::Token(s) => serializer.serialize_str(s),
        }
    }
}

/// Hook run on a new value before support checks, e.g. to renormalise weights.
pub type ValueTransform = fn(ParamValue) -> std::result::Result<ParamValue, String>;

/// Cross-parameter validity check run after construction and every update.
pub type SetConstraint = fn(&ParameterSet) -> std::result::Result<(), String>;

#[derive(Debug, Clone)]
pub struct ParameterDef {
    pub id: String,
    pub value: ParamValue,
    pub support: MathSet,
    pub settable: bool,
    pub description: String,
    pub transform: Option<ValueTransform>,
}

impl ParameterDef {
    pub fn new(
        id: &str,
        value: impl Into<ParamValue>,
        support: MathSet,
        description: &str,
    ) -> Self {
        ParameterDef {
            id: id.to_string(),
            value: value.into(),
            support,
            settable: true,
            description: description.to_string(),
            transform: None,
        }
    }

    pub fn fixed(mut self) -> Self {
        self.settable = false;
        self
    }

    pub fn with_transform(mut self, transform: ValueTransform) -> Self {
        self.transform = Some(transform);
        self
    }

    fn check_support(&self, value: &ParamValue) -> Result<()> {
        let ok = match value {
            ParamValue::Num(v) => self.support.contains_num(*v),
            ParamValue::Vector(vs) => vs.iter().all(|v| self.support.contains_num(*v)),
            ParamValue::Token(t) => self.support.contains_token(t),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::SupportViolation {
                id: self.id.clone(),
                value: value.to_string(),
                support: self.support.to_string(),
            })
        }
    }
}

/// Interchangeable parameters linked through a canonical member.
#[derive(Debug, Clone)]
pub struct ParameterizationGroup {
    canonical: String,
    /// (member id, member -> canonical, canonical -> member)
    links: Vec<(String, fn(f64) -> f64, fn(f64) -> f64)>,
}

fn identity(x: f64) -> f64 {
    x
}

impl ParameterizationGroup {
    /// `links` lists the non-canonical members with their conversion functions.
    pub fn new(canonical: &str, links: &[(&str, fn(f64) -> f64, fn(f64) -> f64)]) -> Self {
        let mut all = vec![(
            canonical.to_string(),
            identity as fn(f64) -> f64,
            identity as fn(f64) -> f64,
        )];
        all.extend(
            links
                .iter()
                .map(|(id, to, from)| (id.to_string(), *to, *from)),
        );
        ParameterizationGroup {
            canonical: canonical.to_string(),
            links: all,
        }
    }

    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    pub fn members(&self) -> impl Iterator<Item = &str> {
        self.links.iter().map(|(id, _, _)| id.as_str())
    }

    pub fn contains(&self, id: &str) -> bool {
        self.links.iter().any(|(m, _, _)| m == id)
    }

    pub fn to_canonical(&self, id: &str, value: f64) -> Option<f64> {
        self.links
            .iter()
            .find(|(m, _, _)| m == id)
            .map(|(_, to, _)| to(value))
    }

    pub fn from_canonical(&self, id: &str, canonical: f64) -> Option<f64> {
        self.links
            .iter()
            .find(|(m, _, _)| m == id)
            .map(|(_, _, from)| from(canonical))
    }
}

/// One printed parameter row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamRow {
    pub id: String,
    pub value: ParamValue,
    pub support: String,
    pub description: String,
}

#[derive(Debug, Clone, Default)]
pub struct ParameterSet {
    defs: Vec<ParameterDef>,
    groups: Vec<ParameterizationGroup>,
    constraint: Option<SetConstraint>,
}

impl ParameterSet {
    /// Builds a set from definitions holding default values. Group members are
    /// recomputed from each group's canonical default.
    pub fn new(defs: Vec<ParameterDef>, groups: Vec<ParameterizationGroup>) -> Result<Self> {
        for (i, d) in defs.iter().enumerate() {
            if defs[..i].iter().any(|o| o.id == d.id) {
                return Err(Error::Construction(format!(
                    "duplicate parameter id '{}'",
                    d.id
                )));
            }
        }
        for g in &groups {
            for m in g.members() {
                if !defs.iter().any(|d| d.id == m) {
                    return Err(Error::Construction(format!(
                        "parameterisation group member '{m}' has no definition"
                    )));
                }
            }
        }
        let mut set = ParameterSet {
            defs,
            groups,
            constraint: None,
        };
        for gi in 0..set.groups.len() {
            let canonical = set.groups[gi].canonical.clone();
            let value = set.num_checked(&canonical)?;
            set.propagate(gi, &canonical, value);
        }
        for d in &set.defs {
            d.check_support(&d.value)?;
        }
        Ok(set)
    }

    pub fn with_constraint(mut self, constraint: SetConstraint) -> Result<Self> {
        constraint(&self).map_err(Error::Construction)?;
        self.constraint = Some(constraint);
        Ok(self)
    }

    /// Applies construction arguments: conflicting members of one group are an
    /// error, every value must lie in its support.
    pub fn build(
        defs: Vec<ParameterDef>,
        groups: Vec<ParameterizationGroup>,
        constraint: Option<SetConstraint>,
        args: &Args,
    ) -> Result<Self> {
        let mut set = ParameterSet::new(defs, groups)?;
        set.constraint = constraint;
        set.check_known(args)?;
        for g in &set.groups {
            let given: Vec<&str> = args
                .iter()
                .map(|(id, _)| *id)
                .filter(|id| g.contains(id))
                .collect();
            if given.len() > 1 {
                return Err(Error::ConflictingParameterisation {
                    members: g.members().map(str::to_string).collect(),
                });
            }
        }
        for (id, value) in args {
            set.assign(id, value.clone())?;
        }
        set.check_constraint()?;
        Ok(set)
    }

    fn check_known(&self, args: &Args) -> Result<()> {
        for (id, _) in args {
            if !self.contains(id) {
                return Err(Error::UnknownParameter(id.to_string()));
            }
        }
        Ok(())
    }

    fn check_constraint(&self) -> Result<()> {
        if let Some(c) = self.constraint {
            c(self).map_err(Error::InvalidArgument)?;
        }
        Ok(())
    }

    fn index(&self, id: &str) -> Result<usize> {
        self.defs
            .iter()
            .position(|d| d.id == id)
            .ok_or_else(|| Error::UnknownParameter(id.to_string()))
    }

    fn num_checked(&self, id: &str) -> Result<f64> {
        self.get(id)?.as_f64().ok_or_else(|| {
            Error::InvalidArgument(format!("parameter '{id}' does not hold a single number"))
        })
    }

    fn propagate(&mut self, group: usize, id: &str, value: f64) {
        let g = &self.groups[group];
        let Some(canonical) = g.to_canonical(id, value) else {
            return;
        };
        let updates: Vec<(String, f64)> = g
            .members()
            .map(|m| {
                let v = if m == id {
                    value
                } else {
                    g.from_canonical(m, canonical).unwrap_or(f64::NAN)
                };
                (m.to_string(), v)
            })
            .collect();
        for (m, v) in updates {
            if let Some(d) = self.defs.iter_mut().find(|d| d.id == m) {
                d.value = ParamValue::Num(v);
            }
        }
    }

    fn assign(&mut self, id: &str, value: ParamValue) -> Result<()> {
        let i = self.index(id)?;
        let value = match self.defs[i].transform {
            Some(t) => t(value).map_err(|msg| Error::SupportViolation {
                id: id.to_string(),
                value: msg,
                support: self.defs[i].support.to_string(),
            })?,
            None => value,
        };
        self.defs[i].check_support(&value)?;
        match self.groups.iter().position(|g| g.contains(id)) {
            Some(gi) => {
                let v = value.as_f64().ok_or_else(|| {
                    Error::InvalidArgument(format!("parameter '{id}' expects a number"))
                })?;
                self.propagate(gi, id, v);
                let members: Vec<String> = self.groups[gi].members().map(str::to_string).collect();
                for m in members {
                    let j = self.index(&m)?;
                    self.defs[j].check_support(&self.defs[j].value)?;
                }
            }
            None => self.defs[i].value = value,
        }
        Ok(())
    }

    pub fn contains(&self, id: &str) -> bool {
        self.defs.iter().any(|d| d.id == id)
    }

    pub fn get(&self, id: &str) -> Result<&ParamValue> {
        Ok(&self.defs[self.index(id)?].value)
    }

    /// Numeric value of a parameter known to exist; used by kernels.
    pub fn num(&self, id: &str) -> f64 {
        self.get(id)
            .ok()
            .and_then(ParamValue::as_f64)
            .unwrap_or_else(|| panic!("parameter '{id}' missing or not numeric"))
    }

    /// Vector value of a parameter known to exist; used by kernels.
    pub fn vector(&self, id: &str) -> &[f64] {
        self.get(id)
            .ok()
            .and_then(ParamValue::as_slice)
            .unwrap_or_else(|| panic!("parameter '{id}' missing or not a vector"))
    }

    /// Updates parameters. Grouped members propagate to their siblings; several
    /// members of one group in a single call are applied in order with a
    /// warning. Nothing is changed when any value is rejected.
    pub fn set_values(&mut self, args: &Args) -> Result<()> {
        self.check_known(args)?;
        for (id, _) in args {
            let d = &self.defs[self.index(id)?];
            if !d.settable {
                return Err(Error::NotSettable(id.to_string()));
            }
        }
        for g in &self.groups {
            let n = args.iter().filter(|(id, _)| g.contains(id)).count();
            if n > 1 {
                log::warn!(
                    "several parameters of {{{}}} given; the last one wins",
                    g.members().collect::<Vec<_>>().join(", ")
                );
            }
        }
        let mut next = self.clone();
        for (id, value) in args {
            next.assign(id, value.clone())?;
        }
        next.check_constraint()?;
        *self = next;
        Ok(())
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.defs.iter().map(|d| d.id.as_str())
    }

    pub fn defs(&self) -> &[ParameterDef] {
        &self.defs
    }

    pub fn groups(&self) -> &[ParameterizationGroup] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    /// Printed rows, in definition order.
    pub fn rows(&self) -> Vec<ParamRow> {
        self.defs
            .iter()
            .map(|d| ParamRow {
                id: d.id.clone(),
                value: d.value.clone(),
                support: d.support.to_string(),
                description: d.description.clone(),
            })
            .collect()
    }
}

/// Joins a prefix and an id with `_`; an empty prefix leaves the id alone.
pub fn prefixed(prefix: &str, id: &str) -> String {
    if prefix.is_empty() {
        id.to_string()
    } else if id.is_empty() {
        prefix.to_string()
    } else {
        format!("{prefix}_{id}")
    }
}

/// A parameter set inside a collection. `path` locates the owning
/// distribution inside a composite (component indices from the root).
#[derive(Debug, Clone)]
pub struct CollectionEntry {
    pub prefix: String,
    pub path: Vec<usize>,
    pub set: ParameterSet,
}

/// Flat, prefixed view over several parameter sets.
#[derive(Debug, Clone, Default)]
pub struct ParameterSetCollection {
    entries: Vec<CollectionEntry>,
}

impl ParameterSetCollection {
    /// Collects named sets; prefixes and resulting ids must be unique.
    pub fn collect(entries: Vec<(String, ParameterSet)>) -> Result<Self> {
        Self::from_entries(
            entries
                .into_iter()
                .map(|(prefix, set)| CollectionEntry {
                    prefix,
                    path: Vec::new(),
                    set,
                })
                .collect(),
        )
    }

    pub fn from_entries(entries: Vec<CollectionEntry>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if entries[..i].iter().any(|o| o.prefix == e.prefix) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate parameter prefix '{}'",
                    e.prefix
                )));
            }
        }
        let collection = ParameterSetCollection { entries };
        let ids = collection.ids();
        for (i, id) in ids.iter().enumerate() {
            if ids[..i].contains(id) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate parameter id '{id}'"
                )));
            }
        }
        Ok(collection)
    }

    pub fn entries(&self) -> &[CollectionEntry] {
        &self.entries
    }

    /// Entry index and inner id owning a prefixed id.
    pub fn locate(&self, id: &str) -> Result<(usize, String)> {
        for (i, e) in self.entries.iter().enumerate() {
            let inner = if e.prefix.is_empty() {
                Some(id)
            } else {
                id.strip_prefix(e.prefix.as_str())
                    .and_then(|rest| rest.strip_prefix('_'))
            };
            if let Some(inner) = inner {
                if e.set.contains(inner) {
                    return Ok((i, inner.to_string()));
                }
            }
        }
        Err(Error::UnknownParameter(id.to_string()))
    }

    pub fn get(&self, id: &str) -> Result<&ParamValue> {
        let (i, inner) = self.locate(id)?;
        self.entries[i].set.get(&inner)
    }

    /// Splits prefixed arguments by owning entry: (entry index, inner args).
    pub fn route(&self, args: &Args) -> Result<Vec<(usize, Vec<(String, ParamValue)>)>> {
        let mut routed: Vec<(usize, Vec<(String, ParamValue)>)> = Vec::new();
        for (id, value) in args {
            let (i, inner) = self.locate(id)?;
            match routed.iter_mut().find(|(j, _)| *j == i) {
                Some((_, list)) => list.push((inner, value.clone())),
                None => routed.push((i, vec![(inner, value.clone())])),
            }
        }
        Ok(routed)
    }

    /// Delegates updates to the owning inner sets; all-or-nothing.
    pub fn set_values(&mut self, args: &Args) -> Result<()> {
        let routed = self.route(args)?;
        let mut next = self.entries.clone();
        for (i, inner) in routed {
            let borrowed: Vec<(&str, ParamValue)> =
                inner.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
            next[i].set.set_values(&borrowed)?;
        }
        self.entries = next;
        Ok(())
    }

    pub fn ids(&self) -> Vec<String> {
        self.entries
            .iter()
            .flat_map(|e| e.set.ids().map(move |id| prefixed(&e.prefix, id)))
            .collect()
    }

    pub fn rows(&self) -> Vec<ParamRow> {
        self.entries
            .iter()
            .flat_map(|e| {
                e.set.rows().into_iter().map(move |mut r| {
                    r.id = prefixed(&e.prefix, &r.id);
                    r
                })
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.iter().map(|e| e.set.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn normal_set(args: &Args) -> Result<ParameterSet> {
        let pos = MathSet::PositiveReals { zero: false };
        ParameterSet::build(
            vec![
                ParameterDef::new("mean", 0.0, MathSet::Reals, "Mean"),
                ParameterDef::new("var", 1.0, pos.clone(), "Variance"),
                ParameterDef::new("sd", 1.0, pos.clone(), "Standard Deviation"),
                ParameterDef::new("prec", 1.0, pos, "Precision"),
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
        )
    }

    #[test]
    fn precision_propagates() {
        let s = normal_set(&[("prec", 4.0.into())]).unwrap();
        assert_eq!(s.num("mean"), 0.0);
        assert_eq!(s.num("var"), 0.25);
        assert_eq!(s.num("sd"), 0.5);
        assert_eq!(s.num("prec"), 4.0);
    }

    #[test]
    fn conflict_detected_in_any_order() {
        for args in [
            vec![("var", ParamValue::from(1.0)), ("prec", 2.0.into())],
            vec![("prec", ParamValue::from(2.0)), ("var", 1.0.into())],
        ] {
            let err = normal_set(&args).unwrap_err();
            assert_eq!(
                err.to_string(),
                "Conflicting parametrisations detected. Only one of {var, sd, prec} should be given."
            );
        }
    }

    #[test]
    fn defaults_and_errors() {
        let s = normal_set(&[]).unwrap();
        assert_eq!(s.rows().len(), 4);
        assert_eq!(s.num("sd"), 1.0);
        assert!(matches!(s.get("nope"), Err(Error::UnknownParameter(_))));
        assert!(matches!(
            normal_set(&[("sd", (-1.0).into())]),
            Err(Error::SupportViolation { .. })
        ));
        assert!(ParameterSet::default().rows().is_empty());
    }

    #[test]
    fn set_sd_updates_prec() {
        let mut s = normal_set(&[]).unwrap();
        s.set_values(&[("sd", 2.0.into())]).unwrap();
        assert_eq!(s.num("prec"), 0.25);
        assert_eq!(s.num("var"), 4.0);
        assert_eq!(s.num("mean"), 0.0);
    }

    #[test]
    fn failed_update_leaves_set_untouched() {
        let mut s = normal_set(&[]).unwrap();
        let err = s.set_values(&[("mean", 3.0.into()), ("sd", (-2.0).into())]);
        assert!(err.is_err());
        assert_eq!(s.num("mean"), 0.0);
        assert_eq!(s.num("sd"), 1.0);
    }

    #[test]
    fn same_group_update_last_wins() {
        let mut s = normal_set(&[]).unwrap();
        s.set_values(&[("var", 9.0.into()), ("prec", 4.0.into())])
            .unwrap();
        assert_eq!(s.num("var"), 0.25);
    }

    #[test]
    fn fixed_parameters_reject_updates() {
        let mut s = ParameterSet::new(
            vec![ParameterDef::new("n", 3.0, MathSet::Naturals, "count").fixed()],
            vec![],
        )
        .unwrap();
        assert!(matches!(
            s.set_values(&[("n", 4.0.into())]),
            Err(Error::NotSettable(_))
        ));
    }

    #[test]
    fn collection_prefixes_and_delegates() {
        let mut c = ParameterSetCollection::collect(vec![
            ("Norm1".into(), normal_set(&[]).unwrap()),
            ("Norm2".into(), normal_set(&[("mean", 2.0.into())]).unwrap()),
        ])
        .unwrap();
        let ids = c.ids();
        assert_eq!(ids.len(), 8);
        assert_eq!(ids[0], "Norm1_mean");
        assert_eq!(ids[7], "Norm2_prec");
        c.set_values(&[("Norm1_mean", 5.0.into()), ("Norm2_sd", 3.0.into())])
            .unwrap();
        assert_eq!(c.entries()[0].set.num("mean"), 5.0);
        assert_eq!(c.get("Norm1_mean").unwrap(), &ParamValue::Num(5.0));
        assert_eq!(c.get("Norm2_var").unwrap(), &ParamValue::Num(9.0));
        assert!(ParameterSetCollection::collect(vec![
            ("A".into(), normal_set(&[]).unwrap()),
            ("A".into(), normal_set(&[]).unwrap()),
        ])
        .is_err());
    }

    proptest! {
        #[test]
        fn group_stays_consistent(ops in proptest::collection::vec((0usize..3, 0.01..100.0f64), 1..20)) {
            let mut s = normal_set(&[]).unwrap();
            for (which, v) in ops {
                let id = ["var", "sd", "prec"][which];
                s.set_values(&[(id, v.into())]).unwrap();
                s.set_values(&[("mean", v.into())]).unwrap();
                let var = s.num("var");
                prop_assert!((s.num("sd") - var.sqrt()).abs() <= 1e-12 * var.sqrt());
                prop_assert!((s.num("prec") - 1.0 / var).abs() <= 1e-12 / var);
                prop_assert_eq!(s.num("mean"), v);
            }
        }

        #[test]
        fn collection_get_matches_inner(mean in -10.0..10.0f64) {
            let mut c = ParameterSetCollection::collect(vec![
                ("Norm1".into(), normal_set(&[]).unwrap()),
            ]).unwrap();
            c.set_values(&[("Norm1_mean", mean.into())]).unwrap();
            prop_assert_eq!(c.get("Norm1_mean").unwrap(), c.entries()[0].set.get("mean").unwrap());
        }
    }
}
