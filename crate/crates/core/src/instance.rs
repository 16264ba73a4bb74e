//! Instance files: JSON descriptions of a partial system and, optionally, a
//! twisted action on top of it.
//!
//! ```json
//! {
//!   "name": "ex-e",
//!   "field": {"kind":"fp","p":3},
//!   "group": {"kind":"cyclic","n":3},
//!   "space": 2,
//!   "domains": {"0":[0,1],"1":[1],"2":[0]},
//!   "maps": {"0":{"0":0,"1":1},"1":{"0":1},"2":{"1":0}}
//! }
//! ```
//!
//! Element keys are indices or labels. An omitted domain is empty except for
//! the identity, whose domain defaults to the whole space and whose map
//! defaults to the identity. `supports`/`sigmas` override the dynamics for the
//! twisted action; `cocycle` lists values away from 1 as `{"g,h": {"x": c}}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use num_rational::BigRational;
use num_traits::One;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::dynamics::{PartialSystem, PointSet};
use crate::error::{Error, Result};
use crate::field::{parse_scalar, scalar_to_json, Field, FieldDescriptor};
use crate::group::{FiniteGroup, GroupDescriptor, DEFAULT_GROUP_CAP};
use crate::ring::SplitRing;
use crate::twisted::{CocycleTable, TwistedAction};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    #[serde(default)]
    name: String,
    #[serde(default)]
    field: FieldDescriptor,
    group: GroupDescriptor,
    space: usize,
    #[serde(default)]
    domains: IndexMap<String, Vec<usize>>,
    #[serde(default)]
    maps: IndexMap<String, IndexMap<String, usize>>,
    supports: Option<IndexMap<String, Vec<usize>>>,
    sigmas: Option<IndexMap<String, IndexMap<String, usize>>>,
    #[serde(default)]
    cocycle: IndexMap<String, IndexMap<String, Value>>,
}

/// A parsed and validated instance. Cocycle scalars are kept as rationals so
/// that the field can be overridden after parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub field: FieldDescriptor,
    pub group_descriptor: GroupDescriptor,
    pub group: FiniteGroup,
    pub space: usize,
    pub domains: Vec<PointSet>,
    pub maps: Vec<BTreeMap<usize, usize>>,
    pub supports: Option<Vec<PointSet>>,
    pub sigmas: Option<Vec<BTreeMap<usize, usize>>>,
    /// Only values different from 1.
    pub cocycle: CocycleTable<BigRational>,
}

fn parse_error(field: Option<String>, message: impl Into<String>) -> Error {
    Error::Parse { field, line: 0, column: 0, message: message.into() }
}

fn element(group: &FiniteGroup, key: &str, what: &str) -> Result<usize> {
    group
        .parse_element(key)
        .ok_or_else(|| parse_error(Some(format!("{what}.{key}")), format!("unknown group element `{key}`")))
}

fn point(key: &str, what: &str) -> Result<usize> {
    key.trim().parse().map_err(|_| parse_error(Some(what.to_string()), format!("`{key}` is not a point index")))
}

fn resolve_sets(group: &FiniteGroup, space: usize, raw: &IndexMap<String, Vec<usize>>, what: &str) -> Result<Vec<PointSet>> {
    let mut out: Vec<Option<PointSet>> = vec![None; group.order()];
    for (k, pts) in raw {
        let g = element(group, k, what)?;
        if out[g].is_some() {
            return Err(parse_error(Some(format!("{what}.{k}")), "element listed twice"));
        }
        out[g] = Some(pts.iter().copied().collect());
    }
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(g, s)| s.unwrap_or_else(|| if g == group.identity() { (0..space).collect() } else { PointSet::new() }))
        .collect())
}

fn resolve_maps(
    group: &FiniteGroup,
    sets: &[PointSet],
    raw: &IndexMap<String, IndexMap<String, usize>>,
    what: &str,
) -> Result<Vec<BTreeMap<usize, usize>>> {
    let mut out: Vec<Option<BTreeMap<usize, usize>>> = vec![None; group.order()];
    for (k, m) in raw {
        let g = element(group, k, what)?;
        if out[g].is_some() {
            return Err(parse_error(Some(format!("{what}.{k}")), "element listed twice"));
        }
        let mut map = BTreeMap::new();
        for (x, &y) in m {
            map.insert(point(x, &format!("{what}.{k}"))?, y);
        }
        out[g] = Some(map);
    }
    let e = group.identity();
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(g, m)| m.unwrap_or_else(|| if g == e { sets[e].iter().map(|&x| (x, x)).collect() } else { BTreeMap::new() }))
        .collect())
}

/// Splits `"g,h"`; labels of product groups contain commas, so every split point is tried.
fn element_pair(group: &FiniteGroup, key: &str) -> Result<(usize, usize)> {
    key.match_indices(',')
        .find_map(|(i, _)| Some((group.parse_element(&key[..i])?, group.parse_element(&key[i + 1..])?)))
        .ok_or_else(|| parse_error(Some(format!("cocycle.{key}")), "expected `g,h` with two group elements"))
}

/// Maps a serde_json error to a structured parse error, naming a missing field.
fn from_json_error(path: String, err: serde_json::Error) -> Error {
    let message = err.to_string();
    let missing = message.strip_prefix("missing field `").and_then(|rest| rest.split('`').next()).map(str::to_string);
    let field = match (missing, path.as_str()) {
        (Some(m), "." | "") => Some(m),
        (Some(m), p) => Some(format!("{p}.{m}")),
        (None, "." | "") => None,
        (None, p) => Some(p.to_string()),
    };
    Error::Parse { field, line: err.line(), column: err.column(), message }
}

impl Instance {
    /// Parses and validates against the declared field.
    pub fn parse(text: &str) -> Result<Instance> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawInstance = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            from_json_error(path, e.into_inner())
        })?;
        let group = FiniteGroup::from_descriptor(&raw.group, DEFAULT_GROUP_CAP)?;
        let domains = resolve_sets(&group, raw.space, &raw.domains, "domains")?;
        let maps = resolve_maps(&group, &domains, &raw.maps, "maps")?;
        let supports = raw.supports.as_ref().map(|s| resolve_sets(&group, raw.space, s, "supports")).transpose()?;
        let sigmas = match (&supports, &raw.sigmas) {
            (Some(s), Some(m)) => Some(resolve_maps(&group, s, m, "sigmas")?),
            (Some(s), None) => Some(resolve_maps(&group, s, &IndexMap::new(), "sigmas")?),
            (None, Some(_)) => return Err(parse_error(Some("sigmas".into()), "sigmas given without supports")),
            (None, None) => None,
        };
        let mut cocycle = CocycleTable::new();
        for (k, values) in &raw.cocycle {
            let (g, h) = element_pair(&group, k)?;
            let mut entry = BTreeMap::new();
            for (x, v) in values {
                let q = parse_scalar(v).map_err(|e| match e {
                    Error::Parse { message, .. } => parse_error(Some(format!("cocycle.{k}.{x}")), message),
                    other => other,
                })?;
                if !q.is_one() {
                    entry.insert(point(x, &format!("cocycle.{k}"))?, q);
                }
            }
            if cocycle.insert((g, h), entry).is_some() {
                return Err(parse_error(Some(format!("cocycle.{k}")), "pair listed twice"));
            }
        }
        cocycle.retain(|_, m| !m.is_empty());
        let inst = Instance {
            name: raw.name,
            field: raw.field,
            group_descriptor: raw.group,
            group,
            space: raw.space,
            domains,
            maps,
            supports,
            sigmas,
            cocycle,
        };
        inst.check()?;
        Ok(inst)
    }

    pub fn from_path(path: &Path) -> Result<Instance> {
        Instance::parse(&fs::read_to_string(path)?)
    }

    /// Same instance over another field; fails if a cocycle value vanishes there.
    pub fn with_field(&self, field: FieldDescriptor) -> Result<Instance> {
        let mut out = self.clone();
        out.field = field;
        out.check()?;
        Ok(out)
    }

    /// Structural checks and validation of both the dynamics and the action.
    pub fn check(&self) -> Result<()> {
        let sys = self.system()?;
        let report = sys.validate();
        if !report.valid {
            return Err(Error::Validation(Box::new(report)));
        }
        match self.field.build()? {
            crate::field::AnyField::Prime(f) => self.check_action(f),
            crate::field::AnyField::Rational(f) => self.check_action(f),
        }
    }

    fn check_action<F: Field>(&self, f: F) -> Result<()> {
        let a = self.action(f)?;
        let report = a.validate();
        if !report.valid {
            return Err(Error::Validation(Box::new(report)));
        }
        Ok(())
    }

    pub fn system(&self) -> Result<PartialSystem> {
        PartialSystem::new(self.group.clone(), self.space, self.domains.clone(), self.maps.clone())
    }

    /// The twisted action over `field` (structural checks only).
    pub fn action<F: Field>(&self, field: F) -> Result<TwistedAction<F>> {
        let mut table = CocycleTable::new();
        for (&(g, h), m) in &self.cocycle {
            let mut entry = BTreeMap::new();
            for (&x, q) in m {
                entry.insert(x, field.from_rational(q)?);
            }
            table.insert((g, h), entry);
        }
        TwistedAction::new(
            self.group.clone(),
            SplitRing::new(field, self.space),
            self.supports.clone().unwrap_or_else(|| self.domains.clone()),
            self.sigmas.clone().unwrap_or_else(|| self.maps.clone()),
            &table,
        )
    }

    /// True when the twisted action is the plain lift of the dynamics.
    pub fn is_lift(&self) -> bool {
        self.supports.is_none() && self.cocycle.is_empty()
    }

    /// Builds an instance from an action, using its supports and bijections as the dynamics.
    pub fn from_action<F: Field>(name: impl Into<String>, group: GroupDescriptor, action: &TwistedAction<F>) -> Result<Instance> {
        let f = action.field();
        let cocycle: CocycleTable<BigRational> = action
            .cocycle_table()
            .into_iter()
            .map(|(k, m)| (k, m.into_iter().filter(|(_, v)| !f.is_one(v)).map(|(x, v)| (x, f.to_rational(&v))).collect::<BTreeMap<_, _>>()))
            .filter(|(_, m)| !m.is_empty())
            .collect();
        let fg = action.group().clone();
        let inst = Instance {
            name: name.into(),
            field: f.descriptor(),
            group_descriptor: group,
            group: fg.clone(),
            space: action.size(),
            domains: action.supports().to_vec(),
            maps: fg.elements().map(|g| action.sigma(g).as_map().clone()).collect(),
            supports: None,
            sigmas: None,
            cocycle,
        };
        inst.check()?;
        Ok(inst)
    }

    fn sets_json(sets: &[PointSet]) -> Value {
        Value::Object(sets.iter().enumerate().map(|(g, s)| (g.to_string(), Value::from(s.iter().copied().collect::<Vec<_>>()))).collect())
    }

    fn maps_json(maps: &[BTreeMap<usize, usize>]) -> Value {
        Value::Object(
            maps.iter()
                .enumerate()
                .map(|(g, m)| (g.to_string(), Value::Object(m.iter().map(|(x, y)| (x.to_string(), Value::from(*y))).collect())))
                .collect(),
        )
    }

    /// Canonical JSON value; keys are element indices and every element is listed.
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("name".into(), Value::from(self.name.clone()));
        obj.insert("field".into(), serde_json::to_value(self.field).expect("serializable"));
        obj.insert("group".into(), serde_json::to_value(&self.group_descriptor).expect("serializable"));
        obj.insert("space".into(), Value::from(self.space));
        obj.insert("domains".into(), Self::sets_json(&self.domains));
        obj.insert("maps".into(), Self::maps_json(&self.maps));
        if let Some(s) = &self.supports {
            obj.insert("supports".into(), Self::sets_json(s));
        }
        if let Some(m) = &self.sigmas {
            obj.insert("sigmas".into(), Self::maps_json(m));
        }
        if !self.cocycle.is_empty() {
            let c: Map<String, Value> = self
                .cocycle
                .iter()
                .map(|((g, h), m)| {
                    let vals: Map<String, Value> = m.iter().map(|(x, q)| (x.to_string(), scalar_to_json(&self.field, q))).collect();
                    (format!("{g},{h}"), Value::Object(vals))
                })
                .collect();
            obj.insert("cocycle".into(), Value::Object(c));
        }
        Value::Object(obj)
    }

    /// One top-level key per line, values compact; ends with a newline.
    pub fn to_canonical_string(&self) -> String {
        let Value::Object(obj) = self.to_json() else { unreachable!("instance serializes to an object") };
        let lines: Vec<String> = obj
            .iter()
            .map(|(k, v)| format!("  {}: {}", Value::from(k.clone()), serde_json::to_string(v).expect("serializable")))
            .collect();
        format!("{{\n{}\n}}\n", lines.join(",\n"))
    }

    /// Single-line form for JSON Lines streams.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX_E: &str = r#"{
  "name": "ex-e",
  "field": {"kind":"fp","p":3},
  "group": {"kind":"cyclic","n":3},
  "space": 2,
  "domains": {"0":[0,1],"1":[1],"2":[0]},
  "maps": {"0":{"0":0,"1":1},"1":{"0":1},"2":{"1":0}}
}
"#;

    #[test]
    fn canonical_round_trip() {
        let inst = Instance::parse(EX_E).unwrap();
        assert_eq!(inst.to_canonical_string(), EX_E);
        assert_eq!(Instance::parse(&inst.to_json_line()).unwrap(), inst);
    }

    #[test]
    fn labels_and_defaults() {
        let text = r#"{"group":{"kind":"cyclic","n":2},"space":2,"domains":{"1":[0,1]},"maps":{"1":{"0":1,"1":0}}}"#;
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.domains[0].len(), 2);
        assert_eq!(inst.maps[0], BTreeMap::from([(0, 0), (1, 1)]));
        assert_eq!(inst.field, FieldDescriptor::Fp { p: 3 });
    }

    #[test]
    fn missing_group_names_the_field() {
        let err = Instance::parse(r#"{"space":1}"#).unwrap_err();
        match err {
            Error::Parse { field, .. } => assert_eq!(field.as_deref(), Some("group")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = Instance::parse("{\n  \"group\": [\n").unwrap_err();
        let Error::Parse { line, .. } = err else { panic!("expected a parse error") };
        assert!(line >= 2);
    }

    #[test]
    fn broken_axiom_is_a_validation_error() {
        // both rotations become the swap, so α_1 α_1 is not α_2
        let text = EX_E
            .replace(r#""1":[1],"2":[0]"#, r#""1":[0,1],"2":[0,1]"#)
            .replace(r#""1":{"0":1},"2":{"1":0}"#, r#""1":{"0":1,"1":0},"2":{"0":1,"1":0}"#);
        match Instance::parse(&text).unwrap_err() {
            Error::Validation(report) => assert!(!report.valid && !report.failures.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cocycle_values_and_field_override() {
        let text = r#"{
  "name": "ex-d",
  "field": {"kind":"fp","p":3},
  "group": {"kind":"product","factors":[{"kind":"cyclic","n":2},{"kind":"cyclic","n":2}]},
  "space": 1,
  "domains": {"0":[0],"1":[0],"2":[0],"3":[0]},
  "maps": {"0":{"0":0},"1":{"0":0},"2":{"0":0},"3":{"0":0}},
  "cocycle": {"1,2":{"0":2},"1,3":{"0":2},"3,2":{"0":2},"3,3":{"0":2}}
}
"#;
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.to_canonical_string(), text);
        assert!(!inst.is_lift());
        // labels with commas resolve too
        let labelled = text.replace("\"1,2\"", "\"(0,1),(1,0)\"");
        assert_eq!(Instance::parse(&labelled).unwrap(), inst);
        // the literal 2 is -1 only mod 3
        assert!(matches!(inst.with_field(FieldDescriptor::Rational), Err(Error::Validation(_))));
        let minus = Instance::parse(&text.replace(r#""0":2}"#, r#""0":-1}"#)).unwrap();
        let q = minus.with_field(FieldDescriptor::Rational).unwrap();
        assert_eq!(q.to_json()["cocycle"]["1,2"]["0"], Value::from("-1"));
    }
}
