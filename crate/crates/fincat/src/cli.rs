//! File schemas, canonical serialization, and machine-readable verdicts.
//!
//! All structures are UTF-8 JSON documents with fixed field names. The
//! composition table lists `g ∘ f` as `{"first": f, "then": g}`. Canonical
//! serialization sorts keys and lists lexicographically, so
//! parse-then-serialize is byte-stable on canonical files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::category::{FinCategory, RawCategory};
use crate::finset::{FinFunction, FinSet};
use crate::functor::{FinFunctor, NatTrans};
use crate::monad::{BuiltinMonad, KleisliMap, Rat, Term};
use crate::monoid::MonoidTable;
use crate::order::{FinPreorder, MonotoneMap};
use crate::quiver::{Edge, MultiGraph};
use crate::universal::Diagram;
use crate::yoneda::Presheaf;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("{0}")]
    Semantic(String),
}

impl CliError {
    pub fn semantic(e: impl std::fmt::Display) -> CliError {
        CliError::Semantic(e.to_string())
    }
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Syntax {
        line: 0,
        column: 0,
        message: e.to_string(),
    })
}

/// Resolves `reference` relative to the directory of `from`.
fn sibling(from: &Path, reference: &str) -> PathBuf {
    let candidate = PathBuf::from(reference);
    if candidate.is_absolute() {
        candidate
    } else {
        from.parent().unwrap_or(Path::new(".")).join(candidate)
    }
}

/// Parses a category file and validates it.
pub fn parse_category(path: &Path) -> Result<FinCategory, CliError> {
    let raw: RawCategory = from_value(read_json(path)?)?;
    FinCategory::validate(&raw).map_err(CliError::semantic)
}

/// Parses category data without semantic validation; used by `validate`.
pub fn parse_category_raw(path: &Path) -> Result<RawCategory, CliError> {
    from_value(read_json(path)?)
}

pub fn serialize_category(cat: &FinCategory) -> String {
    canonical_pretty(&serde_json::to_value(cat.to_raw()).expect("serializable"))
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

pub fn parse_graph(path: &Path) -> Result<MultiGraph, CliError> {
    let raw: GraphFile = from_value(read_json(path)?)?;
    MultiGraph::new(raw.vertices, raw.edges).map_err(CliError::semantic)
}

pub fn serialize_graph(g: &MultiGraph) -> String {
    canonical_pretty(
        &serde_json::to_value(GraphFile {
            vertices: g.vertices().to_vec(),
            edges: g.edges().to_vec(),
        })
        .expect("serializable"),
    )
}

#[derive(Debug, Serialize, Deserialize)]
struct FunctorFile {
    source: String,
    target: String,
    objects: BTreeMap<String, String>,
    morphisms: BTreeMap<String, String>,
}

pub fn parse_functor(path: &Path) -> Result<FinFunctor, CliError> {
    let raw: FunctorFile = from_value(read_json(path)?)?;
    let source = parse_category(&sibling(path, &raw.source))?;
    let target = parse_category(&sibling(path, &raw.target))?;
    FinFunctor::new(source, target, raw.objects, raw.morphisms).map_err(CliError::semantic)
}

#[derive(Debug, Serialize, Deserialize)]
struct PosetFile {
    elements: Vec<String>,
    leq: Vec<(String, String)>,
}

pub fn parse_poset(path: &Path) -> Result<FinPreorder, CliError> {
    let raw: PosetFile = from_value(read_json(path)?)?;
    FinPreorder::new(raw.elements, raw.leq.into_iter().collect()).map_err(CliError::semantic)
}

pub fn serialize_poset(p: &FinPreorder) -> String {
    canonical_pretty(
        &serde_json::to_value(PosetFile {
            elements: p.elements().to_vec(),
            leq: p.pairs().iter().cloned().collect(),
        })
        .expect("serializable"),
    )
}

#[derive(Debug, Serialize, Deserialize)]
struct MonotoneFile {
    source: String,
    target: String,
    map: BTreeMap<String, String>,
}

pub fn parse_monotone(path: &Path) -> Result<MonotoneMap, CliError> {
    let raw: MonotoneFile = from_value(read_json(path)?)?;
    let source = parse_poset(&sibling(path, &raw.source))?;
    let target = parse_poset(&sibling(path, &raw.target))?;
    MonotoneMap::new(&source, &target, &raw.map).map_err(CliError::semantic)
}

pub fn parse_finset_function(path: &Path) -> Result<FinFunction, CliError> {
    from_value(read_json(path)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct AdjunctionFile {
    left: String,
    right: String,
    unit: BTreeMap<String, String>,
    counit: BTreeMap<String, String>,
}

pub fn parse_adjunction(path: &Path) -> Result<crate::adjunction::Adjunction, CliError> {
    let raw: AdjunctionFile = from_value(read_json(path)?)?;
    let left = parse_functor(&sibling(path, &raw.left))?;
    let right = parse_functor(&sibling(path, &raw.right))?;
    let unit = NatTrans::new(
        FinFunctor::identity(left.source()),
        left.then(&right).map_err(CliError::semantic)?,
        raw.unit,
    )
    .map_err(CliError::semantic)?;
    let counit = NatTrans::new(
        right.then(&left).map_err(CliError::semantic)?,
        FinFunctor::identity(left.target()),
        raw.counit,
    )
    .map_err(CliError::semantic)?;
    crate::adjunction::Adjunction::new(left, right, unit, counit).map_err(CliError::semantic)
}

#[derive(Debug, Serialize, Deserialize)]
struct DiagramFile {
    shape: String,
    /// Present for diagrams valued in an arbitrary category.
    #[serde(default)]
    ambient: Option<String>,
    #[serde(default)]
    objects: BTreeMap<String, String>,
    #[serde(default)]
    morphisms: BTreeMap<String, String>,
    /// Present for diagrams of finite sets.
    #[serde(default)]
    sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    functions: BTreeMap<String, BTreeMap<String, String>>,
}

pub enum ParsedDiagram {
    InCategory(Diagram),
    OfSets(crate::finset::SetDiagram),
}

pub fn parse_diagram(path: &Path) -> Result<ParsedDiagram, CliError> {
    let raw: DiagramFile = from_value(read_json(path)?)?;
    let shape = parse_category(&sibling(path, &raw.shape))?;
    if let Some(ambient) = &raw.ambient {
        let ambient = parse_category(&sibling(path, ambient))?;
        let body = FinFunctor::new(shape, ambient, raw.objects, raw.morphisms)
            .map_err(CliError::semantic)?;
        return Ok(ParsedDiagram::InCategory(Diagram::new(body)));
    }
    let mut sets = BTreeMap::new();
    for (k, v) in raw.sets {
        sets.insert(k, FinSet::new(v).map_err(CliError::semantic)?);
    }
    let mut maps = BTreeMap::new();
    for m in shape.morphisms() {
        let mapping = raw
            .functions
            .get(&m.name)
            .cloned()
            .unwrap_or_default();
        let dom = sets
            .get(&m.src)
            .ok_or_else(|| CliError::Semantic(format!("no set for `{}`", m.src)))?
            .clone();
        let cod = sets
            .get(&m.tgt)
            .ok_or_else(|| CliError::Semantic(format!("no set for `{}`", m.tgt)))?
            .clone();
        let func = if shape.identity_of(&m.src) == Some(m.name.as_str()) && mapping.is_empty() {
            FinFunction::identity(&dom)
        } else {
            FinFunction::new(dom, cod, &mapping).map_err(CliError::semantic)?
        };
        maps.insert(m.name.clone(), func);
    }
    let d = crate::finset::SetDiagram::new(shape, sets, maps).map_err(CliError::semantic)?;
    Ok(ParsedDiagram::OfSets(d))
}

#[derive(Debug, Serialize, Deserialize)]
struct PresheafFile {
    base: String,
    values: BTreeMap<String, Vec<String>>,
    actions: BTreeMap<String, BTreeMap<String, String>>,
}

pub fn parse_presheaf(path: &Path) -> Result<Presheaf, CliError> {
    let raw: PresheafFile = from_value(read_json(path)?)?;
    let base = parse_category(&sibling(path, &raw.base))?;
    let mut values = BTreeMap::new();
    for (k, v) in raw.values {
        values.insert(k, FinSet::new(v).map_err(CliError::semantic)?);
    }
    let mut actions = BTreeMap::new();
    for m in base.morphisms() {
        let mapping = raw.actions.get(&m.name).cloned().unwrap_or_default();
        let dom = values
            .get(&m.tgt)
            .ok_or_else(|| CliError::Semantic(format!("no value for `{}`", m.tgt)))?
            .clone();
        let cod = values
            .get(&m.src)
            .ok_or_else(|| CliError::Semantic(format!("no value for `{}`", m.src)))?
            .clone();
        actions.insert(
            m.name.clone(),
            FinFunction::new(dom, cod, &mapping).map_err(CliError::semantic)?,
        );
    }
    Presheaf::new(base, values, actions).map_err(CliError::semantic)
}

#[derive(Debug, Serialize, Deserialize)]
struct MonoidFile {
    elements: Vec<String>,
    unit: String,
    table: BTreeMap<String, BTreeMap<String, String>>,
}

pub fn parse_monoid(path: &Path) -> Result<MonoidTable, CliError> {
    let raw: MonoidFile = from_value(read_json(path)?)?;
    MonoidTable::new(raw.elements, raw.unit, raw.table).map_err(CliError::semantic)
}

#[derive(Debug, Serialize, Deserialize)]
struct KleisliFile {
    domain: Vec<String>,
    codomain: Vec<String>,
    map: BTreeMap<String, Value>,
}

/// Parses a Kleisli map; the JSON encoding of values is monad-directed:
/// powerset `["y"]`, distribution `{"y": "1/2"}`, writer `["m", "y"]`,
/// maybe `"y"` or `null`, list `["y1", "y2"]`.
pub fn parse_kleisli(path: &Path, monad: &BuiltinMonad) -> Result<KleisliMap, CliError> {
    let raw: KleisliFile = from_value(read_json(path)?)?;
    let domain = FinSet::new(raw.domain).map_err(CliError::semantic)?;
    let codomain = FinSet::new(raw.codomain).map_err(CliError::semantic)?;
    let mut map = BTreeMap::new();
    for (k, v) in raw.map {
        map.insert(k, term_from_json(monad, &v)?);
    }
    KleisliMap::new(monad, domain, codomain, map).map_err(CliError::semantic)
}

pub fn term_from_json(monad: &BuiltinMonad, v: &Value) -> Result<Term, CliError> {
    let bad = || CliError::Semantic(format!("malformed {} value: {v}", monad.kind()));
    match monad {
        BuiltinMonad::Powerset => {
            let arr = v.as_array().ok_or_else(bad)?;
            let mut set = std::collections::BTreeSet::new();
            for e in arr {
                set.insert(Term::atom(e.as_str().ok_or_else(bad)?));
            }
            Ok(Term::Set(set))
        }
        BuiltinMonad::Distribution { .. } => {
            let obj = v.as_object().ok_or_else(bad)?;
            let mut entries = Vec::new();
            for (k, w) in obj {
                let s = w.as_str().ok_or_else(bad)?;
                let r: Rat = s
                    .parse()
                    .map_err(|_| CliError::Semantic(format!("bad rational `{s}`")))?;
                entries.push((Term::atom(k), r));
            }
            Term::dist(entries).map_err(CliError::semantic)
        }
        BuiltinMonad::Writer { .. } => {
            let arr = v.as_array().ok_or_else(bad)?;
            if arr.len() != 2 {
                return Err(bad());
            }
            Ok(Term::Tagged(
                arr[0].as_str().ok_or_else(bad)?.to_string(),
                Box::new(Term::atom(arr[1].as_str().ok_or_else(bad)?)),
            ))
        }
        BuiltinMonad::Maybe => match v {
            Value::Null => Ok(Term::Nothing),
            Value::String(s) => Ok(Term::Just(Box::new(Term::atom(s)))),
            _ => Err(bad()),
        },
        BuiltinMonad::List { .. } => {
            let arr = v.as_array().ok_or_else(bad)?;
            let mut seq = Vec::new();
            for e in arr {
                seq.push(Term::atom(e.as_str().ok_or_else(bad)?));
            }
            Ok(Term::Seq(seq))
        }
    }
}

pub fn term_to_json(monad: &BuiltinMonad, t: &Term) -> Value {
    match (monad, t) {
        (BuiltinMonad::Powerset, Term::Set(xs)) => {
            Value::Array(xs.iter().map(|x| Value::String(x.name())).collect())
        }
        (BuiltinMonad::Distribution { .. }, Term::Dist(ws)) => Value::Object(
            ws.iter()
                .map(|(x, w)| (x.name(), Value::String(w.to_string())))
                .collect(),
        ),
        (BuiltinMonad::Writer { .. }, Term::Tagged(m, x)) =>verdict_array(&[m.clone(), x.name()]),
        (BuiltinMonad::Maybe, Term::Nothing) => Value::Null,
        (BuiltinMonad::Maybe, Term::Just(x)) => Value::String(x.name()),
        (BuiltinMonad::List { .. }, Term::Seq(xs)) => {
            Value::Array(xs.iter().map(|x| Value::String(x.name())).collect())
        }
        _ => Value::String(t.name()),
    }
}

fn verdict_array(items: &[String]) -> Value {
    Value::Array(items.iter().map(|s| Value::String(s.clone())).collect())
}

/// Machine-readable outcome of a CLI check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub stats: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Error,
}

impl Verdict {
    pub fn holds(stats: BTreeMap<String, u64>) -> Verdict {
        Verdict {
            status: Status::Holds,
            witness: None,
            stats,
        }
    }

    pub fn fails(witness: Value, stats: BTreeMap<String, u64>) -> Verdict {
        Verdict {
            status: Status::Fails,
            witness: Some(witness),
            stats,
        }
    }

    pub fn error(message: impl std::fmt::Display) -> Verdict {
        Verdict {
            status: Status::Error,
            witness: Some(Value::String(message.to_string())),
            stats: BTreeMap::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Error => 2,
        }
    }

    pub fn render(&self) -> String {
        canonical_pretty(&serde_json::to_value(self).expect("serializable"))
    }
}

/// Pretty JSON with sorted keys (serde_json maps from BTreeMap are already
/// sorted; this normalizes arbitrary values).
pub fn canonical_pretty(v: &Value) -> String {
    fn sort(v: &Value) -> Value {
        match v {
            Value::Object(m) => {
                let sorted: serde_json::Map<String, Value> =
                    m.iter().map(|(k, val)| (k.clone(), sort(val))).collect();
                Value::Object(sorted)
            }
            Value::Array(a) => Value::Array(a.iter().map(sort).collect()),
            other => other.clone(),
        }
    }
    let mut s = serde_json::to_string_pretty(&sort(v)).expect("serializable");
    s.push('\n');
    s
}

/// Replays a structured witness against the category axioms; returns true
/// when the witness still demonstrates a violation.
pub fn replay_category_witness(raw: &RawCategory, witness: &Value) -> bool {
    let Some(axiom) = witness.get("axiom").and_then(|a| a.as_str()) else {
        return false;
    };
    match axiom {
        "missing-identity" => {
            let Some(object) = witness.get("object").and_then(|o| o.as_str()) else {
                return false;
            };
            !raw.identities.contains_key(object)
        }
        "missing-composite" => {
            let (Some(f), Some(g)) = (
                witness.get("first").and_then(|v| v.as_str()),
                witness.get("then").and_then(|v| v.as_str()),
            ) else {
                return false;
            };
            !raw.compose
                .iter()
                .any(|e| e.first == f && e.then == g)
        }
        "unitality" => {
            let Some(f) = witness.get("morphism").and_then(|v| v.as_str()) else {
                return false;
            };
            let lookup = |first: &str, then: &str| {
                raw.compose
                    .iter()
                    .find(|e| e.first == first && e.then == then)
                    .map(|e| e.equals.clone())
            };
            let Some(m) = raw.morphisms.iter().find(|m| m.name == f) else {
                return false;
            };
            let id_src = raw.identities.get(&m.src);
            let id_tgt = raw.identities.get(&m.tgt);
            match (id_src, id_tgt) {
                (Some(i), Some(j)) => {
                    lookup(i, f) != Some(f.to_string()) || lookup(f, j) != Some(f.to_string())
                }
                _ => true,
            }
        }
        "associativity" => {
            let (Some(f), Some(g), Some(h)) = (
                witness.get("f").and_then(|v| v.as_str()),
                witness.get("g").and_then(|v| v.as_str()),
                witness.get("h").and_then(|v| v.as_str()),
            ) else {
                return false;
            };
            let lookup = |first: &str, then: &str| {
                raw.compose
                    .iter()
                    .find(|e| e.first == first && e.then == then)
                    .map(|e| e.equals.clone())
            };
            let lhs = lookup(f, g).and_then(|fg| lookup(&fg, h));
            let rhs = lookup(g, h).and_then(|gh| lookup(f, &gh));
            lhs != rhs || lhs.is_none()
        }
        _ => false,
    }
}

/// Structured witness for a category validation failure.
pub fn category_error_witness(err: &crate::category::CategoryError) -> Value {
    use crate::category::CategoryError as E;
    match err {
        E::MissingIdentity(x) => serde_json::json!({"axiom": "missing-identity", "object": x}),
        E::MissingComposite(f, g) => {
            serde_json::json!({"axiom": "missing-composite", "first": f, "then": g})
        }
        E::UnitalityViolation(f) => serde_json::json!({"axiom": "unitality", "morphism": f}),
        E::AssociativityViolation(f, g, h) => {
            serde_json::json!({"axiom": "associativity", "f": f, "g": g, "h": h})
        }
        other => serde_json::json!({"axiom": "structural", "detail": other.to_string()}),
    }
}
