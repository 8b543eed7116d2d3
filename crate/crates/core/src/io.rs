//! JSON file formats for groups, forms, character tables, fusion rings and
//! modular data.
//!
//! Writers go through `serde_json::Value`, whose maps are ordered, so equal
//! inputs always serialize to identical bytes.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cyclotomic::{Cyc, CycMatrix};
use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::groups::{AbelianGroup, CharacterTable, FiniteGroup, PreMetricGroup};
use crate::modular_data::ModularData;

fn parse_err(location: &str, e: impl std::fmt::Display) -> Error {
    Error::parse(location, e.to_string())
}

/// Parses a whole document, reporting line and column on syntax errors.
pub fn parse_document(text: &str, location: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(location, e))
}

pub fn read_document(path: &std::path::Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text, &path.display().to_string())
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn field<'a>(v: &'a Value, key: &str, location: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::parse(location, format!("missing key \"{key}\"")))
}

fn typed<T: for<'de> Deserialize<'de>>(v: &Value, location: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| parse_err(location, e))
}

// ---------------------------------------------------------------- groups

/// A group read from a file: either a product of cyclic groups or an
/// explicit multiplication table, optionally with a character table.
#[derive(Clone, Debug)]
pub enum GroupInput {
    Abelian(AbelianGroup),
    Table(FiniteGroup),
}

impl GroupInput {
    pub fn to_finite(&self) -> FiniteGroup {
        match self {
            GroupInput::Abelian(a) => FiniteGroup::abelian(a.orders()),
            GroupInput::Table(g) => g.clone(),
        }
    }
}

pub fn group_to_json(g: &GroupInput) -> Value {
    match g {
        GroupInput::Abelian(a) => json!({"kind": "abelian", "orders": a.orders()}),
        GroupInput::Table(t) => json!({"kind": "table", "table": t.table()}),
    }
}

pub fn group_from_json(v: &Value, location: &str) -> Result<GroupInput> {
    let kind: String = typed(field(v, "kind", location)?, &format!("{location}.kind"))?;
    match kind.as_str() {
        "abelian" => {
            let loc = format!("{location}.orders");
            let orders: Vec<u64> = typed(field(v, "orders", location)?, &loc)?;
            if orders.contains(&0) {
                return Err(Error::parse(loc, "cyclic orders must be positive"));
            }
            Ok(GroupInput::Abelian(AbelianGroup::new(orders)))
        }
        "table" => {
            let loc = format!("{location}.table");
            let table: Vec<Vec<usize>> = typed(field(v, "table", location)?, &loc)?;
            FiniteGroup::from_table(table)
                .map(GroupInput::Table)
                .map_err(|e| Error::parse(loc, e.to_string()))
        }
        other => Err(Error::parse(
            format!("{location}.kind"),
            format!("expected \"abelian\" or \"table\", got \"{other}\""),
        )),
    }
}

/// The optional `"character_table"` member of a group document, validated
/// against the group.
pub fn embedded_character_table(v: &Value, g: &FiniteGroup, location: &str) -> Result<Option<CharacterTable>> {
    let Some(t) = v.get("character_table") else {
        return Ok(None);
    };
    let loc = format!("{location}.character_table");
    let table = character_table_from_json(t, &loc)?;
    let report = table.validate(g);
    if let Some(p) = report.problems.first() {
        return Err(Error::parse(loc, p.clone()));
    }
    Ok(Some(table))
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    classes: Vec<Vec<usize>>,
    chars: Vec<Vec<Cyc>>,
}

pub fn character_table_to_json(t: &CharacterTable) -> Value {
    serde_json::to_value(TableJson {
        classes: t.classes.clone(),
        chars: t.chars.clone(),
    })
    .expect("values always serialize")
}

pub fn character_table_from_json(v: &Value, location: &str) -> Result<CharacterTable> {
    let raw: TableJson = typed(v, location)?;
    Ok(CharacterTable {
        classes: raw.classes,
        chars: raw.chars,
    })
}

// ---------------------------------------------------------------- forms

fn tuple_key(coords: &[u64]) -> String {
    let parts: Vec<String> = coords.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

fn parse_tuple(key: &str, location: &str) -> Result<Vec<u64>> {
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::parse(location, format!("element key \"{key}\" is not a tuple")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::parse(location, format!("bad coordinate in \"{key}\"")))
        })
        .collect()
}

fn parse_rational64(s: &str, location: &str) -> Result<Rational64> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: i64 = p.parse().map_err(|_| Error::parse(location, format!("bad rational \"{s}\"")))?;
    let q: i64 = q.parse().map_err(|_| Error::parse(location, format!("bad rational \"{s}\"")))?;
    if q == 0 {
        return Err(Error::parse(location, "zero denominator"));
    }
    Ok(Rational64::new(p, q))
}

fn format_rational64(r: Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn form_to_json(m: &PreMetricGroup) -> Value {
    let g = m.group();
    let q: Map<String, Value> = (0..m.size())
        .map(|x| (tuple_key(&g.decode(x)), Value::String(format_rational64(m.q(x)))))
        .collect();
    json!({"group": group_to_json(&GroupInput::Abelian(g.clone())), "q": q})
}

/// Reads `{"group": {"kind": "abelian", …}, "q": {"(i,j)": "p/q", …}}`; every
/// element needs a value.
pub fn form_from_json(v: &Value, location: &str) -> Result<PreMetricGroup> {
    let group = match group_from_json(field(v, "group", location)?, &format!("{location}.group"))? {
        GroupInput::Abelian(a) => a,
        GroupInput::Table(_) => {
            return Err(Error::parse(format!("{location}.group"), "a form needs an abelian group"))
        }
    };
    let qloc = format!("{location}.q");
    let entries = field(v, "q", location)?
        .as_object()
        .ok_or_else(|| Error::parse(&qloc, "expected an object keyed by element tuples"))?;
    let mut values: Vec<Option<Rational64>> = vec![None; group.size()];
    for (key, value) in entries {
        let loc = format!("{qloc}[\"{key}\"]");
        let coords = parse_tuple(key, &loc)?;
        if coords.len() != group.rank() || coords.iter().zip(group.orders()).any(|(c, n)| c >= n) {
            return Err(Error::parse(loc, "element outside the group"));
        }
        let text = value
            .as_str()
            .ok_or_else(|| Error::parse(&loc, "expected a \"p/q\" string"))?;
        let slot = &mut values[group.encode(&coords)];
        if slot.is_some() {
            return Err(Error::parse(loc, "duplicate element"));
        }
        *slot = Some(parse_rational64(text, &loc)?);
    }
    let q = values
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| Error::parse(&qloc, format!("no value for {}", tuple_key(&group.decode(x))))))
        .collect::<Result<Vec<_>>>()?;
    PreMetricGroup::new(group.orders().to_vec(), q).map_err(|e| Error::parse(qloc, e.to_string()))
}

// ---------------------------------------------------------------- rings and data

#[derive(Serialize, Deserialize)]
struct RingJson {
    rank: usize,
    dual: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<[u64; 4]>,
}

pub fn ring_to_json(r: &FusionRing) -> Value {
    let n = r
        .entries()
        .into_iter()
        .map(|(i, j, k, m)| [i as u64, j as u64, k as u64, m])
        .collect();
    serde_json::to_value(RingJson {
        rank: r.rank(),
        dual: r.duals().to_vec(),
        n,
    })
    .expect("values always serialize")
}

pub fn ring_from_json(v: &Value, location: &str) -> Result<FusionRing> {
    let raw: RingJson = typed(v, location)?;
    let entries: Vec<(usize, usize, usize, u64)> = raw
        .n
        .iter()
        .map(|e| (e[0] as usize, e[1] as usize, e[2] as usize, e[3]))
        .collect();
    let ring = FusionRing::new(raw.rank, raw.dual, &entries).map_err(|e| parse_err(location, e))?;
    if let Some(v) = ring.validate().violations.first() {
        return Err(Error::parse(location, format!("fusion ring axiom fails: {v}")));
    }
    Ok(ring)
}

#[derive(Serialize, Deserialize)]
struct DataJson {
    ring: Value,
    dims: Vec<Cyc>,
    #[serde(rename = "T")]
    t: Vec<Cyc>,
    #[serde(rename = "S")]
    s: Vec<Vec<Cyc>>,
}

pub fn modular_data_to_json(md: &ModularData) -> Value {
    serde_json::to_value(DataJson {
        ring: ring_to_json(md.ring()),
        dims: md.dims().to_vec(),
        t: md.twists().to_vec(),
        s: md.s().to_rows(),
    })
    .expect("values always serialize")
}

pub fn modular_data_from_json(v: &Value, location: &str) -> Result<ModularData> {
    let raw: DataJson = typed(v, location)?;
    let ring = ring_from_json(&raw.ring, &format!("{location}.ring"))?;
    let r = ring.rank();
    if raw.s.len() != r || raw.s.iter().any(|row| row.len() != r) {
        return Err(Error::parse(format!("{location}.S"), format!("expected a {r}×{r} matrix")));
    }
    ModularData::new(ring, raw.dims, raw.t, CycMatrix::from_rows(raw.s)).map_err(|e| parse_err(location, e))
}

/// A form document, or pointed modular data converted to its form.
pub fn form_or_pointed_from_json(v: &Value, location: &str) -> Result<PreMetricGroup> {
    if v.get("ring").is_some() {
        let md = modular_data_from_json(v, location)?;
        crate::condense_witt::form_from_pointed(&md).map_err(|e| parse_err(location, e))
    } else {
        form_from_json(v, location)
    }
}
