//! On-disk formats: JSON for networks, appointments, stations and SCSP
//! problems; the text formats of `softcs_core` for networks and programs.

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;
use thiserror::Error;

use softcs_core::journey::{Appointment, ChargingStation};
use softcs_core::roadnet::{parse_network, Edge, NetworkError};
use softcs_core::semiring::{Cost, SemiringKind, Value};
use softcs_core::softcon::{ConstraintError, Domain, Name, SoftConstraint};
use softcs_core::{RoadNetwork, ScspProblem};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line} column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("at {path}: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C" itself
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

fn schema(path: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Schema {
        path: path.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub from: String,
    pub to: String,
    pub time: u64,
    pub energy: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    /// Optional; inferred from the edges when empty.
    #[serde(default)]
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

impl NetworkFile {
    pub fn from_network(net: &RoadNetwork) -> Self {
        NetworkFile {
            nodes: net.nodes().to_vec(),
            edges: net
                .edges()
                .map(|e| EdgeRecord {
                    from: e.from,
                    to: e.to,
                    time: e.time,
                    energy: e.energy,
                })
                .collect(),
        }
    }

    pub fn build(self) -> Result<RoadNetwork, FormatError> {
        let mut nodes = self.nodes;
        if nodes.is_empty() {
            nodes = self.edges.iter().flat_map(|e| [e.from.clone(), e.to.clone()]).collect();
            nodes.sort();
            nodes.dedup();
        }
        let edges = self
            .edges
            .into_iter()
            .map(|e| Edge::new(e.from, e.to, e.time, e.energy));
        Ok(RoadNetwork::new(nodes, edges)?)
    }
}

/// JSON when the text starts with `{`, otherwise `edge(p,q,[2,4]).` facts.
pub fn load_network(text: &str) -> Result<RoadNetwork, FormatError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str::<NetworkFile>(text)?.build()
    } else {
        Ok(parse_network(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AppointmentRecord {
    pub location: String,
    pub start: u64,
    pub duration: u64,
}

pub fn load_appointments(text: &str) -> Result<Vec<Appointment>, FormatError> {
    let records: Vec<AppointmentRecord> = serde_json::from_str(text)?;
    Ok(records
        .into_iter()
        .map(|a| Appointment::new(a.location, a.start, a.duration))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StationRecord {
    pub name: String,
    pub spots: u64,
    pub location: String,
}

pub fn load_stations(text: &str) -> Result<Vec<ChargingStation>, FormatError> {
    let records: Vec<StationRecord> = serde_json::from_str(text)?;
    let mut seen = std::collections::BTreeSet::new();
    for (i, s) in records.iter().enumerate() {
        if !seen.insert(&s.name) {
            return Err(schema(
                format!("[{i}].name"),
                format!("station `{}` is listed twice", s.name),
            ));
        }
    }
    Ok(records
        .into_iter()
        .map(|s| ChargingStation::new(s.name, s.spots, s.location))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowRecord {
    pub assign: Vec<String>,
    pub value: Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintRecord {
    pub support: Vec<String>,
    pub rows: Vec<RowRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScspFile {
    pub semiring: String,
    pub domain: Vec<String>,
    #[serde(default)]
    pub interface: Vec<String>,
    pub constraints: Vec<ConstraintRecord>,
}

impl ScspFile {
    pub fn build(self) -> Result<ScspProblem, FormatError> {
        let kind = SemiringKind::lookup(&self.semiring).map_err(|e| schema("semiring", e))?;
        let domain = Domain::new(self.domain).map_err(|e| schema("domain", e))?;
        let mut constraints = Vec::with_capacity(self.constraints.len());
        for (ci, c) in self.constraints.into_iter().enumerate() {
            let mut rows = Vec::with_capacity(c.rows.len());
            for (ri, row) in c.rows.into_iter().enumerate() {
                let value = value_from_json(kind, &row.value)
                    .map_err(|m| schema(format!("constraints[{ci}].rows[{ri}].value"), m))?;
                rows.push((row.assign, value));
            }
            let built = SoftConstraint::from_rows(kind, domain.clone(), c.support, rows)
                .map_err(|e: ConstraintError| schema(format!("constraints[{ci}]"), e))?;
            constraints.push(built);
        }
        Ok(ScspProblem::new(
            kind,
            domain,
            constraints,
            self.interface.into_iter().map(Name::new),
        ))
    }
}

pub fn load_scsp(text: &str) -> Result<ScspProblem, FormatError> {
    serde_json::from_str::<ScspFile>(text)?.build()
}

fn cost_json(c: Cost) -> Json {
    match c {
        Cost::Finite(n) => Json::from(n),
        Cost::Infinite => Json::from("inf"),
    }
}

/// Booleans stay booleans, finite weights are numbers, `+∞` is `"inf"`,
/// fuzzy levels are `"n/d"` strings (or integers), pairs are 2-arrays.
pub fn value_to_json(v: &Value) -> Json {
    match v {
        Value::Bool(b) => Json::Bool(*b),
        Value::Fuzzy(f) if f.denom() == 1 => Json::from(f.numer()),
        Value::Fuzzy(f) => Json::from(f.to_string()),
        Value::Weight(c) => cost_json(*c),
        Value::Pair(p) => Json::Array(vec![cost_json(p.time), cost_json(p.energy)]),
    }
}

fn scalar_text(j: &Json) -> Result<String, String> {
    match j {
        Json::String(s) => Ok(s.clone()),
        Json::Number(n) => Ok(n.to_string()),
        Json::Bool(b) => Ok(b.to_string()),
        other => Err(format!("expected a number or string, got {other}")),
    }
}

pub fn value_from_json(kind: SemiringKind, j: &Json) -> Result<Value, String> {
    let text = match j {
        Json::Array(items) => {
            let parts = items.iter().map(scalar_text).collect::<Result<Vec<_>, _>>()?;
            format!("[{}]", parts.join(","))
        }
        other => scalar_text(other)?,
    };
    kind.parse_value(&text).map_err(|e| e.to_string())
}
