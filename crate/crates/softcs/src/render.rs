//! Text and JSON output. Every query produces a [`Report`]: text lines and a
//! JSON `results` array describing the same result set.

use serde_json::{json, Map, Value as Json};

use softcs_core::journey::JourneySolution;
use softcs_core::sclp::{Fixpoint, GroundAtom};
use softcs_core::semiring::{Cost, CostPair, Value};
use softcs_core::{Route, SoftConstraint};

use crate::formats::value_to_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    /// Echo of the query parameters.
    pub inputs: Map<String, Json>,
    pub results: Vec<Json>,
    /// Lines printed before the results in text mode.
    pub preamble: Vec<String>,
    pub lines: Vec<String>,
    /// Extra top-level JSON fields.
    pub extra: Map<String, Json>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for l in self.preamble.iter().chain(&self.lines) {
                    out.push_str(l);
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("inputs".into(), Json::Object(self.inputs.clone()));
                for (k, v) in &self.extra {
                    doc.insert(k.clone(), v.clone());
                }
                doc.insert("results".into(), Json::Array(self.results.clone()));
                let mut s = serde_json::to_string_pretty(&Json::Object(doc)).expect("JSON values always serialize");
                s.push('\n');
                s
            }
        }
    }
}

fn cost_text(c: Cost) -> String {
    c.to_string()
}

fn cost_json(c: Cost) -> Json {
    match c {
        Cost::Finite(n) => json!(n),
        Cost::Infinite => json!("inf"),
    }
}

pub fn trip_line(route: &Route, cost: &CostPair) -> String {
    format!(
        "{route} time={} energy={}",
        cost_text(cost.time),
        cost_text(cost.energy)
    )
}

pub fn trips<'a>(items: impl IntoIterator<Item = (&'a Route, &'a CostPair)>) -> (Vec<String>, Vec<Json>) {
    items
        .into_iter()
        .map(|(r, c)| {
            (
                trip_line(r, c),
                json!({ "path": r.nodes(), "time": cost_json(c.time), "energy": cost_json(c.energy) }),
            )
        })
        .unzip()
}

pub fn journey_line(j: &JourneySolution) -> String {
    let legs: Vec<String> = j.routes().map(|r| r.to_string()).collect();
    let events = j.charging_events();
    let charging = if events.is_empty() {
        "none".to_string()
    } else {
        events
            .iter()
            .map(|(loc, st)| format!("{loc}:{st}"))
            .collect::<Vec<_>>()
            .join(";")
    };
    format!(
        "{} time={} energy={} charging={} final_soc={}",
        legs.join(" | "),
        cost_text(j.cost.time),
        cost_text(j.cost.energy),
        charging,
        j.final_soc
    )
}

pub fn journey_json(j: &JourneySolution) -> Json {
    let legs: Vec<Json> = j
        .legs
        .iter()
        .map(|l| {
            json!({
                "path": l.trip.path.nodes(),
                "time": cost_json(l.trip.cost.time),
                "energy": cost_json(l.trip.cost.energy),
                "departure": l.departure,
                "arrival": l.arrival,
                "charged_at": l.charged_at,
                "soc_before": l.soc_before,
                "soc_at_departure": l.soc_at_departure,
                "soc_at_arrival": l.soc_at_arrival,
            })
        })
        .collect();
    let charging: Vec<Json> = j
        .charging_events()
        .into_iter()
        .map(|(location, station)| json!({ "location": location, "station": station }))
        .collect();
    json!({
        "legs": legs,
        "time": cost_json(j.cost.time),
        "energy": cost_json(j.cost.energy),
        "charging": charging,
        "final_soc": j.final_soc,
    })
}

pub fn journeys<'a>(items: impl IntoIterator<Item = &'a JourneySolution>) -> (Vec<String>, Vec<Json>) {
    items.into_iter().map(|j| (journey_line(j), journey_json(j))).unzip()
}

pub fn blevel_line(v: &Value) -> String {
    format!("blevel = {v}")
}

/// One line per row: `{x=red, y=blue} -> 4`.
pub fn solution(sol: &SoftConstraint) -> (Vec<String>, Vec<Json>) {
    let names = sol.declared_support();
    sol.rows()
        .map(|(assign, value)| {
            let pairs: Vec<String> = names.iter().zip(&assign).map(|(n, v)| format!("{n}={v}")).collect();
            let line = format!("{{{}}} -> {value}", pairs.join(", "));
            let obj = json!({ "assign": assign, "value": value_to_json(value) });
            (line, obj)
        })
        .unzip()
}

pub fn atom_values<'a>(items: impl IntoIterator<Item = (&'a GroundAtom, Value)>) -> (Vec<String>, Vec<Json>) {
    items
        .into_iter()
        .map(|(a, v)| {
            (
                format!("{a} = {v}"),
                json!({ "atom": a.to_string(), "value": value_to_json(&v) }),
            )
        })
        .unzip()
}

/// Column per iterate, row per atom.
pub fn trace_table(fix: &Fixpoint, atoms: &[GroundAtom]) -> Vec<String> {
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(atoms.len() + 1);
    let mut header = vec!["atom".to_string()];
    header.extend((0..fix.iterates.len()).map(|i| format!("I_{i}")));
    rows.push(header);
    for a in atoms {
        let mut row = vec![a.to_string()];
        row.extend(fix.iterates.iter().map(|it| it.get(a).to_string()));
        rows.push(row);
    }
    let columns = rows[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
            cells.join("  ").trim_end().to_string()
        })
        .collect()
}

pub fn trace_json(fix: &Fixpoint, atoms: &[GroundAtom]) -> Json {
    Json::Array(
        fix.iterates
            .iter()
            .map(|it| {
                let m: Map<String, Json> = atoms
                    .iter()
                    .map(|a| (a.to_string(), value_to_json(&it.get(a))))
                    .collect();
                Json::Object(m)
            })
            .collect(),
    )
}
