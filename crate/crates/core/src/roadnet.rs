//! Road networks and trip-level optimization.
//!
//! Edges carry finite (time, energy) costs. A trip is a simple path: no node,
//! the endpoints included, appears twice. Trips are filtered by total energy
//! and then reduced to their non-dominated costs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use thiserror::Error;

use crate::frontier::{frontier_filter, CostFrontier, Dominance, Witness};
use crate::semiring::CostPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("node `{0}` is declared twice")]
    DuplicateNode(String),
    #[error("more than one edge from `{from}` to `{to}`")]
    DuplicateEdge { from: String, to: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub time: u64,
    pub energy: u64,
}

impl Edge {
    pub fn new(from: impl Into<String>, to: impl Into<String>, time: u64, energy: u64) -> Self {
        Edge {
            from: from.into(),
            to: to.into(),
            time,
            energy,
        }
    }

    pub fn cost(&self) -> CostPair {
        CostPair::new(self.time, self.energy)
    }
}

/// A node sequence. Ordered shortest first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Route(pub Vec<String>);

impl Route {
    pub fn nodes(&self) -> &[String] {
        &self.0
    }

    pub fn first(&self) -> Option<&str> {
        self.0.first().map(String::as_str)
    }

    pub fn last(&self) -> Option<&str> {
        self.0.last().map(String::as_str)
    }
}

impl Ord for Route {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Route {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Witness for Route {
    /// Concatenation; a shared junction node is kept once.
    fn join(&self, other: &Self) -> Self {
        let mut nodes = self.0.clone();
        let skip = usize::from(self.last().is_some() && self.last() == other.first());
        nodes.extend(other.0.iter().skip(skip).cloned());
        Route(nodes)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.as_slice().join(","))
    }
}

impl<S: Into<String>> FromIterator<S> for Route {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Route(iter.into_iter().map(Into::into).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripSolution {
    pub path: Route,
    pub cost: CostPair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoadNetwork {
    nodes: Vec<String>,
    index: BTreeMap<String, usize>,
    // outgoing edges per node, sorted by target
    adjacency: Vec<Vec<(usize, u64, u64)>>,
}

impl RoadNetwork {
    pub fn new<S: Into<String>>(
        nodes: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, NetworkError> {
        let mut names = BTreeSet::new();
        for n in nodes {
            let n = n.into();
            if !names.insert(n.clone()) {
                return Err(NetworkError::DuplicateNode(n));
            }
        }
        let nodes: Vec<String> = names.into_iter().collect();
        let index: BTreeMap<String, usize> = nodes.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut adjacency = alloc::vec![Vec::new(); nodes.len()];
        let mut seen = BTreeSet::new();
        for e in edges {
            let from = *index
                .get(&e.from)
                .ok_or_else(|| NetworkError::UnknownNode(e.from.clone()))?;
            let to = *index
                .get(&e.to)
                .ok_or_else(|| NetworkError::UnknownNode(e.to.clone()))?;
            if !seen.insert((from, to)) {
                return Err(NetworkError::DuplicateEdge { from: e.from, to: e.to });
            }
            adjacency[from].push((to, e.time, e.energy));
        }
        for out in &mut adjacency {
            out.sort_unstable();
        }
        Ok(RoadNetwork {
            nodes,
            index,
            adjacency,
        })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn contains(&self, node: &str) -> bool {
        self.index.contains_key(node)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency.iter().enumerate().flat_map(move |(from, out)| {
            out.iter().map(move |&(to, time, energy)| {
                Edge::new(self.nodes[from].clone(), self.nodes[to].clone(), time, energy)
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn edge(&self, from: &str, to: &str) -> Option<CostPair> {
        let (f, t) = (*self.index.get(from)?, *self.index.get(to)?);
        self.adjacency[f]
            .iter()
            .find(|(n, _, _)| *n == t)
            .map(|&(_, time, energy)| CostPair::new(time, energy))
    }

    fn node_index(&self, node: &str) -> Result<usize, NetworkError> {
        self.index
            .get(node)
            .copied()
            .ok_or_else(|| NetworkError::UnknownNode(node.to_string()))
    }

    /// Recomputes the cost of a node sequence, `None` if some hop has no edge.
    pub fn route_cost(&self, route: &Route) -> Option<CostPair> {
        route
            .0
            .windows(2)
            .try_fold(CostPair::ZERO, |acc, hop| Some(acc + self.edge(&hop[0], &hop[1])?))
    }

    /// Every simple path from `source` to `dest` with total energy at most
    /// `energy_limit`, sorted by route.
    pub fn enumerate_paths(
        &self,
        source: &str,
        dest: &str,
        energy_limit: u64,
    ) -> Result<Vec<TripSolution>, NetworkError> {
        let src = self.node_index(source)?;
        let dst = self.node_index(dest)?;
        let mut out = Vec::new();
        if src != dst {
            let mut visited = alloc::vec![false; self.nodes.len()];
            let mut stack = alloc::vec![src];
            visited[src] = true;
            self.extend_paths(dst, energy_limit, (0, 0), &mut stack, &mut visited, &mut out);
        }
        out.sort();
        Ok(out)
    }

    fn extend_paths(
        &self,
        dst: usize,
        limit: u64,
        (time, energy): (u64, u64),
        stack: &mut Vec<usize>,
        visited: &mut [bool],
        out: &mut Vec<TripSolution>,
    ) {
        let here = *stack.last().unwrap();
        for &(next, t, e) in &self.adjacency[here] {
            if visited[next] {
                continue;
            }
            // costs are non-negative, so an over-budget prefix stays over budget
            let Some(energy) = energy.checked_add(e).filter(|&e| e <= limit) else {
                continue;
            };
            let time = time.saturating_add(t);
            stack.push(next);
            if next == dst {
                out.push(TripSolution {
                    path: Route(stack.iter().map(|&i| self.nodes[i].clone()).collect()),
                    cost: CostPair::new(time, energy),
                });
            } else {
                visited[next] = true;
                self.extend_paths(dst, limit, (time, energy), stack, visited, out);
                visited[next] = false;
            }
            stack.pop();
        }
    }

    /// The non-dominated trips among [`RoadNetwork::enumerate_paths`].
    pub fn best_paths(
        &self,
        source: &str,
        dest: &str,
        energy_limit: u64,
        mode: Dominance,
    ) -> Result<CostFrontier<Route>, NetworkError> {
        let trips = self.enumerate_paths(source, dest, energy_limit)?;
        Ok(frontier_filter(
            trips.into_iter().map(|t| (t.path, t.cost)).collect(),
            mode,
        ))
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> NetworkError {
    NetworkError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_fact(fact: &str, line: usize) -> Result<(String, Vec<String>), NetworkError> {
    let open = fact
        .find('(')
        .ok_or_else(|| parse_error(line, format!("expected `name(...)`, got `{fact}`")))?;
    let inner = fact[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| parse_error(line, format!("unbalanced parentheses in `{fact}`")))?;
    let mut args = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            args.push(core::mem::take(&mut cur).trim().to_string());
        } else {
            cur.push(ch);
        }
    }
    args.push(cur.trim().to_string());
    Ok((fact[..open].trim().to_string(), args))
}

fn parse_node_name(s: &str, line: usize) -> Result<String, NetworkError> {
    if !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_') {
        Ok(s.to_string())
    } else {
        Err(parse_error(line, format!("malformed node name `{s}`")))
    }
}

fn parse_cost_list(s: &str, line: usize) -> Result<(u64, u64), NetworkError> {
    let bad = || parse_error(line, format!("expected `[time,energy]`, got `{s}`"));
    let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [t, e] => Ok((t.parse().map_err(|_| bad())?, e.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

/// Reads a network written as facts, several per line allowed:
///
/// ```text
/// edge(p,q,[2,4]).  edge(q,t,[2,4]).
/// node(z).
/// ```
///
/// Without any `node/1` fact the node set is the set of edge endpoints;
/// with at least one, every endpoint must be declared.
pub fn parse_network(text: &str) -> Result<RoadNetwork, NetworkError> {
    let mut declared: Vec<(String, usize)> = Vec::new();
    let mut edges: Vec<(Edge, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('%').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if !content.ends_with('.') {
            return Err(parse_error(line, "fact must end with `.`"));
        }
        for fact in content.split('.').map(str::trim).filter(|f| !f.is_empty()) {
            let (name, args) = parse_fact(fact, line)?;
            match (name.as_str(), args.as_slice()) {
                ("edge", [from, to, cost]) => {
                    let (time, energy) = parse_cost_list(cost, line)?;
                    edges.push((
                        Edge::new(parse_node_name(from, line)?, parse_node_name(to, line)?, time, energy),
                        line,
                    ));
                }
                ("node", [n]) => declared.push((parse_node_name(n, line)?, line)),
                ("edge", _) | ("node", _) => {
                    return Err(parse_error(line, format!("wrong number of arguments in `{fact}`")))
                }
                _ => return Err(parse_error(line, format!("unknown fact `{name}`"))),
            }
        }
    }

    let nodes: Vec<String> = if declared.is_empty() {
        let set: BTreeSet<&String> = edges.iter().flat_map(|(e, _)| [&e.from, &e.to]).collect();
        set.into_iter().cloned().collect()
    } else {
        let mut set = BTreeSet::new();
        for (n, line) in &declared {
            if !set.insert(n.clone()) {
                return Err(parse_error(*line, format!("node `{n}` is declared twice")));
            }
        }
        set.into_iter().collect()
    };
    let mut seen = BTreeSet::new();
    for (e, line) in &edges {
        for end in [&e.from, &e.to] {
            if nodes.binary_search(end).is_err() {
                return Err(parse_error(*line, format!("unknown node `{end}`")));
            }
        }
        if !seen.insert((&e.from, &e.to)) {
            return Err(parse_error(
                *line,
                format!("duplicate edge from `{}` to `{}`", e.from, e.to),
            ));
        }
    }
    RoadNetwork::new(nodes, edges.into_iter().map(|(e, _)| e))
}
