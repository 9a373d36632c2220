use std::collections::{BTreeMap, BTreeSet};

use softcs_core::frontier::Dominance;
use softcs_core::journey::{Appointment, ChargingPolicy, ChargingStation};
use softcs_core::sclp::{Literal, Program, Term};
use softcs_core::semiring::{CostPair, SemiringKind, Value};
use softcs_core::softcon::{Assignment, Name};
use softcs_core::{RoadNetwork, ScspProblem};

/// O(n²) pairwise filter: keep every item no input item dominates, drop
/// exact duplicates, sort by witness then cost.
pub fn dominance_filter<W: Ord + Clone>(items: &[(W, CostPair)], mode: Dominance) -> Vec<(W, CostPair)> {
    let dominated = |c: &CostPair| {
        items.iter().any(|(_, d)| match mode {
            Dominance::Strict => d.time < c.time && d.energy < c.energy,
            Dominance::Weak => d.time <= c.time && d.energy <= c.energy && d != c,
        })
    };
    let kept: BTreeSet<(W, CostPair)> = items.iter().filter(|(_, c)| !dominated(c)).cloned().collect();
    kept.into_iter().collect()
}

/// A path as plain data: node sequence, total time, total energy.
pub type PlainPath = (Vec<String>, u64, u64);

/// All simple paths by trying every ordered selection of intermediate nodes.
pub fn simple_paths(net: &RoadNetwork, from: &str, to: &str, energy_limit: u64) -> Vec<PlainPath> {
    let edges: BTreeMap<(String, String), (u64, u64)> =
        net.edges().map(|e| ((e.from, e.to), (e.time, e.energy))).collect();
    let others: Vec<String> = net.nodes().iter().filter(|n| *n != from && *n != to).cloned().collect();
    let mut out = Vec::new();
    if from == to {
        return out;
    }
    let mut chosen = Vec::new();
    let mut used = vec![false; others.len()];
    sequences(&others, &mut used, &mut chosen, &mut |middle| {
        let mut nodes = vec![from.to_string()];
        nodes.extend(middle.iter().cloned());
        nodes.push(to.to_string());
        let mut time = 0u64;
        let mut energy = 0u128;
        for hop in nodes.windows(2) {
            match edges.get(&(hop[0].clone(), hop[1].clone())) {
                Some(&(t, e)) => {
                    time += t;
                    energy += e as u128;
                }
                None => return,
            }
        }
        if energy <= energy_limit as u128 {
            out.push((nodes, time, energy as u64));
        }
    });
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

fn sequences(pool: &[String], used: &mut [bool], chosen: &mut Vec<String>, visit: &mut dyn FnMut(&[String])) {
    visit(chosen);
    for i in 0..pool.len() {
        if !used[i] {
            used[i] = true;
            chosen.push(pool[i].clone());
            sequences(pool, used, chosen, visit);
            chosen.pop();
            used[i] = false;
        }
    }
}

/// Every total assignment of `names` over `values`.
pub fn assignments(names: &[Name], values: &[String]) -> Vec<Vec<(Name, String)>> {
    let mut out: Vec<Vec<(Name, String)>> = vec![Vec::new()];
    for n in names {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut row = prefix.clone();
                    row.push((n.clone(), v.clone()));
                    row
                })
            })
            .collect()
    }
    out
}

/// `(interface assignment -> value, blevel)` by enumerating every total
/// assignment of every name in the problem.
pub fn scsp(problem: &ScspProblem) -> (BTreeMap<Vec<(Name, String)>, Value>, Value) {
    let kind = problem.kind;
    let mut names: BTreeSet<Name> = problem.interface.clone();
    for c in &problem.constraints {
        names.extend(c.declared_support().iter().cloned());
    }
    let names: Vec<Name> = names.into_iter().collect();
    let mut classes: BTreeMap<Vec<(Name, String)>, Value> = BTreeMap::new();
    let mut blevel = kind.zero();
    for row in assignments(&names, problem.domain.values()) {
        let eta: Assignment = row.iter().map(|(n, v)| (n.clone(), v.clone())).collect();
        let mut value = kind.one();
        for c in &problem.constraints {
            value = kind.times(&value, &c.eval(&eta).unwrap()).unwrap();
        }
        let key: Vec<(Name, String)> = row.into_iter().filter(|(n, _)| problem.interface.contains(n)).collect();
        let slot = classes.entry(key).or_insert_with(|| kind.zero());
        *slot = kind.plus(slot, &value).unwrap();
        blevel = kind.plus(&blevel, &value).unwrap();
    }
    (classes, blevel)
}

/// Classical least Herbrand model: atoms derivable using clauses whose
/// values are all `true`. Atoms are rendered as `pred(args)` strings.
pub fn derivable(program: &Program) -> BTreeSet<String> {
    assert_eq!(program.kind, SemiringKind::Csp);
    let mut known: BTreeSet<String> = BTreeSet::new();
    loop {
        let before = known.len();
        for clause in &program.clauses {
            if clause
                .body
                .iter()
                .any(|l| matches!(l, Literal::Value(Value::Bool(false))))
            {
                continue;
            }
            let mut vars: Vec<&str> = Vec::new();
            let all_terms = clause.head.args.iter().chain(clause.body.iter().flat_map(|l| match l {
                Literal::Atom(a) => a.args.iter().collect::<Vec<_>>(),
                Literal::Value(_) => Vec::new(),
            }));
            for t in all_terms {
                if let Term::Var(v) = t {
                    if !vars.contains(&v.as_str()) {
                        vars.push(v);
                    }
                }
            }
            for binding in bindings(&vars, &program.constants) {
                let show = |a: &softcs_core::sclp::Atom| render_atom(a, &binding);
                let body_ok = clause.body.iter().all(|l| match l {
                    Literal::Atom(a) => known.contains(&show(a)),
                    Literal::Value(_) => true,
                });
                if body_ok {
                    known.insert(show(&clause.head));
                }
            }
        }
        if known.len() == before {
            return known;
        }
    }
}

fn bindings<'a>(vars: &[&'a str], constants: &'a [String]) -> Vec<BTreeMap<&'a str, &'a str>> {
    let mut out = vec![BTreeMap::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|b| {
                constants.iter().map(move |c| {
                    let mut b = b.clone();
                    b.insert(*v, c.as_str());
                    b
                })
            })
            .collect();
    }
    out
}

fn render_atom(atom: &softcs_core::sclp::Atom, binding: &BTreeMap<&str, &str>) -> String {
    if atom.args.is_empty() {
        return atom.predicate.clone();
    }
    let args: Vec<&str> = atom
        .args
        .iter()
        .map(|t| match t {
            Term::Const(c) => c.as_str(),
            Term::Var(v) => binding[v.as_str()],
        })
        .collect();
    format!("{}({})", atom.predicate, args.join(","))
}

/// A journey as plain data: per-leg node sequences, per-leg station
/// choices, total cost, final SoC.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlainJourney {
    pub routes: Vec<Vec<String>>,
    pub stations: Vec<Option<String>>,
    pub time: u64,
    pub energy: u64,
    pub final_soc: u64,
}

/// Tries every tuple of (simple path, station-or-none) per leg and keeps the
/// tuples that satisfy the charging rules when replayed.
pub fn journeys(
    net: &RoadNetwork,
    appointments: &[Appointment],
    stations: &[ChargingStation],
    initial_soc: u64,
    policy: &ChargingPolicy,
) -> Vec<PlainJourney> {
    let legs = appointments.len() - 1;
    let options: Vec<Vec<PlainPath>> = (0..legs)
        .map(|i| simple_paths(net, &appointments[i].location, &appointments[i + 1].location, u64::MAX))
        .collect();
    let mut choices: Vec<Option<&ChargingStation>> = vec![None];
    choices.extend(stations.iter().map(Some));

    let mut out = Vec::new();
    let mut picks: Vec<(usize, usize)> = Vec::new();
    tuples(&options, choices.len(), &mut picks, &mut |picks| {
        let mut soc = initial_soc as u128;
        let th = policy.threshold as u128;
        let (mut time, mut energy) = (0u64, 0u64);
        for (leg, &(p, s)) in picks.iter().enumerate() {
            let here = &appointments[leg];
            let (_, t, e) = &options[leg][p];
            let direct_ok = options[leg].iter().any(|(_, _, e)| *e as u128 + th <= soc);
            match choices[s] {
                None => {
                    if !direct_ok {
                        return;
                    }
                }
                Some(st) => {
                    if direct_ok || st.location != here.location || st.spots == 0 {
                        return;
                    }
                    soc += policy.rate as u128 * here.duration as u128;
                    if let Some(cap) = policy.capacity {
                        soc = soc.min(cap as u128);
                    }
                }
            }
            if *e as u128 + th > soc {
                return;
            }
            if here.start as u128 + here.duration as u128 + *t as u128 > appointments[leg + 1].start as u128 {
                return;
            }
            soc -= *e as u128;
            time += t;
            energy += e;
        }
        out.push(PlainJourney {
            routes: picks
                .iter()
                .enumerate()
                .map(|(leg, &(p, _))| options[leg][p].0.clone())
                .collect(),
            stations: picks
                .iter()
                .map(|&(_, s)| choices[s].map(|st| st.name.clone()))
                .collect(),
            time,
            energy,
            final_soc: soc as u64,
        });
    });
    out.sort();
    out
}

/// (path index, station choice index) for one leg.
type Pick = (usize, usize);

fn tuples(options: &[Vec<PlainPath>], station_choices: usize, picks: &mut Vec<Pick>, visit: &mut dyn FnMut(&[Pick])) {
    if picks.len() == options.len() {
        visit(picks);
        return;
    }
    for p in 0..options[picks.len()].len() {
        for s in 0..station_choices {
            picks.push((p, s));
            tuples(options, station_choices, picks, visit);
            picks.pop();
        }
    }
}
