use rand::seq::SliceRandom;
use rand::Rng;

use softcs_core::journey::{Appointment, ChargingPolicy, ChargingStation};
use softcs_core::roadnet::Edge;
use softcs_core::sclp::{Atom, Clause, Literal, Program, Term};
use softcs_core::semiring::{Cost, CostPair, Fuzzy, SemiringKind, Value};
use softcs_core::softcon::{Domain, Name, Permutation, SoftConstraint};
use softcs_core::{RoadNetwork, ScspProblem};

pub const NAMES: [&str; 6] = ["u", "v", "w", "x", "y", "z"];

pub fn cost<R: Rng>(rng: &mut R) -> Cost {
    if rng.gen_ratio(1, 8) {
        Cost::Infinite
    } else {
        Cost::Finite(rng.gen_range(0..12))
    }
}

pub fn value<R: Rng>(rng: &mut R, kind: SemiringKind) -> Value {
    match kind {
        SemiringKind::Csp => Value::Bool(rng.gen()),
        SemiringKind::Fcsp => {
            let d = rng.gen_range(1..=6);
            Value::Fuzzy(Fuzzy::new(rng.gen_range(0..=d), d).unwrap())
        }
        SemiringKind::Wcsp => Value::Weight(cost(rng)),
        SemiringKind::CostPair => Value::Pair(CostPair {
            time: cost(rng),
            energy: cost(rng),
        }),
    }
}

/// Occasionally a huge weight, to exercise saturation.
pub fn value_with_extremes<R: Rng>(rng: &mut R, kind: SemiringKind) -> Value {
    match kind {
        SemiringKind::Wcsp if rng.gen_ratio(1, 6) => Value::Weight(Cost::Finite(u64::MAX - rng.gen_range(0..4))),
        _ => value(rng, kind),
    }
}

pub fn domain<R: Rng>(rng: &mut R, max: usize) -> Domain {
    let n = rng.gen_range(1..=max);
    Domain::new(["a", "b", "c", "d", "e"].into_iter().take(n)).unwrap()
}

pub fn name<R: Rng>(rng: &mut R, pool: usize) -> Name {
    Name::from(NAMES[rng.gen_range(0..pool)])
}

/// Random table over a random subset of the first `pool` names.
pub fn constraint<R: Rng>(
    rng: &mut R,
    kind: SemiringKind,
    domain: &Domain,
    pool: usize,
    max_arity: usize,
) -> SoftConstraint {
    let arity = rng.gen_range(0..=max_arity.min(pool));
    let mut names: Vec<&str> = NAMES[..pool].to_vec();
    names.shuffle(rng);
    names.truncate(arity);
    SoftConstraint::from_fn(kind, domain.clone(), names, |_| value(rng, kind)).unwrap()
}

/// A random permutation of the first `pool` names.
pub fn permutation<R: Rng>(rng: &mut R, pool: usize) -> Permutation {
    let mut image: Vec<&str> = NAMES[..pool].to_vec();
    image.shuffle(rng);
    Permutation::from_pairs(NAMES[..pool].iter().copied().zip(image)).unwrap()
}

pub fn scsp<R: Rng>(rng: &mut R, kind: SemiringKind) -> ScspProblem {
    let pool = rng.gen_range(1..=4);
    let domain = domain(rng, 3);
    let count = rng.gen_range(0..=4);
    let constraints = (0..count).map(|_| constraint(rng, kind, &domain, pool, 3)).collect();
    let interface: Vec<Name> = NAMES[..pool]
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .map(|n| Name::from(*n))
        .collect();
    ScspProblem::new(kind, domain, constraints, interface)
}

pub const NODES: [&str; 7] = ["n0", "n1", "n2", "n3", "n4", "n5", "n6"];

/// A digraph on `n` nodes. With `acyclic`, edges only go from lower to
/// higher index.
pub fn network<R: Rng>(rng: &mut R, n: usize, density: f64, acyclic: bool) -> RoadNetwork {
    let mut edges = Vec::new();
    for (i, &a) in NODES[..n].iter().enumerate() {
        for (j, &b) in NODES[..n].iter().enumerate() {
            if i == j || (acyclic && j < i) {
                continue;
            }
            if rng.gen_bool(density) {
                edges.push(Edge::new(a, b, rng.gen_range(0..6), rng.gen_range(0..6)));
            }
        }
    }
    RoadNetwork::new(NODES[..n].iter().copied(), edges).unwrap()
}

/// Labelled cost pairs; with `infinite`, about one coordinate in twenty is `inf`.
pub fn cost_pairs<R: Rng>(rng: &mut R, max_len: usize, span: u64, infinite: bool) -> Vec<(Vec<u32>, CostPair)> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let c = |rng: &mut R| {
                if infinite && rng.gen_ratio(1, 20) {
                    Cost::Infinite
                } else {
                    Cost::Finite(rng.gen_range(0..span))
                }
            };
            (
                vec![rng.gen_range(0..4)],
                CostPair {
                    time: c(rng),
                    energy: c(rng),
                },
            )
        })
        .collect()
}

const CONSTANTS: [&str; 3] = ["a", "b", "c"];
const PREDICATES: [(&str, usize); 4] = [("p", 1), ("q", 1), ("r", 2), ("s", 0)];

fn term<R: Rng>(rng: &mut R, constants: usize) -> Term {
    if rng.gen_bool(0.5) {
        Term::Var(["X", "Y"][rng.gen_range(0..2)].into())
    } else {
        Term::Const(CONSTANTS[rng.gen_range(0..constants)].into())
    }
}

fn atom<R: Rng>(rng: &mut R, constants: usize) -> Atom {
    let (p, arity) = PREDICATES[rng.gen_range(0..PREDICATES.len())];
    Atom::new(p, (0..arity).map(|_| term(rng, constants)).collect())
}

/// Up to `max_clauses` clauses over a small fixed signature, with values
/// sprinkled into bodies.
pub fn program<R: Rng>(rng: &mut R, kind: SemiringKind, max_clauses: usize) -> Program {
    let constants = rng.gen_range(1..=2);
    let count = rng.gen_range(1..=max_clauses);
    let clauses = (0..count)
        .map(|_| {
            let mut body = Vec::new();
            for _ in 0..rng.gen_range(0..=2) {
                body.push(Literal::Atom(atom(rng, constants)));
            }
            if body.is_empty() || rng.gen_bool(0.3) {
                body.push(Literal::Value(value(rng, kind)));
            }
            body.shuffle(rng);
            Clause {
                head: atom(rng, constants),
                body,
            }
        })
        .collect();
    Program {
        kind,
        constants: CONSTANTS[..constants].iter().map(|c| c.to_string()).collect(),
        clauses,
        goal: Vec::new(),
    }
}

pub struct JourneyInstance {
    pub network: RoadNetwork,
    pub appointments: Vec<Appointment>,
    pub stations: Vec<ChargingStation>,
    pub initial_soc: u64,
    pub policy: ChargingPolicy,
}

pub fn journey<R: Rng>(rng: &mut R, max_nodes: usize, max_appointments: usize) -> JourneyInstance {
    let n = rng.gen_range(2..=max_nodes);
    let network = network(rng, n, 0.7, false);
    let count = rng.gen_range(2..=max_appointments);
    let mut t = rng.gen_range(0..5);
    let mut appointments = Vec::new();
    let mut last: Option<usize> = None;
    for _ in 0..count {
        let mut loc = rng.gen_range(0..n);
        if last == Some(loc) && rng.gen_bool(0.9) {
            loc = (loc + 1) % n;
        }
        last = Some(loc);
        let duration = rng.gen_range(0..7);
        appointments.push(Appointment::new(NODES[loc], t, duration));
        t += duration + rng.gen_range(4..18);
    }
    // stations mostly sit where the appointments are
    let stations = (0..rng.gen_range(0..=4))
        .map(|i| {
            let location = if rng.gen_bool(0.75) {
                appointments[rng.gen_range(0..count)].location.clone()
            } else {
                NODES[rng.gen_range(0..n)].to_string()
            };
            ChargingStation::new(format!("cs{i}"), rng.gen_range(0..4), location)
        })
        .collect();
    let policy = ChargingPolicy {
        rate: rng.gen_range(1..=3),
        capacity: if rng.gen_bool(0.3) {
            Some(rng.gen_range(5..15))
        } else {
            None
        },
        threshold: if rng.gen_bool(0.3) { rng.gen_range(0..3) } else { 0 },
    };
    let mut initial_soc = policy.threshold + rng.gen_range(0..8);
    // half the time, start just short of the cheapest first leg
    let first = crate::oracle::simple_paths(&network, &appointments[0].location, &appointments[1].location, u64::MAX);
    if let Some(cheapest) = first.iter().map(|p| p.2).min() {
        if rng.gen_bool(0.5) {
            initial_soc = policy.threshold + cheapest.saturating_sub(rng.gen_range(1..=3));
        }
    }
    JourneyInstance {
        network,
        appointments,
        stations,
        initial_soc,
        policy,
    }
}
