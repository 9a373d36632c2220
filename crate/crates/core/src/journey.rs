//! Journey-level optimization: a fixed sequence of timed appointments, one
//! trip per consecutive pair, with the state of charge (SoC) carried along.
//!
//! Per leg from appointment `i` (at `X`) to appointment `i+1` (at `Y`):
//!
//! * **no charge**: any simple path `X → Y` whose energy is at most
//!   `soc - threshold` and that arrives by the next start;
//! * **charge**: only when *no* path at all fits `soc - threshold` (time is
//!   not considered for this test). Any station at `X` with free spots is
//!   used during appointment `i`, the SoC becomes [`new_soc`], and then any
//!   path within the new budget that arrives in time.
//!
//! Departure is the end of appointment `i`; charging never delays it.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use crate::frontier::{frontier_filter, CostFrontier, Dominance, Witness};
use crate::roadnet::{NetworkError, RoadNetwork, Route, TripSolution};
use crate::semiring::CostPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JourneyError {
    #[error("a journey needs at least two appointments, got {0}")]
    TooFewAppointments(usize),
    #[error("appointment {index} is at unknown location `{location}`")]
    UnknownAppointmentLocation { index: usize, location: String },
    #[error("charging station `{name}` is at unknown location `{location}`")]
    UnknownStationLocation { name: String, location: String },
    #[error("charging rate must be positive")]
    ZeroRate,
    #[error("initial SoC {soc} is below the threshold {threshold}")]
    SocBelowThreshold { soc: u64, threshold: u64 },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Appointment {
    pub location: String,
    pub start: u64,
    pub duration: u64,
}

impl Appointment {
    pub fn new(location: impl Into<String>, start: u64, duration: u64) -> Self {
        Appointment {
            location: location.into(),
            start,
            duration,
        }
    }

    pub fn end(&self) -> u64 {
        self.start.saturating_add(self.duration)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargingStation {
    pub name: String,
    pub spots: u64,
    pub location: String,
}

impl ChargingStation {
    pub fn new(name: impl Into<String>, spots: u64, location: impl Into<String>) -> Self {
        ChargingStation {
            name: name.into(),
            spots,
            location: location.into(),
        }
    }
}

/// How charging changes the SoC, and the floor it must never cross.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChargingPolicy {
    /// Energy units gained per time unit of charging.
    pub rate: u64,
    /// Maximum SoC; `None` for unbounded.
    pub capacity: Option<u64>,
    /// Minimum SoC allowed at any point.
    pub threshold: u64,
}

impl Default for ChargingPolicy {
    fn default() -> Self {
        ChargingPolicy {
            rate: 1,
            capacity: None,
            threshold: 0,
        }
    }
}

/// Arrival time for a trip that departs when the appointment ends.
pub fn time_sum(appt_start: u64, appt_duration: u64, travel_time: u64) -> u64 {
    appt_start.saturating_add(appt_duration).saturating_add(travel_time)
}

/// SoC after charging through a whole appointment: `min(capacity, soc + rate·duration)`.
pub fn new_soc(soc: u64, appt_duration: u64, policy: &ChargingPolicy) -> u64 {
    let charged = soc.saturating_add(policy.rate.saturating_mul(appt_duration));
    policy.capacity.map_or(charged, |cap| charged.min(cap))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Leg {
    pub trip: TripSolution,
    pub departure: u64,
    pub arrival: u64,
    /// Station used during the departure appointment, if any.
    pub charged_at: Option<String>,
    /// SoC on reaching the departure appointment.
    pub soc_before: u64,
    /// SoC when leaving (after any charging).
    pub soc_at_departure: u64,
    pub soc_at_arrival: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JourneySolution {
    pub legs: Vec<Leg>,
    pub cost: CostPair,
    pub final_soc: u64,
}

impl JourneySolution {
    pub fn routes(&self) -> impl Iterator<Item = &Route> {
        self.legs.iter().map(|l| &l.trip.path)
    }

    /// `(location, station)` for every charging event, in leg order.
    pub fn charging_events(&self) -> Vec<(String, String)> {
        self.legs
            .iter()
            .filter_map(|l| {
                let station = l.charged_at.as_ref()?;
                Some((l.trip.path.first().unwrap_or_default().to_string(), station.clone()))
            })
            .collect()
    }

    /// Re-derives every recorded quantity from the inputs and reports the
    /// first inconsistency.
    pub fn check(
        &self,
        net: &RoadNetwork,
        appointments: &[Appointment],
        stations: &[ChargingStation],
        initial_soc: u64,
        policy: &ChargingPolicy,
    ) -> Result<(), String> {
        if self.legs.len() + 1 != appointments.len() {
            return Err("one leg per consecutive appointment pair".into());
        }
        let mut soc = initial_soc;
        let mut total = CostPair::ZERO;
        for (i, leg) in self.legs.iter().enumerate() {
            let (from, to) = (&appointments[i], &appointments[i + 1]);
            let path = &leg.trip.path;
            if path.first() != Some(from.location.as_str()) || path.last() != Some(to.location.as_str()) {
                return Err(alloc::format!("leg {i} does not connect the appointment locations"));
            }
            let mut sorted = path.nodes().to_vec();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != path.nodes().len() {
                return Err(alloc::format!("leg {i} repeats a node"));
            }
            if net.route_cost(path) != Some(leg.trip.cost) {
                return Err(alloc::format!("leg {i} cost does not match its edges"));
            }
            if leg.soc_before != soc {
                return Err(alloc::format!("leg {i} SoC trace broken"));
            }
            let no_charge_possible = !net
                .enumerate_paths(&from.location, &to.location, soc.saturating_sub(policy.threshold))
                .map_err(|e| e.to_string())?
                .is_empty();
            match &leg.charged_at {
                Some(name) => {
                    if no_charge_possible {
                        return Err(alloc::format!("leg {i} charges although a path was feasible"));
                    }
                    if !stations
                        .iter()
                        .any(|s| &s.name == name && s.location == from.location && s.spots > 0)
                    {
                        return Err(alloc::format!("leg {i} uses unavailable station `{name}`"));
                    }
                    soc = new_soc(soc, from.duration, policy);
                }
                None => {
                    if !no_charge_possible {
                        return Err(alloc::format!("leg {i} had no feasible path without charging"));
                    }
                }
            }
            if leg.soc_at_departure != soc {
                return Err(alloc::format!("leg {i} departure SoC mismatch"));
            }
            let energy = leg.trip.cost.energy.finite().ok_or("infinite energy")?;
            soc = soc
                .checked_sub(energy)
                .filter(|s| *s >= policy.threshold)
                .ok_or_else(|| alloc::format!("leg {i} drops below the threshold"))?;
            if leg.soc_at_arrival != soc {
                return Err(alloc::format!("leg {i} arrival SoC mismatch"));
            }
            let travel = leg.trip.cost.time.finite().ok_or("infinite time")?;
            if leg.departure != from.end() || leg.arrival != time_sum(from.start, from.duration, travel) {
                return Err(alloc::format!("leg {i} timing mismatch"));
            }
            if leg.arrival > to.start {
                return Err(alloc::format!("leg {i} arrives late"));
            }
            total = total + leg.trip.cost;
        }
        if total != self.cost {
            return Err("total cost is not the sum of the legs".into());
        }
        if soc != self.final_soc {
            return Err("final SoC mismatch".into());
        }
        Ok(())
    }

    fn stations(&self) -> impl Iterator<Item = Option<&str>> {
        self.legs.iter().map(|l| l.charged_at.as_deref())
    }
}

impl Ord for JourneySolution {
    /// By leg routes, then station names, then everything else.
    fn cmp(&self, other: &Self) -> Ordering {
        self.routes()
            .cmp(other.routes())
            .then_with(|| self.stations().cmp(other.stations()))
            .then_with(|| self.legs.cmp(&other.legs))
            .then_with(|| self.cost.cmp(&other.cost))
            .then_with(|| self.final_soc.cmp(&other.final_soc))
    }
}

impl PartialOrd for JourneySolution {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Witness for JourneySolution {
    /// Sequential composition: `other`'s legs follow `self`'s.
    fn join(&self, other: &Self) -> Self {
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        JourneySolution {
            legs,
            cost: self.cost + other.cost,
            final_soc: other.final_soc,
        }
    }
}

struct Planner<'a> {
    net: &'a RoadNetwork,
    appointments: &'a [Appointment],
    // stations with free spots, per location, sorted by name
    stations: BTreeMap<&'a str, Vec<&'a str>>,
    policy: ChargingPolicy,
    paths: BTreeMap<(usize, u64), Vec<TripSolution>>,
}

impl Planner<'_> {
    fn paths(&mut self, leg: usize, budget: u64) -> Result<Vec<TripSolution>, NetworkError> {
        if let Some(p) = self.paths.get(&(leg, budget)) {
            return Ok(p.clone());
        }
        let from = &self.appointments[leg].location;
        let to = &self.appointments[leg + 1].location;
        let found = self.net.enumerate_paths(from, to, budget)?;
        self.paths.insert((leg, budget), found.clone());
        Ok(found)
    }

    fn extend(
        &mut self,
        leg: usize,
        soc: u64,
        legs: &mut Vec<Leg>,
        out: &mut Vec<JourneySolution>,
    ) -> Result<(), NetworkError> {
        if leg + 1 == self.appointments.len() {
            let cost = legs.iter().fold(CostPair::ZERO, |acc, l| acc + l.trip.cost);
            out.push(JourneySolution {
                legs: legs.clone(),
                cost,
                final_soc: soc,
            });
            return Ok(());
        }
        let here = &self.appointments[leg];
        let next_start = self.appointments[leg + 1].start;
        let threshold = self.policy.threshold;

        let direct = self.paths(leg, soc - threshold)?;
        let options: Vec<(Option<&str>, u64, Vec<TripSolution>)> = if !direct.is_empty() {
            alloc::vec![(None, soc, direct)]
        } else {
            let charged = new_soc(soc, here.duration, &self.policy);
            let mut opts = Vec::new();
            if let Some(budget) = charged.checked_sub(threshold) {
                let trips = self.paths(leg, budget)?;
                for station in self.stations.get(here.location.as_str()).into_iter().flatten() {
                    opts.push((Some(*station), charged, trips.clone()));
                }
            }
            opts
        };

        for (station, soc_out, trips) in options {
            for trip in trips {
                let (Some(travel), Some(energy)) = (trip.cost.time.finite(), trip.cost.energy.finite()) else {
                    continue;
                };
                let arrival = time_sum(here.start, here.duration, travel);
                if arrival > next_start {
                    continue;
                }
                let soc_at_arrival = soc_out - energy;
                legs.push(Leg {
                    trip,
                    departure: here.end(),
                    arrival,
                    charged_at: station.map(str::to_string),
                    soc_before: soc,
                    soc_at_departure: soc_out,
                    soc_at_arrival,
                });
                self.extend(leg + 1, soc_at_arrival, legs, out)?;
                legs.pop();
            }
        }
        Ok(())
    }
}

fn validate(
    net: &RoadNetwork,
    appointments: &[Appointment],
    stations: &[ChargingStation],
    initial_soc: u64,
    policy: &ChargingPolicy,
) -> Result<(), JourneyError> {
    if appointments.len() < 2 {
        return Err(JourneyError::TooFewAppointments(appointments.len()));
    }
    for (index, a) in appointments.iter().enumerate() {
        if !net.contains(&a.location) {
            return Err(JourneyError::UnknownAppointmentLocation {
                index,
                location: a.location.clone(),
            });
        }
    }
    for s in stations {
        if !net.contains(&s.location) {
            return Err(JourneyError::UnknownStationLocation {
                name: s.name.clone(),
                location: s.location.clone(),
            });
        }
    }
    if policy.rate == 0 {
        return Err(JourneyError::ZeroRate);
    }
    if initial_soc < policy.threshold {
        return Err(JourneyError::SocBelowThreshold {
            soc: initial_soc,
            threshold: policy.threshold,
        });
    }
    Ok(())
}

/// Every feasible journey through `appointments` in the given order, sorted
/// by leg routes and then station names.
pub fn enumerate_journeys(
    net: &RoadNetwork,
    appointments: &[Appointment],
    stations: &[ChargingStation],
    initial_soc: u64,
    policy: &ChargingPolicy,
) -> Result<Vec<JourneySolution>, JourneyError> {
    validate(net, appointments, stations, initial_soc, policy)?;
    let mut by_location: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for s in stations.iter().filter(|s| s.spots > 0) {
        by_location
            .entry(s.location.as_str())
            .or_default()
            .push(s.name.as_str());
    }
    for names in by_location.values_mut() {
        names.sort_unstable();
        names.dedup();
    }
    let mut planner = Planner {
        net,
        appointments,
        stations: by_location,
        policy: *policy,
        paths: BTreeMap::new(),
    };
    let mut out = Vec::new();
    planner.extend(0, initial_soc, &mut Vec::new(), &mut out)?;
    out.sort();
    Ok(out)
}

/// The non-dominated journeys by total (time, energy).
pub fn best_journeys(
    net: &RoadNetwork,
    appointments: &[Appointment],
    stations: &[ChargingStation],
    initial_soc: u64,
    policy: &ChargingPolicy,
    mode: Dominance,
) -> Result<CostFrontier<JourneySolution>, JourneyError> {
    let all = enumerate_journeys(net, appointments, stations, initial_soc, policy)?;
    Ok(frontier_filter(
        all.into_iter()
            .map(|j| {
                let c = j.cost;
                (j, c)
            })
            .collect(),
        mode,
    ))
}
