//! Semiring-based soft constraints, their logic-programming counterpart and
//! a small electric-vehicle planning layer built on the same algebra.
//!
//! Everything here needs only `alloc`; IO and file formats live in the
//! `softcs` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod frontier;
pub mod journey;
pub mod roadnet;
pub mod sclp;
pub mod scsp;
pub mod semiring;
pub mod softcon;

pub use frontier::{CostFrontier, Dominance, Witness};
pub use journey::{Appointment, ChargingPolicy, ChargingStation, JourneySolution};
pub use roadnet::{RoadNetwork, Route, TripSolution};
pub use scsp::ScspProblem;
pub use semiring::{Cost, CostPair, Fuzzy, SemiringKind, Value};
pub use softcon::{Assignment, Domain, Name, Permutation, SoftConstraint};
