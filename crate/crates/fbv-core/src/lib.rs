//! Core of a discrete-time function-block verification workbench.
//!
//! Physical time is a finite range of equally spaced clock ticks; software
//! observes it through a sparser sample schedule whose gaps are bounded by
//! `[Tmin, Tmax]`. On top of that sit the sustained-timing operators
//! (`held_for_*`, `timer_*`), executable IEC 61131-3 style function blocks
//! including tolerance-aware timers, FBD netlists with unit-delay feedback,
//! the two case-study subsystems, and a bounded-exhaustive verifier for
//! table healthiness, consistency, and correctness.
//!
//! The crate is `no_std` compatible (`alloc` required); IO, file formats,
//! and the CLI live in the companion `fbv-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod blocks;
pub mod netlist;
pub mod subsystems;
pub mod tables;
pub mod time;
pub mod timing;
pub mod value;
pub mod verify;

pub use time::{Duration, SampleSchedule, Tick, TickDomain, Trajectory};
pub use value::{Domain, PbOutput, PbStatus, TripEnum, Value};
