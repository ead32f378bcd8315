//! Wire value domains shared by netlists, trajectories, and reports.

use core::fmt;

use crate::time::Duration;

/// The alarm input domain of the trip sealed-in subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TripEnum {
    #[cfg_attr(feature = "serde", serde(rename = "e_Trip"))]
    Trip,
    #[cfg_attr(feature = "serde", serde(rename = "e_NotTrip"))]
    NotTrip,
}

/// Monitored pushbutton status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PbStatus {
    #[cfg_attr(feature = "serde", serde(rename = "e_Pressed"))]
    Pressed,
    #[cfg_attr(feature = "serde", serde(rename = "e_NotPressed"))]
    NotPressed,
}

/// Pushbutton subsystem output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PbOutput {
    #[cfg_attr(feature = "serde", serde(rename = "e_pbNotDebounced"))]
    NotDebounced,
    #[cfg_attr(feature = "serde", serde(rename = "e_pbDebounced"))]
    Debounced,
    #[cfg_attr(feature = "serde", serde(rename = "e_pbStuck"))]
    Stuck,
}

impl TripEnum {
    pub fn as_str(&self) -> &'static str {
        match self {
            TripEnum::Trip => "e_Trip",
            TripEnum::NotTrip => "e_NotTrip",
        }
    }
}

impl PbStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            PbStatus::Pressed => "e_Pressed",
            PbStatus::NotPressed => "e_NotPressed",
        }
    }
}

impl PbOutput {
    pub fn as_str(&self) -> &'static str {
        match self {
            PbOutput::NotDebounced => "e_pbNotDebounced",
            PbOutput::Debounced => "e_pbDebounced",
            PbOutput::Stuck => "e_pbStuck",
        }
    }
}

/// The type of a wire or port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Domain {
    Bool,
    Time,
    Trip,
    PbStatus,
    PbOutput,
}

impl Domain {
    pub fn as_str(&self) -> &'static str {
        match self {
            Domain::Bool => "bool",
            Domain::Time => "time",
            Domain::Trip => "trip",
            Domain::PbStatus => "pb_status",
            Domain::PbOutput => "pb_output",
        }
    }

    /// Number of values, for enumeration. `None` for the time domain.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            Domain::Bool | Domain::Trip | Domain::PbStatus => Some(2),
            Domain::PbOutput => Some(3),
            Domain::Time => None,
        }
    }

    /// The `k`-th value of a finite domain, in a fixed enumeration order.
    pub fn nth_value(&self, k: u64) -> Option<Value> {
        match (self, k) {
            (Domain::Bool, 0) => Some(Value::Bool(false)),
            (Domain::Bool, 1) => Some(Value::Bool(true)),
            (Domain::Trip, 0) => Some(Value::Trip(TripEnum::NotTrip)),
            (Domain::Trip, 1) => Some(Value::Trip(TripEnum::Trip)),
            (Domain::PbStatus, 0) => Some(Value::PbStatus(PbStatus::NotPressed)),
            (Domain::PbStatus, 1) => Some(Value::PbStatus(PbStatus::Pressed)),
            (Domain::PbOutput, 0) => Some(Value::PbOutput(PbOutput::NotDebounced)),
            (Domain::PbOutput, 1) => Some(Value::PbOutput(PbOutput::Debounced)),
            (Domain::PbOutput, 2) => Some(Value::PbOutput(PbOutput::Stuck)),
            _ => None,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single wire value at one tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Value {
    Bool(bool),
    Time(Duration),
    Trip(TripEnum),
    PbStatus(PbStatus),
    PbOutput(PbOutput),
}

impl Value {
    pub fn domain(&self) -> Domain {
        match self {
            Value::Bool(_) => Domain::Bool,
            Value::Time(_) => Domain::Time,
            Value::Trip(_) => Domain::Trip,
            Value::PbStatus(_) => Domain::PbStatus,
            Value::PbOutput(_) => Domain::PbOutput,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_time(&self) -> Option<Duration> {
        match self {
            Value::Time(d) => Some(*d),
            _ => None,
        }
    }

    pub fn as_pb_status(&self) -> Option<PbStatus> {
        match self {
            Value::PbStatus(s) => Some(*s),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Time(d) => write!(f, "{d}"),
            Value::Trip(v) => f.write_str(v.as_str()),
            Value::PbStatus(v) => f.write_str(v.as_str()),
            Value::PbOutput(v) => f.write_str(v.as_str()),
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<Duration> for Value {
    fn from(d: Duration) -> Self {
        Value::Time(d)
    }
}
