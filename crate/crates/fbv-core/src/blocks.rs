//! Basic IEC 61131-3 style blocks as executable transfer functions, plus
//! the tolerance-aware timers.
//!
//! The timers come in two forms: `ton` evaluates the tolerance-aware
//! requirements table (elapsed time counted by `timer_i` over a sample
//! schedule) and `ton_ideal` the idealized instantaneous-reaction table.
//! With every-tick sampling and zero tolerances the two coincide; the
//! bridge is checked exhaustively in the acceptance suite.

use core::fmt;

use crate::time::{Duration, SampleSchedule, Tick, TickDomain, Trajectory};
use crate::timing::timer_i_trajectory;

/// Stateless boolean gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "UPPERCASE"))]
pub enum GateKind {
    Not,
    Conj,
    Disj,
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::Not => 1,
            GateKind::Conj | GateKind::Disj => 2,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::Conj => "CONJ",
            GateKind::Disj => "DISJ",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArityError {
    pub kind: GateKind,
    pub got: usize,
}

impl fmt::Display for ArityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} expects {} inputs, got {}", self.kind.as_str(), self.kind.arity(), self.got)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ArityError {}

pub fn eval_gate(kind: GateKind, inputs: &[bool]) -> Result<bool, ArityError> {
    if inputs.len() != kind.arity() {
        return Err(ArityError { kind, got: inputs.len() });
    }
    Ok(match kind {
        GateKind::Not => !inputs[0],
        GateKind::Conj => inputs[0] && inputs[1],
        GateKind::Disj => inputs[0] || inputs[1],
    })
}

/// Reset-dominant latch: reset wins on conflict, otherwise set, otherwise
/// the previous output.
pub fn rs_latch(set: bool, reset: bool, prev_q: bool) -> bool {
    if reset {
        false
    } else if set {
        true
    } else {
        prev_q
    }
}

/// Two-way multiplexer, IEC SEL convention: `g = false` selects `in0`.
pub fn sel<T>(g: bool, in0: T, in1: T) -> T {
    if g {
        in1
    } else {
        in0
    }
}

/// Paired boolean and elapsed-time outputs of a timer block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimerIo {
    pub q: Trajectory<bool>,
    pub et: Trajectory<Duration>,
}

/// On-delay timer over a sample schedule. `pt` is the already
/// tolerance-adjusted preset (callers pass `PT - deltaL`).
///
/// With `d = timer_i(in, pt)`: `q = (d >= pt)`, and the elapsed-time rows
/// are conjoined with `IN` so the table is disjoint:
/// `et = d` while `IN` (saturated at `pt`), `0` otherwise.
pub fn ton(
    input: &Trajectory<bool>,
    pt: Duration,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> TimerIo {
    let d = timer_i_trajectory(input, schedule, pt, domain);
    let q = Trajectory::from_fn(domain, |t| d.at(t) >= pt);
    // d saturates at pt, so "pt if d >= pt else d" is just d.
    let et = Trajectory::from_fn(domain, |t| if input.at(t) { d.at(t) } else { Duration::ZERO });
    TimerIo { q, et }
}

/// Idealized on-delay timer: reacts instantaneously at every tick, with
/// `last_enabled` updated on each rising edge of the input.
pub fn ton_ideal(input: &Trajectory<bool>, pt: Duration, domain: &TickDomain) -> TimerIo {
    let mut last_enabled: Tick = 0;
    let mut q = alloc::vec::Vec::with_capacity(domain.horizon() + 1);
    let mut et = alloc::vec::Vec::with_capacity(domain.horizon() + 1);
    for t in domain.ticks() {
        let on = input.at(t);
        if on && (t == 0 || !input.at(t - 1)) {
            last_enabled = t;
        }
        if on {
            let d = domain.span(last_enabled, t);
            q.push(d >= pt.value());
            et.push(Duration::from_raw(d.min(pt.value())));
        } else {
            q.push(false);
            et.push(Duration::ZERO);
        }
    }
    TimerIo {
        q: Trajectory::new(q, domain).unwrap(),
        et: Trajectory::new(et, domain).unwrap(),
    }
}

/// Off-delay timer, constructed from `timer_i` over the negated input:
/// `q` stays true for `pt` after the input falls. Gated on a rise having
/// been observed at some sample, so a never-enabled input keeps `q` false.
///
/// Experimental: not exercised by the case studies.
pub fn tof(
    input: &Trajectory<bool>,
    pt: Duration,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> TimerIo {
    let low = input.map(|b| !b);
    let d_low = timer_i_trajectory(&low, schedule, pt, domain);
    // seen[n]: input observed true at some sample <= n.
    let samples = schedule.samples();
    let mut seen_per_sample = alloc::vec::Vec::with_capacity(samples.len());
    let mut seen = false;
    for &s in samples {
        seen |= input.at(s);
        seen_per_sample.push(seen);
    }
    let seen_at = |t: Tick| match schedule.left_sample(t) {
        Some(n) => seen_per_sample[n],
        None => false,
    };
    let q = Trajectory::from_fn(domain, |t| {
        input.at(t) || (seen_at(t) && d_low.at(t) < pt)
    });
    let et = Trajectory::from_fn(domain, |t| {
        if input.at(t) || !seen_at(t) {
            Duration::ZERO
        } else {
            d_low.at(t)
        }
    });
    TimerIo { q, et }
}

/// Pulse timer: a fixed-width pulse of `pt` on each sampled rising edge,
/// not retriggerable while a pulse is active. Outputs are latched between
/// samples.
///
/// Experimental: not exercised by the case studies.
pub fn tp(
    input: &Trajectory<bool>,
    pt: Duration,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> TimerIo {
    let mut state = TpState::new();
    let samples = schedule.samples();
    let mut cursor = 0usize;
    let mut q = alloc::vec::Vec::with_capacity(domain.horizon() + 1);
    let mut et = alloc::vec::Vec::with_capacity(domain.horizon() + 1);
    let mut latched = (false, Duration::ZERO);
    for t in domain.ticks() {
        if cursor < samples.len() && samples[cursor] == t {
            latched = state.step(domain.time_of(t), input.at(t), pt, cursor == 0);
            cursor += 1;
        }
        q.push(latched.0);
        et.push(latched.1);
    }
    TimerIo {
        q: Trajectory::new(q, domain).unwrap(),
        et: Trajectory::new(et, domain).unwrap(),
    }
}

/// Sample-driven pulse-timer state, shared with the netlist simulator.
#[derive(Debug, Clone)]
pub(crate) struct TpState {
    start: Option<u64>,
    /// Pulse fired and expired while the input stayed high; holds ET at pt.
    after: bool,
    prev_in: bool,
}

impl TpState {
    pub(crate) fn new() -> Self {
        TpState { start: None, after: false, prev_in: false }
    }

    pub(crate) fn step(
        &mut self,
        now: u64,
        input: bool,
        pt: Duration,
        first_sample: bool,
    ) -> (bool, Duration) {
        if let Some(s0) = self.start {
            if now - s0 >= pt.value() {
                self.start = None;
                self.after = true;
            }
        }
        if !input {
            self.after = false;
        }
        let rise = input && (first_sample || !self.prev_in);
        if self.start.is_none() && rise {
            self.start = Some(now);
            self.after = false;
            // Zero-width pulse never shows.
            if pt.is_zero() {
                self.start = None;
            }
        }
        self.prev_in = input;
        match self.start {
            Some(s0) => (true, Duration::from_raw((now - s0).min(pt.value()))),
            None => (false, if self.after && input { pt } else { Duration::ZERO }),
        }
    }
}

/// Kind selector for the two experimental timers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseTimerKind {
    OffDelay,
    Pulse,
}

pub fn tof_tp(
    kind: PulseTimerKind,
    input: &Trajectory<bool>,
    pt: Duration,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> TimerIo {
    match kind {
        PulseTimerKind::OffDelay => tof(input, pt, schedule, domain),
        PulseTimerKind::Pulse => tp(input, pt, schedule, domain),
    }
}
