//! The physical-time tick domain, durations, trajectories, and sample
//! schedules.
//!
//! Time is exact integer arithmetic throughout: a tick domain fixes a
//! positive quantum `delta` and a finite horizon, the physical time of tick
//! `n` is `n * delta`, and every [`Duration`] used as a preset or tolerance
//! is an exact multiple of `delta`.

use alloc::vec::Vec;
use core::fmt;

/// A tick index into a [`TickDomain`]. Tick indices are already ranks since
/// the time of tick `n` is `n * delta`.
pub type Tick = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeError {
    /// `delta` must be a positive physical quantum.
    ZeroDelta,
    /// The horizon must cover at least one tick past the initial one.
    EmptyHorizon,
    /// `pre(0)` is undefined: the initial tick has no predecessor
    /// ("not_init" violated).
    PreOfInitialTick,
    /// `next(horizon)` leaves the modeled range.
    NextPastHorizon { horizon: Tick },
    /// Tick outside `0..=horizon`.
    OutOfRange { tick: Tick, horizon: Tick },
    /// A duration that is not an exact multiple of `delta`.
    NotMultipleOfDelta { value: u64, delta: u64 },
    /// A trajectory whose length does not match `horizon + 1`.
    LengthMismatch { len: usize, expected: usize },
    /// Change list out of order or beyond the horizon.
    BadChangeList { tick: Tick },
}

impl fmt::Display for TimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeError::ZeroDelta => write!(f, "delta must be positive"),
            TimeError::EmptyHorizon => write!(f, "horizon must be at least 1"),
            TimeError::PreOfInitialTick => write!(f, "pre(0): not_init violated"),
            TimeError::NextPastHorizon { horizon } => {
                write!(f, "next({horizon}) is past the horizon")
            }
            TimeError::OutOfRange { tick, horizon } => {
                write!(f, "tick {tick} outside 0..={horizon}")
            }
            TimeError::NotMultipleOfDelta { value, delta } => {
                write!(f, "duration {value} is not a multiple of delta {delta}")
            }
            TimeError::LengthMismatch { len, expected } => {
                write!(f, "trajectory of length {len}, expected {expected}")
            }
            TimeError::BadChangeList { tick } => {
                write!(f, "change at tick {tick} out of order or past horizon")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TimeError {}

/// A finite discrete-time universe: ticks `0..=horizon`, each `delta`
/// physical units apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TickDomain {
    delta: u64,
    horizon: Tick,
}

impl TickDomain {
    pub fn new(delta: u64, horizon: Tick) -> Result<Self, TimeError> {
        if delta == 0 {
            return Err(TimeError::ZeroDelta);
        }
        if horizon == 0 {
            return Err(TimeError::EmptyHorizon);
        }
        Ok(TickDomain { delta, horizon })
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn horizon(&self) -> Tick {
        self.horizon
    }

    pub fn ticks(&self) -> core::ops::RangeInclusive<Tick> {
        0..=self.horizon
    }

    pub fn contains(&self, t: Tick) -> bool {
        t <= self.horizon
    }

    /// Physical time of tick `t`.
    pub fn time_of(&self, t: Tick) -> u64 {
        t as u64 * self.delta
    }

    /// Physical span between two ticks, `from <= to`.
    pub fn span(&self, from: Tick, to: Tick) -> u64 {
        debug_assert!(from <= to);
        (to - from) as u64 * self.delta
    }

    pub fn is_init(&self, t: Tick) -> bool {
        t == 0
    }

    pub fn pre(&self, t: Tick) -> Result<Tick, TimeError> {
        if !self.contains(t) {
            return Err(TimeError::OutOfRange { tick: t, horizon: self.horizon });
        }
        if t == 0 {
            return Err(TimeError::PreOfInitialTick);
        }
        Ok(t - 1)
    }

    pub fn next(&self, t: Tick) -> Result<Tick, TimeError> {
        if !self.contains(t) {
            return Err(TimeError::OutOfRange { tick: t, horizon: self.horizon });
        }
        if t == self.horizon {
            return Err(TimeError::NextPastHorizon { horizon: self.horizon });
        }
        Ok(t + 1)
    }

    /// Rank of a tick; the induction measure. Equals the index itself.
    pub fn rank(&self, t: Tick) -> usize {
        t
    }

    /// Restrict the domain to a shorter horizon (used by the shrinker).
    pub fn truncated(&self, new_horizon: Tick) -> TickDomain {
        TickDomain { delta: self.delta, horizon: new_horizon.max(1) }
    }
}

/// A non-negative physical time quantity. Construction via [`Duration::new`]
/// checks that the value is an exact multiple of the domain's `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Duration(u64);

impl Duration {
    pub const ZERO: Duration = Duration(0);

    pub fn new(value: u64, domain: &TickDomain) -> Result<Self, TimeError> {
        if value % domain.delta != 0 {
            return Err(TimeError::NotMultipleOfDelta { value, delta: domain.delta });
        }
        Ok(Duration(value))
    }

    pub fn of_ticks(n: u64, domain: &TickDomain) -> Self {
        Duration(n * domain.delta)
    }

    /// Raw constructor. Callers are responsible for keeping the
    /// multiple-of-delta convention; prefer [`Duration::new`].
    pub const fn from_raw(value: u64) -> Self {
        Duration(value)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    pub fn ticks(&self, domain: &TickDomain) -> u64 {
        self.0 / domain.delta
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    pub fn checked_sub(&self, rhs: Duration) -> Option<Duration> {
        self.0.checked_sub(rhs.0).map(Duration)
    }
}

impl core::ops::Add for Duration {
    type Output = Duration;
    fn add(self, rhs: Duration) -> Duration {
        Duration(self.0 + rhs.0)
    }
}

impl fmt::Display for Duration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A total, immutable map from tick index to a value over a domain's
/// horizon. The universal signal representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Trajectory<T> {
    values: Vec<T>,
}

impl<T: Clone> Trajectory<T> {
    pub fn new(values: Vec<T>, domain: &TickDomain) -> Result<Self, TimeError> {
        let expected = domain.horizon() + 1;
        if values.len() != expected {
            return Err(TimeError::LengthMismatch { len: values.len(), expected });
        }
        Ok(Trajectory { values })
    }

    pub fn constant(value: T, domain: &TickDomain) -> Self {
        Trajectory { values: alloc::vec![value; domain.horizon() + 1] }
    }

    pub fn from_fn(domain: &TickDomain, mut f: impl FnMut(Tick) -> T) -> Self {
        Trajectory { values: domain.ticks().map(|t| f(t)).collect() }
    }

    /// Build from an initial value and a strictly increasing change list.
    pub fn from_changes(
        initial: T,
        changes: &[(Tick, T)],
        domain: &TickDomain,
    ) -> Result<Self, TimeError> {
        let mut values = Vec::with_capacity(domain.horizon() + 1);
        let mut current = initial;
        let mut next_change = 0usize;
        let mut last_tick: Option<Tick> = None;
        for &(t, _) in changes {
            if !domain.contains(t) || last_tick.is_some_and(|p| t <= p) {
                return Err(TimeError::BadChangeList { tick: t });
            }
            last_tick = Some(t);
        }
        for t in domain.ticks() {
            while next_change < changes.len() && changes[next_change].0 == t {
                current = changes[next_change].1.clone();
                next_change += 1;
            }
            values.push(current.clone());
        }
        Ok(Trajectory { values })
    }

    pub fn at(&self, t: Tick) -> T {
        self.values[t].clone()
    }

    pub fn get(&self, t: Tick) -> Option<&T> {
        self.values.get(t)
    }

    pub fn horizon(&self) -> Tick {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Trajectory<U> {
        Trajectory { values: self.values.iter().map(f).collect() }
    }

    pub fn truncated(&self, new_horizon: Tick) -> Trajectory<T> {
        Trajectory { values: self.values[..=new_horizon.min(self.horizon())].to_vec() }
    }

    /// Ticks at which the value differs from the previous tick.
    pub fn change_points(&self) -> Vec<Tick>
    where
        T: PartialEq,
    {
        (1..self.values.len()).filter(|&t| self.values[t] != self.values[t - 1]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleError {
    Empty,
    /// `samples[0]` must be tick 0 under the default policy.
    FirstSampleNotZero { got: Tick },
    /// Under the relaxed policy the first sample must still lie within Tmax.
    FirstSampleBeyondTmax { got: Tick },
    NotIncreasing { index: usize },
    /// Physical gap between consecutive samples outside `[tmin, tmax]`.
    GapOutOfBounds { index: usize, gap: u64 },
    SampleBeyondHorizon { sample: Tick },
    /// Requires `0 < tmin <= tmax`.
    BadBounds,
}

impl fmt::Display for ScheduleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleError::Empty => write!(f, "schedule has no samples"),
            ScheduleError::FirstSampleNotZero { got } => {
                write!(f, "first sample must be tick 0, got {got}")
            }
            ScheduleError::FirstSampleBeyondTmax { got } => {
                write!(f, "first sample {got} is later than Tmax")
            }
            ScheduleError::NotIncreasing { index } => {
                write!(f, "samples not strictly increasing at index {index}")
            }
            ScheduleError::GapOutOfBounds { index, gap } => {
                write!(f, "gap of {gap} before sample {index} outside [Tmin, Tmax]")
            }
            ScheduleError::SampleBeyondHorizon { sample } => {
                write!(f, "sample tick {sample} beyond the horizon")
            }
            ScheduleError::BadBounds => write!(f, "need 0 < Tmin <= Tmax"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ScheduleError {}

/// Where the first sample may fall. The default pins it to tick 0, which
/// makes [`SampleSchedule::left_sample`] total over the horizon; the relaxed
/// policy only requires it within `Tmax` of the start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FirstSamplePolicy {
    #[default]
    AtZero,
    WithinTmax,
}

/// A strictly increasing sequence of sample ticks with consecutive physical
/// gaps bounded by `[tmin, tmax]`: the software-domain clock.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SampleSchedule {
    samples: Vec<Tick>,
    tmin: Duration,
    tmax: Duration,
}

impl SampleSchedule {
    pub fn new(
        samples: Vec<Tick>,
        tmin: Duration,
        tmax: Duration,
        domain: &TickDomain,
    ) -> Result<Self, ScheduleError> {
        Self::with_policy(samples, tmin, tmax, domain, FirstSamplePolicy::AtZero)
    }

    pub fn with_policy(
        samples: Vec<Tick>,
        tmin: Duration,
        tmax: Duration,
        domain: &TickDomain,
        policy: FirstSamplePolicy,
    ) -> Result<Self, ScheduleError> {
        if samples.is_empty() {
            return Err(ScheduleError::Empty);
        }
        if tmin.is_zero() || tmin > tmax {
            return Err(ScheduleError::BadBounds);
        }
        match policy {
            FirstSamplePolicy::AtZero => {
                if samples[0] != 0 {
                    return Err(ScheduleError::FirstSampleNotZero { got: samples[0] });
                }
            }
            FirstSamplePolicy::WithinTmax => {
                if domain.time_of(samples[0]) > tmax.value() {
                    return Err(ScheduleError::FirstSampleBeyondTmax { got: samples[0] });
                }
            }
        }
        for i in 1..samples.len() {
            if samples[i] <= samples[i - 1] {
                return Err(ScheduleError::NotIncreasing { index: i });
            }
            let gap = domain.span(samples[i - 1], samples[i]);
            if gap < tmin.value() || gap > tmax.value() {
                return Err(ScheduleError::GapOutOfBounds { index: i, gap });
            }
        }
        let last = *samples.last().unwrap();
        if !domain.contains(last) {
            return Err(ScheduleError::SampleBeyondHorizon { sample: last });
        }
        Ok(SampleSchedule { samples, tmin, tmax })
    }

    /// A schedule that samples every tick (`tmin = tmax = delta`).
    pub fn every_tick(domain: &TickDomain) -> Self {
        let delta = Duration::of_ticks(1, domain);
        SampleSchedule { samples: domain.ticks().collect(), tmin: delta, tmax: delta }
    }

    /// Build from tick gaps starting at tick 0.
    pub fn from_gaps(
        gaps: &[usize],
        tmin: Duration,
        tmax: Duration,
        domain: &TickDomain,
    ) -> Result<Self, ScheduleError> {
        let mut samples = Vec::with_capacity(gaps.len() + 1);
        let mut t = 0;
        samples.push(t);
        for &g in gaps {
            t += g;
            samples.push(t);
        }
        Self::new(samples, tmin, tmax, domain)
    }

    pub fn samples(&self) -> &[Tick] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn tmin(&self) -> Duration {
        self.tmin
    }

    pub fn tmax(&self) -> Duration {
        self.tmax
    }

    pub fn tmax_ticks(&self, domain: &TickDomain) -> usize {
        self.tmax.ticks(domain) as usize
    }

    /// Index of the largest sample at or before `t`; `None` only when `t`
    /// precedes the first sample (impossible under the default policy).
    pub fn left_sample(&self, t: Tick) -> Option<usize> {
        if t < self.samples[0] {
            return None;
        }
        Some(match self.samples.binary_search(&t) {
            Ok(n) => n,
            Err(ins) => ins - 1,
        })
    }

    /// Drop samples past a shortened horizon (used by the shrinker).
    pub fn truncated(&self, new_horizon: Tick) -> SampleSchedule {
        let samples: Vec<Tick> =
            self.samples.iter().copied().take_while(|&s| s <= new_horizon).collect();
        SampleSchedule { samples, tmin: self.tmin, tmax: self.tmax }
    }
}

/// Checks the filtered-signal assumption: a signal may only change if the
/// new value persists for `Tmax` afterwards (clipped to the horizon), and it
/// may not change at all within the first `Tmax`.
///
/// On failure returns the first tick at which an unstable change takes
/// effect.
pub fn is_filtered<T: Clone + PartialEq>(
    p: &Trajectory<T>,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> Result<(), Tick> {
    let tmax_ticks = schedule.tmax_ticks(domain);
    let h = domain.horizon();
    for t in 0..=h {
        if t <= tmax_ticks && p.at(t) != p.at(0) {
            return Err(t);
        }
        if t < h && p.at(t) != p.at(t + 1) {
            let new = p.at(t + 1);
            let end = (t + tmax_ticks).min(h);
            for u in (t + 1)..=end {
                if p.at(u) != new {
                    return Err(t + 1);
                }
            }
        }
    }
    Ok(())
}
