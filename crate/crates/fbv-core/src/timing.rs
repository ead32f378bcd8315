//! Sustained-timing operators.
//!
//! `held_for_exact` is the tick-level sustain predicate; wrapped in an
//! envelope it yields the nondeterministic must-hold / must-not-hold /
//! free verdicts induced by a duration with left and right tolerances.
//! `held_for_s` / `held_for_i` are the deterministic sampled refinements,
//! and `timer_s` / `timer_i` the saturating elapsed-time counters that
//! implement them.

use alloc::vec::Vec;
use core::fmt;

use crate::time::{Duration, SampleSchedule, Tick, TickDomain, Trajectory};

/// True iff there is a tick `tj <= t` with `(t - tj) * delta >= d` and `p`
/// holding at every tick in `[tj, t]`.
pub fn held_for_exact(
    p: &Trajectory<bool>,
    d: Duration,
    t: Tick,
    domain: &TickDomain,
) -> bool {
    if !p.at(t) {
        return false;
    }
    let mut start = t;
    while start > 0 && p.at(start - 1) {
        start -= 1;
    }
    domain.span(start, t) >= d.value()
}

/// What a sustained-timing requirement with tolerances demands of an
/// implementation at one tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeldForVerdict {
    /// The condition has sustained for at least `d + right_tol`: any
    /// implementation must detect.
    MustHold,
    /// The condition has not sustained for `d - left_tol`: no
    /// implementation may detect.
    MustNotHold,
    /// Inside the tolerance window; behavior unconstrained.
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimingError {
    /// Left tolerance larger than the duration would make the effective
    /// duration negative.
    ToleranceExceedsDuration { duration: u64, left_tol: u64 },
}

impl fmt::Display for TimingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimingError::ToleranceExceedsDuration { duration, left_tol } => write!(
                f,
                "left tolerance {left_tol} exceeds duration {duration}"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TimingError {}

/// A duration `d` with tolerances `(-left_tol, +right_tol)`. The verdicts
/// use the closed bounds induced by `held_for_exact`'s `>=`; no extra
/// epsilon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeldForEnvelope {
    duration: Duration,
    left_tol: Duration,
    right_tol: Duration,
}

impl HeldForEnvelope {
    pub fn new(
        duration: Duration,
        left_tol: Duration,
        right_tol: Duration,
    ) -> Result<Self, TimingError> {
        if left_tol > duration {
            return Err(TimingError::ToleranceExceedsDuration {
                duration: duration.value(),
                left_tol: left_tol.value(),
            });
        }
        Ok(HeldForEnvelope { duration, left_tol, right_tol })
    }

    pub fn lower(&self) -> Duration {
        self.duration.checked_sub(self.left_tol).unwrap()
    }

    pub fn upper(&self) -> Duration {
        self.duration + self.right_tol
    }

    pub fn verdict(
        &self,
        p: &Trajectory<bool>,
        t: Tick,
        domain: &TickDomain,
    ) -> HeldForVerdict {
        if held_for_exact(p, self.upper(), t, domain) {
            HeldForVerdict::MustHold
        } else if !held_for_exact(p, self.lower(), t, domain) {
            HeldForVerdict::MustNotHold
        } else {
            HeldForVerdict::Free
        }
    }
}

/// Sampled sustain: true iff some sample `n0 <= ne` spans at least `d` up
/// to sample `ne` with `p` true at every sample in between. Defined only at
/// samples; the in-between ticks are handled by [`held_for_i`].
pub fn held_for_s(
    p: &Trajectory<bool>,
    d: Duration,
    schedule: &SampleSchedule,
    ne: usize,
    domain: &TickDomain,
) -> bool {
    let samples = schedule.samples();
    if !p.at(samples[ne]) {
        return false;
    }
    // Max span is reached at the start of the run of true samples ending
    // at ne; the existential over n0 reduces to that run start.
    let mut run_start = ne;
    while run_start > 0 && p.at(samples[run_start - 1]) {
        run_start -= 1;
    }
    domain.span(samples[run_start], samples[ne]) >= d.value()
}

/// Totalization of [`held_for_s`]: the value at `t` is the one produced at
/// the closest left sample, so it is constant between consecutive samples.
pub fn held_for_i(
    p: &Trajectory<bool>,
    d: Duration,
    schedule: &SampleSchedule,
    t: Tick,
    domain: &TickDomain,
) -> bool {
    match schedule.left_sample(t) {
        Some(ne) => held_for_s(p, d, schedule, ne, domain),
        None => false,
    }
}

/// Saturating elapsed-time counter over samples:
/// `timer_s(0) = 0`; for `ne > 0` it resets to 0 when `p` is false at
/// sample `ne` or `ne - 1`, otherwise accumulates the sample gap, clamped
/// at `timeout`.
pub fn timer_s(
    p: &Trajectory<bool>,
    schedule: &SampleSchedule,
    timeout: Duration,
    ne: usize,
    domain: &TickDomain,
) -> Duration {
    let samples = schedule.samples();
    let mut acc = 0u64;
    for n in 1..=ne {
        if !p.at(samples[n]) || !p.at(samples[n - 1]) {
            acc = 0;
        } else {
            acc = timeout.value().min(acc + domain.span(samples[n - 1], samples[n]));
        }
    }
    Duration::from_raw(acc)
}

/// [`timer_s`] evaluated at the closest left sample, frozen between
/// samples.
pub fn timer_i(
    p: &Trajectory<bool>,
    schedule: &SampleSchedule,
    timeout: Duration,
    t: Tick,
    domain: &TickDomain,
) -> Duration {
    match schedule.left_sample(t) {
        Some(ne) => timer_s(p, schedule, timeout, ne, domain),
        None => Duration::ZERO,
    }
}

/// Full [`timer_i`] trajectory in one pass over the horizon.
pub fn timer_i_trajectory(
    p: &Trajectory<bool>,
    schedule: &SampleSchedule,
    timeout: Duration,
    domain: &TickDomain,
) -> Trajectory<Duration> {
    let samples = schedule.samples();
    let mut per_sample = Vec::with_capacity(samples.len());
    let mut acc = 0u64;
    for n in 0..samples.len() {
        if n > 0 {
            if !p.at(samples[n]) || !p.at(samples[n - 1]) {
                acc = 0;
            } else {
                acc = timeout.value().min(acc + domain.span(samples[n - 1], samples[n]));
            }
        }
        per_sample.push(acc);
    }
    Trajectory::from_fn(domain, |t| match schedule.left_sample(t) {
        Some(n) => Duration::from_raw(per_sample[n]),
        None => Duration::ZERO,
    })
}

/// Full [`held_for_i`] trajectory in one pass over the horizon.
pub fn held_for_i_trajectory(
    p: &Trajectory<bool>,
    d: Duration,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> Trajectory<bool> {
    let samples = schedule.samples();
    let mut per_sample = Vec::with_capacity(samples.len());
    let mut run_start = 0usize;
    for n in 0..samples.len() {
        if !p.at(samples[n]) {
            run_start = n + 1;
            per_sample.push(false);
        } else {
            per_sample.push(domain.span(samples[run_start], samples[n]) >= d.value());
        }
    }
    Trajectory::from_fn(domain, |t| match schedule.left_sample(t) {
        Some(n) => per_sample[n],
        None => false,
    })
}

#[cfg(test)]
mod test {
    use super::*;
    use alloc::vec;

    fn dom(delta: u64, horizon: Tick) -> TickDomain {
        TickDomain::new(delta, horizon).unwrap()
    }

    fn dur(n: u64, d: &TickDomain) -> Duration {
        Duration::of_ticks(n, d)
    }

    // Literal transcriptions of the definitions, kept independent of the
    // run-based implementations above.
    fn held_for_exact_brute(
        p: &Trajectory<bool>,
        d: Duration,
        t: Tick,
        domain: &TickDomain,
    ) -> bool {
        (0..=t).any(|tj| {
            domain.span(tj, t) >= d.value() && (tj..=t).all(|ti| p.at(ti))
        })
    }

    fn held_for_s_brute(
        p: &Trajectory<bool>,
        d: Duration,
        schedule: &SampleSchedule,
        ne: usize,
        domain: &TickDomain,
    ) -> bool {
        let s = schedule.samples();
        (0..=ne).any(|n0| {
            domain.span(s[n0], s[ne]) >= d.value()
                && (n0..=ne).all(|n| p.at(s[n]))
        })
    }

    // Oracle for the reconstructed timer recursion: saturated span from the
    // earliest sample n0 such that p holds at every sample in [n0, ne].
    fn timer_s_oracle(
        p: &Trajectory<bool>,
        schedule: &SampleSchedule,
        timeout: Duration,
        ne: usize,
        domain: &TickDomain,
    ) -> Duration {
        let s = schedule.samples();
        let n0 = (0..=ne)
            .find(|&n0| (n0..=ne).all(|n| p.at(s[n])))
            .unwrap_or(ne + 1);
        if n0 > ne {
            return Duration::ZERO;
        }
        Duration::from_raw(domain.span(s[n0], s[ne]).min(timeout.value()))
    }

    #[test]
    fn held_for_exact_examples() {
        let d = dom(1, 6);
        let all = Trajectory::constant(true, &d);
        assert!(held_for_exact(&all, dur(3, &d), 3, &d));

        let mid = Trajectory::from_changes(false, &[(2, true), (5, false)], &d).unwrap();
        // True only on ticks [2, 4]: no tj <= 1 can work.
        assert!(!held_for_exact(&mid, dur(3, &d), 4, &d));

        let none = Trajectory::constant(false, &d);
        for t in d.ticks() {
            assert!(!held_for_exact(&none, dur(1, &d), t, &d));
        }
    }

    #[test]
    fn held_for_exact_matches_brute_force() {
        let d = dom(2, 9);
        for bits in 0u32..1 << 10 {
            let p = Trajectory::from_fn(&d, |t| bits >> t & 1 == 1);
            for dd in 0..6 {
                for t in d.ticks() {
                    assert_eq!(
                        held_for_exact(&p, dur(dd, &d), t, &d),
                        held_for_exact_brute(&p, dur(dd, &d), t, &d)
                    );
                }
            }
        }
    }

    #[test]
    fn envelope_examples() {
        // d=300, tolerances 50/50, delta=50.
        let d = dom(50, 10);
        let env = HeldForEnvelope::new(
            Duration::new(300, &d).unwrap(),
            Duration::new(50, &d).unwrap(),
            Duration::new(50, &d).unwrap(),
        )
        .unwrap();

        // Held for 350 time units up to t=7 (true on ticks 0..=7).
        let p350 = Trajectory::from_changes(true, &[(8, false)], &d).unwrap();
        assert_eq!(env.verdict(&p350, 7, &d), HeldForVerdict::MustHold);

        // Held for 200 up to t=4 (true on ticks 0..=4).
        let p200 = Trajectory::from_changes(true, &[(5, false)], &d).unwrap();
        assert_eq!(env.verdict(&p200, 4, &d), HeldForVerdict::MustNotHold);

        // Held exactly 300 up to t=6.
        let p300 = Trajectory::from_changes(true, &[(7, false)], &d).unwrap();
        assert_eq!(env.verdict(&p300, 6, &d), HeldForVerdict::Free);
    }

    #[test]
    fn envelope_rejects_bad_tolerance() {
        let d = dom(1, 2);
        assert_eq!(
            HeldForEnvelope::new(dur(2, &d), dur(3, &d), dur(0, &d)),
            Err(TimingError::ToleranceExceedsDuration { duration: 2, left_tol: 3 })
        );
    }

    #[test]
    fn held_for_s_examples() {
        let d = dom(1, 8);
        let sched = SampleSchedule::from_gaps(&[2, 2, 2], dur(2, &d), dur(2, &d), &d).unwrap();

        let all = Trajectory::constant(true, &d);
        // n0 = 1 spans 4 ticks of delta.
        assert!(held_for_s(&all, dur(4, &d), &sched, 3, &d));

        // d = 0 at a true sample is satisfied by n0 = ne.
        let only_last = Trajectory::from_changes(false, &[(6, true)], &d).unwrap();
        assert!(held_for_s(&only_last, dur(0, &d), &sched, 3, &d));

        // p false at the sample: false even for d = 0.
        let none = Trajectory::constant(false, &d);
        assert!(!held_for_s(&none, dur(0, &d), &sched, 3, &d));
    }

    #[test]
    fn held_for_s_matches_brute_force() {
        let d = dom(1, 10);
        let sched =
            SampleSchedule::from_gaps(&[2, 3, 2, 3], dur(2, &d), dur(3, &d), &d).unwrap();
        for bits in 0u32..1 << 11 {
            let p = Trajectory::from_fn(&d, |t| bits >> t & 1 == 1);
            for dd in 0..7 {
                for ne in 0..sched.len() {
                    assert_eq!(
                        held_for_s(&p, dur(dd, &d), &sched, ne, &d),
                        held_for_s_brute(&p, dur(dd, &d), &sched, ne, &d)
                    );
                }
            }
        }
    }

    #[test]
    fn held_for_i_frozen_between_samples() {
        let d = dom(1, 9);
        let sched = SampleSchedule::from_gaps(&[3, 3, 3], dur(3, &d), dur(3, &d), &d).unwrap();
        let p = Trajectory::from_changes(true, &[(7, false)], &d).unwrap();
        for dd in 0..5 {
            for (n, &st) in sched.samples().iter().enumerate() {
                let at_sample = held_for_s(&p, dur(dd, &d), &sched, n, &d);
                let until = if n + 1 < sched.len() {
                    sched.samples()[n + 1] - 1
                } else {
                    d.horizon()
                };
                for t in st..=until {
                    assert_eq!(held_for_i(&p, dur(dd, &d), &sched, t, &d), at_sample);
                }
            }
        }
        // p true at all ticks: held at sample 2 once the span reaches it.
        let all = Trajectory::constant(true, &d);
        let span = Duration::new(d.time_of(sched.samples()[2]), &d).unwrap();
        assert!(held_for_i(&all, span, &sched, sched.samples()[2], &d));
    }

    #[test]
    fn timer_s_examples() {
        let d = dom(1, 6);
        let sched = SampleSchedule::from_gaps(&[2, 2, 2], dur(2, &d), dur(2, &d), &d).unwrap();
        // p false at sample 0, true at samples 1..3.
        let p = Trajectory::from_changes(false, &[(1, true)], &d).unwrap();
        let got: Vec<u64> = (0..4)
            .map(|ne| timer_s(&p, &sched, dur(10, &d), ne, &d).value())
            .collect();
        assert_eq!(got, vec![0, 0, 2, 4]);
        // Saturation at the timeout.
        assert_eq!(timer_s(&p, &sched, dur(3, &d), 3, &d).value(), 3);
        // Reset on disable.
        let off = Trajectory::from_changes(true, &[(6, false)], &d).unwrap();
        assert_eq!(timer_s(&off, &sched, dur(10, &d), 3, &d).value(), 0);
    }

    #[test]
    fn timer_s_matches_oracle() {
        let d = dom(1, 12);
        for gaps in [[2usize, 3, 2, 4].as_slice(), &[3, 3, 3], &[2, 2, 2, 2, 2]] {
            let sched =
                SampleSchedule::from_gaps(gaps, dur(2, &d), dur(4, &d), &d).unwrap();
            for bits in 0u32..1 << 13 {
                let p = Trajectory::from_fn(&d, |t| bits >> t & 1 == 1);
                for timeout in 0..6 {
                    for ne in 0..sched.len() {
                        assert_eq!(
                            timer_s(&p, &sched, dur(timeout, &d), ne, &d),
                            timer_s_oracle(&p, &sched, dur(timeout, &d), ne, &d),
                            "gaps {gaps:?} bits {bits:b} timeout {timeout} ne {ne}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn timer_i_examples() {
        let d = dom(1, 8);
        let sched = SampleSchedule::from_gaps(&[3, 3], dur(3, &d), dur(3, &d), &d).unwrap();
        let p = Trajectory::constant(true, &d);
        let timeout = dur(5, &d);
        for (n, &st) in sched.samples().iter().enumerate() {
            assert_eq!(
                timer_i(&p, &sched, timeout, st, &d),
                timer_s(&p, &sched, timeout, n, &d)
            );
        }
        // Frozen at the left sample between samples.
        assert_eq!(timer_i(&p, &sched, timeout, 4, &d), timer_i(&p, &sched, timeout, 3, &d));
        // timeout = 0 saturates at 0 everywhere.
        for t in d.ticks() {
            assert_eq!(timer_i(&p, &sched, dur(0, &d), t, &d), Duration::ZERO);
        }
    }

    #[test]
    fn timer_bounds_and_reset() {
        let d = dom(1, 10);
        let sched = SampleSchedule::from_gaps(&[2, 2, 2, 2, 2], dur(2, &d), dur(2, &d), &d)
            .unwrap();
        let timeout = dur(4, &d);
        for bits in 0u32..1 << 11 {
            let p = Trajectory::from_fn(&d, |t| bits >> t & 1 == 1);
            for ne in 0..sched.len() {
                let v = timer_s(&p, &sched, timeout, ne, &d);
                assert!(v <= timeout);
                if !p.at(sched.samples()[ne]) {
                    assert_eq!(v, Duration::ZERO);
                }
            }
        }
    }

    #[test]
    fn trajectory_helpers_agree_with_pointwise() {
        let d = dom(1, 11);
        let sched =
            SampleSchedule::from_gaps(&[2, 3, 4, 2], dur(2, &d), dur(4, &d), &d).unwrap();
        for bits in 0u32..1 << 12 {
            let p = Trajectory::from_fn(&d, |t| bits >> t & 1 == 1);
            for dd in 1..5 {
                let tt = timer_i_trajectory(&p, &sched, dur(dd, &d), &d);
                let ht = held_for_i_trajectory(&p, dur(dd, &d), &sched, &d);
                for t in d.ticks() {
                    assert_eq!(tt.at(t), timer_i(&p, &sched, dur(dd, &d), t, &d));
                    assert_eq!(ht.at(t), held_for_i(&p, dur(dd, &d), &sched, t, &d));
                }
            }
        }
    }

    #[test]
    fn sampled_sustain_implies_exact_on_filtered_inputs() {
        let d = dom(1, 10);
        let sched = SampleSchedule::from_gaps(&[2, 3, 3, 2], dur(2, &d), dur(3, &d), &d)
            .unwrap();
        for bits in 0u32..1 << 11 {
            let p = Trajectory::from_fn(&d, |t| bits >> t & 1 == 1);
            if crate::time::is_filtered(&p, &sched, &d).is_err() {
                continue;
            }
            for dd in 0..6 {
                for ne in 0..sched.len() {
                    if held_for_s(&p, dur(dd, &d), &sched, ne, &d) {
                        assert!(held_for_exact(&p, dur(dd, &d), sched.samples()[ne], &d));
                    }
                }
            }
        }
    }
}
