//! Exhaustive bounded verification: indexable enumeration of input spaces,
//! table-healthiness checks, consistency and correctness checks against
//! executable requirements, counterexample shrinking, and an inductive
//! cross-check for networks with feedback.
//!
//! Enumeration is indexable (mixed-radix decode of a case index) so results
//! are deterministic and a case range can be split across workers. If a
//! space exceeds its cardinality cap the checker refuses rather than
//! silently sampling.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::netlist::{EvalFault, EvalFaultKind, Netlist, SimError};
use crate::subsystems::{
    abst_parm_trip, pushbutton_conditions, pushbutton_netlist, pushbutton_req,
    trip_sealedin_original, trip_sealedin_req, trip_sealedin_revised, trip_sealedin_step,
    PushbuttonConsts, SealedInConsts,
};
use crate::tables::{pushbutton_revised_table, TableFaultKind, TableSpec};
use crate::time::{is_filtered, Duration, SampleSchedule, Tick, TickDomain, Trajectory};
use crate::timing::{held_for_i, HeldForEnvelope, HeldForVerdict};
use crate::value::{Domain, TripEnum, Value};

pub use crate::timing::HeldForVerdict as Verdict;

/// Default refusal threshold for exhaustive enumeration.
pub const DEFAULT_CASE_CAP: u64 = 1 << 22;

/// How an input variable is allowed to vary over the horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Discipline {
    /// Changes only at sample ticks; one digit per sample.
    SampleAligned,
    /// Changes anywhere; one digit per tick.
    FreePerTick,
    /// One digit per tick, but cases failing the filtered-signal
    /// assumption are enumerated and skipped.
    Filtered,
}

#[derive(Debug, Clone)]
pub struct InputVar {
    pub name: String,
    pub domain: Domain,
    pub discipline: Discipline,
}

impl InputVar {
    pub fn new(name: &str, domain: Domain, discipline: Discipline) -> Self {
        InputVar { name: String::from(name), domain, discipline }
    }
}

/// A finite space of input valuations: a tick domain, one or more sample
/// schedules, and a variable list.
#[derive(Debug, Clone)]
pub struct InputSpace {
    pub domain: TickDomain,
    pub schedules: Vec<SampleSchedule>,
    pub vars: Vec<InputVar>,
    pub cap: u64,
}

/// The enumerated input trajectories of one case.
pub type CaseInputs = BTreeMap<String, Trajectory<Value>>;

#[derive(Debug, Clone)]
pub struct Case {
    pub index: u64,
    pub schedule_index: usize,
    pub inputs: CaseInputs,
    /// False when a `Filtered` variable failed the filter check; such
    /// cases count as enumerated but are not checked.
    pub admissible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckError {
    /// The space is too large; refusal is preferred over silent sampling.
    CardinalityExceeded { count: u64, cap: u64 },
    /// A simulation failed for a structural reason (not an evaluation
    /// fault); indicates a broken model.
    Sim { case_index: u64, message: String },
}

impl core::fmt::Display for CheckError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CheckError::CardinalityExceeded { count, cap } => {
                write!(f, "{count} cases exceed the cap of {cap}; refusing to sample")
            }
            CheckError::Sim { case_index, message } => {
                write!(f, "case {case_index}: {message}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CheckError {}

impl InputSpace {
    fn positions(&self, var: &InputVar, schedule: &SampleSchedule) -> usize {
        match var.discipline {
            Discipline::SampleAligned => schedule.len(),
            Discipline::FreePerTick | Discipline::Filtered => self.domain.horizon() + 1,
        }
    }

    pub fn schedule_case_count(&self, schedule_index: usize) -> u64 {
        let schedule = &self.schedules[schedule_index];
        let mut total = 1u64;
        for var in &self.vars {
            let card = var.domain.cardinality().expect("enumerable domain");
            for _ in 0..self.positions(var, schedule) {
                total = total.saturating_mul(card);
            }
        }
        total
    }

    pub fn case_count(&self) -> u64 {
        (0..self.schedules.len())
            .map(|si| self.schedule_case_count(si))
            .fold(0u64, u64::saturating_add)
    }

    pub fn check_cap(&self) -> Result<u64, CheckError> {
        let count = self.case_count();
        if count > self.cap {
            return Err(CheckError::CardinalityExceeded { count, cap: self.cap });
        }
        Ok(count)
    }

    pub fn case(&self, index: u64) -> Option<Case> {
        let mut local = index;
        for si in 0..self.schedules.len() {
            let n = self.schedule_case_count(si);
            if local < n {
                return Some(self.decode(index, si, local));
            }
            local -= n;
        }
        None
    }

    fn decode(&self, index: u64, schedule_index: usize, mut rem: u64) -> Case {
        let schedule = &self.schedules[schedule_index];
        let mut inputs = CaseInputs::new();
        let mut admissible = true;
        for var in &self.vars {
            let card = var.domain.cardinality().expect("enumerable domain");
            let positions = self.positions(var, schedule);
            let mut digits = Vec::with_capacity(positions);
            for _ in 0..positions {
                digits.push(rem % card);
                rem /= card;
            }
            let traj = match var.discipline {
                Discipline::SampleAligned => Trajectory::from_fn(&self.domain, |t| {
                    let n = schedule.left_sample(t).unwrap_or(0);
                    var.domain.nth_value(digits[n]).unwrap()
                }),
                Discipline::FreePerTick | Discipline::Filtered => {
                    Trajectory::from_fn(&self.domain, |t| {
                        var.domain.nth_value(digits[t]).unwrap()
                    })
                }
            };
            if var.discipline == Discipline::Filtered
                && is_filtered(&traj, schedule, &self.domain).is_err()
            {
                admissible = false;
            }
            inputs.insert(var.name.clone(), traj);
        }
        Case { index, schedule_index, inputs, admissible }
    }

    pub fn cases(&self) -> impl Iterator<Item = Case> + '_ {
        (0..self.case_count()).map(move |i| self.case(i).unwrap())
    }
}

/// A verification subject: a network together with the adapter from
/// enumerated inputs to wires and the executable requirement it must match.
pub trait CorrectnessModel {
    fn name(&self) -> &str;
    fn netlist(&self) -> &Netlist;
    /// Adapt enumerated case inputs to the network's input wires (e.g.
    /// apply an abstraction function).
    fn netlist_inputs(&self, inputs: &CaseInputs) -> CaseInputs;
    fn output_wire(&self) -> &str;
    fn expected(
        &self,
        inputs: &CaseInputs,
        schedule: &SampleSchedule,
        domain: &TickDomain,
    ) -> Trajectory<Value>;
}

/// A model whose requirement is defined by a base value and a step
/// function of the previous output, enabling an inductive cross-check that
/// consumes the implementation's own previous output instead of a fully
/// unrolled expected trajectory.
pub trait InductiveModel: CorrectnessModel {
    fn base(&self, inputs: &CaseInputs, schedule: &SampleSchedule, domain: &TickDomain) -> Value;
    fn step(
        &self,
        inputs: &CaseInputs,
        schedule: &SampleSchedule,
        domain: &TickDomain,
        t: Tick,
        prev: &Value,
    ) -> Value;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceCategory {
    /// Wrong at tick 0.
    Init,
    TableGap,
    TableOverlap,
    /// Divergence between samples: points at sustained-timing handling.
    SustainedTiming,
    Other,
}

impl DivergenceCategory {
    pub fn as_str(&self) -> &'static str {
        match self {
            DivergenceCategory::Init => "init",
            DivergenceCategory::TableGap => "table-gap",
            DivergenceCategory::TableOverlap => "table-overlap",
            DivergenceCategory::SustainedTiming => "sustained-timing",
            DivergenceCategory::Other => "other",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub case_index: u64,
    pub schedule_index: usize,
    pub inputs: CaseInputs,
    pub tick: Tick,
    pub expected: Option<Value>,
    pub actual: Option<Value>,
    pub category: DivergenceCategory,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub enumerated: u64,
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Merge reports from disjoint case ranges; the counterexample with
    /// the smallest case index wins, keeping results deterministic under
    /// parallel execution.
    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.enumerated += other.enumerated;
        self.checked += other.checked;
        self.counterexample = match (self.counterexample.take(), other.counterexample) {
            (None, c) | (c, None) => c,
            (Some(a), Some(b)) => Some(if a.case_index <= b.case_index { a } else { b }),
        };
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Divergence {
    tick: Tick,
    expected: Option<Value>,
    actual: Option<Value>,
    category: DivergenceCategory,
    detail: String,
}

fn categorize(tick: Tick, schedule: &SampleSchedule) -> DivergenceCategory {
    if tick == 0 {
        DivergenceCategory::Init
    } else if schedule.samples().binary_search(&tick).is_err() {
        DivergenceCategory::SustainedTiming
    } else {
        DivergenceCategory::Other
    }
}

fn fault_divergence(fault: &EvalFault, expected: &Trajectory<Value>) -> Divergence {
    let category = match fault.kind {
        EvalFaultKind::TableGap => DivergenceCategory::TableGap,
        EvalFaultKind::TableOverlap => DivergenceCategory::TableOverlap,
        EvalFaultKind::TypeMismatch { .. } => DivergenceCategory::Other,
    };
    Divergence {
        tick: fault.tick,
        expected: expected.get(fault.tick).cloned(),
        actual: None,
        category,
        detail: format!("{fault}"),
    }
}

/// First tick at which the simulated output deviates from the expected
/// trajectory (or the simulation faults). `Err` means the model itself is
/// broken (missing wires, bad domains), which is never a counterexample.
fn divergence<M: CorrectnessModel + ?Sized>(
    model: &M,
    inputs: &CaseInputs,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> Result<Option<Divergence>, String> {
    let expected = model.expected(inputs, schedule, domain);
    let wires = model.netlist_inputs(inputs);
    match model.netlist().simulate(&wires, schedule, domain) {
        Err(SimError::Fault(fault)) => Ok(Some(fault_divergence(&fault, &expected))),
        Err(e) => Err(format!("{e}")),
        Ok(trace) => {
            let out = trace
                .wire(model.output_wire())
                .ok_or_else(|| format!("no output wire {}", model.output_wire()))?;
            for t in domain.ticks() {
                if out.at(t) != expected.at(t) {
                    return Ok(Some(Divergence {
                        tick: t,
                        expected: Some(expected.at(t)),
                        actual: Some(out.at(t)),
                        category: categorize(t, schedule),
                        detail: String::new(),
                    }));
                }
            }
            Ok(None)
        }
    }
}

fn induction_divergence<M: InductiveModel + ?Sized>(
    model: &M,
    inputs: &CaseInputs,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> Result<Option<Divergence>, String> {
    let wires = model.netlist_inputs(inputs);
    match model.netlist().simulate(&wires, schedule, domain) {
        Err(SimError::Fault(fault)) => {
            let category = match fault.kind {
                EvalFaultKind::TableGap => DivergenceCategory::TableGap,
                EvalFaultKind::TableOverlap => DivergenceCategory::TableOverlap,
                EvalFaultKind::TypeMismatch { .. } => DivergenceCategory::Other,
            };
            Ok(Some(Divergence {
                tick: fault.tick,
                expected: None,
                actual: None,
                category,
                detail: format!("{fault}"),
            }))
        }
        Err(e) => Err(format!("{e}")),
        Ok(trace) => {
            let out = trace
                .wire(model.output_wire())
                .ok_or_else(|| format!("no output wire {}", model.output_wire()))?;
            for t in domain.ticks() {
                // The inductive obligation: base at tick 0, then the step
                // applied to the implementation's own previous output.
                let want = if t == 0 {
                    model.base(inputs, schedule, domain)
                } else {
                    model.step(inputs, schedule, domain, t, &out.at(t - 1))
                };
                if out.at(t) != want {
                    return Ok(Some(Divergence {
                        tick: t,
                        expected: Some(want),
                        actual: Some(out.at(t)),
                        category: categorize(t, schedule),
                        detail: String::from("inductive step violated"),
                    }));
                }
            }
            Ok(None)
        }
    }
}

fn to_counterexample(case: Case, d: Divergence) -> Counterexample {
    Counterexample {
        case_index: case.index,
        schedule_index: case.schedule_index,
        inputs: case.inputs,
        tick: d.tick,
        expected: d.expected,
        actual: d.actual,
        category: d.category,
        detail: d.detail,
    }
}

fn scan_range(
    space: &InputSpace,
    range: core::ops::Range<u64>,
    mut diverge: impl FnMut(&CaseInputs, &SampleSchedule) -> Result<Option<Divergence>, String>,
) -> Result<CheckReport, CheckError> {
    let mut enumerated = 0u64;
    let mut checked = 0u64;
    for index in range {
        let case = match space.case(index) {
            Some(c) => c,
            None => break,
        };
        enumerated += 1;
        if !case.admissible {
            continue;
        }
        checked += 1;
        let schedule = &space.schedules[case.schedule_index];
        match diverge(&case.inputs, schedule) {
            Err(message) => return Err(CheckError::Sim { case_index: index, message }),
            Ok(Some(div)) => {
                // Soundness: replay before reporting.
                let replay = diverge(&case.inputs, schedule)
                    .map_err(|message| CheckError::Sim { case_index: index, message })?;
                assert_eq!(replay.as_ref(), Some(&div), "counterexample did not replay");
                return Ok(CheckReport {
                    enumerated,
                    checked,
                    counterexample: Some(to_counterexample(case, div)),
                });
            }
            Ok(None) => {}
        }
    }
    Ok(CheckReport { enumerated, checked, counterexample: None })
}

/// Correctness over a case-index range; the building block for parallel
/// drivers. Does not apply the cardinality cap.
pub fn check_correctness_range<M: CorrectnessModel + ?Sized>(
    model: &M,
    space: &InputSpace,
    range: core::ops::Range<u64>,
) -> Result<CheckReport, CheckError> {
    scan_range(space, range, |inputs, schedule| {
        divergence(model, inputs, schedule, &space.domain)
    })
}

/// Exhaustive correctness check: simulated output equals the executable
/// requirement on every admissible case.
pub fn check_correctness<M: CorrectnessModel + ?Sized>(
    model: &M,
    space: &InputSpace,
) -> Result<CheckReport, CheckError> {
    let count = space.check_cap()?;
    check_correctness_range(model, space, 0..count)
}

pub fn check_induction_range<M: InductiveModel + ?Sized>(
    model: &M,
    space: &InputSpace,
    range: core::ops::Range<u64>,
) -> Result<CheckReport, CheckError> {
    scan_range(space, range, |inputs, schedule| {
        induction_divergence(model, inputs, schedule, &space.domain)
    })
}

/// Inductive cross-check: the implementation satisfies the base case and
/// the step relation against its own previous output.
pub fn check_induction<M: InductiveModel + ?Sized>(
    model: &M,
    space: &InputSpace,
) -> Result<CheckReport, CheckError> {
    let count = space.check_cap()?;
    check_induction_range(model, space, 0..count)
}

/// Consistency: the network produces a total output on every admissible
/// case (no evaluation faults).
pub fn check_consistency(
    netlist: &Netlist,
    adapt: impl Fn(&CaseInputs) -> CaseInputs,
    space: &InputSpace,
) -> Result<CheckReport, CheckError> {
    let count = space.check_cap()?;
    scan_range(space, 0..count, |inputs, schedule| {
        match netlist.simulate(&adapt(inputs), schedule, &space.domain) {
            Err(SimError::Fault(fault)) => {
                let category = match fault.kind {
                    EvalFaultKind::TableGap => DivergenceCategory::TableGap,
                    EvalFaultKind::TableOverlap => DivergenceCategory::TableOverlap,
                    EvalFaultKind::TypeMismatch { .. } => DivergenceCategory::Other,
                };
                Ok(Some(Divergence {
                    tick: fault.tick,
                    expected: None,
                    actual: None,
                    category,
                    detail: format!("{fault}"),
                }))
            }
            Err(e) => Err(format!("{e}")),
            Ok(_) => Ok(None),
        }
    })
}

/// A table-healthiness witness: a reachable context with a gap or overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct TableWitness {
    pub case_index: u64,
    pub schedule_index: usize,
    pub inputs: CaseInputs,
    pub tick: Tick,
    pub kind: TableFaultKind,
    pub rows: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableHealth {
    pub enumerated: u64,
    pub checked: u64,
    pub witness: Option<TableWitness>,
}

impl TableHealth {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

fn check_table<C, V: Clone>(
    table: &TableSpec<C, V>,
    space: &InputSpace,
    ctx_at: &impl Fn(&CaseInputs, &SampleSchedule, &TickDomain, Tick) -> C,
    want: impl Fn(&TableFaultKind) -> bool,
) -> Result<TableHealth, CheckError> {
    let count = space.check_cap()?;
    let mut enumerated = 0u64;
    let mut checked = 0u64;
    for index in 0..count {
        let case = space.case(index).unwrap();
        enumerated += 1;
        if !case.admissible {
            continue;
        }
        checked += 1;
        let schedule = &space.schedules[case.schedule_index];
        for t in space.domain.ticks() {
            let ctx = ctx_at(&case.inputs, schedule, &space.domain, t);
            let matching = table.matching(&ctx);
            let kind = match matching.as_slice() {
                [] => TableFaultKind::Gap,
                [_] => continue,
                [i, j, ..] => TableFaultKind::Overlap { first: *i, second: *j },
            };
            if want(&kind) {
                let rows = matching
                    .iter()
                    .map(|&i| String::from(table.rows()[i].label()))
                    .collect();
                return Ok(TableHealth {
                    enumerated,
                    checked,
                    witness: Some(TableWitness {
                        case_index: index,
                        schedule_index: case.schedule_index,
                        inputs: case.inputs,
                        tick: t,
                        kind,
                        rows,
                    }),
                });
            }
        }
    }
    Ok(TableHealth { enumerated, checked, witness: None })
}

/// Completeness: some row applies in every reachable context.
pub fn check_completeness<C, V: Clone>(
    table: &TableSpec<C, V>,
    space: &InputSpace,
    ctx_at: impl Fn(&CaseInputs, &SampleSchedule, &TickDomain, Tick) -> C,
) -> Result<TableHealth, CheckError> {
    check_table(table, space, &ctx_at, |k| matches!(k, TableFaultKind::Gap))
}

/// Disjointness: no two rows apply in any reachable context.
pub fn check_disjointness<C, V: Clone>(
    table: &TableSpec<C, V>,
    space: &InputSpace,
    ctx_at: impl Fn(&CaseInputs, &SampleSchedule, &TickDomain, Tick) -> C,
) -> Result<TableHealth, CheckError> {
    check_table(table, space, &ctx_at, |k| matches!(k, TableFaultKind::Overlap { .. }))
}

/// A counterexample reduced by greedy shrinking: horizon truncated to the
/// failing tick and input change-points removed where the divergence
/// persists.
#[derive(Debug, Clone, PartialEq)]
pub struct ShrunkCounterexample {
    pub domain: TickDomain,
    pub schedule: SampleSchedule,
    pub inputs: CaseInputs,
    pub tick: Tick,
    pub expected: Option<Value>,
    pub actual: Option<Value>,
    pub category: DivergenceCategory,
}

/// Greedily minimize a failing input: truncate the horizon to the failing
/// tick, then drop change-points while the divergence persists.
pub fn shrink<M: CorrectnessModel + ?Sized>(
    model: &M,
    inputs: &CaseInputs,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> Option<ShrunkCounterexample> {
    let mut cur_inputs = inputs.clone();
    let mut cur_sched = schedule.clone();
    let mut cur_dom = *domain;
    let mut div = divergence(model, &cur_inputs, &cur_sched, &cur_dom).ok()??;

    loop {
        let mut changed = false;

        // Truncate the horizon to the failing tick.
        let target = div.tick.max(1);
        if target < cur_dom.horizon() {
            let dom2 = cur_dom.truncated(target);
            let sched2 = cur_sched.truncated(target);
            let inputs2: CaseInputs = cur_inputs
                .iter()
                .map(|(k, v)| (k.clone(), v.truncated(target)))
                .collect();
            if let Ok(Some(d2)) = divergence(model, &inputs2, &sched2, &dom2) {
                cur_dom = dom2;
                cur_sched = sched2;
                cur_inputs = inputs2;
                div = d2;
                changed = true;
            }
        }

        // Drop change-points, latest first.
        let names: Vec<String> = cur_inputs.keys().cloned().collect();
        for name in &names {
            let mut cps = cur_inputs[name].change_points();
            cps.reverse();
            for cp in cps {
                let traj = &cur_inputs[name];
                if traj.change_points().binary_search(&cp).is_err() {
                    continue; // removed by an earlier edit
                }
                let mut values = traj.values().to_vec();
                let before = values[cp - 1].clone();
                let new_val = values[cp].clone();
                let mut t = cp;
                while t < values.len() && values[t] == new_val {
                    values[t] = before.clone();
                    t += 1;
                }
                let candidate = Trajectory::new(values, &cur_dom).unwrap();
                let mut inputs2 = cur_inputs.clone();
                inputs2.insert(name.clone(), candidate);
                if let Ok(Some(d2)) = divergence(model, &inputs2, &cur_sched, &cur_dom) {
                    cur_inputs = inputs2;
                    div = d2;
                    changed = true;
                }
            }
        }

        if !changed {
            break;
        }
    }

    Some(ShrunkCounterexample {
        domain: cur_dom,
        schedule: cur_sched,
        inputs: cur_inputs,
        tick: div.tick,
        expected: div.expected,
        actual: div.actual,
        category: div.category,
    })
}

/// The sealed-in subsystem as a verification subject.
pub struct SealedInModel {
    consts: SealedInConsts,
    net: Netlist,
}

impl SealedInModel {
    pub fn original(consts: SealedInConsts) -> Self {
        SealedInModel { consts, net: trip_sealedin_original(&consts) }
    }

    pub fn revised(consts: SealedInConsts) -> Self {
        SealedInModel { consts, net: trip_sealedin_revised(&consts) }
    }

    fn unpack(
        inputs: &CaseInputs,
    ) -> (Trajectory<bool>, Trajectory<TripEnum>, Trajectory<bool>) {
        let any = inputs["any_parm_trip"].map(|v| v.as_bool().unwrap());
        let trip = inputs["trip"].map(|v| match v {
            Value::Trip(e) => *e,
            _ => panic!("trip input domain"),
        });
        let reset = inputs["man_reset_req"].map(|v| v.as_bool().unwrap());
        (any, trip, reset)
    }
}

impl CorrectnessModel for SealedInModel {
    fn name(&self) -> &str {
        &self.net.name
    }

    fn netlist(&self) -> &Netlist {
        &self.net
    }

    fn netlist_inputs(&self, inputs: &CaseInputs) -> CaseInputs {
        let mut out = inputs.clone();
        let trip = inputs["trip"].map(|v| match v {
            Value::Trip(e) => Value::Bool(abst_parm_trip(*e)),
            _ => panic!("trip input domain"),
        });
        out.insert(String::from("trip"), trip);
        out
    }

    fn output_wire(&self) -> &str {
        "trip_sealedin"
    }

    fn expected(
        &self,
        inputs: &CaseInputs,
        schedule: &SampleSchedule,
        domain: &TickDomain,
    ) -> Trajectory<Value> {
        let (any, trip, reset) = Self::unpack(inputs);
        trip_sealedin_req(&any, &trip, &reset, &self.consts, schedule, domain)
            .map(|&b| Value::Bool(b))
    }
}

impl InductiveModel for SealedInModel {
    fn base(&self, _: &CaseInputs, _: &SampleSchedule, _: &TickDomain) -> Value {
        Value::Bool(true)
    }

    fn step(
        &self,
        inputs: &CaseInputs,
        schedule: &SampleSchedule,
        domain: &TickDomain,
        t: Tick,
        prev: &Value,
    ) -> Value {
        let (any, trip, reset) = Self::unpack(inputs);
        let tripped = trip.map(|&e| e == TripEnum::Trip);
        let held = held_for_i(&tripped, self.consts.effective_delay(), schedule, t, domain);
        Value::Bool(trip_sealedin_step(
            any.at(t),
            held,
            reset.at(t),
            prev.as_bool().expect("boolean output"),
        ))
    }
}

/// The pushbutton subsystem as a verification subject (against the
/// revised requirements table).
pub struct PushbuttonModel {
    consts: PushbuttonConsts,
    net: Netlist,
}

impl PushbuttonModel {
    pub fn new(consts: PushbuttonConsts) -> Self {
        PushbuttonModel { consts, net: pushbutton_netlist(&consts) }
    }

    pub fn consts(&self) -> &PushbuttonConsts {
        &self.consts
    }
}

impl CorrectnessModel for PushbuttonModel {
    fn name(&self) -> &str {
        &self.net.name
    }

    fn netlist(&self) -> &Netlist {
        &self.net
    }

    fn netlist_inputs(&self, inputs: &CaseInputs) -> CaseInputs {
        inputs.clone()
    }

    fn output_wire(&self) -> &str {
        "f_pushbutton"
    }

    fn expected(
        &self,
        inputs: &CaseInputs,
        schedule: &SampleSchedule,
        domain: &TickDomain,
    ) -> Trajectory<Value> {
        let m = inputs["m"].map(|v| v.as_pb_status().unwrap());
        pushbutton_req(&m, &self.consts, schedule, domain, &pushbutton_revised_table())
            .expect("revised table is complete and disjoint")
            .map(|&o| Value::PbOutput(o))
    }
}

/// Standard enumeration space for the sealed-in subsystem: all three
/// inputs sample-aligned.
pub fn sealedin_space(
    domain: TickDomain,
    schedules: Vec<SampleSchedule>,
    cap: u64,
) -> InputSpace {
    InputSpace {
        domain,
        schedules,
        vars: alloc::vec![
            InputVar::new("any_parm_trip", Domain::Bool, Discipline::SampleAligned),
            InputVar::new("trip", Domain::Trip, Discipline::SampleAligned),
            InputVar::new("man_reset_req", Domain::Bool, Discipline::SampleAligned),
        ],
        cap,
    }
}

/// Standard enumeration space for the pushbutton subsystem with a chosen
/// input discipline.
pub fn pushbutton_space(
    domain: TickDomain,
    schedules: Vec<SampleSchedule>,
    discipline: Discipline,
    cap: u64,
) -> InputSpace {
    InputSpace {
        domain,
        schedules,
        vars: alloc::vec![InputVar::new("m", Domain::PbStatus, discipline)],
        cap,
    }
}

/// Context extractor for the pushbutton tables over a case of this
/// module's [`pushbutton_space`].
pub fn pushbutton_ctx_at(
    consts: &PushbuttonConsts,
) -> impl Fn(&CaseInputs, &SampleSchedule, &TickDomain, Tick) -> crate::tables::PbCtx + '_ {
    move |inputs, schedule, domain, t| {
        let m = inputs["m"].map(|v| v.as_pb_status().unwrap());
        let (pressed, debounced, stuck) = pushbutton_conditions(&m, consts, schedule, domain);
        crate::tables::PbCtx { pressed: pressed.at(t), debounced: debounced.at(t), stuck: stuck.at(t) }
    }
}

/// A point where the deterministic sampled sustain operator violates the
/// verdict of a tolerance envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementViolation {
    pub input: Trajectory<bool>,
    pub schedule: SampleSchedule,
    pub tick: Tick,
    pub verdict: HeldForVerdict,
    pub held: bool,
}

fn maximal_schedules(
    tmin: Duration,
    tmax: Duration,
    domain: &TickDomain,
) -> Vec<SampleSchedule> {
    let lo = (tmin.value() / domain.delta()) as usize;
    let hi = (tmax.value() / domain.delta()) as usize;
    let mut out = Vec::new();
    let mut stack = alloc::vec![alloc::vec![0usize]];
    while let Some(samples) = stack.pop() {
        let last = *samples.last().unwrap();
        if last + lo > domain.horizon() {
            out.push(SampleSchedule::new(samples, tmin, tmax, domain).unwrap());
            continue;
        }
        for g in lo..=hi {
            let next = last + g;
            if next <= domain.horizon() {
                let mut s = samples.clone();
                s.push(next);
                stack.push(s);
            }
        }
    }
    out
}

/// Exhaustively test whether the sampled sustain with threshold
/// `d - left_tol` refines the envelope `(d, left_tol, right_tol)` on every
/// filtered input and every maximal schedule with gaps in `[tmin, tmax]`:
/// a must-hold verdict forces detection and a must-not-hold verdict
/// forbids it. Verdicts are imposed at sample ticks only — between samples
/// the operator deliberately reports the frozen value from the last
/// sample. Returns the first violation found, if any.
pub fn check_envelope_refinement(
    env: &HeldForEnvelope,
    tmin: Duration,
    tmax: Duration,
    domain: &TickDomain,
    filtered_only: bool,
) -> Option<RefinementViolation> {
    let threshold = env.lower();
    let n = domain.horizon() + 1;
    assert!(n <= 16, "exhaustive input enumeration is bounded");
    for schedule in maximal_schedules(tmin, tmax, domain) {
        for bits in 0u32..1 << n {
            let p = Trajectory::from_fn(domain, |t| bits >> t & 1 == 1);
            if filtered_only && is_filtered(&p, &schedule, domain).is_err() {
                continue;
            }
            for &t in schedule.samples() {
                let held = held_for_i(&p, threshold, &schedule, t, domain);
                let verdict = env.verdict(&p, t, domain);
                let bad = match verdict {
                    HeldForVerdict::MustHold => !held,
                    HeldForVerdict::MustNotHold => held,
                    HeldForVerdict::Free => false,
                };
                if bad {
                    return Some(RefinementViolation {
                        input: p,
                        schedule,
                        tick: t,
                        verdict,
                        held,
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::tables::{pushbutton_original_table, pushbutton_revised_table};
    use alloc::vec;

    fn dom(horizon: Tick) -> TickDomain {
        TickDomain::new(1, horizon).unwrap()
    }

    fn dur(n: u64, d: &TickDomain) -> Duration {
        Duration::of_ticks(n, d)
    }

    #[test]
    fn space_counts_and_decodes() {
        let d = dom(4);
        let sched = SampleSchedule::from_gaps(&[2, 2], dur(2, &d), dur(2, &d), &d).unwrap();
        let space = InputSpace {
            domain: d,
            schedules: vec![sched],
            vars: vec![
                InputVar::new("a", Domain::Bool, Discipline::SampleAligned),
                InputVar::new("m", Domain::PbStatus, Discipline::SampleAligned),
            ],
            cap: DEFAULT_CASE_CAP,
        };
        // 3 samples, two binary vars: 2^3 * 2^3.
        assert_eq!(space.case_count(), 64);
        // All decoded cases are distinct and defined.
        let mut seen = Vec::new();
        for case in space.cases() {
            assert!(case.admissible);
            // Sample-aligned: constant between samples.
            let a = &case.inputs["a"];
            assert_eq!(a.at(0), a.at(1));
            assert_eq!(a.at(2), a.at(3));
            assert!(!seen.contains(&case.inputs));
            seen.push(case.inputs);
        }
        assert_eq!(seen.len(), 64);
        assert!(space.case(64).is_none());
    }

    #[test]
    fn cap_refusal() {
        let d = dom(10);
        let space = InputSpace {
            domain: d,
            schedules: vec![SampleSchedule::every_tick(&d)],
            vars: vec![InputVar::new("a", Domain::Bool, Discipline::FreePerTick)],
            cap: 100,
        };
        assert_eq!(
            space.check_cap(),
            Err(CheckError::CardinalityExceeded { count: 2048, cap: 100 })
        );
    }

    #[test]
    fn filtered_cases_are_skipped_not_dropped() {
        let d = dom(6);
        let sched = SampleSchedule::from_gaps(&[2, 2, 2], dur(2, &d), dur(2, &d), &d).unwrap();
        let space = InputSpace {
            domain: d,
            schedules: vec![sched],
            vars: vec![InputVar::new("a", Domain::Bool, Discipline::Filtered)],
            cap: DEFAULT_CASE_CAP,
        };
        let total = space.case_count();
        assert_eq!(total, 128);
        let admissible = space.cases().filter(|c| c.admissible).count();
        assert!(admissible > 0 && (admissible as u64) < total);
    }

    fn small_sealedin() -> (TickDomain, SampleSchedule, SealedInConsts) {
        let d = dom(6);
        let sched = SampleSchedule::from_gaps(&[2, 2, 2], dur(2, &d), dur(2, &d), &d).unwrap();
        let consts = SealedInConsts::new(dur(3, &d), dur(1, &d), dur(1, &d)).unwrap();
        (d, sched, consts)
    }

    #[test]
    fn original_sealedin_fails_at_init_on_every_case() {
        let (d, sched, consts) = small_sealedin();
        let model = SealedInModel::original(consts);
        let space = sealedin_space(d, vec![sched], DEFAULT_CASE_CAP);
        for case in space.cases() {
            let div =
                divergence(&model, &case.inputs, &space.schedules[0], &d).unwrap().unwrap();
            assert_eq!(div.tick, 0);
            assert_eq!(div.category, DivergenceCategory::Init);
        }
        let report = check_correctness(&model, &space).unwrap();
        let cex = report.counterexample.unwrap();
        assert_eq!(cex.case_index, 0);
        assert_eq!(cex.expected, Some(Value::Bool(true)));
        assert_eq!(cex.actual, Some(Value::Bool(false)));
    }

    #[test]
    fn revised_sealedin_passes() {
        let (d, sched, consts) = small_sealedin();
        let model = SealedInModel::revised(consts);
        let space = sealedin_space(d, vec![sched], DEFAULT_CASE_CAP);
        let report = check_correctness(&model, &space).unwrap();
        assert!(report.passed(), "{:?}", report.counterexample);
        assert_eq!(report.enumerated, report.checked);
    }

    #[test]
    fn induction_agrees_with_direct_scan() {
        let (d, sched, consts) = small_sealedin();
        let space = sealedin_space(d, vec![sched], DEFAULT_CASE_CAP);
        for model in [SealedInModel::original(consts), SealedInModel::revised(consts)] {
            let direct = check_correctness(&model, &space).unwrap();
            let inductive = check_induction(&model, &space).unwrap();
            assert_eq!(direct.passed(), inductive.passed());
            if let (Some(a), Some(b)) = (&direct.counterexample, &inductive.counterexample) {
                assert_eq!(a.case_index, b.case_index);
                assert_eq!(a.tick, b.tick);
            }
        }
    }

    #[test]
    fn shrink_reduces_init_bug_to_trivial_input() {
        let (d, sched, consts) = small_sealedin();
        let model = SealedInModel::original(consts);
        let space = sealedin_space(d, vec![sched], DEFAULT_CASE_CAP);
        // Pick a case with plenty of change-points.
        let case = space.cases().last().unwrap();
        let shrunk = shrink(&model, &case.inputs, &space.schedules[0], &d).unwrap();
        assert_eq!(shrunk.tick, 0);
        assert_eq!(shrunk.domain.horizon(), 1);
        for traj in shrunk.inputs.values() {
            assert!(traj.change_points().is_empty(), "inputs flattened");
        }
    }

    #[test]
    fn pushbutton_table_health_checks() {
        let d = dom(8);
        let sched = SampleSchedule::from_gaps(&[2, 2, 2, 2], dur(2, &d), dur(2, &d), &d).unwrap();
        let consts =
            PushbuttonConsts::new(dur(4, &d), dur(6, &d), dur(2, &d), dur(2, &d)).unwrap();
        let free = pushbutton_space(d, vec![sched], Discipline::FreePerTick, DEFAULT_CASE_CAP);

        // Original table: spikes create an overlap.
        let health =
            check_disjointness(&pushbutton_original_table(), &free, pushbutton_ctx_at(&consts))
                .unwrap();
        let witness = health.witness.expect("spike overlap");
        assert!(matches!(witness.kind, TableFaultKind::Overlap { .. }));

        // Revised table: disjoint even on unfiltered inputs, and complete.
        assert!(check_disjointness(&pushbutton_revised_table(), &free, pushbutton_ctx_at(&consts))
            .unwrap()
            .passed());
        assert!(check_completeness(&pushbutton_revised_table(), &free, pushbutton_ctx_at(&consts))
            .unwrap()
            .passed());
    }

    #[test]
    fn pushbutton_correctness_on_filtered_space() {
        let d = dom(8);
        let sched = SampleSchedule::from_gaps(&[2, 2, 2, 2], dur(2, &d), dur(2, &d), &d).unwrap();
        let consts =
            PushbuttonConsts::new(dur(4, &d), dur(6, &d), dur(2, &d), dur(2, &d)).unwrap();
        let model = PushbuttonModel::new(consts);
        let space = pushbutton_space(d, vec![sched], Discipline::Filtered, DEFAULT_CASE_CAP);
        let report = check_correctness(&model, &space).unwrap();
        assert!(report.passed(), "{:?}", report.counterexample);
        assert!(report.checked < report.enumerated, "filter skipped spiky cases");
    }

    #[test]
    fn consistency_flags_partial_table_block() {
        use crate::netlist::{Block, BlockKind, BoolTableRow, InputDecl, Netlist};
        let d = dom(4);
        let net = Netlist {
            name: String::from("partial"),
            inputs: vec![
                InputDecl { wire: String::from("a"), domain: Domain::Bool },
                InputDecl { wire: String::from("b"), domain: Domain::Bool },
            ],
            outputs: vec![String::from("y")],
            blocks: vec![Block::new(
                "tbl",
                BlockKind::BoolTable {
                    rows: vec![BoolTableRow { a: false, b: false, out: false }],
                },
                &[("a", "a"), ("b", "b")],
                &[("y", "y")],
            )],
            feedback: vec![],
        };
        let space = InputSpace {
            domain: d,
            schedules: vec![SampleSchedule::every_tick(&d)],
            vars: vec![
                InputVar::new("a", Domain::Bool, Discipline::SampleAligned),
                InputVar::new("b", Domain::Bool, Discipline::SampleAligned),
            ],
            cap: DEFAULT_CASE_CAP,
        };
        let report = check_consistency(&net, |i| i.clone(), &space).unwrap();
        let cex = report.counterexample.unwrap();
        assert_eq!(cex.category, DivergenceCategory::TableGap);
    }

    #[test]
    fn report_merge_prefers_smallest_index() {
        let mk = |idx: Option<u64>| CheckReport {
            enumerated: 10,
            checked: 10,
            counterexample: idx.map(|i| Counterexample {
                case_index: i,
                schedule_index: 0,
                inputs: CaseInputs::new(),
                tick: 0,
                expected: None,
                actual: None,
                category: DivergenceCategory::Other,
                detail: String::new(),
            }),
        };
        let merged = mk(Some(7)).merge(mk(Some(3)));
        assert_eq!(merged.counterexample.unwrap().case_index, 3);
        assert_eq!(merged.enumerated, 20);
        let merged = mk(None).merge(mk(Some(5)));
        assert_eq!(merged.counterexample.unwrap().case_index, 5);
    }

    #[test]
    fn envelope_refinement_boundary() {
        let d = dom(9);
        let tmin = dur(2, &d);
        let tmax = dur(3, &d);
        // Tolerances wide enough for the sampling period: refined.
        let wide = HeldForEnvelope::new(dur(4, &d), dur(1, &d), dur(1, &d)).unwrap();
        assert_eq!(check_envelope_refinement(&wide, tmin, tmax, &d, true), None);
        // Too-tight right tolerance: a must-hold verdict can be missed
        // when the rise lands just after a sample.
        let tight = HeldForEnvelope::new(dur(4, &d), dur(1, &d), dur(0, &d)).unwrap();
        let violation = check_envelope_refinement(&tight, tmin, tmax, &d, true).unwrap();
        assert_eq!(violation.verdict, HeldForVerdict::MustHold);
        assert!(!violation.held);
        // Unfiltered inputs break even the wide envelope: a dip between
        // samples goes unseen, so the sampled view keeps holding.
        assert!(check_envelope_refinement(&wide, tmin, tmax, &d, false).is_some());
    }
}
