//! Function-block networks: named wires, block instances with named ports,
//! and explicit unit-delay feedback wires.
//!
//! Cycles are only legal through feedback wires; everything else must form
//! a DAG within a tick. The simulator streams tick by tick, updating timer
//! and latch state at sample ticks, and records every wire's trajectory.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::blocks::{eval_gate, rs_latch, sel, GateKind, TpState};
use crate::time::{Duration, SampleSchedule, Tick, TickDomain, Trajectory};
use crate::value::{Domain, PbStatus, Value};

/// A port-to-wire binding on a block instance.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PortBinding {
    pub port: String,
    pub wire: String,
}

impl PortBinding {
    pub fn new(port: &str, wire: &str) -> Self {
        PortBinding { port: String::from(port), wire: String::from(wire) }
    }
}

/// One row of an inline two-input boolean table block. Rows match exact
/// input combinations; coverage is deliberately not checked at build time,
/// so gaps and overlaps surface as evaluation faults.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoolTableRow {
    pub a: bool,
    pub b: bool,
    pub out: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BlockKind {
    Gate(GateKind),
    /// Reset-dominant latch with a declared initial output.
    Rs { q_init: bool },
    /// Two-way multiplexer; `g = false` selects `in0`.
    Sel,
    /// On-delay timer with preset `pt` (already tolerance-adjusted).
    Ton { pt: Duration },
    /// Off-delay timer.
    Tof { pt: Duration },
    /// Non-retriggerable pulse timer.
    Tp { pt: Duration },
    /// True exactly at tick 0.
    Init,
    /// Constant source.
    Const { value: Value },
    /// Pushbutton status to bool adapter.
    IsPressed,
    /// Inline two-bool-input table, evaluated strictly per tick.
    BoolTable { rows: Vec<BoolTableRow> },
}

impl BlockKind {
    pub fn input_ports(&self) -> &'static [&'static str] {
        match self {
            BlockKind::Gate(GateKind::Not) => &["x"],
            BlockKind::Gate(_) | BlockKind::BoolTable { .. } => &["a", "b"],
            BlockKind::Rs { .. } => &["set", "reset"],
            BlockKind::Sel => &["g", "in0", "in1"],
            BlockKind::Ton { .. } | BlockKind::Tof { .. } | BlockKind::Tp { .. } => &["in"],
            BlockKind::Init | BlockKind::Const { .. } => &[],
            BlockKind::IsPressed => &["m"],
        }
    }

    pub fn output_ports(&self) -> &'static [&'static str] {
        match self {
            BlockKind::Rs { .. } => &["q"],
            BlockKind::Ton { .. } | BlockKind::Tof { .. } | BlockKind::Tp { .. } => {
                &["q", "et"]
            }
            _ => &["y"],
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            BlockKind::Gate(g) => g.as_str(),
            BlockKind::Rs { .. } => "RS",
            BlockKind::Sel => "SEL",
            BlockKind::Ton { .. } => "TON",
            BlockKind::Tof { .. } => "TOF",
            BlockKind::Tp { .. } => "TP",
            BlockKind::Init => "INIT",
            BlockKind::Const { .. } => "CONST",
            BlockKind::IsPressed => "IS_PRESSED",
            BlockKind::BoolTable { .. } => "BOOL_TABLE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Block {
    pub id: String,
    pub kind: BlockKind,
    pub inputs: Vec<PortBinding>,
    pub outputs: Vec<PortBinding>,
}

impl Block {
    pub fn new(id: &str, kind: BlockKind, inputs: &[(&str, &str)], outputs: &[(&str, &str)]) -> Self {
        Block {
            id: String::from(id),
            kind,
            inputs: inputs.iter().map(|(p, w)| PortBinding::new(p, w)).collect(),
            outputs: outputs.iter().map(|(p, w)| PortBinding::new(p, w)).collect(),
        }
    }
}

/// A named wire carrying the previous-tick value of `from`; `init` at
/// tick 0. The only legal way to close a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FeedbackWire {
    pub wire: String,
    pub from: String,
    pub init: Value,
}

/// External input declaration: drives the wire of the same name.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InputDecl {
    pub wire: String,
    pub domain: Domain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Netlist {
    pub name: String,
    pub inputs: Vec<InputDecl>,
    pub outputs: Vec<String>,
    pub blocks: Vec<Block>,
    pub feedback: Vec<FeedbackWire>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetlistError {
    DuplicateBlockId { id: String },
    /// A wire with more than one driver (input, block output, or feedback).
    MultipleDrivers { wire: String },
    /// A referenced wire with no driver at all.
    UndrivenWire { wire: String, block: String },
    /// Port list does not match the block kind's convention.
    PortMismatch { block: String, expected: Vec<String>, got: Vec<String> },
    UnknownFeedbackSource { wire: String, from: String },
    UnknownOutput { wire: String },
    /// Combinational cycle not broken by a feedback wire.
    AlgebraicLoop { blocks: Vec<String> },
}

impl fmt::Display for NetlistError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetlistError::DuplicateBlockId { id } => write!(f, "duplicate block id {id}"),
            NetlistError::MultipleDrivers { wire } => {
                write!(f, "wire {wire} has more than one driver")
            }
            NetlistError::UndrivenWire { wire, block } => {
                write!(f, "wire {wire} read by block {block} has no driver")
            }
            NetlistError::PortMismatch { block, expected, got } => {
                write!(f, "block {block}: expected ports {expected:?}, got {got:?}")
            }
            NetlistError::UnknownFeedbackSource { wire, from } => {
                write!(f, "feedback wire {wire} reads undriven wire {from}")
            }
            NetlistError::UnknownOutput { wire } => {
                write!(f, "declared output {wire} is not a driven wire")
            }
            NetlistError::AlgebraicLoop { blocks } => {
                write!(f, "combinational cycle through blocks {blocks:?}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NetlistError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalFaultKind {
    /// No table row matched the inputs.
    TableGap,
    /// More than one table row matched.
    TableOverlap,
    /// A wire carried a value outside the port's expected domain.
    TypeMismatch { port: String, got: Domain },
}

/// A runtime evaluation fault: the network is structurally valid but a
/// block could not produce an output at this tick.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalFault {
    pub tick: Tick,
    pub block: String,
    pub kind: EvalFaultKind,
}

impl fmt::Display for EvalFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            EvalFaultKind::TableGap => {
                write!(f, "block {} at tick {}: no table row applies", self.block, self.tick)
            }
            EvalFaultKind::TableOverlap => {
                write!(f, "block {} at tick {}: table rows overlap", self.block, self.tick)
            }
            EvalFaultKind::TypeMismatch { port, got } => write!(
                f,
                "block {} at tick {}: port {port} got a {got} value",
                self.block, self.tick
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EvalFault {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimError {
    Structure(NetlistError),
    MissingInput { wire: String },
    InputDomainMismatch { wire: String, expected: Domain, got: Domain },
    InputHorizonMismatch { wire: String, len: usize, expected: usize },
    /// Timer preset that is not a multiple of the domain's delta.
    BadPreset { block: String, preset: u64, delta: u64 },
    Fault(EvalFault),
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::Structure(e) => write!(f, "{e}"),
            SimError::MissingInput { wire } => write!(f, "no trajectory for input {wire}"),
            SimError::InputDomainMismatch { wire, expected, got } => {
                write!(f, "input {wire}: expected {expected} values, got {got}")
            }
            SimError::InputHorizonMismatch { wire, len, expected } => {
                write!(f, "input {wire}: {len} values, expected {expected}")
            }
            SimError::BadPreset { block, preset, delta } => {
                write!(f, "block {block}: preset {preset} not a multiple of delta {delta}")
            }
            SimError::Fault(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SimError {}

impl From<NetlistError> for SimError {
    fn from(e: NetlistError) -> Self {
        SimError::Structure(e)
    }
}

impl From<EvalFault> for SimError {
    fn from(e: EvalFault) -> Self {
        SimError::Fault(e)
    }
}

/// How a wire gets its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WireDriver {
    External(usize),
    BlockOutput { block: usize, port: usize },
    Feedback(usize),
}

/// Validated evaluation plan: wire index table, drivers, and a topological
/// block order.
pub struct Plan<'a> {
    net: &'a Netlist,
    wire_names: Vec<String>,
    wire_index: BTreeMap<String, usize>,
    order: Vec<usize>,
}

impl Netlist {
    /// Structural validation: port conventions, single drivers, no dangling
    /// reads, and acyclicity modulo feedback wires.
    pub fn validate(&self) -> Result<Plan<'_>, NetlistError> {
        let mut wire_index: BTreeMap<String, usize> = BTreeMap::new();
        let mut wire_names: Vec<String> = Vec::new();
        let mut drivers: Vec<WireDriver> = Vec::new();
        let claim = |name: &str,
                         driver: WireDriver,
                         wire_index: &mut BTreeMap<String, usize>,
                         wire_names: &mut Vec<String>,
                         drivers: &mut Vec<WireDriver>|
         -> Result<usize, NetlistError> {
            if wire_index.contains_key(name) {
                return Err(NetlistError::MultipleDrivers { wire: String::from(name) });
            }
            let idx = wire_names.len();
            wire_index.insert(String::from(name), idx);
            wire_names.push(String::from(name));
            drivers.push(driver);
            Ok(idx)
        };

        let mut ids: BTreeMap<&str, ()> = BTreeMap::new();
        for b in &self.blocks {
            if ids.insert(&b.id, ()).is_some() {
                return Err(NetlistError::DuplicateBlockId { id: b.id.clone() });
            }
        }

        for (i, inp) in self.inputs.iter().enumerate() {
            claim(&inp.wire, WireDriver::External(i), &mut wire_index, &mut wire_names, &mut drivers)?;
        }
        for (bi, b) in self.blocks.iter().enumerate() {
            let expected = b.kind.output_ports();
            let got: Vec<&str> = b.outputs.iter().map(|p| p.port.as_str()).collect();
            if got != expected {
                return Err(NetlistError::PortMismatch {
                    block: b.id.clone(),
                    expected: expected.iter().map(|s| String::from(*s)).collect(),
                    got: got.iter().map(|s| String::from(*s)).collect(),
                });
            }
            for (pi, p) in b.outputs.iter().enumerate() {
                claim(
                    &p.wire,
                    WireDriver::BlockOutput { block: bi, port: pi },
                    &mut wire_index,
                    &mut wire_names,
                    &mut drivers,
                )?;
            }
        }
        for (fi, fb) in self.feedback.iter().enumerate() {
            claim(&fb.wire, WireDriver::Feedback(fi), &mut wire_index, &mut wire_names, &mut drivers)?;
        }

        for b in &self.blocks {
            let expected = b.kind.input_ports();
            let got: Vec<&str> = b.inputs.iter().map(|p| p.port.as_str()).collect();
            if got != expected {
                return Err(NetlistError::PortMismatch {
                    block: b.id.clone(),
                    expected: expected.iter().map(|s| String::from(*s)).collect(),
                    got: got.iter().map(|s| String::from(*s)).collect(),
                });
            }
            for p in &b.inputs {
                if !wire_index.contains_key(&p.wire) {
                    return Err(NetlistError::UndrivenWire {
                        wire: p.wire.clone(),
                        block: b.id.clone(),
                    });
                }
            }
        }
        for fb in &self.feedback {
            if !wire_index.contains_key(&fb.from) {
                return Err(NetlistError::UnknownFeedbackSource {
                    wire: fb.wire.clone(),
                    from: fb.from.clone(),
                });
            }
        }
        for out in &self.outputs {
            if !wire_index.contains_key(out) {
                return Err(NetlistError::UnknownOutput { wire: out.clone() });
            }
        }

        // Same-tick dependency graph between blocks; feedback wires carry
        // last tick's value and do not create edges.
        let n = self.blocks.len();
        let mut deps: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        let mut indeg: Vec<usize> = alloc::vec![0; n];
        for (bi, b) in self.blocks.iter().enumerate() {
            for p in &b.inputs {
                if let WireDriver::BlockOutput { block, .. } = drivers[wire_index[&p.wire]] {
                    deps[block].push(bi);
                    indeg[bi] += 1;
                }
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        let mut head = 0;
        while head < queue.len() {
            let b = queue[head];
            head += 1;
            order.push(b);
            for &succ in &deps[b] {
                indeg[succ] -= 1;
                if indeg[succ] == 0 {
                    queue.push(succ);
                }
            }
        }
        if order.len() != n {
            let stuck: Vec<String> = (0..n)
                .filter(|&i| indeg[i] > 0)
                .map(|i| self.blocks[i].id.clone())
                .collect();
            return Err(NetlistError::AlgebraicLoop { blocks: stuck });
        }

        Ok(Plan { net: self, wire_names, wire_index, order })
    }

    pub fn simulate(
        &self,
        inputs: &BTreeMap<String, Trajectory<Value>>,
        schedule: &SampleSchedule,
        domain: &TickDomain,
    ) -> Result<SimTrace, SimError> {
        self.validate()?.run(inputs, schedule, domain)
    }
}

/// Per-block simulator state.
enum BlockState {
    None,
    Rs { prev_q: bool },
    Timer(TimerState),
    Tof { timer: TimerState, seen: bool },
    Tp(TpState),
}

/// Streaming counterpart of the saturating sampled timer: updated only at
/// sample ticks, frozen in between.
struct TimerState {
    acc: u64,
    prev_in: bool,
    prev_sample_time: u64,
}

impl TimerState {
    fn new() -> Self {
        TimerState { acc: 0, prev_in: false, prev_sample_time: 0 }
    }

    fn step(&mut self, now: u64, input: bool, timeout: Duration, first_sample: bool) {
        if first_sample {
            self.acc = 0;
        } else if !input || !self.prev_in {
            self.acc = 0;
        } else {
            self.acc = timeout.value().min(self.acc + (now - self.prev_sample_time));
        }
        self.prev_in = input;
        self.prev_sample_time = now;
    }
}

/// Full record of a simulation: one trajectory per wire.
#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace {
    wires: Vec<(String, Trajectory<Value>)>,
}

impl SimTrace {
    pub fn wire(&self, name: &str) -> Option<&Trajectory<Value>> {
        self.wires.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn wires(&self) -> &[(String, Trajectory<Value>)] {
        &self.wires
    }

    pub fn bool_wire(&self, name: &str) -> Option<Trajectory<bool>> {
        let t = self.wire(name)?;
        if t.values().iter().all(|v| v.as_bool().is_some()) {
            Some(t.map(|v| v.as_bool().unwrap()))
        } else {
            None
        }
    }
}

fn need_bool(v: &Value, tick: Tick, block: &str, port: &str) -> Result<bool, EvalFault> {
    v.as_bool().ok_or_else(|| EvalFault {
        tick,
        block: String::from(block),
        kind: EvalFaultKind::TypeMismatch { port: String::from(port), got: v.domain() },
    })
}

impl Plan<'_> {
    pub fn order(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(|&i| self.net.blocks[i].id.as_str())
    }

    pub fn run(
        &self,
        inputs: &BTreeMap<String, Trajectory<Value>>,
        schedule: &SampleSchedule,
        domain: &TickDomain,
    ) -> Result<SimTrace, SimError> {
        let net = self.net;
        for decl in &net.inputs {
            let traj = inputs
                .get(&decl.wire)
                .ok_or_else(|| SimError::MissingInput { wire: decl.wire.clone() })?;
            let expected = domain.horizon() + 1;
            if traj.values().len() != expected {
                return Err(SimError::InputHorizonMismatch {
                    wire: decl.wire.clone(),
                    len: traj.values().len(),
                    expected,
                });
            }
            for v in traj.values() {
                if v.domain() != decl.domain {
                    return Err(SimError::InputDomainMismatch {
                        wire: decl.wire.clone(),
                        expected: decl.domain,
                        got: v.domain(),
                    });
                }
            }
        }
        for b in &net.blocks {
            if let BlockKind::Ton { pt } | BlockKind::Tof { pt } | BlockKind::Tp { pt } = &b.kind
            {
                if pt.value() % domain.delta() != 0 {
                    return Err(SimError::BadPreset {
                        block: b.id.clone(),
                        preset: pt.value(),
                        delta: domain.delta(),
                    });
                }
            }
        }

        let nwires = self.wire_names.len();
        let mut state: Vec<BlockState> = net
            .blocks
            .iter()
            .map(|b| match &b.kind {
                BlockKind::Rs { q_init } => BlockState::Rs { prev_q: *q_init },
                BlockKind::Ton { .. } => BlockState::Timer(TimerState::new()),
                BlockKind::Tof { .. } => {
                    BlockState::Tof { timer: TimerState::new(), seen: false }
                }
                BlockKind::Tp { .. } => BlockState::Tp(TpState::new()),
                _ => BlockState::None,
            })
            .collect();

        let mut traces: Vec<Vec<Value>> =
            alloc::vec![Vec::with_capacity(domain.horizon() + 1); nwires];
        let mut prev: Vec<Value> = alloc::vec![Value::Bool(false); nwires];
        let samples = schedule.samples();
        let mut cursor = 0usize;
        // TP outputs latched between samples, per block index.
        let mut tp_latched: BTreeMap<usize, (bool, Duration)> = BTreeMap::new();

        for t in domain.ticks() {
            let at_sample = cursor < samples.len() && samples[cursor] == t;
            let first_sample = at_sample && cursor == 0;
            let now = domain.time_of(t);

            let mut cur: Vec<Option<Value>> = alloc::vec![None; nwires];
            for (i, decl) in net.inputs.iter().enumerate() {
                let _ = i;
                let idx = self.wire_index[&decl.wire];
                cur[idx] = Some(inputs[&decl.wire].at(t));
            }
            for (fi, fb) in net.feedback.iter().enumerate() {
                let _ = fi;
                let idx = self.wire_index[&fb.wire];
                cur[idx] = Some(if t == 0 {
                    fb.init.clone()
                } else {
                    prev[self.wire_index[&fb.from]].clone()
                });
            }

            for &bi in &self.order {
                let b = &net.blocks[bi];
                let read = |port: usize, cur: &Vec<Option<Value>>| -> Value {
                    cur[self.wire_index[&b.inputs[port].wire]]
                        .clone()
                        .expect("topological order guarantees availability")
                };
                let outs: Vec<Value> = match &b.kind {
                    BlockKind::Gate(g) => {
                        let mut bits = Vec::with_capacity(g.arity());
                        for (pi, p) in b.inputs.iter().enumerate() {
                            bits.push(need_bool(&read(pi, &cur), t, &b.id, &p.port)?);
                        }
                        alloc::vec![Value::Bool(
                            eval_gate(*g, &bits).expect("arity checked by validate")
                        )]
                    }
                    BlockKind::Rs { .. } => {
                        let set = need_bool(&read(0, &cur), t, &b.id, "set")?;
                        let reset = need_bool(&read(1, &cur), t, &b.id, "reset")?;
                        let prev_q = match &state[bi] {
                            BlockState::Rs { prev_q } => *prev_q,
                            _ => unreachable!(),
                        };
                        let q = rs_latch(set, reset, prev_q);
                        state[bi] = BlockState::Rs { prev_q: q };
                        alloc::vec![Value::Bool(q)]
                    }
                    BlockKind::Sel => {
                        let g = need_bool(&read(0, &cur), t, &b.id, "g")?;
                        alloc::vec![sel(g, read(1, &cur), read(2, &cur))]
                    }
                    BlockKind::Ton { pt } => {
                        let input = need_bool(&read(0, &cur), t, &b.id, "in")?;
                        let timer = match &mut state[bi] {
                            BlockState::Timer(s) => s,
                            _ => unreachable!(),
                        };
                        if at_sample {
                            timer.step(now, input, *pt, first_sample);
                        }
                        let d = Duration::from_raw(timer.acc);
                        let q = d >= *pt;
                        let et = if input { d } else { Duration::ZERO };
                        alloc::vec![Value::Bool(q), Value::Time(et)]
                    }
                    BlockKind::Tof { pt } => {
                        let input = need_bool(&read(0, &cur), t, &b.id, "in")?;
                        let (timer, seen) = match &mut state[bi] {
                            BlockState::Tof { timer, seen } => (timer, seen),
                            _ => unreachable!(),
                        };
                        if at_sample {
                            timer.step(now, !input, *pt, first_sample);
                            *seen |= input;
                        }
                        let d_low = Duration::from_raw(timer.acc);
                        let seen = *seen;
                        let q = input || (seen && d_low < *pt);
                        let et = if input || !seen { Duration::ZERO } else { d_low };
                        alloc::vec![Value::Bool(q), Value::Time(et)]
                    }
                    BlockKind::Tp { pt } => {
                        let input = need_bool(&read(0, &cur), t, &b.id, "in")?;
                        if at_sample {
                            let tp = match &mut state[bi] {
                                BlockState::Tp(s) => s,
                                _ => unreachable!(),
                            };
                            let latched = tp.step(now, input, *pt, first_sample);
                            tp_latched.insert(bi, latched);
                        }
                        let (q, et) = *tp_latched.get(&bi).unwrap_or(&(false, Duration::ZERO));
                        alloc::vec![Value::Bool(q), Value::Time(et)]
                    }
                    BlockKind::Init => alloc::vec![Value::Bool(t == 0)],
                    BlockKind::Const { value } => alloc::vec![value.clone()],
                    BlockKind::IsPressed => {
                        let m = read(0, &cur);
                        let st = m.as_pb_status().ok_or_else(|| EvalFault {
                            tick: t,
                            block: b.id.clone(),
                            kind: EvalFaultKind::TypeMismatch {
                                port: String::from("m"),
                                got: m.domain(),
                            },
                        })?;
                        alloc::vec![Value::Bool(st == PbStatus::Pressed)]
                    }
                    BlockKind::BoolTable { rows } => {
                        let a = need_bool(&read(0, &cur), t, &b.id, "a")?;
                        let bb = need_bool(&read(1, &cur), t, &b.id, "b")?;
                        let hits: Vec<&BoolTableRow> =
                            rows.iter().filter(|r| r.a == a && r.b == bb).collect();
                        match hits.as_slice() {
                            [] => {
                                return Err(EvalFault {
                                    tick: t,
                                    block: b.id.clone(),
                                    kind: EvalFaultKind::TableGap,
                                }
                                .into())
                            }
                            [row] => alloc::vec![Value::Bool(row.out)],
                            _ => {
                                return Err(EvalFault {
                                    tick: t,
                                    block: b.id.clone(),
                                    kind: EvalFaultKind::TableOverlap,
                                }
                                .into())
                            }
                        }
                    }
                };
                for (pi, v) in outs.into_iter().enumerate() {
                    cur[self.wire_index[&b.outputs[pi].wire]] = Some(v);
                }
            }

            if at_sample {
                cursor += 1;
            }
            for (idx, v) in cur.into_iter().enumerate() {
                let v = v.expect("every wire has a driver");
                traces[idx].push(v.clone());
                prev[idx] = v;
            }
        }

        let wires = self
            .wire_names
            .iter()
            .cloned()
            .zip(traces.into_iter().map(|vs| Trajectory::new(vs, domain).unwrap()))
            .collect();
        Ok(SimTrace { wires })
    }
}
