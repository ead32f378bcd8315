//! The two case-study subsystems: a trip sealed-in alarm latch and a
//! pushbutton debouncer, each as an executable requirements function plus a
//! candidate function-block network.
//!
//! Both the original and revised networks are kept: the original sealed-in
//! network has an initialization inconsistency (its latch starts low while
//! the requirement starts high), and the original pushbutton table is not
//! disjoint under input spikes. The verifier is expected to find both.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::blocks::GateKind;
use crate::netlist::{Block, BlockKind, FeedbackWire, InputDecl, Netlist};
use crate::tables::{
    pushbutton_revised_literal_table, pushbutton_revised_table, PbCtx, SealedInCtx, TableFault,
    TableFaultKind, TableSpec,
};
use crate::time::{Duration, SampleSchedule, Tick, TickDomain, Trajectory};
use crate::timing::{held_for_i_trajectory, TimingError};
use crate::value::{Domain, PbOutput, PbStatus, TripEnum, Value};

/// Implementation-level reading of the trip alarm input: the engineers
/// interpret `e_NotTrip` as TRUE, so the boolean wire is the negation of
/// "tripped".
pub fn abst_parm_trip(v: TripEnum) -> bool {
    v == TripEnum::NotTrip
}

/// Constants of the trip sealed-in subsystem. The deterministic
/// requirement detects a trip sustained for `k_sealin_delay - left_tol`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SealedInConsts {
    pub k_sealin_delay: Duration,
    pub left_tol: Duration,
    pub right_tol: Duration,
}

impl SealedInConsts {
    pub fn new(
        k_sealin_delay: Duration,
        left_tol: Duration,
        right_tol: Duration,
    ) -> Result<Self, TimingError> {
        if left_tol > k_sealin_delay {
            return Err(TimingError::ToleranceExceedsDuration {
                duration: k_sealin_delay.value(),
                left_tol: left_tol.value(),
            });
        }
        Ok(SealedInConsts { k_sealin_delay, left_tol, right_tol })
    }

    /// The single duration used consistently by requirement and timer.
    pub fn effective_delay(&self) -> Duration {
        self.k_sealin_delay.checked_sub(self.left_tol).unwrap()
    }
}

/// One step of the sealed-in recursion at a non-initial tick.
pub fn trip_sealedin_step(any_parm_trip: bool, held: bool, man_reset_req: bool, prev: bool) -> bool {
    match (any_parm_trip, held, man_reset_req) {
        (true, true, _) => true,
        (true, false, _) => prev,
        (false, _, true) => false,
        (false, _, false) => prev,
    }
}

/// Executable sealed-in requirement: true at tick 0, then the four-row
/// table with `held` the sampled sustain of "tripped" over
/// `k_sealin_delay - left_tol`.
pub fn trip_sealedin_req(
    any_parm_trip: &Trajectory<bool>,
    trip: &Trajectory<TripEnum>,
    man_reset_req: &Trajectory<bool>,
    consts: &SealedInConsts,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> Trajectory<bool> {
    let tripped = trip.map(|v| *v == TripEnum::Trip);
    let held = held_for_i_trajectory(&tripped, consts.effective_delay(), schedule, domain);
    let mut out = Vec::with_capacity(domain.horizon() + 1);
    out.push(true);
    for t in 1..=domain.horizon() {
        let prev = out[t - 1];
        out.push(trip_sealedin_step(
            any_parm_trip.at(t),
            held.at(t),
            man_reset_req.at(t),
            prev,
        ));
    }
    Trajectory::new(out, domain).unwrap()
}

fn sealedin_core_blocks(consts: &SealedInConsts, latch_out: &str) -> Vec<Block> {
    vec![
        Block::new("NOT_Trip", BlockKind::Gate(GateKind::Not), &[("x", "trip")], &[("y", "w6")]),
        Block::new(
            "TON_Sealin",
            BlockKind::Ton { pt: consts.effective_delay() },
            &[("in", "w6")],
            &[("q", "w1"), ("et", "et_sealin")],
        ),
        Block::new(
            "CONJ_Trip",
            BlockKind::Gate(GateKind::Conj),
            &[("a", "any_parm_trip"), ("b", "w1")],
            &[("y", "w2")],
        ),
        Block::new(
            "DISJ_Seal",
            BlockKind::Gate(GateKind::Disj),
            &[("a", "w2"), ("b", "fb_sealedin")],
            &[("y", "w3")],
        ),
        Block::new(
            "NOT_Parm",
            BlockKind::Gate(GateKind::Not),
            &[("x", "any_parm_trip")],
            &[("y", "w5")],
        ),
        Block::new(
            "CONJ_Reset",
            BlockKind::Gate(GateKind::Conj),
            &[("a", "w5"), ("b", "man_reset_req")],
            &[("y", "w4")],
        ),
        Block::new(
            "RS_Sealin",
            BlockKind::Rs { q_init: false },
            &[("set", "w3"), ("reset", "w4")],
            &[("q", latch_out)],
        ),
    ]
}

fn sealedin_inputs() -> Vec<InputDecl> {
    vec![
        InputDecl { wire: String::from("any_parm_trip"), domain: Domain::Bool },
        InputDecl { wire: String::from("trip"), domain: Domain::Bool },
        InputDecl { wire: String::from("man_reset_req"), domain: Domain::Bool },
    ]
}

/// The originally proposed network: the latch output is wired straight to
/// the subsystem output, so the output starts false while the requirement
/// starts true.
pub fn trip_sealedin_original(consts: &SealedInConsts) -> Netlist {
    Netlist {
        name: String::from("trip_sealedin_original"),
        inputs: sealedin_inputs(),
        outputs: vec![String::from("trip_sealedin")],
        blocks: sealedin_core_blocks(consts, "trip_sealedin"),
        feedback: vec![FeedbackWire {
            wire: String::from("fb_sealedin"),
            from: String::from("trip_sealedin"),
            init: Value::Bool(false),
        }],
    }
}

/// Revised network: a multiplexer forces the output true at the initial
/// tick and passes the latch through afterwards.
pub fn trip_sealedin_revised(consts: &SealedInConsts) -> Netlist {
    let mut blocks = sealedin_core_blocks(consts, "q1");
    blocks.push(Block::new("INIT_Sealin", BlockKind::Init, &[], &[("y", "is_init")]));
    blocks.push(Block::new(
        "TRUE_Sealin",
        BlockKind::Const { value: Value::Bool(true) },
        &[],
        &[("y", "always_true")],
    ));
    blocks.push(Block::new(
        "SEL_Sealin",
        BlockKind::Sel,
        &[("g", "is_init"), ("in0", "q1"), ("in1", "always_true")],
        &[("y", "trip_sealedin")],
    ));
    Netlist {
        name: String::from("trip_sealedin_revised"),
        inputs: sealedin_inputs(),
        outputs: vec![String::from("trip_sealedin")],
        blocks,
        feedback: vec![FeedbackWire {
            wire: String::from("fb_sealedin"),
            from: String::from("trip_sealedin"),
            init: Value::Bool(false),
        }],
    }
}

/// Constants of the pushbutton subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PushbuttonConsts {
    pub k_debounce: Duration,
    pub k_stuck: Duration,
    pub left_tol: Duration,
    pub right_tol: Duration,
}

impl PushbuttonConsts {
    pub fn new(
        k_debounce: Duration,
        k_stuck: Duration,
        left_tol: Duration,
        right_tol: Duration,
    ) -> Result<Self, TimingError> {
        if left_tol > k_debounce {
            return Err(TimingError::ToleranceExceedsDuration {
                duration: k_debounce.value(),
                left_tol: left_tol.value(),
            });
        }
        // A button must debounce before it can be stuck.
        assert!(k_debounce <= k_stuck, "k_debounce must not exceed k_stuck");
        Ok(PushbuttonConsts { k_debounce, k_stuck, left_tol, right_tol })
    }

    pub fn effective_debounce(&self) -> Duration {
        self.k_debounce.checked_sub(self.left_tol).unwrap()
    }

    pub fn effective_stuck(&self) -> Duration {
        self.k_stuck.checked_sub(self.left_tol).unwrap()
    }
}

/// The sampled `debounced` / `stuck` conditions feeding the pushbutton
/// tables.
pub fn pushbutton_conditions(
    m: &Trajectory<PbStatus>,
    consts: &PushbuttonConsts,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> (Trajectory<bool>, Trajectory<bool>, Trajectory<bool>) {
    let pressed = m.map(|v| *v == PbStatus::Pressed);
    let debounced =
        held_for_i_trajectory(&pressed, consts.effective_debounce(), schedule, domain);
    let stuck = held_for_i_trajectory(&pressed, consts.effective_stuck(), schedule, domain);
    (pressed, debounced, stuck)
}

/// Evaluate a pushbutton requirements table over a whole trajectory,
/// failing with the first tick at which the table is unhealthy.
pub fn pushbutton_req(
    m: &Trajectory<PbStatus>,
    consts: &PushbuttonConsts,
    schedule: &SampleSchedule,
    domain: &TickDomain,
    table: &TableSpec<PbCtx, PbOutput>,
) -> Result<Trajectory<PbOutput>, TableFault> {
    let (pressed, debounced, stuck) = pushbutton_conditions(m, consts, schedule, domain);
    let mut out = Vec::with_capacity(domain.horizon() + 1);
    for t in domain.ticks() {
        let ctx = PbCtx { pressed: pressed.at(t), debounced: debounced.at(t), stuck: stuck.at(t) };
        match table.eval_strict(&ctx, None) {
            Ok(v) => out.push(v),
            Err(kind) => return Err(TableFault { tick: t, kind }),
        }
    }
    Ok(Trajectory::new(out, domain).unwrap())
}

/// A tick at which the literal reading of the collapsed first row
/// (`!pressed & !stuck`) disagrees with the revised table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralDivergence {
    pub tick: Tick,
    pub revised: PbOutput,
    pub literal: Result<PbOutput, TableFaultKind>,
}

/// Compare the revised table against its literal collapsed reading on one
/// input; the two are not equivalent and the divergences are reported
/// rather than resolved.
pub fn pushbutton_literal_divergences(
    m: &Trajectory<PbStatus>,
    consts: &PushbuttonConsts,
    schedule: &SampleSchedule,
    domain: &TickDomain,
) -> Vec<LiteralDivergence> {
    let revised = pushbutton_revised_table();
    let literal = pushbutton_revised_literal_table();
    let (pressed, debounced, stuck) = pushbutton_conditions(m, consts, schedule, domain);
    let mut out = Vec::new();
    for t in domain.ticks() {
        let ctx = PbCtx { pressed: pressed.at(t), debounced: debounced.at(t), stuck: stuck.at(t) };
        let r = revised
            .eval_strict(&ctx, None)
            .expect("revised table is complete and disjoint");
        let l = literal.eval_strict(&ctx, None);
        if l != Ok(r) {
            out.push(LiteralDivergence { tick: t, revised: r, literal: l });
        }
    }
    out
}

/// Candidate pushbutton network: two on-delay timers staging the output
/// through a pair of multiplexers.
pub fn pushbutton_netlist(consts: &PushbuttonConsts) -> Netlist {
    Netlist {
        name: String::from("pushbutton"),
        inputs: vec![InputDecl { wire: String::from("m"), domain: Domain::PbStatus }],
        outputs: vec![String::from("f_pushbutton")],
        blocks: vec![
            Block::new("PRESSED", BlockKind::IsPressed, &[("m", "m")], &[("y", "pressed")]),
            Block::new(
                "TON_Debounce",
                BlockKind::Ton { pt: consts.effective_debounce() },
                &[("in", "pressed")],
                &[("q", "debounced"), ("et", "et_debounce")],
            ),
            Block::new(
                "TON_Stuck",
                BlockKind::Ton { pt: consts.effective_stuck() },
                &[("in", "pressed")],
                &[("q", "stuck"), ("et", "et_stuck")],
            ),
            Block::new(
                "V_NotDeb",
                BlockKind::Const { value: Value::PbOutput(PbOutput::NotDebounced) },
                &[],
                &[("y", "v_not_debounced")],
            ),
            Block::new(
                "V_Deb",
                BlockKind::Const { value: Value::PbOutput(PbOutput::Debounced) },
                &[],
                &[("y", "v_debounced")],
            ),
            Block::new(
                "V_Stuck",
                BlockKind::Const { value: Value::PbOutput(PbOutput::Stuck) },
                &[],
                &[("y", "v_stuck")],
            ),
            Block::new(
                "SEL_Deb",
                BlockKind::Sel,
                &[("g", "debounced"), ("in0", "v_not_debounced"), ("in1", "v_debounced")],
                &[("y", "w_deb")],
            ),
            Block::new(
                "SEL_Stuck",
                BlockKind::Sel,
                &[("g", "stuck"), ("in0", "w_deb"), ("in1", "v_stuck")],
                &[("y", "f_pushbutton")],
            ),
        ],
        feedback: vec![],
    }
}

/// Strict per-tick evaluation of [`sealedin_req_table`]; exposed so the
/// table-healthiness checks exercise the same contexts the requirement
/// visits.
pub fn sealedin_ctx_at(
    any_parm_trip: &Trajectory<bool>,
    trip: &Trajectory<TripEnum>,
    man_reset_req: &Trajectory<bool>,
    consts: &SealedInConsts,
    schedule: &SampleSchedule,
    domain: &TickDomain,
    t: Tick,
) -> SealedInCtx {
    let tripped = trip.map(|v| *v == TripEnum::Trip);
    let held = held_for_i_trajectory(&tripped, consts.effective_delay(), schedule, domain);
    SealedInCtx {
        any_parm_trip: any_parm_trip.at(t),
        held: held.at(t),
        man_reset_req: man_reset_req.at(t),
    }
}
