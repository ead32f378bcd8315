//! Executable horizontal condition tables: rows of guard -> result, with
//! `NC` ("no change") results resolved against the previous value.
//!
//! Healthiness of a table means completeness (some row applies to every
//! context) and disjointness (no two rows overlap). The concrete tables of
//! the timer blocks and the two case-study subsystems are built here.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::time::{Duration, Tick};
use crate::value::PbOutput;

/// A row result: either a function of the context or "no change".
pub enum RowResult<C, V> {
    Value(Box<dyn Fn(&C) -> V + Send + Sync>),
    NoChange,
}

pub struct TableRow<C, V> {
    label: String,
    guard: Box<dyn Fn(&C) -> bool + Send + Sync>,
    result: RowResult<C, V>,
}

impl<C, V> TableRow<C, V> {
    pub fn label(&self) -> &str {
        &self.label
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFaultKind {
    /// No row guard held.
    Gap,
    /// Two row guards held at once.
    Overlap { first: usize, second: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableFault {
    pub tick: Tick,
    pub kind: TableFaultKind,
}

impl fmt::Display for TableFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TableFaultKind::Gap => write!(f, "no table row applies at tick {}", self.tick),
            TableFaultKind::Overlap { first, second } => write!(
                f,
                "table rows {first} and {second} overlap at tick {}",
                self.tick
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TableFault {}

/// A horizontal condition table over contexts of type `C` producing values
/// of type `V`.
pub struct TableSpec<C, V> {
    name: String,
    rows: Vec<TableRow<C, V>>,
    initial: Option<V>,
}

impl<C, V: Clone> TableSpec<C, V> {
    pub fn new(name: &str) -> Self {
        TableSpec { name: String::from(name), rows: Vec::new(), initial: None }
    }

    pub fn with_initial(name: &str, initial: V) -> Self {
        TableSpec { name: String::from(name), rows: Vec::new(), initial: Some(initial) }
    }

    pub fn row(
        mut self,
        label: &str,
        guard: impl Fn(&C) -> bool + Send + Sync + 'static,
        result: impl Fn(&C) -> V + Send + Sync + 'static,
    ) -> Self {
        self.rows.push(TableRow {
            label: String::from(label),
            guard: Box::new(guard),
            result: RowResult::Value(Box::new(result)),
        });
        self
    }

    pub fn row_const(
        self,
        label: &str,
        guard: impl Fn(&C) -> bool + Send + Sync + 'static,
        value: V,
    ) -> Self
    where
        V: Send + Sync + 'static,
    {
        self.row(label, guard, move |_| value.clone())
    }

    /// A "no change" row; requires an initial value on the table.
    pub fn row_nc(
        mut self,
        label: &str,
        guard: impl Fn(&C) -> bool + Send + Sync + 'static,
    ) -> Self {
        assert!(self.initial.is_some(), "NC row requires a declared initial value");
        self.rows.push(TableRow {
            label: String::from(label),
            guard: Box::new(guard),
            result: RowResult::NoChange,
        });
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rows(&self) -> &[TableRow<C, V>] {
        &self.rows
    }

    pub fn initial(&self) -> Option<&V> {
        self.initial.as_ref()
    }

    /// Indices of all rows whose guard holds in `ctx`.
    pub fn matching(&self, ctx: &C) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| (r.guard)(ctx))
            .map(|(i, _)| i)
            .collect()
    }

    /// Evaluate requiring exactly one applicable row; `prev` resolves NC
    /// (falling back to the declared initial value).
    pub fn eval_strict(&self, ctx: &C, prev: Option<&V>) -> Result<V, TableFaultKind> {
        let rows = self.matching(ctx);
        match rows.as_slice() {
            [] => Err(TableFaultKind::Gap),
            [i] => Ok(match &self.rows[*i].result {
                RowResult::Value(f) => f(ctx),
                RowResult::NoChange => prev
                    .or(self.initial.as_ref())
                    .expect("NC row without previous or initial value")
                    .clone(),
            }),
            [i, j, ..] => Err(TableFaultKind::Overlap { first: *i, second: *j }),
        }
    }
}

/// Evaluation context for the on-delay timer tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TonCtx {
    pub input: bool,
    /// The `timer_i` value at the current tick.
    pub elapsed: Duration,
    pub preset: Duration,
}

/// Q-table of the tolerance-aware on-delay timer: a dichotomy on elapsed
/// time.
pub fn ton_q_table() -> TableSpec<TonCtx, bool> {
    TableSpec::new("ton-q")
        .row_const("d >= PT", |c: &TonCtx| c.elapsed >= c.preset, true)
        .row_const("d < PT", |c: &TonCtx| c.elapsed < c.preset, false)
}

/// ET table as literally printed: the first two rows are not conjoined
/// with `IN`, so they overlap the `!IN` row whenever the input is low.
pub fn ton_et_literal_table() -> TableSpec<TonCtx, Duration> {
    TableSpec::new("ton-et-literal")
        .row("d >= PT", |c: &TonCtx| c.elapsed >= c.preset, |c| c.preset)
        .row("d < PT", |c: &TonCtx| c.elapsed < c.preset, |c| c.elapsed)
        .row_const("!IN", |c: &TonCtx| !c.input, Duration::ZERO)
}

/// Repaired ET table with the elapsed-time rows conjoined with `IN`.
pub fn ton_et_repaired_table() -> TableSpec<TonCtx, Duration> {
    TableSpec::new("ton-et")
        .row(
            "IN & d >= PT",
            |c: &TonCtx| c.input && c.elapsed >= c.preset,
            |c| c.preset,
        )
        .row(
            "IN & d < PT",
            |c: &TonCtx| c.input && c.elapsed < c.preset,
            |c| c.elapsed,
        )
        .row_const("!IN", |c: &TonCtx| !c.input, Duration::ZERO)
}

/// Evaluation context for the pushbutton tables. `debounced` and `stuck`
/// are the sampled sustain operators at the current tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PbCtx {
    pub pressed: bool,
    pub debounced: bool,
    pub stuck: bool,
}

/// Original four-row pushbutton requirements table. Disjointness fails on
/// unfiltered inputs: a spike can make `m = e_NotPressed` coincide with a
/// frozen `debounced`.
pub fn pushbutton_original_table() -> TableSpec<PbCtx, PbOutput> {
    TableSpec::new("pushbutton-original")
        .row_const("m = e_NotPressed", |c: &PbCtx| !c.pressed, PbOutput::NotDebounced)
        .row_const(
            "m = e_Pressed & !debounced",
            |c: &PbCtx| c.pressed && !c.debounced,
            PbOutput::NotDebounced,
        )
        .row_const(
            "debounced & !stuck",
            |c: &PbCtx| c.debounced && !c.stuck,
            PbOutput::Debounced,
        )
        .row_const("stuck", |c: &PbCtx| c.stuck, PbOutput::Stuck)
}

/// Revised table with the first two rows collapsed to `!debounced`.
pub fn pushbutton_revised_table() -> TableSpec<PbCtx, PbOutput> {
    TableSpec::new("pushbutton-revised")
        .row_const("!debounced", |c: &PbCtx| !c.debounced, PbOutput::NotDebounced)
        .row_const(
            "debounced & !stuck",
            |c: &PbCtx| c.debounced && !c.stuck,
            PbOutput::Debounced,
        )
        .row_const("stuck", |c: &PbCtx| c.stuck, PbOutput::Stuck)
}

/// The collapsed first row read literally as `!pressed & !stuck`. Not
/// equivalent to the two rows it replaces (pressed-but-not-yet-debounced is
/// uncovered); kept so the divergence can be reported rather than guessed
/// away.
pub fn pushbutton_revised_literal_table() -> TableSpec<PbCtx, PbOutput> {
    TableSpec::new("pushbutton-revised-literal")
        .row_const(
            "!pressed & !stuck",
            |c: &PbCtx| !c.pressed && !c.stuck,
            PbOutput::NotDebounced,
        )
        .row_const(
            "debounced & !stuck",
            |c: &PbCtx| c.debounced && !c.stuck,
            PbOutput::Debounced,
        )
        .row_const("stuck", |c: &PbCtx| c.stuck, PbOutput::Stuck)
}

/// Evaluation context for the trip sealed-in requirements table. `held` is
/// the sampled sustain of the trip condition at the current tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SealedInCtx {
    pub any_parm_trip: bool,
    pub held: bool,
    pub man_reset_req: bool,
}

/// Four-row trip sealed-in requirements table; the output is sealed in via
/// the NC rows, with initial value true.
pub fn sealedin_req_table() -> TableSpec<SealedInCtx, bool> {
    TableSpec::with_initial("sealedin-req", true)
        .row_const(
            "Any_parm_trip & held",
            |c: &SealedInCtx| c.any_parm_trip && c.held,
            true,
        )
        .row_nc("Any_parm_trip & !held", |c: &SealedInCtx| {
            c.any_parm_trip && !c.held
        })
        .row_const(
            "!Any_parm_trip & Man_reset_req",
            |c: &SealedInCtx| !c.any_parm_trip && c.man_reset_req,
            false,
        )
        .row_nc("!Any_parm_trip & !Man_reset_req", |c: &SealedInCtx| {
            !c.any_parm_trip && !c.man_reset_req
        })
}
