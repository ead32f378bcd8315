//! `fbv` — command-line front end for the function-block verification
//! workbench.
//!
//! Exit codes: 0 all checks passed, 1 a counterexample or witness was
//! found, 2 usage or configuration error, 3 enumeration refused because
//! the input space exceeds the cardinality cap.

mod diagram;
mod driver;
mod scenario;
mod trace_csv;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fbv_core::subsystems::sealedin_ctx_at;
use fbv_core::tables::{
    pushbutton_original_table, pushbutton_revised_literal_table, pushbutton_revised_table,
    sealedin_req_table, ton_et_literal_table, ton_et_repaired_table, ton_q_table, TableSpec,
    TonCtx,
};
use fbv_core::timing::timer_i;
use fbv_core::value::Domain;
use fbv_core::verify::{
    check_completeness, check_consistency, check_disjointness, pushbutton_ctx_at,
    pushbutton_space, sealedin_space, shrink, CaseInputs, CheckError, CheckReport,
    CorrectnessModel, Discipline, InputSpace, InputVar, PushbuttonModel, SealedInModel,
    TableHealth, DEFAULT_CASE_CAP,
};
use fbv_core::{Duration, SampleSchedule, TickDomain, TripEnum, Value};

use scenario::{Expectation, InputSpec, Scenario, ScheduleSpec, SystemRef};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REFUSED: u8 = 3;

#[derive(Parser)]
#[command(name = "fbv", version, about = "Discrete-time function-block verification workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one scenario file and emit the trace as CSV or a timing diagram.
    Simulate(SimulateArgs),
    /// Exhaustively check a built-in subsystem against its requirement.
    Verify(VerifyArgs),
    /// Check a decision table for completeness and disjointness over its
    /// reachable contexts.
    Tables(TablesArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Scenario JSON file.
    scenario: PathBuf,
    /// Write the trace as CSV to this file instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Render an ASCII timing diagram instead of CSV.
    #[arg(long)]
    diagram: bool,
    /// Comma-separated wire names to include (default: declared inputs and
    /// outputs).
    #[arg(long, value_delimiter = ',')]
    wires: Vec<String>,
    /// Compare the selected wires against a previously saved CSV trace and
    /// fail on any difference.
    #[arg(long)]
    compare_csv: Option<PathBuf>,
}

#[derive(Args)]
struct SpaceArgs {
    /// Base tick length (physical units per tick).
    #[arg(long, default_value_t = 1)]
    delta: u64,
    /// Horizon in ticks.
    #[arg(long)]
    horizon: Option<usize>,
    /// Sample-gap pattern in ticks, e.g. "2,3,2"; repeat the flag for
    /// multiple schedules.
    #[arg(long = "gaps")]
    gaps: Vec<String>,
    /// Minimum inter-sample gap in physical units (default: smallest gap).
    #[arg(long)]
    tmin: Option<u64>,
    /// Maximum inter-sample gap in physical units (default: largest gap).
    #[arg(long)]
    tmax: Option<u64>,
    /// Override a named constant, e.g. --const k_sealin_delay=3.
    #[arg(long = "const", value_parser = parse_kv)]
    consts: Vec<(String, u64)>,
    /// Refuse to enumerate more cases than this.
    #[arg(long, default_value_t = DEFAULT_CASE_CAP)]
    cap: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Subsystem to check.
    #[arg(long)]
    system: SystemArg,
    #[arg(long, default_value = "correctness")]
    check: CheckArg,
    /// Input discipline for free inputs (pushbutton only).
    #[arg(long, default_value = "filtered")]
    discipline: DisciplineArg,
    /// Write the first counterexample as a replayable scenario file.
    #[arg(long)]
    counterexample_out: Option<PathBuf>,
    /// Greedily minimize the counterexample before reporting it.
    #[arg(long)]
    shrink: bool,
    #[command(flatten)]
    space: SpaceArgs,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long)]
    table: TableArg,
    #[arg(long, default_value = "both")]
    check: HealthArg,
    /// Input discipline for the pushbutton-table context space.
    #[arg(long, default_value = "free-per-tick")]
    discipline: DisciplineArg,
    #[command(flatten)]
    space: SpaceArgs,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SystemArg {
    TripSealedinOriginal,
    TripSealedinRevised,
    Pushbutton,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum CheckArg {
    Correctness,
    Induction,
    Consistency,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum DisciplineArg {
    SampleAligned,
    FreePerTick,
    Filtered,
}

impl From<DisciplineArg> for Discipline {
    fn from(d: DisciplineArg) -> Discipline {
        match d {
            DisciplineArg::SampleAligned => Discipline::SampleAligned,
            DisciplineArg::FreePerTick => Discipline::FreePerTick,
            DisciplineArg::Filtered => Discipline::Filtered,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum TableArg {
    TonQ,
    TonEtLiteral,
    TonEt,
    PushbuttonOriginal,
    PushbuttonRevised,
    PushbuttonRevisedLiteral,
    SealedinReq,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum HealthArg {
    Completeness,
    Disjointness,
    Both,
}

fn parse_kv(s: &str) -> Result<(String, u64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s}"))?;
    let v = v.parse().map_err(|e| format!("bad value in {s}: {e}"))?;
    Ok((k.to_string(), v))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Simulate(args) => cmd_simulate(&args),
        Cmd::Verify(args) => cmd_verify(&args),
        Cmd::Tables(args) => cmd_tables(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn cmd_simulate(args: &SimulateArgs) -> Result<u8> {
    let scn = Scenario::load(&args.scenario)?;
    let base = args.scenario.parent().unwrap_or(Path::new(".")).to_path_buf();
    let domain = scn.domain()?;
    let schedule = scn.schedule(&domain)?;
    let net = scn.netlist(&base, &domain)?;
    let inputs = scn.input_trajectories(&domain)?;
    let trace = net
        .simulate(&inputs, &schedule, &domain)
        .map_err(|e| anyhow::anyhow!("simulation failed: {e}"))?;

    let selected: Vec<String> = if args.wires.is_empty() {
        net.inputs
            .iter()
            .map(|i| i.wire.clone())
            .chain(net.outputs.iter().cloned())
            .collect()
    } else {
        args.wires.clone()
    };
    let mut shown = Vec::new();
    for name in &selected {
        let traj = trace
            .wire(name)
            .with_context(|| format!("no wire named {name}"))?;
        shown.push((name.clone(), traj.clone()));
    }

    if let Some(path) = &args.csv {
        let mut file = std::fs::File::create(path)
            .with_context(|| format!("creating {}", path.display()))?;
        trace_csv::write_csv(&shown, &mut file)?;
    }
    if args.diagram {
        print!("{}", diagram::render(&shown));
    } else if args.csv.is_none() {
        trace_csv::write_csv(&shown, &mut std::io::stdout().lock())?;
    }

    let mut failed = false;
    if let Some(path) = &args.compare_csv {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let saved = trace_csv::read_csv(&text, &domain)?;
        if saved != shown {
            eprintln!("trace differs from {}", path.display());
            failed = true;
        }
    }
    for exp in &scn.expect {
        let traj = trace
            .wire(&exp.wire)
            .with_context(|| format!("expectation on unknown wire {}", exp.wire))?;
        let got = traj.at(exp.tick);
        if got != exp.value {
            eprintln!(
                "expectation failed: wire {} at tick {}: expected {}, got {}",
                exp.wire, exp.tick, exp.value, got
            );
            failed = true;
        }
    }
    Ok(if failed { EXIT_FAIL } else { EXIT_PASS })
}

/// Resolved enumeration parameters shared by `verify` and `tables`.
struct ResolvedSpace {
    domain: TickDomain,
    schedules: Vec<SampleSchedule>,
    consts: BTreeMap<String, u64>,
    cap: u64,
}

fn resolve_space(
    args: &SpaceArgs,
    default_horizon: usize,
    default_gaps: &[&str],
    default_consts: &[(&str, u64)],
) -> Result<ResolvedSpace> {
    let horizon = args.horizon.unwrap_or(default_horizon);
    let domain = TickDomain::new(args.delta, horizon).map_err(|e| anyhow::anyhow!("{e}"))?;

    let gap_specs: Vec<String> = if args.gaps.is_empty() {
        default_gaps.iter().map(|s| s.to_string()).collect()
    } else {
        args.gaps.clone()
    };
    let mut gap_lists = Vec::new();
    for spec in &gap_specs {
        let gaps: Vec<usize> = spec
            .split(',')
            .map(|g| g.trim().parse().with_context(|| format!("bad gap list {spec}")))
            .collect::<Result<_>>()?;
        if gaps.is_empty() || gaps.contains(&0) {
            bail!("gap list {spec} must be non-empty positive ticks");
        }
        gap_lists.push(gaps);
    }
    let min_gap = gap_lists.iter().flatten().min().copied().unwrap() as u64;
    let max_gap = gap_lists.iter().flatten().max().copied().unwrap() as u64;
    let tmin = Duration::new(args.tmin.unwrap_or(min_gap * args.delta), &domain)
        .map_err(|e| anyhow::anyhow!("tmin: {e}"))?;
    let tmax = Duration::new(args.tmax.unwrap_or(max_gap * args.delta), &domain)
        .map_err(|e| anyhow::anyhow!("tmax: {e}"))?;

    let mut schedules = Vec::new();
    for gaps in &gap_lists {
        // Tile the pattern across the horizon so short specs are convenient.
        let mut tiled = Vec::new();
        let mut t = 0;
        for &g in gaps.iter().cycle() {
            if t + g > horizon {
                break;
            }
            tiled.push(g);
            t += g;
        }
        schedules.push(
            SampleSchedule::from_gaps(&tiled, tmin, tmax, &domain)
                .map_err(|e| anyhow::anyhow!("schedule from gaps {gaps:?}: {e}"))?,
        );
    }

    let mut consts: BTreeMap<String, u64> =
        default_consts.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    for (k, v) in &args.consts {
        if !consts.contains_key(k) {
            bail!("unknown constant {k}; expected one of {:?}", consts.keys());
        }
        consts.insert(k.clone(), *v);
    }
    Ok(ResolvedSpace { domain, schedules, consts, cap: args.cap })
}

fn check_exit(e: CheckError) -> Result<u8> {
    match e {
        CheckError::CardinalityExceeded { count, cap } => {
            eprintln!("refused: {count} cases exceed the cap of {cap}");
            Ok(EXIT_REFUSED)
        }
        CheckError::Sim { .. } => bail!("{e}"),
    }
}

fn describe_inputs(inputs: &CaseInputs) -> String {
    inputs
        .iter()
        .map(|(name, traj)| {
            let changes: Vec<String> = traj
                .change_points()
                .into_iter()
                .map(|t| format!("{t}:{}", traj.at(t)))
                .collect();
            format!("  {name}: init={} changes=[{}]", traj.at(0), changes.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn report_outcome(
    label: &str,
    report: &CheckReport,
    model: &dyn CorrectnessModel,
    space: &InputSpace,
    args: &VerifyArgs,
    resolved: &ResolvedSpace,
    system_ref: &SystemRef,
) -> Result<u8> {
    println!("{label}: enumerated {} cases, checked {}", report.enumerated, report.checked);
    let Some(cex) = &report.counterexample else {
        println!("PASS");
        return Ok(EXIT_PASS);
    };
    println!(
        "FAIL: case {} (schedule {}), tick {} [{}]",
        cex.case_index,
        cex.schedule_index,
        cex.tick,
        cex.category.as_str()
    );
    match (&cex.expected, &cex.actual) {
        (Some(e), Some(a)) => println!("  expected {e}, actual {a}"),
        (Some(e), None) => println!("  expected {e}, simulation faulted"),
        _ => {}
    }
    if !cex.detail.is_empty() {
        println!("  {}", cex.detail);
    }
    println!("{}", describe_inputs(&cex.inputs));

    let schedule = &space.schedules[cex.schedule_index];
    let (emit_inputs, emit_domain, emit_schedule, emit_tick) = if args.shrink {
        match shrink(model, &cex.inputs, schedule, &space.domain) {
            Some(s) => {
                println!(
                    "shrunk: horizon {} ticks, divergence at tick {}",
                    s.domain.horizon(),
                    s.tick
                );
                println!("{}", describe_inputs(&s.inputs));
                (s.inputs, s.domain, s.schedule, s.tick)
            }
            None => (cex.inputs.clone(), space.domain, schedule.clone(), cex.tick),
        }
    } else {
        (cex.inputs.clone(), space.domain, schedule.clone(), cex.tick)
    };

    if let Some(path) = &args.counterexample_out {
        // Re-simulate on the emitted inputs so the expectation pins the
        // implementation's actual (diverging) output value.
        let wires = model.netlist_inputs(&emit_inputs);
        let expect = match model.netlist().simulate(&wires, &emit_schedule, &emit_domain) {
            Ok(trace) => {
                let out = trace.wire(model.output_wire()).expect("output wire");
                vec![Expectation {
                    wire: model.output_wire().to_string(),
                    tick: emit_tick,
                    value: out.at(emit_tick),
                }]
            }
            Err(_) => vec![],
        };
        let scn = Scenario {
            delta: emit_domain.delta(),
            horizon: emit_domain.horizon(),
            schedule: ScheduleSpec {
                tmin: emit_schedule.tmin().value(),
                tmax: emit_schedule.tmax().value(),
                samples: Some(emit_schedule.samples().to_vec()),
                seed: None,
            },
            system: system_ref.clone(),
            consts: resolved.consts.clone(),
            inputs: wires
                .iter()
                .map(|(k, v)| (k.clone(), InputSpec::from_trajectory(v)))
                .collect(),
            expect,
            note: Some(format!(
                "diverges from the requirement at tick {emit_tick} ({}); the expectation \
                 pins the faulty output",
                cex.category.as_str()
            )),
        };
        std::fs::write(path, serde_json::to_string_pretty(&scn)?)
            .with_context(|| format!("writing {}", path.display()))?;
        println!("counterexample scenario written to {}", path.display());
    }
    Ok(EXIT_FAIL)
}

fn run_subsystem_check<M: CorrectnessModel + Sync>(
    model: &M,
    space: &InputSpace,
    args: &VerifyArgs,
    resolved: &ResolvedSpace,
    system_ref: &SystemRef,
) -> Result<u8> {
    let workers = driver::workers();
    let label = format!("{} {}", check_name(args.check), model.name());
    let report = match args.check {
        CheckArg::Correctness => driver::correctness(model, space, workers),
        CheckArg::Consistency => {
            check_consistency(model.netlist(), |i| model.netlist_inputs(i), space)
        }
        CheckArg::Induction => unreachable!("handled by the caller"),
    };
    match report {
        Ok(r) => report_outcome(&label, &r, model, space, args, resolved, system_ref),
        Err(e) => check_exit(e),
    }
}

fn check_name(c: CheckArg) -> &'static str {
    match c {
        CheckArg::Correctness => "correctness",
        CheckArg::Induction => "induction",
        CheckArg::Consistency => "consistency",
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    match args.system {
        SystemArg::TripSealedinOriginal | SystemArg::TripSealedinRevised => {
            let resolved = resolve_space(
                &args.space,
                8,
                &["2,2,2,2"],
                &[("k_sealin_delay", 3), ("left_tol", 1), ("right_tol", 1)],
            )?;
            let domain = resolved.domain;
            let k = |n: &str| Duration::new(resolved.consts[n] , &domain).unwrap();
            let consts = fbv_core::subsystems::SealedInConsts::new(
                k("k_sealin_delay"),
                k("left_tol"),
                k("right_tol"),
            )
            .map_err(|e| anyhow::anyhow!("{e}"))?;
            let (model, variant) = match args.system {
                SystemArg::TripSealedinOriginal => (SealedInModel::original(consts), "original"),
                _ => (SealedInModel::revised(consts), "revised"),
            };
            let system_ref = SystemRef::Builtin {
                subsystem: "trip_sealedin".to_string(),
                variant: Some(variant.to_string()),
            };
            let space = sealedin_space(domain, resolved.schedules.clone(), resolved.cap);
            if args.check == CheckArg::Induction {
                let label = format!("induction {}", model.name());
                return match driver::induction(&model, &space, driver::workers()) {
                    Ok(r) => report_outcome(&label, &r, &model, &space, args, &resolved, &system_ref),
                    Err(e) => check_exit(e),
                };
            }
            run_subsystem_check(&model, &space, args, &resolved, &system_ref)
        }
        SystemArg::Pushbutton => {
            if args.check == CheckArg::Induction {
                bail!("induction is only defined for the sealed-in subsystem");
            }
            let resolved = resolve_space(
                &args.space,
                10,
                &["2,2,2,2,2"],
                &[("k_debounce", 4), ("k_stuck", 8), ("left_tol", 2), ("right_tol", 2)],
            )?;
            let domain = resolved.domain;
            let k = |n: &str| Duration::new(resolved.consts[n], &domain).unwrap();
            let consts = fbv_core::subsystems::PushbuttonConsts::new(
                k("k_debounce"),
                k("k_stuck"),
                k("left_tol"),
                k("right_tol"),
            )
            .map_err(|e| anyhow::anyhow!("{e}"))?;
            let model = PushbuttonModel::new(consts);
            let system_ref = SystemRef::Builtin {
                subsystem: "pushbutton".to_string(),
                variant: None,
            };
            let space = pushbutton_space(
                domain,
                resolved.schedules.clone(),
                args.discipline.into(),
                resolved.cap,
            );
            run_subsystem_check(&model, &space, args, &resolved, &system_ref)
        }
    }
}

fn report_health(label: &str, health: &TableHealth) -> u8 {
    println!("{label}: enumerated {} cases, checked {}", health.enumerated, health.checked);
    match &health.witness {
        None => {
            println!("PASS");
            EXIT_PASS
        }
        Some(w) => {
            println!(
                "FAIL: case {} (schedule {}), tick {}: {:?} (rows {:?})",
                w.case_index, w.schedule_index, w.tick, w.kind, w.rows
            );
            println!("{}", describe_inputs(&w.inputs));
            EXIT_FAIL
        }
    }
}

fn run_health<C, V: Clone>(
    name: &str,
    which: HealthArg,
    table: &TableSpec<C, V>,
    space: &InputSpace,
    ctx_at: impl Fn(&CaseInputs, &SampleSchedule, &TickDomain, usize) -> C + Copy,
) -> Result<u8> {
    let mut worst = EXIT_PASS;
    if matches!(which, HealthArg::Completeness | HealthArg::Both) {
        match check_completeness(table, space, ctx_at) {
            Ok(h) => worst = worst.max(report_health(&format!("completeness {name}"), &h)),
            Err(e) => return check_exit(e),
        }
    }
    if matches!(which, HealthArg::Disjointness | HealthArg::Both) {
        match check_disjointness(table, space, ctx_at) {
            Ok(h) => worst = worst.max(report_health(&format!("disjointness {name}"), &h)),
            Err(e) => return check_exit(e),
        }
    }
    Ok(worst)
}

fn cmd_tables(args: &TablesArgs) -> Result<u8> {
    match args.table {
        TableArg::TonQ | TableArg::TonEtLiteral | TableArg::TonEt => {
            let resolved = resolve_space(&args.space, 6, &["2,2,2"], &[("pt", 3)])?;
            let domain = resolved.domain;
            let pt = Duration::new(resolved.consts["pt"], &domain)
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            let space = InputSpace {
                domain,
                schedules: resolved.schedules.clone(),
                vars: vec![InputVar::new("in", Domain::Bool, args.discipline.into())],
                cap: resolved.cap,
            };
            let ctx_at = move |inputs: &CaseInputs,
                               schedule: &SampleSchedule,
                               domain: &TickDomain,
                               t: usize| {
                let p = inputs["in"].map(|v| v.as_bool().unwrap());
                TonCtx {
                    input: p.at(t),
                    elapsed: timer_i(&p, schedule, pt, t, domain),
                    preset: pt,
                }
            };
            match args.table {
                TableArg::TonQ => run_health("ton-q", args.check, &ton_q_table(), &space, ctx_at),
                TableArg::TonEtLiteral => run_health(
                    "ton-et-literal",
                    args.check,
                    &ton_et_literal_table(),
                    &space,
                    ctx_at,
                ),
                _ => run_health("ton-et", args.check, &ton_et_repaired_table(), &space, ctx_at),
            }
        }
        TableArg::PushbuttonOriginal
        | TableArg::PushbuttonRevised
        | TableArg::PushbuttonRevisedLiteral => {
            let resolved = resolve_space(
                &args.space,
                10,
                &["2,2,2,2,2"],
                &[("k_debounce", 4), ("k_stuck", 8), ("left_tol", 2), ("right_tol", 2)],
            )?;
            let domain = resolved.domain;
            let k = |n: &str| Duration::new(resolved.consts[n], &domain).unwrap();
            let consts = fbv_core::subsystems::PushbuttonConsts::new(
                k("k_debounce"),
                k("k_stuck"),
                k("left_tol"),
                k("right_tol"),
            )
            .map_err(|e| anyhow::anyhow!("{e}"))?;
            let space =
                pushbutton_space(domain, resolved.schedules.clone(), args.discipline.into(), resolved.cap);
            let ctx_at = pushbutton_ctx_at(&consts);
            match args.table {
                TableArg::PushbuttonOriginal => run_health(
                    "pushbutton-original",
                    args.check,
                    &pushbutton_original_table(),
                    &space,
                    &ctx_at,
                ),
                TableArg::PushbuttonRevised => run_health(
                    "pushbutton-revised",
                    args.check,
                    &pushbutton_revised_table(),
                    &space,
                    &ctx_at,
                ),
                _ => run_health(
                    "pushbutton-revised-literal",
                    args.check,
                    &pushbutton_revised_literal_table(),
                    &space,
                    &ctx_at,
                ),
            }
        }
        TableArg::SealedinReq => {
            let resolved = resolve_space(
                &args.space,
                8,
                &["2,2,2,2"],
                &[("k_sealin_delay", 3), ("left_tol", 1), ("right_tol", 1)],
            )?;
            let domain = resolved.domain;
            let k = |n: &str| Duration::new(resolved.consts[n], &domain).unwrap();
            let consts = fbv_core::subsystems::SealedInConsts::new(
                k("k_sealin_delay"),
                k("left_tol"),
                k("right_tol"),
            )
            .map_err(|e| anyhow::anyhow!("{e}"))?;
            let space = sealedin_space(domain, resolved.schedules.clone(), resolved.cap);
            let ctx_at = move |inputs: &CaseInputs,
                               schedule: &SampleSchedule,
                               domain: &TickDomain,
                               t: usize| {
                let any = inputs["any_parm_trip"].map(|v| v.as_bool().unwrap());
                let trip = inputs["trip"].map(|v| match v {
                    Value::Trip(e) => *e,
                    _ => TripEnum::NotTrip,
                });
                let reset = inputs["man_reset_req"].map(|v| v.as_bool().unwrap());
                sealedin_ctx_at(&any, &trip, &reset, &consts, schedule, domain, t)
            };
            run_health("sealedin-req", args.check, &sealedin_req_table(), &space, ctx_at)
        }
    }
}
