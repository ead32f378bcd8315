//! Acceptance gate: eight end-to-end criteria, each printing one PASS line
//! (or panicking with a FAIL line). All parameters and tolerances are
//! pinned here; changing them changes what the suite accepts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use fbv_core::blocks::{ton, ton_ideal};
use fbv_core::subsystems::{PushbuttonConsts, SealedInConsts};
use fbv_core::tables::{
    pushbutton_original_table, pushbutton_revised_table, sealedin_req_table,
    ton_et_literal_table, ton_et_repaired_table, ton_q_table, SealedInCtx, TableFaultKind,
    TonCtx,
};
use fbv_core::timing::{held_for_i, timer_i};
use fbv_core::verify::{
    check_completeness, check_consistency, check_correctness, check_disjointness,
    check_induction, pushbutton_ctx_at, pushbutton_space, sealedin_space, shrink,
    CorrectnessModel, Discipline, DivergenceCategory, PushbuttonModel,
    SealedInModel, DEFAULT_CASE_CAP,
};
use fbv_core::{Duration, SampleSchedule, TickDomain, Trajectory};

fn pass(n: usize, what: &str) {
    println!("criterion {n} PASS: {what}");
}

fn dur(n: u64, d: &TickDomain) -> Duration {
    Duration::of_ticks(n, d)
}

/// All maximal sample schedules over `domain` whose gaps are drawn from
/// `parts` (in ticks).
fn schedules_with_gaps(parts: &[usize], domain: &TickDomain) -> Vec<SampleSchedule> {
    let lo = *parts.iter().min().unwrap() as u64;
    let hi = *parts.iter().max().unwrap() as u64;
    let tmin = dur(lo, domain);
    let tmax = dur(hi, domain);
    let mut out = Vec::new();
    let mut stack = vec![vec![0usize]];
    while let Some(samples) = stack.pop() {
        let last = *samples.last().unwrap();
        if parts.iter().all(|&g| last + g > domain.horizon()) {
            out.push(SampleSchedule::new(samples, tmin, tmax, domain).unwrap());
            continue;
        }
        for &g in parts {
            if last + g <= domain.horizon() {
                let mut s = samples.clone();
                s.push(last + g);
                stack.push(s);
            }
        }
    }
    out
}

/// Criterion 1: the sustained-condition operator and the saturating timer
/// agree — `held_for_i(p, d)` iff `timer_i(p, d) >= d` — exhaustively over
/// every input, every tick, every maximal schedule with gaps in
/// {2, 3, 4} ticks, and every threshold d in {1..5} ticks, horizon 10.
#[test]
fn criterion_1_sustain_equals_saturating_timer() {
    let d = TickDomain::new(1, 10).unwrap();
    let schedules = schedules_with_gaps(&[2, 3, 4], &d);
    assert!(schedules.len() >= 20, "schedule enumeration collapsed");
    let mut checked = 0u64;
    for schedule in &schedules {
        for bits in 0u32..1 << 11 {
            let p = Trajectory::from_fn(&d, |t| bits >> t & 1 == 1);
            for dd in 1..=5u64 {
                let thr = dur(dd, &d);
                for t in d.ticks() {
                    let held = held_for_i(&p, thr, schedule, t, &d);
                    let timed = timer_i(&p, schedule, thr, t, &d) >= thr;
                    assert_eq!(
                        held, timed,
                        "criterion 1 FAIL: bits={bits:#b} d={dd} t={t} samples={:?}",
                        schedule.samples()
                    );
                    checked += 1;
                }
            }
        }
    }
    pass(1, &format!("held_for_i == (timer_i >= d) on {checked} points"));
}

fn sealedin_setup(horizon: usize, gaps: &[&[usize]]) -> (TickDomain, Vec<SampleSchedule>, SealedInConsts) {
    let d = TickDomain::new(1, horizon).unwrap();
    let schedules = gaps
        .iter()
        .map(|g| SampleSchedule::from_gaps(g, dur(2, &d), dur(3, &d), &d).unwrap())
        .collect();
    let consts = SealedInConsts::new(dur(3, &d), dur(1, &d), dur(1, &d)).unwrap();
    (d, schedules, consts)
}

/// Criterion 2: the original sealed-in network is wrong on every single
/// case — always at tick 0 — and the counterexample shrinks to the trivial
/// input (horizon 1, no change points).
#[test]
fn criterion_2_original_sealedin_init_defect() {
    let (d, schedules, consts) = sealedin_setup(8, &[&[2, 2, 2, 2]]);
    let model = SealedInModel::original(consts);
    let space = sealedin_space(d, schedules, DEFAULT_CASE_CAP);
    let mut failures = 0u64;
    for case in space.cases() {
        let trace = model
            .netlist()
            .simulate(&model.netlist_inputs(&case.inputs), &space.schedules[0], &d)
            .unwrap();
        let out = trace.bool_wire("trip_sealedin").unwrap();
        assert!(!out.at(0), "criterion 2 FAIL: case {} starts true", case.index);
        failures += 1;
    }
    assert_eq!(failures, 1 << 15);

    let report = check_correctness(&model, &space).unwrap();
    let cex = report.counterexample.expect("criterion 2 FAIL: no counterexample");
    assert_eq!(cex.tick, 0, "criterion 2 FAIL: divergence not at tick 0");
    assert_eq!(cex.category, DivergenceCategory::Init);

    let shrunk = shrink(&model, &cex.inputs, &space.schedules[0], &d)
        .expect("criterion 2 FAIL: shrink lost the divergence");
    assert_eq!(shrunk.domain.horizon(), 1, "criterion 2 FAIL: not minimal");
    assert!(shrunk.inputs.values().all(|t| t.change_points().is_empty()));
    pass(2, &format!("all {failures} cases wrong at tick 0; shrinks to the trivial input"));
}

/// Criterion 3: the revised sealed-in network passes consistency and
/// correctness on all 2^15 sample-aligned valuations of the 5-sample
/// schedule plus two irregular 4-sample schedules (delta = 1,
/// k_sealin_delay = 3, left_tol = right_tol = 1).
#[test]
fn criterion_3_revised_sealedin_verified() {
    let (d, schedules, consts) = sealedin_setup(8, &[&[2, 2, 2, 2], &[2, 3, 3], &[3, 3, 2]]);
    let model = SealedInModel::revised(consts);
    let space = sealedin_space(d, schedules, DEFAULT_CASE_CAP);
    let consistency = check_consistency(model.netlist(), |i| model.netlist_inputs(i), &space)
        .unwrap();
    assert!(
        consistency.passed(),
        "criterion 3 FAIL: consistency {:?}",
        consistency.counterexample
    );
    let correctness = check_correctness(&model, &space).unwrap();
    assert!(
        correctness.passed(),
        "criterion 3 FAIL: correctness {:?}",
        correctness.counterexample
    );
    assert_eq!(correctness.enumerated, (1 << 15) + (1 << 12) + (1 << 12));
    assert_eq!(correctness.enumerated, correctness.checked);
    pass(3, &format!("revised network correct on {} cases over 3 schedules", correctness.checked));
}

fn pushbutton_setup() -> (TickDomain, SampleSchedule, PushbuttonConsts) {
    let d = TickDomain::new(1, 10).unwrap();
    let sched =
        SampleSchedule::from_gaps(&[2, 2, 2, 2, 2], dur(2, &d), dur(2, &d), &d).unwrap();
    let consts = PushbuttonConsts::new(dur(4, &d), dur(8, &d), dur(2, &d), dur(2, &d)).unwrap();
    (d, sched, consts)
}

/// Criterion 4: the spike dichotomy. On free per-tick inputs the original
/// pushbutton table has a reachable overlap; restricted to filtered inputs
/// the revised table is healthy and the network matches the requirement
/// (delta = 1, horizon 10, every-2 sampling, k_debounce = 4, k_stuck = 8,
/// left_tol = right_tol = 2).
#[test]
fn criterion_4_pushbutton_spike_dichotomy() {
    let (d, sched, consts) = pushbutton_setup();
    let free = pushbutton_space(d, vec![sched.clone()], Discipline::FreePerTick, DEFAULT_CASE_CAP);
    let overlap =
        check_disjointness(&pushbutton_original_table(), &free, pushbutton_ctx_at(&consts))
            .unwrap();
    let witness = overlap.witness.expect("criterion 4 FAIL: no overlap on free inputs");
    assert!(matches!(witness.kind, TableFaultKind::Overlap { .. }));

    let filtered = pushbutton_space(d, vec![sched], Discipline::Filtered, DEFAULT_CASE_CAP);
    assert!(
        check_completeness(&pushbutton_revised_table(), &filtered, pushbutton_ctx_at(&consts))
            .unwrap()
            .passed(),
        "criterion 4 FAIL: revised table incomplete"
    );
    assert!(
        check_disjointness(&pushbutton_revised_table(), &filtered, pushbutton_ctx_at(&consts))
            .unwrap()
            .passed(),
        "criterion 4 FAIL: revised table not disjoint"
    );
    let model = PushbuttonModel::new(consts);
    let report = check_correctness(&model, &filtered).unwrap();
    assert!(report.passed(), "criterion 4 FAIL: {:?}", report.counterexample);
    assert!(report.checked < report.enumerated, "filter must exclude spiky cases");
    pass(
        4,
        &format!(
            "original table overlaps on spikes (case {}); revised verified on {} filtered cases",
            witness.case_index, report.checked
        ),
    );
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

/// Criterion 5: the on-delay timer waveform demo renders byte-identically
/// to the checked-in diagram (delta = 1, PT = 3, input edges at ticks
/// 2, 8, 10, 12, 14, 20, horizon 22; Q high on [5,8) and [17,20)).
#[test]
fn criterion_5_ton_waveform_golden() {
    let root = repo_root();
    let out = Command::new(env!("CARGO_BIN_EXE_fbv"))
        .arg("simulate")
        .arg(root.join("scenarios/ton_waveform.json"))
        .args(["--diagram", "--wires", "in,q,et"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "criterion 5 FAIL: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rendered = String::from_utf8(out.stdout).unwrap();
    let golden = std::fs::read_to_string(
        root.join("crates/fbv-cli/tests/golden/ton_waveform_diagram.txt"),
    )
    .unwrap();
    assert_eq!(rendered, golden, "criterion 5 FAIL: diagram drifted");
    let q_lane = rendered.lines().nth(2).unwrap();
    assert!(q_lane.contains("/==\\"), "criterion 5 FAIL: Q pulses missing");
    pass(5, "timer waveform diagram is byte-identical to the golden file");
}

/// Criterion 6: under every-tick sampling the sampled on-delay timer is
/// indistinguishable from the ideal one — exhaustive over all 2^12 inputs
/// at horizon 11 and presets PT in {1..5} ticks.
#[test]
fn criterion_6_ton_bridges_to_ideal() {
    let d = TickDomain::new(1, 11).unwrap();
    let sched = SampleSchedule::every_tick(&d);
    let mut checked = 0u64;
    for bits in 0u32..1 << 12 {
        let input = Trajectory::from_fn(&d, |t| bits >> t & 1 == 1);
        for pt in 1..=5u64 {
            let sampled = ton(&input, dur(pt, &d), &sched, &d);
            let ideal = ton_ideal(&input, dur(pt, &d), &d);
            assert_eq!(sampled, ideal, "criterion 6 FAIL: bits={bits:#b} pt={pt}");
            checked += 1;
        }
    }
    pass(6, &format!("sampled timer equals the ideal timer on {checked} runs"));
}

/// Criterion 7: table healthiness. The timer Q table and the repaired ET
/// table are complete and disjoint on the full context grid; the ET table
/// as literally written overlaps whenever the input is low; the sealed-in
/// requirements table is complete and disjoint on all 8 contexts.
#[test]
fn criterion_7_table_healthiness() {
    let d = TickDomain::new(1, 8).unwrap();
    // Full grid: elapsed and preset over 0..=8 ticks, both input phases.
    let mut literal_overlaps = 0u32;
    for input in [false, true] {
        for elapsed in 0..=8u64 {
            for preset in 0..=8u64 {
                let ctx = TonCtx { input, elapsed: dur(elapsed, &d), preset: dur(preset, &d) };
                assert_eq!(
                    ton_q_table().matching(&ctx).len(),
                    1,
                    "criterion 7 FAIL: ton-q unhealthy at {ctx:?}"
                );
                assert_eq!(
                    ton_et_repaired_table().matching(&ctx).len(),
                    1,
                    "criterion 7 FAIL: ton-et unhealthy at {ctx:?}"
                );
                let literal = ton_et_literal_table().matching(&ctx).len();
                if !input {
                    assert_eq!(literal, 2, "criterion 7 FAIL: literal ET must overlap");
                    literal_overlaps += 1;
                } else {
                    assert_eq!(literal, 1);
                }
            }
        }
    }
    for any in [false, true] {
        for held in [false, true] {
            for reset in [false, true] {
                let ctx = SealedInCtx { any_parm_trip: any, held, man_reset_req: reset };
                assert_eq!(
                    sealedin_req_table().matching(&ctx).len(),
                    1,
                    "criterion 7 FAIL: sealed-in table unhealthy at {ctx:?}"
                );
            }
        }
    }
    pass(7, &format!("q/et/sealed-in tables healthy; literal ET overlaps at {literal_overlaps} low-input contexts"));
}

/// Criterion 8: the inductive cross-check (base value plus step relation
/// against the implementation's own previous output) agrees with the
/// direct unrolled scan on every case, for both network variants.
#[test]
fn criterion_8_induction_matches_direct_scan() {
    let (d, schedules, consts) = sealedin_setup(8, &[&[2, 2, 2, 2]]);
    let space = sealedin_space(d, schedules, DEFAULT_CASE_CAP);
    let mut summary = BTreeMap::new();
    for (label, model) in [
        ("original", SealedInModel::original(consts)),
        ("revised", SealedInModel::revised(consts)),
    ] {
        let direct = check_correctness(&model, &space).unwrap();
        let inductive = check_induction(&model, &space).unwrap();
        assert_eq!(
            direct.passed(),
            inductive.passed(),
            "criterion 8 FAIL: verdicts disagree on {label}"
        );
        match (&direct.counterexample, &inductive.counterexample) {
            (Some(a), Some(b)) => {
                assert_eq!(
                    (a.case_index, a.tick),
                    (b.case_index, b.tick),
                    "criterion 8 FAIL: counterexamples disagree on {label}"
                );
            }
            (None, None) => {}
            _ => unreachable!(),
        }
        summary.insert(label, direct.passed());
    }
    assert_eq!(summary["original"], false);
    assert_eq!(summary["revised"], true);
    pass(8, "inductive and direct scans agree on both network variants");
}
