//! Parallel check driver: splits the case-index range across worker
//! threads and merges the per-range reports. Deterministic because the
//! merge keeps the counterexample with the smallest case index.

use fbv_core::verify::{
    check_correctness_range, check_induction_range, CheckError, CheckReport, CorrectnessModel,
    InductiveModel, InputSpace,
};

/// Worker count from `FBV_WORKERS`, defaulting to 1.
pub fn workers() -> usize {
    std::env::var("FBV_WORKERS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1)
}

fn chunks(count: u64, workers: usize) -> Vec<std::ops::Range<u64>> {
    let workers = workers.min(count.max(1) as usize).max(1);
    let per = count.div_ceil(workers as u64);
    (0..workers as u64)
        .map(|i| (i * per).min(count)..((i + 1) * per).min(count))
        .filter(|r| !r.is_empty())
        .collect()
}

fn run_parallel(
    count: u64,
    workers: usize,
    run: impl Fn(std::ops::Range<u64>) -> Result<CheckReport, CheckError> + Sync,
) -> Result<CheckReport, CheckError> {
    let ranges = chunks(count, workers);
    if ranges.len() <= 1 {
        return run(0..count);
    }
    let run = &run;
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges.into_iter().map(|r| scope.spawn(move || run(r))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut merged = CheckReport { enumerated: 0, checked: 0, counterexample: None };
    for result in results {
        merged = merged.merge(result?);
    }
    Ok(merged)
}

pub fn correctness<M: CorrectnessModel + Sync + ?Sized>(
    model: &M,
    space: &InputSpace,
    workers: usize,
) -> Result<CheckReport, CheckError> {
    let count = space.check_cap()?;
    run_parallel(count, workers, |r| check_correctness_range(model, space, r))
}

pub fn induction<M: InductiveModel + Sync + ?Sized>(
    model: &M,
    space: &InputSpace,
    workers: usize,
) -> Result<CheckReport, CheckError> {
    let count = space.check_cap()?;
    run_parallel(count, workers, |r| check_induction_range(model, space, r))
}
