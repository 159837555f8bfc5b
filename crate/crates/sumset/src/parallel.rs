//! Thread fan-out for searches.
//!
//! Workers pull unit indices from a shared counter and keep their own
//! partial results; nothing else is shared during a scan. Results are
//! merged in unit order afterwards, so the output does not depend on
//! scheduling or on the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use sumset_core::explore::{
    conjecture_cell, conjecture_cells, finish, plan, scan_unit, ConjectureCell, Partial, SearchReport, SearchSpec,
};
use sumset_core::{PrimeModulus, Result};

/// Applies `job` to every index in `0..n` on `workers` threads and returns
/// the results in index order.
pub fn map_indexed<T, F>(n: usize, workers: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = workers.clamp(1, n.max(1));
    if workers == 1 {
        return (0..n).map(job).collect();
    }
    let next = AtomicUsize::new(0);
    let mut tagged: Vec<(usize, T)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= n {
                            break mine;
                        }
                        mine.push((i, job(i)));
                    }
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    tagged.sort_unstable_by_key(|(i, _)| *i);
    tagged.into_iter().map(|(_, t)| t).collect()
}

/// Runs a search on `spec.workers` threads.
pub fn run_search(spec: &SearchSpec, budget: u128) -> Result<(SearchReport, Partial)> {
    let units = plan(spec, budget)?;
    let partial = map_indexed(units.len(), spec.workers, |i| scan_unit(spec, units[i]))
        .into_iter()
        .fold(Partial::default(), Partial::merge);
    Ok((finish(spec, partial.clone())?, partial))
}

/// The conjecture table, one unreduced exhaustive scan per cell, cells
/// spread over `workers` threads.
pub fn run_conjecture_scan(p: PrimeModulus, max_s: usize, workers: usize, budget: u128) -> Result<Vec<ConjectureCell>> {
    let cells = conjecture_cells(p, max_s);
    for spec in &cells {
        plan(spec, budget)?;
    }
    map_indexed(cells.len(), workers, |i| {
        let spec = &cells[i];
        let partial =
            plan(spec, budget)?.into_iter().map(|u| scan_unit(spec, u)).fold(Partial::default(), Partial::merge);
        conjecture_cell(spec, partial)
    })
    .into_iter()
    .collect()
}
