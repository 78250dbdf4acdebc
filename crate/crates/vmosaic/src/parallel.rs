//! Multi-threaded sweep driver and the sweep TSV format.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use vmosaic_core::search::{admit, shard_count, sweep_shard, SearchError, SweepConfig, SweepResult};

use crate::text::print_mosaic;

/// Sweep with `config.workers` threads pulling shards from a shared counter.
/// Shard results are merged in shard order, so the result does not depend on
/// the worker count.
pub fn sweep_parallel(config: &SweepConfig) -> Result<SweepResult, SearchError> {
    admit(config)?;
    let shards = shard_count(config.n);
    let workers = config.workers.clamp(1, shards.max(1));
    let next = AtomicUsize::new(0);
    let done: Mutex<Vec<(usize, Result<SweepResult, SearchError>)>> = Mutex::new(Vec::with_capacity(shards));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let shard = next.fetch_add(1, Ordering::Relaxed);
                if shard >= shards {
                    break;
                }
                let r = sweep_shard(config, shard);
                let failed = r.is_err();
                done.lock().expect("no worker panicked").push((shard, r));
                if failed {
                    next.store(shards, Ordering::Relaxed);
                }
            });
        }
    });
    let mut parts = done.into_inner().expect("no worker panicked");
    parts.sort_by_key(|(k, _)| *k);
    let mut result = SweepResult::default();
    for (_, part) in parts {
        result.merge(part?);
    }
    Ok(result)
}

/// A mosaic text form on one line, rows separated by `|`.
pub fn witness_field(text: &str) -> String {
    text.trim_end().replace('\n', "|")
}

pub fn parse_witness_field(field: &str) -> String {
    let mut s = field.replace('|', "\n");
    s.push('\n');
    s
}

/// TSV of a sweep: fingerprint, minimal genus, crossing tiles of the witness,
/// mosaic count and witness mosaic, one fingerprint per line.
pub fn sweep_tsv(result: &SweepResult) -> String {
    let mut out = String::from("# fingerprint\tmin_genus\tcrossing_tiles\tcount\twitness\n");
    for (fp, e) in &result.entries {
        let _ = writeln!(
            out,
            "{fp}\t{}\t{}\t{}\t{}",
            e.min_genus,
            e.crossing_tiles,
            e.count,
            witness_field(&print_mosaic(&e.witness))
        );
    }
    out
}
