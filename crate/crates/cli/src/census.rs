//! Census runs: every pair of a given size (or a seeded sample), one record
//! per line, a summary footer, and byte-identical output regardless of the
//! worker count. Pairs are generated in canonical order, decided in parallel
//! chunks, and written back in order.

use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use matchcert_core::census::{
    field_pairs_exhaustive, group_pair_count, group_pairs_exhaustive,
    sample_field_pair, sample_group_pair,
};
use matchcert_core::fq::{ExtensionField, FqSubspace};
use matchcert_core::fq_matching::{criterion_verdict, find_linear_certificate};
use matchcert_core::group::{all_subgroups, FiniteAbelianGroup, GroupSubset, Subgroup};
use matchcert_core::group_matching::{
    find_certificate_with_subgroups, find_matching, naive_unmatchability_witness,
    DEFAULT_NAIVE_ENUMERATION_BOUND,
};
use matchcert_core::Error as CoreError;

use crate::verdict::{
    group_certificate_json, group_set_json, linear_certificate_json, subspace_json,
    witness_json,
};
use crate::{CliFailure, OutputFormat, EXIT_INCONSISTENT, EXIT_INVALID};

const MAX_CENSUS_PAIRS: u128 = 1_000_000;
const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy)]
pub enum CensusMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub mode: CensusMode,
    pub xcheck: bool,
    pub timing: bool,
    pub workers: Option<usize>,
    pub format: OutputFormat,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct CensusSummary {
    pub pairs: u64,
    pub matchable: u64,
    pub unmatchable: u64,
}

struct RecordOut {
    value: Value,
    matchable: bool,
    /// Short human form for the table format.
    table_line: String,
}

fn with_pool<T: Send>(
    workers: Option<usize>,
    job: impl FnOnce() -> T + Send,
) -> Result<T, CliFailure> {
    match workers {
        None => Ok(job()),
        Some(count) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(count.max(1))
                .build()
                .map_err(|e| CliFailure::new(EXIT_INVALID, format!("worker pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}


struct Emitter<'a> {
    out: &'a mut dyn Write,
    format: OutputFormat,
    records: Vec<Value>,
}

impl<'a> Emitter<'a> {
    fn new(out: &'a mut dyn Write, format: OutputFormat) -> Self {
        Self {
            out,
            format,
            records: Vec::new(),
        }
    }

    fn record(&mut self, rec: RecordOut) -> Result<(), CliFailure> {
        match self.format {
            OutputFormat::Jsonl => writeln!(self.out, "{}", rec.value)
                .map_err(|e| CliFailure::new(EXIT_INVALID, e.to_string())),
            OutputFormat::Table => writeln!(self.out, "{}", rec.table_line)
                .map_err(|e| CliFailure::new(EXIT_INVALID, e.to_string())),
            OutputFormat::Json => {
                self.records.push(rec.value);
                Ok(())
            }
        }
    }

    fn finish(mut self, summary_value: Value, summary: &CensusSummary) -> Result<(), CliFailure> {
        let io_err = |e: std::io::Error| CliFailure::new(EXIT_INVALID, e.to_string());
        match self.format {
            OutputFormat::Jsonl => {
                writeln!(self.out, "{}", json!({ "summary": summary_value })).map_err(io_err)
            }
            OutputFormat::Table => writeln!(
                self.out,
                "pairs={} matchable={} unmatchable={}",
                summary.pairs, summary.matchable, summary.unmatchable
            )
            .map_err(io_err),
            OutputFormat::Json => {
                let full = json!({
                    "records": std::mem::take(&mut self.records),
                    "summary": summary_value,
                });
                writeln!(self.out, "{full}").map_err(io_err)
            }
        }
    }
}

pub fn run_group_census(
    group: &FiniteAbelianGroup,
    n: usize,
    cfg: &CensusConfig,
    out: &mut dyn Write,
) -> Result<CensusSummary, CliFailure> {
    if n == 0 || (n as u64) >= group.order() {
        return Err(CliFailure::new(
            EXIT_INVALID,
            format!("census size {n} out of range for {group}"),
        ));
    }
    let subgroups = all_subgroups(group).map_err(CliFailure::from)?;

    let pairs: Vec<(GroupSubset, GroupSubset)> = match cfg.mode {
        CensusMode::Exhaustive => {
            let count = group_pair_count(group, n);
            if count > MAX_CENSUS_PAIRS {
                return Err(CliFailure::new(
                    EXIT_INVALID,
                    format!(
                        "exhaustive census of {count} pairs exceeds the bound {MAX_CENSUS_PAIRS}; use --sample"
                    ),
                ));
            }
            group_pairs_exhaustive(group, n).collect()
        }
        CensusMode::Sample { count, seed } => {
            if count as u128 > MAX_CENSUS_PAIRS {
                return Err(CliFailure::new(
                    EXIT_INVALID,
                    format!("sample count {count} exceeds the bound {MAX_CENSUS_PAIRS}"),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| sample_group_pair(&mut rng, group, n))
                .collect()
        }
    };

    let mut summary = CensusSummary::default();
    let mut emitter = Emitter::new(out, cfg.format);
    let mut index = 0u64;
    for chunk in pairs.chunks(CHUNK) {
        let base = index;
        let results: Vec<Result<RecordOut, CliFailure>> = with_pool(cfg.workers, || {
            chunk
                .par_iter()
                .enumerate()
                .map(|(offset, (a, b))| {
                    group_record(group, &subgroups, base + offset as u64, a, b, cfg)
                })
                .collect()
        })?;
        for result in results {
            let rec = result?;
            summary.pairs += 1;
            if rec.matchable {
                summary.matchable += 1;
            } else {
                summary.unmatchable += 1;
            }
            emitter.record(rec)?;
        }
        index += chunk.len() as u64;
    }

    let summary_value = summary_json(&summary, &cfg.mode, json!({"group": group.invariant_factors(), "n": n}));
    emitter.finish(summary_value, &summary)?;
    Ok(summary)
}

fn group_record(
    group: &FiniteAbelianGroup,
    subgroups: &[Subgroup],
    index: u64,
    a: &GroupSubset,
    b: &GroupSubset,
    cfg: &CensusConfig,
) -> Result<RecordOut, CliFailure> {
    let start = Instant::now();
    let matching = find_matching(group, a, b).map_err(CliFailure::from)?;
    let mut map = Map::new();
    map.insert("index".into(), json!(index));
    map.insert("A".into(), group_set_json(group, a));
    map.insert("B".into(), group_set_json(group, b));
    let matchable = match &matching {
        Some(w) => {
            map.insert("matchable".into(), json!(true));
            map.insert("witness".into(), witness_json(group, w));
            true
        }
        None => {
            let cert = find_certificate_with_subgroups(group, a, b, subgroups)
                .map_err(CliFailure::from)?
                .ok_or_else(|| {
                    CliFailure::new(
                        EXIT_INCONSISTENT,
                        format!("no matching and no certificate for A = {a}, B = {b}"),
                    )
                })?;
            map.insert("matchable".into(), json!(false));
            map.insert("certificate".into(), group_certificate_json(group, &cert));
            false
        }
    };
    if cfg.xcheck && a.len() <= DEFAULT_NAIVE_ENUMERATION_BOUND {
        let naive = naive_unmatchability_witness(group, a, b).map_err(CliFailure::from)?;
        if naive.is_some() == matchable {
            return Err(CliFailure::new(
                EXIT_INCONSISTENT,
                format!("exhaustive oracle disagrees on A = {a}, B = {b}"),
            ));
        }
    }
    if cfg.timing {
        map.insert("elapsed_us".into(), json!(start.elapsed().as_micros() as u64));
    }
    let verdict_word = if matchable { "matchable" } else { "unmatchable" };
    Ok(RecordOut {
        table_line: format!("A={a} B={b} {verdict_word}"),
        value: Value::Object(map),
        matchable,
    })
}

pub fn run_field_census(
    field: &ExtensionField,
    n: usize,
    cfg: &CensusConfig,
    out: &mut dyn Write,
) -> Result<CensusSummary, CliFailure> {
    if n == 0 || n >= field.degree() {
        return Err(CliFailure::new(
            EXIT_INVALID,
            format!("census dimension {n} out of range for {field}"),
        ));
    }
    let pairs: Vec<(FqSubspace, FqSubspace)> = match cfg.mode {
        CensusMode::Exhaustive => {
            let pairs = field_pairs_exhaustive(field, n).map_err(CliFailure::from)?;
            if pairs.len() as u128 > MAX_CENSUS_PAIRS {
                return Err(CliFailure::new(
                    EXIT_INVALID,
                    format!(
                        "exhaustive census of {} pairs exceeds the bound {MAX_CENSUS_PAIRS}; use --sample",
                        pairs.len()
                    ),
                ));
            }
            pairs
        }
        CensusMode::Sample { count, seed } => {
            if count as u128 > MAX_CENSUS_PAIRS {
                return Err(CliFailure::new(
                    EXIT_INVALID,
                    format!("sample count {count} exceeds the bound {MAX_CENSUS_PAIRS}"),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| sample_field_pair(&mut rng, field, n))
                .collect()
        }
    };

    let mut summary = CensusSummary::default();
    let mut emitter = Emitter::new(out, cfg.format);
    let mut index = 0u64;
    for chunk in pairs.chunks(CHUNK) {
        let base = index;
        let results: Vec<Result<RecordOut, CliFailure>> = with_pool(cfg.workers, || {
            chunk
                .par_iter()
                .enumerate()
                .map(|(offset, (a, b))| field_record(field, base + offset as u64, a, b, cfg))
                .collect()
        })?;
        for result in results {
            let rec = result?;
            summary.pairs += 1;
            if rec.matchable {
                summary.matchable += 1;
            } else {
                summary.unmatchable += 1;
            }
            emitter.record(rec)?;
        }
        index += chunk.len() as u64;
    }

    let summary_value = summary_json(
        &summary,
        &cfg.mode,
        json!({"field": {"p": field.p(), "m": field.degree(), "modulus": field.modulus()}, "n": n}),
    );
    emitter.finish(summary_value, &summary)?;
    Ok(summary)
}

fn field_record(
    field: &ExtensionField,
    index: u64,
    a: &FqSubspace,
    b: &FqSubspace,
    cfg: &CensusConfig,
) -> Result<RecordOut, CliFailure> {
    let start = Instant::now();
    let cert = find_linear_certificate(field, a, b).map_err(CliFailure::from)?;
    let mut map = Map::new();
    map.insert("index".into(), json!(index));
    map.insert("A".into(), subspace_json(a));
    map.insert("B".into(), subspace_json(b));
    let matchable = match &cert {
        None => {
            map.insert("matchable".into(), json!(true));
            true
        }
        Some(c) => {
            map.insert("matchable".into(), json!(false));
            map.insert("certificate".into(), linear_certificate_json(c));
            false
        }
    };
    if cfg.xcheck {
        // the criterion scan has its own enumeration bounds; skip it above them
        match criterion_verdict(field, a, b) {
            Ok(hit) => {
                if hit.is_some() == matchable {
                    return Err(CliFailure::new(
                        EXIT_INCONSISTENT,
                        format!("criterion disagrees on A = {a}, B = {b}"),
                    ));
                }
            }
            Err(CoreError::InvalidInput(_)) => {}
            Err(e) => return Err(core_failure(e)),
        }
    }
    if cfg.timing {
        map.insert("elapsed_us".into(), json!(start.elapsed().as_micros() as u64));
    }
    let verdict_word = if matchable { "matchable" } else { "unmatchable" };
    Ok(RecordOut {
        table_line: format!("A={a} B={b} {verdict_word}"),
        value: Value::Object(map),
        matchable,
    })
}

fn summary_json(summary: &CensusSummary, mode: &CensusMode, context: Value) -> Value {
    let mut map = Map::new();
    if let Value::Object(ctx) = context {
        map.extend(ctx);
    }
    match mode {
        CensusMode::Exhaustive => {
            map.insert("mode".into(), json!("exhaustive"));
        }
        CensusMode::Sample { count, seed } => {
            map.insert("mode".into(), json!("sample"));
            map.insert("requested".into(), json!(count));
            map.insert("seed".into(), json!(seed));
        }
    }
    map.insert("pairs".into(), json!(summary.pairs));
    map.insert("matchable".into(), json!(summary.matchable));
    map.insert("unmatchable".into(), json!(summary.unmatchable));
    Value::Object(map)
}
