//! Parallel grid scan over conjecture predicates and the signature oracles,
//! with an append-only checkpoint so an interrupted scan can resume.
//!
//! Checkpoint lines are `cell-key<TAB>status<TAB>payload-hash`. Output is
//! assembled in canonical grid order, so it does not depend on the number of
//! worker threads or on how many cells were restored from a checkpoint.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;

use lclass_core::charclass::{
    check_conjecture_211, check_conjecture_27, signature_ci, CompleteIntersectionSpec,
    ConjectureReport,
};
use lclass_core::exactq::rational::to_text;
use lclass_core::hodge_oracle::{signature_genfun, signature_hodge_index};
use lclass_core::report::{Record, Report};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("corrupt checkpoint {path}: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },
    #[error("checkpoint i/o: {0}")]
    Io(#[from] io::Error),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    Conjecture27,
    Conjecture211,
    OracleAgreement,
}

impl ScanMode {
    pub fn name(self) -> &'static str {
        match self {
            ScanMode::Conjecture27 => "conjecture27",
            ScanMode::Conjecture211 => "conjecture211",
            ScanMode::OracleAgreement => "oracle-agreement",
        }
    }
}

impl FromStr for ScanMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "conjecture27" => Ok(ScanMode::Conjecture27),
            "conjecture211" => Ok(ScanMode::Conjecture211),
            "oracle-agreement" => Ok(ScanMode::OracleAgreement),
            _ => Err(format!(
                "unknown mode {s:?} (expected conjecture27, conjecture211 or oracle-agreement)"
            )),
        }
    }
}

/// Parses `a..b`, `a..=b` or a single value `a` as an inclusive range.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("bad range bound {t:?} in {s:?}"))
    };
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if range.is_empty() {
        return Err(format!("empty range {s:?}"));
    }
    Ok(range)
}

fn range_text(r: &RangeInclusive<u32>) -> String {
    format!("{}..{}", r.start(), r.end())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanGrid {
    pub m_range: RangeInclusive<u32>,
    pub degree_ranges: Vec<RangeInclusive<u32>>,
    pub mode: ScanMode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub m: u32,
    pub degrees: Vec<u32>,
}

impl Cell {
    pub fn key(&self) -> String {
        if self.degrees.is_empty() {
            format!("m={}", self.m)
        } else {
            let d: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
            format!("m={};d={}", self.m, d.join(","))
        }
    }
}

impl ScanGrid {
    pub fn new(
        mode: ScanMode,
        m_range: RangeInclusive<u32>,
        degree_ranges: Vec<RangeInclusive<u32>>,
    ) -> Result<Self, ScanError> {
        if m_range.is_empty() || degree_ranges.iter().any(|r| r.is_empty()) {
            return Err(ScanError::Grid("ranges must be nonempty".into()));
        }
        let r = degree_ranges.len();
        let ok = match mode {
            ScanMode::Conjecture27 => r == 0,
            ScanMode::Conjecture211 => (1..=2).contains(&r),
            ScanMode::OracleAgreement => r == 1,
        };
        if !ok {
            return Err(ScanError::Grid(format!(
                "mode {} does not take {r} degree range(s)",
                mode.name()
            )));
        }
        if degree_ranges.iter().any(|r| *r.start() == 0) {
            return Err(ScanError::Grid("degrees must be positive".into()));
        }
        if mode == ScanMode::OracleAgreement && *m_range.start() == 0 {
            return Err(ScanError::Grid("oracle-agreement needs m >= 1".into()));
        }
        Ok(ScanGrid {
            m_range,
            degree_ranges,
            mode,
        })
    }

    /// All cells in canonical order: `m` ascending, then degrees lexicographically.
    pub fn cells(&self) -> Vec<Cell> {
        let mut tuples: Vec<Vec<u32>> = vec![vec![]];
        for r in &self.degree_ranges {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    r.clone().map(move |d| {
                        let mut t = t.clone();
                        t.push(d);
                        t
                    })
                })
                .collect();
        }
        self.m_range
            .clone()
            .flat_map(|m| {
                tuples.iter().map(move |t| Cell {
                    m,
                    degrees: t.clone(),
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellOutcome {
    pub key: String,
    pub pass: bool,
    pub payload: String,
    pub witness: Option<String>,
}

impl CellOutcome {
    pub fn hash(&self) -> String {
        payload_hash(&self.payload)
    }

    fn status(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "fail"
        }
    }
}

pub fn payload_hash(payload: &str) -> String {
    let digest = Sha256::digest(payload.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn conjecture_outcome(key: String, report: &ConjectureReport) -> CellOutcome {
    let coeffs: Vec<String> = report.checks.iter().map(|c| to_text(&c.coefficient)).collect();
    let mut payload = coeffs.join(",");
    if let Some(side) = report.side_condition {
        payload.push_str(&format!(";side={side}"));
    }
    let witness = report.first_failure().map(|f| {
        let mut w = format!("j={} coefficient={}", f.j, to_text(&f.coefficient));
        if report.side_condition == Some(false) {
            w.push_str(" (side condition sum(d) >= n+r fails)");
        }
        w
    });
    CellOutcome {
        key,
        pass: report.pass(),
        payload,
        witness,
    }
}

pub fn evaluate(mode: ScanMode, cell: &Cell) -> CellOutcome {
    let key = cell.key();
    match mode {
        ScanMode::Conjecture27 => conjecture_outcome(key, &check_conjecture_27(cell.m)),
        ScanMode::Conjecture211 => {
            let spec = CompleteIntersectionSpec::new(cell.m, cell.degrees.clone())
                .expect("grid degrees are positive");
            let report = check_conjecture_211(&spec).expect("grid has degrees");
            conjecture_outcome(key, &report)
        }
        ScanMode::OracleAgreement => {
            let d = cell.degrees[0];
            let spec = CompleteIntersectionSpec::new(cell.m, vec![d]).expect("positive degree");
            let a = signature_ci(&spec).expect("signatures are integral");
            let b = signature_genfun(cell.m, d);
            let c = signature_hodge_index(cell.m, d);
            let pass = a == b && b == c;
            CellOutcome {
                key,
                pass,
                payload: format!("{a},{b},{c}"),
                witness: (!pass).then(|| format!("A={a} B={b} C={c} A-B={}", &a - &b)),
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    pub threads: usize,
    pub checkpoint: Option<PathBuf>,
    pub verbose: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct CheckpointEntry {
    pass: bool,
    hash: String,
}

fn corrupt(path: &Path, reason: impl Into<String>) -> ScanError {
    ScanError::CorruptCheckpoint {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

/// Reads a checkpoint, dropping a torn final line (one without a trailing newline).
fn read_checkpoint(
    path: &Path,
    grid_keys: &[String],
) -> Result<BTreeMap<String, CheckpointEntry>, ScanError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(e.into()),
    };
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    if complete.len() != text.len() {
        fs::write(path, complete)?;
    }
    let mut entries = BTreeMap::new();
    for (lineno, line) in complete.lines().enumerate() {
        let fields: Vec<&str> = line.split('\t').collect();
        let [key, status, hash] = fields[..] else {
            return Err(corrupt(path, format!("line {} does not have 3 fields", lineno + 1)));
        };
        let pass = match status {
            "pass" => true,
            "fail" => false,
            other => return Err(corrupt(path, format!("unknown status {other:?}"))),
        };
        if hash.len() != 16 || !hash.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(corrupt(path, format!("bad payload hash {hash:?}")));
        }
        if !grid_keys.iter().any(|k| k == key) {
            return Err(corrupt(path, format!("cell {key:?} is not in this grid")));
        }
        let entry = CheckpointEntry {
            pass,
            hash: hash.to_string(),
        };
        if let Some(prev) = entries.insert(key.to_string(), entry.clone()) {
            if prev != entry {
                return Err(corrupt(path, format!("conflicting entries for {key:?}")));
            }
        }
    }
    Ok(entries)
}

/// Evaluates every grid cell and returns the report in canonical order.
pub fn scan(
    grid: &ScanGrid,
    opts: &ScanOptions,
    progress: &mut (dyn Write + Send),
) -> Result<Report, ScanError> {
    let cells = grid.cells();
    let keys: Vec<String> = cells.iter().map(Cell::key).collect();
    let restored = match &opts.checkpoint {
        Some(p) => read_checkpoint(p, &keys)?,
        None => BTreeMap::new(),
    };

    // Cells restored as passing are reused; failing ones are recomputed for their witness.
    let todo: Vec<&Cell> = cells
        .iter()
        .filter(|c| restored.get(&c.key()).is_none_or(|e| !e.pass))
        .collect();

    let writer = match &opts.checkpoint {
        Some(p) => Some(Mutex::new(OpenOptions::new().create(true).append(true).open(p)?)),
        None => None,
    };
    let progress = Mutex::new(progress);
    let done = std::sync::atomic::AtomicUsize::new(cells.len() - todo.len());
    let total = cells.len();

    let threads = opts.threads.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ScanError::Pool(e.to_string()))?;
    let computed: Vec<io::Result<CellOutcome>> = pool.install(|| {
        todo.par_iter()
            .map(|cell| {
                let out = evaluate(grid.mode, cell);
                if let Some(w) = &writer {
                    if !restored.contains_key(&out.key) {
                        let line = format!("{}\t{}\t{}\n", out.key, out.status(), out.hash());
                        let mut f: std::sync::MutexGuard<'_, File> = w.lock().unwrap();
                        f.write_all(line.as_bytes())?;
                        f.flush()?;
                    }
                }
                if opts.verbose {
                    let n = done.fetch_add(1, std::sync::atomic::Ordering::SeqCst) + 1;
                    let _ = writeln!(progress.lock().unwrap(), "[{n}/{total}] {} {}", out.key, out.status());
                }
                Ok(out)
            })
            .collect()
    });
    let mut computed: BTreeMap<String, CellOutcome> = computed
        .into_iter()
        .map(|r| r.map(|o| (o.key.clone(), o)))
        .collect::<io::Result<_>>()?;

    let mut report = Report::new(
        "scan",
        Record::new()
            .with("mode", grid.mode.name())
            .with("m_range", range_text(&grid.m_range))
            .with(
                "degree_ranges",
                grid.degree_ranges.iter().map(range_text).collect::<Vec<_>>(),
            ),
    );
    let mut failed = 0usize;
    for key in &keys {
        let (pass, hash, witness) = match computed.remove(key) {
            Some(out) => {
                if let Some(prev) = restored.get(key) {
                    if prev.hash != out.hash() || prev.pass != out.pass {
                        let path = opts.checkpoint.as_deref().unwrap_or(Path::new(""));
                        return Err(corrupt(path, format!("stored result for {key:?} does not match")));
                    }
                }
                let hash = out.hash();
                (out.pass, hash, out.witness)
            }
            None => {
                let e = &restored[key];
                (e.pass, e.hash.clone(), None)
            }
        };
        let mut rec = Record::new()
            .with("cell", key.as_str())
            .with("status", if pass { "pass" } else { "fail" })
            .with("payload_hash", hash);
        if grid.mode == ScanMode::OracleAgreement && pass {
            rec.push("a_minus_b", "0");
        }
        if !pass {
            failed += 1;
            let w = witness.unwrap_or_default();
            if grid.mode == ScanMode::OracleAgreement {
                let amb = w.split("A-B=").nth(1).unwrap_or("").to_string();
                rec.push("a_minus_b", amb);
            }
            report.fail(key.as_str(), w);
        }
        report.results.push(rec);
    }
    report.summary.push("cells", total);
    report.summary.push("failed", failed);
    Ok(report)
}
