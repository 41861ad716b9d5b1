//! Disk cache for reduction tables, keyed by rank, scalar mode, and a
//! fingerprint of the quotient relations. Only active when HECKE_CACHE_DIR
//! is set; a stale or damaged file is silently rebuilt.

use std::env;
use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, Result};
use serde::{Deserialize, Serialize};

use fused_hecke::quotient::{build_reduction_table, BasisReport, QuotientSpec, ReductionTable};
use fused_hecke::words::{BlockWord, SignedWord, WordFilter};
use fused_hecke::ScalarMode;

const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    n: usize,
    mode: String,
    filter: String,
    basis: Vec<String>,
    rewrite: Vec<RewriteRow>,
    report: ReportRepr,
}

#[derive(Serialize, Deserialize)]
struct RewriteRow {
    word: String,
    combo: Vec<(usize, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum ReportRepr {
    Basis,
    Dependent { witnesses: Vec<String> },
    NotSpanning { free: Vec<String> },
}

fn filter_slug(filter: WordFilter) -> String {
    match filter {
        WordFilter::All => "all".into(),
        WordFilter::Avoiding => "avoiding".into(),
        WordFilter::AvoidingCap(k) => format!("cap{k}"),
    }
}

fn mode_slug(mode: &ScalarMode) -> String {
    mode.to_text().replace('=', "_").replace(',', "-").replace('/', "d")
}

fn cache_path(dir: &std::ffi::OsStr, spec: &QuotientSpec) -> PathBuf {
    let name = format!(
        "table-n{}-{}-{}-{:016x}.json",
        spec.n(),
        mode_slug(spec.mode()),
        filter_slug(spec.designated()),
        spec.relation_fingerprint()
    );
    PathBuf::from(dir).join(name)
}

/// Builds the table for `spec`, going through the on-disk cache when
/// HECKE_CACHE_DIR is set.
pub fn load_or_build(spec: &QuotientSpec) -> Result<ReductionTable> {
    let Some(dir) = env::var_os("HECKE_CACHE_DIR") else {
        return build(spec);
    };
    let path = cache_path(&dir, spec);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(table) = decode(spec, &text) {
            return Ok(table);
        }
    }
    let table = build(spec)?;
    if let Err(e) = store(&path, &table) {
        eprintln!("warning: cannot write table cache {}: {e}", path.display());
    }
    Ok(table)
}

fn build(spec: &QuotientSpec) -> Result<ReductionTable> {
    build_reduction_table(spec).map_err(|e| anyhow!("cannot build the reduction table: {e}"))
}

fn word_text(n: usize, w: &BlockWord) -> String {
    w.to_signed(n).to_text()
}

fn parse_word(n: usize, s: &str) -> Result<BlockWord> {
    let w = SignedWord::parse(s).map_err(|e| anyhow!("bad cached word {s:?}: {e}"))?;
    if w.n() != n {
        return Err(anyhow!("cached word {s:?} has the wrong rank"));
    }
    Ok(w.to_blocks())
}

fn store(path: &PathBuf, table: &ReductionTable) -> Result<()> {
    let n = table.n();
    let report = match table.report() {
        BasisReport::Basis => ReportRepr::Basis,
        BasisReport::Dependent { witnesses } => ReportRepr::Dependent {
            witnesses: witnesses.iter().map(|w| word_text(n, w)).collect(),
        },
        BasisReport::NotSpanning { free } => {
            ReportRepr::NotSpanning { free: free.iter().map(|w| word_text(n, w)).collect() }
        }
    };
    let file = CacheFile {
        version: VERSION,
        n,
        mode: table.mode().to_text(),
        filter: filter_slug(table.filter()),
        basis: table.basis().iter().map(|w| word_text(n, w)).collect(),
        rewrite: table
            .rewrite_rows()
            .iter()
            .map(|(w, combo)| RewriteRow {
                word: word_text(n, w),
                combo: combo.iter().map(|(i, c)| (*i, c.to_text())).collect(),
            })
            .collect(),
        report,
    };
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, serde_json::to_string(&file)?)?;
    Ok(())
}

fn decode(spec: &QuotientSpec, text: &str) -> Result<ReductionTable> {
    let file: CacheFile = serde_json::from_str(text)?;
    let n = spec.n();
    let mode = spec.mode();
    if file.version != VERSION
        || file.n != n
        || file.mode != mode.to_text()
        || file.filter != filter_slug(spec.designated())
    {
        return Err(anyhow!("cache key mismatch"));
    }
    let basis: Vec<BlockWord> =
        file.basis.iter().map(|s| parse_word(n, s)).collect::<Result<_>>()?;
    let mut rewrite = std::collections::BTreeMap::new();
    for row in &file.rewrite {
        let combo = row
            .combo
            .iter()
            .map(|(i, c)| Ok((*i, mode.parse_scalar(c).map_err(|e| anyhow!("{e}"))?)))
            .collect::<Result<Vec<_>>>()?;
        rewrite.insert(parse_word(n, &row.word)?, combo);
    }
    let report = match file.report {
        ReportRepr::Basis => BasisReport::Basis,
        ReportRepr::Dependent { witnesses } => BasisReport::Dependent {
            witnesses: witnesses.iter().map(|s| parse_word(n, s)).collect::<Result<_>>()?,
        },
        ReportRepr::NotSpanning { free } => BasisReport::NotSpanning {
            free: free.iter().map(|s| parse_word(n, s)).collect::<Result<_>>()?,
        },
    };
    ReductionTable::from_parts(n, mode.clone(), spec.designated(), basis, rewrite, report)
        .map_err(|e| anyhow!("cached table is inconsistent: {e}"))
}
