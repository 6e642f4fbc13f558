//! Corpus-wide proving with a data-parallel fan-out. Report order is corpus
//! order whatever the completion order.

use crate::corpus::CorpusEntry;
use crate::expr::eval_series;
use crate::oeis::{compare_with_series, FetchMode, OeisClient};
use crate::proof::{prove_gf, ProofCertificate, ProofError, ProveOptions};

/// Terms of the OEIS record compared against the series.
const COMPARE_TERMS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

/// Order-preserving map; `Parallel` degrades to sequential without the
/// `parallel` feature.
pub fn par_map<T, R, F>(items: &[T], parallelism: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match parallelism {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{label}: {source}")]
pub struct BatchError {
    pub label: String,
    pub source: ProofError,
}

#[derive(Default)]
pub struct BatchOptions<'a> {
    pub prove: ProveOptions,
    pub parallelism: Parallelism,
    /// Advisory comparison of each entry's series with its OEIS record.
    pub oeis: Option<(&'a OeisClient, FetchMode)>,
}

/// Proves every entry; any stage error aborts the whole batch so no partial
/// report is produced.
pub fn run_batch(entries: &[CorpusEntry], options: &BatchOptions) -> Result<Vec<ProofCertificate>, BatchError> {
    par_map(entries, options.parallelism, |entry| prove_entry(entry, options)).into_iter().collect()
}

pub fn prove_entry(entry: &CorpusEntry, options: &BatchOptions) -> Result<ProofCertificate, BatchError> {
    let wrap = |source| BatchError { label: entry.label(), source };
    let conjectured = entry.recurrence();
    let mut cert = prove_gf(&entry.gf_text, conjectured.as_ref(), &options.prove).map_err(wrap)?;
    cert.id = entry.oeis_id.clone();
    if let (Some(id), Some((client, mode))) = (&entry.oeis_id, options.oeis) {
        cert.annotations.push(oeis_note(entry, id, client, mode));
    }
    Ok(cert)
}

fn oeis_note(entry: &CorpusEntry, id: &str, client: &OeisClient, mode: FetchMode) -> String {
    let record = match client.fetch(id, COMPARE_TERMS, mode) {
        Ok(r) => r,
        Err(e) => return format!("OEIS comparison unavailable: {e}"),
    };
    let order = record.terms.len() as i64 + 8;
    let compared = eval_series(&entry.expr(), order)
        .map_err(|e| e.to_string())
        .and_then(|f| compare_with_series(&record, &f).map_err(|e| e.to_string()));
    match compared {
        Ok(c) => format!("OEIS comparison (advisory): {}", c.describe(id)),
        Err(e) => format!("OEIS comparison unavailable: {e}"),
    }
}
