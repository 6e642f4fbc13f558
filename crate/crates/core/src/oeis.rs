//! OEIS b-file retrieval with an on-disk cache and bundled fixtures.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::sequence::{SequenceTerms, TermOrigin};
use crate::series::TruncSeries;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "HOLOREC_CACHE_DIR";

#[cfg(feature = "network")]
const HTTP_TIMEOUT_SECS: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OeisError {
    #[error("{0:?} is not an A-number (A followed by six digits)")]
    BadId(String),
    #[error("HTTP status {status} for {url}")]
    Http { status: u16, url: String },
    #[error("transport error for {url}: {message}")]
    Transport { url: String, message: String },
    #[error("network access is disabled")]
    NetworkDisabled,
    #[error("b-file line {line}: {text:?} is not `<index> <value>`")]
    Malformed { line: usize, text: String },
    #[error("b-file line {line}: index {found} does not follow {expected_after}")]
    NonContiguous { line: usize, found: i64, expected_after: i64 },
    #[error("b-file has no terms")]
    Empty,
    #[error("{0} is neither cached nor bundled")]
    UnknownId(String),
    #[error("cache: {0}")]
    Io(String),
    #[error("record and series do not overlap")]
    EmptyOverlap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FetchMode {
    Online,
    Offline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordSource {
    Network,
    Cache,
    Fixture,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub id: String,
    pub name: String,
    pub offset: i64,
    pub terms: SequenceTerms,
    /// Seconds since the Unix epoch; 0 for bundled fixtures.
    pub fetched_at: u64,
    pub source: RecordSource,
}

pub fn validate_id(id: &str) -> Result<(), OeisError> {
    let ok = id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(OeisError::BadId(id.to_string()))
    }
}

pub fn bfile_url(id: &str) -> String {
    format!("https://oeis.org/{id}/b{}.txt", &id[1..])
}

/// Parsed b-file: offset, values, and the name from a leading
/// `# A123456 name` comment when present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub offset: i64,
    pub values: Vec<BigInt>,
    pub name: Option<String>,
}

/// Accepts `<index> <value>` lines with consecutive indices, `#` comments,
/// and blank lines; anything else is an error naming the line.
pub fn parse_bfile(text: &str) -> Result<BFile, OeisError> {
    let mut offset = None;
    let mut values = Vec::new();
    let mut name = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if name.is_none() && offset.is_none() {
                let mut parts = comment.trim().splitn(2, char::is_whitespace);
                if let (Some(tag), Some(rest)) = (parts.next(), parts.next()) {
                    if validate_id(tag.trim_end_matches(':')).is_ok() {
                        name = Some(rest.trim().to_string());
                    }
                }
            }
            continue;
        }
        let malformed = || OeisError::Malformed { line: lineno, text: raw.to_string() };
        let mut fields = line.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let idx: i64 = idx.parse().map_err(|_| malformed())?;
        let val: BigInt = val.parse().map_err(|_| malformed())?;
        match offset {
            None => offset = Some(idx),
            Some(start) => {
                let prev = start + values.len() as i64 - 1;
                if idx != prev + 1 {
                    return Err(OeisError::NonContiguous { line: lineno, found: idx, expected_after: prev });
                }
            }
        }
        values.push(val);
    }
    let offset = offset.ok_or(OeisError::Empty)?;
    Ok(BFile { offset, values, name })
}

/// Bundled b-files, keyed by A-number.
pub fn fixture(id: &str) -> Option<&'static str> {
    Some(match id {
        "A000045" => include_str!("../fixtures/A000045.bfile"),
        "A000079" => include_str!("../fixtures/A000079.bfile"),
        "A000108" => include_str!("../fixtures/A000108.bfile"),
        "A000142" => include_str!("../fixtures/A000142.bfile"),
        "A000957" => include_str!("../fixtures/A000957.bfile"),
        "A002420" => include_str!("../fixtures/A002420.bfile"),
        "A004148" => include_str!("../fixtures/A004148.bfile"),
        _ => return None,
    })
}

pub fn fixture_ids() -> &'static [&'static str] {
    &["A000045", "A000079", "A000108", "A000142", "A000957", "A002420", "A004148"]
}

/// Fetches a URL body as text.
pub trait Transport: Send + Sync {
    fn get(&self, url: &str) -> Result<String, OeisError>;
}

/// Refuses every request.
pub struct NoNetwork;

impl Transport for NoNetwork {
    fn get(&self, _url: &str) -> Result<String, OeisError> {
        Err(OeisError::NetworkDisabled)
    }
}

#[cfg(feature = "network")]
pub struct HttpTransport;

#[cfg(feature = "network")]
impl Transport for HttpTransport {
    fn get(&self, url: &str) -> Result<String, OeisError> {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(std::time::Duration::from_secs(HTTP_TIMEOUT_SECS)))
            .build()
            .into();
        match agent.get(url).call() {
            Ok(mut resp) => resp
                .body_mut()
                .read_to_string()
                .map_err(|e| OeisError::Transport { url: url.to_string(), message: e.to_string() }),
            Err(ureq::Error::StatusCode(status)) => Err(OeisError::Http { status, url: url.to_string() }),
            Err(e) => Err(OeisError::Transport { url: url.to_string(), message: e.to_string() }),
        }
    }
}

/// The HTTP transport when built with the `network` feature.
pub fn default_transport() -> Box<dyn Transport> {
    #[cfg(feature = "network")]
    {
        Box::new(HttpTransport)
    }
    #[cfg(not(feature = "network"))]
    {
        Box::new(NoNetwork)
    }
}

/// `$HOLOREC_CACHE_DIR`, else `~/.cache/holorec`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    let home = std::env::var_os("HOME").map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    home.join(".cache").join("holorec")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheMeta {
    id: String,
    url: String,
    fetched_at: u64,
    bytes: usize,
}

pub struct OeisClient {
    cache_dir: PathBuf,
    transport: Box<dyn Transport>,
}

impl OeisClient {
    pub fn new(cache_dir: impl Into<PathBuf>, transport: Box<dyn Transport>) -> Self {
        OeisClient { cache_dir: cache_dir.into(), transport }
    }

    pub fn cache_dir(&self) -> &Path {
        &self.cache_dir
    }

    fn body_path(&self, id: &str) -> PathBuf {
        self.cache_dir.join(format!("{id}.bfile"))
    }

    fn meta_path(&self, id: &str) -> PathBuf {
        self.cache_dir.join(format!("{id}.meta.json"))
    }

    /// Cache first; then the network (online) or the bundled fixture
    /// (offline).
    pub fn fetch(&self, id: &str, max_terms: usize, mode: FetchMode) -> Result<SequenceRecord, OeisError> {
        validate_id(id)?;
        if let Some((body, fetched_at)) = self.read_cache(id)? {
            return record(id, &body, max_terms, fetched_at, RecordSource::Cache);
        }
        match mode {
            FetchMode::Online => {
                let url = bfile_url(id);
                let body = self.transport.get(&url)?;
                parse_bfile(&body)?;
                let fetched_at = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                self.write_cache(id, &url, &body, fetched_at)?;
                record(id, &body, max_terms, fetched_at, RecordSource::Network)
            }
            FetchMode::Offline => match fixture(id) {
                Some(body) => record(id, body, max_terms, 0, RecordSource::Fixture),
                None => Err(OeisError::UnknownId(id.to_string())),
            },
        }
    }

    fn read_cache(&self, id: &str) -> Result<Option<(String, u64)>, OeisError> {
        let path = self.body_path(id);
        if !path.exists() {
            return Ok(None);
        }
        let body = fs::read_to_string(&path).map_err(|e| OeisError::Io(format!("{}: {e}", path.display())))?;
        let fetched_at = fs::read_to_string(self.meta_path(id))
            .ok()
            .and_then(|m| serde_json::from_str::<CacheMeta>(&m).ok())
            .map(|m| m.fetched_at)
            .unwrap_or(0);
        Ok(Some((body, fetched_at)))
    }

    // write-then-rename keeps a concurrent reader from seeing a partial file
    fn write_cache(&self, id: &str, url: &str, body: &str, fetched_at: u64) -> Result<(), OeisError> {
        let io = |e: std::io::Error| OeisError::Io(e.to_string());
        fs::create_dir_all(&self.cache_dir).map_err(io)?;
        let meta = CacheMeta { id: id.to_string(), url: url.to_string(), fetched_at, bytes: body.len() };
        let meta = serde_json::to_string_pretty(&meta).expect("plain struct");
        for (path, contents) in [(self.body_path(id), body.to_string()), (self.meta_path(id), meta)] {
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            fs::write(&tmp, contents).map_err(io)?;
            fs::rename(&tmp, &path).map_err(io)?;
        }
        Ok(())
    }
}

fn record(id: &str, body: &str, max_terms: usize, fetched_at: u64, source: RecordSource) -> Result<SequenceRecord, OeisError> {
    let parsed = parse_bfile(body)?;
    let values: Vec<BigRational> = parsed.values.into_iter().take(max_terms).map(BigRational::from_integer).collect();
    if values.is_empty() {
        return Err(OeisError::Empty);
    }
    Ok(SequenceRecord {
        id: id.to_string(),
        name: parsed.name.unwrap_or_default(),
        offset: parsed.offset,
        terms: SequenceTerms::new(parsed.offset, values, TermOrigin::Bfile),
        fetched_at,
        source,
    })
}

/// How a record lines up with a series expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    /// Series index minus record index.
    pub shift: i64,
    pub overlap: usize,
    /// Record index of the first disagreement.
    pub first_mismatch: Option<i64>,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }

    pub fn describe(&self, id: &str) -> String {
        let shift = if self.shift == 0 { String::new() } else { format!(" (index shift {})", self.shift) };
        match self.first_mismatch {
            None => format!("{id}: agrees with the series on {} terms{shift}", self.overlap),
            Some(n) => format!("{id}: differs from the series at index {n}{shift}"),
        }
    }
}

/// Aligns the first nonzero terms, then compares the overlap.
pub fn compare_with_series(rec: &SequenceRecord, series: &TruncSeries) -> Result<Comparison, OeisError> {
    let terms = &rec.terms;
    let first_rec = (terms.offset()..terms.end()).find(|&i| !terms.get(i).expect("in range").is_zero());
    let coeffs = series.coefficients(series.trunc_order());
    let first_ser = coeffs.iter().position(|c| !c.is_zero()).map(|p| p as i64);
    let shift = match (first_rec, first_ser) {
        (Some(r), Some(s)) => s - r,
        _ => 0,
    };
    let overlap: Vec<i64> =
        (terms.offset()..terms.end()).filter(|i| (0..coeffs.len() as i64).contains(&(i + shift))).collect();
    if overlap.is_empty() {
        return Err(OeisError::EmptyOverlap);
    }
    let first_mismatch =
        overlap.iter().copied().find(|&i| terms.get(i).expect("in range") != &coeffs[(i + shift) as usize]);
    Ok(Comparison { shift, overlap: overlap.len(), first_mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids() {
        assert!(validate_id("A000045").is_ok());
        for bad in ["A45", "a000045", "A0000451", "B000045", "A00004x"] {
            assert!(validate_id(bad).is_err(), "{bad}");
        }
        assert_eq!(bfile_url("A000045"), "https://oeis.org/A000045/b000045.txt");
    }

    #[test]
    fn bfile_parsing() {
        let b = parse_bfile("# A000001 demo\n\n3 5\n4 -7\n# trailing\n5 0\n").unwrap();
        assert_eq!(b.offset, 3);
        assert_eq!(b.values, vec![BigInt::from(5), BigInt::from(-7), BigInt::from(0)]);
        assert_eq!(b.name.as_deref(), Some("demo"));
        assert_eq!(parse_bfile("1 2\n2 x\n"), Err(OeisError::Malformed { line: 2, text: "2 x".into() }));
        assert_eq!(parse_bfile("1 2 3\n"), Err(OeisError::Malformed { line: 1, text: "1 2 3".into() }));
        assert!(matches!(parse_bfile("1 2\n3 4\n"), Err(OeisError::NonContiguous { line: 2, .. })));
        assert_eq!(parse_bfile("# only\n"), Err(OeisError::Empty));
    }

    #[test]
    fn fixtures_are_well_formed() {
        for id in fixture_ids() {
            let b = parse_bfile(fixture(id).unwrap()).unwrap();
            assert!(!b.values.is_empty());
            assert!(b.name.is_some());
        }
    }
}
