//! Line-oriented corpus of generating functions and conjectured
//! recurrences: `id | gf | rec | notes`, `#` comments.

use std::fmt::Write;
use std::path::Path;

use crate::expr::{eval_series, parse, RadicalExpr};
use crate::holonomic::Recurrence;
use crate::oeis::validate_id;
use crate::ore::parse_recurrence;

pub const BUILTIN: &str = include_str!("../corpus/builtin.corpus");

/// Series order used to check that an entry's g.f. is a power series.
const VALIDATION_ORDER: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("corpus line {line}: {message}")]
pub struct CorpusError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub oeis_id: Option<String>,
    pub gf_text: String,
    pub conjectured_rec: Option<String>,
    pub notes: String,
    /// 1-based source line; 0 for entries built in code.
    pub line: usize,
}

impl CorpusEntry {
    /// A validated entry that did not come from a file.
    pub fn new(oeis_id: Option<&str>, gf_text: &str, conjectured_rec: Option<&str>, notes: &str) -> Result<Self, String> {
        let entry = CorpusEntry {
            oeis_id: oeis_id.map(str::to_string),
            gf_text: gf_text.to_string(),
            conjectured_rec: conjectured_rec.map(str::to_string),
            notes: notes.to_string(),
            line: 0,
        };
        entry.validate()?;
        Ok(entry)
    }

    pub fn expr(&self) -> RadicalExpr {
        parse(&self.gf_text).expect("validated at load")
    }

    pub fn recurrence(&self) -> Option<Recurrence> {
        self.conjectured_rec.as_deref().map(|r| parse_recurrence(r).expect("validated at load"))
    }

    /// The id, or `line N` for anonymous entries.
    pub fn label(&self) -> String {
        match (&self.oeis_id, self.line) {
            (Some(id), _) => id.clone(),
            (None, 0) => "input".into(),
            (None, line) => format!("line {line}"),
        }
    }

    fn validate(&self) -> Result<(), String> {
        if let Some(id) = &self.oeis_id {
            validate_id(id).map_err(|e| e.to_string())?;
        }
        let e = parse(&self.gf_text).map_err(|e| format!("generating function: {e}"))?;
        eval_series(&e, VALIDATION_ORDER).map_err(|e| format!("generating function: {e}"))?;
        if let Some(rec) = &self.conjectured_rec {
            parse_recurrence(rec).map_err(|e| format!("recurrence: {e}"))?;
        }
        Ok(())
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.splitn(4, '|').map(str::trim).collect();
        if fields.len() < 2 || fields[1].is_empty() {
            return Err(CorpusError { line, message: "expected `id | gf | rec | notes`".into() });
        }
        let optional = |k: usize| fields.get(k).filter(|s| !s.is_empty()).map(|s| s.to_string());
        let entry = CorpusEntry {
            oeis_id: optional(0),
            gf_text: fields[1].to_string(),
            conjectured_rec: optional(2),
            notes: optional(3).unwrap_or_default(),
            line,
        };
        entry.validate().map_err(|message| CorpusError { line, message })?;
        entries.push(entry);
    }
    Ok(entries)
}

/// `builtin` names the bundled corpus; anything else is a file path.
pub fn load_corpus(source: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    if source == "builtin" {
        return parse_corpus(BUILTIN);
    }
    let text = std::fs::read_to_string(Path::new(source))
        .map_err(|e| CorpusError { line: 0, message: format!("{source}: {e}") })?;
    parse_corpus(&text)
}

pub fn builtin_corpus() -> Vec<CorpusEntry> {
    parse_corpus(BUILTIN).expect("bundled corpus is valid")
}

pub fn write_corpus(entries: &[CorpusEntry]) -> String {
    let mut out = String::from("# id | generating function | conjectured recurrence (optional) | notes\n");
    for e in entries {
        let id = e.oeis_id.as_deref().unwrap_or("");
        let rec = e.conjectured_rec.as_deref().unwrap_or("");
        writeln!(out, "{id} | {} | {rec} | {}", e.gf_text, e.notes).unwrap();
    }
    out
}
