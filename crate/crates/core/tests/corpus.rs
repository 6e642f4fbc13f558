use holorec::corpus::{builtin_corpus, load_corpus, parse_corpus, write_corpus, CorpusEntry};
use holorec::proof::derive_recurrence;

#[test]
fn builtin_entries_derive() {
    let corpus = load_corpus("builtin").unwrap();
    assert_eq!(corpus, builtin_corpus());
    for entry in &corpus {
        let d = derive_recurrence(&entry.expr()).unwrap_or_else(|e| panic!("{}: {e}", entry.label()));
        assert!(d.recurrence.order() >= 1, "{}", entry.label());
    }
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mine.corpus");
    let text = "# comment\nA000079 | 1/(1-2*x) | a(n) - 2*a(n-1) = 0 | powers\n\n | sqrt(1-4*x) | | no id\n";
    std::fs::write(&path, text).unwrap();
    let loaded = load_corpus(path.to_str().unwrap()).unwrap();
    assert_eq!(loaded.len(), 2);
    assert_eq!(loaded[1].oeis_id, None);
    assert_eq!(loaded[1].line, 4);

    let written = write_corpus(&loaded);
    let again = parse_corpus(&written).unwrap();
    for (a, b) in loaded.iter().zip(&again) {
        assert_eq!((&a.oeis_id, &a.gf_text, a.recurrence(), &a.notes), (&b.oeis_id, &b.gf_text, b.recurrence(), &b.notes));
    }
}

#[test]
fn load_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.corpus");
    std::fs::write(&path, "A000045 | x/(1-x-x^2) | |\nA000079 | 1/(1-2*x | | unbalanced\n").unwrap();
    let err = load_corpus(path.to_str().unwrap()).unwrap_err();
    assert_eq!(err.line, 2);
    assert!(err.to_string().starts_with("corpus line 2:"));

    std::fs::write(&path, "").unwrap();
    assert!(load_corpus(path.to_str().unwrap()).unwrap().is_empty());
    assert!(load_corpus(dir.path().join("missing").to_str().unwrap()).is_err());
    assert!(parse_corpus("A45 | 1/(1-x) | |\n").is_err());
}

#[test]
fn entries_built_in_code_are_validated() {
    assert!(CorpusEntry::new(Some("A000045"), "x/(1-x-x^2)", None, "").is_ok());
    assert!(CorpusEntry::new(None, "sqrt(x)", None, "").is_err());
    assert!(CorpusEntry::new(None, "1/(1-x)", Some("a(n) = a(n-1) + 1"), "").is_err());
}
