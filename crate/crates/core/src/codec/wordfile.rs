//! Text word files: one `kind page root postfix` record per line, with
//! events in a JSON sidecar.

use super::word::{EventRecord, TxWord, WordKind};
use super::CodecError;

pub fn write_words(words: &[TxWord]) -> String {
    let mut s = String::with_capacity(words.len() * 12);
    for w in words {
        s.push_str(&w.to_string());
        s.push('\n');
    }
    s
}

pub fn read_words(text: &str) -> Result<Vec<TxWord>, CodecError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| CodecError::Parse { line: i + 1, msg };
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(err(format!("expected 4 fields, got {}", f.len())));
        }
        let kind: WordKind = f[0].parse().map_err(err)?;
        let num = |s: &str| s.parse::<u8>().map_err(|e| CodecError::Parse { line: i + 1, msg: e.to_string() });
        let w = TxWord { kind, page: num(f[1])?, root: num(f[2])?, postfix: num(f[3])? };
        if !w.in_range() {
            return Err(err("field out of range".into()));
        }
        out.push(w);
    }
    Ok(out)
}

pub fn write_events(events: &[EventRecord]) -> String {
    serde_json::to_string_pretty(events).expect("event records serialize")
}

pub fn read_events(text: &str) -> Result<Vec<EventRecord>, CodecError> {
    serde_json::from_str(text).map_err(|e| CodecError::Parse { line: e.line(), msg: e.to_string() })
}
