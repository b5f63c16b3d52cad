//! Minimal FASTA reading for sequence-pair input.

use crate::align::Sequence;
use crate::error::{Error, Result};

/// One record: the header line (without `>`) and the concatenated sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRecord {
    pub name: String,
    pub sequence: Sequence,
}

/// Parses FASTA text. Sequence lines are concatenated, surrounding
/// whitespace is ignored, and lowercase nucleotides are accepted.
pub fn parse_fasta(text: &str) -> Result<Vec<FastaRecord>> {
    let mut records: Vec<(String, String)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with(';') {
            continue;
        }
        if let Some(name) = line.strip_prefix('>') {
            records.push((name.trim().to_string(), String::new()));
        } else {
            let Some(current) = records.last_mut() else {
                return Err(Error::Fasta(format!(
                    "line {}: sequence data before any '>' header",
                    no + 1
                )));
            };
            current.1.push_str(&line.to_ascii_uppercase());
        }
    }
    if records.is_empty() {
        return Err(Error::Fasta("no records found".into()));
    }
    records
        .into_iter()
        .map(|(name, seq)| {
            let sequence = seq
                .parse()
                .map_err(|e| Error::Fasta(format!("record '{name}': {e}")))?;
            Ok(FastaRecord { name, sequence })
        })
        .collect()
}

/// Reads a FASTA file that must contain exactly two records — the pair to
/// align.
pub fn read_pair(path: &std::path::Path) -> Result<(FastaRecord, FastaRecord)> {
    let text = std::fs::read_to_string(path)?;
    let mut records = parse_fasta(&text)?;
    if records.len() != 2 {
        return Err(Error::Fasta(format!(
            "expected exactly 2 records in {}, found {}",
            path.display(),
            records.len()
        )));
    }
    let b = records.pop().expect("two records");
    let a = records.pop().expect("two records");
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_records_with_wrapped_lines() {
        let text = ">first\nATG\ngtc\n>second middle\nAC\n";
        let records = parse_fasta(text).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].name, "first");
        assert_eq!(records[0].sequence.to_string(), "ATGGTC");
        assert_eq!(records[1].name, "second middle");
        assert_eq!(records[1].sequence.to_string(), "AC");
    }

    #[test]
    fn rejects_headerless_data_and_bad_bases() {
        assert!(parse_fasta("ATG\n").is_err());
        assert!(parse_fasta("").is_err());
        let err = parse_fasta(">x\nAXC\n").unwrap_err();
        assert!(matches!(err, Error::Fasta(_)), "{err}");
    }

    #[test]
    fn empty_sequences_are_allowed() {
        let records = parse_fasta(">empty\n>other\nA\n").unwrap();
        assert_eq!(records[0].sequence.len(), 0);
        assert_eq!(records[1].sequence.len(), 1);
    }
}
