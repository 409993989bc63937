//! Transcribed reference data: character tables, tensor products and
//! branching rules. Embedded at build time, optionally replaced file by file
//! from a directory.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::chartab::{GoldenTable, ParseGoldenError};

pub const GOLDEN_FILES: [(&str, &str, &str); 6] = [
    ("I", "table_I.txt", include_str!("../../data/table_I.txt")),
    ("II", "table_II.txt", include_str!("../../data/table_II.txt")),
    ("III", "table_III.txt", include_str!("../../data/table_III.txt")),
    ("IV", "table_IV.txt", include_str!("../../data/table_IV.txt")),
    ("V", "table_V.txt", include_str!("../../data/table_V.txt")),
    ("VII", "table_VII.txt", include_str!("../../data/table_VII.txt")),
];
pub const APPENDIX_A: (&str, &str) = ("appendix_a.txt", include_str!("../../data/appendix_a.txt"));
pub const APPENDIX_B: (&str, &str) = ("appendix_b.txt", include_str!("../../data/appendix_b.txt"));

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ReferenceError {
    #[error("{file}: {source}")]
    Golden { file: String, source: ParseGoldenError },
    #[error("{file}:{line}: {message}")]
    Syntax { file: String, line: usize, message: String },
    #[error("{file}: {message}")]
    Io { file: String, message: String },
    #[error("no reference table {0}")]
    Missing(String),
    #[error("{file}: table id {found:?} where {expected:?} was expected")]
    WrongId { file: String, expected: String, found: String },
}

/// One line `a x b = sum`, applying to every group of its section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLine {
    pub groups: Vec<String>,
    pub left: String,
    pub right: String,
    pub terms: BTreeMap<String, u64>,
    /// Marked as a suspected misprint.
    pub flagged: bool,
    pub line: usize,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchTable {
    pub parents: Vec<String>,
    pub subgroup: String,
    pub rows: Vec<(String, BTreeMap<String, u64>)>,
}

#[derive(Clone, Debug)]
pub struct ReferenceData {
    golden: BTreeMap<String, Result<GoldenTable, ReferenceError>>,
    tensor: Result<Vec<TensorLine>, ReferenceError>,
    branch: Result<Vec<BranchTable>, ReferenceError>,
}

impl ReferenceData {
    pub fn embedded() -> Self {
        Self::from_sources(|_, text| Ok(text.to_string()))
    }

    /// Files present in `dir` replace their embedded counterparts.
    pub fn with_overrides(dir: &Path) -> Self {
        Self::from_sources(|file, text| {
            let path = dir.join(file);
            if path.exists() {
                std::fs::read_to_string(&path)
                    .map_err(|e| ReferenceError::Io { file: file.to_string(), message: e.to_string() })
            } else {
                Ok(text.to_string())
            }
        })
    }

    fn from_sources(load: impl Fn(&str, &str) -> Result<String, ReferenceError>) -> Self {
        let golden = GOLDEN_FILES
            .iter()
            .map(|&(id, file, text)| {
                let parsed = load(file, text).and_then(|t| {
                    let table = GoldenTable::parse(&t)
                        .map_err(|source| ReferenceError::Golden { file: file.to_string(), source })?;
                    if table.id != id {
                        return Err(ReferenceError::WrongId {
                            file: file.to_string(),
                            expected: id.to_string(),
                            found: table.id,
                        });
                    }
                    Ok(table)
                });
                (id.to_string(), parsed)
            })
            .collect();
        let tensor = load(APPENDIX_A.0, APPENDIX_A.1).and_then(|t| parse_tensor_lines(APPENDIX_A.0, &t));
        let branch = load(APPENDIX_B.0, APPENDIX_B.1).and_then(|t| parse_branchings(APPENDIX_B.0, &t));
        Self { golden, tensor, branch }
    }

    pub fn golden(&self, id: &str) -> Result<&GoldenTable, ReferenceError> {
        match self.golden.get(id) {
            Some(Ok(t)) => Ok(t),
            Some(Err(e)) => Err(e.clone()),
            None => Err(ReferenceError::Missing(id.to_string())),
        }
    }

    pub fn golden_ids(&self) -> impl Iterator<Item = &str> {
        self.golden.keys().map(String::as_str)
    }

    pub fn tensor_lines(&self) -> Result<&[TensorLine], ReferenceError> {
        self.tensor.as_deref().map_err(Clone::clone)
    }

    pub fn branchings(&self) -> Result<&[BranchTable], ReferenceError> {
        self.branch.as_deref().map_err(Clone::clone)
    }
}

impl Default for ReferenceData {
    fn default() -> Self {
        Self::embedded()
    }
}

/// Parses `"1 + 3_1 + 2(7_2)"` into label multiplicities.
pub fn parse_sum(text: &str) -> Result<BTreeMap<String, u64>, String> {
    let mut out = BTreeMap::new();
    for term in text.split('+').map(str::trim) {
        if term.is_empty() {
            return Err(format!("empty term in {text:?}"));
        }
        let (m, label) = match term.split_once('(') {
            Some((m, rest)) => {
                let label = rest.strip_suffix(')').ok_or_else(|| format!("unclosed term {term:?}"))?;
                (m.trim().parse::<u64>().map_err(|_| format!("bad multiplicity in {term:?}"))?, label.trim())
            }
            None => (1, term),
        };
        if label.is_empty() || label.contains(char::is_whitespace) {
            return Err(format!("bad label {label:?}"));
        }
        *out.entry(label.to_string()).or_insert(0) += m;
    }
    Ok(out)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn parse_tensor_lines(file: &str, text: &str) -> Result<Vec<TensorLine>, ReferenceError> {
    let err = |line: usize, message: String| ReferenceError::Syntax { file: file.to_string(), line, message };
    let mut groups: Vec<String> = Vec::new();
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("section ") {
            groups = rest.split_whitespace().map(String::from).collect();
            continue;
        }
        if groups.is_empty() {
            return Err(err(line_no, "product line before any section".into()));
        }
        let (line, flagged) = match line.strip_suffix('!') {
            Some(l) => (l.trim(), true),
            None => (line, false),
        };
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| err(line_no, "missing '='".into()))?;
        let (left, right) = lhs.split_once(" x ").ok_or_else(|| err(line_no, "missing ' x '".into()))?;
        let terms = parse_sum(rhs).map_err(|m| err(line_no, m))?;
        out.push(TensorLine {
            groups: groups.clone(),
            left: left.trim().to_string(),
            right: right.trim().to_string(),
            terms,
            flagged,
            line: line_no,
            text: line.to_string(),
        });
    }
    Ok(out)
}

pub fn parse_branchings(file: &str, text: &str) -> Result<Vec<BranchTable>, ReferenceError> {
    let err = |line: usize, message: String| ReferenceError::Syntax { file: file.to_string(), line, message };
    let mut out: Vec<BranchTable> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("branch ") {
            let (parents, sub) = rest.split_once('>').ok_or_else(|| err(line_no, "missing '>'".into()))?;
            let parents: Vec<String> = parents.split_whitespace().map(String::from).collect();
            if parents.is_empty() || sub.trim().is_empty() {
                return Err(err(line_no, "empty group name".into()));
            }
            out.push(BranchTable { parents, subgroup: sub.trim().to_string(), rows: Vec::new() });
            continue;
        }
        let table = out.last_mut().ok_or_else(|| err(line_no, "row before any branch header".into()))?;
        let (label, rhs) = line.split_once('=').ok_or_else(|| err(line_no, "missing '='".into()))?;
        let terms = parse_sum(rhs).map_err(|m| err(line_no, m))?;
        table.rows.push((label.trim().to_string(), terms));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums() {
        let s = parse_sum("1 + 3_1 + 2(7_2) + 3_1").unwrap();
        assert_eq!(s["3_1"], 2);
        assert_eq!(s["7_2"], 2);
        assert!(parse_sum("1 + ").is_err());
    }

    #[test]
    fn embedded_data_parses() {
        let r = ReferenceData::embedded();
        for id in ["I", "II", "III", "IV", "V", "VII"] {
            r.golden(id).unwrap();
        }
        let lines = r.tensor_lines().unwrap();
        assert_eq!(lines.iter().filter(|l| l.flagged).count(), 1);
        assert_eq!(r.branchings().unwrap().len(), 4);
    }

    #[test]
    fn overrides_replace_files() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("table_II.txt"), "garbage\n").unwrap();
        let r = ReferenceData::with_overrides(dir.path());
        assert!(r.golden("I").is_ok());
        let e = r.golden("II").unwrap_err();
        assert!(e.to_string().contains("table_II.txt"));
    }
}
