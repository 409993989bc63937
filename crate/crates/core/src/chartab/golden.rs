//! Transcribed reference character tables and their alignment with computed
//! tables.
//!
//! File format, one directive per line (`#` starts a comment):
//!
//! ```text
//! table I
//! classes C1 C2 C3 C4 C5
//! sizes 1 7 7 3 3
//! orders 7:3 1 3 3 7 7
//! row 1_1 | 1 mu mu_bar 1 1
//! ```
//!
//! A table may carry one `orders` line per group sharing it. Cells are
//! integers, cyclotomics in the `z{n}^{k}` grammar (written without spaces),
//! or `mu`, `mu_bar`, `eta`, `eta_bar`, optionally negated. `printed!suspected`
//! marks a cell believed to be a misprint.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::CharacterTable;
use crate::arith::Cyclotomic;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseGoldenError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoldenCell {
    Value(Cyclotomic),
    Flagged { printed: Cyclotomic, suspected: Cyclotomic },
}

impl GoldenCell {
    pub fn printed(&self) -> &Cyclotomic {
        match self {
            Self::Value(v) | Self::Flagged { printed: v, .. } => v,
        }
    }

    pub fn is_flagged(&self) -> bool {
        matches!(self, Self::Flagged { .. })
    }
}

impl fmt::Display for GoldenCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Value(v) => write!(f, "{v}"),
            Self::Flagged { printed, suspected } => write!(f, "{printed} (suspected {suspected})"),
        }
    }
}

/// A class-size entry; `suspected` is set when the printed value is flagged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoldenSize {
    pub printed: u64,
    pub suspected: Option<u64>,
}

impl GoldenSize {
    pub fn effective(&self) -> u64 {
        self.suspected.unwrap_or(self.printed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenTable {
    pub id: String,
    pub class_names: Vec<String>,
    pub sizes: Vec<GoldenSize>,
    pub orders: Vec<(String, Vec<u64>)>,
    pub rows: Vec<(String, Vec<GoldenCell>)>,
}

fn symbol(s: &str) -> Option<Cyclotomic> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let v: Cyclotomic = match body {
        "mu" => "z3".parse().ok()?,
        "mu_bar" => "z3^2".parse().ok()?,
        "eta" => "z7+z7^2+z7^4".parse().ok()?,
        "eta_bar" => "z7^3+z7^5+z7^6".parse().ok()?,
        _ => return None,
    };
    Some(if neg { -v } else { v })
}

fn parse_value(s: &str) -> Option<Cyclotomic> {
    symbol(s).or_else(|| s.parse().ok())
}

fn parse_cell(s: &str) -> Option<GoldenCell> {
    match s.split_once('!') {
        Some((a, b)) => Some(GoldenCell::Flagged { printed: parse_value(a)?, suspected: parse_value(b)? }),
        None => parse_value(s).map(GoldenCell::Value),
    }
}

fn parse_size(s: &str) -> Option<GoldenSize> {
    match s.split_once('!') {
        Some((a, b)) => Some(GoldenSize { printed: a.parse().ok()?, suspected: Some(b.parse().ok()?) }),
        None => Some(GoldenSize { printed: s.parse().ok()?, suspected: None }),
    }
}

impl GoldenTable {
    pub fn parse(text: &str) -> Result<Self, ParseGoldenError> {
        let mut id = None;
        let mut class_names = Vec::new();
        let mut sizes = Vec::new();
        let mut orders = Vec::new();
        let mut rows = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |message: String| ParseGoldenError { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            let words: Vec<&str> = rest.split_whitespace().collect();
            match key {
                "table" => id = Some(rest.trim().to_string()),
                "classes" => class_names = words.iter().map(|w| w.to_string()).collect(),
                "sizes" => {
                    sizes = words
                        .iter()
                        .map(|w| parse_size(w).ok_or_else(|| err(format!("bad class size {w:?}"))))
                        .collect::<Result<_, _>>()?
                }
                "orders" => {
                    let (group, vals) = words.split_first().ok_or_else(|| err("orders line needs a group".into()))?;
                    let vals = vals
                        .iter()
                        .map(|w| w.parse().map_err(|_| err(format!("bad element order {w:?}"))))
                        .collect::<Result<Vec<u64>, _>>()?;
                    orders.push((group.to_string(), vals));
                }
                "row" => {
                    let (label, cells) = rest.split_once('|').ok_or_else(|| err("row needs 'label | cells'".into()))?;
                    let cells = cells
                        .split_whitespace()
                        .map(|w| parse_cell(w).ok_or_else(|| err(format!("bad cell {w:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push((label.trim().to_string(), cells));
                }
                other => return Err(err(format!("unknown directive {other:?}"))),
            }
        }
        let err = |message: &str| ParseGoldenError { line: 0, message: message.into() };
        let id = id.ok_or_else(|| err("missing 'table' line"))?;
        let r = sizes.len();
        if r == 0 {
            return Err(err("missing 'sizes' line"));
        }
        if class_names.is_empty() {
            class_names = (1..=r).map(|k| format!("C{k}")).collect();
        }
        if class_names.len() != r || orders.iter().any(|(_, o)| o.len() != r) || rows.iter().any(|(_, c)| c.len() != r)
        {
            return Err(err("column counts disagree"));
        }
        if rows.len() != r {
            return Err(err("row count differs from class count"));
        }
        Ok(Self { id, class_names, sizes, orders, rows })
    }

    pub fn orders_for(&self, group: &str) -> Option<&[u64]> {
        self.orders.iter().find(|(g, _)| g == group).map(|(_, o)| o.as_slice())
    }

    pub fn labels(&self) -> Vec<String> {
        self.rows.iter().map(|(l, _)| l.clone()).collect()
    }
}

/// A cell the transcription marks as a suspected misprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlaggedCell {
    pub row: String,
    pub class: String,
    pub printed: Cyclotomic,
    pub suspected: Cyclotomic,
    pub computed: Cyclotomic,
}

/// Golden column `c` is computed class `class_map[c]`; golden row `r` is
/// computed irrep `row_map[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alignment {
    pub class_map: Vec<usize>,
    pub row_map: Vec<usize>,
    pub flagged: Vec<FlaggedCell>,
}

impl Alignment {
    /// Golden label of each computed irrep.
    pub fn irrep_labels(&self, golden: &GoldenTable) -> Vec<String> {
        let mut out = vec![String::new(); self.row_map.len()];
        for (r, &i) in self.row_map.iter().enumerate() {
            out[i] = golden.rows[r].0.clone();
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct AlignmentReport {
    /// Every alignment found, one per distinct irrep labeling.
    pub alignments: Vec<Alignment>,
    /// Cell-level description of the closest miss when nothing aligns.
    pub mismatches: Vec<String>,
    /// Flagged class sizes that differ from the computed sizes: `(class, printed, computed)`.
    pub flagged_sizes: Vec<(String, u64, u64)>,
}

impl AlignmentReport {
    pub fn is_aligned(&self) -> bool {
        !self.alignments.is_empty()
    }
}

const MAX_CLASS_PERMUTATIONS: usize = 2_000_000;

/// Searches class and irrep permutations making `table` equal `golden`
/// outside flagged cells. Columns may only be matched to classes of equal
/// size and, when `group` has an orders line, equal element order.
pub fn align_to_golden(table: &CharacterTable, golden: &GoldenTable, group: Option<&str>) -> AlignmentReport {
    let mut report = AlignmentReport::default();
    let r = table.class_count();
    if golden.sizes.len() != r {
        report.mismatches.push(format!("{} golden classes vs {r} computed", golden.sizes.len()));
        return report;
    }
    let orders = group.and_then(|g| golden.orders_for(g));
    let key = |c: usize| -> (u64, Option<u64>) { (golden.sizes[c].effective(), orders.map(|o| o[c])) };
    let ckey = |k: usize| -> (u64, Option<u64>) {
        (table.classes[k].size as u64, orders.map(|_| table.classes[k].element_order))
    };

    // candidate classes per golden column
    let cands: Vec<Vec<usize>> = (0..r).map(|c| (0..r).filter(|&k| ckey(k) == key(c)).collect()).collect();
    let mut golden_keys: Vec<_> = (0..r).map(key).collect();
    let mut computed_keys: Vec<_> = (0..r).map(ckey).collect();
    golden_keys.sort();
    computed_keys.sort();
    if golden_keys != computed_keys {
        report
            .mismatches
            .push(format!("class (size, order) multisets differ: golden {golden_keys:?}, computed {computed_keys:?}"));
        return report;
    }

    // intern values so that comparisons are integer comparisons
    let mut ids: HashMap<Cyclotomic, u32> = HashMap::new();
    let mut intern = |v: &Cyclotomic| -> u32 {
        let n = ids.len() as u32;
        *ids.entry(v.clone()).or_insert(n)
    };
    let comp: Vec<Vec<u32>> = table.irreps.iter().map(|row| row.values.iter().map(&mut intern).collect()).collect();
    let gold: Vec<Vec<Option<u32>>> = golden
        .rows
        .iter()
        .map(|(_, cells)| cells.iter().map(|c| if c.is_flagged() { None } else { Some(intern(c.printed())) }).collect())
        .collect();

    let mut seen_row_maps: Vec<Vec<usize>> = Vec::new();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut class_map = vec![usize::MAX; r];
    let mut used = vec![false; r];
    let mut visited = 0usize;
    search_columns(0, &cands, &mut class_map, &mut used, &mut visited, &mut |cm: &[usize]| {
        let matches: Vec<Vec<usize>> = gold
            .iter()
            .map(|g| (0..r).filter(|&i| (0..r).all(|c| g[c].is_none_or(|v| comp[i][cm[c]] == v))).collect())
            .collect();
        if matches.iter().all(|m| !m.is_empty()) {
            for row_map in perfect_matchings(&matches, r) {
                if !seen_row_maps.contains(&row_map) {
                    seen_row_maps.push(row_map.clone());
                    report.alignments.push(Alignment { class_map: cm.to_vec(), row_map, flagged: Vec::new() });
                }
            }
        }
        if report.alignments.is_empty() {
            let miss: usize = gold
                .iter()
                .map(|g| {
                    (0..r)
                        .map(|i| (0..r).filter(|&c| g[c].is_some_and(|v| comp[i][cm[c]] != v)).count())
                        .min()
                        .unwrap_or(r)
                })
                .sum();
            if best.as_ref().is_none_or(|(b, _)| miss < *b) {
                best = Some((miss, cm.to_vec()));
            }
        }
    });

    for al in &mut report.alignments {
        for (gr, (label, cells)) in golden.rows.iter().enumerate() {
            for (c, cell) in cells.iter().enumerate() {
                if let GoldenCell::Flagged { printed, suspected } = cell {
                    al.flagged.push(FlaggedCell {
                        row: label.clone(),
                        class: golden.class_names[c].clone(),
                        printed: printed.clone(),
                        suspected: suspected.clone(),
                        computed: table.irreps[al.row_map[gr]].values[al.class_map[c]].clone(),
                    });
                }
            }
        }
    }
    for (c, s) in golden.sizes.iter().enumerate() {
        if s.suspected.is_some() {
            report.flagged_sizes.push((golden.class_names[c].clone(), s.printed, s.effective()));
        }
    }
    if !report.is_aligned() {
        if let Some((_, cm)) = best {
            for (gr, (label, cells)) in golden.rows.iter().enumerate() {
                let bestrow = (0..r)
                    .min_by_key(|&i| (0..r).filter(|&c| gold[gr][c].is_some_and(|v| comp[i][cm[c]] != v)).count())
                    .unwrap_or(0);
                for (c, cell) in cells.iter().enumerate() {
                    let computed = &table.irreps[bestrow].values[cm[c]];
                    if !cell.is_flagged() && computed != cell.printed() {
                        report.mismatches.push(format!(
                            "row {label}, class {}: golden {}, computed {computed}",
                            golden.class_names[c],
                            cell.printed()
                        ));
                    }
                }
            }
        }
    }
    report
}

fn search_columns(
    c: usize,
    cands: &[Vec<usize>],
    class_map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visited: &mut usize,
    on_full: &mut dyn FnMut(&[usize]),
) {
    if *visited >= MAX_CLASS_PERMUTATIONS {
        return;
    }
    if c == cands.len() {
        *visited += 1;
        on_full(class_map);
        return;
    }
    for &k in &cands[c] {
        if !used[k] {
            used[k] = true;
            class_map[c] = k;
            search_columns(c + 1, cands, class_map, used, visited, on_full);
            used[k] = false;
        }
    }
}

/// All bijections golden row → computed row choosing from `options`.
fn perfect_matchings(options: &[Vec<usize>], r: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, options: &[Vec<usize>], used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == options.len() {
            out.push(cur.clone());
            return;
        }
        for &k in &options[i] {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                go(i + 1, options, used, cur, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, options, &mut vec![false; r], &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY: &str = "table T\nsizes 1 1\norders G 1 2\nrow 1 | 1 1\nrow 1_1 | 1 -1\n";

    #[test]
    fn parse_symbols_and_flags() {
        assert_eq!(symbol("-mu_bar"), Some(-"z3^2".parse::<Cyclotomic>().unwrap()));
        let eta = symbol("eta").unwrap();
        assert_eq!(eta.clone() + symbol("eta_bar").unwrap(), Cyclotomic::from_int(-1));
        assert_eq!(
            parse_cell("3!2"),
            Some(GoldenCell::Flagged { printed: Cyclotomic::from_int(3), suspected: Cyclotomic::from_int(2) })
        );
        let t = GoldenTable::parse(TINY).unwrap();
        assert_eq!(t.orders_for("G"), Some(&[1, 2][..]));
        assert_eq!(t.class_names, vec!["C1", "C2"]);
    }

    #[test]
    fn parse_errors() {
        assert!(GoldenTable::parse("sizes 1\nrow 1 | 1\n").is_err());
        let e = GoldenTable::parse("table T\nsizes 1\nrow 1 | q\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(GoldenTable::parse("table T\nsizes 1 1\nrow 1 | 1 1\n").is_err());
    }
}
