//! Named generators, the group roster, reference data and the verification
//! suite.

mod generators;
mod reference;
mod verify;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::chartab::{self, align_to_golden, AlignmentReport, CharacterTable, ChartabError, GoldenTable};
use crate::group::{Group, GroupError};
use crate::quaternion::{pair_group, pair_to_signedperm7};
use crate::signed_perm::SignedPerm;

pub use generators::{diagonal_labels, generator, realize_label_action, rtl_product, GENERATORS, PAIR_IDENTIFICATION};
pub use reference::{
    parse_branchings, parse_sum, parse_tensor_lines, BranchTable, ReferenceData, ReferenceError, TensorLine,
    APPENDIX_A, APPENDIX_B, GOLDEN_FILES,
};
pub use verify::{section_names, verify_all, ClaimResult, ClaimStatus, VerificationReport};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("{group}: expected {what} {expected}, got {actual}")]
    Expectation { group: String, what: &'static str, expected: String, actual: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error("{group} has no irrep labelled {label:?}")]
    UnknownLabel { group: String, label: String },
    #[error("{0} is not a subgroup of {1}")]
    NotSubgroup(String, String),
    #[error(transparent)]
    Reference(#[from] ReferenceError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Generators(&'static [&'static str]),
    /// Label permutations realized as Fano collineations, plus extra generators.
    LabelAction {
        tilde: &'static [&'static str],
        extra: &'static [&'static str],
    },
    /// Image of the quaternion pair group in degree 7.
    Pairs,
}

#[derive(Clone, Copy, Debug)]
pub struct NamedGroup {
    pub name: &'static str,
    pub source: Source,
    /// Used when `source` misses the expected order or class count.
    pub fallback: Option<Source>,
    pub expected_order: usize,
    pub expected_class_count: usize,
    pub golden_table: Option<&'static str>,
    /// Decomposition of the natural character used to pick among equally
    /// valid label alignments.
    pub natural_hint: Option<&'static str>,
    /// Orders line of the golden table belonging to this group.
    pub orders_key: Option<&'static str>,
}

const fn entry(
    name: &'static str,
    source: Source,
    expected_order: usize,
    expected_class_count: usize,
    golden_table: &'static str,
    natural_hint: Option<&'static str>,
    orders_key: &'static str,
) -> NamedGroup {
    NamedGroup {
        name,
        source,
        fallback: None,
        expected_order,
        expected_class_count,
        golden_table: Some(golden_table),
        natural_hint,
        orders_key: Some(orders_key),
    }
}

const fn with_fallback(mut g: NamedGroup, fallback: Source) -> NamedGroup {
    g.fallback = Some(fallback);
    g
}

use Source::{Generators, LabelAction};

pub const ROSTER: [NamedGroup; 11] = [
    entry("7:3", Generators(&["alpha", "beta"]), 21, 5, "I", Some("1 + 3_1 + 3_2"), "7:3"),
    entry("2^3:7:3", Generators(&["alpha", "beta", "N1"]), 168, 8, "II", Some("7_1"), "2^3:7:3"),
    entry("2^3.PSL2(7)", Generators(&["alpha", "gamma"]), 1344, 11, "IV", Some("7_1"), "2^3.PSL2(7)"),
    entry("4.S4:2", Generators(&["gamma", "theta"]), 192, 14, "V", Some("1_1 + 6_3"), "4.S4:2"),
    with_fallback(
        entry("2^3.S4", Generators(&["A", "B"]), 192, 13, "VII", Some("3_1 + 4_1"), "2^3.S4"),
        Generators(&["A_corrected", "B"]),
    ),
    entry("PSL2(7)", Generators(&["alpha_t", "beta_t", "gamma_t"]), 168, 6, "III", Some("1 + 6"), "PSL2(7)"),
    entry(
        "2^3:PSL2(7)",
        Generators(&["alpha_t", "beta_t", "gamma_t", "N1"]),
        1344,
        11,
        "IV",
        Some("7_3"),
        "2^3:PSL2(7)",
    ),
    with_fallback(
        entry(
            "PSL2(7)-second",
            Generators(&["alpha_t", "beta_t", "delta"]),
            168,
            6,
            "III",
            Some("7"),
            "PSL2(7)-second",
        ),
        Generators(&["alpha_t", "beta_t", "delta_second"]),
    ),
    entry("2^3:S4", LabelAction { tilde: &["A_t", "B_t"], extra: &["N1"] }, 192, 13, "VII", None, "2^3:S4"),
    entry("4:S4:2", LabelAction { tilde: &["gamma_t", "theta_t"], extra: &["N1"] }, 192, 14, "V", None, "4:S4:2"),
    entry("2^3.S4-pairs", Source::Pairs, 192, 13, "VII", Some("3_1 + 4_1"), "2^3.S4"),
];

pub fn named_group(name: &str) -> Result<&'static NamedGroup, CatalogError> {
    ROSTER.iter().find(|g| g.name == name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))
}

pub fn group_names() -> impl Iterator<Item = &'static str> {
    ROSTER.iter().map(|g| g.name)
}

/// Generators for a source; for the pair group, the images of all 192 pairs.
pub fn generators_of(source: Source) -> Result<Vec<SignedPerm>, CatalogError> {
    match source {
        Generators(names) => names.iter().map(|n| generator(n)).collect(),
        LabelAction { tilde, extra } => {
            let mut out = Vec::new();
            for name in tilde {
                let perm = generator(name)?;
                out.push(realize_label_action(&perm).ok_or_else(|| CatalogError::Expectation {
                    group: name.to_string(),
                    what: "collineation with label action",
                    expected: perm.to_cycles(),
                    actual: "none".into(),
                })?);
            }
            for name in extra {
                out.push(generator(name)?);
            }
            Ok(out)
        }
        Source::Pairs => Ok(pair_group()
            .iter()
            .map(|g| pair_to_signedperm7(g).expect("pair group elements act monomially"))
            .collect()),
    }
}

/// Closes `source` and checks the expectations of `entry`.
pub fn build_from(entry: &NamedGroup, source: Source) -> Result<Group, CatalogError> {
    let g = Group::close(&generators_of(source)?)?;
    let expect = |what, expected: usize, actual: usize| {
        if expected == actual {
            Ok(())
        } else {
            Err(CatalogError::Expectation {
                group: entry.name.to_string(),
                what,
                expected: expected.to_string(),
                actual: actual.to_string(),
            })
        }
    };
    expect("order", entry.expected_order, g.order())?;
    expect("class count", entry.expected_class_count, g.classes().len())?;
    Ok(g)
}

/// The named group, from its fallback generators if the primary ones miss
/// the expectations. The second component is the primary failure, if any.
pub fn build_with_outcome(name: &str) -> Result<(Group, Option<CatalogError>), CatalogError> {
    let entry = named_group(name)?;
    match build_from(entry, entry.source) {
        Ok(g) => Ok((g, None)),
        Err(e @ CatalogError::Expectation { .. }) => match entry.fallback {
            Some(fb) => Ok((build_from(entry, fb)?, Some(e))),
            None => Err(e),
        },
        Err(e) => Err(e),
    }
}

pub fn build(name: &str) -> Result<Group, CatalogError> {
    build_with_outcome(name).map(|(g, _)| g)
}

/// Character table of a roster group with its best alignment to the golden
/// transcription, if any.
#[derive(Debug)]
pub struct TableInfo {
    pub table: CharacterTable,
    pub golden: Option<GoldenTable>,
    pub report: Option<AlignmentReport>,
    /// Index into `report.alignments` of the alignment used for labels.
    pub chosen: Option<usize>,
}

impl TableInfo {
    /// Reference labels when aligned, canonical `d{deg}_{k}` labels otherwise.
    pub fn labels(&self) -> Vec<String> {
        match (&self.golden, &self.report, self.chosen) {
            (Some(golden), Some(report), Some(i)) => report.alignments[i].irrep_labels(golden),
            _ => self.table.canonical_labels(),
        }
    }

    pub fn is_aligned(&self) -> bool {
        self.chosen.is_some()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    /// Irrep indices ordered by label: by degree, then suffix.
    pub fn irrep_order(&self) -> Vec<usize> {
        let labels = self.labels();
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by_key(|&i| label_key(&labels[i]));
        order
    }

    /// Class indices in reference column order when aligned.
    pub fn class_order(&self) -> Vec<usize> {
        match (&self.report, self.chosen) {
            (Some(report), Some(i)) => report.alignments[i].class_map.clone(),
            _ => (0..self.table.class_count()).collect(),
        }
    }

    /// Reference class names when aligned, `C{k}` in computed order otherwise.
    pub fn class_names(&self) -> Vec<String> {
        let fallback = || (1..=self.table.class_count()).map(|k| format!("C{k}")).collect();
        let (Some(golden), Some(report), Some(i)) = (&self.golden, &self.report, self.chosen) else {
            return fallback();
        };
        let mut out = vec![String::new(); self.table.class_count()];
        for (c, &k) in report.alignments[i].class_map.iter().enumerate() {
            out[k] = golden.class_names[c].clone();
        }
        out
    }
}

/// Lazily built groups and tables for the whole roster.
pub struct Catalog {
    reference: ReferenceData,
    groups: Vec<OnceLock<Result<(Group, Option<String>), String>>>,
    tables: Vec<OnceLock<Result<TableInfo, String>>>,
}

impl Catalog {
    pub fn new(reference: ReferenceData) -> Self {
        Self {
            reference,
            groups: ROSTER.iter().map(|_| OnceLock::new()).collect(),
            tables: ROSTER.iter().map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn reference(&self) -> &ReferenceData {
        &self.reference
    }

    fn slot(name: &str) -> Result<usize, CatalogError> {
        ROSTER.iter().position(|g| g.name == name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))
    }

    pub fn group(&self, name: &str) -> Result<&Group, CatalogError> {
        let i = Self::slot(name)?;
        self.groups[i]
            .get_or_init(|| {
                build_with_outcome(name).map(|(g, e)| (g, e.map(|e| e.to_string()))).map_err(|e| e.to_string())
            })
            .as_ref()
            .map(|(g, _)| g)
            .map_err(|e| CatalogError::Expectation {
                group: name.to_string(),
                what: "construction",
                expected: "success".into(),
                actual: e.clone(),
            })
    }

    /// Why the primary generators were rejected, when the fallback was used.
    pub fn primary_failure(&self, name: &str) -> Result<Option<&str>, CatalogError> {
        self.group(name)?;
        let i = Self::slot(name)?;
        Ok(self.groups[i].get().and_then(|r| r.as_ref().ok()).and_then(|(_, e)| e.as_deref()))
    }

    pub fn table(&self, name: &str) -> Result<&TableInfo, CatalogError> {
        let i = Self::slot(name)?;
        let g = self.group(name)?;
        self.tables[i].get_or_init(|| self.compute_table(&ROSTER[i], g).map_err(|e| e.to_string())).as_ref().map_err(
            |e| CatalogError::Expectation {
                group: name.to_string(),
                what: "character table",
                expected: "success".into(),
                actual: e.clone(),
            },
        )
    }

    /// Decomposition of `left x right` keyed by irrep label.
    pub fn tensor(&self, group: &str, left: &str, right: &str) -> Result<BTreeMap<String, u64>, CatalogError> {
        let info = self.table(group)?;
        let labels = info.labels();
        let index = |label: &str| {
            labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| CatalogError::UnknownLabel { group: group.to_string(), label: label.to_string() })
        };
        let mults = info.table.tensor_decompose(index(left)?, index(right)?)?;
        Ok(labeled_multiplicities(&mults, &labels))
    }

    /// Restriction of every irrep of `group` to `subgroup`, in irrep order.
    pub fn branching(&self, group: &str, subgroup: &str) -> Result<Vec<(String, BTreeMap<String, u64>)>, CatalogError> {
        let (g, h) = (self.group(group)?, self.group(subgroup)?);
        if !g.contains_group(h) {
            return Err(CatalogError::NotSubgroup(subgroup.to_string(), group.to_string()));
        }
        let (tg, th) = (self.table(group)?, self.table(subgroup)?);
        let rows = chartab::branch(g, h, &tg.table, &th.table)?;
        let sub_labels = th.labels();
        Ok(tg.labels().into_iter().zip(rows).map(|(l, m)| (l, labeled_multiplicities(&m, &sub_labels))).collect())
    }

    fn compute_table(&self, entry: &NamedGroup, g: &Group) -> Result<TableInfo, CatalogError> {
        let table = chartab::character_table(g)?;
        let Some(id) = entry.golden_table else {
            return Ok(TableInfo { table, golden: None, report: None, chosen: None });
        };
        let golden = match self.reference.golden(id) {
            Ok(t) => t.clone(),
            Err(_) => return Ok(TableInfo { table, golden: None, report: None, chosen: None }),
        };
        let report = align_to_golden(&table, &golden, entry.orders_key);
        let chosen = choose_alignment(&table, &golden, &report, g, entry.natural_hint);
        Ok(TableInfo { table, golden: Some(golden), report: Some(report), chosen })
    }
}

/// Prefers the first alignment under which the natural character decomposes
/// as `hint`.
fn choose_alignment(
    table: &CharacterTable,
    golden: &GoldenTable,
    report: &AlignmentReport,
    g: &Group,
    hint: Option<&str>,
) -> Option<usize> {
    if report.alignments.is_empty() {
        return None;
    }
    let Some(hint) = hint else {
        return Some(0);
    };
    let Ok(mults) = table.decompose(&chartab::natural_character(g).values) else {
        return Some(0);
    };
    let Ok(want) = reference::parse_sum(hint) else {
        return Some(0);
    };
    report.alignments.iter().position(|a| labeled_multiplicities(&mults, &a.irrep_labels(golden)) == want).or(Some(0))
}

/// Orders labels by degree, then suffix: `1 < 1_1 < 3_2 < 21_1`.
fn label_key(label: &str) -> (u64, &str) {
    let body = label.strip_prefix('d').unwrap_or(label);
    let end = body.find(|c: char| !c.is_ascii_digit()).unwrap_or(body.len());
    (body[..end].parse().unwrap_or(u64::MAX), &body[end..])
}

/// Renders multiplicities as `1 + 3_1 + 2(8)`, smallest degree first.
pub fn render_sum(m: &BTreeMap<String, u64>) -> String {
    let mut terms: Vec<(&String, &u64)> = m.iter().collect();
    terms.sort_by_key(|(l, _)| label_key(l));
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(l, k)| if **k == 1 { l.to_string() } else { format!("{k}({l})") })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Multiplicities keyed by label, skipping zeros.
pub fn labeled_multiplicities(mults: &[u64], labels: &[String]) -> BTreeMap<String, u64> {
    mults.iter().zip(labels).filter(|(m, _)| **m > 0).map(|(m, l)| (l.clone(), *m)).collect()
}
