//! Command-line front end. Each subcommand renders results computed by the
//! catalog.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{render_sum, verify_all, Catalog, CatalogError, ClaimStatus, ReferenceData};
use crate::octonion::{Octonion, OctonionError};

#[derive(Parser, Debug)]
#[command(name = "octgroup", version, about = "Octonion automorphism groups of order 1344 and their subgroups")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Directory whose reference files replace the built-in transcriptions.
    #[arg(long, global = true)]
    pub golden_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Conjugacy classes and irreducible characters.
    Chartab { group: String },
    /// Decomposition of a tensor product of two irreps.
    Tensor { group: String, left: String, right: String },
    /// Restriction of every irrep of a group to a subgroup.
    Branch { group: String, subgroup: String },
    /// Check the catalog against the reference data.
    Verify {
        /// Section name or claim-id substring.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Product of octonions written like "e1 + 2*e3", left to right.
    Octmul {
        #[arg(required = true, num_args = 1..)]
        factors: Vec<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Octonion(#[from] OctonionError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

/// Rendered output and the process exit code.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

#[derive(Serialize)]
struct ClassDoc {
    name: String,
    representative: String,
    size: usize,
    order: u64,
}

#[derive(Serialize)]
struct IrrepDoc {
    label: String,
    degree: u64,
    values: Vec<String>,
}

#[derive(Serialize)]
struct ChartabDoc {
    group: String,
    order: usize,
    aligned: bool,
    classes: Vec<ClassDoc>,
    irreps: Vec<IrrepDoc>,
}

#[derive(Serialize)]
struct TensorDoc<'a> {
    group: &'a str,
    left: &'a str,
    right: &'a str,
    decomposition: &'a BTreeMap<String, u64>,
    text: String,
}

#[derive(Serialize)]
struct BranchRow {
    irrep: String,
    decomposition: BTreeMap<String, u64>,
    text: String,
}

#[derive(Serialize)]
struct BranchDoc<'a> {
    group: &'a str,
    subgroup: &'a str,
    rows: Vec<BranchRow>,
}

#[derive(Serialize)]
struct OctmulDoc {
    factors: Vec<String>,
    product: String,
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let reference = match &cli.golden_dir {
        Some(dir) => ReferenceData::with_overrides(dir),
        None => ReferenceData::embedded(),
    };
    let catalog = Catalog::new(reference);
    match &cli.command {
        Command::Chartab { group } => chartab(&catalog, group, cli.format),
        Command::Tensor { group, left, right } => tensor(&catalog, group, left, right, cli.format),
        Command::Branch { group, subgroup } => branch(&catalog, group, subgroup, cli.format),
        Command::Verify { filter } => Ok(verify(&catalog, filter.as_deref(), cli.format)),
        Command::Octmul { factors } => octmul(factors, cli.format),
    }
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn chartab(catalog: &Catalog, group: &str, format: Format) -> Result<Output, CliError> {
    let info = catalog.table(group)?;
    let labels = info.labels();
    let names = info.class_names();
    let class_order = info.class_order();
    let doc = ChartabDoc {
        group: group.to_string(),
        order: info.table.group_order,
        aligned: info.is_aligned(),
        classes: info
            .class_order()
            .into_iter()
            .map(|k| (&info.table.classes[k], &names[k]))
            .map(|(c, name)| ClassDoc {
                name: name.clone(),
                representative: c.representative.to_cycles(),
                size: c.size,
                order: c.element_order,
            })
            .collect(),
        irreps: info
            .irrep_order()
            .into_iter()
            .map(|i| IrrepDoc {
                label: labels[i].clone(),
                degree: info.table.irreps[i].degree,
                values: class_order.iter().map(|&k| info.table.irreps[i].values[k].to_string()).collect(),
            })
            .collect(),
    };
    if format == Format::Json {
        return Ok(Output::ok(json(&doc)));
    }
    let mut grid: Vec<Vec<String>> = vec![
        std::iter::once(doc.group.clone()).chain(doc.classes.iter().map(|c| c.name.clone())).collect(),
        std::iter::once("size".to_string()).chain(doc.classes.iter().map(|c| c.size.to_string())).collect(),
        std::iter::once("order".to_string()).chain(doc.classes.iter().map(|c| c.order.to_string())).collect(),
    ];
    grid.extend(doc.irreps.iter().map(|r| std::iter::once(r.label.clone()).chain(r.values.iter().cloned()).collect()));
    let widths: Vec<usize> =
        (0..grid[0].len()).map(|c| grid.iter().map(|row| row[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &grid {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    writeln!(out, "\nrepresentatives").unwrap();
    let w = doc.classes.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &doc.classes {
        writeln!(out, "{:<w$}  {}", c.name, c.representative).unwrap();
    }
    if !doc.aligned {
        writeln!(out, "\nno alignment with the reference table; labels are d{{degree}}_{{index}}").unwrap();
    }
    Ok(Output::ok(out))
}

fn tensor(catalog: &Catalog, group: &str, left: &str, right: &str, format: Format) -> Result<Output, CliError> {
    let decomposition = catalog.tensor(group, left, right)?;
    let text = render_sum(&decomposition);
    Ok(Output::ok(match format {
        Format::Json => json(&TensorDoc { group, left, right, decomposition: &decomposition, text }),
        Format::Text => format!("{left} x {right} = {text}\n"),
    }))
}

fn branch(catalog: &Catalog, group: &str, subgroup: &str, format: Format) -> Result<Output, CliError> {
    let order = catalog.table(group)?.irrep_order();
    let mut branching: Vec<_> = catalog.branching(group, subgroup)?.into_iter().map(Some).collect();
    let rows: Vec<BranchRow> = order
        .iter()
        .filter_map(|&i| branching[i].take())
        .map(|(irrep, decomposition)| {
            let text = render_sum(&decomposition);
            BranchRow { irrep, decomposition, text }
        })
        .collect();
    Ok(Output::ok(match format {
        Format::Json => json(&BranchDoc { group, subgroup, rows }),
        Format::Text => rows.iter().map(|r| format!("{} → {}\n", r.irrep, r.text)).collect(),
    }))
}

fn verify(catalog: &Catalog, filter: Option<&str>, format: Format) -> Output {
    let report = verify_all(catalog, filter);
    let code = u8::from(report.has_failures());
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => {
            let mut out = String::new();
            for c in &report.claims {
                writeln!(
                    out,
                    "{:<7} {}  computed: {}  expected: {}",
                    c.status.as_str(),
                    c.claim_id,
                    c.computed,
                    c.expected
                )
                .unwrap();
            }
            writeln!(
                out,
                "{} pass, {} fail, {} flagged",
                report.count(ClaimStatus::Pass),
                report.count(ClaimStatus::Fail),
                report.count(ClaimStatus::Flagged)
            )
            .unwrap();
            out
        }
    };
    Output { text, code }
}

fn octmul(factors: &[String], format: Format) -> Result<Output, CliError> {
    let parsed = factors.iter().map(|f| f.parse::<Octonion>()).collect::<Result<Vec<_>, _>>()?;
    let product = parsed.iter().fold(Octonion::one(), |acc, x| &acc * x);
    let doc = OctmulDoc { factors: parsed.iter().map(ToString::to_string).collect(), product: product.to_string() };
    Ok(Output::ok(match format {
        Format::Json => json(&doc),
        Format::Text => {
            let lhs: Vec<String> = doc.factors.iter().map(|f| format!("({f})")).collect();
            format!("{} = {}\n", lhs.join(""), doc.product)
        }
    }))
}
