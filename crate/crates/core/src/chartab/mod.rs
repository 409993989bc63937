//! Character tables: Dixon-Schneider computation, products, restriction and
//! alignment with transcribed reference tables.

mod dixon;
pub mod golden;
mod modp;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::arith::{to_i64, Cyclotomic, Rational};
use crate::group::Group;
use crate::signed_perm::SignedPerm;

pub use dixon::{character_table, choose_prime, class_algebra, ClassAlgebra};
pub use golden::{align_to_golden, Alignment, AlignmentReport, GoldenCell, GoldenTable, ParseGoldenError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChartabError {
    #[error("no prime p = 1 mod {0} found below the search bound")]
    NoSuitablePrime(u64),
    #[error("eigenspace splitting failed: {0}")]
    SplitFailure(String),
    #[error("lifting to cyclotomics failed: {0}")]
    LiftFailure(String),
    #[error("class fusion failed: {0} is not in the parent group")]
    Fusion(String),
    #[error("irrep index {0} out of range")]
    BadIndex(usize),
    #[error("{0} is not a non-negative integer multiplicity")]
    NotMultiplicity(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub representative: SignedPerm,
    pub size: usize,
    pub element_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterRow {
    pub degree: u64,
    pub values: Vec<Cyclotomic>,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group_order: usize,
    pub classes: Vec<ClassInfo>,
    /// Class of `g^q` for each prime `q` dividing the exponent, and always `q = 2`.
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    pub irreps: Vec<CharacterRow>,
    /// Class of `g⁻¹`.
    pub inverse_class: Vec<usize>,
    /// The prime used for the eigenspace splitting.
    pub prime: u64,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irreps.iter().map(|r| r.degree).collect()
    }

    /// `d{degree}_{k}` with `k` counting irreps of equal degree from 1.
    pub fn canonical_labels(&self) -> Vec<String> {
        let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
        self.irreps
            .iter()
            .map(|r| {
                let k = seen.entry(r.degree).or_insert(0);
                *k += 1;
                format!("d{}_{}", r.degree, k)
            })
            .collect()
    }

    /// `(1/|G|) Σ |C_k| χ(k) ψ(k⁻¹)`.
    pub fn inner_product_values(&self, chi: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
        let sum: Cyclotomic = (0..self.class_count())
            .map(|k| {
                (&chi[k] * &psi[self.inverse_class[k]]).scale(&Rational::from_integer(self.classes[k].size.into()))
            })
            .sum();
        sum.scale(&Rational::new(1.into(), self.group_order.into()))
    }

    /// Inner product of two characters; `None` if the result is not rational.
    pub fn inner_product(&self, chi: &CharacterRow, psi: &CharacterRow) -> Option<Rational> {
        self.inner_product_values(&chi.values, &psi.values).to_rational()
    }

    /// Multiplicities of each irrep in the class function `values`.
    pub fn decompose(&self, values: &[Cyclotomic]) -> Result<Vec<u64>, ChartabError> {
        self.irreps
            .iter()
            .map(|r| {
                let m = self.inner_product_values(values, &r.values);
                m.to_rational()
                    .as_ref()
                    .and_then(to_i64)
                    .and_then(|m| u64::try_from(m).ok())
                    .ok_or_else(|| ChartabError::NotMultiplicity(m.to_string()))
            })
            .collect()
    }

    pub fn tensor_decompose(&self, i: usize, j: usize) -> Result<Vec<u64>, ChartabError> {
        let (a, b) = (self.row(i)?, self.row(j)?);
        let product: Vec<Cyclotomic> = a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect();
        self.decompose(&product)
    }

    pub fn frobenius_schur(&self, i: usize) -> Result<i64, ChartabError> {
        let chi = self.row(i)?;
        let sq = &self.power_maps[&2];
        let sum: Cyclotomic = (0..self.class_count())
            .map(|k| chi.values[sq[k]].scale(&Rational::from_integer(self.classes[k].size.into())))
            .sum();
        let v = sum.scale(&Rational::new(1.into(), self.group_order.into()));
        v.to_rational().as_ref().and_then(to_i64).ok_or_else(|| ChartabError::NotMultiplicity(v.to_string()))
    }

    fn row(&self, i: usize) -> Result<&CharacterRow, ChartabError> {
        self.irreps.get(i).ok_or(ChartabError::BadIndex(i))
    }

    /// Exact orthogonality, degree and algebraic-integer checks.
    pub fn check_invariants(&self) -> Result<(), String> {
        let r = self.class_count();
        if self.irreps.len() != r {
            return Err(format!("{} irreps for {r} classes", self.irreps.len()));
        }
        let sum_sq: u64 = self.irreps.iter().map(|x| x.degree * x.degree).sum();
        if sum_sq != self.group_order as u64 {
            return Err(format!("sum of squared degrees is {sum_sq}"));
        }
        for (i, row) in self.irreps.iter().enumerate() {
            if !(self.group_order as u64).is_multiple_of(row.degree) {
                return Err(format!("degree {} does not divide the order", row.degree));
            }
            if row.values[0] != Cyclotomic::from_int(row.degree as i64) {
                return Err(format!("irrep {i} has value {} at the identity", row.values[0]));
            }
            for (k, v) in row.values.iter().enumerate() {
                if !self.classes[k].element_order.is_multiple_of(v.conductor() as u64) {
                    return Err(format!("irrep {i} class {k}: conductor {} exceeds element order", v.conductor()));
                }
            }
            for (j, other) in self.irreps.iter().enumerate() {
                let ip = self.inner_product_values(&row.values, &other.values);
                let want = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if ip != want {
                    return Err(format!("rows {i}, {j} have inner product {ip}"));
                }
            }
        }
        for k in 0..r {
            for l in 0..r {
                let s: Cyclotomic = self.irreps.iter().map(|x| &x.values[k] * &x.values[self.inverse_class[l]]).sum();
                let want = if k == l {
                    Cyclotomic::from_rational(Rational::new(self.group_order.into(), self.classes[k].size.into()))
                } else {
                    Cyclotomic::zero()
                };
                if s != want {
                    return Err(format!("columns {k}, {l} give {s}"));
                }
            }
        }
        Ok(())
    }
}

/// Trace of the defining signed-permutation representation on each class.
pub fn natural_character(g: &Group) -> CharacterRow {
    let values: Vec<Cyclotomic> = g.classes().iter().map(|c| Cyclotomic::from_int(c.representative.trace())).collect();
    CharacterRow { degree: g.degree() as u64, values }
}

/// Restriction multiplicities: row `i` decomposes the `i`-th irrep of `tg`
/// restricted to `h` in `th`.
pub fn branch(g: &Group, h: &Group, tg: &CharacterTable, th: &CharacterTable) -> Result<Vec<Vec<u64>>, ChartabError> {
    let fusion = class_fusion(g, h)?;
    tg.irreps
        .iter()
        .map(|row| {
            let restricted: Vec<Cyclotomic> = fusion.iter().map(|&k| row.values[k].clone()).collect();
            th.decompose(&restricted)
        })
        .collect()
}

/// For each class of `h`, the class of `g` containing it.
pub fn class_fusion(g: &Group, h: &Group) -> Result<Vec<usize>, ChartabError> {
    h.classes()
        .iter()
        .map(|c| {
            g.class_of_element(&c.representative).ok_or_else(|| ChartabError::Fusion(c.representative.to_cycles()))
        })
        .collect()
}

/// Renders multiplicities as `"1 + 3_1 + 2(8)"`.
pub fn format_decomposition(mults: &[u64], labels: &[String]) -> String {
    let terms: Vec<String> = mults
        .iter()
        .zip(labels)
        .filter(|(m, _)| **m > 0)
        .map(|(m, l)| if *m == 1 { l.clone() } else { format!("{m}({l})") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
