//! Ordered decision rules, the MECE check and Fleiss' kappa.

use std::fmt;
use std::io::Read;

use thiserror::Error;

use crate::catalog::PrimitiveDescriptor;
use crate::model::{Category, FunctionalCategory};

/// Agreement reported for the shipped classification; the underlying
/// ratings are unpublished so it is shown, never recomputed.
pub const REPORTED_KAPPA: f64 = 0.86;

/// Decision criteria in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    Init,
    Ent,
    Sem,
    Ampl,
    Basis,
    Phase,
    Param,
}

impl Criterion {
    pub const ORDER: [Criterion; 7] =
        [Criterion::Init, Criterion::Ent, Criterion::Sem, Criterion::Ampl, Criterion::Basis, Criterion::Phase, Criterion::Param];

    pub fn category(self) -> FunctionalCategory {
        match self {
            Criterion::Init => FunctionalCategory::StatePreparation,
            Criterion::Ent => FunctionalCategory::EntanglementGeneration,
            Criterion::Sem => FunctionalCategory::OracleConstruction,
            Criterion::Ampl => FunctionalCategory::AmplitudeAmplification,
            Criterion::Basis => FunctionalCategory::BasisTransformation,
            Criterion::Phase => FunctionalCategory::PhaseEstimation,
            Criterion::Param => FunctionalCategory::VariationalAnsatz,
        }
    }

    pub fn for_category(category: FunctionalCategory) -> Criterion {
        *Criterion::ORDER.iter().find(|c| c.category() == category).expect("every category has a criterion")
    }

    pub fn key(self) -> &'static str {
        match self {
            Criterion::Init => "init",
            Criterion::Ent => "ent",
            Criterion::Sem => "sem",
            Criterion::Ampl => "ampl",
            Criterion::Basis => "basis",
            Criterion::Phase => "phase",
            Criterion::Param => "param",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClassificationAttributes {
    pub init: bool,
    pub ent: bool,
    pub sem: bool,
    pub ampl: bool,
    pub basis: bool,
    pub phase: bool,
    pub param: bool,
}

impl ClassificationAttributes {
    pub fn only(criterion: Criterion) -> Self {
        let mut a = Self::default();
        a.set(criterion, true);
        a
    }

    pub fn get(&self, criterion: Criterion) -> bool {
        match criterion {
            Criterion::Init => self.init,
            Criterion::Ent => self.ent,
            Criterion::Sem => self.sem,
            Criterion::Ampl => self.ampl,
            Criterion::Basis => self.basis,
            Criterion::Phase => self.phase,
            Criterion::Param => self.param,
        }
    }

    pub fn set(&mut self, criterion: Criterion, value: bool) {
        let slot = match criterion {
            Criterion::Init => &mut self.init,
            Criterion::Ent => &mut self.ent,
            Criterion::Sem => &mut self.sem,
            Criterion::Ampl => &mut self.ampl,
            Criterion::Basis => &mut self.basis,
            Criterion::Phase => &mut self.phase,
            Criterion::Param => &mut self.param,
        };
        *slot = value;
    }

    pub fn toggled(mut self, criterion: Criterion) -> Self {
        let v = self.get(criterion);
        self.set(criterion, !v);
        self
    }

    pub fn set_flags(&self) -> Vec<Criterion> {
        Criterion::ORDER.into_iter().filter(|&c| self.get(c)).collect()
    }

    pub fn first_match(&self) -> Option<Criterion> {
        Criterion::ORDER.into_iter().find(|&c| self.get(c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("no classification criterion is set")]
    Unclassifiable,
}

/// First match over init, ent, sem, ampl, basis, phase, param.
pub fn classify(attrs: &ClassificationAttributes) -> Result<FunctionalCategory, ClassifyError> {
    attrs.first_match().map(Criterion::category).ok_or(ClassifyError::Unclassifiable)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeceViolation {
    /// The decision rules give a different category than the catalog.
    CategoryMismatch { id: u8, expected: FunctionalCategory, got: FunctionalCategory },
    /// A functional primitive with no criterion set.
    Unclassifiable { id: u8 },
    /// More than one criterion holds, so the label depends on rule order.
    MultipleCriteria { id: u8, flags: Vec<Criterion> },
    /// An auxiliary entry carries a functional criterion.
    AuxiliaryClassified { id: u8, flags: Vec<Criterion> },
}

impl fmt::Display for MeceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |flags: &[Criterion]| flags.iter().map(|c| c.key()).collect::<Vec<_>>().join(",");
        match self {
            MeceViolation::CategoryMismatch { id, expected, got } => {
                write!(f, "#{id}: classified as {got}, catalog says {expected}")
            }
            MeceViolation::Unclassifiable { id } => write!(f, "#{id}: no criterion set"),
            MeceViolation::MultipleCriteria { id, flags } => write!(f, "#{id}: several criteria hold ({})", list(flags)),
            MeceViolation::AuxiliaryClassified { id, flags } => {
                write!(f, "#{id}: auxiliary entry has criteria set ({})", list(flags))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MeceReport {
    pub checked: usize,
    pub violations: Vec<MeceViolation>,
}

impl MeceReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_mece<'a>(catalog: impl IntoIterator<Item = &'a PrimitiveDescriptor>) -> MeceReport {
    let mut report = MeceReport::default();
    for d in catalog {
        report.checked += 1;
        let id = d.id.get();
        let flags = d.attributes.set_flags();
        match d.category {
            Category::Auxiliary => {
                if !flags.is_empty() {
                    report.violations.push(MeceViolation::AuxiliaryClassified { id, flags });
                }
            }
            Category::Functional(expected) => match classify(&d.attributes) {
                Err(ClassifyError::Unclassifiable) => report.violations.push(MeceViolation::Unclassifiable { id }),
                Ok(got) => {
                    if got != expected {
                        report.violations.push(MeceViolation::CategoryMismatch { id, expected, got });
                    }
                    if flags.len() > 1 {
                        report.violations.push(MeceViolation::MultipleCriteria { id, flags });
                    }
                }
            },
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KappaError {
    #[error("ratings matrix is empty")]
    Empty,
    #[error("row {row} has {got} columns, expected {expected}")]
    Ragged { row: usize, expected: usize, got: usize },
    #[error("row {row} sums to {got} ratings, expected {expected}")]
    RowSumMismatch { row: usize, expected: u64, got: u64 },
    #[error("at least 2 raters are needed, got {0}")]
    TooFewRaters(u64),
    #[error("at least 2 items are needed, got {0}")]
    TooFewItems(usize),
    #[error("all ratings fall in one category; kappa is undefined")]
    DegenerateMarginals,
    #[error("cannot parse ratings: {0}")]
    Parse(String),
}

/// `items x categories` rating counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatingsMatrix {
    rows: Vec<Vec<u64>>,
    raters: u64,
}

impl RatingsMatrix {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self, KappaError> {
        let first = rows.first().ok_or(KappaError::Empty)?;
        let cols = first.len();
        if cols == 0 {
            return Err(KappaError::Empty);
        }
        let raters: u64 = first.iter().sum();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(KappaError::Ragged { row: i + 1, expected: cols, got: r.len() });
            }
            let s: u64 = r.iter().sum();
            if s != raters {
                return Err(KappaError::RowSumMismatch { row: i + 1, expected: raters, got: s });
            }
        }
        Ok(RatingsMatrix { rows, raters })
    }

    /// Reads comma-separated integer rows; a header row is skipped when it
    /// does not parse as integers.
    pub fn from_csv(reader: impl Read) -> Result<Self, KappaError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| KappaError::Parse(e.to_string()))?;
            let parsed: Result<Vec<u64>, _> = rec.iter().map(str::parse::<u64>).collect();
            match parsed {
                Ok(r) => rows.push(r),
                Err(_) if i == 0 => continue,
                Err(e) => return Err(KappaError::Parse(format!("line {}: {e}", i + 1))),
            }
        }
        RatingsMatrix::new(rows)
    }

    pub fn items(&self) -> usize {
        self.rows.len()
    }

    pub fn categories(&self) -> usize {
        self.rows[0].len()
    }

    pub fn raters(&self) -> u64 {
        self.raters
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Same ratings with category columns reordered: new column `j` is old
    /// column `perm[j]`.
    pub fn permute_categories(&self, perm: &[usize]) -> Self {
        let rows = self.rows.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
        RatingsMatrix { rows, raters: self.raters }
    }
}

/// Agreement terms behind kappa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaTerms {
    pub p_bar: f64,
    pub p_e: f64,
    pub kappa: f64,
}

pub fn fleiss_terms(m: &RatingsMatrix) -> Result<KappaTerms, KappaError> {
    let n = m.raters;
    if n < 2 {
        return Err(KappaError::TooFewRaters(n));
    }
    if m.items() < 2 {
        return Err(KappaError::TooFewItems(m.items()));
    }
    let items = m.items() as f64;
    let nf = n as f64;
    let mut p_sum = 0.0;
    let mut totals = vec![0u64; m.categories()];
    for row in &m.rows {
        let agree: u64 = row.iter().map(|&c| c * c.saturating_sub(1)).sum();
        p_sum += agree as f64 / (nf * (nf - 1.0));
        for (t, &c) in totals.iter_mut().zip(row) {
            *t += c;
        }
    }
    let p_bar = p_sum / items;
    let grand = items * nf;
    let p_e: f64 = totals.iter().map(|&t| (t as f64 / grand).powi(2)).sum();
    if totals.iter().filter(|&&t| t > 0).count() <= 1 {
        return Err(KappaError::DegenerateMarginals);
    }
    let all_agree = m.rows.iter().all(|r| r.contains(&n));
    let kappa = if all_agree { 1.0 } else { (p_bar - p_e) / (1.0 - p_e) };
    Ok(KappaTerms { p_bar, p_e, kappa })
}

pub fn fleiss_kappa(m: &RatingsMatrix) -> Result<f64, KappaError> {
    fleiss_terms(m).map(|t| t.kappa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    #[test]
    fn first_match_order() {
        let mut ghz = ClassificationAttributes::only(Criterion::Init);
        ghz.ent = true;
        assert_eq!(classify(&ghz).unwrap(), FunctionalCategory::StatePreparation);
        let diffusion = ClassificationAttributes::only(Criterion::Ampl);
        assert_eq!(classify(&diffusion).unwrap(), FunctionalCategory::AmplitudeAmplification);
        assert_eq!(classify(&ClassificationAttributes::default()), Err(ClassifyError::Unclassifiable));
    }

    #[test]
    fn shipped_catalog_is_clean() {
        let r = check_mece(catalog());
        assert_eq!(r.checked, 34);
        assert!(r.is_clean(), "{:?}", r.violations);
        assert!(check_mece(std::iter::empty()).violations.is_empty());
    }

    #[test]
    fn ghz_retagged_as_entangler_is_a_mismatch() {
        let mut ghz = catalog()[4].clone();
        ghz.attributes = ClassificationAttributes::only(Criterion::Ent);
        let r = check_mece([&ghz]);
        assert_eq!(r.violations.len(), 1);
        assert!(matches!(r.violations[0], MeceViolation::CategoryMismatch { id: 5, .. }));
    }

    #[test]
    fn hand_computed_kappa() {
        let m = RatingsMatrix::new(vec![vec![2, 1], vec![2, 1], vec![1, 2]]).unwrap();
        let t = fleiss_terms(&m).unwrap();
        assert!((t.p_bar - 1.0 / 3.0).abs() < 1e-15);
        assert!((t.p_e - 41.0 / 81.0).abs() < 1e-15);
        assert!((t.kappa - (-0.35)).abs() < 1e-12);
    }

    #[test]
    fn kappa_edge_cases() {
        let m = RatingsMatrix::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(fleiss_kappa(&m).unwrap(), 1.0);
        let m = RatingsMatrix::new(vec![vec![3, 0], vec![3, 0]]).unwrap();
        assert_eq!(fleiss_kappa(&m), Err(KappaError::DegenerateMarginals));
        assert!(matches!(RatingsMatrix::new(vec![vec![1, 1], vec![2, 1]]), Err(KappaError::RowSumMismatch { .. })));
    }

    #[test]
    fn csv_with_header() {
        let text = "SP,EG\n2,1\n2,1\n1,2\n";
        let m = RatingsMatrix::from_csv(text.as_bytes()).unwrap();
        assert_eq!(m.items(), 3);
        assert_eq!(m.raters(), 3);
    }
}
