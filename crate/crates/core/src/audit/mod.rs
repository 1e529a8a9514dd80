//! Checks of the extremal claims and closed forms against exhaustive
//! enumeration and independent oracles, and a Monte Carlo oracle for
//! hitting times.

pub mod oracle;
mod simulate;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

pub use simulate::{simulate_hitting, simulate_hitting_with, WalkSample};

use crate::exact::{int_json, ExactRational};
use crate::families::{
    balanced_double_broom, balanced_lever, broom, closed_form, path, star, FamilyError, FormulaId, LedgerError,
};
use crate::tree::{canonical_form, CanonicalForm, Tree, TreeCatalog, TreeError};
use crate::walk::{check_barycenter_equivalences, j_max, j_min, joining_time, t_bestmeet, t_meet};

/// Largest order for audits that sweep every tree of that order.
pub const GLOBAL_AUDIT_CAP: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditStatus {
    Verified,
    Refuted,
    DiscrepancyInPaper,
    OutOfRange,
}

impl fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuditStatus::Verified => "verified",
            AuditStatus::Refuted => "refuted",
            AuditStatus::DiscrepancyInPaper => "discrepancy-in-paper",
            AuditStatus::OutOfRange => "out-of-range",
        })
    }
}

/// Where a discrepancy most likely comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// A misprinted display whose derivation is otherwise sound.
    PaperTypo,
    /// An error in the argument that changes a stated result.
    ProofSlip,
    /// Not explained by a known error in the source; suspect this crate.
    ArtifactBug,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::PaperTypo => "paper-typo",
            Classification::ProofSlip => "proof-slip",
            Classification::ArtifactBug => "artifact-bug",
        })
    }
}

/// A tree (when one applies) and an exact value attached to a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub label: String,
    pub canonical: Option<CanonicalForm>,
    pub value: ExactRational,
}

impl Witness {
    fn new(label: impl Into<String>, tree: Option<&Tree>, value: ExactRational) -> Self {
        Witness { label: label.into(), canonical: tree.map(canonical_form), value }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub claim: String,
    pub status: AuditStatus,
    pub params: BTreeMap<String, Value>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    pub classification: Option<Classification>,
}

impl AuditReport {
    fn new(claim: impl Into<String>) -> Self {
        AuditReport {
            claim: claim.into(),
            status: AuditStatus::Verified,
            params: BTreeMap::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            classification: None,
        }
    }

    fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn is_verified(&self) -> bool {
        self.status == AuditStatus::Verified
    }

    pub fn to_json(&self) -> Value {
        let witnesses: Vec<Value> = self
            .witnesses
            .iter()
            .map(|w| {
                json!({
                    "label": w.label,
                    "canonical": w.canonical.as_ref().map(|c| c.to_string()),
                    "value_num": int_json(w.value.numer()),
                    "value_den": int_json(w.value.denom()),
                })
            })
            .collect();
        json!({
            "claim": self.claim,
            "status": self.status.to_string(),
            "params": self.params,
            "witnesses": witnesses,
            "notes": self.notes,
            "classification": self.classification.map(|c| c.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AuditError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
}

/// Known explanations for discrepancies; anything else is an artifact bug
/// until shown otherwise.
pub fn classify(claim: &str) -> Classification {
    match claim {
        "formula:jmax_star_printed" | "formula:jmax_path_expanded" | "formula:bestmeet_dbroom_oe" | "thm-max" => {
            Classification::PaperTypo
        }
        "formula:jmin_dnd_max" | "formula:bestmeet_bn_printed" | "thm-global" => Classification::ProofSlip,
        _ => Classification::ArtifactBug,
    }
}

fn q(v: BigInt) -> ExactRational {
    ExactRational::from_integer(v)
}

fn out_of_range(mut report: AuditReport, why: &str) -> AuditReport {
    report.status = AuditStatus::OutOfRange;
    report.notes.push(why.to_string());
    report
}

/// Extreme best meeting time over `𝒯_{n,d}` with every class attaining it.
fn extreme_classes(
    catalog: &TreeCatalog,
    n: usize,
    d: usize,
    want_max: bool,
) -> Result<(usize, ExactRational, Vec<Tree>), AuditError> {
    let entries = catalog.trees_with_diameter(n, d)?;
    let values: Vec<ExactRational> = entries.iter().map(|e| t_bestmeet(&e.tree).value).collect();
    let best = if want_max { values.iter().max() } else { values.iter().min() }.unwrap().clone();
    let ties = entries.iter().zip(&values).filter(|(_, v)| **v == best).map(|(e, _)| e.tree.clone()).collect();
    Ok((entries.len(), best, ties))
}

fn audit_extremal(
    catalog: &TreeCatalog,
    claim: &str,
    n: usize,
    d: usize,
    want_max: bool,
) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new(claim);
    report.param("n", n);
    report.param("d", d);
    if n < 3 || d < 2 || d >= n {
        return Ok(out_of_range(report, "the claim is stated for 2 <= d <= n - 1"));
    }
    let (expected, formula, family) = if want_max {
        (balanced_double_broom(n, d)?, FormulaId::bestmeet_dbroom_for(n, d), "balanced double broom")
    } else {
        (balanced_lever(n, d)?, FormulaId::BestmeetLever, "balanced lever")
    };
    let (classes, best, ties) = extreme_classes(catalog, n, d, want_max)?;
    report.param("classes", classes);
    report.param("formula", formula.as_str());
    let expected_code = canonical_form(&expected);
    let printed = closed_form(formula, n, d)?;
    let truth = t_bestmeet(&expected).value;
    let extreme = if want_max { "maximum" } else { "minimum" };

    if ties.len() > 1 {
        report.status = AuditStatus::Refuted;
        report.notes.push(format!("{} classes attain the {extreme}; uniqueness fails", ties.len()));
        for (i, t) in ties.iter().take(2).enumerate() {
            report.witnesses.push(Witness::new(format!("tied extremal class {}", i + 1), Some(t), best.clone()));
        }
    } else if canonical_form(&ties[0]) != expected_code {
        report.status = AuditStatus::Refuted;
        report.notes.push(format!("the {extreme} is not attained by the {family}"));
        report.witnesses.push(Witness::new("extremal class", Some(&ties[0]), best.clone()));
        report.witnesses.push(Witness::new(family, Some(&expected), truth.clone()));
    } else if printed != truth {
        report.status = AuditStatus::DiscrepancyInPaper;
        report.notes.push(format!("the {family} is the unique extremal class but {formula} does not give its value"));
        report.witnesses.push(Witness::new(format!("printed {formula}"), Some(&expected), printed.clone()));
        report.witnesses.push(Witness::new(format!("{family} best meeting time"), Some(&expected), truth.clone()));
    } else {
        report.notes.push(format!("unique {extreme} at the {family} over {classes} classes, matching {formula}"));
        report.witnesses.push(Witness::new(family, Some(&expected), truth));
    }
    if report.status != AuditStatus::Verified {
        report.classification = Some(if report.status == AuditStatus::DiscrepancyInPaper {
            classify(claim)
        } else {
            Classification::ArtifactBug
        });
    }
    Ok(report)
}

/// The balanced lever is the unique minimizer of the best meeting time over
/// `𝒯_{n,d}`, with the displayed value.
pub fn audit_theorem_min(n: usize, d: usize) -> Result<AuditReport, AuditError> {
    audit_theorem_min_in(TreeCatalog::shared(), n, d)
}

pub fn audit_theorem_min_in(catalog: &TreeCatalog, n: usize, d: usize) -> Result<AuditReport, AuditError> {
    audit_extremal(catalog, "thm-min", n, d, false)
}

/// The balanced double broom is the unique maximizer of the best meeting
/// time over `𝒯_{n,d}`, with the displayed value for the parity case.
pub fn audit_theorem_max(n: usize, d: usize) -> Result<AuditReport, AuditError> {
    audit_theorem_max_in(TreeCatalog::shared(), n, d)
}

pub fn audit_theorem_max_in(catalog: &TreeCatalog, n: usize, d: usize) -> Result<AuditReport, AuditError> {
    audit_extremal(catalog, "thm-max", n, d, true)
}

/// The claimed maximizer over all of `𝒯_n` and its printed value.
fn global_claim(n: usize) -> Result<(Tree, &'static str, ExactRational), AuditError> {
    let nn = BigInt::from(n);
    let base = &nn * &nn - BigInt::from(2) * &nn;
    Ok(if n.is_multiple_of(2) {
        (path(n)?, "path", ExactRational::new(base + 3, BigInt::from(6)))
    } else if n <= 7 {
        (path(n)?, "path", ExactRational::new(base, BigInt::from(6)))
    } else {
        let printed = ExactRational::new(base + 3, BigInt::from(6)) - ExactRational::new(BigInt::from(4), nn - 1);
        (broom(n, n - 2)?, "broom B(n, n-2)", printed)
    })
}

/// `J_min` recomputed from both oracles' hitting profiles.
fn oracle_jmin(t: &Tree) -> (ExactRational, ExactRational) {
    let edge = oracle::joining_times_from(t, &oracle::edge_decomposition_profile(t));
    let linear = oracle::joining_times_from(t, &oracle::linear_solve_profile(t));
    (edge.into_iter().min().unwrap(), linear.into_iter().min().unwrap())
}

/// The extremal best meeting times over every tree of order `n`.
pub fn audit_theorem_global(n: usize) -> Result<AuditReport, AuditError> {
    audit_theorem_global_in(TreeCatalog::shared(), n, GLOBAL_AUDIT_CAP)
}

pub fn audit_theorem_global_in(catalog: &TreeCatalog, n: usize, cap: usize) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("thm-global");
    report.param("n", n);
    if n < 3 {
        return Ok(out_of_range(report, "the claim is stated for n >= 3"));
    }
    if n > cap {
        return Err(TreeError::CapExceeded { n, cap }.into());
    }
    let entries = catalog.trees(n)?;
    report.param("classes", entries.len());
    let values: Vec<ExactRational> = entries.iter().map(|e| t_bestmeet(&e.tree).value).collect();
    let max = values.iter().max().unwrap().clone();
    let min = values.iter().min().unwrap().clone();
    let argmax: Vec<&Tree> = entries.iter().zip(&values).filter(|(_, v)| **v == max).map(|(e, _)| &e.tree).collect();
    let argmin: Vec<&Tree> = entries.iter().zip(&values).filter(|(_, v)| **v == min).map(|(e, _)| &e.tree).collect();

    let star = star(n)?;
    let half = ExactRational::new(BigInt::from(1), BigInt::from(2));
    let min_ok = argmin.len() == 1 && canonical_form(argmin[0]) == canonical_form(&star) && min == half;
    report.notes.push(if min_ok {
        "minimum 1/2 attained uniquely by the star".to_string()
    } else {
        format!("minimum {min} is not attained uniquely by the star at 1/2")
    });

    let (claimed, name, printed) = global_claim(n)?;
    let claimed_value = t_bestmeet(&claimed).value;
    let two_m = q(BigInt::from(2 * (n - 1)));
    let max_ok = argmax.len() == 1 && canonical_form(argmax[0]) == canonical_form(&claimed);

    report.witnesses.push(Witness::new("true maximizer", Some(argmax[0]), max.clone()));
    let mut named = vec![("path", path(n)?)];
    if n >= 4 {
        named.push(("broom B(n, n-2)", broom(n, n - 2)?));
    }
    for (label, t) in named {
        if canonical_form(&t) == canonical_form(argmax[0]) {
            report.notes.push(format!("the maximum {max} is attained by the {label}"));
        }
    }
    if !max_ok {
        report.witnesses.push(Witness::new(
            format!("claimed maximizer ({name})"),
            Some(&claimed),
            claimed_value.clone(),
        ));
    }
    if printed != claimed_value {
        report.witnesses.push(Witness::new(format!("printed value for the {name}"), Some(&claimed), printed.clone()));
    }
    report.notes.push(format!(
        "the claim names the {name} with printed best meeting time {printed}; its exact value is {claimed_value}"
    ));
    if argmax.len() > 1 {
        report.notes.push(format!("{} classes tie for the maximum", argmax.len()));
    }

    // Re-derive every witness value from both oracles.
    let mut consistent = true;
    for w in &report.witnesses {
        let Some(code) = &w.canonical else { continue };
        if w.label.starts_with("printed") {
            continue;
        }
        let t = code.to_tree();
        let (edge, linear) = oracle_jmin(&t);
        let agrees = &edge / &two_m == w.value && &linear / &two_m == w.value;
        consistent &= agrees;
        report.notes.push(format!(
            "{}: J_min = {edge} by edge decomposition, {linear} by linear solve; {}",
            w.label,
            if agrees { "consistent" } else { "INCONSISTENT" }
        ));
    }

    report.status = if !consistent {
        report.classification = Some(Classification::ArtifactBug);
        AuditStatus::Refuted
    } else if min_ok && max_ok && printed == claimed_value {
        AuditStatus::Verified
    } else {
        report.classification = Some(classify("thm-global"));
        AuditStatus::DiscrepancyInPaper
    };
    Ok(report)
}

/// The value a ledger formula describes, computed from generated trees and
/// the walk module. Also returns the tree involved, when there is one.
pub fn ground_truth(id: FormulaId, n: usize, d: usize) -> Result<(ExactRational, Option<Tree>), AuditError> {
    use FormulaId::*;
    let jmax_broom = |n, d| -> Result<BigInt, AuditError> { Ok(joining_time(&broom(n, d)?, d)) };
    let jmax_path = |n| -> Result<BigInt, AuditError> { Ok(j_max(&path(n)?).value) };
    Ok(match id {
        JmaxPath | JmaxPathExpanded => {
            let t = path(n)?;
            (q(j_max(&t).value), Some(t))
        }
        TmeetPath => {
            let t = path(n)?;
            (t_meet(&t).value, Some(t))
        }
        TmeetStar => {
            let t = star(n)?;
            (t_meet(&t).value, Some(t))
        }
        JmaxStarPrinted | JmaxStarCorrected => {
            let t = star(n)?;
            (q(j_max(&t).value), Some(t))
        }
        JminPathOdd | JminPathEven => {
            let t = path(n)?;
            (q(j_min(&t).value), Some(t))
        }
        JminLeverOdd | JminLeverEven => {
            let t = balanced_lever(n, d)?;
            (q(joining_time(&t, d / 2)), Some(t))
        }
        BestmeetLever => {
            let t = balanced_lever(n, d)?;
            (t_bestmeet(&t).value, Some(t))
        }
        JmaxBroom => {
            let t = broom(n, d)?;
            (q(joining_time(&t, d)), Some(t))
        }
        JminDbroomOo | JminDbroomOe | JminDbroomEo | JminDbroomEe => {
            let t = balanced_double_broom(n, d)?;
            (q(j_min(&t).value), Some(t))
        }
        BestmeetDbroomOo | BestmeetDbroomOe | BestmeetDbroomEo | BestmeetDbroomEe | BestmeetDbroomOeCorrected => {
            let t = balanced_double_broom(n, d)?;
            (t_bestmeet(&t).value, Some(t))
        }
        JminDndMax | JminDndMaxCorrected => {
            let mut best: Option<(BigInt, Tree)> = None;
            for dd in 2..n {
                let t = balanced_double_broom(n, dd)?;
                let v = j_min(&t).value;
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    best = Some((v, t));
                }
            }
            let (v, t) = best.expect("n >= 3 has a diameter in 2..n");
            (q(v), Some(t))
        }
        BestmeetPn => {
            let t = path(n)?;
            (t_bestmeet(&t).value, Some(t))
        }
        BestmeetBnPrinted | BestmeetBnCorrected => {
            let t = broom(n, n - 2)?;
            (t_bestmeet(&t).value, Some(t))
        }
        BigDeltaPlus => (q(jmax_broom(n + 1, d + 1)? - jmax_broom(n, d)?), None),
        DeltaPlus => (q(jmax_broom(n + 1, d)? - jmax_broom(n, d)?), None),
        DeltaMinusBroom => (q(jmax_broom(n - 1, d)? - jmax_broom(n, d)?), None),
        DeltaMinusPath => (q(jmax_path(n - 1)? - jmax_path(n)?), None),
    })
}

/// Inclusive range of orders or diameters.
pub type Range = std::ops::RangeInclusive<usize>;

/// Every `(n, d)` cell of the ranges at which `id` is stated; formulas in
/// `n` alone use `d = n - 1`.
fn cells(id: FormulaId, ns: &Range, ds: &Range) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in ns.clone() {
        if id.uses_d() {
            for d in ds.clone() {
                if closed_form(id, n, d).is_ok() {
                    out.push((n, d));
                }
            }
        } else if closed_form(id, n, n.saturating_sub(1)).is_ok() {
            out.push((n, n.saturating_sub(1)));
        }
    }
    out
}

fn first_failure(id: FormulaId, cells: &[(usize, usize)]) -> Result<(usize, Option<(usize, usize)>), AuditError> {
    let mut failures = 0;
    let mut first = None;
    for &(n, d) in cells {
        let (truth, _) = ground_truth(id, n, d)?;
        if closed_form(id, n, d)? != truth {
            failures += 1;
            first.get_or_insert((n, d));
        }
    }
    Ok((failures, first))
}

/// Compares `closed_form(id)` with [`ground_truth`] on every stated cell in
/// the ranges. Cells outside the stated range or parity case are skipped;
/// ranges with no stated cell are an error.
pub fn audit_formula(id: FormulaId, ns: Range, ds: Range) -> Result<AuditReport, AuditError> {
    let claim = format!("formula:{id}");
    let mut report = AuditReport::new(claim.clone());
    report.param("formula", id.as_str());
    report.param("n", format!("{}..={}", ns.start(), ns.end()));
    if id.uses_d() {
        report.param("d", format!("{}..={}", ds.start(), ds.end()));
    }
    let cells = cells(id, &ns, &ds);
    if cells.is_empty() {
        let (n, d) = (*ns.start(), *ds.start());
        return Err(LedgerError::OutOfStatedRange { id, n, d, range: id.range() }.into());
    }
    report.param("cells", cells.len());
    let (failures, first) = first_failure(id, &cells)?;
    report.param("failures", failures);
    match first {
        None => report.notes.push(format!("{id} matches the ground truth on all {} cells", cells.len())),
        Some((n, d)) => {
            report.status = AuditStatus::DiscrepancyInPaper;
            report.classification = Some(classify(&claim));
            let (truth, tree) = ground_truth(id, n, d)?;
            let printed = closed_form(id, n, d)?;
            let at = if id.uses_d() { format!("n = {n}, d = {d}") } else { format!("n = {n}") };
            report.param("first_failure", if id.uses_d() { json!({ "n": n, "d": d }) } else { json!({ "n": n }) });
            report.witnesses.push(Witness::new(format!("printed {id} at {at}"), tree.as_ref(), printed));
            report.witnesses.push(Witness::new(format!("ground truth at {at}"), tree.as_ref(), truth));
            report.notes.push(format!("{failures} of {} cells disagree; first at {at}", cells.len()));
            if let Some(fixed) = id.corrected() {
                let fixed_cells: Vec<_> =
                    cells.iter().copied().filter(|&(n, d)| closed_form(fixed, n, d).is_ok()).collect();
                let (bad, _) = first_failure(fixed, &fixed_cells)?;
                report.notes.push(if bad == 0 {
                    format!("{fixed} matches the ground truth on all {} of these cells", fixed_cells.len())
                } else {
                    format!("{fixed} also disagrees on {bad} of {} cells", fixed_cells.len())
                });
            }
        }
    }
    Ok(report)
}

/// The four barycenter characterizations coincide on every tree of orders
/// `3..=n_cap`.
pub fn audit_proposition_barycenter(n_cap: usize) -> Result<AuditReport, AuditError> {
    audit_proposition_barycenter_in(TreeCatalog::shared(), n_cap)
}

pub fn audit_proposition_barycenter_in(catalog: &TreeCatalog, n_cap: usize) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("prop-barycenter");
    report.param("n_cap", n_cap);
    if n_cap > catalog.cap() {
        return Err(TreeError::CapExceeded { n: n_cap, cap: catalog.cap() }.into());
    }
    let mut trees = 0;
    for n in 3..=n_cap {
        for entry in catalog.trees(n)?.iter() {
            trees += 1;
            if let Err(e) = check_barycenter_equivalences(&entry.tree) {
                report.status = AuditStatus::Refuted;
                report.classification = Some(Classification::ArtifactBug);
                report.notes.push(e.to_string());
                report.witnesses.push(Witness::new("violating tree", Some(&entry.tree), q(BigInt::from(n))));
                report.param("trees", trees);
                return Ok(report);
            }
        }
    }
    report.param("trees", trees);
    report.notes.push(format!("all four characterizations agree on {trees} trees of orders 3..={n_cap}"));
    Ok(report)
}
