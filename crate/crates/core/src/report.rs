//! Machine-readable reports: `key = value` lines under `[section]` headers.

use std::fmt;

use crate::analyze::{dimension_value, ComplexityFit, TierReport, TradeoffReport};
use crate::classify::MeceReport;
use crate::compose::Diagnostic;
use crate::model::{Dimension, NfrProfile};
use crate::sim::Counts;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    sections: Vec<(String, Vec<(String, String)>)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn section(&mut self, name: &str) -> &mut Self {
        self.sections.push((name.to_string(), Vec::new()));
        self
    }

    /// Adds to the last section, opening an unnamed one if needed.
    pub fn entry(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        if self.sections.is_empty() {
            self.section("report");
        }
        let v = value.to_string().replace('\n', " ");
        self.sections.last_mut().expect("section").1.push((key.to_string(), v));
        self
    }

    pub fn sections(&self) -> &[(String, Vec<(String, String)>)] {
        &self.sections
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .iter()
            .filter(|(s, _)| s == section)
            .flat_map(|(_, e)| e.iter())
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str) -> Result<Report, String> {
        let mut r = Report::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                r.section(name.trim());
            } else if let Some((k, v)) = line.split_once(" = ") {
                r.entry(k.trim(), v.trim());
            } else {
                return Err(format!("line {}: expected `[section]` or `key = value`", i + 1));
            }
        }
        Ok(r)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, entries)) in self.sections.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "[{name}]")?;
            for (k, v) in entries {
                writeln!(f, "{k} = {v}")?;
            }
        }
        Ok(())
    }
}

pub fn add_profile(r: &mut Report, section: &str, p: &NfrProfile) {
    r.section(section);
    for dim in Dimension::ALL {
        r.entry(dim.key(), dimension_value(p, dim));
    }
    if let Some(m) = &p.complexity {
        r.entry("gate_count", m.gate_count)
            .entry("two_qubit_count", m.two_qubit_count)
            .entry("depth", m.depth)
            .entry("qubit_count", m.qubit_count)
            .entry("ancilla_count", m.ancilla_count)
            .entry("classical_preprocessing", &m.classical_preprocessing);
    }
    if let Some(ok) = p.nisq_suitable {
        r.entry("nisq_suitable", ok);
    }
}

pub fn add_tradeoff(r: &mut Report, t: &TradeoffReport) {
    r.section("tradeoff")
        .entry("context", t.context.era.label())
        .entry("option_a", &t.a.label)
        .entry("option_b", &t.b.label)
        .entry("recommendation", t.recommendation.label());
    if let Some(o) = t.recommended() {
        r.entry("recommended", &o.label);
    }
    for (i, line) in t.rationale.iter().enumerate() {
        r.entry(&format!("rationale.{i}"), line);
    }
    r.section("comparison");
    for row in &t.rows {
        r.entry(row.dimension.key(), format!("{} | a: {} | b: {}", row.verdict.label(), row.a, row.b));
    }
    add_profile(r, "option_a", &t.a.profile);
    add_profile(r, "option_b", &t.b.profile);
}

pub fn add_fit(r: &mut Report, f: &ComplexityFit) {
    let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    r.section("complexity")
        .entry("id", f.id)
        .entry("class", f.class_label)
        .entry("measure", if f.iterations { "iterations" } else { "gate_count" })
        .entry("sizes", list(&f.sizes))
        .entry("counts", list(&f.counts))
        .entry("measured_ratio", format!("{:.4}", f.measured_ratio));
    for (m, pred, ok) in &f.models {
        r.entry(&format!("model.{}", m.label()), format!("predicted={pred:.4} fits={ok}"));
    }
    r.entry("consistent", f.consistent);
}

pub fn add_tier(r: &mut Report, t: &TierReport) {
    r.section("tier").entry("id", t.id).entry("name", t.name).entry("tier", t.tier);
    if let Some(note) = t.note() {
        r.entry("note", note);
    }
}

pub fn add_diagnostics(r: &mut Report, diags: &[Diagnostic], strict: bool) {
    r.section("validation").entry("diagnostics", diags.len());
    r.entry("blocking", diags.iter().filter(|d| d.is_blocking(strict)).count());
    for (i, d) in diags.iter().enumerate() {
        r.entry(&format!("diagnostic.{i}"), d);
    }
}

pub fn add_mece(r: &mut Report, m: &MeceReport) {
    r.section("mece").entry("checked", m.checked).entry("violations", m.violations.len());
    for (i, v) in m.violations.iter().enumerate() {
        r.entry(&format!("violation.{i}"), format!("{v:?}"));
    }
}

pub fn add_counts(r: &mut Report, c: &Counts) {
    r.section("counts").entry("shots", c.shots()).entry("bits", c.width());
    for (value, n) in c.iter() {
        r.entry(&c.label(value), n);
    }
}

/// Usage heatmap as a fixed-width table, grouped by category.
pub fn heatmap_table() -> String {
    use crate::model::Algorithm;
    let mut out = format!("{:>3}  {:<28}", "id", "primitive");
    for a in Algorithm::ALL {
        out.push_str(&format!(" {:>6}", a.label()));
    }
    out.push('\n');
    let mut current = None;
    for d in crate::catalog::catalog() {
        if current != Some(d.category) {
            current = Some(d.category);
            out.push_str(&format!("-- {}\n", d.category.label()));
        }
        out.push_str(&format!("{:>3}  {:<28}", d.id.get(), d.name));
        for u in d.usage {
            out.push_str(&format!(" {:>6}", u.code()));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new();
        r.section("a").entry("x", 1).entry("y", "two words");
        r.section("b").entry("z", true);
        let text = r.to_string();
        assert_eq!(text, "[a]\nx = 1\ny = two words\n\n[b]\nz = true\n");
        assert_eq!(Report::parse(&text).unwrap(), r);
        assert_eq!(r.get("a", "y"), Some("two words"));
    }
}
