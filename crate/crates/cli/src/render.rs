//! Table types and their text / json / csv / latex renderings.
//!
//! All output is deterministic: fixed field order, fixed row order, no
//! timestamps. JSON tables re-parse into equal values.

use pqcalc::suite::SuiteReport;
use pqcalc::Poly;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NumbersRow {
    pub n: usize,
    pub number: String,
    pub factorial: String,
    pub double_factorial: String,
    pub binomials: Vec<String>,
}

/// `[n]`, `[n]!`, `[2n]!!` and the binomial triangle, row by row.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NumbersTable {
    pub p: String,
    pub q: String,
    pub rows: Vec<NumbersRow>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PolyRow {
    pub n: usize,
    pub poly: Vec<String>,
}

/// Family components and family numbers.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FamilyTable {
    pub family: String,
    pub p: String,
    pub q: String,
    pub numbers: Vec<String>,
    pub rows: Vec<PolyRow>,
}

/// Result of an Appell-group calculation.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct AppellTable {
    pub expr: String,
    pub p: String,
    pub q: String,
    pub order: usize,
    pub a: Vec<String>,
    pub degenerate: bool,
    pub components: Vec<PolyRow>,
}

fn poly_of_row(row: &PolyRow) -> String {
    // rebuild display form from the coefficient strings; context does
    // not matter for formatting
    let ctx = pqcalc::PQContext::from_ints(1, 1).unwrap();
    match Poly::from_coeff_strings(&ctx, &row.poly) {
        Ok(p) => p.to_string(),
        Err(_) => row.poly.join(","),
    }
}

fn poly_latex_of_row(row: &PolyRow) -> String {
    let ctx = pqcalc::PQContext::from_ints(1, 1).unwrap();
    match Poly::from_coeff_strings(&ctx, &row.poly) {
        Ok(p) => p.to_latex(),
        Err(_) => row.poly.join(","),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

/// Pads ragged coefficient rows to a fixed width so CSV stays rectangular.
fn csv_poly_rows(header_prefix: &str, rows: &[PolyRow]) -> String {
    let width = rows.iter().map(|r| r.poly.len()).max().unwrap_or(1).max(1);
    let mut out = String::new();
    out.push_str(header_prefix);
    for i in 0..width {
        out.push_str(&format!(",c{i}"));
    }
    out.push('\n');
    for row in rows {
        out.push_str(&row.n.to_string());
        for i in 0..width {
            out.push(',');
            out.push_str(row.poly.get(i).map(String::as_str).unwrap_or("0"));
        }
        out.push('\n');
    }
    out
}

impl NumbersTable {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Text => {
                let mut out = format!("(p, q) = ({}, {})\n", self.p, self.q);
                out.push_str("n  [n]  [n]!  [2n]!!  binomial row\n");
                for row in &self.rows {
                    out.push_str(&format!(
                        "{}  {}  {}  {}  [{}]\n",
                        row.n,
                        row.number,
                        row.factorial,
                        row.double_factorial,
                        row.binomials.join(", ")
                    ));
                }
                out
            }
            Format::Csv => {
                let mut out = String::from("n,number,factorial,double_factorial,binomials\n");
                for row in &self.rows {
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        row.n,
                        row.number,
                        row.factorial,
                        row.double_factorial,
                        row.binomials.join(";")
                    ));
                }
                out
            }
            Format::Latex => {
                let mut out = String::from("\\begin{tabular}{r|lll}\n");
                out.push_str("n & $[n]$ & $[n]!$ & $[2n]!!$ \\\\\n\\hline\n");
                for row in &self.rows {
                    out.push_str(&format!(
                        "{} & ${}$ & ${}$ & ${}$ \\\\\n",
                        row.n, row.number, row.factorial, row.double_factorial
                    ));
                }
                out.push_str("\\end{tabular}\n");
                out
            }
        }
    }
}

impl FamilyTable {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Text => {
                let mut out = format!(
                    "{} family at (p, q) = ({}, {})\n",
                    self.family, self.p, self.q
                );
                out.push_str(&format!("numbers: [{}]\n", self.numbers.join(", ")));
                for row in &self.rows {
                    out.push_str(&format!("f_{}(x) = {}\n", row.n, poly_of_row(row)));
                }
                out
            }
            Format::Csv => csv_poly_rows("n", &self.rows),
            Format::Latex => {
                let mut out = String::new();
                for row in &self.rows {
                    out.push_str(&format!(
                        "\\[ f_{{{}}}(x) = {} \\]\n",
                        row.n,
                        poly_latex_of_row(row)
                    ));
                }
                out
            }
        }
    }
}

impl AppellTable {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Text => {
                let mut out = format!(
                    "{} at (p, q) = ({}, {}), order {}\n",
                    self.expr, self.p, self.q, self.order
                );
                out.push_str(&format!("degenerate: {}\n", self.degenerate));
                out.push_str(&format!("a: [{}]\n", self.a.join(", ")));
                for row in &self.components {
                    out.push_str(&format!("f_{}(x) = {}\n", row.n, poly_of_row(row)));
                }
                out
            }
            Format::Csv => csv_poly_rows("n", &self.components),
            Format::Latex => {
                let mut out = String::new();
                for row in &self.components {
                    out.push_str(&format!(
                        "\\[ f_{{{}}}(x) = {} \\]\n",
                        row.n,
                        poly_latex_of_row(row)
                    ));
                }
                out
            }
        }
    }
}

/// Renders the verification report. The audit section reports exact
/// residuals of the printed identities; those never affect pass/fail.
pub fn render_report(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Text => {
            let mut out = format!(
                "verify: order {}, seed {}, samples {}\n",
                report.order, report.seed, report.samples
            );
            out.push_str("contexts:");
            for c in &report.contexts {
                out.push_str(&format!(" ({}, {})", c.p, c.q));
            }
            out.push_str("\n\ncontracted invariants:\n");
            for inv in &report.invariants {
                let status = if inv.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!(
                    "  [{status}] {} ({} checks)\n",
                    inv.name, inv.checks
                ));
                if let Some(failure) = &inv.failure {
                    out.push_str(&format!("         first failure: {failure}\n"));
                }
                if let Some(note) = &inv.oracle_note {
                    out.push_str(&format!("         oracle: {note}\n"));
                }
            }
            out.push_str("\ntheorem audits (exact residuals; informational):\n");
            let mut current = (String::new(), String::new(), String::new());
            for entry in &report.audits {
                let key = (
                    entry.theorem.clone(),
                    entry.context.p.clone(),
                    entry.context.q.clone(),
                );
                if key != current {
                    let zeros = report
                        .audits
                        .iter()
                        .filter(|e| {
                            e.theorem == key.0
                                && e.context.p == key.1
                                && e.context.q == key.2
                                && e.zero
                        })
                        .count();
                    let total = report
                        .audits
                        .iter()
                        .filter(|e| {
                            e.theorem == key.0 && e.context.p == key.1 && e.context.q == key.2
                        })
                        .count();
                    out.push_str(&format!(
                        "  [{}] at ({}, {}): {}/{} residuals zero\n",
                        key.0, key.1, key.2, zeros, total
                    ));
                    current = key;
                }
            }
            out.push_str("\niterated shift rule audit (printed form):\n");
            for finding in &report.shift_findings {
                match &finding.first_nonzero {
                    None => out.push_str(&format!(
                        "  {} at ({}, {}): all {} pairs zero\n",
                        finding.family,
                        finding.context.p,
                        finding.context.q,
                        finding.pairs_checked
                    )),
                    Some(ce) => out.push_str(&format!(
                        "  {} at ({}, {}): {}/{} pairs zero; first nonzero at n={}, k={}\n",
                        finding.family,
                        finding.context.p,
                        finding.context.q,
                        finding.zero_pairs,
                        finding.pairs_checked,
                        ce.n,
                        ce.k
                    )),
                }
            }
            out.push_str(&format!(
                "\nresult: {}\n",
                if report.passed { "PASS" } else { "FAIL" }
            ));
            out
        }
        Format::Csv => {
            let mut out = String::from("kind,name,context_p,context_q,n,checks,status\n");
            for inv in &report.invariants {
                out.push_str(&format!(
                    "invariant,{},,,,{},{}\n",
                    inv.name,
                    inv.checks,
                    if inv.passed { "pass" } else { "fail" }
                ));
            }
            for e in &report.audits {
                out.push_str(&format!(
                    "audit,{},{},{},{},,{}\n",
                    e.theorem,
                    e.context.p,
                    e.context.q,
                    e.n,
                    if e.zero { "zero" } else { "nonzero" }
                ));
            }
            out
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{l|r|l}\n");
            out.push_str("invariant & checks & status \\\\\n\\hline\n");
            for inv in &report.invariants {
                out.push_str(&format!(
                    "\\verb|{}| & {} & {} \\\\\n",
                    inv.name,
                    inv.checks,
                    if inv.passed { "pass" } else { "fail" }
                ));
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_table_round_trips_through_json() {
        let table = FamilyTable {
            family: "hermite".into(),
            p: "2".into(),
            q: "1".into(),
            numbers: vec!["1".into(), "0".into(), "-1".into()],
            rows: vec![
                PolyRow {
                    n: 0,
                    poly: vec!["1".into()],
                },
                PolyRow {
                    n: 2,
                    poly: vec!["-1".into(), "0".into(), "2".into()],
                },
            ],
        };
        let text = table.render(Format::Json);
        let back: FamilyTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, table);
        assert!(table.render(Format::Text).contains("2x^2 - 1"));
        assert!(table.render(Format::Latex).contains("2x^{2} - 1"));
        let csv = table.render(Format::Csv);
        assert!(csv.contains("2,-1,0,2"));
    }
}
